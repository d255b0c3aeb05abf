//! The `csd` command line.
//!
//! Exit status: 0 on success, 1 when a checked property fails or no verdict
//! was reached, 2 on bad input or usage.

pub mod render;
mod selftest;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{check_core_conditions, CoreMode};
use crate::depth::{
    bound_formulas, check_all_octahedra, check_sampled_octahedra, BoundTable, DepthEngine,
    ProbeSet, TraceError,
};
use crate::io::{
    find_diamond_witness_d2, load_configuration, random_configuration, ConfigDocument, Provenance,
    RandomSpec,
};
use crate::systems::{
    check_property1, check_property2, search_min_system, SearchMode, SearchOptions, VectorSystem,
};

pub use render::{render_report, BoundsReport, Extraction, Format, Render};
pub use selftest::run_selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "csd",
    version,
    about = "Exact colourful simplicial depth, proof-step checks and minimal system search",
    subcommand_required = false,
    arg_required_else_help = true
)]
pub struct Cli {
    /// Run the built-in example table and exit.
    #[arg(long)]
    pub selftest: bool,

    /// Worker threads.
    #[arg(long, global = true, env = "CSD_THREADS")]
    pub threads: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,

    /// Write the report to this file instead of standard output. Relative
    /// paths are resolved against CSD_OUTPUT_DIR when it is set.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth, containing simplices and coverage table of a configuration.
    Depth(InputArgs),
    /// Replay the lower-bound argument for one colour or for all.
    Trace {
        #[command(flatten)]
        input: InputArgs,
        /// Colour to trace (1-based); all colours when omitted.
        #[arg(long)]
        colour: Option<usize>,
    },
    /// Check the octahedron dichotomy and parity over all or sampled octahedra.
    OctaCheck {
        #[command(flatten)]
        input: InputArgs,
        /// Check this many random octahedra instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
        /// Random probe directions added to the configuration antipodes.
        #[arg(long, default_value_t = 32)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Vector system of a configuration and its property verdicts.
    Extract {
        #[command(flatten)]
        input: InputArgs,
        /// Also write the system in text form to this file.
        #[arg(long)]
        system_out: Option<PathBuf>,
    },
    /// Search for a minimum system satisfying the properties.
    SearchNu(SearchArgs),
    /// Emit a seeded random configuration.
    Random {
        #[arg(long)]
        d: usize,
        /// Coordinates are drawn from [-bound, bound].
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "full")]
        mode: CoreMode,
        #[arg(long, default_value_t = 100_000)]
        attempts: u64,
    },
    /// Lower and upper bound formulas for a range of dimensions.
    Bounds {
        /// A single dimension.
        #[arg(long, conflicts_with_all = ["d_min", "d_max"])]
        d: Option<usize>,
        #[arg(long, default_value_t = 1)]
        d_min: usize,
        #[arg(long, default_value_t = 8)]
        d_max: usize,
        /// Evaluate the counting formulas at (j, b, l, c) as well.
        #[arg(long, num_args = 4, value_names = ["J", "B", "L", "C"])]
        at: Option<Vec<u64>>,
    },
    /// Find a planar pairwise-core configuration of depth 3.
    FindDiamondD2 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Configuration document (JSON).
    #[arg(long, short)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub d: usize,
    /// Largest system size to try.
    #[arg(long)]
    pub max_size: usize,
    /// Require only property 2 and nonemptiness.
    #[arg(long)]
    pub diamond: bool,
    /// Enumerate every subset without symmetry reduction or pruning.
    #[arg(long)]
    pub plain_exhaustive: bool,
    /// Keep pruning but drop the symmetry anchors.
    #[arg(long, conflicts_with = "plain_exhaustive")]
    pub no_symmetry: bool,
    /// Give up after this many nodes.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Record completed work here and resume from it.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// No progress lines on standard error.
    #[arg(long, short)]
    pub quiet: bool,
}

struct Output {
    text: String,
    code: i32,
}

fn fail_input(message: impl std::fmt::Display) -> Output {
    Output {
        text: format!("error: {message}\n"),
        code: EXIT_INPUT,
    }
}

fn output_path(path: &Path) -> PathBuf {
    match std::env::var_os("CSD_OUTPUT_DIR") {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Reports go to standard output or `--output`; errors and
/// progress go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    if cli.selftest {
        let results = run_selftest();
        let mut ok = true;
        for (name, passed) in &results {
            println!("{} {name}", if *passed { "ok  " } else { "FAIL" });
            ok &= passed;
        }
        println!(
            "{} of {} examples pass",
            results.iter().filter(|r| r.1).count(),
            results.len()
        );
        return if ok { EXIT_OK } else { EXIT_PROPERTY };
    }
    let Some(command) = &cli.command else {
        eprintln!("error: no subcommand given; see --help");
        return EXIT_INPUT;
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return EXIT_INPUT;
        }
    };
    let out = pool.install(|| dispatch(command, &cli));
    if out.code == EXIT_INPUT {
        eprint!("{}", out.text);
        return out.code;
    }
    match &cli.output {
        Some(path) => {
            let path = output_path(path);
            if let Err(e) = std::fs::write(&path, &out.text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
        }
    }
    out.code
}

fn dispatch(command: &Command, cli: &Cli) -> Output {
    let format = cli.format;
    let ok = |text: String| Output {
        text,
        code: EXIT_OK,
    };
    match command {
        Command::Depth(input) => {
            let config = match load_configuration(&input.input) {
                Ok(c) => c,
                Err(e) => return fail_input(e),
            };
            let report = DepthEngine::new(&config).enumerate_depth();
            let sums_ok = report
                .cov
                .iter()
                .all(|row| row.iter().sum::<usize>() == report.depth);
            let theorem = bound_formulas(config.d() as u64, 0, 0, 0, 0).theorem as usize;
            let bound_ok = config.mode() != CoreMode::Full || report.depth >= theorem;
            Output {
                text: render_report(&report, format),
                code: if sums_ok && bound_ok {
                    EXIT_OK
                } else {
                    EXIT_PROPERTY
                },
            }
        }
        Command::Trace { input, colour } => {
            let config = match load_configuration(&input.input) {
                Ok(c) => c,
                Err(e) => return fail_input(e),
            };
            let n = config.n();
            let colours: Vec<usize> = match colour {
                Some(c) if (1..=n).contains(c) => vec![c - 1],
                Some(c) => return fail_input(format!("colour {c} out of range 1..={n}")),
                None => (0..n).collect(),
            };
            let engine = DepthEngine::new(&config);
            let report = engine.enumerate_depth();
            let mut traces = Vec::new();
            for c in colours {
                match engine.proof_trace(&report, c) {
                    Ok(t) => traces.push(t),
                    Err(e @ TraceError::Violation { .. }) => {
                        return Output {
                            text: format!("{e}\n"),
                            code: EXIT_PROPERTY,
                        }
                    }
                    Err(e) => return fail_input(e),
                }
            }
            ok(render_report(&traces, format))
        }
        Command::OctaCheck {
            input,
            samples,
            probes,
            seed,
        } => {
            let config = match load_configuration(&input.input) {
                Ok(c) => c,
                Err(e) => return fail_input(e),
            };
            let engine = DepthEngine::new(&config);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let probe_set = ProbeSet::antipodes_and_random(&engine, *probes, &mut rng);
            let suite = match samples {
                Some(s) => check_sampled_octahedra(&engine, &probe_set, *s, &mut rng),
                None => check_all_octahedra(&engine, &probe_set),
            };
            Output {
                code: if suite.passes() {
                    EXIT_OK
                } else {
                    EXIT_PROPERTY
                },
                text: render_report(&suite, format),
            }
        }
        Command::Extract { input, system_out } => {
            let config = match load_configuration(&input.input) {
                Ok(c) => c,
                Err(e) => return fail_input(e),
            };
            let report = DepthEngine::new(&config).enumerate_depth();
            let system = VectorSystem::new(config.d(), report.simplices);
            let p1 = check_property1(&system);
            let p2 = check_property2(&system);
            let expected_p1 = config.mode() == CoreMode::Full
                || check_core_conditions(&config, CoreMode::Full).is_ok();
            let code = if p2.is_ok() && (p1.is_ok() || !expected_p1) {
                EXIT_OK
            } else {
                EXIT_PROPERTY
            };
            if let Some(path) = system_out {
                if let Err(e) = std::fs::write(output_path(path), system.to_text()) {
                    return fail_input(format!("{}: {e}", path.display()));
                }
            }
            Output {
                text: render_report(&Extraction::new(system, p1, p2), format),
                code,
            }
        }
        Command::SearchNu(args) => search(args, cli),
        Command::Random {
            d,
            bound,
            seed,
            mode,
            attempts,
        } => {
            let spec = RandomSpec {
                d: *d,
                bound: *bound,
                seed: *seed,
                mode: *mode,
                attempts: *attempts,
            };
            match random_configuration(&spec) {
                Ok(config) => {
                    let mut prov = Provenance::seeded("random_configuration", *seed);
                    prov.bound = Some(*bound);
                    ok(render_report(
                        &ConfigDocument::from_config(&config, Some(prov)),
                        format,
                    ))
                }
                Err(e) => fail_input(e),
            }
        }
        Command::Bounds {
            d,
            d_min,
            d_max,
            at,
        } => {
            let (lo, hi) = match d {
                Some(d) => (*d, *d),
                None => (*d_min, *d_max),
            };
            if lo == 0 || lo > hi {
                return fail_input(format!("invalid dimension range {lo}..={hi}"));
            }
            let params = at.as_ref().map(|v| [v[0], v[1], v[2], v[3]]);
            let [j, b, l, c] = params.unwrap_or_default();
            let tables: Vec<BoundTable> = (lo..=hi)
                .map(|d| bound_formulas(d as u64, j, b, l, c))
                .collect();
            ok(render_report(&BoundsReport { params, tables }, format))
        }
        Command::FindDiamondD2 { seed, budget } => match find_diamond_witness_d2(*seed, *budget) {
            Ok((config, attempts)) => {
                let mut prov = Provenance::seeded("find_diamond_witness_d2", *seed);
                prov.attempts = Some(attempts);
                ok(render_report(
                    &ConfigDocument::from_config(&config, Some(prov)),
                    format,
                ))
            }
            Err(e) => Output {
                text: format!("{e}\n"),
                code: EXIT_PROPERTY,
            },
        },
    }
}

fn search(args: &SearchArgs, cli: &Cli) -> Output {
    let mode = if args.diamond {
        SearchMode::Diamond
    } else {
        SearchMode::Full
    };
    let mut opts = SearchOptions::new(args.d, mode, args.max_size);
    opts.plain = args.plain_exhaustive;
    opts.symmetry = !args.no_symmetry;
    opts.node_budget = args.node_budget;
    opts.threads = cli.threads;
    opts.checkpoint = args.checkpoint.clone();
    let counter = Arc::new(AtomicU64::new(0));
    opts.progress = Some(counter.clone());
    let done = Arc::new(AtomicBool::new(false));
    let reporter = (!args.quiet).then(|| {
        let (counter, done) = (counter.clone(), done.clone());
        std::thread::spawn(move || {
            let start = Instant::now();
            let mut last = 0;
            while !done.load(Ordering::Relaxed) {
                std::thread::sleep(Duration::from_millis(200));
                let secs = start.elapsed().as_secs();
                if secs >= last + 2 {
                    last = secs;
                    let nodes = counter.load(Ordering::Relaxed);
                    eprintln!(
                        "[{secs:>5} s] {nodes} nodes, {:.0} nodes/s",
                        nodes as f64 / start.elapsed().as_secs_f64()
                    );
                }
            }
        })
    });
    let result = search_min_system(&opts);
    done.store(true, Ordering::Relaxed);
    if let Some(h) = reporter {
        let _ = h.join();
    }
    match result {
        Ok(cert) => {
            let code = match cert.outcome {
                crate::systems::SearchOutcome::BudgetExhausted { .. } => EXIT_PROPERTY,
                _ => EXIT_OK,
            };
            Output {
                text: render_report(&cert, cli.format),
                code,
            }
        }
        Err(e) => fail_input(e),
    }
}

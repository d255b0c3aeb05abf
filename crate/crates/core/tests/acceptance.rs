//! Acceptance criteria 1 to 11, one PASS/FAIL line each.
//!
//! ```text
//! cargo test --release --test acceptance
//! ```

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use colourful_depth::config::{check_core_conditions, Configuration, CoreMode};
use colourful_depth::depth::{
    bound_formulas, check_all_octahedra, check_sampled_octahedra, DepthEngine, DepthReport,
    IndexVector, OctahedronSuite, ProbeSet, TraceBranch,
};
use colourful_depth::exact::{det_sign, Rat, Sign};
use colourful_depth::geometry::origin_in_simplex;
use colourful_depth::io::{
    find_diamond_witness_d2, load_configuration, random_configuration, RandomSpec,
};
use colourful_depth::systems::{
    check_property1, check_property2, duplicate_component_analysis, extract_system, VectorSystem,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const FULL_SAMPLES: [(usize, usize); 3] = [(2, 200), (3, 200), (4, 25)];
const DIAMOND_SAMPLES: [(usize, usize); 3] = [(2, 200), (3, 100), (4, 25)];

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

struct Sample {
    seed: u64,
    config: Configuration,
    report: DepthReport,
}

fn samples(d: usize, count: usize, mode: CoreMode) -> Vec<Sample> {
    let base = match mode {
        CoreMode::Full => 10_000,
        CoreMode::Diamond => 20_000,
    } * d as u64;
    (0..count as u64)
        .map(|k| {
            let seed = base + k;
            let config =
                random_configuration(&RandomSpec::new(d, 100, seed, mode)).expect("sample");
            let report = DepthEngine::new(&config).enumerate_depth();
            Sample {
                seed,
                config,
                report,
            }
        })
        .collect()
}

fn w2() -> Configuration {
    load_configuration(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/w2.json"))
        .expect("stored W2")
}

/// Runs `csd search-nu` in process and returns (exit code, certificate).
fn search_nu(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("certificate.json");
    let mut argv = vec![
        "csd",
        "search-nu",
        "-q",
        "--format",
        "json",
        "-o",
        out.to_str().unwrap(),
    ];
    argv.extend_from_slice(args);
    let code = colourful_depth::cli::run(argv);
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

fn outcome_kind(cert: &Value) -> &str {
    cert["outcome"]["kind"].as_str().unwrap_or("missing")
}

fn witness(cert: &Value) -> Option<VectorSystem> {
    let d = cert["outcome"]["system"]["d"].as_u64()? as usize;
    let vectors: Vec<Vec<usize>> = cert["outcome"]["system"]["vectors"]
        .as_array()?
        .iter()
        .map(|v| {
            v.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap() as usize)
                .collect()
        })
        .collect();
    VectorSystem::from_one_based(d, &vectors).ok()
}

fn criterion1() -> Outcome {
    let mut detail = Vec::new();
    for plain in [false, true] {
        let extra: &[&str] = if plain { &["--plain-exhaustive"] } else { &[] };
        let label = if plain { "plain" } else { "reduced" };
        let started = Instant::now();
        let (code4, c4) =
            search_nu(&[&["--d", "2", "--max-size", "4", "--threads", "1"], extra].concat());
        ensure(code4 == 0 && outcome_kind(&c4) == "no-system", || {
            format!("{label} max 4: exit {code4}, outcome {}", outcome_kind(&c4))
        })?;
        let (code5, c5) =
            search_nu(&[&["--d", "2", "--max-size", "5", "--threads", "1"], extra].concat());
        let secs = started.elapsed().as_secs_f64();
        let w = witness(&c5).ok_or_else(|| format!("{label} max 5: no witness (exit {code5})"))?;
        ensure(code5 == 0 && w.len() == 5, || {
            format!("{label} max 5: witness of size {}", w.len())
        })?;
        ensure(
            check_property1(&w).is_ok() && check_property2(&w).is_ok(),
            || format!("{label} witness fails a property:\n{}", w.to_text()),
        )?;
        ensure(secs < 10.0, || format!("{label}: {secs:.1} s exceeds 10 s"))?;
        detail.push(format!(
            "{label}: none <= 4, size-5 witness, {} nodes, {secs:.2} s",
            c5["nodes"]
        ));
    }
    Ok(detail.join("; "))
}

fn criterion2() -> Outcome {
    let started = Instant::now();
    let (code, cert) = search_nu(&["--d", "3", "--max-size", "8"]);
    ensure(code == 0 && outcome_kind(&cert) == "no-system", || {
        format!("exit {code}, outcome {}", outcome_kind(&cert))
    })?;
    Ok(format!(
        "no system of size <= 8, {} nodes, {:.2} s",
        cert["nodes"],
        started.elapsed().as_secs_f64()
    ))
}

fn criterion3() -> Outcome {
    let started = Instant::now();
    let (code3, c3) = search_nu(&["--d", "3", "--diamond", "--max-size", "3"]);
    ensure(code3 == 0 && outcome_kind(&c3) == "no-system", || {
        format!("max 3: exit {code3}, outcome {}", outcome_kind(&c3))
    })?;
    let (code4, c4) = search_nu(&["--d", "3", "--diamond", "--max-size", "4"]);
    let w = witness(&c4).ok_or_else(|| format!("max 4: no witness (exit {code4})"))?;
    ensure(w.len() == 4 && check_property2(&w).is_ok(), || {
        format!("bad witness:\n{}", w.to_text())
    })?;
    let secs = started.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("{secs:.1} s exceeds 5 min"))?;
    Ok(format!(
        "none <= 3, size-4 witness {:?}, {secs:.2} s",
        w.to_text().lines().skip(1).collect::<Vec<_>>()
    ))
}

fn criterion4(full: &[(usize, Vec<Sample>)]) -> Outcome {
    let mut detail = Vec::new();
    for (d, set) in full {
        let bound = bound_formulas(*d as u64, 0, 0, 0, 0).theorem as usize;
        ensure(bound == [0, 0, 5, 8, 13][*d], || {
            format!("d={d}: bound formula gives {bound}")
        })?;
        if let Some(s) = set.iter().find(|s| s.report.depth < bound) {
            return Err(format!(
                "d={d} seed {}: depth {} < {bound}",
                s.seed, s.report.depth
            ));
        }
        let min = set.iter().map(|s| s.report.depth).min().unwrap();
        detail.push(format!(
            "d={d}: {} configs, min depth {min} >= {bound}",
            set.len()
        ));
    }
    Ok(detail.join("; "))
}

fn criterion5(full: &[(usize, Vec<Sample>)]) -> Outcome {
    let depth = DepthEngine::new(&w2()).enumerate_depth().depth;
    ensure(depth == 5, || format!("W2 has depth {depth}"))?;
    let d3 = &full.iter().find(|(d, _)| *d == 3).unwrap().1;
    if let Some(s) = d3.iter().find(|s| s.report.depth < 10) {
        return Err(format!("d=3 seed {}: depth {}", s.seed, s.report.depth));
    }
    let even = d3.iter().filter(|s| s.report.depth % 2 == 0).count();
    Ok(format!(
        "W2 depth 5; d=3 min depth {} over {} configs (diagnostic: {even} even, {} odd)",
        d3.iter().map(|s| s.report.depth).min().unwrap(),
        d3.len(),
        d3.len() - even
    ))
}

fn criterion6(full: &[(usize, Vec<Sample>)]) -> Outcome {
    let mut totals = (0usize, 0u64, 0u64);
    let mut check = |config: &Configuration, seed: u64, exhaustive: bool| -> Result<(), String> {
        let engine = DepthEngine::new(config);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let probes = ProbeSet::antipodes_and_random(&engine, 32, &mut rng);
        let n = config.n();
        ensure(probes.len() == n * n + 32, || {
            format!("seed {seed}: {} probes", probes.len())
        })?;
        let suite: OctahedronSuite = if exhaustive {
            check_all_octahedra(&engine, &probes)
        } else {
            check_sampled_octahedra(&engine, &probes, 10_000, &mut rng)
        };
        ensure(suite.passes(), || {
            format!(
                "d={} seed {seed}: {} violations, first {:?}",
                config.d(),
                suite.violations.len(),
                suite.violations[0]
            )
        })?;
        totals.0 += suite.octahedra;
        totals.1 += suite.checks;
        totals.2 += suite.skipped;
        Ok(())
    };
    check(&w2(), 17, true)?;
    for (d, set) in full {
        for s in set {
            check(&s.config, s.seed, *d <= 3)?;
        }
    }
    Ok(format!(
        "{} octahedra, {} generic probe checks, {} probe points on cone boundaries skipped, 0 violations",
        totals.0, totals.1, totals.2
    ))
}

fn criterion7(full: &[(usize, Vec<Sample>)]) -> Outcome {
    let (mut traces, mut small, mut large) = (0, 0, 0);
    let mut check =
        |config: &Configuration, report: &DepthReport, label: &str| -> Result<(), String> {
            let engine = DepthEngine::new(config);
            let d = config.d();
            let enumerated: BTreeSet<&IndexVector> = report.simplices.iter().collect();
            for colour in 0..config.n() {
                let t = engine
                    .proof_trace(report, colour)
                    .map_err(|e| format!("{label} colour {}: {e}", colour + 1))?;
                let collected: BTreeSet<&IndexVector> = t.collected.iter().collect();
                ensure(collected.len() == t.collected.len(), || {
                    format!("{label}: repeated simplex")
                })?;
                ensure(collected.is_subset(&enumerated), || {
                    format!("{label}: simplex outside enumeration")
                })?;
                let contains = |v: &IndexVector| {
                    let pts: Vec<&[Rat]> = (0..config.n())
                        .map(|c| config.point(c, v.get(c)).coords.as_slice())
                        .collect();
                    origin_in_simplex(&pts) == Ok(true)
                };
                ensure(t.collected.iter().all(contains), || {
                    format!("{label}: collected simplex misses the origin")
                })?;
                let bound = match &t.branch {
                    TraceBranch::Small(b) => {
                        small += 1;
                        let (l, bh) = (t.selection.l(), b.b_hat);
                        (t.selection.j * (d + 1)).max((d + 1) * (bh + l) - 2 * bh * l)
                    }
                    TraceBranch::Large(b) => {
                        large += 1;
                        d * b.l_min + 1
                    }
                };
                ensure(collected.len() >= bound, || {
                    format!(
                        "{label} colour {}: {} collected < {bound}",
                        colour + 1,
                        collected.len()
                    )
                })?;
                traces += 1;
            }
            Ok(())
        };
    let w = w2();
    check(&w, &DepthEngine::new(&w).enumerate_depth(), "W2")?;
    for (d, set) in full {
        for s in set {
            check(&s.config, &s.report, &format!("d={d} seed {}", s.seed))?;
        }
    }
    Ok(format!(
        "{traces} traces ({small} small-l, {large} large-l), all verified"
    ))
}

fn criterion8(full: &[(usize, Vec<Sample>)], diamond: &[(usize, Vec<Sample>)]) -> Outcome {
    let mut count = (0, 0);
    for (d, set) in full {
        for s in set {
            let system = extract_system(&s.config);
            ensure(check_property1(&system).is_ok(), || {
                format!("full d={d} seed {}: property 1", s.seed)
            })?;
            ensure(check_property2(&system).is_ok(), || {
                format!("full d={d} seed {}: property 2", s.seed)
            })?;
            count.0 += 1;
        }
    }
    for (d, set) in diamond {
        for s in set {
            let system = extract_system(&s.config);
            ensure(check_property2(&system).is_ok(), || {
                format!("diamond d={d} seed {}: property 2", s.seed)
            })?;
            count.1 += 1;
        }
    }
    Ok(format!(
        "{} full systems pass both properties, {} diamond systems pass property 2",
        count.0, count.1
    ))
}

fn criterion9(diamond: &[(usize, Vec<Sample>)]) -> Outcome {
    let (config, attempts) = find_diamond_witness_d2(0, 100_000).map_err(|e| e.to_string())?;
    ensure(
        check_core_conditions(&config, CoreMode::Diamond).is_ok(),
        || "witness is not diamond-core".into(),
    )?;
    let depth = DepthEngine::new(&config).enumerate_depth().depth;
    ensure(depth == 3, || format!("witness depth {depth}"))?;
    let d2 = &diamond.iter().find(|(d, _)| *d == 2).unwrap().1;
    if let Some(s) = d2.iter().find(|s| s.report.depth < 3) {
        return Err(format!("diamond seed {}: depth {}", s.seed, s.report.depth));
    }
    Ok(format!(
        "witness of depth 3 after {attempts} attempts; {} sampled diamond configs, min depth {}",
        d2.len(),
        d2.iter().map(|s| s.report.depth).min().unwrap()
    ))
}

fn random_family<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<IndexVector>> {
    let mut seen: Vec<Vec<u8>> = Vec::new();
    let mut family = Vec::with_capacity(n);
    for q in 0..n {
        let base: Vec<u8> = if !seen.is_empty() && rng.random_bool(0.6) {
            seen[rng.random_range(0..seen.len())].clone()
        } else {
            (0..n).map(|_| rng.random_range(0..n as u8)).collect()
        };
        let mut values: Vec<u8> = (0..n as u8).filter(|_| rng.random_bool(0.5)).collect();
        if values.is_empty() {
            values.push(base[q]);
        }
        let set: Vec<Vec<u8>> = values
            .iter()
            .map(|&x| {
                let mut v = base.clone();
                v[q] = x;
                v
            })
            .collect();
        seen.extend(set.iter().cloned());
        family.push(set.into_iter().map(IndexVector::new).collect());
    }
    family
}

fn criterion10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut max_k = [0usize; 5];
    for d in 2..=4usize {
        let n = d + 1;
        for trial in 0..10_000 {
            let family = random_family(n, &mut rng);
            let a = duplicate_component_analysis(&family)
                .map_err(|e| format!("d={d} trial {trial}: {e}"))?;
            let total: usize = family.iter().map(Vec::len).sum();
            let union: BTreeSet<&IndexVector> = family.iter().flatten().collect();
            ensure(a.duplicates == total - union.len(), || {
                format!("d={d} trial {trial}: k = {}", a.duplicates)
            })?;
            ensure(
                a.duplicates + a.components == n && a.duplicates <= d,
                || {
                    format!(
                        "d={d} trial {trial}: k = {}, c = {}",
                        a.duplicates, a.components
                    )
                },
            )?;
            max_k[d] = max_k[d].max(a.duplicates);
        }
    }
    Ok(format!(
        "3 x 10^4 families, k + c = d + 1 throughout; largest k seen per d=2,3,4: {:?}",
        &max_k[2..]
    ))
}

fn cofactor_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigRational::from_integer(BigInt::from(0));
    for col in 0..n {
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * cofactor_det(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn random_matrix<R: Rng>(rng: &mut R) -> Vec<Vec<(i64, i64)>> {
    let n = rng.random_range(1..=6usize);
    let mut m: Vec<Vec<(i64, i64)>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| (rng.random_range(-20..=20), rng.random_range(1..=5)))
                .collect()
        })
        .collect();
    if n >= 2 && rng.random_bool(0.3) {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        let k = rng.random_range(-3..=3);
        m[b] = m[a].iter().map(|&(p, q)| (p * k, q)).collect();
        if a == b {
            m[a] = vec![(0, 1); n];
        }
    }
    m
}

fn naive_property2(n: usize, vectors: &BTreeSet<Vec<u8>>) -> bool {
    let tuples: Vec<Vec<u8>> = (0..n.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let x = (code % n) as u8;
                    code /= n;
                    x
                })
                .collect()
        })
        .collect();
    for i in 0..n {
        for t in tuples.iter().filter(|t| t[i] == 0) {
            for u in tuples.iter().filter(|u| u[i] == 0) {
                if (0..n).any(|p| p != i && t[p] == u[p]) {
                    continue;
                }
                let mut parities = BTreeSet::new();
                for s in 0..n as u8 {
                    let count = vectors
                        .iter()
                        .filter(|v| {
                            v[i] == s && (0..n).all(|p| p == i || v[p] == t[p] || v[p] == u[p])
                        })
                        .count();
                    parities.insert(count % 2);
                }
                if parities.len() > 1 {
                    return false;
                }
            }
        }
    }
    true
}

fn random_system<R: Rng>(rng: &mut R) -> (usize, BTreeSet<Vec<u8>>) {
    let d = rng.random_range(1..=3usize);
    let n = d + 1;
    let random_vec =
        |rng: &mut R| -> Vec<u8> { (0..n).map(|_| rng.random_range(0..n as u8)).collect() };
    let mut set = BTreeSet::new();
    let toggle = |set: &mut BTreeSet<Vec<u8>>, v: Vec<u8>| {
        if !set.remove(&v) {
            set.insert(v);
        }
    };
    if rng.random_bool(0.5) {
        for _ in 0..rng.random_range(0..2 * n * n) {
            let v = random_vec(rng);
            toggle(&mut set, v);
        }
    } else {
        for _ in 0..rng.random_range(1..=2 * n) {
            let base = random_vec(rng);
            let q = rng.random_range(0..n);
            for x in 0..n as u8 {
                let mut v = base.clone();
                v[q] = x;
                toggle(&mut set, v);
            }
        }
        if rng.random_bool(0.3) {
            let v = random_vec(rng);
            toggle(&mut set, v);
        }
    }
    (d, set)
}

fn criterion11(full: &[(usize, Vec<Sample>)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut zero = 0;
    for trial in 0..10_000 {
        let m = random_matrix(&mut rng);
        let rat: Vec<Vec<Rat>> = m
            .iter()
            .map(|r| r.iter().map(|&(p, q)| Rat::new(p, q)).collect())
            .collect();
        let big: Vec<Vec<BigRational>> = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                    .collect()
            })
            .collect();
        let reference = cofactor_det(&big);
        let expected = match reference.numer().sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        };
        zero += usize::from(expected == Sign::Zero);
        let got = det_sign(&rat);
        ensure(got == expected, || {
            format!("matrix {trial} {m:?}: det_sign {got:?}, cofactor {reference}")
        })?;
    }

    let mut holds = 0;
    for trial in 0..1_000 {
        let (d, set) = random_system(&mut rng);
        let system = VectorSystem::new(d, set.iter().map(|v| IndexVector::new(v.clone())));
        let expected = naive_property2(d + 1, &set);
        ensure(check_property2(&system).is_ok() == expected, || {
            format!(
                "system {trial} (d={d}): reference says {expected}\n{}",
                system.to_text()
            )
        })?;
        holds += usize::from(expected);
    }

    let mut rescaled = 0;
    for (_, set) in full.iter().filter(|(d, _)| *d <= 3) {
        for s in set.iter().take(50) {
            let factors: Vec<Vec<Rat>> = (0..s.config.n())
                .map(|_| {
                    (0..s.config.n())
                        .map(|_| {
                            Rat::new(rng.random_range(1..=1000i64), rng.random_range(1..=1000i64))
                        })
                        .collect()
                })
                .collect();
            let scaled = s.config.rescaled(|c, i| factors[c][i].clone());
            let report = DepthEngine::new(&scaled).enumerate_depth();
            ensure(report.simplices == s.report.simplices, || {
                format!("seed {}: rescaling changes the simplices", s.seed)
            })?;
            rescaled += 1;
        }
    }
    Ok(format!(
        "10^4 determinants ({zero} singular) agree; 10^3 systems agree ({holds} satisfy property 2); {rescaled} rescaled configs keep their simplices"
    ))
}

fn main() {
    let started = Instant::now();
    let full: Vec<(usize, Vec<Sample>)> = FULL_SAMPLES
        .iter()
        .map(|&(d, k)| (d, samples(d, k, CoreMode::Full)))
        .collect();
    let diamond: Vec<(usize, Vec<Sample>)> = DIAMOND_SAMPLES
        .iter()
        .map(|&(d, k)| (d, samples(d, k, CoreMode::Diamond)))
        .collect();
    println!(
        "sampled configurations in {:.1} s",
        started.elapsed().as_secs_f64()
    );

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("nu(2) > 4 and a size-5 system exists", Box::new(criterion1)),
        ("nu(3) > 8", Box::new(criterion2)),
        ("diamond nu(3) = 4", Box::new(criterion3)),
        (
            "depth lower bound 5, 8, 13 on random configurations",
            Box::new(|| criterion4(&full)),
        ),
        (
            "known minima: W2 depth 5, d=3 depth >= 10",
            Box::new(|| criterion5(&full)),
        ),
        (
            "octahedron dichotomy and parity",
            Box::new(|| criterion6(&full)),
        ),
        ("proof trace consistency", Box::new(|| criterion7(&full))),
        (
            "extracted systems satisfy the properties",
            Box::new(|| criterion8(&full, &diamond)),
        ),
        ("diamond mu(2) = 3", Box::new(|| criterion9(&diamond))),
        (
            "duplicate/component identity k + c = d + 1",
            Box::new(criterion10),
        ),
        ("oracle equivalence", Box::new(|| criterion11(&full))),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} ({secs:.1} s): {detail}",
                k + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1} s): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass, {:.1} s total",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

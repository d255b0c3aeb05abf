//! Text renderings of every report type.
//!
//! Human output is tabular, JSON is the serde form of the report, CSV is
//! one row per record with a header line. All three carry the same numbers.

use std::fmt::Write as _;

use serde::Serialize;

use crate::depth::{BoundTable, DepthReport, OctahedronSuite, ProofTrace, TraceBranch};
use crate::io::ConfigDocument;
use crate::systems::{
    MissingValue, ParityViolation, SearchCertificate, SearchOutcome, VectorSystem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

pub trait Render: Serialize {
    fn human(&self) -> String;
    fn csv(&self) -> String;

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}

pub fn render_report<R: Render + ?Sized>(report: &R, format: Format) -> String {
    match format {
        Format::Human => report.human(),
        Format::Json => report.json(),
        Format::Csv => report.csv(),
    }
}

fn csv_header(prefix: &str, n: usize) -> String {
    (1..=n)
        .map(|i| format!("{prefix}{i}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn csv_row(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl Render for DepthReport {
    fn human(&self) -> String {
        let n = self.d + 1;
        let mut out = format!(
            "d = {}\ndepth = {}\n\ncoverage cov(i, s)\n",
            self.d, self.depth
        );
        let _ = writeln!(
            out,
            "  colour | {}",
            (1..=n)
                .map(|s| format!("s={s:<3}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        for (i, row) in self.cov.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:<5}")).collect();
            let _ = writeln!(out, "  {:>6} | {}", i + 1, cells.join(" "));
        }
        let _ = writeln!(out, "\nsimplices containing the origin");
        for v in &self.simplices {
            let _ = writeln!(out, "  {v}");
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = csv_header("s", self.d + 1) + "\n";
        for v in &self.simplices {
            out.push_str(&csv_row(&v.one_based()));
            out.push('\n');
        }
        out
    }
}

fn set_text(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(|s| (s + 1).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

impl Render for ProofTrace {
    fn human(&self) -> String {
        let sel = &self.selection;
        let mut out = String::new();
        let branch = match &self.branch {
            TraceBranch::Small(_) => "small-l",
            TraceBranch::Large(_) => "large-l",
        };
        let _ = writeln!(
            out,
            "colour {} (traced on colour {}), {branch} branch",
            self.colour + 1,
            self.traced_colour + 1
        );
        let _ = writeln!(
            out,
            "  least-covered antipode: point {}, j = {}",
            sel.antipode + 1,
            sel.j
        );
        let _ = writeln!(
            out,
            "  T = ({}), L = {}, l = {}",
            sel.transversal,
            set_text(&sel.spanned),
            sel.l()
        );
        match &self.branch {
            TraceBranch::Small(b) => {
                for r in &b.octahedra {
                    let spans: Vec<String> =
                        r.spanning.iter().map(|l| l.len().to_string()).collect();
                    let _ = writeln!(
                        out,
                        "  octahedron {}: T_{} = ({}), spans per antipode [{}], covers missing: {}",
                        r.k + 1,
                        r.k + 1,
                        r.octahedron.0,
                        spans.join(" "),
                        if r.covers_missing { "yes" } else { "no" }
                    );
                }
                let _ = writeln!(
                    out,
                    "  b = {}, j(d+1) = {}, (d+1)(b+l)-2bl = {}",
                    b.b_hat, b.coverage_bound, b.octahedra_bound
                );
            }
            TraceBranch::Large(b) => {
                for s in &b.selections {
                    let _ = writeln!(
                        out,
                        "  colour {}: U = ({}), L = {}, l = {}",
                        s.colour + 1,
                        s.transversal,
                        set_text(&s.spanned),
                        s.l()
                    );
                }
                let _ = writeln!(
                    out,
                    "  l_min = {}, k = {}, c = {}, (d+1)(l-1)+c = {}, |M| = {}",
                    b.l_min,
                    b.duplicates,
                    b.components,
                    b.families_bound,
                    b.m.len()
                );
            }
        }
        let _ = writeln!(
            out,
            "  collected {} >= guaranteed {} (depth {})",
            self.collected.len(),
            self.guaranteed,
            self.depth
        );
        out
    }

    fn csv(&self) -> String {
        format!("{}{}", TRACE_CSV_HEADER, trace_csv_row(self))
    }
}

const TRACE_CSV_HEADER: &str =
    "colour,traced_colour,branch,antipode,j,l,b,k,c,collected,guaranteed,depth\n";

fn trace_csv_row(t: &ProofTrace) -> String {
    let (branch, b, k, c) = match &t.branch {
        TraceBranch::Small(s) => ("small", s.b_hat.to_string(), String::new(), String::new()),
        TraceBranch::Large(l) => (
            "large",
            String::new(),
            l.duplicates.to_string(),
            l.components.to_string(),
        ),
    };
    format!(
        "{},{},{branch},{},{},{},{b},{k},{c},{},{},{}\n",
        t.colour + 1,
        t.traced_colour + 1,
        t.selection.antipode + 1,
        t.selection.j,
        t.l(),
        t.collected.len(),
        t.guaranteed,
        t.depth
    )
}

impl Render for [ProofTrace] {
    fn human(&self) -> String {
        self.iter()
            .map(ProofTrace::human)
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn csv(&self) -> String {
        let mut out = TRACE_CSV_HEADER.to_string();
        for t in self {
            out.push_str(&trace_csv_row(t));
        }
        out
    }
}

impl Render for Vec<ProofTrace> {
    fn human(&self) -> String {
        self.as_slice().human()
    }

    fn csv(&self) -> String {
        self.as_slice().csv()
    }
}

impl Render for OctahedronSuite {
    fn human(&self) -> String {
        let mut out = format!(
            "octahedra checked: {}\nprobes per octahedron: {}\ngeneric checks: {}\nskipped (non-generic): {}\n",
            self.octahedra, self.probes, self.checks, self.skipped
        );
        for (c, count) in self.per_colour.iter().enumerate() {
            let _ = writeln!(out, "  missing colour {}: {count}", c + 1);
        }
        let _ = writeln!(out, "violations: {}", self.violations.len());
        for v in &self.violations {
            let _ = writeln!(
                out,
                "  ({}) x ({}): {:?}",
                v.generators.0, v.generators.1, v.counts
            );
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = "missing_colour,octahedra\n".to_string();
        for (c, count) in self.per_colour.iter().enumerate() {
            let _ = writeln!(out, "{},{count}", c + 1);
        }
        out
    }
}

/// An extracted system with its property verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct Extraction {
    pub system: VectorSystem,
    pub size: usize,
    pub property1: bool,
    pub property1_missing: Option<MissingValue>,
    pub property2: bool,
    pub property2_violation: Option<String>,
}

impl Extraction {
    pub fn new(
        system: VectorSystem,
        p1: Result<(), MissingValue>,
        p2: Result<(), ParityViolation>,
    ) -> Extraction {
        Extraction {
            size: system.len(),
            property1: p1.is_ok(),
            property1_missing: p1.err(),
            property2: p2.is_ok(),
            property2_violation: p2.err().map(|v| v.to_string()),
            system,
        }
    }
}

impl Render for Extraction {
    fn human(&self) -> String {
        let mut out = self.system.to_text();
        let _ = writeln!(out, "# size {}", self.size);
        match &self.property1_missing {
            None => out.push_str("# property 1: holds\n"),
            Some(m) => {
                let _ = writeln!(out, "# property 1: fails, {m}");
            }
        }
        match &self.property2_violation {
            None => out.push_str("# property 2: holds\n"),
            Some(v) => {
                let _ = writeln!(out, "# property 2: fails, {v}");
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = csv_header("v", self.system.n()) + "\n";
        for v in self.system.vectors() {
            out.push_str(&csv_row(&v.one_based()));
            out.push('\n');
        }
        out
    }
}

fn outcome_text(o: &SearchOutcome) -> &'static str {
    match o {
        SearchOutcome::NoSystem => "no-system",
        SearchOutcome::Witness { .. } => "witness",
        SearchOutcome::BudgetExhausted { .. } => "budget-exhausted",
    }
}

impl Render for SearchCertificate {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "d = {}, mode = {}, max size = {}",
            self.d, self.mode, self.max_k
        );
        match &self.outcome {
            SearchOutcome::NoSystem => {
                let _ = writeln!(out, "no system of size <= {}", self.max_k);
            }
            SearchOutcome::Witness { system } => {
                let _ = writeln!(out, "minimum system has size {}:", system.len());
                for v in system.vectors() {
                    let _ = writeln!(out, "  {v}");
                }
            }
            SearchOutcome::BudgetExhausted { size } => {
                let _ = writeln!(out, "node budget exhausted while searching size {size}");
            }
        }
        let _ = writeln!(out, "nodes visited: {}", self.nodes);
        for s in &self.nodes_per_size {
            let _ = writeln!(out, "  size {:>2}: {}", s.k, s.nodes);
        }
        let _ = writeln!(
            out,
            "group: {} (order {})",
            self.group.action, self.group.order
        );
        let _ = writeln!(out, "reduction: {}", self.group.reduction);
        let _ = writeln!(out, "strategy: {}", self.strategy);
        let _ = writeln!(
            out,
            "threads: {}, wall time: {:.3} s",
            self.threads, self.wall_seconds
        );
        out
    }

    fn csv(&self) -> String {
        let mut out = "d,mode,max_k,k,nodes,outcome\n".to_string();
        let last = self.nodes_per_size.len();
        for (i, s) in self.nodes_per_size.iter().enumerate() {
            let outcome = if i + 1 == last {
                outcome_text(&self.outcome)
            } else {
                "no-system"
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{outcome}",
                self.d, self.mode, self.max_k, s.k, s.nodes
            );
        }
        out
    }
}

/// Bound formulas over a range of dimensions, optionally evaluated at one
/// parameter set `(j, b, l, c)`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub params: Option<[u64; 4]>,
    pub tables: Vec<BoundTable>,
}

impl Render for BoundsReport {
    fn human(&self) -> String {
        let mut out = format!(
            "{:>3} {:>8} {:>6} {:>6} {:>14} {:>6} {:>10} {:>8}\n",
            "d", "new", "2d", "3d", "ceil(d(d+1)/5)", "q-sq", "prior best", "d^2+1"
        );
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        for t in &self.tables {
            let _ = writeln!(
                out,
                "{:>3} {:>8} {:>6} {:>6} {:>14} {:>6} {:>10} {:>8}",
                t.d,
                t.theorem,
                t.prior.two_d,
                opt(t.prior.three_d),
                opt(t.prior.fifth),
                t.prior.quarter_square,
                t.prior.best_lower(),
                t.prior.upper
            );
        }
        if let Some([j, b, l, c]) = self.params {
            let _ = writeln!(out, "\nat j = {j}, b = {b}, l = {l}, c = {c}:");
            for t in &self.tables {
                let _ = writeln!(
                    out,
                    "  d = {}: j(d+1) = {}, (d+1)(b+l)-2bl = {}, (d+1)(l-1)+c = {}, dl+1 = {}",
                    t.d, t.coverage, t.octahedra, t.families, t.families_with_omitted
                );
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = "d,theorem,two_d,three_d,fifth,quarter_square,prior_best,upper".to_string();
        if self.params.is_some() {
            out.push_str(",j,b,l,c,coverage,octahedra,families,families_with_omitted");
        }
        out.push('\n');
        let opt = |x: Option<u64>| x.map_or(String::new(), |v| v.to_string());
        for t in &self.tables {
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{}",
                t.d,
                t.theorem,
                t.prior.two_d,
                opt(t.prior.three_d),
                opt(t.prior.fifth),
                t.prior.quarter_square,
                t.prior.best_lower(),
                t.prior.upper
            );
            if let Some([j, b, l, c]) = self.params {
                let _ = write!(
                    out,
                    ",{j},{b},{l},{c},{},{},{},{}",
                    t.coverage, t.octahedra, t.families, t.families_with_omitted
                );
            }
            out.push('\n');
        }
        out
    }
}

impl Render for ConfigDocument {
    fn human(&self) -> String {
        self.to_json()
    }

    fn json(&self) -> String {
        self.to_json()
    }

    fn csv(&self) -> String {
        let mut out = format!("colour,index,{}\n", csv_header("x", self.d));
        for (c, class) in self.classes.iter().enumerate() {
            for (i, p) in class.iter().enumerate() {
                let coords: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{},{},{}", c + 1, i + 1, coords.join(","));
            }
        }
        out
    }
}

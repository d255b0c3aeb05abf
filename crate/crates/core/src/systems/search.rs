//! Exhaustive search for minimum vector systems.
//!
//! Property 2 holds exactly when every *2-box* `{a_1,b_1} x ... x {a_n,b_n}`
//! holds an even number of vectors: an octahedron at position `i` compares
//! `N(s)` and `N(s')`, and `N(s) + N(s')` is the count in the box with
//! `{s, s'}` at position `i`. A partial system with an odd box can only be
//! completed by adding a vector of that box, so the search branches over the
//! free vectors of the odd box with fewest of them, excluding each tried
//! vector from its later siblings. Once every box is even but some
//! `(position, value)` is unused (full mode) it branches over the vectors
//! using that pair.
//!
//! Symmetry: the group of position permutations and per-position value
//! permutations is transitive on vectors and on pairs of vectors at a fixed
//! Hamming distance. Every system with two or more vectors is therefore
//! equivalent to one containing `(1,..,1)` and `w_h = (2,..,2,1,..,1)`
//! (`h` leading twos) whose vectors are pairwise at distance at least `h`.
//! The reduced search runs one anchored subtree per `h`, plus the single
//! vector system.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{check_property1, check_property2, octahedra_at, VectorSystem};
use crate::depth::IndexVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Properties 1 and 2.
    Full,
    /// Property 2 and nonempty.
    Diamond,
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchMode::Full => "full",
            SearchMode::Diamond => "diamond",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub d: usize,
    pub mode: SearchMode,
    pub max_k: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Enumerate every subset in index order, without symmetry or pruning.
    pub plain: bool,
    /// Use the min-distance anchors. Without them the pruned search starts
    /// from the empty system.
    pub symmetry: bool,
    /// Stop with `BudgetExhausted` after this many nodes.
    pub node_budget: Option<u64>,
    /// Running node count, for progress display.
    pub progress: Option<Arc<AtomicU64>>,
    /// Completed tasks are recorded here and skipped on restart.
    pub checkpoint: Option<PathBuf>,
}

impl SearchOptions {
    pub fn new(d: usize, mode: SearchMode, max_k: usize) -> SearchOptions {
        SearchOptions {
            d,
            mode,
            max_k,
            threads: None,
            plain: false,
            symmetry: true,
            node_budget: None,
            progress: None,
            checkpoint: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchOutcome {
    NoSystem,
    Witness { system: VectorSystem },
    BudgetExhausted { size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeNodes {
    pub k: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupDescription {
    pub action: String,
    /// `(n!)^(n+1)`, as a decimal string.
    pub order: String,
    pub reduction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchCertificate {
    pub d: usize,
    pub mode: SearchMode,
    pub max_k: usize,
    pub plain: bool,
    pub outcome: SearchOutcome,
    /// Nodes over all sizes tried.
    pub nodes: u64,
    pub nodes_per_size: Vec<SizeNodes>,
    pub group: GroupDescription,
    pub strategy: String,
    pub threads: usize,
    pub wall_seconds: f64,
}

impl SearchCertificate {
    pub fn witness(&self) -> Option<&VectorSystem> {
        match &self.outcome {
            SearchOutcome::Witness { system } => Some(system),
            _ => None,
        }
    }

    pub fn is_no_system(&self) -> bool {
        self.outcome == SearchOutcome::NoSystem
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("d must be at least 1 and at most 4, got {0}")]
    Dimension(usize),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: PathBuf, message: String },
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Box<[u64]>);

impl Bits {
    fn new(len: usize) -> Bits {
        Bits(vec![0u64; len.div_ceil(64)].into_boxed_slice())
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn or(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a |= b;
        }
    }
}

fn distance(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn odd_box(mask: u8, full: u8) -> bool {
    mask != 0 && mask != full
}

struct Problem {
    n: usize,
    mode: SearchMode,
    count: usize,
    entries: Vec<Vec<u8>>,
    /// Per vector: `(octahedron, value)` for every octahedron whose support
    /// contains it.
    touches: Vec<Vec<(u32, u8)>>,
    /// Per octahedron and value: the support vectors with that value.
    support: Vec<Vec<Vec<u32>>>,
    /// `by_value[p][s]`: vectors with value `s` at position `p`.
    by_value: Vec<Vec<Vec<u32>>>,
    /// `balls[h][v]`: vectors at distance less than `h` from `v`.
    balls: Vec<Vec<Bits>>,
    full: u8,
}

#[derive(Clone)]
struct State {
    members: Vec<u32>,
    /// Present, excluded by an earlier sibling, or too close to a member.
    blocked: Bits,
    masks: Vec<u8>,
    odd: u32,
    cover: Vec<u8>,
    radius: usize,
}

enum Step {
    Witness,
    Dead,
    Branch(Vec<u32>),
}

enum Flow {
    Found(Vec<u32>),
    Exhausted,
    Aborted,
}

struct Shared {
    first_witness: AtomicUsize,
    budget_hit: AtomicBool,
    total: AtomicU64,
    budget: Option<u64>,
    progress: Option<Arc<AtomicU64>>,
}

struct Ctx<'a> {
    shared: &'a Shared,
    task: usize,
    nodes: u64,
    unflushed: u64,
}

impl Ctx<'_> {
    /// Counts a node; `false` when the task should stop.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed < 1024 {
            return true;
        }
        self.flush();
        !(self.shared.budget_hit.load(Ordering::Relaxed)
            || self.shared.first_witness.load(Ordering::Relaxed) < self.task)
    }

    fn flush(&mut self) {
        let total = self
            .shared
            .total
            .fetch_add(self.unflushed, Ordering::Relaxed)
            + self.unflushed;
        if let Some(p) = &self.shared.progress {
            p.fetch_add(self.unflushed, Ordering::Relaxed);
        }
        if self.shared.budget.is_some_and(|b| total > b) {
            self.shared.budget_hit.store(true, Ordering::Relaxed);
        }
        self.unflushed = 0;
    }
}

impl Problem {
    fn new(d: usize, mode: SearchMode, with_balls: bool) -> Problem {
        let n = d + 1;
        let count = n.pow(n as u32);
        let entries: Vec<Vec<u8>> = (0..count)
            .map(|r| IndexVector::from_rank(r, n, n).entries().to_vec())
            .collect();
        let mut touches = vec![Vec::new(); count];
        let mut support = Vec::new();
        for position in 0..n {
            for octa in octahedra_at(n, position) {
                let o = support.len() as u32;
                let (t, t2) = octa.generators();
                let mut per_value = vec![Vec::new(); n];
                for (r, v) in entries.iter().enumerate() {
                    let inside = t
                        .points()
                        .all(|(p, a)| v[p] as usize == a || Some(v[p] as usize) == t2.pick(p));
                    if inside {
                        per_value[v[position] as usize].push(r as u32);
                        touches[r].push((o, v[position]));
                    }
                }
                support.push(per_value);
            }
        }
        let mut by_value = vec![vec![Vec::new(); n]; n];
        for (r, v) in entries.iter().enumerate() {
            for p in 0..n {
                by_value[p][v[p] as usize].push(r as u32);
            }
        }
        let balls = if with_balls {
            (0..=n)
                .map(|h| {
                    entries
                        .par_iter()
                        .map(|v| {
                            let mut b = Bits::new(count);
                            for (r, w) in entries.iter().enumerate() {
                                if distance(v, w) < h.max(1) {
                                    b.set(r);
                                }
                            }
                            b
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        Problem {
            n,
            mode,
            count,
            entries,
            touches,
            support,
            by_value,
            balls,
            full: ((1u16 << n) - 1) as u8,
        }
    }

    fn empty_state(&self, radius: usize) -> State {
        State {
            members: Vec::new(),
            blocked: Bits::new(self.count),
            masks: vec![0; self.support.len()],
            odd: 0,
            cover: vec![0; self.n],
            radius,
        }
    }

    fn add(&self, st: &mut State, v: u32) {
        let vi = v as usize;
        st.members.push(v);
        if self.balls.is_empty() {
            st.blocked.set(vi);
        } else {
            st.blocked.or(&self.balls[st.radius][vi]);
        }
        for &(o, bit) in &self.touches[vi] {
            let m = &mut st.masks[o as usize];
            let was = odd_box(*m, self.full);
            *m ^= 1 << bit;
            let now = odd_box(*m, self.full);
            match (was, now) {
                (false, true) => st.odd += 1,
                (true, false) => st.odd -= 1,
                _ => {}
            }
        }
        for (p, &e) in self.entries[vi].iter().enumerate() {
            st.cover[p] |= 1 << e;
        }
    }

    fn is_valid(&self, st: &State) -> bool {
        st.odd == 0
            && !st.members.is_empty()
            && (self.mode == SearchMode::Diamond || st.cover.iter().all(|&c| c == self.full))
    }

    fn free(&self, st: &State, list: &[u32]) -> usize {
        list.iter()
            .filter(|&&v| !st.blocked.get(v as usize))
            .count()
    }

    fn step(&self, st: &State, k: usize) -> Step {
        if self.is_valid(st) {
            return Step::Witness;
        }
        let len = st.members.len();
        if len >= k {
            return Step::Dead;
        }
        let n = self.n;
        let mut lb = 0;
        if self.mode == SearchMode::Full {
            lb = st
                .cover
                .iter()
                .map(|c| n - c.count_ones() as usize)
                .max()
                .unwrap();
        }
        if len + lb > k {
            return Step::Dead;
        }
        if st.odd > 0 {
            // (free count, octahedron, odd value, even value)
            let mut best: Option<(usize, usize, usize, usize)> = None;
            for (o, &m) in st.masks.iter().enumerate() {
                if !odd_box(m, self.full) {
                    continue;
                }
                let ones = m.count_ones() as usize;
                lb = lb.max(ones.min(n - ones));
                if len + lb > k {
                    return Step::Dead;
                }
                let mut odd_min = (usize::MAX, 0);
                let mut even_min = (usize::MAX, 0);
                for s in 0..n {
                    let f = self.free(st, &self.support[o][s]);
                    let slot = if m >> s & 1 == 1 {
                        &mut odd_min
                    } else {
                        &mut even_min
                    };
                    if f < slot.0 {
                        *slot = (f, s);
                    }
                }
                let total = odd_min.0 + even_min.0;
                if total == 0 {
                    return Step::Dead;
                }
                if best.is_none_or(|b| total < b.0) {
                    best = Some((total, o, odd_min.1, even_min.1));
                }
            }
            let (_, o, a, b) = best.unwrap();
            let mut cands: Vec<u32> = self.support[o][a]
                .iter()
                .chain(&self.support[o][b])
                .copied()
                .filter(|&v| !st.blocked.get(v as usize))
                .collect();
            cands.sort_unstable();
            return Step::Branch(cands);
        }
        if st.members.is_empty() {
            return Step::Branch(
                (0..self.count as u32)
                    .filter(|&v| !st.blocked.get(v as usize))
                    .collect(),
            );
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for p in 0..n {
            for s in 0..n {
                if st.cover[p] >> s & 1 == 0 {
                    let f = self.free(st, &self.by_value[p][s]);
                    if best.is_none_or(|b| f < b.0) {
                        best = Some((f, p, s));
                    }
                }
            }
        }
        let (f, p, s) = best.expect("an invalid system with even boxes misses a value");
        if f == 0 {
            return Step::Dead;
        }
        Step::Branch(
            self.by_value[p][s]
                .iter()
                .copied()
                .filter(|&v| !st.blocked.get(v as usize))
                .collect(),
        )
    }

    fn dfs(&self, mut st: State, k: usize, ctx: &mut Ctx<'_>) -> Flow {
        if !ctx.tick() {
            return Flow::Aborted;
        }
        match self.step(&st, k) {
            Step::Witness => Flow::Found(st.members),
            Step::Dead => Flow::Exhausted,
            Step::Branch(cands) => {
                for v in cands {
                    let mut child = st.clone();
                    self.add(&mut child, v);
                    match self.dfs(child, k, ctx) {
                        Flow::Exhausted => {}
                        other => return other,
                    }
                    st.blocked.set(v as usize);
                }
                Flow::Exhausted
            }
        }
    }

    /// Splits the search below `st` into tasks `levels` branchings deep, in
    /// depth-first order. Returns the number of nodes expanded here.
    fn expand(&self, mut st: State, k: usize, levels: usize, tasks: &mut Vec<State>) -> u64 {
        if levels == 0 {
            tasks.push(st);
            return 0;
        }
        let Step::Branch(cands) = self.step(&st, k) else {
            tasks.push(st);
            return 0;
        };
        let mut nodes = 1;
        for v in cands {
            let mut child = st.clone();
            self.add(&mut child, v);
            nodes += self.expand(child, k, levels - 1, tasks);
            st.blocked.set(v as usize);
        }
        nodes
    }

    /// Extensions of `st` to exactly `k` vectors using indices from `start`.
    fn plain_dfs(&self, st: &State, start: usize, k: usize, ctx: &mut Ctx<'_>) -> Flow {
        if !ctx.tick() {
            return Flow::Aborted;
        }
        if st.members.len() == k {
            return if self.is_valid(st) {
                Flow::Found(st.members.clone())
            } else {
                Flow::Exhausted
            };
        }
        for v in start..self.count {
            let mut child = st.clone();
            self.add(&mut child, v as u32);
            match self.plain_dfs(&child, v + 1, k, ctx) {
                Flow::Exhausted => {}
                other => return other,
            }
        }
        Flow::Exhausted
    }

    fn anchor(&self, h: usize) -> u32 {
        let mut w = vec![0u8; self.n];
        for e in w.iter_mut().take(h) {
            *e = 1;
        }
        IndexVector::new(w).rank(self.n) as u32
    }

    fn system(&self, members: &[u32]) -> VectorSystem {
        VectorSystem::new(
            self.n - 1,
            members
                .iter()
                .map(|&v| IndexVector::new(self.entries[v as usize].clone())),
        )
    }
}

/// Completed work, written as JSON after finished tasks and after every
/// size. A restarted search with the same settings skips what is recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub d: usize,
    pub mode: Option<SearchMode>,
    pub plain: bool,
    pub symmetry: bool,
    /// Sizes searched to exhaustion without a witness.
    pub finished: Vec<SizeNodes>,
    /// Size in progress.
    pub size: Option<usize>,
    /// Task count at `size`.
    pub tasks: usize,
    /// Finished task index to its node count, at `size`.
    pub done: BTreeMap<usize, u64>,
}

struct CheckpointWriter {
    path: PathBuf,
    state: Mutex<(Checkpoint, Instant)>,
}

impl CheckpointWriter {
    fn load(
        path: PathBuf,
        opts: &SearchOptions,
    ) -> Result<(CheckpointWriter, Checkpoint), SearchError> {
        let fresh = Checkpoint {
            d: opts.d,
            mode: Some(opts.mode),
            plain: opts.plain,
            symmetry: opts.symmetry,
            ..Checkpoint::default()
        };
        let loaded = match std::fs::read_to_string(&path) {
            Ok(text) => {
                let cp: Checkpoint =
                    serde_json::from_str(&text).map_err(|e| SearchError::Checkpoint {
                        path: path.clone(),
                        message: e.to_string(),
                    })?;
                if (cp.d, cp.mode, cp.plain, cp.symmetry)
                    != (fresh.d, fresh.mode, fresh.plain, fresh.symmetry)
                {
                    return Err(SearchError::Checkpoint {
                        path,
                        message: "recorded for different search settings".into(),
                    });
                }
                cp
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => fresh,
            Err(e) => {
                return Err(SearchError::Checkpoint {
                    path,
                    message: e.to_string(),
                })
            }
        };
        let writer = CheckpointWriter {
            path,
            state: Mutex::new((loaded.clone(), Instant::now())),
        };
        Ok((writer, loaded))
    }

    fn write(&self, cp: &Checkpoint) {
        let tmp = self.path.with_extension("tmp");
        let text = serde_json::to_string_pretty(cp).expect("checkpoint serialises");
        if std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, &self.path))
            .is_err()
        {
            eprintln!(
                "warning: could not write checkpoint {}",
                self.path.display()
            );
        }
    }

    fn start_size(&self, k: usize, tasks: usize) {
        let mut g = self.state.lock().unwrap();
        if g.0.size != Some(k) || g.0.tasks != tasks {
            g.0.size = Some(k);
            g.0.tasks = tasks;
            g.0.done.clear();
        }
        self.write(&g.0);
    }

    fn task_done(&self, task: usize, nodes: u64) {
        let mut g = self.state.lock().unwrap();
        g.0.done.insert(task, nodes);
        if g.1.elapsed() > Duration::from_secs(5) {
            g.1 = Instant::now();
            self.write(&g.0);
        }
    }

    fn finish_size(&self, k: usize, nodes: u64) {
        let mut g = self.state.lock().unwrap();
        g.0.finished.push(SizeNodes { k, nodes });
        g.0.size = None;
        g.0.tasks = 0;
        g.0.done.clear();
        self.write(&g.0);
    }
}

fn group_description(n: usize) -> GroupDescription {
    let fact: BigUint = (1..=n as u32).map(BigUint::from).product();
    GroupDescription {
        action: format!("S_{n} on positions, S_{n} on the values of each position"),
        order: fact.pow(n as u32 + 1).to_string(),
        reduction: "contains (1,..,1) and (2,..,2,1,..,1) with h leading 2s, h the minimum pairwise Hamming distance"
            .into(),
    }
}

/// Expansion depth of the task split. Fixed per dimension so node counts do
/// not depend on the thread count.
fn split_levels(d: usize) -> usize {
    if d <= 2 {
        1
    } else {
        3
    }
}

/// Searches sizes `1..=max_k` in order; the first witness is minimum.
pub fn search_min_system(opts: &SearchOptions) -> Result<SearchCertificate, SearchError> {
    if !(1..=4).contains(&opts.d) {
        return Err(SearchError::Dimension(opts.d));
    }
    match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?
            .install(|| run(opts)),
        None => run(opts),
    }
}

fn run(opts: &SearchOptions) -> Result<SearchCertificate, SearchError> {
    let started = Instant::now();
    let problem = Problem::new(opts.d, opts.mode, !opts.plain && opts.symmetry);
    let (writer, resumed) = match &opts.checkpoint {
        Some(path) => {
            let (w, cp) = CheckpointWriter::load(path.clone(), opts)?;
            (Some(w), cp)
        }
        None => (None, Checkpoint::default()),
    };
    let mut nodes_per_size = Vec::new();
    let mut outcome = SearchOutcome::NoSystem;
    for k in 1..=opts.max_k {
        if let Some(rec) = resumed.finished.iter().find(|r| r.k == k) {
            nodes_per_size.push(rec.clone());
            continue;
        }
        let shared = Shared {
            first_witness: AtomicUsize::new(usize::MAX),
            budget_hit: AtomicBool::new(false),
            total: AtomicU64::new(nodes_per_size.iter().map(|r: &SizeNodes| r.nodes).sum()),
            budget: opts.node_budget,
            progress: opts.progress.clone(),
        };
        let mut base_nodes = 0u64;
        let mut tasks = Vec::new();
        let mut found_early = None;
        if opts.plain {
            let root = problem.empty_state(0);
            base_nodes += 1;
            for v in 0..problem.count {
                let mut st = root.clone();
                problem.add(&mut st, v as u32);
                tasks.push(st);
            }
        } else if !opts.symmetry {
            base_nodes +=
                problem.expand(problem.empty_state(1), k, split_levels(opts.d), &mut tasks);
        } else {
            let mut single = problem.empty_state(0);
            problem.add(&mut single, 0);
            if k == 1 {
                base_nodes += 1;
                if problem.is_valid(&single) {
                    found_early = Some(single.members.clone());
                }
            } else {
                for h in 1..=problem.n {
                    let mut root = problem.empty_state(h);
                    problem.add(&mut root, 0);
                    problem.add(&mut root, problem.anchor(h));
                    base_nodes += problem.expand(root, k, split_levels(opts.d), &mut tasks);
                }
            }
        }
        if let Some(members) = found_early {
            nodes_per_size.push(SizeNodes {
                k,
                nodes: base_nodes,
            });
            outcome = SearchOutcome::Witness {
                system: problem.system(&members),
            };
            break;
        }
        let done = match (
            &writer,
            resumed.size == Some(k) && resumed.tasks == tasks.len(),
        ) {
            (Some(_), true) => resumed.done.clone(),
            _ => BTreeMap::new(),
        };
        if let Some(w) = &writer {
            w.start_size(k, tasks.len());
        }
        let results: Vec<(u64, Flow)> = tasks
            .into_par_iter()
            .enumerate()
            .map(|(i, st)| {
                if let Some(&nodes) = done.get(&i) {
                    return (nodes, Flow::Exhausted);
                }
                if shared.budget_hit.load(Ordering::Relaxed)
                    || shared.first_witness.load(Ordering::Relaxed) < i
                {
                    return (0, Flow::Aborted);
                }
                let mut ctx = Ctx {
                    shared: &shared,
                    task: i,
                    nodes: 0,
                    unflushed: 0,
                };
                let flow = if opts.plain {
                    let start = st.members[0] as usize + 1;
                    problem.plain_dfs(&st, start, k, &mut ctx)
                } else {
                    problem.dfs(st, k, &mut ctx)
                };
                ctx.flush();
                match &flow {
                    Flow::Found(_) => {
                        shared.first_witness.fetch_min(i, Ordering::Relaxed);
                    }
                    Flow::Exhausted => {
                        if let Some(w) = &writer {
                            w.task_done(i, ctx.nodes);
                        }
                    }
                    Flow::Aborted => {}
                }
                (ctx.nodes, flow)
            })
            .collect();
        let first = shared.first_witness.load(Ordering::Relaxed);
        let last = first.min(results.len().saturating_sub(1));
        let nodes = base_nodes + results.iter().take(last + 1).map(|r| r.0).sum::<u64>();
        if first == usize::MAX && shared.budget_hit.load(Ordering::Relaxed) {
            nodes_per_size.push(SizeNodes { k, nodes });
            outcome = SearchOutcome::BudgetExhausted { size: k };
            break;
        }
        nodes_per_size.push(SizeNodes { k, nodes });
        if first != usize::MAX {
            let Flow::Found(members) = &results[first].1 else {
                unreachable!("first witness task recorded a witness")
            };
            outcome = SearchOutcome::Witness {
                system: problem.system(members),
            };
            break;
        }
        if let Some(w) = &writer {
            w.finish_size(k, nodes);
        }
    }

    if let SearchOutcome::Witness { system } = &outcome {
        assert!(check_property2(system).is_ok(), "witness fails property 2");
        assert!(!system.is_empty());
        if opts.mode == SearchMode::Full {
            assert!(check_property1(system).is_ok(), "witness fails property 1");
            assert!(system.len() > opts.d, "full-mode witness smaller than d+1");
        }
    }
    let strategy = if opts.plain {
        "plain: every subset in increasing index order, sizes 1..=max_k".to_string()
    } else {
        format!(
            "odd 2-box branching with sibling exclusion, parity and coverage lower bounds, \
             {}, sizes 1..=max_k, split depth {}",
            if opts.symmetry {
                "min-distance anchors"
            } else {
                "no symmetry reduction"
            },
            split_levels(opts.d)
        )
    };
    let mut group = group_description(opts.d + 1);
    if opts.plain || !opts.symmetry {
        group.reduction = "none".into();
    }
    Ok(SearchCertificate {
        d: opts.d,
        mode: opts.mode,
        max_k: opts.max_k,
        plain: opts.plain,
        outcome,
        nodes: nodes_per_size.iter().map(|r| r.nodes).sum(),
        nodes_per_size,
        group,
        strategy,
        threads: rayon::current_num_threads(),
        wall_seconds: started.elapsed().as_secs_f64(),
    })
}

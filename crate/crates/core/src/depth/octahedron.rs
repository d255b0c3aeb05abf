//! Probe-based checks of the cover-or-double-cover dichotomy for the
//! octahedra of a configuration.
//!
//! Whole-sphere coverage is never computed. Each octahedron is sampled at a
//! finite set of probe directions; at every probe that is generic for the
//! octahedron (not in the span of any `d - 1` of its points) we count how
//! many of its `2^d` transversal cones contain the probe.

use itertools::Itertools;
use rand::{Rng, RngExt};
use serde::Serialize;

use super::{DepthEngine, Octahedron, Transversal};
use crate::exact::{int_det, IntVec, Rat};
use crate::geometry::ConeSide;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProbeLabel {
    /// Antipode of configuration point `(colour, index)`, zero-based.
    Antipode {
        colour: usize,
        index: usize,
    },
    Random {
        k: usize,
    },
    Given {
        k: usize,
    },
}

/// Probe directions bound to one configuration, with the cone classification
/// of every probe against every transversal precomputed.
pub struct ProbeSet {
    probes: Vec<IntVec>,
    labels: Vec<ProbeLabel>,
    /// Per probe: bitmasks of the `(d-1)`-subsets of configuration points
    /// whose linear span contains the probe.
    blocking: Vec<Vec<u64>>,
    /// Per probe: intersection of its blocking masks.
    core: Vec<u64>,
    sides: Vec<ConeSide>,
}

fn point_subsets(engine: &DepthEngine<'_>) -> Vec<(u64, Vec<usize>)> {
    let total = engine.n() * engine.n();
    (0..total)
        .combinations(engine.d() - 1)
        .map(|s| (s.iter().fold(0u64, |m, &p| m | 1 << p), s))
        .collect()
}

fn blocking_masks(engine: &DepthEngine<'_>, subsets: &[(u64, Vec<usize>)], x: &IntVec) -> Vec<u64> {
    let pts = engine.config().int_points();
    subsets
        .iter()
        .filter(|(_, members)| {
            let mut rows: Vec<_> = members.iter().map(|&p| pts[p].as_big().to_vec()).collect();
            rows.push(x.as_big().to_vec());
            int_det(&rows) == 0.into()
        })
        .map(|(m, _)| *m)
        .collect()
}

impl ProbeSet {
    fn build(engine: &DepthEngine<'_>, probes: Vec<IntVec>, labels: Vec<ProbeLabel>) -> ProbeSet {
        let subsets = point_subsets(engine);
        let blocking: Vec<Vec<u64>> = probes
            .iter()
            .map(|x| blocking_masks(engine, &subsets, x))
            .collect();
        let core = blocking
            .iter()
            .map(|b| b.iter().fold(u64::MAX, |acc, m| acc & m))
            .collect();
        let count = engine.n().pow(engine.n() as u32);
        let sides = (0..count)
            .flat_map(|id| {
                probes
                    .iter()
                    .map(move |x| engine.cone_by_id(id).classify(x))
            })
            .collect();
        ProbeSet {
            probes,
            labels,
            blocking,
            core,
            sides,
        }
    }

    /// Caller-supplied probe directions.
    pub fn new(engine: &DepthEngine<'_>, directions: &[Vec<Rat>]) -> ProbeSet {
        let probes: Vec<IntVec> = directions.iter().map(|x| IntVec::from_rats(x)).collect();
        assert!(
            probes.iter().all(|p| !p.is_zero()),
            "probe directions must be nonzero"
        );
        let labels = (0..probes.len()).map(|k| ProbeLabel::Given { k }).collect();
        ProbeSet::build(engine, probes, labels)
    }

    /// All `(d+1)^2` configuration antipodes plus `random` integer directions
    /// that avoid the span of every `(d-1)`-subset of configuration points.
    pub fn antipodes_and_random<R: Rng>(
        engine: &DepthEngine<'_>,
        random: usize,
        rng: &mut R,
    ) -> ProbeSet {
        let n = engine.n();
        let mut probes = Vec::new();
        let mut labels = Vec::new();
        for colour in 0..n {
            for index in 0..n {
                probes.push(engine.antipode(colour, index).clone());
                labels.push(ProbeLabel::Antipode { colour, index });
            }
        }
        let subsets = point_subsets(engine);
        const RANGE: i64 = 1_000_000;
        let mut k = 0;
        while k < random {
            let x = IntVec::new(
                (0..engine.d())
                    .map(|_| rng.random_range(-RANGE..=RANGE).into())
                    .collect(),
            );
            if x.is_zero() || !blocking_masks(engine, &subsets, &x).is_empty() {
                continue;
            }
            probes.push(x);
            labels.push(ProbeLabel::Random { k });
            k += 1;
        }
        ProbeSet::build(engine, probes, labels)
    }

    pub fn len(&self) -> usize {
        self.probes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probes.is_empty()
    }

    pub fn labels(&self) -> &[ProbeLabel] {
        &self.labels
    }

    fn is_generic(&self, probe: usize, omega_points: u64) -> bool {
        let blocking = &self.blocking[probe];
        if blocking.is_empty() || self.core[probe] & !omega_points != 0 {
            return true;
        }
        !blocking.iter().any(|m| m & !omega_points == 0)
    }

    fn side(&self, transversal_id: usize, probe: usize) -> ConeSide {
        self.sides[transversal_id * self.probes.len() + probe]
    }
}

/// Span counts of one octahedron at every probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OctahedronReport {
    /// Number of the octahedron's transversals spanning each probe; `None`
    /// where the probe is not generic for this octahedron.
    pub counts: Vec<Option<u32>>,
    /// All generic counts share one parity.
    pub parity_constant: bool,
    /// Not (some probe uncovered and some probe covered exactly once).
    pub dichotomy_holds: bool,
    pub skipped: usize,
}

impl OctahedronReport {
    pub fn passes(&self) -> bool {
        self.parity_constant && self.dichotomy_holds
    }
}

/// Span counts of `omega` at every probe of `probes`.
pub fn octahedron_lemma_check(omega: &Octahedron, probes: &ProbeSet) -> OctahedronReport {
    let omega_points = omega.point_mask();
    let ids: Vec<usize> = omega.transversals().iter().map(Transversal::id).collect();
    let counts: Vec<Option<u32>> = (0..probes.len())
        .map(|p| {
            probes.is_generic(p, omega_points).then(|| {
                ids.iter()
                    .filter(|&&id| {
                        let side = probes.side(id, p);
                        debug_assert_ne!(
                            side,
                            ConeSide::Degenerate,
                            "generic probe on a cone boundary"
                        );
                        side == ConeSide::Interior
                    })
                    .count() as u32
            })
        })
        .collect();
    let generic: Vec<u32> = counts.iter().flatten().copied().collect();
    let parity_constant = generic.iter().map(|c| c % 2).all_equal();
    let dichotomy_holds = !(generic.contains(&0) && generic.contains(&1));
    OctahedronReport {
        skipped: counts.len() - generic.len(),
        counts,
        parity_constant,
        dichotomy_holds,
    }
}

/// An octahedron failing the parity or dichotomy check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OctahedronViolation {
    pub generators: (Transversal, Transversal),
    pub counts: Vec<Option<u32>>,
}

/// Aggregate of many octahedron checks against one probe set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OctahedronSuite {
    /// Octahedra checked per missing colour.
    pub per_colour: Vec<usize>,
    pub octahedra: usize,
    pub probes: usize,
    /// Generic (octahedron, probe) evaluations.
    pub checks: u64,
    pub skipped: u64,
    pub violations: Vec<OctahedronViolation>,
}

impl OctahedronSuite {
    fn new(n: usize, probes: usize) -> OctahedronSuite {
        OctahedronSuite {
            per_colour: vec![0; n],
            octahedra: 0,
            probes,
            checks: 0,
            skipped: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, omega: &Octahedron, report: OctahedronReport) {
        self.per_colour[omega.missing()] += 1;
        self.octahedra += 1;
        self.skipped += report.skipped as u64;
        self.checks += (report.counts.len() - report.skipped) as u64;
        if !report.passes() {
            let (a, b) = omega.generators();
            self.violations.push(OctahedronViolation {
                generators: (a.clone(), b.clone()),
                counts: report.counts,
            });
        }
    }

    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every octahedron of every colour.
pub fn check_all_octahedra(engine: &DepthEngine<'_>, probes: &ProbeSet) -> OctahedronSuite {
    let mut suite = OctahedronSuite::new(engine.n(), probes.len());
    for colour in 0..engine.n() {
        for omega in engine.octahedra(colour) {
            let report = octahedron_lemma_check(&omega, probes);
            suite.record(&omega, report);
        }
    }
    suite
}

/// Checks `samples` uniformly random octahedra, colours chosen uniformly.
pub fn check_sampled_octahedra<R: Rng>(
    engine: &DepthEngine<'_>,
    probes: &ProbeSet,
    samples: usize,
    rng: &mut R,
) -> OctahedronSuite {
    let mut suite = OctahedronSuite::new(engine.n(), probes.len());
    for _ in 0..samples {
        let colour = rng.random_range(0..engine.n());
        let omega = engine.random_octahedron(colour, rng);
        let report = octahedron_lemma_check(&omega, probes);
        suite.record(&omega, report);
    }
    suite
}

impl DepthEngine<'_> {
    /// Every octahedron missing `colour`, each unordered pair once.
    pub fn octahedra(&self, colour: usize) -> impl Iterator<Item = Octahedron> + '_ {
        let all: Vec<Transversal> = self.transversals_missing(colour).collect();
        (0..all.len()).flat_map(move |a| {
            let first = &all[a];
            all[a + 1..]
                .iter()
                .filter(|t| first.points().all(|(c, s)| t.pick(c) != Some(s)))
                .map(|t| {
                    Octahedron::new(first.clone(), t.clone()).expect("disjoint by construction")
                })
                .collect::<Vec<_>>()
        })
    }

    /// A uniformly random octahedron missing `colour`.
    pub fn random_octahedron<R: Rng>(&self, colour: usize, rng: &mut R) -> Octahedron {
        let n = self.n();
        let mut a = vec![0u8; n];
        let mut b = vec![0u8; n];
        for c in (0..n).filter(|&c| c != colour) {
            a[c] = rng.random_range(0..n) as u8;
            let other = rng.random_range(0..n - 1) as u8;
            b[c] = if other >= a[c] { other + 1 } else { other };
        }
        Octahedron::new(Transversal::new(colour, a), Transversal::new(colour, b))
            .expect("disjoint by construction")
    }
}

//! Colourful simplices containing the origin.
//!
//! A colourful tuple `(s_1, ..., s_{d+1})` is an [`IndexVector`]; it contains
//! the origin exactly when the transversal obtained by dropping any one
//! colour `i` spans the antipode of point `(i, s_i)`. The [`DepthEngine`]
//! precomputes every transversal cone of a configuration once and answers
//! all depth, coverage, octahedron and trace queries from that table.

mod bounds;
mod octahedron;
mod trace;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::config::Configuration;
use crate::exact::IntVec;
use crate::geometry::Cone;

pub use bounds::{bound_formulas, BoundTable, PriorBounds};
pub use octahedron::{
    check_all_octahedra, check_sampled_octahedra, octahedron_lemma_check, OctahedronReport,
    OctahedronSuite, OctahedronViolation, ProbeLabel, ProbeSet,
};
pub use trace::{
    proof_trace, LargeBranch, OctaRecord, ProofTrace, Selection, SmallBranch, TraceBranch,
    TraceError,
};

/// One point per colour, by zero-based index within each class.
///
/// Serialised and displayed one-based, matching the usual numbering
/// `1..=d+1` of points inside a class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexVector(Vec<u8>);

impl IndexVector {
    pub fn new(entries: Vec<u8>) -> IndexVector {
        IndexVector(entries)
    }

    /// Builds from one-based entries; `None` if any entry is outside `1..=n`.
    pub fn from_one_based(entries: &[usize], n: usize) -> Option<IndexVector> {
        entries
            .iter()
            .map(|&e| (1..=n).contains(&e).then(|| (e - 1) as u8))
            .collect::<Option<Vec<_>>>()
            .map(IndexVector)
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, position: usize) -> usize {
        self.0[position] as usize
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&e| e as usize + 1).collect()
    }

    /// Odometer rank: first entry most significant.
    pub fn rank(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &e| acc * n + e as usize)
    }

    pub fn from_rank(mut rank: usize, n: usize, len: usize) -> IndexVector {
        let mut v = vec![0u8; len];
        for slot in v.iter_mut().rev() {
            *slot = (rank % n) as u8;
            rank /= n;
        }
        IndexVector(v)
    }

    /// The transversal left after removing `colour`.
    pub fn drop_colour(&self, colour: usize) -> Transversal {
        let mut picks = self.0.clone();
        picks[colour] = 0;
        Transversal {
            missing: colour,
            picks,
        }
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.one_based()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl Serialize for IndexVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<IndexVector, D::Error> {
        let raw = Vec::<usize>::deserialize(d)?;
        if raw.iter().any(|&e| e == 0 || e > u8::MAX as usize) {
            return Err(serde::de::Error::custom(
                "index vector entries are one-based",
            ));
        }
        Ok(IndexVector(raw.iter().map(|&e| (e - 1) as u8).collect()))
    }
}

/// `d` points, one from every colour except `missing`.
///
/// `picks` has one slot per colour; the slot of the missing colour is kept
/// at zero so that equality and ordering only see the chosen points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Transversal {
    missing: usize,
    picks: Vec<u8>,
}

impl Transversal {
    pub fn new(missing: usize, mut picks: Vec<u8>) -> Transversal {
        picks[missing] = 0;
        Transversal { missing, picks }
    }

    pub fn missing(&self) -> usize {
        self.missing
    }

    /// Index chosen for `colour`; `None` for the missing colour.
    pub fn pick(&self, colour: usize) -> Option<usize> {
        (colour != self.missing).then(|| self.picks[colour] as usize)
    }

    /// `(colour, index)` pairs in colour order.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.picks.len())
            .filter(move |&c| c != self.missing)
            .map(move |c| (c, self.picks[c] as usize))
    }

    /// The colourful tuple formed with point `(missing, apex)`.
    pub fn with_apex(&self, apex: usize) -> IndexVector {
        let mut v = self.picks.clone();
        v[self.missing] = apex as u8;
        IndexVector(v)
    }

    /// Dense id: `missing * n^d + code`, where `code` reads the picks of the
    /// present colours as base-`n` digits, lowest colour most significant.
    pub fn id(&self) -> usize {
        let n = self.picks.len();
        let code = self.points().fold(0, |acc, (_, s)| acc * n + s);
        self.missing * n.pow(n as u32 - 1) + code
    }

    pub fn from_id(id: usize, n: usize) -> Transversal {
        let per = n.pow(n as u32 - 1);
        let missing = id / per;
        let mut code = id % per;
        let mut picks = vec![0u8; n];
        for c in (0..n).rev().filter(|&c| c != missing) {
            picks[c] = (code % n) as u8;
            code /= n;
        }
        Transversal { missing, picks }
    }

    /// Lexicographic key on the chosen indices only.
    pub fn choice_key(&self) -> Vec<u8> {
        self.points().map(|(_, s)| s as u8).collect()
    }

    pub fn one_based(&self) -> Vec<Option<usize>> {
        (0..self.picks.len())
            .map(|c| self.pick(c).map(|s| s + 1))
            .collect()
    }
}

impl fmt::Display for Transversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .one_based()
            .iter()
            .map(|e| e.map_or("*".to_string(), |s| s.to_string()))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Transversal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OctahedronError {
    #[error("transversals miss different colours")]
    MissingColourMismatch,
    #[error("transversals share point index {index} of colour {colour}")]
    NotDisjoint { colour: usize, index: usize },
}

/// Two transversals missing the same colour and disjoint in every present
/// colour. Its `2^d` transversals mix the two choices colour by colour.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Octahedron {
    first: Transversal,
    second: Transversal,
}

impl Octahedron {
    pub fn new(first: Transversal, second: Transversal) -> Result<Octahedron, OctahedronError> {
        if first.missing != second.missing {
            return Err(OctahedronError::MissingColourMismatch);
        }
        for (c, s) in first.points() {
            if second.picks[c] as usize == s {
                return Err(OctahedronError::NotDisjoint {
                    colour: c + 1,
                    index: s + 1,
                });
            }
        }
        Ok(Octahedron { first, second })
    }

    pub fn missing(&self) -> usize {
        self.first.missing
    }

    pub fn generators(&self) -> (&Transversal, &Transversal) {
        (&self.first, &self.second)
    }

    /// Bit `k` of the mask selects the second transversal's point for the
    /// `k`-th present colour.
    pub fn transversal(&self, mask: usize) -> Transversal {
        let mut picks = self.first.picks.clone();
        for (k, (c, _)) in self.first.points().enumerate() {
            if mask >> k & 1 == 1 {
                picks[c] = self.second.picks[c];
            }
        }
        Transversal {
            missing: self.first.missing,
            picks,
        }
    }

    /// All `2^d` transversals, in mask order.
    pub fn transversals(&self) -> Vec<Transversal> {
        let d = self.first.picks.len() - 1;
        (0..1usize << d).map(|m| self.transversal(m)).collect()
    }

    /// Flat ids of the `2d` points, as a bitmask over `Configuration::point_id`.
    pub fn point_mask(&self) -> u64 {
        let n = self.first.picks.len();
        self.first
            .points()
            .chain(self.second.points())
            .fold(0u64, |m, (c, s)| m | 1u64 << (c * n + s))
    }
}

/// Exact colourful depth of the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub d: usize,
    pub depth: usize,
    /// Containing simplices in odometer order.
    pub simplices: Vec<IndexVector>,
    /// `cov[i][s]`: number of transversals missing colour `i` that span the
    /// antipode of point `(i, s)`.
    pub cov: Vec<Vec<usize>>,
}

impl DepthReport {
    /// Least-covered point of `colour` (lowest index on ties) and its coverage.
    pub fn least_covered(&self, colour: usize) -> (usize, usize) {
        let row = &self.cov[colour];
        let (s, j) = row
            .iter()
            .enumerate()
            .min_by_key(|&(s, &j)| (j, s))
            .expect("nonempty class");
        (s, *j)
    }
}

/// Precomputed transversal cones of one configuration.
pub struct DepthEngine<'a> {
    config: &'a Configuration,
    n: usize,
    cones: Vec<Cone>,
    antipodes: Vec<IntVec>,
    /// For each transversal id: bit `s` set iff it spans the antipode of
    /// point `(missing, s)`.
    apex_mask: Vec<u32>,
}

impl<'a> DepthEngine<'a> {
    pub fn new(config: &'a Configuration) -> DepthEngine<'a> {
        let n = config.n();
        assert!(n <= 8, "dimension above 7 is not supported");
        let count = n.pow(n as u32);
        let cones: Vec<Cone> = (0..count)
            .into_par_iter()
            .map(|id| {
                let t = Transversal::from_id(id, n);
                let gens: Vec<&IntVec> = t.points().map(|(c, s)| config.int_point(c, s)).collect();
                Cone::new(&gens).expect("configuration is in general position")
            })
            .collect();
        let antipodes: Vec<IntVec> = config.int_points().iter().map(|p| p.negated()).collect();
        let apex_mask = (0..count)
            .into_par_iter()
            .map(|id| {
                let missing = id / n.pow(n as u32 - 1);
                (0..n).fold(0u32, |m, s| {
                    if cones[id].spans(&antipodes[missing * n + s]) {
                        m | 1 << s
                    } else {
                        m
                    }
                })
            })
            .collect();
        DepthEngine {
            config,
            n,
            cones,
            antipodes,
            apex_mask,
        }
    }

    pub fn config(&self) -> &'a Configuration {
        self.config
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.n - 1
    }

    pub fn cone(&self, t: &Transversal) -> &Cone {
        &self.cones[t.id()]
    }

    pub(crate) fn cone_by_id(&self, id: usize) -> &Cone {
        &self.cones[id]
    }

    pub fn antipode(&self, colour: usize, index: usize) -> &IntVec {
        &self.antipodes[colour * self.n + index]
    }

    /// Does `t` span the antipode of `(t.missing(), apex)`?
    pub fn spans_apex(&self, t: &Transversal, apex: usize) -> bool {
        self.apex_mask[t.id()] >> apex & 1 == 1
    }

    /// Bitmask of the missing-colour antipodes spanned by `t`.
    pub fn spanned_apexes(&self, t: &Transversal) -> u32 {
        self.apex_mask[t.id()]
    }

    pub fn contains_origin(&self, v: &IndexVector) -> bool {
        let last = self.n - 1;
        self.spans_apex(&v.drop_colour(last), v.get(last))
    }

    /// All transversals missing `colour`, in id order.
    pub fn transversals_missing(&self, colour: usize) -> impl Iterator<Item = Transversal> + '_ {
        let per = self.n.pow(self.n as u32 - 1);
        (colour * per..(colour + 1) * per).map(move |id| Transversal::from_id(id, self.n))
    }

    /// Transversals missing `colour` that span the antipode of `(colour, s)`.
    pub fn transversals_spanning(&self, colour: usize, s: usize) -> Vec<Transversal> {
        self.transversals_missing(colour)
            .filter(|t| self.spans_apex(t, s))
            .collect()
    }

    /// Counts every colourful tuple. Containment uses the last colour as the
    /// apex; the coverage table is computed separately for every colour, so
    /// `sum_s cov[i][s] == depth` is a genuine cross-check.
    pub fn enumerate_depth(&self) -> DepthReport {
        let n = self.n;
        let total = n.pow(n as u32);
        let simplices: Vec<IndexVector> = (0..total)
            .into_par_iter()
            .map(|rank| IndexVector::from_rank(rank, n, n))
            .filter(|v| self.contains_origin(v))
            .collect();
        let cov = (0..n)
            .map(|i| {
                (0..n)
                    .map(|s| {
                        self.transversals_missing(i)
                            .filter(|t| self.spans_apex(t, s))
                            .count()
                    })
                    .collect()
            })
            .collect();
        DepthReport {
            d: n - 1,
            depth: simplices.len(),
            simplices,
            cov,
        }
    }
}

/// Depth report of a configuration.
pub fn enumerate_depth(config: &Configuration) -> DepthReport {
    DepthEngine::new(config).enumerate_depth()
}

/// Transversals missing `colour` spanning the antipode of `(colour, s)`.
pub fn transversals_spanning(config: &Configuration, colour: usize, s: usize) -> Vec<Transversal> {
    DepthEngine::new(config).transversals_spanning(colour, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::tests::rotated_triangles;
    use crate::exact::Rat;
    use crate::geometry::origin_in_simplex;

    #[test]
    fn ids_round_trip() {
        for n in 2..=5usize {
            for id in 0..n.pow(n as u32) {
                assert_eq!(Transversal::from_id(id, n).id(), id);
            }
        }
    }

    #[test]
    fn rank_round_trip() {
        let v = IndexVector::new(vec![2, 0, 1]);
        assert_eq!(v.rank(3), 19);
        assert_eq!(IndexVector::from_rank(19, 3, 3), v);
        assert_eq!(v.to_string(), "3 1 2");
    }

    #[test]
    fn octahedron_has_2_pow_d_distinct_transversals() {
        let a = Transversal::new(3, vec![0, 1, 2, 0]);
        let b = Transversal::new(3, vec![1, 2, 0, 0]);
        let o = Octahedron::new(a.clone(), b.clone()).unwrap();
        let ts = o.transversals();
        assert_eq!(ts.len(), 8);
        let mut uniq = ts.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 8);
        assert_eq!(ts[0], a);
        assert_eq!(ts[7], b);
        let c = Transversal::new(3, vec![0, 2, 1, 0]);
        assert!(Octahedron::new(a, c).is_err());
    }

    #[test]
    fn depth_matches_brute_force_simplex_tests() {
        let config = rotated_triangles();
        let report = enumerate_depth(&config);
        let mut brute = Vec::new();
        for rank in 0..27 {
            let v = IndexVector::from_rank(rank, 3, 3);
            let pts: Vec<Vec<Rat>> = (0..3)
                .map(|c| config.point(c, v.get(c)).coords.clone())
                .collect();
            if origin_in_simplex(&pts).unwrap() {
                brute.push(v);
            }
        }
        assert_eq!(report.simplices, brute);
        for row in &report.cov {
            assert_eq!(row.iter().sum::<usize>(), report.depth);
        }
        assert!(report.depth >= 5);
    }

    #[test]
    fn spanning_lists_match_coverage() {
        let config = rotated_triangles();
        let engine = DepthEngine::new(&config);
        let report = engine.enumerate_depth();
        for i in 0..3 {
            for s in 0..3 {
                let list = engine.transversals_spanning(i, s);
                assert_eq!(list.len(), report.cov[i][s]);
                assert!(!list.is_empty());
                for t in list {
                    assert!(report.simplices.contains(&t.with_apex(s)));
                }
            }
        }
    }
}

//! Vector systems over `{1..d+1}^{d+1}` and their two parity properties.
//!
//! A system `V` abstracts the set of colourful simplices containing the
//! origin: position `i` of a vector names the point of colour `i`.
//!
//! * Property 1: every value occurs in every position.
//! * Property 2: for every combinatorial octahedron (a position `i` and two
//!   transversals disjoint in every other position), the number of vectors
//!   with `v_i = s` and all other entries inside the octahedron has the same
//!   parity for every `s`.

mod canonical;
mod lemma;
pub mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::config::Configuration;
use crate::depth::{enumerate_depth, IndexVector, Octahedron, Transversal};

pub use canonical::{canonical_form, GroupElement};
pub use lemma::{duplicate_component_analysis, DuplicateAnalysis, FamilyError};
pub use search::{search_min_system, SearchCertificate, SearchMode, SearchOptions, SearchOutcome};

/// The combinatorial octahedra have the same shape as the geometric ones.
pub type CombOctahedron = Octahedron;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vector {vector:?} does not have {expected} entries in 1..={expected}")]
    Entry { vector: Vec<usize>, expected: usize },
}

/// A set of index vectors of length `d + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VectorSystem {
    d: usize,
    vectors: BTreeSet<IndexVector>,
}

impl VectorSystem {
    pub fn new(d: usize, vectors: impl IntoIterator<Item = IndexVector>) -> VectorSystem {
        let vectors: BTreeSet<IndexVector> = vectors.into_iter().collect();
        assert!(
            vectors
                .iter()
                .all(|v| v.len() == d + 1 && v.entries().iter().all(|&e| (e as usize) <= d)),
            "vector entries out of range"
        );
        VectorSystem { d, vectors }
    }

    pub fn from_one_based(d: usize, vectors: &[Vec<usize>]) -> Result<VectorSystem, SystemError> {
        let n = d + 1;
        let parsed = vectors
            .iter()
            .map(|v| {
                (v.len() == n)
                    .then(|| IndexVector::from_one_based(v, n))
                    .flatten()
                    .ok_or_else(|| SystemError::Entry {
                        vector: v.clone(),
                        expected: n,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorSystem::new(d, parsed))
    }

    /// Every vector of `{1..d+1}^{d+1}`.
    pub fn full(d: usize) -> VectorSystem {
        let n = d + 1;
        VectorSystem::new(
            d,
            (0..n.pow(n as u32)).map(|r| IndexVector::from_rank(r, n, n)),
        )
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.d + 1
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &IndexVector> {
        self.vectors.iter()
    }

    pub fn contains(&self, v: &IndexVector) -> bool {
        self.vectors.contains(v)
    }

    /// Text form: a `d=<n>` header, then one vector per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("d={}\n", self.d);
        for v in &self.vectors {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for VectorSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for VectorSystem {
    type Err = SystemError;

    fn from_str(text: &str) -> Result<VectorSystem, SystemError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(SystemError::Parse {
            line: 1,
            message: "missing d=<n> header".into(),
        })?;
        let d: usize = header
            .strip_prefix("d=")
            .and_then(|x| x.trim().parse().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| SystemError::Parse {
                line,
                message: format!("expected header d=<n>, got {header:?}"),
            })?;
        let n = d + 1;
        let mut vectors = Vec::new();
        for (line, l) in lines {
            let entries: Vec<usize> = l
                .split_whitespace()
                .map(|x| x.parse())
                .collect::<Result<_, _>>()
                .map_err(|e| SystemError::Parse {
                    line,
                    message: format!("{e}"),
                })?;
            let v = (entries.len() == n)
                .then(|| IndexVector::from_one_based(&entries, n))
                .flatten()
                .ok_or_else(|| SystemError::Parse {
                    line,
                    message: format!("expected {n} entries in 1..={n}"),
                })?;
            vectors.push(v);
        }
        Ok(VectorSystem::new(d, vectors))
    }
}

/// A `(position, value)` pair no vector uses. Zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MissingValue {
    pub position: usize,
    pub value: usize,
}

impl fmt::Display for MissingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "value {} never used in position {}",
            self.value + 1,
            self.position + 1
        )
    }
}

pub fn check_property1(system: &VectorSystem) -> Result<(), MissingValue> {
    let n = system.n();
    for position in 0..n {
        for value in 0..n {
            if !system.vectors().any(|v| v.get(position) == value) {
                return Err(MissingValue { position, value });
            }
        }
    }
    Ok(())
}

/// An octahedron whose counts `N(s)` do not share one parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityViolation {
    pub octahedron: CombOctahedron,
    /// `N(s)` for every value `s` of the octahedron's missing position.
    pub counts: Vec<usize>,
}

impl fmt::Display for ParityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (t, t2) = self.octahedron.generators();
        write!(
            f,
            "position {}, t=({}), t'=({}): N(s) = {:?}",
            self.octahedron.missing() + 1,
            t,
            t2,
            self.counts
        )
    }
}

/// Enumerates the octahedra at `position` as one unordered value pair per
/// other position, pairs in lexicographic order, lower positions slower.
pub(crate) fn octahedra_at(n: usize, position: usize) -> impl Iterator<Item = CombOctahedron> {
    let pairs: Vec<(u8, u8)> = (0..n as u8)
        .flat_map(|a| (a + 1..n as u8).map(move |b| (a, b)))
        .collect();
    let others: Vec<usize> = (0..n).filter(|&p| p != position).collect();
    let p = pairs.len();
    let total = p.pow(others.len() as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0u8; n];
        let mut t2 = vec![0u8; n];
        for &pos in others.iter().rev() {
            let (a, b) = pairs[code % p];
            code /= p;
            t[pos] = a;
            t2[pos] = b;
        }
        Octahedron::new(
            Transversal::new(position, t),
            Transversal::new(position, t2),
        )
        .expect("disjoint pairs")
    })
}

/// Positions are scanned from the last to the first.
pub fn check_property2(system: &VectorSystem) -> Result<(), ParityViolation> {
    let n = system.n();
    for position in (0..n).rev() {
        for octahedron in octahedra_at(n, position) {
            let (t, t2) = octahedron.generators();
            let mut counts = vec![0usize; n];
            for v in system.vectors() {
                let inside = t
                    .points()
                    .all(|(p, a)| v.get(p) == a || Some(v.get(p)) == t2.pick(p));
                if inside {
                    counts[v.get(position)] += 1;
                }
            }
            if counts.iter().any(|c| c % 2 != counts[0] % 2) {
                return Err(ParityViolation { octahedron, counts });
            }
        }
    }
    Ok(())
}

/// The system of colourful simplices containing the origin.
pub fn extract_system(config: &Configuration) -> VectorSystem {
    let report = enumerate_depth(config);
    VectorSystem::new(config.d(), report.simplices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(d: usize, vs: &[&[usize]]) -> VectorSystem {
        VectorSystem::from_one_based(d, &vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn property1_examples() {
        assert!(check_property1(&VectorSystem::full(2)).is_ok());
        assert_eq!(
            check_property1(&sys(2, &[&[1, 1, 1]])),
            Err(MissingValue {
                position: 0,
                value: 1
            })
        );
        assert!(check_property1(&sys(2, &[&[1, 1, 1], &[2, 2, 2], &[3, 3, 3]])).is_ok());
    }

    #[test]
    fn property2_examples() {
        let err = check_property2(&sys(2, &[&[1, 1, 1]])).unwrap_err();
        assert_eq!(err.octahedron.missing(), 2);
        let (t, t2) = err.octahedron.generators();
        assert_eq!(t.one_based(), vec![Some(1), Some(1), None]);
        assert_eq!(t2.one_based(), vec![Some(2), Some(2), None]);
        assert_eq!(err.counts, vec![1, 0, 0]);
        assert!(check_property2(&VectorSystem::new(2, [])).is_ok());
        // a line in any direction has one vector in every slice
        assert!(check_property2(&sys(2, &[&[1, 1, 1], &[1, 1, 2], &[1, 1, 3]])).is_ok());
        assert!(check_property2(&VectorSystem::full(2)).is_ok());
    }

    #[test]
    fn octahedra_count() {
        // n positions, C(n,2)^(n-1) octahedra each
        assert_eq!(octahedra_at(3, 0).count(), 9);
        assert_eq!(octahedra_at(4, 2).count(), 216);
    }

    #[test]
    fn text_round_trip() {
        let s = sys(2, &[&[1, 2, 3], &[3, 1, 1]]);
        let text = s.to_text();
        assert_eq!(text, "d=2\n1 2 3\n3 1 1\n");
        assert_eq!(text.parse::<VectorSystem>().unwrap(), s);
        assert!("d=2\n1 2\n".parse::<VectorSystem>().is_err());
        assert!("1 2 3\n".parse::<VectorSystem>().is_err());
        assert!("d=2\n1 2 4\n".parse::<VectorSystem>().is_err());
    }
}

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::depth::IndexVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("expected {expected} sets (one per coordinate), found {found}")]
    SetCount { expected: usize, found: usize },
    #[error("set X_{0} is empty")]
    Empty(usize),
    #[error("set X_{set} contains a vector of length {found}, expected {expected}")]
    Length {
        set: usize,
        expected: usize,
        found: usize,
    },
    #[error("set X_{set} is not aligned with coordinate {set}: {a:?} and {b:?} differ elsewhere")]
    NotAxisAligned {
        set: usize,
        a: IndexVector,
        b: IndexVector,
    },
    #[error("set X_{set} lists {vector:?} twice")]
    Repeated { set: usize, vector: IndexVector },
}

/// Multi-membership and connectivity of a family of axis-aligned sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DuplicateAnalysis {
    /// A vector lying in `m` sets contributes `m - 1`.
    pub duplicates: usize,
    /// Classes of sets under "shares a vector", closed transitively.
    pub components: usize,
}

/// Analyses `d + 1` nonempty sets `X_1..X_{d+1}` where the vectors of `X_q`
/// agree everywhere except in coordinate `q` (zero-based position `q`).
pub fn duplicate_component_analysis(
    family: &[Vec<IndexVector>],
) -> Result<DuplicateAnalysis, FamilyError> {
    let n = family.len();
    for (q, set) in family.iter().enumerate() {
        let Some(first) = set.first() else {
            return Err(FamilyError::Empty(q + 1));
        };
        for v in set {
            if v.len() != n {
                return Err(FamilyError::Length {
                    set: q + 1,
                    expected: n,
                    found: v.len(),
                });
            }
            if (0..n).any(|p| p != q && v.get(p) != first.get(p)) {
                return Err(FamilyError::NotAxisAligned {
                    set: q + 1,
                    a: first.clone(),
                    b: v.clone(),
                });
            }
        }
        let mut sorted = set.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::Repeated {
                set: q + 1,
                vector: w[0].clone(),
            });
        }
    }
    if n == 0 || family[0].first().map(|v| v.len()) != Some(n) {
        return Err(FamilyError::SetCount {
            expected: family
                .first()
                .and_then(|s| s.first())
                .map_or(0, |v| v.len()),
            found: n,
        });
    }

    let mut members: HashMap<&IndexVector, Vec<usize>> = HashMap::new();
    for (q, set) in family.iter().enumerate() {
        for v in set {
            members.entry(v).or_default().push(q);
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut duplicates = 0;
    for sets in members.values() {
        duplicates += sets.len() - 1;
        for w in sets.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let components = (0..n).filter(|&x| find(&mut parent, x) == x).count();
    Ok(DuplicateAnalysis {
        duplicates,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[usize]) -> IndexVector {
        IndexVector::from_one_based(e, e.len()).unwrap()
    }

    #[test]
    fn star_through_one_vector() {
        let family = vec![
            vec![v(&[1, 1, 1]), v(&[2, 1, 1])],
            vec![v(&[1, 1, 1]), v(&[1, 2, 1])],
            vec![v(&[1, 1, 1]), v(&[1, 1, 2])],
        ];
        let a = duplicate_component_analysis(&family).unwrap();
        assert_eq!(
            a,
            DuplicateAnalysis {
                duplicates: 2,
                components: 1
            }
        );
    }

    #[test]
    fn disjoint_sets() {
        let family = vec![
            vec![v(&[1, 1, 1]), v(&[2, 1, 1])],
            vec![v(&[1, 3, 3]), v(&[1, 2, 3])],
            vec![v(&[3, 3, 1]), v(&[3, 3, 2])],
        ];
        let a = duplicate_component_analysis(&family).unwrap();
        assert_eq!(
            a,
            DuplicateAnalysis {
                duplicates: 0,
                components: 3
            }
        );
    }

    #[test]
    fn rejects_malformed() {
        let bad = vec![
            vec![v(&[1, 1, 1]), v(&[2, 2, 1])],
            vec![v(&[1, 1, 1])],
            vec![v(&[1, 1, 1])],
        ];
        assert!(matches!(
            duplicate_component_analysis(&bad),
            Err(FamilyError::NotAxisAligned { set: 1, .. })
        ));
        let empty = vec![vec![v(&[1, 1, 1])], vec![], vec![v(&[1, 1, 1])]];
        assert_eq!(
            duplicate_component_analysis(&empty),
            Err(FamilyError::Empty(2))
        );
        let short = vec![vec![v(&[1, 1, 1])], vec![v(&[1, 1, 1])]];
        assert!(duplicate_component_analysis(&short).is_err());
    }
}

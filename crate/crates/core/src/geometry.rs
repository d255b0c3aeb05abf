//! Exact sign-based predicates on points around the origin.
//!
//! Only this module (together with [`crate::exact`]) looks at coordinates.
//! Points are never normalised to the unit sphere; every predicate here is
//! invariant under positive scaling of each point, so raw rationals are used
//! directly.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{int_det, IntVec, Rat, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate input: points {0:?} are linearly dependent")]
    Degenerate(Vec<usize>),
    #[error("expected {expected} points, got {found}")]
    PointCount { expected: usize, found: usize },
    #[error("point {index} has {found} coordinates, expected {expected}")]
    Dimension {
        index: usize,
        expected: usize,
        found: usize,
    },
}

/// A configuration point: coordinates plus its colour class and its number
/// within the class (both zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeoPoint {
    pub coords: Vec<Rat>,
    pub colour: usize,
    pub index: usize,
}

impl GeoPoint {
    pub fn new(coords: Vec<Rat>, colour: usize, index: usize) -> GeoPoint {
        GeoPoint {
            coords,
            colour,
            index,
        }
    }

    pub fn antipode(&self) -> Vec<Rat> {
        self.coords.iter().map(|x| -x).collect()
    }
}

impl AsRef<[Rat]> for GeoPoint {
    fn as_ref(&self) -> &[Rat] {
        &self.coords
    }
}

/// Convenience for building integer points in tests and examples.
pub fn int_point(coords: &[i64]) -> Vec<Rat> {
    coords.iter().map(|&c| Rat::from_int(c)).collect()
}

fn check_dims<P: AsRef<[Rat]>>(points: &[P], d: usize) -> Result<(), GeometryError> {
    for (index, p) in points.iter().enumerate() {
        let found = p.as_ref().len();
        if found != d {
            return Err(GeometryError::Dimension {
                index,
                expected: d,
                found,
            });
        }
    }
    Ok(())
}

/// Checks that every `d`-element subset of `points` is linearly independent.
/// On failure returns the positions of one dependent subset.
pub fn is_general_position<P: AsRef<[Rat]>>(points: &[P], d: usize) -> Result<(), Vec<usize>> {
    let ints: Vec<IntVec> = points
        .iter()
        .map(|p| IntVec::from_rats(p.as_ref()))
        .collect();
    general_position_ints(&ints, d)
}

pub(crate) fn general_position_ints(ints: &[IntVec], d: usize) -> Result<(), Vec<usize>> {
    if ints.iter().any(|p| p.is_zero()) {
        let i = ints.iter().position(|p| p.is_zero()).unwrap();
        return Err(vec![i]);
    }
    for subset in (0..ints.len()).combinations(d) {
        let rows: Vec<_> = subset.iter().map(|&i| ints[i].as_big().to_vec()).collect();
        if int_det(&rows) == 0.into() {
            return Err(subset);
        }
    }
    Ok(())
}

/// Where a direction lies relative to a simplicial cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSide {
    /// Every generator coefficient is strictly positive.
    Interior,
    /// Some coefficient is negative and none is zero.
    Exterior,
    /// Some coefficient is exactly zero: the direction lies in the span of
    /// fewer than `d` generators.
    Degenerate,
}

/// The pointed cone generated by `d` linearly independent integer vectors,
/// stored through its adjugate so that membership is a sign comparison per
/// generator (Cramer's rule without division).
#[derive(Debug, Clone)]
pub struct Cone {
    det: Sign,
    normals: Vec<IntVec>,
}

impl Cone {
    /// Returns `None` when the generators are linearly dependent.
    pub fn new(generators: &[&IntVec]) -> Option<Cone> {
        let d = generators.len();
        // column c of the matrix is generator c
        let entry = |r: usize, c: usize| generators[c].as_big()[r].clone();
        let full: Vec<Vec<_>> = (0..d)
            .map(|r| (0..d).map(|c| entry(r, c)).collect())
            .collect();
        let det = Sign::of_big(&int_det(&full));
        if det == Sign::Zero {
            return None;
        }
        let normals = (0..d)
            .map(|k| {
                let row = (0..d)
                    .map(|r| {
                        let minor: Vec<Vec<_>> = (0..d)
                            .filter(|&rr| rr != r)
                            .map(|rr| (0..d).filter(|&c| c != k).map(|c| entry(rr, c)).collect())
                            .collect();
                        let m = int_det(&minor);
                        if (r + k) % 2 == 0 {
                            m
                        } else {
                            -m
                        }
                    })
                    .collect();
                IntVec::new(row)
            })
            .collect();
        Some(Cone { det, normals })
    }

    pub fn classify(&self, x: &IntVec) -> ConeSide {
        let mut side = ConeSide::Interior;
        for n in &self.normals {
            match n.dot_sign(x) * self.det {
                Sign::Positive => {}
                Sign::Zero => return ConeSide::Degenerate,
                Sign::Negative => side = ConeSide::Exterior,
            }
        }
        side
    }

    pub fn spans(&self, x: &IntVec) -> bool {
        self.classify(x) == ConeSide::Interior
    }
}

/// True iff `x` is a strictly positive combination of the `d` points of `t`.
pub fn cone_spans<P: AsRef<[Rat]>>(t: &[P], x: &[Rat]) -> Result<bool, GeometryError> {
    let d = x.len();
    if t.len() != d {
        return Err(GeometryError::PointCount {
            expected: d,
            found: t.len(),
        });
    }
    check_dims(t, d)?;
    let gens: Vec<IntVec> = t.iter().map(|p| IntVec::from_rats(p.as_ref())).collect();
    let refs: Vec<&IntVec> = gens.iter().collect();
    let cone = Cone::new(&refs).ok_or_else(|| GeometryError::Degenerate((0..d).collect()))?;
    Ok(cone.spans(&IntVec::from_rats(x)))
}

/// True iff the origin lies in the interior of the simplex spanned by the
/// `d + 1` points, decided as "the first `d` points span the antipode of
/// the last".
pub fn origin_in_simplex<P: AsRef<[Rat]>>(points: &[P]) -> Result<bool, GeometryError> {
    let Some(first) = points.first() else {
        return Err(GeometryError::PointCount {
            expected: 1,
            found: 0,
        });
    };
    let d = first.as_ref().len();
    if points.len() != d + 1 {
        return Err(GeometryError::PointCount {
            expected: d + 1,
            found: points.len(),
        });
    }
    check_dims(points, d)?;
    let ints: Vec<IntVec> = points
        .iter()
        .map(|p| IntVec::from_rats(p.as_ref()))
        .collect();
    general_position_ints(&ints, d).map_err(GeometryError::Degenerate)?;
    Ok(origin_in_simplex_ints(&ints))
}

/// Callers guarantee general position of the `d + 1` vectors.
pub(crate) fn origin_in_simplex_ints(ints: &[IntVec]) -> bool {
    let d = ints.len() - 1;
    let refs: Vec<&IntVec> = ints[..d].iter().collect();
    Cone::new(&refs)
        .expect("general position")
        .spans(&ints[d].negated())
}

/// True iff the origin is interior to the convex hull of at least `d + 1`
/// points in general position (then hull membership and interior membership
/// coincide). Decided by Carathéodory enumeration over `(d + 1)`-subsets.
pub fn origin_in_hull_interior<P: AsRef<[Rat]>>(
    points: &[P],
    d: usize,
) -> Result<bool, GeometryError> {
    check_dims(points, d)?;
    let ints: Vec<IntVec> = points
        .iter()
        .map(|p| IntVec::from_rats(p.as_ref()))
        .collect();
    general_position_ints(&ints, d).map_err(GeometryError::Degenerate)?;
    Ok(origin_in_hull_ints(&ints, d))
}

pub(crate) fn origin_in_hull_ints(ints: &[IntVec], d: usize) -> bool {
    if ints.len() < d + 1 {
        return false;
    }
    (0..ints.len()).combinations(d + 1).any(|subset| {
        let simplex: Vec<IntVec> = subset.iter().map(|&i| ints[i].clone()).collect();
        origin_in_simplex_ints(&simplex)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(list: &[&[i64]]) -> Vec<Vec<Rat>> {
        list.iter().map(|c| int_point(c)).collect()
    }

    #[test]
    fn general_position_examples() {
        assert!(is_general_position(&pts(&[&[1, 0], &[0, 1], &[1, 1]]), 2).is_ok());
        assert_eq!(
            is_general_position(&pts(&[&[1, 0], &[2, 0], &[0, 1]]), 2),
            Err(vec![0, 1])
        );
        // all four 3-subsets have nonzero determinant (1, 1, 1, 1 up to sign)
        let p = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert!(is_general_position(&p, 3).is_ok());
    }

    #[test]
    fn cone_examples() {
        let t = pts(&[&[1, 0], &[0, 1]]);
        assert!(cone_spans(&t, &int_point(&[1, 1])).unwrap());
        assert!(!cone_spans(&t, &int_point(&[-1, -1])).unwrap());
        let t3 = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(cone_spans(&t3, &int_point(&[2, 3, 5])).unwrap());
        // boundary rays are not spanned
        assert!(!cone_spans(&t, &int_point(&[1, 0])).unwrap());
        assert!(matches!(
            cone_spans(&pts(&[&[1, 0], &[2, 0]]), &int_point(&[1, 1])),
            Err(GeometryError::Degenerate(_))
        ));
    }

    #[test]
    fn simplex_examples() {
        assert!(origin_in_simplex(&pts(&[&[1, 0], &[-1, 1], &[-1, -1]])).unwrap());
        assert!(!origin_in_simplex(&pts(&[&[1, 0], &[2, 1], &[1, 1]])).unwrap());
        let s3 = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
        assert!(origin_in_simplex(&s3).unwrap());
        assert!(origin_in_simplex(&pts(&[&[1, 0], &[-1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn one_dimensional_simplex_is_a_sign_change() {
        assert!(origin_in_simplex(&pts(&[&[3], &[-2]])).unwrap());
        assert!(!origin_in_simplex(&pts(&[&[3], &[2]])).unwrap());
    }

    #[test]
    fn hull_examples() {
        let p = pts(&[&[1, 0], &[-1, 1], &[-1, -1], &[5, 4]]);
        assert!(origin_in_hull_interior(&p, 2).unwrap());
        // (5, 5) is a negative multiple of (-1, -1): rejected as degenerate
        let collinear = pts(&[&[1, 0], &[-1, 1], &[-1, -1], &[5, 5]]);
        assert_eq!(
            origin_in_hull_interior(&collinear, 2),
            Err(GeometryError::Degenerate(vec![2, 3]))
        );
        let q = pts(&[&[1, 0], &[2, 1], &[1, 1], &[3, 1]]);
        assert!(!origin_in_hull_interior(&q, 2).unwrap());
        assert!(!origin_in_hull_interior(&pts(&[&[1, 0], &[0, 1]]), 2).unwrap());
    }
}

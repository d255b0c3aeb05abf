//! Exact rational scalars and sign-exact determinant evaluation.
//!
//! Every geometric predicate in the crate bottoms out in [`det_sign`] or in
//! the integer determinant routines below. Determinants are evaluated with
//! fraction-free (Bareiss) elimination, first in checked `i128` arithmetic
//! and, on overflow, again over arbitrary-precision integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_i128(v: i128) -> Sign {
        match v.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn of_big(v: &BigInt) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i8() * rhs.as_i8() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Negative
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed numeral {0:?}")]
pub struct ParseRatError(pub String);

/// Arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rat {
        Rat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int(v: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn sign(&self) -> Sign {
        Sign::of_big(self.0.numer())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::from_int(v)
    }
}

impl From<BigRational> for Rat {
    fn from(v: BigRational) -> Rat {
        Rat(v)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0.clone())
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `"<int>"` or `"<int>/<int>"` with a nonzero denominator.
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let err = || ParseRatError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let valid = |x: &str| {
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(n) || !valid(d) {
            return Err(err());
        }
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rat::new(n, d))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Scales a rational vector by a positive factor so that it becomes a
/// primitive integer vector (coprime entries). Direction and all sign-based
/// predicates are preserved.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Sign of the determinant of a square rational matrix.
///
/// Each row is first scaled by the positive lcm of its denominators, which
/// leaves the sign unchanged.
pub fn det_sign(m: &[Vec<Rat>]) -> Sign {
    let rows: Vec<Vec<BigInt>> = m.iter().map(|r| primitive_integer_vector(r)).collect();
    int_det_sign(&rows)
}

/// Sign of the determinant of a square integer matrix.
pub fn int_det_sign(m: &[Vec<BigInt>]) -> Sign {
    Sign::of_big(&int_det(m))
}

/// Determinant of a square integer matrix. The empty matrix has determinant 1.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if let Some(small) = to_i128_matrix(m) {
        if let Some(v) = bareiss_i128(small) {
            return BigInt::from(v);
        }
    }
    bareiss_big(m.to_vec())
}

fn to_i128_matrix(m: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
        .collect()
}

/// Fraction-free elimination in checked `i128`; `None` on overflow.
fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Some(0);
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].checked_mul(a[k][k])?;
                let rhs = a[i][k].checked_mul(a[k][j])?;
                a[i][j] = lhs.checked_sub(rhs)? / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    let det = a[n - 1][n - 1];
    Some(if negate { -det } else { det })
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Integer vector with an optional machine-word shadow for fast dot products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntVec {
    big: Vec<BigInt>,
    small: Option<Vec<i128>>,
}

impl IntVec {
    pub fn new(big: Vec<BigInt>) -> IntVec {
        let small = big.iter().map(|x| x.to_i128()).collect();
        IntVec { big, small }
    }

    pub fn from_rats(v: &[Rat]) -> IntVec {
        IntVec::new(primitive_integer_vector(v))
    }

    pub fn as_big(&self) -> &[BigInt] {
        &self.big
    }

    pub fn len(&self) -> usize {
        self.big.len()
    }

    pub fn is_empty(&self) -> bool {
        self.big.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.big.iter().all(|x| x.is_zero())
    }

    pub fn negated(&self) -> IntVec {
        IntVec {
            big: self.big.iter().map(|x| -x).collect(),
            small: self
                .small
                .as_ref()
                .and_then(|s| s.iter().map(|x| x.checked_neg()).collect()),
        }
    }

    /// Exact sign of the dot product.
    pub fn dot_sign(&self, other: &IntVec) -> Sign {
        if let (Some(a), Some(b)) = (&self.small, &other.small) {
            let mut acc: i128 = 0;
            let mut ok = true;
            for (x, y) in a.iter().zip(b) {
                match x.checked_mul(*y).and_then(|p| acc.checked_add(p)) {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Sign::of_i128(acc);
            }
        }
        let acc: BigInt = self.big.iter().zip(&other.big).map(|(x, y)| x * y).sum();
        Sign::of_big(&acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn identity_is_positive() {
        let m = ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(det_sign(&m), Sign::Positive);
    }

    #[test]
    fn row_swap_flips_sign() {
        let m = ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(det_sign(&m), Sign::Negative);
    }

    #[test]
    fn repeated_row_is_singular() {
        let m = ints(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(det_sign(&m), Sign::Zero);
    }

    #[test]
    fn rational_entries() {
        // det [[1/2, 1/3], [1/5, 1/7]] = 1/14 - 1/15 > 0
        let m = vec![
            vec![Rat::new(1, 2), Rat::new(1, 3)],
            vec![Rat::new(1, 5), Rat::new(1, 7)],
        ];
        assert_eq!(det_sign(&m), Sign::Positive);
    }

    #[test]
    fn overflowing_entries_fall_back_to_bigint() {
        let big = BigInt::from(10).pow(30);
        let m = vec![
            vec![big.clone(), BigInt::from(1)],
            vec![BigInt::from(1), big.clone()],
        ];
        assert_eq!(int_det(&m), &big * &big - 1);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("6/-4".parse::<Rat>().unwrap().to_string(), "-3/2");
        assert_eq!(" 7 ".parse::<Rat>().unwrap().to_string(), "7");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("1.5".parse::<Rat>().is_err());
        assert!("abc".parse::<Rat>().is_err());
        assert_eq!("0/5".parse::<Rat>().unwrap(), Rat::zero());
    }

    #[test]
    fn primitive_vector_is_positive_multiple() {
        let v = vec![Rat::new(2, 3), Rat::new(-4, 9), Rat::zero()];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }

    #[test]
    fn dot_sign_matches_big_path() {
        let a = IntVec::new(vec![BigInt::from(i128::MAX), BigInt::from(1)]);
        let b = IntVec::new(vec![BigInt::from(2), BigInt::from(-1)]);
        assert_eq!(a.dot_sign(&b), Sign::Positive);
    }
}

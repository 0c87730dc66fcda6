use std::fmt;
use std::ops::{Deref, Index};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// Integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num / den` as a rational. Panics on a zero denominator.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_q(text: &str) -> Result<Q> {
    let text = text.trim();
    let bad = || Error::input(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

/// Render as `"p"` or `"p/q"` in lowest terms.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A vector of exact rationals.
///
/// Ordering is lexicographic, which is what every canonical ordering in the
/// crate (vertices, samples, one-parameter subgroups) relies on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVector(Vec<Q>);

impl QVector {
    pub fn new(coords: Vec<Q>) -> Self {
        QVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Q::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVector(coords.iter().map(|&c| qi(c)).collect())
    }

    pub fn from_bigints(coords: &[BigInt]) -> Self {
        QVector(coords.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    /// Unit vector `e_i` in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Q::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Q> {
        self.0
    }

    pub fn dot(&self, other: &QVector) -> Q {
        dot(&self.0, &other.0)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Q) -> QVector {
        QVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.denom().is_one())
    }

    /// Arithmetic mean of a nonempty set of points.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a QVector>) -> QVector {
        let mut iter = points.into_iter();
        let first = iter.next().expect("centroid of an empty point set");
        let mut sum = first.clone();
        let mut n = 1i64;
        for p in iter {
            for (s, c) in sum.0.iter_mut().zip(&p.0) {
                *s += c;
            }
            n += 1;
        }
        let inv = qr(1, n);
        sum.scale(&inv)
    }

    /// Coprime integer entries proportional to `self` by a positive factor.
    pub fn primitive(&self) -> Result<QVector> {
        if self.is_zero() {
            return Err(Error::input("primitive vector of the zero vector"));
        }
        Ok(QVector::from_bigints(&primitive_integer(&self.0)))
    }
}

impl Deref for QVector {
    type Target = [Q];

    fn deref(&self) -> &[Q] {
        &self.0
    }
}

impl Index<usize> for QVector {
    type Output = Q;

    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl From<Vec<Q>> for QVector {
    fn from(v: Vec<Q>) -> Self {
        QVector(v)
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Clear denominators and divide by the gcd; the direction is preserved.
/// The zero vector maps to the zero vector.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Divide an integer vector by the gcd of its entries (sign kept).
pub fn reduce_integer(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(
            QVector::from_ints(&[2, 4]).primitive().unwrap(),
            QVector::from_ints(&[1, 2])
        );
        let v = QVector::new(vec![qr(1, 3), qr(1, 2)]);
        assert_eq!(v.primitive().unwrap(), QVector::from_ints(&[2, 3]));
        assert_eq!(
            QVector::from_ints(&[-2, 0]).primitive().unwrap(),
            QVector::from_ints(&[-1, 0])
        );
        assert!(QVector::zeros(3).primitive().is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-3/6").unwrap(), qr(-1, 2));
        assert_eq!(parse_q(" 7 ").unwrap(), qi(7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(fmt_q(&qr(4, 6)), "2/3");
        assert_eq!(fmt_q(&qi(-5)), "-5");
    }
}

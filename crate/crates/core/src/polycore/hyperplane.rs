use num::{Signed, Zero};

use super::linalg;
use super::vector::{primitive_integer, QVector, Q};
use crate::error::{Error, Result};

/// An affine hyperplane `normal . x = offset`.
///
/// The normal is a primitive integer vector whose first nonzero entry is
/// positive, so equal hyperplanes have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: QVector,
    offset: Q,
}

impl Hyperplane {
    pub fn new(normal: &QVector, offset: &Q) -> Result<Hyperplane> {
        if normal.is_zero() {
            return Err(Error::input("hyperplane with zero normal"));
        }
        let prim = QVector::from_bigints(&primitive_integer(normal));
        // `prim = c * normal` with c > 0; find c from any nonzero coordinate.
        let i = (0..normal.dim()).find(|&i| !normal[i].is_zero()).unwrap();
        let c = &prim[i] / &normal[i];
        let mut offset = offset * &c;
        let mut normal = prim;
        if normal[i].is_negative() {
            normal = normal.neg();
            offset = -offset;
        }
        Ok(Hyperplane { normal, offset })
    }

    /// The hyperplane through `points` when their affine hull has codimension one.
    pub fn through(points: &[&QVector]) -> Option<Hyperplane> {
        let p0 = points.first()?;
        let r = p0.dim();
        let dirs: Vec<Vec<Q>> = points[1..].iter().map(|p| p.sub(p0).into_inner()).collect();
        let ns = linalg::nullspace(&dirs, r);
        if ns.len() != 1 {
            return None;
        }
        let n = &ns[0];
        Hyperplane::new(n, &n.dot(p0)).ok()
    }

    pub fn normal(&self) -> &QVector {
        &self.normal
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    /// `normal . x - offset`.
    pub fn eval(&self, x: &QVector) -> Q {
        self.normal.dot(x) - &self.offset
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.eval(x).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::vector::{qi, qr};

    #[test]
    fn canonical_sign_and_scale() {
        let a = Hyperplane::new(&QVector::from_ints(&[-2, 4]), &qi(6)).unwrap();
        let b = Hyperplane::new(&QVector::new(vec![qr(1, 2), qi(-1)]), &qr(-3, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.normal(), &QVector::from_ints(&[1, -2]));
        assert_eq!(a.offset(), &qi(-3));
    }

    #[test]
    fn through_points() {
        let p = QVector::from_ints(&[1, 0, 0]);
        let q = QVector::from_ints(&[0, 1, 0]);
        let r = QVector::from_ints(&[0, 0, 1]);
        let h = Hyperplane::through(&[&p, &q, &r]).unwrap();
        assert_eq!(h.normal(), &QVector::from_ints(&[1, 1, 1]));
        assert_eq!(h.offset(), &qi(1));
        assert!(Hyperplane::through(&[&p, &q]).is_none());
    }
}

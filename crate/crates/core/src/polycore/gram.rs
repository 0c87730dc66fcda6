use num::Signed;

use super::linalg::{self, QMatrix};
use super::vector::{fmt_q, QVector, Q};
use crate::error::{Error, Result};

/// A symmetric positive-definite rational form `B` on one-parameter subgroups,
/// `|lambda|_B^2 = lambda^T B lambda`.
///
/// Distances between characters are measured with the dual form `B^{-1}`,
/// which is kept alongside `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    b: QMatrix,
    b_inv: QMatrix,
}

impl GramForm {
    pub fn identity(r: usize) -> GramForm {
        GramForm {
            b: linalg::identity(r),
            b_inv: linalg::identity(r),
        }
    }

    /// Validates symmetry and positive-definiteness (all leading principal
    /// minors positive).
    pub fn new(b: QMatrix) -> Result<GramForm> {
        let r = b.len();
        if r == 0 || b.iter().any(|row| row.len() != r) {
            return Err(Error::input("form must be a nonempty square matrix"));
        }
        for i in 0..r {
            for j in 0..i {
                if b[i][j] != b[j][i] {
                    return Err(Error::input(format!(
                        "form is not symmetric: entry ({i},{j}) = {} but ({j},{i}) = {}",
                        fmt_q(&b[i][j]),
                        fmt_q(&b[j][i])
                    )));
                }
            }
        }
        for (k, m) in linalg::leading_minors(&b).iter().enumerate() {
            if !m.is_positive() {
                return Err(Error::input(format!(
                    "form is not positive definite: leading principal minor of order {} is {}",
                    k + 1,
                    fmt_q(m)
                )));
            }
        }
        let b_inv = linalg::inverse(&b).expect("positive definite implies invertible");
        Ok(GramForm { b, b_inv })
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.b
    }

    pub fn inverse_matrix(&self) -> &QMatrix {
        &self.b_inv
    }

    /// `lambda^T B lambda`.
    pub fn norm_sq(&self, lambda: &QVector) -> Q {
        lambda.dot(&QVector::new(linalg::mat_vec(&self.b, lambda)))
    }

    /// `v^T B^{-1} v`, the squared length of a character-space vector.
    pub fn dual_norm_sq(&self, v: &QVector) -> Q {
        v.dot(&self.dual_apply(v))
    }

    /// `B^{-1} v`: turns a character-space displacement into the matching
    /// one-parameter-subgroup direction.
    pub fn dual_apply(&self, v: &QVector) -> QVector {
        QVector::new(linalg::mat_vec(&self.b_inv, v))
    }

    /// `u^T B^{-1} v`.
    pub fn dual_inner(&self, u: &QVector, v: &QVector) -> Q {
        u.dot(&self.dual_apply(v))
    }

    /// Invariance under a lattice automorphism `w` acting on characters by
    /// `chi -> w chi`. The induced action on one-parameter subgroups is
    /// `lambda -> w^{-T} lambda`; the form is invariant when `w B w^T = B`.
    pub fn is_invariant_under(&self, w: &QMatrix) -> bool {
        let wt = linalg::transpose(w);
        linalg::mat_mul(&linalg::mat_mul(w, &self.b), &wt) == self.b
    }

    pub fn is_identity(&self) -> bool {
        self.b == linalg::identity(self.rank())
    }
}

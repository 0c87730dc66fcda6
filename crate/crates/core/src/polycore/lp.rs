//! Exact phase-one simplex (Bland's rule) for feasibility questions.
//!
//! This is deliberately independent of the double-description code so it can
//! serve as an oracle for hull membership.

use num::{One, Signed, Zero};

use super::vector::{QVector, Q};

/// A point of `{x >= 0 : a x = b}`, or `None` when the system is infeasible.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // Tableau columns: n originals, m artificials, rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if neg { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Q::one() } else { Q::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // Objective row: minimise the sum of artificials, expressed in reduced costs.
    let mut obj = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((p, _)) = leave else {
            // Unbounded phase-one objective cannot happen (it is bounded below by 0).
            unreachable!("phase one is bounded");
        };
        let inv = t[p][enter].recip();
        for x in t[p].iter_mut() {
            *x *= &inv;
        }
        for i in 0..=m {
            if i != p && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    if !t[p][j].is_zero() {
                        let d = &f * &t[p][j];
                        t[i][j] -= d;
                    }
                }
            }
        }
        basis[p] = enter;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < n {
            x[bj] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Convex coefficients expressing `theta` in terms of `points`, if any.
pub fn convex_coefficients(theta: &QVector, points: &[QVector]) -> Option<Vec<Q>> {
    let r = theta.dim();
    let n = points.len();
    let mut a: Vec<Vec<Q>> = (0..r)
        .map(|i| points.iter().map(|p| p[i].clone()).collect())
        .collect();
    a.push(vec![Q::one(); n]);
    let mut b: Vec<Q> = theta.coords().to_vec();
    b.push(Q::one());
    feasible_point(&a, &b)
}

pub fn in_convex_hull(theta: &QVector, points: &[QVector]) -> bool {
    convex_coefficients(theta, points).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::vector::qi;

    #[test]
    fn hull_membership() {
        let pts: Vec<QVector> = [[2, 1], [2, -1]].iter().map(|p| QVector::from_ints(p)).collect();
        assert!(!in_convex_hull(&QVector::from_ints(&[0, 0]), &pts));
        assert!(in_convex_hull(&QVector::from_ints(&[2, 0]), &pts));
        let c = convex_coefficients(&QVector::from_ints(&[2, 1]), &pts).unwrap();
        assert_eq!(c, vec![qi(1), qi(0)]);
    }

    #[test]
    fn infeasible_system() {
        // x1 + x2 = -1 with x >= 0
        assert!(feasible_point(&[vec![qi(1), qi(1)]], &[qi(-1)]).is_none());
        assert!(feasible_point(&[vec![qi(1), qi(-1)]], &[qi(-1)]).is_some());
    }
}

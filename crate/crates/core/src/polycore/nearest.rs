//! Nearest points in polytopes under the dual metric `B^{-1}`.
//!
//! [`min_norm_point`] is Wolfe's active-set method run in exact arithmetic;
//! [`min_norm_point_enumerate`] is the face-enumeration reference it is tested
//! against.

use itertools::Itertools;
use num::{One, Signed, Zero};

use super::gram::GramForm;
use super::linalg;
use super::polytope::QPolytope;
use super::vector::{QVector, Q};
use crate::error::{Error, Result};

/// Solve `min |sum v_i p_i|` subject to `sum v_i = 1` for the points of `set`
/// given their Gram matrix. `None` when the set is affinely dependent.
fn affine_minimizer(gram: &[Vec<Q>], set: &[usize]) -> Option<Vec<Q>> {
    let k = set.len();
    let mut a: Vec<Vec<Q>> = Vec::with_capacity(k + 1);
    for &i in set {
        let mut row: Vec<Q> = set.iter().map(|&j| gram[i][j].clone()).collect();
        row.push(Q::one());
        a.push(row);
    }
    let mut last = vec![Q::one(); k];
    last.push(Q::zero());
    a.push(last);
    let mut rhs = vec![Q::zero(); k];
    rhs.push(Q::one());
    let sol = linalg::solve(&a, &rhs)?;
    Some(sol[..k].to_vec())
}

fn quad(gram: &[Vec<Q>], set: &[usize], w: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (a, &i) in set.iter().enumerate() {
        for (b, &j) in set.iter().enumerate() {
            acc += &w[a] * &w[b] * &gram[i][j];
        }
    }
    acc
}

fn combine(points: &[QVector], set: &[usize], w: &[Q]) -> QVector {
    let mut x = QVector::zeros(points[0].dim());
    for (&i, wi) in set.iter().zip(w) {
        x = x.add(&points[i].scale(wi));
    }
    x
}

fn gram_matrix(points: &[QVector], form: &GramForm) -> Vec<Vec<Q>> {
    let mapped: Vec<QVector> = points.iter().map(|p| form.dual_apply(p)).collect();
    points
        .iter()
        .map(|p| mapped.iter().map(|m| p.dot(m)).collect())
        .collect()
}

/// Point of `Conv(points)` closest to the origin in the `B^{-1}` metric,
/// with its squared distance.
pub fn min_norm_point(points: &[QVector], form: &GramForm) -> (QVector, Q) {
    let n = points.len();
    let gram = gram_matrix(points, form);
    let start = (0..n)
        .min_by(|&a, &b| gram[a][a].cmp(&gram[b][b]))
        .expect("nonempty point set");
    let mut set = vec![start];
    let mut w = vec![Q::one()];
    loop {
        let xp: Vec<Q> = (0..n)
            .map(|j| {
                set.iter()
                    .zip(&w)
                    .fold(Q::zero(), |acc, (&i, wi)| acc + wi * &gram[i][j])
            })
            .collect();
        let xx = set
            .iter()
            .zip(&w)
            .fold(Q::zero(), |acc, (&i, wi)| acc + wi * &xp[i]);
        let j = (0..n).min_by(|&a, &b| xp[a].cmp(&xp[b])).unwrap();
        if xp[j] >= xx || set.contains(&j) {
            return (combine(points, &set, &w), xx);
        }
        set.push(j);
        w.push(Q::zero());
        loop {
            let v = affine_minimizer(&gram, &set).expect("Wolfe corral stays affinely independent");
            if v.iter().all(Signed::is_positive) {
                w = v;
                break;
            }
            let mut step: Option<Q> = None;
            for (wi, vi) in w.iter().zip(&v) {
                if !vi.is_positive() {
                    let denom = wi - vi;
                    let s = if denom.is_zero() { Q::zero() } else { wi / &denom };
                    if step.as_ref().is_none_or(|cur| &s < cur) {
                        step = Some(s);
                    }
                }
            }
            let step = step.unwrap();
            let keep = Q::one() - &step;
            let mixed: Vec<Q> = w.iter().zip(&v).map(|(wi, vi)| &step * vi + &keep * wi).collect();
            let (s2, w2): (Vec<usize>, Vec<Q>) = set
                .iter()
                .zip(mixed)
                .filter(|(_, wi)| wi.is_positive())
                .map(|(&i, wi)| (i, wi))
                .unzip();
            set = s2;
            w = w2;
        }
    }
}

/// Reference nearest point: try every affinely independent subset of at most
/// `dim + 1` points, project the origin onto its affine hull and keep the best
/// projection that lands inside the simplex.
pub fn min_norm_point_enumerate(points: &[QVector], form: &GramForm) -> (QVector, Q) {
    let n = points.len();
    let r = points[0].dim();
    let gram = gram_matrix(points, form);
    let mut best: Option<(Q, QVector)> = None;
    for size in 1..=(r + 1).min(n) {
        for set in (0..n).combinations(size) {
            let Some(v) = affine_minimizer(&gram, &set) else {
                continue;
            };
            if v.iter().any(Signed::is_negative) {
                continue;
            }
            let d = quad(&gram, &set, &v);
            let x = combine(points, &set, &v);
            let better = match &best {
                None => true,
                Some((bd, bx)) => d < *bd || (d == *bd && x < *bx),
            };
            if better {
                best = Some((d, x));
            }
        }
    }
    let (d, x) = best.expect("some vertex is always a candidate");
    (x, d)
}

fn translated(theta: &QVector, pts: &[QVector]) -> Vec<QVector> {
    pts.iter().map(|p| p.sub(theta)).collect()
}

pub(crate) fn check_dims(theta: &QVector, p: &QPolytope, form: &GramForm) -> Result<()> {
    if theta.dim() != p.ambient_dim() || form.rank() != p.ambient_dim() {
        return Err(Error::input(format!(
            "dimension mismatch: theta has {} coordinates, polytope lives in {}, form has rank {}",
            theta.dim(),
            p.ambient_dim(),
            form.rank()
        )));
    }
    Ok(())
}

/// Nearest point of `p` to `theta` in the `B^{-1}` metric (Wolfe's method).
pub fn project_metric(theta: &QVector, p: &QPolytope, form: &GramForm) -> Result<(QVector, Q)> {
    check_dims(theta, p, form)?;
    let (x, d) = min_norm_point(&translated(theta, p.vertices()), form);
    Ok((x.add(theta), d))
}

/// Same as [`project_metric`] via exhaustive enumeration of simplices.
pub fn project_metric_enumerate(theta: &QVector, p: &QPolytope, form: &GramForm) -> Result<(QVector, Q)> {
    check_dims(theta, p, form)?;
    let (x, d) = min_norm_point_enumerate(&translated(theta, p.vertices()), form);
    Ok((x.add(theta), d))
}

/// Nearest point of the relative boundary of `p` to `theta`, for `theta` in `p`.
///
/// A single point is its own relative boundary.
pub fn nearest_boundary_point(theta: &QVector, p: &QPolytope, form: &GramForm) -> Result<(QVector, Q)> {
    check_dims(theta, p, form)?;
    if !p.contains(theta) {
        return Err(Error::precondition("theta must lie in the polytope"));
    }
    if p.affine_dim() == 0 {
        return Ok((theta.clone(), Q::zero()));
    }
    let mut best: Option<(Q, QVector)> = None;
    for f in 0..p.facets().len() {
        let verts: Vec<QVector> = p
            .facet_vertices(f)
            .iter()
            .map(|&i| p.vertices()[i].sub(theta))
            .collect();
        let (x, d) = min_norm_point(&verts, form);
        let x = x.add(theta);
        let better = match &best {
            None => true,
            Some((bd, bx)) => d < *bd || (d == *bd && x < *bx),
        };
        if better {
            best = Some((d, x));
        }
    }
    let (d, x) = best.expect("positive-dimensional polytopes have facets");
    Ok((x, d))
}

/// Squared `B^{-1}` distance from `theta` (in `p`) to the relative boundary of `p`.
pub fn boundary_distance_sq(theta: &QVector, p: &QPolytope, form: &GramForm) -> Result<Q> {
    nearest_boundary_point(theta, p, form).map(|(_, d)| d)
}

//! Double description method on integer data.
//!
//! Computes the extreme rays of a pointed cone `{x : c_i . x >= 0}` given by
//! integer constraint rows. Rays are kept primitive so entries stay small.

use fixedbitset::FixedBitSet;
use num::bigint::BigInt;
use num::{Signed, Zero};

use super::linalg;
use super::vector::{reduce_integer, Q};
use crate::error::{Error, Result};

struct Ray {
    v: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Extreme rays of `{x in Q^dim : c . x >= 0 for every row c}`.
///
/// The cone must be pointed, i.e. the rows must have rank `dim`; otherwise a
/// precondition error is returned. The result is a list of primitive integer
/// vectors in no particular order.
pub fn extreme_rays(constraints: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = constraints.len();
    // Greedily choose `dim` linearly independent rows for the initial simplex.
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut basis_q: Vec<Vec<Q>> = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        if basis_rows.len() == dim {
            break;
        }
        let mut trial = basis_q.clone();
        trial.push(c.iter().map(|x| Q::from_integer(x.clone())).collect());
        if linalg::rank(&trial, dim) == trial.len() {
            basis_q = trial;
            basis_rows.push(i);
        }
    }
    if basis_rows.len() < dim {
        return Err(Error::precondition(
            "cone is not pointed (constraints do not have full rank)",
        ));
    }
    let inv = linalg::inverse(&basis_q).expect("independent rows");
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<Q> = inv.iter().map(|row| row[j].clone()).collect();
            let v = super::vector::primitive_integer(&col);
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &r) in basis_rows.iter().enumerate() {
                if k != j {
                    zeros.insert(r);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    let mut processed = FixedBitSet::with_capacity(m);
    for &r in &basis_rows {
        processed.insert(r);
    }
    for (ci, c) in constraints.iter().enumerate() {
        if processed.contains(ci) {
            continue;
        }
        processed.insert(ci);
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(c, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (ray, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    ray.zeros.insert(ci);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, other)| k == p || k == n || !common.is_subset(&other.zeros));
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = -&vals[n];
                let mut v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| a * xn + &b * xp)
                    .collect();
                reduce_integer(&mut v);
                common.insert(ci);
                new_rays.push(Ray { v, zeros: common });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + new_rays.len());
        for (ray, val) in rays.into_iter().zip(&vals) {
            if val.is_positive() {
                kept.push(ray);
            } else if val.is_zero() {
                let mut ray = ray;
                ray.zeros.insert(ci);
                kept.push(ray);
            }
        }
        kept.extend(new_rays);
        rays = kept;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}

#![allow(dead_code)]

use proptest::prelude::*;
use vgit::polycore::{qr, GramForm};
use vgit::{QVector, WeightSystem, Q};

pub fn v(c: &[i64]) -> QVector {
    QVector::from_ints(c)
}

pub fn q(n: i64, d: i64) -> Q {
    qr(n, d)
}

pub fn int_point(r: usize, lo: i64, hi: i64) -> impl Strategy<Value = QVector> {
    prop::collection::vec(lo..=hi, r).prop_map(|c| QVector::from_ints(&c))
}

pub fn rational_point(r: usize, lo: i64, hi: i64) -> impl Strategy<Value = QVector> {
    prop::collection::vec((lo..=hi, 1i64..=4), r)
        .prop_map(|c| QVector::new(c.into_iter().map(|(n, d)| qr(n, d)).collect()))
}

pub fn points(
    r: usize,
    n: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = Vec<QVector>> {
    prop::collection::vec(int_point(r, lo, hi), n)
}

/// `L L^T` for a random lower triangular integer `L` with nonzero diagonal.
pub fn gram_form(r: usize) -> impl Strategy<Value = GramForm> {
    (
        prop::collection::vec(1i64..=3, r),
        prop::collection::vec(-2i64..=2, r * r),
    )
        .prop_map(move |(diag, off)| {
            let mut l = vec![vec![Q::from_integer(0.into()); r]; r];
            for i in 0..r {
                l[i][i] = Q::from_integer(diag[i].into());
                for j in 0..i {
                    l[i][j] = Q::from_integer(off[i * r + j].into());
                }
            }
            let b = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| (0..r).map(|k| &l[i][k] * &l[j][k]).sum())
                        .collect()
                })
                .collect();
            GramForm::new(b).expect("L L^T is positive definite")
        })
}

pub fn weight_system(
    r: usize,
    n: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = WeightSystem> {
    points(r, n, lo, hi).prop_map(move |p| WeightSystem::unlabelled(r, &p).unwrap())
}

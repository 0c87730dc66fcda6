//! Weights of `k* x SL(2)` modules, restricted to `k* x T`.
//!
//! `V_{d,n}` is the module of binary forms of degree `d` on which `k*` acts
//! with weight `n`. Its `k* x T` weights are `(n, d - 2i)` for `i = 0..=d`.
//! Coordinates are `(k*-weight, T-weight)`; the Weyl group of `SL(2)` flips
//! the second coordinate.

use crate::error::Result;
use crate::polycore::linalg::QMatrix;
use crate::polycore::{qi, QVector};
use crate::stability::WeightSystem;

/// Labelled weights of `V_{d,n} (x) twist * chi_0`.
pub fn binary_form_weights(d: u32, n: i64, twist: i64) -> Vec<(String, QVector)> {
    (0..=d as i64)
        .map(|i| {
            let t = d as i64 - 2 * i;
            (format!("V{d},{n}:{t:+}"), QVector::from_ints(&[n + twist, t]))
        })
        .collect()
}

/// The Weyl group `{1, diag(1, -1)}` acting on `(k*-weight, T-weight)`.
pub fn weyl_group() -> Vec<QMatrix> {
    vec![
        vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]],
        vec![vec![qi(1), qi(0)], vec![qi(0), qi(-1)]],
    ]
}

/// Weight system of `(sum of V_{d,n}) (x) twist * chi_0` with its Weyl group.
pub fn weight_system(summands: &[(u32, i64)], twist: i64) -> Result<WeightSystem> {
    let weights = summands
        .iter()
        .flat_map(|&(d, n)| binary_form_weights(d, n, twist))
        .collect();
    WeightSystem::new(2, weights)?.with_weyl(weyl_group())
}

/// `W = V_{1,-3} + V_{1,-1} + V_{1,1} + V_{1,3}`, twisted by `-chi_0`.
pub fn first_example() -> WeightSystem {
    weight_system(&[(1, -3), (1, -1), (1, 1), (1, 3)], -1).expect("valid weights")
}

/// `W = V_{1,-1} + V_{1,1} + V_{3,3}`, twisted by `-chi_0`.
pub fn second_example() -> WeightSystem {
    weight_system(&[(1, -1), (1, 1), (3, 3)], -1).expect("valid weights")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_weights() {
        let one = first_example();
        let mut got: Vec<QVector> = one.weights().to_vec();
        got.sort();
        let mut want: Vec<QVector> = [-4, -2, 0, 2]
            .iter()
            .flat_map(|&a| [QVector::from_ints(&[a, -1]), QVector::from_ints(&[a, 1])])
            .collect();
        want.sort();
        assert_eq!(got, want);
        let two = second_example();
        assert_eq!(two.len(), 8);
        assert!(two.weights().contains(&QVector::from_ints(&[2, -3])));
        assert_eq!(two.weyl().len(), 2);
    }
}

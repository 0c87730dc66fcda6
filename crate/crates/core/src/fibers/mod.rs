//! Fibers of the maps between quotients in the torus-stabilizer case.
//!
//! A fiber over a point with torus stabilizer is the quotient of a nilcone
//! component by the stabilizer, linearized by a distinguished character.
//! Each component is a coordinate subspace; its invariant ring is the
//! semigroup ring of a graded affine monoid, and the fiber is the `Proj` of
//! that ring.

mod classify;
mod monoid;
mod weyl;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::polycore::{cell_complex, lp, Hyperplane, QPolytope, QVector};
use crate::stability::{State, WeightSystem};

pub use classify::{classify_fiber, reduce_wps, FiberDescriptor, FiberKind, Normality};
pub use monoid::{
    grading_polytope, hilbert_basis, invariant_monoid, relations, GradedMonoid, HilbertBasis, HilbertElement,
    Relation,
};
pub use weyl::{poly_mul, weyl_invariants, Polynomial, WeylAction, WeylInvariants};

/// Largest weight count accepted by [`nilcone_components`].
pub const NILCONE_LIMIT: usize = 20;

/// An irreducible component of the nilcone: the coordinate subspace on a
/// maximal set of weights whose convex hull avoids 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilconeComponent {
    pub members: State,
    pub hull: QPolytope,
}

impl NilconeComponent {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// All irreducible components of the nilcone, largest first, then by members.
///
/// Every 0-avoiding set lies in an open half-space `<lambda, .> > 0`, so the
/// candidates are the positive sides of generic `lambda`, one per chamber of
/// the central arrangement `<lambda, w_i> = 0`. When every weight is zero the
/// nilcone is the origin and the list is empty.
pub fn nilcone_components(ws: &WeightSystem) -> Result<Vec<NilconeComponent>> {
    let n = ws.len();
    if n > NILCONE_LIMIT {
        return Err(Error::resource(format!(
            "{n} weights exceed the nilcone limit of {NILCONE_LIMIT}"
        )));
    }
    let r = ws.rank();
    let hyperplanes: Vec<Hyperplane> = ws
        .weights()
        .iter()
        .filter(|w| !w.is_zero())
        .map(|w| Hyperplane::new(w, &num::zero()))
        .collect::<Result<_>>()?;
    let corners: Vec<QVector> = (0..1usize << r)
        .map(|mask| {
            QVector::from_ints(
                &(0..r)
                    .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                    .collect::<Vec<i64>>(),
            )
        })
        .collect();
    let cube = QPolytope::hull(&corners)?;
    let cx = cell_complex(&hyperplanes, &cube)?;
    let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &p in &cx.pieces {
        let lambda = &cx.cells[p].sample;
        let side: Vec<usize> = (0..n)
            .filter(|&i| ws.weight(i).dot(lambda) > num::zero())
            .collect();
        if !side.is_empty() {
            candidates.insert(side);
        }
    }
    let maximal: Vec<&Vec<usize>> = candidates
        .iter()
        .filter(|s| {
            !candidates
                .iter()
                .any(|t| t.len() > s.len() && s.iter().all(|i| t.binary_search(i).is_ok()))
        })
        .collect();
    let origin = QVector::zeros(r);
    let mut out = Vec::with_capacity(maximal.len());
    for members in maximal {
        let pts: Vec<QVector> = members.iter().map(|&i| ws.weight(i).clone()).collect();
        debug_assert!(!lp::in_convex_hull(&origin, &pts));
        out.push(NilconeComponent {
            members: State::new(members.iter().copied())?,
            hull: QPolytope::hull(&pts)?,
        });
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(out)
}

/// Whether `members` is a valid component: its hull avoids 0 and adding any
/// other weight puts 0 in the hull. Decided by exact LP.
pub fn is_maximal_component(ws: &WeightSystem, members: &State) -> bool {
    let origin = QVector::zeros(ws.rank());
    let pts = ws.points(members);
    if pts.is_empty() || lp::in_convex_hull(&origin, &pts) {
        return false;
    }
    (0..ws.len()).filter(|&j| !members.contains(j)).all(|j| {
        let mut more = pts.clone();
        more.push(ws.weight(j).clone());
        lp::in_convex_hull(&origin, &more)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2;

    fn sizes(c: &[NilconeComponent]) -> Vec<usize> {
        c.iter().map(NilconeComponent::len).collect()
    }

    #[test]
    fn first_example_has_six_components() {
        let ws = sl2::first_example();
        let c = nilcone_components(&ws).unwrap();
        assert_eq!(sizes(&c), vec![5, 5, 5, 5, 3, 3]);
        assert!(c.iter().all(|k| is_maximal_component(&ws, &k.members)));
    }

    #[test]
    fn half_space_is_one_component() {
        let ws = WeightSystem::unlabelled(
            2,
            &[
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[2, 5]),
                QVector::from_ints(&[1, -3]),
            ],
        )
        .unwrap();
        let c = nilcone_components(&ws).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].members, State::new(0..3).unwrap());
    }

    #[test]
    fn zero_weights_never_join() {
        let ws = WeightSystem::unlabelled(
            1,
            &[
                QVector::from_ints(&[-1]),
                QVector::from_ints(&[0]),
                QVector::from_ints(&[2]),
            ],
        )
        .unwrap();
        let c = nilcone_components(&ws).unwrap();
        assert_eq!(sizes(&c), vec![1, 1]);
        assert!(!is_maximal_component(&ws, &State::new([1]).unwrap()));
    }
}

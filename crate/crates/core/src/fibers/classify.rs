use num::integer::Integer;

use super::monoid::{hilbert_basis, invariant_monoid, relations, HilbertBasis, Relation};
use super::NilconeComponent;
use crate::error::Result;
use crate::polycore::QVector;
use crate::stability::WeightSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberKind {
    /// Weighted projective space with well-formed weights.
    Wps(Vec<i64>),
    /// Simplicial cone but not free: a weighted projective space divided by
    /// a finite group.
    WpsQuotient,
    /// The cone is not simplicial.
    ToricNonWps,
    /// `Proj` of a one-variable graded ring.
    Point,
    /// The monoid is trivial.
    Empty,
    /// The Hilbert basis is not known to be complete at the degree bound.
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal,
    NotDetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDescriptor {
    pub kind: FiberKind,
    pub rank: usize,
    pub content: i64,
    pub hilbert_basis: HilbertBasis,
    pub relations: Vec<Relation>,
    pub normality: Normality,
    /// Smallest raw degree `d` (a multiple of the content, up to the bound)
    /// whose `P_d` is not a simplex.
    pub nonsimplicial_degree: Option<i64>,
}

/// Well-formed weights of an isomorphic weighted projective space, sorted.
pub fn reduce_wps(weights: &[i64]) -> Vec<i64> {
    let mut w: Vec<i64> = weights.to_vec();
    if w.len() == 1 {
        return vec![1];
    }
    loop {
        let all = w.iter().fold(0, |g, x| g.gcd(x));
        if all > 1 {
            w.iter_mut().for_each(|x| *x /= all);
        }
        let mut changed = false;
        for i in 0..w.len() {
            let g = (0..w.len()).filter(|&j| j != i).fold(0, |g, j| g.gcd(&w[j]));
            if g > 1 {
                for (j, x) in w.iter_mut().enumerate() {
                    if j != i {
                        *x /= g;
                    }
                }
                changed = true;
            }
        }
        if !changed && all <= 1 {
            break;
        }
    }
    w.sort_unstable();
    w
}

/// The fiber `Proj` of the invariant ring of a component, graded by
/// `grading`, classified from a Hilbert basis computed up to `degree_bound`.
pub fn classify_fiber(
    component: &NilconeComponent,
    ws: &WeightSystem,
    grading: &QVector,
    degree_bound: i64,
) -> Result<FiberDescriptor> {
    let m = invariant_monoid(component, ws, grading)?;
    let hb = hilbert_basis(&m, degree_bound)?;
    let mut nonsimplicial_degree = None;
    for j in 1..=degree_bound {
        let d = j * m.content();
        if let Some((_, false)) = m.grading_polytope(d)? {
            nonsimplicial_degree = Some(d);
            break;
        }
    }
    if !hb.complete {
        return Ok(FiberDescriptor {
            kind: FiberKind::Undetermined,
            rank: m.rank(),
            content: m.content(),
            hilbert_basis: hb,
            relations: Vec::new(),
            normality: Normality::NotDetermined,
            nonsimplicial_degree,
        });
    }
    let rels = relations(&m, &hb, degree_bound)?;
    let kind = match m.rank() {
        0 => FiberKind::Empty,
        1 => FiberKind::Point,
        r if hb.elements.len() == r => FiberKind::Wps(reduce_wps(&hb.degrees())),
        r if m.rays().len() == r => FiberKind::WpsQuotient,
        _ => FiberKind::ToricNonWps,
    };
    Ok(FiberDescriptor {
        kind,
        rank: m.rank(),
        content: m.content(),
        hilbert_basis: hb,
        relations: rels,
        normality: Normality::Normal,
        nonsimplicial_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibers::nilcone_components;
    use crate::sl2;

    #[test]
    fn well_formed_reduction() {
        assert_eq!(reduce_wps(&[2, 4]), vec![1, 1]);
        assert_eq!(reduce_wps(&[1, 2, 3, 4]), vec![1, 2, 3, 4]);
        assert_eq!(reduce_wps(&[2, 2, 2]), vec![1, 1, 1]);
        assert_eq!(reduce_wps(&[1, 2, 2]), vec![1, 1, 1]);
        assert_eq!(reduce_wps(&[2, 3, 6]), vec![1, 1, 1]);
        assert_eq!(reduce_wps(&[7]), vec![1]);
    }

    #[test]
    fn first_example_fibers() {
        let ws = sl2::first_example();
        let comps = nilcone_components(&ws).unwrap();
        let plus = QVector::from_ints(&[1, 0]);
        let minus = QVector::from_ints(&[-1, 0]);
        let mut kinds = Vec::new();
        for c in &comps {
            for g in [&plus, &minus] {
                if let Ok(f) = classify_fiber(c, &ws, g, 12) {
                    kinds.push((c.len(), g == &plus, f.kind));
                }
            }
        }
        assert!(kinds.contains(&(3, true, FiberKind::Wps(vec![1, 1]))));
        assert!(kinds.contains(&(5, false, FiberKind::Wps(vec![1, 2, 3, 4]))));
        assert!(kinds.contains(&(5, false, FiberKind::ToricNonWps)));
    }
}

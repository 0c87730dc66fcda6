use std::collections::{BTreeSet, HashMap};

use num::{One, Zero};

use super::monoid::{hilbert_basis, GradedMonoid};
use crate::error::{Error, Result};
use crate::polycore::linalg::{mat_vec, QMatrix};
use crate::polycore::{QVector, Q};
use crate::stability::WeightSystem;

/// A polynomial in the monoid's variables: `(exponents, coefficient)` terms
/// with nonzero coefficients, in decreasing exponent order.
pub type Polynomial = Vec<(Vec<i64>, Q)>;

/// A permutation of the monoid's variables: `x_i -> x_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylAction {
    perm: Vec<usize>,
}

impl WeylAction {
    pub fn new(perm: Vec<usize>) -> Result<WeylAction> {
        let set: BTreeSet<usize> = perm.iter().copied().collect();
        if set.len() != perm.len() || perm.iter().any(|&p| p >= perm.len()) {
            return Err(Error::input("weyl action is not a permutation"));
        }
        Ok(WeylAction { perm })
    }

    pub fn identity(k: usize) -> WeylAction {
        WeylAction {
            perm: (0..k).collect(),
        }
    }

    /// The permutation induced by a Weyl element acting on the weights of
    /// the monoid's component.
    pub fn from_matrix(m: &GradedMonoid, ws: &WeightSystem, w: &QMatrix) -> Result<WeylAction> {
        let Some(vars) = m.vars() else {
            return Err(Error::precondition("monoid was not built from a component"));
        };
        let mut used = vec![false; vars.len()];
        let mut perm = Vec::with_capacity(vars.len());
        for &v in vars {
            let image = QVector::new(mat_vec(w, ws.weight(v).coords()));
            let j = (0..vars.len())
                .find(|&j| !used[j] && ws.weight(vars[j]) == &image)
                .ok_or_else(|| Error::precondition("weyl element does not preserve the component"))?;
            used[j] = true;
            perm.push(j);
        }
        Ok(WeylAction { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, n: &[i64]) -> Vec<i64> {
        let mut out = vec![0; n.len()];
        for (i, &x) in n.iter().enumerate() {
            out[self.perm[i]] = x;
        }
        out
    }

    fn check(&self, m: &GradedMonoid) -> Result<()> {
        if self.perm.len() != m.num_vars() {
            return Err(Error::input("weyl action has the wrong number of variables"));
        }
        let deg = m.raw_degrees();
        if (0..deg.len()).any(|i| deg[self.perm[i]] != deg[i]) {
            return Err(Error::precondition("weyl action does not preserve the grading"));
        }
        if !m.rays().iter().all(|r| m.contains(&self.apply(r))) {
            return Err(Error::precondition("weyl action does not preserve the monoid"));
        }
        Ok(())
    }

    fn orbit(&self, n: &[i64]) -> BTreeSet<Vec<i64>> {
        let mut out = BTreeSet::new();
        let mut x = n.to_vec();
        while out.insert(x.clone()) {
            x = self.apply(&x);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylInvariants {
    /// Generators of the invariant subalgebra with their degrees.
    pub generators: Vec<(i64, Polynomial)>,
    /// The invariants miss something in some degree up to the bound.
    pub strict_containment: bool,
    /// `(degree, invariant dimension, full dimension)` per degree.
    pub dims: Vec<(i64, usize, usize)>,
}

pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut acc: HashMap<Vec<i64>, Q> = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *acc.entry(e).or_insert_with(Q::zero) += ca * cb;
        }
    }
    let mut out: Polynomial = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out
}

/// Echelon rows over a fixed list of monomials.
struct Span {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Span {
    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    /// Adds `v`, returning whether it was new.
    fn insert(&mut self, v: Vec<Q>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        self.rows.push((p, v.into_iter().map(|x| x * &inv).collect()));
        true
    }
}

/// Generators of the `sigma`-invariant part of the monoid algebra up to
/// `degree_bound`, as orbit sums of monomials, and whether it is strictly
/// smaller than the whole algebra in some degree.
pub fn weyl_invariants(m: &GradedMonoid, sigma: &WeylAction, degree_bound: i64) -> Result<WeylInvariants> {
    sigma.check(m)?;
    if !hilbert_basis(m, degree_bound)?.complete {
        return Err(Error::precondition(
            "weyl invariants refused: the Hilbert basis is incomplete at this degree bound",
        ));
    }
    let k = m.num_vars();
    let mut generators: Vec<(i64, Polynomial)> = Vec::new();
    let mut strict = false;
    let mut dims = Vec::new();
    // Basis polynomials of the subalgebra generated so far, per degree.
    let mut algebra: Vec<Vec<Polynomial>> = vec![vec![vec![(vec![0; k], Q::one())]]];
    for d in 1..=degree_bound {
        let monomials = m.elements_of_degree(d);
        let index: HashMap<&[i64], usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let dense = |p: &Polynomial| -> Vec<Q> {
            let mut v = vec![Q::zero(); monomials.len()];
            for (e, c) in p {
                v[index[e.as_slice()]] = c.clone();
            }
            v
        };
        let mut span = Span { rows: Vec::new() };
        let mut basis: Vec<Polynomial> = Vec::new();
        for (gd, g) in &generators {
            for s in &algebra[(d - gd) as usize] {
                let p = poly_mul(g, s);
                if span.insert(dense(&p)) {
                    basis.push(p);
                }
            }
        }
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut orbits = 0;
        for e in &monomials {
            if seen.contains(e) {
                continue;
            }
            let orbit = sigma.orbit(e);
            seen.extend(orbit.iter().cloned());
            orbits += 1;
            let mut sum: Polynomial = orbit.into_iter().map(|x| (x, Q::one())).collect();
            sum.sort_by(|x, y| y.0.cmp(&x.0));
            if span.insert(dense(&sum)) {
                basis.push(sum.clone());
                generators.push((d, sum));
            }
        }
        strict |= orbits < monomials.len();
        dims.push((d, orbits, monomials.len()));
        algebra.push(basis);
    }
    Ok(WeylInvariants {
        generators,
        strict_containment: strict,
        dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::qi;

    fn monoid(torus: &[i64], degrees: &[i64]) -> GradedMonoid {
        GradedMonoid::new(
            torus.iter().map(|&t| QVector::from_ints(&[t])).collect(),
            degrees.iter().map(|&d| qi(d)).collect(),
        )
        .unwrap()
    }

    fn mono(e: &[i64]) -> Polynomial {
        vec![(e.to_vec(), Q::one())]
    }

    #[test]
    fn swap_on_second_example_intersection() {
        let m = monoid(&[-3, -1, 1, 3], &[2, 2, 2, 2]);
        let sigma = WeylAction::new(vec![3, 2, 1, 0]).unwrap();
        let inv = weyl_invariants(&m, &sigma, 6).unwrap();
        assert!(inv.strict_containment);
        let gens: Vec<Polynomial> = inv.generators.iter().map(|g| g.1.clone()).collect();
        let sum = vec![(vec![1, 0, 3, 0], Q::one()), (vec![0, 3, 0, 1], Q::one())];
        assert_eq!(gens, vec![mono(&[1, 0, 0, 1]), mono(&[0, 1, 1, 0]), sum]);
    }

    #[test]
    fn identity_gives_everything() {
        let m = monoid(&[-3, -1, 1, 3], &[2, 2, 2, 2]);
        let inv = weyl_invariants(&m, &WeylAction::identity(4), 6).unwrap();
        assert!(!inv.strict_containment);
        assert_eq!(inv.generators.len(), 4);
    }

    #[test]
    fn swapping_equal_variables_of_a_free_monoid() {
        // n1 + n2 = n3: generators x1 x3 and x2 x3, swapped by x1 <-> x2.
        let m = monoid(&[1, 1, -1], &[1, 1, 1]);
        let sigma = WeylAction::new(vec![1, 0, 2]).unwrap();
        let inv = weyl_invariants(&m, &sigma, 4).unwrap();
        assert!(inv.strict_containment);
        assert_eq!(inv.generators.len(), 2);
        let bad = WeylAction::new(vec![2, 1, 0]).unwrap();
        assert!(weyl_invariants(&m, &bad, 4).is_err());
    }

    #[test]
    fn swap_outside_the_support_of_a_rank_one_monoid() {
        let m = monoid(&[1, 1, 0], &[1, 1, 1]);
        assert_eq!(m.rank(), 1);
        let sigma = WeylAction::new(vec![1, 0, 2]).unwrap();
        let inv = weyl_invariants(&m, &sigma, 5).unwrap();
        assert!(!inv.strict_containment);
        assert_eq!(inv.generators, vec![(1, mono(&[0, 0, 1]))]);
    }
}

use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, ToPrimitive, Zero};

use super::NilconeComponent;
use crate::error::{Error, Result};
use crate::polycore::linalg::{integer_kernel, orthogonal_integer_basis};
use crate::polycore::{dd, lp, Constraint, QPolytope, QVector, Q};
use crate::stability::WeightSystem;

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::resource("monoid data does not fit in 64-bit integers"))
}

/// Scales a rational row to integers by the lcm of its denominators.
fn integer_row(row: &[Q]) -> Result<Vec<i64>> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| to_i64(&(x * Q::from_integer(l.clone())).to_integer()))
        .collect()
}

fn idot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `{n in N^k : sum n_i torus_part(i) = 0}`, graded by a linear functional
/// that is positive on every nonzero element.
#[derive(Clone, Debug)]
pub struct GradedMonoid {
    vars: Option<Vec<usize>>,
    torus_part: Vec<QVector>,
    /// Integer rows of the torus condition, one per nonzero coordinate.
    torus: Vec<Vec<i64>>,
    raw_degrees: Vec<i64>,
    rays: Vec<Vec<i64>>,
    support: Vec<usize>,
    rank: usize,
    content: i64,
    /// Positive integer weights on the support that agree with
    /// `walk_scale * raw degree` on the monoid, used to enumerate it.
    walk: Vec<i64>,
    walk_scale: Q,
}

impl GradedMonoid {
    /// The monoid of `n` with `sum n_i torus_part(i) = 0`, graded by
    /// `sum n_i degrees(i)` (scaled to integers).
    pub fn new(torus_part: Vec<QVector>, degrees: Vec<Q>) -> Result<GradedMonoid> {
        let k = torus_part.len();
        if k == 0 {
            return Err(Error::input("a monoid needs at least one variable"));
        }
        if degrees.len() != k {
            return Err(Error::input("one degree per variable is required"));
        }
        let t = torus_part[0].dim();
        if torus_part.iter().any(|p| p.dim() != t) {
            return Err(Error::input("torus parts have different dimensions"));
        }
        let mut torus = Vec::new();
        for j in 0..t {
            let row = integer_row(&torus_part.iter().map(|p| p[j].clone()).collect::<Vec<_>>())?;
            if row.iter().any(|&x| x != 0) {
                torus.push(row);
            }
        }
        let raw_degrees = integer_row(&degrees)?;

        let mut rows: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| BigInt::from(i64::from(i == j))).collect())
            .collect();
        for row in &torus {
            rows.push(row.iter().map(|&x| BigInt::from(x)).collect());
            rows.push(row.iter().map(|&x| BigInt::from(-x)).collect());
        }
        let mut rays: Vec<Vec<i64>> = dd::extreme_rays(&rows, k)?
            .iter()
            .map(|r| r.iter().map(to_i64).collect::<Result<Vec<i64>>>())
            .collect::<Result<_>>()?;
        rays.sort();
        if rays.iter().any(|r| idot(r, &raw_degrees) <= 0) {
            return Err(Error::precondition(
                "grading is not positive on the invariant monoid: some invariant has non-positive degree",
            ));
        }
        let support: Vec<usize> = (0..k).filter(|&i| rays.iter().any(|r| r[i] != 0)).collect();

        let restricted: Vec<Vec<BigInt>> = torus
            .iter()
            .map(|row| support.iter().map(|&i| BigInt::from(row[i])).collect())
            .collect();
        let lattice: Vec<Vec<i64>> = if support.is_empty() {
            Vec::new()
        } else if restricted.is_empty() {
            (0..support.len())
                .map(|a| (0..support.len()).map(|b| i64::from(a == b)).collect())
                .collect()
        } else {
            integer_kernel(&restricted, support.len())
                .iter()
                .map(|v| v.iter().map(to_i64).collect::<Result<Vec<i64>>>())
                .collect::<Result<_>>()?
        };
        let rank = lattice.len();
        let content = lattice
            .iter()
            .map(|v| {
                support
                    .iter()
                    .zip(v)
                    .map(|(&i, x)| raw_degrees[i] * x)
                    .sum::<i64>()
            })
            .fold(0i64, |g, d| g.gcd(&d));
        let content = if content == 0 { 1 } else { content };

        // c * raw_i + <t, torus_i> = 1 + s_i with c, s >= 0 and t free.
        let (walk, walk_scale) = if support.is_empty() {
            (Vec::new(), Q::one())
        } else {
            let m = torus.len();
            let a: Vec<Vec<Q>> = support
                .iter()
                .enumerate()
                .map(|(row, &i)| {
                    let mut r = vec![Q::from_integer(raw_degrees[i].into())];
                    r.extend(torus.iter().map(|t| Q::from_integer(t[i].into())));
                    r.extend(torus.iter().map(|t| Q::from_integer((-t[i]).into())));
                    r.extend((0..support.len()).map(|s| if s == row { -Q::one() } else { Q::zero() }));
                    r
                })
                .collect();
            let b = vec![Q::one(); support.len()];
            let x = lp::feasible_point(&a, &b).expect("a positive grading admits a positive shift");
            let c = x[0].clone();
            let e: Vec<Q> = support
                .iter()
                .map(|&i| {
                    let mut v = &c * Q::from_integer(raw_degrees[i].into());
                    for (j, t) in torus.iter().enumerate() {
                        v += (&x[1 + j] - &x[1 + m + j]) * Q::from_integer(t[i].into());
                    }
                    v
                })
                .collect();
            let den = e.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let scale = Q::from_integer(den);
            let walk = e
                .iter()
                .map(|x| to_i64(&(x * &scale).to_integer()))
                .collect::<Result<Vec<i64>>>()?;
            (walk, c * scale)
        };

        Ok(GradedMonoid {
            vars: None,
            torus_part,
            torus,
            raw_degrees,
            rays,
            support,
            rank,
            content,
            walk,
            walk_scale,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.raw_degrees.len()
    }

    /// Weight indices of the variables, when built from a nilcone component.
    pub fn vars(&self) -> Option<&[usize]> {
        self.vars.as_deref()
    }

    pub fn torus_part(&self) -> &[QVector] {
        &self.torus_part
    }

    /// Degree of each variable before normalization.
    pub fn raw_degrees(&self) -> &[i64] {
        &self.raw_degrees
    }

    /// Gcd of the raw grading on the monoid; normalized degrees are raw
    /// degrees divided by it.
    pub fn content(&self) -> i64 {
        self.content
    }

    /// Rank of the group generated by the monoid.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Primitive generators of the extreme rays of the monoid's cone.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Variables occurring in some element.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn raw_degree(&self, n: &[i64]) -> i64 {
        idot(n, &self.raw_degrees)
    }

    /// Normalized degree of a monoid element.
    pub fn degree(&self, n: &[i64]) -> i64 {
        self.raw_degree(n) / self.content
    }

    pub fn contains(&self, n: &[i64]) -> bool {
        n.len() == self.num_vars()
            && n.iter().all(|&x| x >= 0)
            && self.torus.iter().all(|row| idot(row, n) == 0)
    }

    /// Degree bound past which no Hilbert basis element exists: an
    /// irreducible element that is not a ray generator is a combination of
    /// independent ray generators with coefficients in `[0, 1)`, so its degree
    /// is below the sum of the `rank` largest ray degrees.
    pub fn certificate(&self) -> i64 {
        let mut d: Vec<i64> = self.rays.iter().map(|r| self.degree(r)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d.iter().take(self.rank).sum()
    }

    /// All elements of normalized degree `d`, in decreasing lexicographic order.
    pub fn elements_of_degree(&self, d: i64) -> Vec<Vec<i64>> {
        let k = self.num_vars();
        if d == 0 {
            return vec![vec![0; k]];
        }
        if self.support.is_empty() || d < 0 {
            return Vec::new();
        }
        let target = &self.walk_scale * Q::from_integer((d * self.content).into());
        if !target.is_integer() {
            return Vec::new();
        }
        let Some(target) = target.to_integer().to_i64() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut n = vec![0i64; k];
        let mut acc = vec![0i64; self.torus.len()];
        self.walk_from(0, target, &mut n, &mut acc, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    fn walk_from(&self, pos: usize, left: i64, n: &mut [i64], acc: &mut [i64], out: &mut Vec<Vec<i64>>) {
        let var = self.support[pos];
        let w = self.walk[pos];
        if pos + 1 == self.support.len() {
            if left % w != 0 {
                return;
            }
            let c = left / w;
            if self
                .torus
                .iter()
                .zip(acc.iter())
                .all(|(row, a)| a + row[var] * c == 0)
            {
                n[var] = c;
                out.push(n.to_vec());
                n[var] = 0;
            }
            return;
        }
        for c in 0..=left / w {
            n[var] = c;
            for (a, row) in acc.iter_mut().zip(&self.torus) {
                *a += row[var] * c;
            }
            self.walk_from(pos + 1, left - c * w, n, acc, out);
            for (a, row) in acc.iter_mut().zip(&self.torus) {
                *a -= row[var] * c;
            }
        }
        n[var] = 0;
    }

    /// `P_d`: nonnegative real solutions of the torus condition with raw
    /// degree `d`, with whether it is a simplex. `None` when empty.
    pub fn grading_polytope(&self, d: i64) -> Result<Option<(QPolytope, bool)>> {
        let rows: Vec<Vec<Q>> = self
            .torus
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
            .collect();
        let degrees: Vec<Q> = self
            .raw_degrees
            .iter()
            .map(|&x| Q::from_integer(x.into()))
            .collect();
        slice_polytope(&rows, &degrees, d)
    }
}

fn slice_polytope(torus: &[Vec<Q>], degrees: &[Q], d: i64) -> Result<Option<(QPolytope, bool)>> {
    if d < 0 {
        return Err(Error::input("degree must be nonnegative"));
    }
    let k = degrees.len();
    let ineqs: Vec<Constraint> = (0..k)
        .map(|i| Constraint::new(QVector::unit(k, i).neg(), Q::zero()))
        .collect();
    let mut eqs: Vec<Constraint> = torus
        .iter()
        .map(|r| Constraint::new(QVector::new(r.clone()), Q::zero()))
        .collect();
    eqs.push(Constraint::new(
        QVector::new(degrees.to_vec()),
        Q::from_integer(d.into()),
    ));
    let p = match QPolytope::from_constraints(k, &ineqs, &eqs) {
        Ok(p) => p,
        Err(Error::Precondition(_)) => {
            return Err(Error::precondition(
                "grading is not positive: the degree slice is unbounded",
            ))
        }
        Err(e) => return Err(e),
    };
    Ok(p.map(|p| {
        let simplicial = p.is_simplex();
        (p, simplicial)
    }))
}

/// Torus parts and degrees of the variables of a component, for the grading
/// character `g` (scaled to a primitive integer vector).
fn component_data(
    component: &NilconeComponent,
    ws: &WeightSystem,
    grading: &QVector,
) -> Result<(Vec<QVector>, Vec<Q>)> {
    if grading.dim() != ws.rank() {
        return Err(Error::input(format!(
            "grading character has {} coordinates, expected {}",
            grading.dim(),
            ws.rank()
        )));
    }
    if grading.is_zero() {
        return Err(Error::input("grading character is zero"));
    }
    ws.check_state(&component.members)?;
    let g = grading.primitive()?;
    let basis = orthogonal_integer_basis(&g);
    let torus = component
        .members
        .members()
        .iter()
        .map(|&i| QVector::new(basis.iter().map(|b| b.dot(ws.weight(i))).collect()))
        .collect();
    let degrees = component
        .members
        .members()
        .iter()
        .map(|&i| g.dot(ws.weight(i)))
        .collect();
    Ok((torus, degrees))
}

/// The invariant monoid of a component under the subtorus orthogonal to
/// `grading`, graded by pairing with `grading`.
pub fn invariant_monoid(
    component: &NilconeComponent,
    ws: &WeightSystem,
    grading: &QVector,
) -> Result<GradedMonoid> {
    let (torus, degrees) = component_data(component, ws, grading)?;
    let mut m = GradedMonoid::new(torus, degrees)?;
    m.vars = Some(component.members.members().to_vec());
    Ok(m)
}

/// `P_d` of a component: see [`GradedMonoid::grading_polytope`].
pub fn grading_polytope(
    component: &NilconeComponent,
    ws: &WeightSystem,
    grading: &QVector,
    d: i64,
) -> Result<Option<(QPolytope, bool)>> {
    let (torus, degrees) = component_data(component, ws, grading)?;
    let t = torus.first().map_or(0, QVector::dim);
    let rows: Vec<Vec<Q>> = (0..t)
        .map(|j| torus.iter().map(|p| p[j].clone()).collect())
        .collect();
    slice_polytope(&rows, &degrees, d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertElement {
    pub exponents: Vec<i64>,
    /// Normalized degree.
    pub degree: i64,
    pub raw_degree: i64,
}

/// Irreducible elements up to a degree bound, by increasing degree and then
/// decreasing exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub elements: Vec<HilbertElement>,
    /// The bound reaches [`GradedMonoid::certificate`], so nothing is missing.
    pub complete: bool,
    pub certificate: i64,
    pub bound: i64,
}

impl HilbertBasis {
    pub fn degrees(&self) -> Vec<i64> {
        self.elements.iter().map(|e| e.degree).collect()
    }
}

pub fn hilbert_basis(m: &GradedMonoid, degree_bound: i64) -> Result<HilbertBasis> {
    if degree_bound < 1 {
        return Err(Error::input("degree bound must be at least 1"));
    }
    let certificate = m.certificate();
    let mut elements: Vec<HilbertElement> = Vec::new();
    for d in 1..=degree_bound.min(certificate) {
        let mut found = Vec::new();
        for x in m.elements_of_degree(d) {
            let reducible = elements
                .iter()
                .any(|b| b.exponents.iter().zip(&x).all(|(p, q)| p <= q));
            if !reducible {
                found.push(HilbertElement {
                    raw_degree: m.raw_degree(&x),
                    degree: d,
                    exponents: x,
                });
            }
        }
        elements.extend(found);
    }
    Ok(HilbertBasis {
        elements,
        complete: degree_bound >= certificate,
        certificate,
        bound: degree_bound,
    })
}

/// A binomial relation between Hilbert basis elements, as multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    pub degree: i64,
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

fn fmt_side(f: &mut fmt::Formatter<'_>, side: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &c) in side.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if c > 1 {
            write!(f, "{c} ")?;
        }
        write!(f, "b{}", i + 1)?;
    }
    Ok(())
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_side(f, &self.lhs)?;
        write!(f, " = ")?;
        fmt_side(f, &self.rhs)
    }
}

fn factorizations(x: &[i64], basis: &[HilbertElement]) -> Vec<Vec<u32>> {
    fn go(
        pos: usize,
        left: &mut Vec<i64>,
        basis: &[HilbertElement],
        c: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if left.iter().all(|&v| v == 0) {
            out.push(c.clone());
            return;
        }
        if pos == basis.len() {
            return;
        }
        let b = &basis[pos].exponents;
        let most = b
            .iter()
            .zip(left.iter())
            .filter(|(&p, _)| p > 0)
            .map(|(&p, &q)| q / p)
            .min()
            .unwrap_or(0);
        for t in (0..=most).rev() {
            for (l, &p) in left.iter_mut().zip(b) {
                *l -= p * t;
            }
            c[pos] = t as u32;
            go(pos + 1, left, basis, c, out);
            for (l, &p) in left.iter_mut().zip(b) {
                *l += p * t;
            }
        }
        c[pos] = 0;
    }
    let mut out = Vec::new();
    go(0, &mut x.to_vec(), basis, &mut vec![0; basis.len()], &mut out);
    out
}

/// Minimal binomial relations up to `degree_bound`: at each element, one
/// relation per extra connected component of its factorizations, two
/// factorizations being connected when they share a basis element.
pub fn relations(m: &GradedMonoid, basis: &HilbertBasis, degree_bound: i64) -> Result<Vec<Relation>> {
    if !basis.complete {
        return Err(Error::precondition("relations need a complete Hilbert basis"));
    }
    let mut out = Vec::new();
    for d in 2..=degree_bound {
        for x in m.elements_of_degree(d) {
            let mut fs = factorizations(&x, &basis.elements);
            if fs.len() < 2 {
                continue;
            }
            fs.sort();
            let n = fs.len();
            let mut comp: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                p[x] = r;
                r
            }
            for a in 0..n {
                for b in a + 1..n {
                    if fs[a].iter().zip(&fs[b]).any(|(&p, &q)| p > 0 && q > 0) {
                        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                        comp[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
            let reps: Vec<usize> = (0..n).filter(|&a| find(&mut comp, a) == a).collect();
            for &r in &reps[1..] {
                out.push(Relation {
                    degree: d,
                    lhs: fs[reps[0]].clone(),
                    rhs: fs[r].clone(),
                });
            }
        }
    }
    Ok(out)
}

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use super::dd;
use super::linalg::{self, QMatrix};
use super::vector::{primitive_integer, QVector, Q};
use crate::error::{Error, Result};

/// Position of a point relative to a polytope, within the polytope's affine hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    /// In the relative interior.
    Interior,
    /// On the relative boundary.
    Boundary,
    Outside,
}

/// An affine constraint `normal . x <= offset` (facet) or `normal . x = offset`
/// (equation of the affine hull).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub normal: QVector,
    pub offset: Q,
}

impl Constraint {
    pub fn new(normal: QVector, offset: Q) -> Self {
        Constraint { normal, offset }
    }

    /// `normal . x - offset`.
    pub fn eval(&self, x: &QVector) -> Q {
        self.normal.dot(x) - &self.offset
    }
}

/// A nonempty bounded rational polytope with both representations.
///
/// Vertices are sorted lexicographically, so two polytopes are equal exactly
/// when they are equal as point sets. Facets describe the polytope inside the
/// affine hull cut out by `equations`; for lower-dimensional polytopes their
/// normals are only meaningful modulo the equations.
#[derive(Clone, Debug)]
pub struct QPolytope {
    ambient: usize,
    vertices: Vec<QVector>,
    equations: Vec<Constraint>,
    facets: Vec<Constraint>,
    /// `incidence[f]` lists the vertices on facet `f`.
    incidence: Vec<Vec<usize>>,
    affine_dim: usize,
}

impl PartialEq for QPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for QPolytope {}

impl QPolytope {
    /// Convex hull of a nonempty finite point set.
    pub fn hull(points: &[QVector]) -> Result<QPolytope> {
        let Some(first) = points.first() else {
            return Err(Error::input("convex hull of an empty point set"));
        };
        let r = first.dim();
        if points.iter().any(|p| p.dim() != r) {
            return Err(Error::input("points of different dimensions"));
        }
        let pts: Vec<QVector> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let p0 = &pts[0];
        let dirs: QMatrix = pts[1..].iter().map(|p| p.sub(p0).into_inner()).collect();
        let (span_rows, pivots) = linalg::rref(&dirs, r);
        let k = pivots.len();
        let equations: Vec<Constraint> = linalg::nullspace(&span_rows, r)
            .into_iter()
            .map(|n| {
                let n = QVector::from_bigints(&primitive_integer(&n));
                let offset = n.dot(p0);
                Constraint::new(n, offset)
            })
            .collect();
        if k == 0 {
            return Ok(QPolytope {
                ambient: r,
                vertices: pts,
                equations,
                facets: Vec::new(),
                incidence: Vec::new(),
                affine_dim: 0,
            });
        }
        // Pivot coordinates are injective on the affine hull.
        let gens: Vec<Vec<BigInt>> = pts
            .iter()
            .map(|p| {
                let mut h = Vec::with_capacity(k + 1);
                h.push(Q::one());
                h.extend(pivots.iter().map(|&c| p[c].clone()));
                primitive_integer(&h)
            })
            .collect();
        let rays = dd::extreme_rays(&gens, k + 1)?;
        let mut facets: Vec<Constraint> = rays
            .into_iter()
            .map(|a| {
                let mut normal = vec![Q::zero(); r];
                for (j, &c) in pivots.iter().enumerate() {
                    normal[c] = -Q::from_integer(a[j + 1].clone());
                }
                Constraint::new(QVector::new(normal), Q::from_integer(a[0].clone()))
            })
            .collect();
        facets.sort();
        facets.dedup();
        let incidence: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| (0..pts.len()).filter(|&i| f.eval(&pts[i]).is_zero()).collect())
            .collect();
        // A point is a vertex when its tight facets pin it down inside the hull.
        let is_vertex: Vec<bool> = (0..pts.len())
            .map(|i| {
                let tight: QMatrix = facets
                    .iter()
                    .zip(&incidence)
                    .filter(|(_, inc)| inc.binary_search(&i).is_ok())
                    .map(|(f, _)| pivots.iter().map(|&c| f.normal[c].clone()).collect())
                    .collect();
                linalg::rank(&tight, k) == k
            })
            .collect();
        let remap: Vec<Option<usize>> = {
            let mut next = 0;
            is_vertex
                .iter()
                .map(|&v| {
                    if v {
                        next += 1;
                        Some(next - 1)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let vertices: Vec<QVector> = pts
            .into_iter()
            .zip(&is_vertex)
            .filter(|(_, &v)| v)
            .map(|(p, _)| p)
            .collect();
        let incidence = incidence
            .into_iter()
            .map(|inc| inc.into_iter().filter_map(|i| remap[i]).collect())
            .collect();
        Ok(QPolytope {
            ambient: r,
            vertices,
            equations,
            facets,
            incidence,
            affine_dim: k,
        })
    }

    /// The polytope `{x : a.x <= b for (a,b) in ineqs, a.x = b for (a,b) in eqs}`.
    ///
    /// Returns `Ok(None)` when the system is infeasible and an error when it is
    /// feasible but unbounded.
    pub fn from_constraints(
        ambient: usize,
        ineqs: &[Constraint],
        eqs: &[Constraint],
    ) -> Result<Option<QPolytope>> {
        let (x0, basis) = if eqs.is_empty() {
            (
                QVector::zeros(ambient),
                (0..ambient)
                    .map(|i| QVector::unit(ambient, i))
                    .collect::<Vec<_>>(),
            )
        } else {
            let a: QMatrix = eqs.iter().map(|e| e.normal.coords().to_vec()).collect();
            let b: Vec<Q> = eqs.iter().map(|e| e.offset.clone()).collect();
            let Some(x0) = linalg::solve_any(&a, &b, ambient) else {
                return Ok(None);
            };
            (QVector::new(x0), linalg::nullspace(&a, ambient))
        };
        let m = basis.len();
        if m == 0 {
            return if ineqs.iter().all(|c| !c.eval(&x0).is_positive()) {
                Ok(Some(QPolytope::hull(&[x0])?))
            } else {
                Ok(None)
            };
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(ineqs.len() + 1);
        let mut t_row = vec![Q::zero(); m + 1];
        t_row[0] = Q::one();
        rows.push(primitive_integer(&t_row));
        for c in ineqs {
            let mut row = Vec::with_capacity(m + 1);
            row.push(&c.offset - c.normal.dot(&x0));
            row.extend(basis.iter().map(|b| -c.normal.dot(b)));
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            rows.push(primitive_integer(&row));
        }
        let rays = match dd::extreme_rays(&rows, m + 1) {
            Ok(r) => r,
            Err(_) => return Err(Error::precondition("constraint system is unbounded")),
        };
        let mut verts = Vec::with_capacity(rays.len());
        for ray in rays {
            if ray[0].is_zero() {
                return Err(Error::precondition("constraint system is unbounded"));
            }
            let t = Q::from_integer(ray[0].clone());
            let mut x = x0.clone();
            for (j, b) in basis.iter().enumerate() {
                let zj = Q::from_integer(ray[j + 1].clone()) / &t;
                x = x.add(&b.scale(&zj));
            }
            verts.push(x);
        }
        if verts.is_empty() {
            return Ok(None);
        }
        Ok(Some(QPolytope::hull(&verts)?))
    }

    /// The two halves `{c.eval <= 0}` and `{c.eval >= 0}` of a full-dimensional
    /// polytope cut by the hyperplane of `c`, or `None` when the hyperplane
    /// misses the interior.
    pub fn split(&self, c: &Constraint) -> Option<(QPolytope, QPolytope)> {
        assert!(
            self.is_full_dimensional(),
            "split needs a full-dimensional polytope"
        );
        let vals: Vec<Q> = self.vertices.iter().map(|v| c.eval(v)).collect();
        if !vals.iter().any(|v| v.is_positive()) || !vals.iter().any(|v| v.is_negative()) {
            return None;
        }
        let nv = self.vertices.len();
        let mut on: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (f, inc) in self.incidence.iter().enumerate() {
            for &v in inc {
                on[v].push(f);
            }
        }
        // Crossing points on the edges whose endpoints lie strictly apart.
        let mut cuts: Vec<(QVector, Vec<usize>)> = Vec::new();
        for i in 0..nv {
            if !vals[i].is_negative() {
                continue;
            }
            for j in 0..nv {
                if !vals[j].is_positive() {
                    continue;
                }
                let common: Vec<usize> = on[i]
                    .iter()
                    .copied()
                    .filter(|f| on[j].binary_search(f).is_ok())
                    .collect();
                if common.len() + 1 < self.ambient {
                    continue;
                }
                let is_edge = (0..nv)
                    .all(|w| w == i || w == j || !common.iter().all(|f| on[w].binary_search(f).is_ok()));
                if !is_edge {
                    continue;
                }
                let t = &vals[i] / (&vals[i] - &vals[j]);
                let x = self.vertices[i].add(&self.vertices[j].sub(&self.vertices[i]).scale(&t));
                cuts.push((x, common));
            }
        }
        let mut coeffs = c.normal.coords().to_vec();
        coeffs.push(c.offset.clone());
        let prim = primitive_integer(&coeffs);
        let r = self.ambient;
        let below = Constraint::new(
            QVector::from_bigints(&prim[..r]),
            Q::from_integer(prim[r].clone()),
        );
        let above = Constraint::new(below.normal.neg(), -below.offset.clone());
        let half = |sign: i8, cut: Constraint| -> QPolytope {
            let keep = |v: usize| vals[v].is_zero() || (sign < 0) == vals[v].is_negative();
            let mut pts: Vec<(QVector, Vec<usize>, bool)> = (0..nv)
                .filter(|&v| keep(v))
                .map(|v| (self.vertices[v].clone(), on[v].clone(), vals[v].is_zero()))
                .collect();
            pts.extend(cuts.iter().map(|(x, fs)| (x.clone(), fs.clone(), true)));
            pts.sort_by(|a, b| a.0.cmp(&b.0));
            // Old facets survive when they reach strictly into this side.
            let live: Vec<usize> = (0..self.facets.len())
                .filter(|&f| {
                    self.incidence[f]
                        .iter()
                        .any(|&v| !vals[v].is_zero() && (sign < 0) == vals[v].is_negative())
                })
                .collect();
            let mut facets: Vec<(Constraint, Vec<usize>)> = live
                .iter()
                .map(|&f| {
                    let inc = (0..pts.len()).filter(|&p| pts[p].1.contains(&f)).collect();
                    (self.facets[f].clone(), inc)
                })
                .collect();
            facets.push((cut, (0..pts.len()).filter(|&p| pts[p].2).collect()));
            facets.sort_by(|a, b| a.0.cmp(&b.0));
            let (facets, incidence) = facets.into_iter().unzip();
            QPolytope {
                ambient: r,
                vertices: pts.into_iter().map(|p| p.0).collect(),
                equations: Vec::new(),
                facets,
                incidence,
                affine_dim: r,
            }
        };
        Some((half(-1, below), half(1, above)))
    }

    /// Intersection with another polytope in the same ambient space.
    pub fn intersect(&self, other: &QPolytope) -> Result<Option<QPolytope>> {
        let ineqs: Vec<Constraint> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<Constraint> = self.equations.iter().chain(&other.equations).cloned().collect();
        QPolytope::from_constraints(self.ambient, &ineqs, &eqs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Constraint] {
        &self.facets
    }

    pub fn equations(&self) -> &[Constraint] {
        &self.equations
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.affine_dim + 1
    }

    /// Vertex indices on facet `f`.
    pub fn facet_vertices(&self, f: usize) -> &[usize] {
        &self.incidence[f]
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.equations.iter().all(|e| e.eval(x).is_zero())
            && self.facets.iter().all(|f| !f.eval(x).is_positive())
    }

    pub fn locate(&self, x: &QVector) -> Location {
        if !self.equations.iter().all(|e| e.eval(x).is_zero()) {
            return Location::Outside;
        }
        let mut tight = false;
        for f in &self.facets {
            let v = f.eval(x);
            if v.is_positive() {
                return Location::Outside;
            }
            if v.is_zero() {
                tight = true;
            }
        }
        if tight {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Mean of the vertices; lies in the relative interior.
    pub fn centroid(&self) -> QVector {
        QVector::centroid(&self.vertices)
    }

    /// Every nonempty face as a sorted list of vertex indices, the polytope
    /// itself included. Sorted by size, then lexicographically.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        faces.insert((0..self.vertices.len()).collect());
        let mut frontier: Vec<Vec<usize>> = self
            .incidence
            .iter()
            .filter(|inc| !inc.is_empty())
            .cloned()
            .collect();
        let facets = frontier.clone();
        while let Some(face) = frontier.pop() {
            if !faces.insert(face.clone()) {
                continue;
            }
            for f in &facets {
                let meet: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|i| f.binary_search(i).is_ok())
                    .collect();
                if !meet.is_empty() && !faces.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = faces.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// The face spanned by the given vertex indices.
    pub fn face(&self, vertex_ids: &[usize]) -> QPolytope {
        let pts: Vec<QVector> = vertex_ids.iter().map(|&i| self.vertices[i].clone()).collect();
        QPolytope::hull(&pts).expect("face of a valid polytope")
    }

    /// Per-coordinate bounds of the vertex set.
    pub fn bounding_box(&self) -> (QVector, QVector) {
        let mut lo = self.vertices[0].clone().into_inner();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (i, c) in v.iter().enumerate() {
                if c < &lo[i] {
                    lo[i] = c.clone();
                }
                if c > &hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        (QVector::new(lo), QVector::new(hi))
    }

    /// Internal consistency of the two representations: every vertex satisfies
    /// every constraint, every facet carries at least `affine_dim` vertices and
    /// the vertex set has the recorded affine dimension.
    pub fn check_consistency(&self) -> bool {
        let refs: Vec<&QVector> = self.vertices.iter().collect();
        if linalg::affine_rank(&refs) != self.affine_dim {
            return false;
        }
        if !self.vertices.iter().all(|v| self.contains(v)) {
            return false;
        }
        self.incidence.iter().all(|inc| inc.len() >= self.affine_dim)
    }
}

//! Cells of a hyperplane arrangement restricted to a bounded region.
//!
//! Full-dimensional pieces are obtained by splitting the region one
//! hyperplane at a time; lower-dimensional cells are the faces of those
//! pieces, identified by their vertex sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{Signed, ToPrimitive, Zero};

use super::hyperplane::Hyperplane;
use super::polytope::{Constraint, QPolytope};
use super::vector::QVector;
use crate::error::{Error, Result};

/// One relatively open cell, described by its closure's vertices.
#[derive(Clone, Debug)]
pub struct Cell {
    /// Sorted indices into [`CellComplex::vertices`].
    pub vertex_ids: Vec<usize>,
    pub dim: usize,
    /// Vertex centroid, a point of the relative interior.
    pub sample: QVector,
    /// Whether the cell lies in the interior of the region.
    pub interior: bool,
}

/// All cells of an arrangement inside a closed region, boundary included.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub ambient: usize,
    pub vertices: Vec<QVector>,
    pub cells: Vec<Cell>,
    /// Indices of the full-dimensional cells.
    pub pieces: Vec<usize>,
    /// For each entry of `pieces`, the indices of all cells in its closure.
    pub piece_faces: Vec<Vec<usize>>,
}

impl CellComplex {
    pub fn cell_points(&self, c: usize) -> Vec<QVector> {
        self.cells[c]
            .vertex_ids
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect()
    }

    pub fn cell_polytope(&self, c: usize) -> QPolytope {
        QPolytope::hull(&self.cell_points(c)).expect("cells are nonempty")
    }

    /// `sides[v][h]`: the side of hyperplane `h` on which vertex `v` lies.
    pub fn vertex_sides(&self, hyperplanes: &[Hyperplane]) -> Vec<Vec<i8>> {
        let approx: Vec<(Vec<f64>, f64)> = hyperplanes
            .iter()
            .map(|h| {
                let n = h
                    .normal()
                    .iter()
                    .map(|x| x.to_f64().unwrap_or(f64::NAN))
                    .collect();
                (n, h.offset().to_f64().unwrap_or(f64::NAN))
            })
            .collect();
        self.vertices
            .iter()
            .map(|v| {
                let x: Vec<f64> = v.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
                hyperplanes
                    .iter()
                    .zip(&approx)
                    .map(|(h, (n, b))| {
                        let mut val = -b;
                        let mut scale = b.abs();
                        for (a, y) in n.iter().zip(&x) {
                            val += a * y;
                            scale += (a * y).abs();
                        }
                        // Trust the floating sign only well away from zero.
                        if val.abs() > 1e-9 * (1.0 + scale) {
                            if val > 0.0 {
                                1
                            } else {
                                -1
                            }
                        } else {
                            side(h, v)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `a`'s closure contains `b` exactly when `b`'s vertices are among `a`'s.
    pub fn closure_contains(&self, a: usize, b: usize) -> bool {
        let va = &self.cells[a].vertex_ids;
        self.cells[b]
            .vertex_ids
            .iter()
            .all(|v| va.binary_search(v).is_ok())
    }
}

/// Canonical, de-duplicated hyperplanes that cut the interior of `region`.
pub fn cutting_hyperplanes(hyperplanes: &[Hyperplane], region: &QPolytope) -> Vec<Hyperplane> {
    let set: BTreeSet<&Hyperplane> = hyperplanes.iter().collect();
    set.into_iter()
        .filter(|h| {
            let mut pos = false;
            let mut neg = false;
            for v in region.vertices() {
                let s = h.eval(v);
                pos |= s.is_positive();
                neg |= s.is_negative();
            }
            pos && neg
        })
        .cloned()
        .collect()
}

fn split(piece: &QPolytope, h: &Hyperplane) -> Vec<QPolytope> {
    let c = Constraint::new(h.normal().clone(), h.offset().clone());
    match piece.split(&c) {
        Some((lo, hi)) => vec![lo, hi],
        None => vec![piece.clone()],
    }
}

/// Every cell of the arrangement inside the closed, full-dimensional `region`.
///
/// Cells are sorted by decreasing dimension, then by sample point.
pub fn cell_complex(hyperplanes: &[Hyperplane], region: &QPolytope) -> Result<CellComplex> {
    let r = region.ambient_dim();
    if !region.is_full_dimensional() {
        return Err(Error::precondition("arrangement region must be full-dimensional"));
    }
    if hyperplanes.iter().any(|h| h.normal().dim() != r) {
        return Err(Error::input("hyperplane dimension does not match the region"));
    }
    let mut pieces = vec![region.clone()];
    for h in cutting_hyperplanes(hyperplanes, region) {
        let mut next = Vec::with_capacity(pieces.len() + 4);
        for p in &pieces {
            next.extend(split(p, &h));
        }
        pieces = next;
    }

    let mut vertex_ids: BTreeMap<QVector, usize> = BTreeMap::new();
    for p in &pieces {
        for v in p.vertices() {
            let n = vertex_ids.len();
            vertex_ids.entry(v.clone()).or_insert(n);
        }
    }
    // Renumber so that ids follow the lexicographic vertex order.
    let vertices: Vec<QVector> = vertex_ids.keys().cloned().collect();
    for (i, v) in vertices.iter().enumerate() {
        *vertex_ids.get_mut(v).unwrap() = i;
    }

    let mut faces: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut per_piece: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::with_capacity(pieces.len());
    for p in &pieces {
        let global: Vec<usize> = p.vertices().iter().map(|v| vertex_ids[v]).collect();
        let local = p.faces();
        // Faces come sorted by size, so every proper subface precedes its face.
        let mut dims: Vec<usize> = Vec::with_capacity(local.len());
        for (i, f) in local.iter().enumerate() {
            let d = (0..i)
                .filter(|&j| local[j].len() < f.len() && local[j].iter().all(|v| f.binary_search(v).is_ok()))
                .map(|j| dims[j] + 1)
                .max()
                .unwrap_or(0);
            dims.push(d);
        }
        let mut own = Vec::with_capacity(local.len());
        for (face, d) in local.iter().zip(dims) {
            let mut ids: Vec<usize> = face.iter().map(|&i| global[i]).collect();
            ids.sort_unstable();
            faces.insert(ids.clone(), d);
            own.push(ids);
        }
        let whole = own.last().expect("a piece is a face of itself").clone();
        per_piece.push((whole, own));
    }
    // Region facets through each vertex; a cell is on the boundary when all
    // its vertices share one.
    let on_boundary: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| {
            (0..region.facets().len())
                .filter(|&f| region.facets()[f].eval(v).is_zero())
                .collect()
        })
        .collect();
    let mut cells: Vec<Cell> = faces
        .into_iter()
        .map(|(ids, dim)| {
            let sample = QVector::centroid(ids.iter().map(|&i| &vertices[i]));
            let interior = !on_boundary[ids[0]]
                .iter()
                .any(|f| ids[1..].iter().all(|&i| on_boundary[i].contains(f)));
            Cell {
                vertex_ids: ids,
                dim,
                sample,
                interior,
            }
        })
        .collect();
    cells.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.sample.cmp(&b.sample)));
    let index: HashMap<&[usize], usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.vertex_ids.as_slice(), i))
        .collect();
    per_piece.sort_by_key(|(whole, _)| index[whole.as_slice()]);
    let pieces: Vec<usize> = per_piece.iter().map(|(w, _)| index[w.as_slice()]).collect();
    let piece_faces: Vec<Vec<usize>> = per_piece
        .iter()
        .map(|(_, own)| {
            let mut v: Vec<usize> = own.iter().map(|f| index[f.as_slice()]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    Ok(CellComplex {
        ambient: r,
        vertices,
        cells,
        pieces,
        piece_faces,
    })
}

/// Relatively open cells of the arrangement inside the interior of `region`,
/// each with its closure and a sample point in its relative interior.
///
/// Duplicate hyperplanes and hyperplanes missing the interior are ignored.
pub fn arrangement_cells(
    hyperplanes: &[Hyperplane],
    region: &QPolytope,
) -> Result<Vec<(QPolytope, QVector)>> {
    let cx = cell_complex(hyperplanes, region)?;
    Ok((0..cx.cells.len())
        .filter(|&c| cx.cells[c].interior)
        .map(|c| (cx.cell_polytope(c), cx.cells[c].sample.clone()))
        .collect())
}

/// Sign of `h` at `x` as `-1`, `0` or `1`.
pub fn side(h: &Hyperplane, x: &QVector) -> i8 {
    let v = h.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::vector::{qi, qr};

    fn hp(n: &[i64], c: i64) -> Hyperplane {
        Hyperplane::new(&QVector::from_ints(n), &qi(c)).unwrap()
    }

    fn square(a: i64) -> QPolytope {
        QPolytope::hull(&[
            QVector::from_ints(&[-a, -a]),
            QVector::from_ints(&[-a, a]),
            QVector::from_ints(&[a, -a]),
            QVector::from_ints(&[a, a]),
        ])
        .unwrap()
    }

    fn counts(cells: &[(QPolytope, QVector)], r: usize) -> Vec<usize> {
        (0..=r)
            .rev()
            .map(|d| cells.iter().filter(|(c, _)| c.affine_dim() == d).count())
            .collect()
    }

    #[test]
    fn interval_split_at_zero() {
        let region = QPolytope::hull(&[QVector::from_ints(&[-1]), QVector::from_ints(&[1])]).unwrap();
        let cells = arrangement_cells(&[hp(&[1], 0)], &region).unwrap();
        let samples: Vec<QVector> = cells.iter().map(|(_, s)| s.clone()).collect();
        assert_eq!(
            samples,
            vec![
                QVector::new(vec![qr(-1, 2)]),
                QVector::new(vec![qr(1, 2)]),
                QVector::from_ints(&[0]),
            ]
        );
        let none = arrangement_cells(&[], &region).unwrap();
        assert_eq!(none.len(), 1);
        assert_eq!(none[0].1, QVector::from_ints(&[0]));
    }

    #[test]
    fn crossing_lines_and_grid() {
        let sq = square(3);
        let two = arrangement_cells(&[hp(&[1, 0], 0), hp(&[0, 1], 0), hp(&[0, 1], 0)], &sq).unwrap();
        assert_eq!(counts(&two, 2), vec![4, 4, 1]);
        let grid = [hp(&[1, 0], -1), hp(&[1, 0], 1), hp(&[0, 1], -1), hp(&[0, 1], 1)];
        let cells = arrangement_cells(&grid, &sq).unwrap();
        assert_eq!(counts(&cells, 2), vec![9, 12, 4]);
        // A line that only touches the region is dropped.
        let touching = arrangement_cells(&[hp(&[1, 1], 6)], &sq).unwrap();
        assert_eq!(touching.len(), 1);
    }

    #[test]
    fn complex_includes_boundary() {
        let sq = square(1);
        let cx = cell_complex(&[hp(&[1, 0], 0)], &sq).unwrap();
        // 2 open squares, 1 interior segment, 6 boundary edges, 6 boundary vertices
        assert_eq!(cx.cells.len(), 15);
        assert_eq!(cx.pieces, vec![0, 1]);
        assert_eq!(cx.cells.iter().filter(|c| c.interior).count(), 3);
    }
}

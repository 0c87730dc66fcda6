//! Dense exact linear algebra over `Q` on row-major `Vec<Vec<Q>>` matrices.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use super::vector::{primitive_integer, QVector, Q};

pub type QMatrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Q>]) -> QMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| super::vector::dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMatrix {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| super::vector::dot(row, col)).collect())
        .collect()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> (QMatrix, Vec<usize>) {
    let mut m: QMatrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : rows * x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<QVector> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            QVector::new(v)
        })
        .collect()
}

/// Solve `a * x = b` for square nonsingular `a`.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n].clone()).collect())
}

/// Particular solution of a possibly under-determined consistent system.
pub fn solve_any(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn inverse(a: &[Vec<Q>]) -> Option<QMatrix> {
    let n = a.len();
    let aug: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    d
}

/// Determinants of the leading principal submatrices, `1x1` first.
pub fn leading_minors(a: &[Vec<Q>]) -> Vec<Q> {
    (1..=a.len())
        .map(|k| {
            let sub: QMatrix = a[..k].iter().map(|row| row[..k].to_vec()).collect();
            det(&sub)
        })
        .collect()
}

/// Affine rank (dimension of the affine hull) of a nonempty point set.
pub fn affine_rank(points: &[&QVector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let p0 = points[0];
    let dirs: QMatrix = points[1..].iter().map(|p| p.sub(p0).into_inner()).collect();
    rank(&dirs, p0.dim())
}

/// Lattice basis of `{n in Z^k : rows * n = 0}` for an integer matrix.
///
/// Unimodular column operations bring `rows` to column echelon form; the
/// columns of the accumulated transform that end up multiplying zero columns
/// span the kernel lattice.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    // Column operation helpers on both `a` (m x ncols) and `u` (ncols x ncols).
    let col_swap = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in u.iter_mut() {
            row.swap(i, j);
        }
    };
    let col_axpy =
        |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
            for row in a.iter_mut() {
                let t = &row[src] * f;
                row[dst] -= t;
            }
            for row in u.iter_mut() {
                let t = &row[src] * f;
                row[dst] -= t;
            }
        };
    let mut pc = 0;
    for r in 0..m {
        if pc == ncols {
            break;
        }
        loop {
            // Smallest nonzero |a[r][c]| among c >= pc becomes the pivot.
            let piv = (pc..ncols)
                .filter(|&c| !a[r][c].is_zero())
                .min_by(|&x, &y| a[r][x].abs().cmp(&a[r][y].abs()));
            let Some(piv) = piv else { break };
            col_swap(&mut a, &mut u, pc, piv);
            let mut done = true;
            for c in pc + 1..ncols {
                if !a[r][c].is_zero() {
                    let f = a[r][c].div_floor(&a[r][pc]);
                    col_axpy(&mut a, &mut u, c, pc, &f);
                    if !a[r][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                pc += 1;
                break;
            }
        }
    }
    (pc..ncols)
        .map(|c| u.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Rational basis of the orthogonal complement of `v`, scaled to primitive
/// integer vectors.
pub fn orthogonal_integer_basis(v: &QVector) -> Vec<QVector> {
    nullspace(&[v.coords().to_vec()], v.dim())
        .into_iter()
        .map(|b| QVector::from_bigints(&primitive_integer(&b)))
        .collect()
}

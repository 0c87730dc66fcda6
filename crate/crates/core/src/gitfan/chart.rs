use num::Zero;

use crate::polycore::{linalg, Hyperplane, QPolytope, QVector, Q};
use crate::stability::WeightSystem;

/// Affine chart of the span of a point set: pivot coordinates of the reduced
/// echelon form are injective on the span.
#[derive(Clone, Debug)]
pub(crate) struct Chart {
    base: QVector,
    pivots: Vec<usize>,
    rows: Vec<Vec<Q>>,
}

impl Chart {
    pub fn of_points(points: &[QVector]) -> Chart {
        let base = points[0].clone();
        let dirs: Vec<Vec<Q>> = points[1..].iter().map(|p| p.sub(&base).into_inner()).collect();
        let (rows, pivots) = linalg::rref(&dirs, base.dim());
        Chart { base, pivots, rows }
    }

    pub fn of_weights(ws: &WeightSystem) -> Chart {
        Chart::of_points(ws.weights())
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_identity(&self) -> bool {
        self.pivots.len() == self.base.dim()
    }

    pub fn down(&self, x: &QVector) -> QVector {
        if self.is_identity() {
            return x.clone();
        }
        QVector::new(self.pivots.iter().map(|&p| x[p].clone()).collect())
    }

    pub fn up(&self, y: &QVector) -> QVector {
        if self.is_identity() {
            return y.clone();
        }
        let mut x = self.base.clone();
        for ((row, &p), yj) in self.rows.iter().zip(&self.pivots).zip(y.iter()) {
            let t = yj - &self.base[p];
            if !t.is_zero() {
                x = x.add(&QVector::new(row.clone()).scale(&t));
            }
        }
        x
    }

    /// Whether `x` lies on the span.
    pub fn on_span(&self, x: &QVector) -> bool {
        self.is_identity() || self.up(&self.down(x)) == *x
    }

    pub fn up_polytope(&self, p: &QPolytope) -> QPolytope {
        if self.is_identity() {
            return p.clone();
        }
        let v: Vec<QVector> = p.vertices().iter().map(|y| self.up(y)).collect();
        QPolytope::hull(&v).expect("nonempty")
    }

    pub fn up_hyperplane(&self, h: &Hyperplane) -> Hyperplane {
        if self.is_identity() {
            return h.clone();
        }
        let mut n = vec![Q::zero(); self.base.dim()];
        for (j, &p) in self.pivots.iter().enumerate() {
            n[p] = h.normal()[j].clone();
        }
        Hyperplane::new(&QVector::new(n), h.offset()).expect("nonzero normal")
    }
}

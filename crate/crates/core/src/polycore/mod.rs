//! Exact rational linear algebra and polyhedral primitives.

pub mod approx;
pub mod arrangement;
pub mod dd;
pub mod gram;
pub mod hyperplane;
pub mod linalg;
pub mod lp;
pub mod nearest;
pub mod polytope;
pub mod vector;

pub use approx::{to_f64s, FloatShape, ShapeIndex};
pub use arrangement::{arrangement_cells, cell_complex, side, Cell, CellComplex};
pub use gram::GramForm;
pub use hyperplane::Hyperplane;
pub use nearest::{boundary_distance_sq, nearest_boundary_point, project_metric, project_metric_enumerate};
pub use polytope::{Constraint, Location, QPolytope};
pub use vector::{fmt_q, parse_q, qi, qr, QVector, Q};

use crate::error::{Error, Result};

/// Location of `theta` relative to `Conv(points)`, inside the hull's affine span.
pub fn hull_locate(theta: &QVector, points: &[QVector]) -> Result<Location> {
    if points.is_empty() {
        return Err(Error::input("hull_locate needs at least one point"));
    }
    if points.iter().any(|p| p.dim() != theta.dim()) {
        return Err(Error::input(format!(
            "dimension mismatch: theta has {} coordinates",
            theta.dim()
        )));
    }
    Ok(QPolytope::hull(points)?.locate(theta))
}

/// The positive multiple of `v` with coprime integer entries.
pub fn primitive(v: &QVector) -> Result<QVector> {
    v.primitive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locate_examples() {
        let seg = [QVector::from_ints(&[-1]), QVector::from_ints(&[1])];
        assert_eq!(
            hull_locate(&QVector::from_ints(&[0]), &seg).unwrap(),
            Location::Interior
        );
        assert_eq!(
            hull_locate(&QVector::from_ints(&[1]), &seg).unwrap(),
            Location::Boundary
        );
        let vert = [QVector::from_ints(&[2, 1]), QVector::from_ints(&[2, -1])];
        assert_eq!(
            hull_locate(&QVector::from_ints(&[0, 0]), &vert).unwrap(),
            Location::Outside
        );
        assert!(hull_locate(&QVector::from_ints(&[0]), &vert).is_err());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(
            primitive(&QVector::from_ints(&[2, 4])).unwrap(),
            QVector::from_ints(&[1, 2])
        );
        let third = QVector::new(vec![qr(1, 3), qr(1, 2)]);
        assert_eq!(primitive(&third).unwrap(), QVector::from_ints(&[2, 3]));
        assert_eq!(
            primitive(&QVector::from_ints(&[-2, 0])).unwrap(),
            QVector::from_ints(&[-1, 0])
        );
        assert!(primitive(&QVector::from_ints(&[0, 0])).is_err());
    }
}

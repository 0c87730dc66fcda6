use num::ToPrimitive;

use super::polytope::{Constraint, Location, QPolytope};
use super::vector::QVector;

pub fn to_f64s(x: &QVector) -> Vec<f64> {
    x.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

/// Floating copies of a polytope's bounding box and constraints, used to
/// rule points out before an exact test.
#[derive(Clone, Debug)]
pub struct FloatShape {
    bounds: Vec<(f64, f64)>,
    equations: Vec<(Vec<f64>, f64)>,
    facets: Vec<(Vec<f64>, f64)>,
    /// Some value has no finite floating copy.
    inexact: bool,
}

impl FloatShape {
    pub fn new(p: &QPolytope) -> FloatShape {
        let (lo, hi) = p.bounding_box();
        let bounds: Vec<(f64, f64)> = (0..lo.dim())
            .map(|i| {
                let a = lo[i].to_f64().unwrap_or(f64::NAN);
                let b = hi[i].to_f64().unwrap_or(f64::NAN);
                let pad = 1e-9 * (1.0 + a.abs().max(b.abs()));
                (a - pad, b + pad)
            })
            .collect();
        let conv = |cs: &[Constraint]| -> Vec<(Vec<f64>, f64)> {
            cs.iter()
                .map(|c| {
                    let n = c.normal.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
                    (n, c.offset.to_f64().unwrap_or(f64::NAN))
                })
                .collect()
        };
        let equations = conv(p.equations());
        let facets = conv(p.facets());
        let finite = |cs: &[(Vec<f64>, f64)]| {
            cs.iter()
                .all(|(n, b)| b.is_finite() && n.iter().all(|a| a.is_finite()))
        };
        let inexact = !bounds.iter().all(|&(a, b)| a.is_finite() && b.is_finite())
            || !finite(&equations)
            || !finite(&facets);
        FloatShape {
            bounds,
            equations,
            facets,
            inexact,
        }
    }

    /// `false` only when `x` is certainly not in the polytope.
    pub fn may_contain(&self, x: &[f64]) -> bool {
        self.locate(x) != Some(Location::Outside)
    }

    /// The location of `x` when the floating values settle it: outside when
    /// some constraint fails by more than the tolerance, interior when the
    /// polytope is full-dimensional and every facet holds by more than it.
    /// The tolerance dwarfs the rounding error of the evaluation.
    pub fn locate(&self, x: &[f64]) -> Option<Location> {
        if self.inexact || !x.iter().all(|v| v.is_finite()) {
            return None;
        }
        if !self
            .bounds
            .iter()
            .zip(x)
            .all(|(&(lo, hi), &v)| lo <= v && v <= hi)
        {
            return Some(Location::Outside);
        }
        let eval = |(n, b): &(Vec<f64>, f64)| -> (f64, f64) {
            let mut v = -b;
            let mut scale = b.abs();
            for (a, y) in n.iter().zip(x) {
                v += a * y;
                scale += (a * y).abs();
            }
            (v, 1e-9 * (1.0 + scale))
        };
        let mut clear = self.equations.is_empty();
        for e in &self.equations {
            let (v, tol) = eval(e);
            if v.abs() > tol {
                return Some(Location::Outside);
            }
        }
        for f in &self.facets {
            let (v, tol) = eval(f);
            if v > tol {
                return Some(Location::Outside);
            }
            clear &= v < -tol;
        }
        clear.then_some(Location::Interior)
    }
}

/// Bounding-box buckets over the first two coordinates, for finding the
/// shapes that may hold a point without scanning all of them.
#[derive(Clone, Debug)]
pub struct ShapeIndex {
    shapes: Vec<FloatShape>,
    axes: usize,
    lo: [f64; 2],
    step: [f64; 2],
    buckets: Vec<Vec<usize>>,
    inexact: Vec<usize>,
    all: Vec<usize>,
}

const BUCKETS: usize = 24;

impl ShapeIndex {
    pub fn new(polytopes: &[QPolytope]) -> ShapeIndex {
        let shapes: Vec<FloatShape> = polytopes.iter().map(FloatShape::new).collect();
        let axes = polytopes.first().map_or(0, |p| p.ambient_dim().min(2));
        let mut lo = [0.0; 2];
        let mut step = [1.0; 2];
        for a in 0..axes {
            let exact = shapes.iter().filter(|s| !s.inexact);
            let min = exact.clone().map(|s| s.bounds[a].0).fold(f64::INFINITY, f64::min);
            let max = exact.map(|s| s.bounds[a].1).fold(f64::NEG_INFINITY, f64::max);
            if min <= max {
                lo[a] = min;
                step[a] = ((max - min) / BUCKETS as f64).max(f64::MIN_POSITIVE);
            }
        }
        let cells = BUCKETS.pow(axes as u32);
        let mut buckets = vec![Vec::new(); cells];
        for (i, s) in shapes.iter().enumerate() {
            if s.inexact {
                buckets.iter_mut().for_each(|b| b.push(i));
                continue;
            }
            let range = |a: usize| {
                let (l, h) = s.bounds[a];
                let b = |x: f64| (((x - lo[a]) / step[a]).floor().max(0.0) as usize).min(BUCKETS - 1);
                b(l)..=b(h)
            };
            match axes {
                0 => buckets[0].push(i),
                1 => range(0).for_each(|x| buckets[x].push(i)),
                _ => {
                    for x in range(0) {
                        for y in range(1) {
                            buckets[x * BUCKETS + y].push(i);
                        }
                    }
                }
            }
        }
        let inexact = (0..shapes.len()).filter(|&i| shapes[i].inexact).collect();
        let all = (0..shapes.len()).collect();
        ShapeIndex {
            shapes,
            axes,
            lo,
            step,
            buckets,
            inexact,
            all,
        }
    }

    /// Indices of the polytopes that may contain `x`, in increasing order.
    pub fn candidates<'a>(&'a self, x: &'a [f64]) -> impl Iterator<Item = usize> + 'a {
        self.bucket(x)
            .iter()
            .copied()
            .filter(move |&i| self.shapes[i].may_contain(x))
    }

    /// Indices of the polytopes holding `x` in their relative interior; the
    /// exact test runs only where the floating one is not conclusive.
    pub fn interiors(&self, polytopes: &[QPolytope], x: &QVector) -> Vec<usize> {
        let approx = to_f64s(x);
        self.bucket(&approx)
            .iter()
            .copied()
            .filter(|&i| {
                let loc = self.shapes[i]
                    .locate(&approx)
                    .unwrap_or_else(|| polytopes[i].locate(x));
                loc == Location::Interior
            })
            .collect()
    }

    /// Whether some polytope contains `x`.
    pub fn holds_any(&self, polytopes: &[QPolytope], x: &QVector) -> bool {
        let approx = to_f64s(x);
        self.bucket(&approx)
            .iter()
            .any(|&i| match self.shapes[i].locate(&approx) {
                Some(Location::Outside) => false,
                Some(_) => true,
                None => polytopes[i].contains(x),
            })
    }

    fn bucket(&self, x: &[f64]) -> &[usize] {
        if !x.iter().all(|v| v.is_finite()) {
            return &self.all;
        }
        let mut cell = 0;
        for (a, &v) in x.iter().enumerate().take(self.axes) {
            let t = ((v - self.lo[a]) / self.step[a]).floor();
            if !(-1.0..=BUCKETS as f64).contains(&t) {
                // Past every finite box.
                return &self.inexact;
            }
            cell = cell * BUCKETS + (t.max(0.0) as usize).min(BUCKETS - 1);
        }
        &self.buckets[cell]
    }
}

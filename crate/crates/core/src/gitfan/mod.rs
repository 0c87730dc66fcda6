//! Stability sets, walls, GIT classes and the GIT fan, on the affine slice of
//! linearizations `theta`.
//!
//! Cones of the fan are represented by their slices: a class cone is the
//! polytope of `theta` values in its closure. Prepending a coordinate 1 and
//! taking the cone over the slice recovers the cone in `NS^G(X)`.
//!
//! Weight systems whose weights do not span the character space are handled
//! in an affine chart of their span; all results are reported in ambient
//! coordinates, and dimensions (chambers, walls) are relative to the span.

mod chart;
mod classes;
mod fan;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::Result;
use crate::polycore::{linalg, Hyperplane, QPolytope, QVector};
use crate::stability::{all_subsets_error, State, StateFamily, WeightSystem, ALL_SUBSETS_LIMIT};

pub use classes::{
    classify_theta, enumerate_classes, profile_at, GitClass, Profile, ProfileKind, ThetaClass,
};
pub use fan::{
    chamber_components, covering_edges, fan_verify, inclusion_poset, stable_nonempty, FanData, FanReport,
    PosetReport, StableCheck,
};

pub(crate) use chart::Chart;

/// The stability set of a state: `Conv(S)` in `theta`-space.
#[derive(Clone, Debug)]
pub struct StabilityRegion {
    pub state: State,
    pub region: QPolytope,
    pub codim: usize,
}

/// A codimension-one stability set, grouped by supporting hyperplane.
#[derive(Clone, Debug)]
pub struct Wall {
    pub support: Hyperplane,
    /// Convex hull of the codimension-one stability regions on `support`.
    pub piece: QPolytope,
    /// Inclusion-maximal states generating the wall.
    pub generating_states: Vec<State>,
}

/// `Conv` of every weight: the effective linearizations.
pub fn ample_region(ws: &WeightSystem) -> QPolytope {
    QPolytope::hull(ws.weights()).expect("weight systems are nonempty")
}

pub fn stability_region(ws: &WeightSystem, s: &State) -> Result<StabilityRegion> {
    ws.check_state(s)?;
    let region = QPolytope::hull(&ws.points(s))?;
    Ok(StabilityRegion {
        state: s.clone(),
        codim: region.codim(),
        region,
    })
}

/// Every nonempty face of `Conv(S)` with the substate of weights lying on it.
pub fn region_faces(ws: &WeightSystem, s: &State) -> Result<Vec<(QPolytope, State)>> {
    let reg = stability_region(ws, s)?.region;
    let mut out = Vec::new();
    for face in reg.faces() {
        let f = reg.face(&face);
        let sub = State::new(s.members().iter().copied().filter(|&i| f.contains(ws.weight(i))))?;
        out.push((f, sub));
    }
    Ok(out)
}

fn maximal_states(states: Vec<State>) -> Vec<State> {
    let mut out: Vec<State> = states
        .iter()
        .filter(|s| !states.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// All walls of the family: codimension-one stability regions (relative to
/// the span of the weights), grouped by their supporting hyperplane.
pub fn walls(ws: &WeightSystem, family: &StateFamily) -> Result<Vec<Wall>> {
    let chart = Chart::of_weights(ws);
    let k = chart.dim();
    if k == 0 {
        return Ok(Vec::new());
    }
    let distinct = ws.distinct();
    let mut groups: BTreeMap<Hyperplane, Vec<State>> = BTreeMap::new();
    match family {
        StateFamily::AllSubsets => {
            if distinct.len() > ALL_SUBSETS_LIMIT {
                return Err(all_subsets_error(distinct.len()));
            }
            let pts: Vec<QVector> = distinct.iter().map(|&i| chart.down(ws.weight(i))).collect();
            for sub in (0..pts.len()).combinations(k) {
                let refs: Vec<&QVector> = sub.iter().map(|&i| &pts[i]).collect();
                let Some(h) = Hyperplane::through(&refs) else {
                    continue;
                };
                if groups.contains_key(&h) {
                    continue;
                }
                let on = State::new(
                    (0..pts.len())
                        .filter(|&i| h.contains(&pts[i]))
                        .map(|i| distinct[i]),
                )?;
                groups.insert(h, vec![on]);
            }
        }
        StateFamily::Explicit(states) => {
            for s in states {
                let pts: Vec<QVector> = ws.points(s).iter().map(|p| chart.down(p)).collect();
                let refs: Vec<&QVector> = pts.iter().collect();
                if linalg::affine_rank(&refs) + 1 != k {
                    continue;
                }
                let h = Hyperplane::through(&refs).expect("codimension one");
                groups.entry(h).or_default().push(s.clone());
            }
        }
    }
    let mut out = Vec::with_capacity(groups.len());
    for (h, states) in groups {
        let generating_states = maximal_states(states);
        let pts: BTreeSet<QVector> = generating_states.iter().flat_map(|s| ws.points(s)).collect();
        let piece = QPolytope::hull(&pts.into_iter().collect::<Vec<_>>())?;
        out.push(Wall {
            support: chart.up_hyperplane(&h),
            piece,
            generating_states,
        });
    }
    Ok(out)
}

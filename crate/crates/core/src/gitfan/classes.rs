use std::collections::BTreeMap;

use itertools::Itertools;

use super::{walls, Chart, Wall};
use crate::error::{Error, Result};
use crate::polycore::{cell_complex, linalg, side, CellComplex, Constraint, Hyperplane, QPolytope, QVector};
use crate::stability::{
    all_subsets_error, Linearization, State, StateFamily, WeightSystem, ALL_SUBSETS_LIMIT,
};

/// How a profile stores the semistable states at a linearization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProfileKind {
    /// Inclusion-minimal semistable states; the semistable states are the
    /// supersets of these (used for `AllSubsets`).
    Minimal,
    /// Every semistable state of an explicit family.
    Full,
}

/// The semistable locus at a linearization, as a set of states.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub kind: ProfileKind,
    pub states: Vec<State>,
}

impl Profile {
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Whether `s` is semistable under this profile.
    pub fn admits(&self, s: &State) -> bool {
        match self.kind {
            ProfileKind::Full => self.states.binary_search(s).is_ok(),
            ProfileKind::Minimal => self.states.iter().any(|m| m.is_subset(s)),
        }
    }

    /// `X^ss(self) ⊆ X^ss(other)`.
    pub fn included_in(&self, other: &Profile) -> bool {
        self.states.iter().all(|s| other.admits(s))
    }
}

/// A GIT class: linearizations with one semistable locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GitClass {
    pub profile: Profile,
    /// Closure of the class in `theta`-space.
    pub cone: QPolytope,
    pub dim: usize,
    /// A point of the relative interior.
    pub sample: QVector,
    pub is_chamber: bool,
    /// Indices (into [`walls`]) of the walls containing the class.
    pub touches_wall: Option<Vec<usize>>,
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaClass {
    /// `theta` is semistable for no realized state.
    NotEffective,
    Class(GitClass),
}

/// Everything the class computations share, expressed in the chart of the
/// weights' span.
pub(crate) struct Setup {
    pub chart: Chart,
    pub region: QPolytope,
    pub kind: ProfileKind,
    /// Sorted by state: simplices for `Minimal`, family states for `Full`.
    pub tests: Vec<(State, QPolytope)>,
    pub hyperplanes: Vec<Hyperplane>,
    /// For `Minimal`, per test: a point is in the simplex's relative interior
    /// exactly when its side of each listed hyperplane is the listed sign.
    signs: Vec<Vec<(usize, i8)>>,
}

impl Setup {
    pub fn new(ws: &WeightSystem, family: &StateFamily) -> Result<Setup> {
        let chart = Chart::of_weights(ws);
        let k = chart.dim();
        let down = |s: &State| -> Vec<QVector> { ws.points(s).iter().map(|p| chart.down(p)).collect() };
        let region = QPolytope::hull(&ws.weights().iter().map(|w| chart.down(w)).collect::<Vec<_>>())?;
        let mut hyperplanes = Vec::new();
        let (kind, mut tests) = match family {
            StateFamily::AllSubsets => {
                let distinct = ws.distinct();
                if distinct.len() > ALL_SUBSETS_LIMIT {
                    return Err(all_subsets_error(distinct.len()));
                }
                let pts: Vec<QVector> = distinct.iter().map(|&i| chart.down(ws.weight(i))).collect();
                let mut tests = Vec::new();
                for size in 1..=(k + 1).min(pts.len()) {
                    for sub in (0..pts.len()).combinations(size) {
                        let refs: Vec<&QVector> = sub.iter().map(|&i| &pts[i]).collect();
                        if linalg::affine_rank(&refs) + 1 != size {
                            continue;
                        }
                        if size == k {
                            hyperplanes.extend(Hyperplane::through(&refs));
                        }
                        let s = State::new(sub.iter().map(|&i| distinct[i]))?;
                        let hull = QPolytope::hull(&refs.into_iter().cloned().collect::<Vec<_>>())?;
                        tests.push((s, hull));
                    }
                }
                (ProfileKind::Minimal, tests)
            }
            StateFamily::Explicit(states) => {
                let mut tests = Vec::new();
                for s in states {
                    let hull = QPolytope::hull(&down(s))?;
                    for c in hull.equations().iter().chain(hull.facets()) {
                        if !c.normal.is_zero() {
                            hyperplanes.push(Hyperplane::new(&c.normal, &c.offset)?);
                        }
                    }
                    tests.push((s.clone(), hull));
                }
                (ProfileKind::Full, tests)
            }
        };
        tests.sort_by(|a, b| a.0.cmp(&b.0));
        hyperplanes.sort();
        hyperplanes.dedup();
        let signs = match kind {
            ProfileKind::Full => Vec::new(),
            ProfileKind::Minimal => tests
                .iter()
                .map(|(_, simplex)| sign_pattern(&hyperplanes, simplex.vertices()))
                .collect(),
        };
        Ok(Setup {
            chart,
            region,
            kind,
            tests,
            hyperplanes,
            signs,
        })
    }

    /// Profile at a chart point.
    pub fn profile(&self, y: &QVector) -> Profile {
        match self.kind {
            ProfileKind::Minimal => {
                let sv: Vec<i8> = self.hyperplanes.iter().map(|h| side(h, y)).collect();
                self.profile_of_signs(&sv)
            }
            ProfileKind::Full => {
                let states = self
                    .tests
                    .iter()
                    .filter(|(_, p)| p.contains(y))
                    .map(|(s, _)| s.clone())
                    .collect();
                Profile {
                    kind: self.kind,
                    states,
                }
            }
        }
    }

    /// `Minimal` profile of a point with the given sides of `hyperplanes`.
    fn profile_of_signs(&self, sv: &[i8]) -> Profile {
        let states = self
            .tests
            .iter()
            .zip(&self.signs)
            .filter(|(_, pat)| pat.iter().all(|&(h, s)| sv[h] == s))
            .map(|((s, _), _)| s.clone())
            .collect();
        Profile {
            kind: self.kind,
            states,
        }
    }

    /// Profile of every cell of a complex over `hyperplanes`, read off the
    /// sides of the cells' vertices.
    fn cell_profiles(&self, cx: &CellComplex) -> Vec<Profile> {
        if self.kind == ProfileKind::Full {
            return cx.cells.iter().map(|c| self.profile(&c.sample)).collect();
        }
        let vs = cx.vertex_sides(&self.hyperplanes);
        cx.cells
            .iter()
            .map(|c| {
                // The closure lies on one side of each hyperplane, so any
                // vertex off it gives the cell's side.
                let sv: Vec<i8> = (0..self.hyperplanes.len())
                    .map(|h| {
                        c.vertex_ids
                            .iter()
                            .map(|&v| vs[v][h])
                            .find(|&x| x != 0)
                            .unwrap_or(0)
                    })
                    .collect();
                self.profile_of_signs(&sv)
            })
            .collect()
    }

    pub fn test_polytope(&self, s: &State) -> &QPolytope {
        let i = self
            .tests
            .binary_search_by(|(t, _)| t.cmp(s))
            .expect("state of this setup");
        &self.tests[i].1
    }

    /// Closure of the class with profile `p`, in the chart.
    pub fn class_cone(&self, p: &Profile) -> Result<QPolytope> {
        if self.chart.dim() == 0 {
            return Ok(self.region.clone());
        }
        let mut ineqs: Vec<Constraint> = Vec::new();
        let mut eqs: Vec<Constraint> = Vec::new();
        for s in &p.states {
            let poly = self.test_polytope(s);
            ineqs.extend(poly.facets().iter().cloned());
            eqs.extend(poly.equations().iter().cloned());
        }
        QPolytope::from_constraints(self.chart.dim(), &ineqs, &eqs)?
            .ok_or_else(|| Error::precondition("class cone is empty"))
    }
}

/// Sign conditions for the relative interior of a simplex spanned by weights:
/// on every hyperplane containing it, and on the inner side of one hyperplane
/// through each facet. Every such hyperplane is spanned by weights, so the
/// conditions cut out the simplex inside its span.
fn sign_pattern(hyperplanes: &[Hyperplane], simplex: &[QVector]) -> Vec<(usize, i8)> {
    let on: Vec<Vec<bool>> = hyperplanes
        .iter()
        .map(|h| simplex.iter().map(|p| h.contains(p)).collect())
        .collect();
    let mut out: Vec<(usize, i8)> = (0..hyperplanes.len())
        .filter(|&h| on[h].iter().all(|&b| b))
        .map(|h| (h, 0))
        .collect();
    if simplex.len() > 1 {
        for (t, p) in simplex.iter().enumerate() {
            let h = (0..hyperplanes.len())
                .find(|&h| !on[h][t] && (0..simplex.len()).all(|u| u == t || on[h][u]))
                .expect("weights span the chart");
            out.push((h, side(&hyperplanes[h], p)));
        }
    }
    out
}

/// Classes together with the cell complex they were read off from.
pub(crate) struct Enumeration {
    pub setup: Setup,
    pub walls: Vec<Wall>,
    pub classes: Vec<GitClass>,
    /// `None` in the degenerate case of a single effective point.
    pub complex: Option<CellComplex>,
    /// Profile per cell of `complex`.
    pub cell_profiles: Vec<Profile>,
}

pub(crate) fn enumerate(ws: &WeightSystem, family: &StateFamily) -> Result<Enumeration> {
    let setup = Setup::new(ws, family)?;
    let walls = walls(ws, family)?;
    let k = setup.chart.dim();
    if k == 0 {
        let y = setup.region.vertices()[0].clone();
        let profile = setup.profile(&y);
        let classes = if profile.is_empty() {
            Vec::new()
        } else {
            let sample = setup.chart.up(&y);
            vec![GitClass {
                profile,
                cone: QPolytope::hull(std::slice::from_ref(&sample))?,
                dim: 0,
                sample,
                is_chamber: true,
                touches_wall: Some(Vec::new()),
            }]
        };
        return Ok(Enumeration {
            setup,
            walls,
            classes,
            complex: None,
            cell_profiles: Vec::new(),
        });
    }
    let cx = cell_complex(&setup.hyperplanes, &setup.region)?;
    let cell_profiles = setup.cell_profiles(&cx);
    let mut groups: BTreeMap<&Profile, Vec<usize>> = BTreeMap::new();
    for (c, p) in cell_profiles.iter().enumerate() {
        if !p.is_empty() {
            groups.entry(p).or_default().push(c);
        }
    }
    let mut classes = Vec::with_capacity(groups.len());
    for (profile, cells) in groups {
        let mut ids: Vec<usize> = cells
            .iter()
            .flat_map(|&c| cx.cells[c].vertex_ids.iter().copied())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let pts: Vec<QVector> = ids.iter().map(|&i| setup.chart.up(&cx.vertices[i])).collect();
        let cone = QPolytope::hull(&pts)?;
        let dim = cone.affine_dim();
        let sample = cells
            .iter()
            .filter(|&&c| cx.cells[c].dim == dim)
            .map(|&c| setup.chart.up(&cx.cells[c].sample))
            .min()
            .expect("a top-dimensional cell");
        let touches = (0..walls.len())
            .filter(|&w| walls[w].piece.contains(&sample))
            .collect();
        classes.push(GitClass {
            profile: profile.clone(),
            cone,
            dim,
            sample,
            is_chamber: dim == k,
            touches_wall: Some(touches),
        });
    }
    classes.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.sample.cmp(&b.sample)));
    Ok(Enumeration {
        setup,
        walls,
        classes,
        complex: Some(cx),
        cell_profiles,
    })
}

/// All GIT classes inside the ample region, sorted by decreasing dimension
/// and then by sample point.
pub fn enumerate_classes(ws: &WeightSystem, family: &StateFamily) -> Result<Vec<GitClass>> {
    Ok(enumerate(ws, family)?.classes)
}

/// The semistable profile at `theta` (empty when `theta` is not effective).
pub fn profile_at(ws: &WeightSystem, family: &StateFamily, theta: &QVector) -> Result<Profile> {
    let setup = Setup::new(ws, family)?;
    Ok(profile_in(&setup, theta))
}

pub(crate) fn profile_in(setup: &Setup, theta: &QVector) -> Profile {
    if !setup.chart.on_span(theta) {
        return Profile {
            kind: setup.kind,
            states: Vec::new(),
        };
    }
    setup.profile(&setup.chart.down(theta))
}

/// The class whose relative interior contains `theta`; its closure is
/// computed directly as the intersection of the stability sets of the
/// profile's states.
pub fn classify_theta(ws: &WeightSystem, family: &StateFamily, lin: &Linearization) -> Result<ThetaClass> {
    if lin.theta.dim() != ws.rank() {
        return Err(Error::input(format!(
            "theta has {} coordinates, expected {}",
            lin.theta.dim(),
            ws.rank()
        )));
    }
    let setup = Setup::new(ws, family)?;
    let profile = profile_in(&setup, &lin.theta);
    if profile.is_empty() {
        return Ok(ThetaClass::NotEffective);
    }
    let cone_chart = setup.class_cone(&profile)?;
    let cone = setup.chart.up_polytope(&cone_chart);
    let dim = cone.affine_dim();
    Ok(ThetaClass::Class(GitClass {
        profile,
        sample: cone.centroid(),
        is_chamber: dim == setup.chart.dim(),
        dim,
        cone,
        touches_wall: None,
    }))
}

use std::collections::{BTreeMap, BTreeSet};

use super::classes::{enumerate, Enumeration, GitClass, ProfileKind, Setup};
use super::{ample_region, Chart};
use crate::error::{Error, Result};
use crate::polycore::{
    cell_complex, to_f64s, FloatShape, Hyperplane, Location, QPolytope, QVector, ShapeIndex,
};
use crate::stability::{classify_fast, Linearization, StateClass, StateFamily, WeightSystem};

/// Result of [`fan_verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub cones: Vec<GitClass>,
    /// `(child, parent)`: the closure of `child` is a proper face of the
    /// closure of `parent`.
    pub face_incidences: Vec<(usize, usize)>,
    pub violations: Vec<String>,
}

/// Result of [`inclusion_poset`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetReport {
    /// `(f, g)`: `X^ss(f) ⊆ X^ss(g)`, reflexive pairs included.
    pub edges: Vec<(usize, usize)>,
    pub violations: Vec<String>,
}

/// Result of [`stable_nonempty`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableCheck {
    /// Some chamber sample has a stable state.
    pub hypothesis_met: bool,
    /// `theta` lies in the interior of the effective region (meaningful only
    /// when the hypothesis holds).
    pub nonempty: bool,
    /// Direct enumeration: some realized state is stable at `theta`.
    pub direct: bool,
}

/// Semistable-locus inclusions between classes, checked against closure
/// containment of the cones.
pub fn inclusion_poset(classes: &[GitClass]) -> PosetReport {
    let mut edges = Vec::new();
    let mut violations = Vec::new();
    let shapes: Vec<FloatShape> = classes.iter().map(|c| FloatShape::new(&c.cone)).collect();
    let approx: Vec<Vec<Vec<f64>>> = classes
        .iter()
        .map(|c| c.cone.vertices().iter().map(to_f64s).collect())
        .collect();
    for (i, f) in classes.iter().enumerate() {
        for (j, g) in classes.iter().enumerate() {
            let by_profile = f.profile.included_in(&g.profile);
            let by_cone = g
                .cone
                .vertices()
                .iter()
                .zip(&approx[j])
                .all(|(v, x)| match shapes[i].locate(x) {
                    Some(Location::Outside) => false,
                    Some(_) => true,
                    None => f.cone.contains(v),
                });
            if by_profile != by_cone {
                violations.push(format!(
                    "classes {i} and {j}: semistable inclusion is {by_profile} but closure containment is {by_cone}"
                ));
            }
            if by_profile {
                edges.push((i, j));
            }
        }
    }
    PosetReport { edges, violations }
}

/// Non-reflexive edges of a partial order with no element strictly between.
pub fn covering_edges(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let set: BTreeSet<(usize, usize)> = edges.iter().copied().filter(|(a, b)| a != b).collect();
    let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &set {
        succ.entry(a).or_default().push(b);
    }
    set.iter()
        .copied()
        .filter(|&(a, b)| !succ[&a].iter().any(|&c| c != b && set.contains(&(c, b))))
        .collect()
}

/// Checks the fan axioms for a list of classes of `(ws, family)`:
/// (a) the relative interiors partition the effective region,
/// (b) every face of every closure is the closure of a class,
/// (c) two closures meet in a common face.
pub fn fan_verify(ws: &WeightSystem, family: &StateFamily, classes: &[GitClass]) -> Result<FanReport> {
    let mut violations = Vec::new();
    let mut face_incidences = Vec::new();

    let mut by_vertices: BTreeMap<&[QVector], usize> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        if let Some(j) = by_vertices.insert(c.cone.vertices(), i) {
            violations.push(format!("classes {j} and {i} have the same closure"));
        }
    }

    // (b) faces are classes
    let mut faces_of: Vec<BTreeSet<usize>> = Vec::with_capacity(classes.len());
    for (i, c) in classes.iter().enumerate() {
        let mut own = BTreeSet::new();
        for face in c.cone.faces() {
            let verts: Vec<QVector> = face.iter().map(|&v| c.cone.vertices()[v].clone()).collect();
            match by_vertices.get(verts.as_slice()) {
                Some(&j) => {
                    own.insert(j);
                    if j != i {
                        face_incidences.push((j, i));
                    }
                }
                None => violations.push(format!(
                    "(b) face {:?} of class {i} is not the closure of a class",
                    verts
                )),
            }
        }
        faces_of.push(own);
    }
    face_incidences.sort_unstable();

    // (c) pairwise intersections, for pairs sharing a vertex class
    let mut containing: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, own) in faces_of.iter().enumerate() {
        for &j in own {
            if classes[j].dim == 0 {
                containing.entry(j).or_default().push(i);
            }
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for list in containing.values() {
        for (x, &a) in list.iter().enumerate() {
            for &b in &list[x + 1..] {
                pairs.insert((a, b));
            }
        }
    }
    for (a, b) in pairs {
        let common: BTreeSet<usize> = faces_of[a].intersection(&faces_of[b]).copied().collect();
        let top = common
            .iter()
            .copied()
            .max_by_key(|&c| classes[c].cone.vertices().len())
            .expect("pairs share a vertex");
        if common != faces_of[top] {
            violations.push(format!(
                "(c) closures of classes {a} and {b} do not meet in a common face"
            ));
        }
    }

    // (a) cover and disjointness, sampled on every cell of the arrangement
    // spanned by the class cones themselves.
    let setup = Setup::new(ws, family)?;
    let chart = Chart::of_weights(ws);
    let cones: Vec<QPolytope> = classes.iter().map(|c| c.cone.clone()).collect();
    let index = ShapeIndex::new(&cones);
    let mut samples: Vec<QVector> = Vec::new();
    if chart.dim() == 0 {
        samples.push(ws.weight(0).clone());
    } else {
        let mut hyperplanes = Vec::new();
        for c in classes.iter().filter(|c| c.dim == chart.dim()) {
            let pts: Vec<QVector> = c.cone.vertices().iter().map(|v| chart.down(v)).collect();
            for k in QPolytope::hull(&pts)?.facets() {
                hyperplanes.push(Hyperplane::new(&k.normal, &k.offset)?);
            }
        }
        let cx = cell_complex(&hyperplanes, &setup.region)?;
        samples.extend(cx.cells.iter().map(|c| chart.up(&c.sample)));
    }
    let hulls: Vec<QPolytope> = match family {
        StateFamily::AllSubsets => vec![ample_region(ws)],
        StateFamily::Explicit(states) => states
            .iter()
            .map(|s| QPolytope::hull(&ws.points(s)))
            .collect::<Result<_>>()?,
    };
    let hull_index = ShapeIndex::new(&hulls);
    for theta in samples {
        let effective = hull_index.holds_any(&hulls, &theta);
        let hits = index.interiors(&cones, &theta).len();
        let expected = usize::from(effective);
        if hits != expected {
            violations.push(format!(
                "(a) point {theta} lies in {hits} class interiors, expected {expected}"
            ));
        }
    }

    Ok(FanReport {
        cones: classes.to_vec(),
        face_incidences,
        violations,
    })
}

/// Chambers as connected components of the complement of the walls: pieces
/// of the wall arrangement glued across facets that lie on no wall. Each
/// component is returned as the sorted list of its pieces' sample points.
pub fn chamber_components(ws: &WeightSystem, family: &StateFamily) -> Result<Vec<Vec<QVector>>> {
    let chart = Chart::of_weights(ws);
    let k = chart.dim();
    let walls = super::walls(ws, family)?;
    if k == 0 {
        return Ok(vec![vec![ws.weight(0).clone()]]);
    }
    let region = QPolytope::hull(&ws.weights().iter().map(|w| chart.down(w)).collect::<Vec<_>>())?;
    let pieces: Vec<QPolytope> = walls
        .iter()
        .map(|w| {
            let v: Vec<QVector> = w.piece.vertices().iter().map(|p| chart.down(p)).collect();
            QPolytope::hull(&v)
        })
        .collect::<Result<_>>()?;
    let supports: Vec<Hyperplane> = pieces
        .iter()
        .map(|p| {
            let refs: Vec<&QVector> = p.vertices().iter().collect();
            if k == 1 {
                Hyperplane::through(&refs[..1]).expect("a point in a line")
            } else {
                Hyperplane::through(&refs).expect("codimension one")
            }
        })
        .collect();
    let cx = cell_complex(&supports, &region)?;
    let n = cx.pieces.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut owners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (p, faces) in cx.piece_faces.iter().enumerate() {
        for &c in faces {
            if cx.cells[c].dim + 1 == k && cx.cells[c].interior {
                owners.entry(c).or_default().push(p);
            }
        }
    }
    let sides = cx.vertex_sides(&supports);
    for (c, ps) in owners {
        let s = &cx.cells[c].sample;
        let ids = &cx.cells[c].vertex_ids;
        let on_wall =
            (0..pieces.len()).any(|w| ids.iter().all(|&v| sides[v][w] == 0) && pieces[w].contains(s));
        if on_wall {
            continue;
        }
        for pair in ps.windows(2) {
            let a = find(&mut parent, pair[0]);
            let b = find(&mut parent, pair[1]);
            parent[a] = b;
        }
    }
    let mut comps: BTreeMap<usize, Vec<QVector>> = BTreeMap::new();
    for p in 0..n {
        let root = find(&mut parent, p);
        comps
            .entry(root)
            .or_default()
            .push(chart.up(&cx.cells[cx.pieces[p]].sample));
    }
    let mut out: Vec<Vec<QVector>> = comps
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    out.sort();
    Ok(out)
}

fn any_stable(ws: &WeightSystem, setup: &Setup, family: &StateFamily, theta: &QVector) -> Result<bool> {
    Ok(match family {
        StateFamily::AllSubsets => classify_fast(ws, &ws.full_state(), theta) == StateClass::Stable,
        StateFamily::Explicit(states) => {
            let _ = setup;
            states
                .iter()
                .any(|s| classify_fast(ws, s, theta) == StateClass::Stable)
        }
    })
}

pub(crate) fn stable_nonempty_in(
    ws: &WeightSystem,
    family: &StateFamily,
    en: &Enumeration,
    lin: &Linearization,
) -> Result<StableCheck> {
    let theta = &lin.theta;
    if theta.dim() != ws.rank() {
        return Err(Error::input("theta has the wrong dimension"));
    }
    let mut hypothesis_met = false;
    for c in en.classes.iter().filter(|c| c.is_chamber) {
        if any_stable(ws, &en.setup, family, &c.sample)? {
            hypothesis_met = true;
            break;
        }
    }
    let direct = any_stable(ws, &en.setup, family, theta)?;
    let ample = ample_region(ws);
    let mut interior = ample.is_full_dimensional() && ample.locate(theta) == Location::Interior;
    if interior && en.setup.kind == ProfileKind::Full {
        if let Some(cx) = &en.complex {
            for &p in &cx.pieces {
                if en.cell_profiles[p].is_empty() && cx.cell_polytope(p).contains(theta) {
                    interior = false;
                    break;
                }
            }
        }
    }
    Ok(StableCheck {
        hypothesis_met,
        nonempty: hypothesis_met && interior,
        direct,
    })
}

/// Whether stable points exist at `theta`: true exactly when `theta` is in
/// the interior of the effective region, provided some chamber has stable
/// points at all.
pub fn stable_nonempty(ws: &WeightSystem, family: &StateFamily, lin: &Linearization) -> Result<StableCheck> {
    let en = enumerate(ws, family)?;
    stable_nonempty_in(ws, family, &en, lin)
}

/// Classes and the stable-points check sharing one enumeration.
pub struct FanData {
    en: Enumeration,
}

impl FanData {
    pub fn new(ws: &WeightSystem, family: &StateFamily) -> Result<FanData> {
        Ok(FanData {
            en: enumerate(ws, family)?,
        })
    }

    pub fn classes(&self) -> &[GitClass] {
        &self.en.classes
    }

    pub fn walls(&self) -> &[super::Wall] {
        &self.en.walls
    }

    pub fn stable_nonempty(
        &self,
        ws: &WeightSystem,
        family: &StateFamily,
        lin: &Linearization,
    ) -> Result<StableCheck> {
        stable_nonempty_in(ws, family, &self.en, lin)
    }
}

#[cfg(test)]
mod tests {
    use super::super::enumerate_classes;
    use super::*;
    use crate::stability::State;

    fn ws(rank: usize, w: &[&[i64]]) -> WeightSystem {
        let v: Vec<QVector> = w.iter().map(|c| QVector::from_ints(c)).collect();
        WeightSystem::unlabelled(rank, &v).unwrap()
    }

    fn lin(c: &[i64]) -> Linearization {
        Linearization::new(QVector::from_ints(c))
    }

    #[test]
    fn segment_poset_and_fan() {
        let a = ws(1, &[&[-1], &[1]]);
        let fam = StateFamily::AllSubsets;
        let c = enumerate_classes(&a, &fam).unwrap();
        let poset = inclusion_poset(&c);
        assert!(poset.violations.is_empty());
        assert_eq!(poset.edges, vec![(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)]);
        assert_eq!(covering_edges(&poset.edges), vec![(0, 1), (0, 2)]);
        let rep = fan_verify(&a, &fam, &c).unwrap();
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        assert_eq!(rep.face_incidences, vec![(1, 0), (2, 0)]);
    }

    #[test]
    fn three_points_fan_and_negative_control() {
        let a = ws(1, &[&[-1], &[0], &[1]]);
        let fam = StateFamily::AllSubsets;
        let c = enumerate_classes(&a, &fam).unwrap();
        assert!(fan_verify(&a, &fam, &c).unwrap().violations.is_empty());
        let mut broken = c.clone();
        let zero = broken
            .iter()
            .position(|k| k.sample == QVector::from_ints(&[0]))
            .unwrap();
        broken.remove(zero);
        let rep = fan_verify(&a, &fam, &broken).unwrap();
        assert!(rep.violations.iter().any(|v| v.starts_with("(b)")));
        // The two chambers are incomparable.
        let poset = inclusion_poset(&c);
        assert!(!poset.edges.contains(&(0, 1)) && !poset.edges.contains(&(1, 0)));
    }

    #[test]
    fn square_fan() {
        let a = ws(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 3]]);
        let fam = StateFamily::AllSubsets;
        let c = enumerate_classes(&a, &fam).unwrap();
        let rep = fan_verify(&a, &fam, &c).unwrap();
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        assert!(inclusion_poset(&c).violations.is_empty());
        let chambers: Vec<&GitClass> = c.iter().filter(|k| k.is_chamber).collect();
        assert_eq!(chamber_components(&a, &fam).unwrap().len(), chambers.len());
    }

    #[test]
    fn stable_checks() {
        let a = ws(1, &[&[-1], &[1]]);
        let fam = StateFamily::AllSubsets;
        let at0 = stable_nonempty(&a, &fam, &lin(&[0])).unwrap();
        assert_eq!(
            at0,
            StableCheck {
                hypothesis_met: true,
                nonempty: true,
                direct: true
            }
        );
        let at1 = stable_nonempty(&a, &fam, &lin(&[1])).unwrap();
        assert_eq!(
            at1,
            StableCheck {
                hypothesis_met: true,
                nonempty: false,
                direct: false
            }
        );
        let single = StateFamily::explicit(&a, vec![State::new([1]).unwrap()]).unwrap();
        let s = stable_nonempty(&a, &single, &lin(&[1])).unwrap();
        assert!(!s.hypothesis_met);
    }
}

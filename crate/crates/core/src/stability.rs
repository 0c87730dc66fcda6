//! The numerical criterion for a torus acting on `P(V)`.
//!
//! Conventions: a state `S` is semistable for the linearization `theta`
//! exactly when `theta` lies in `Conv(S)`. The instability measure `M` is the
//! signed `B^{-1}`-distance from `theta` to `Conv(S)`: positive outside,
//! minus the distance to the boundary inside a full-dimensional hull, and zero
//! otherwise.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polycore::linalg::{self, QMatrix};
use crate::polycore::{
    lp, nearest_boundary_point, project_metric, GramForm, Location, QPolytope, QVector, Q,
};

/// Largest number of distinct weights for which every subset is enumerated.
pub const ALL_SUBSETS_LIMIT: usize = 16;

/// The characters of a torus module `V`, with optional Weyl group and form.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    rank: usize,
    labels: Vec<String>,
    weights: Vec<QVector>,
    weyl: Vec<QMatrix>,
    form: GramForm,
}

impl WeightSystem {
    /// Integer weights with unique labels, trivial Weyl group and identity form.
    pub fn new(rank: usize, weights: Vec<(String, QVector)>) -> Result<WeightSystem> {
        if rank == 0 {
            return Err(Error::input("rank must be at least 1"));
        }
        if weights.is_empty() {
            return Err(Error::input("weight list is empty"));
        }
        let mut seen = BTreeSet::new();
        for (label, chi) in &weights {
            if !seen.insert(label.as_str()) {
                return Err(Error::input(format!("duplicate weight label {label:?}")));
            }
            if chi.dim() != rank {
                return Err(Error::input(format!(
                    "weight {label:?} has {} coordinates, expected {rank}",
                    chi.dim()
                )));
            }
            if !chi.is_integral() {
                return Err(Error::input(format!("weight {label:?} is not integral")));
            }
        }
        let (labels, weights) = weights.into_iter().unzip();
        Ok(WeightSystem {
            rank,
            labels,
            weights,
            weyl: vec![linalg::identity(rank)],
            form: GramForm::identity(rank),
        })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(rank: usize, weights: &[(&str, &[i64])]) -> Result<WeightSystem> {
        WeightSystem::new(
            rank,
            weights
                .iter()
                .map(|(l, c)| (l.to_string(), QVector::from_ints(c)))
                .collect(),
        )
    }

    /// Unlabelled weights, named `w0, w1, ...`.
    pub fn unlabelled(rank: usize, weights: &[QVector]) -> Result<WeightSystem> {
        WeightSystem::new(
            rank,
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (format!("w{i}"), w.clone()))
                .collect(),
        )
    }

    pub fn with_form(mut self, form: GramForm) -> Result<WeightSystem> {
        if form.rank() != self.rank {
            return Err(Error::input(format!(
                "form has rank {}, expected {}",
                form.rank(),
                self.rank
            )));
        }
        self.form = form;
        self.check_form_invariance()?;
        Ok(self)
    }

    /// Declare the Weyl group as a list of integer matrices acting on
    /// characters. The list must already be a group.
    pub fn with_weyl(mut self, weyl: Vec<QMatrix>) -> Result<WeightSystem> {
        let r = self.rank;
        if weyl.is_empty() {
            self.weyl = vec![linalg::identity(r)];
            return Ok(self);
        }
        for (k, w) in weyl.iter().enumerate() {
            if w.len() != r || w.iter().any(|row| row.len() != r) {
                return Err(Error::input(format!("weyl element {k} is not {r}x{r}")));
            }
            if w.iter().flatten().any(|x| !x.is_integer()) {
                return Err(Error::input(format!("weyl element {k} is not integral")));
            }
            let d = linalg::det(w);
            if d.abs() != Q::one() {
                return Err(Error::input(format!(
                    "weyl element {k} has determinant {}, expected +-1",
                    crate::polycore::fmt_q(&d)
                )));
            }
        }
        let set: BTreeSet<QMatrix> = weyl.iter().cloned().collect();
        for (i, a) in weyl.iter().enumerate() {
            let inv = linalg::inverse(a).expect("unimodular");
            if !set.contains(&inv) {
                return Err(Error::input(format!(
                    "weyl group is not closed under inverses (element {i})"
                )));
            }
            for (j, b) in weyl.iter().enumerate() {
                if !set.contains(&linalg::mat_mul(a, b)) {
                    return Err(Error::input(format!(
                        "weyl group is not closed under products (elements {i}, {j})"
                    )));
                }
            }
        }
        let mut counts: HashMap<&QVector, usize> = HashMap::new();
        for chi in &self.weights {
            *counts.entry(chi).or_default() += 1;
        }
        for (k, w) in weyl.iter().enumerate() {
            let mut image: HashMap<QVector, usize> = HashMap::new();
            for chi in &self.weights {
                *image.entry(QVector::new(linalg::mat_vec(w, chi))).or_default() += 1;
            }
            let same = image.len() == counts.len() && image.iter().all(|(chi, n)| counts.get(chi) == Some(n));
            if !same {
                return Err(Error::input(format!(
                    "weyl element {k} does not permute the weights"
                )));
            }
        }
        self.weyl = set.into_iter().collect();
        self.check_form_invariance()?;
        Ok(self)
    }

    fn check_form_invariance(&self) -> Result<()> {
        for (k, w) in self.weyl.iter().enumerate() {
            if !self.form.is_invariant_under(w) {
                return Err(Error::input(format!(
                    "form is not invariant under weyl element {k}"
                )));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn weights(&self) -> &[QVector] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &QVector {
        &self.weights[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Weyl group elements (always containing the identity).
    pub fn weyl(&self) -> &[QMatrix] {
        &self.weyl
    }

    pub fn form(&self) -> &GramForm {
        &self.form
    }

    /// Index of the first occurrence of each distinct character.
    pub fn distinct(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        (0..self.weights.len())
            .filter(|&i| seen.insert(&self.weights[i]))
            .collect()
    }

    /// The state of every weight index.
    pub fn full_state(&self) -> State {
        State(self.distinct())
    }

    /// Distinct characters of `s`, sorted.
    pub fn points(&self, s: &State) -> Vec<QVector> {
        let set: BTreeSet<&QVector> = s.0.iter().map(|&i| &self.weights[i]).collect();
        set.into_iter().cloned().collect()
    }

    pub fn check_state(&self, s: &State) -> Result<()> {
        match s.0.iter().find(|&&i| i >= self.weights.len()) {
            Some(i) => Err(Error::input(format!("state index {i} out of range"))),
            None => Ok(()),
        }
    }

    /// Canonical form of a state: each character represented by its first index.
    pub fn canonical_state(&self, s: &State) -> State {
        let mut first: BTreeMap<&QVector, usize> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            first.entry(w).or_insert(i);
        }
        State(
            s.0.iter()
                .map(|&i| first[&self.weights[i]])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        )
    }

    /// State made of the given labels.
    pub fn state_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<State> {
        let ids = labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::input(format!("unknown weight label {:?}", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        State::new(ids)
    }

    pub fn state_labels(&self, s: &State) -> Vec<String> {
        s.0.iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// Image of a one-parameter subgroup under `w` (acting on characters by
    /// `chi -> w chi`): `lambda -> w^{-T} lambda`.
    pub fn act_on_lps(&self, w: &QMatrix, lambda: &QVector) -> QVector {
        let inv = linalg::inverse(w).expect("unimodular");
        QVector::new(linalg::mat_vec(&linalg::transpose(&inv), lambda))
    }

    /// Lexicographically least member of the Weyl orbit of `lambda`.
    pub fn canonical_lps(&self, lambda: &QVector) -> QVector {
        self.weyl
            .iter()
            .map(|w| self.act_on_lps(w, lambda))
            .min()
            .expect("weyl group contains the identity")
    }
}

/// A nonempty set of weight indices, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(Vec<usize>);

impl State {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<State> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.is_empty() {
            return Err(Error::input("states must be nonempty"));
        }
        Ok(State(set.into_iter().collect()))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &State) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// The states realized by the variety under study.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateFamily {
    /// Every nonempty subset of the distinct weights (the case `X = P(V)`).
    AllSubsets,
    Explicit(Vec<State>),
}

impl StateFamily {
    /// Explicit family, canonicalized and de-duplicated.
    pub fn explicit(ws: &WeightSystem, states: Vec<State>) -> Result<StateFamily> {
        if states.is_empty() {
            return Err(Error::input("explicit state family is empty"));
        }
        let mut set = BTreeSet::new();
        for s in &states {
            ws.check_state(s)?;
            set.insert(ws.canonical_state(s));
        }
        Ok(StateFamily::Explicit(set.into_iter().collect()))
    }

    /// The states of the family, enumerating subsets for `AllSubsets`.
    pub fn states(&self, ws: &WeightSystem) -> Result<Vec<State>> {
        match self {
            StateFamily::Explicit(v) => Ok(v.clone()),
            StateFamily::AllSubsets => {
                let d = ws.distinct();
                if d.len() > ALL_SUBSETS_LIMIT {
                    return Err(all_subsets_error(d.len()));
                }
                Ok((1u32..(1 << d.len()))
                    .map(|mask| {
                        State(
                            (0..d.len())
                                .filter(|&k| mask >> k & 1 == 1)
                                .map(|k| d[k])
                                .collect(),
                        )
                    })
                    .collect())
            }
        }
    }
}

pub(crate) fn all_subsets_error(n: usize) -> Error {
    Error::resource(format!(
        "AllSubsets enumeration over {n} distinct weights exceeds the limit of {ALL_SUBSETS_LIMIT}"
    ))
}

/// A rational character twist `theta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Linearization {
    pub theta: QVector,
}

impl Linearization {
    pub fn new(theta: QVector) -> Linearization {
        Linearization { theta }
    }

    pub fn zero(r: usize) -> Linearization {
        Linearization {
            theta: QVector::zeros(r),
        }
    }
}

/// A primitive, nonzero cocharacter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneParamSubgroup {
    lambda: QVector,
}

impl OneParamSubgroup {
    pub fn new(lambda: QVector) -> Result<OneParamSubgroup> {
        if lambda.is_zero() {
            return Err(Error::input("one-parameter subgroup must be nonzero"));
        }
        if !lambda.is_integral() || lambda.primitive()? != lambda {
            return Err(Error::input("one-parameter subgroup must be primitive integral"));
        }
        Ok(OneParamSubgroup { lambda })
    }

    /// The primitive cocharacter in the direction of `v`.
    pub fn along(v: &QVector) -> Result<OneParamSubgroup> {
        Ok(OneParamSubgroup {
            lambda: v.primitive()?,
        })
    }

    pub fn lambda(&self) -> &QVector {
        &self.lambda
    }
}

/// `M = sign * sqrt(dist_sq)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedMeasure {
    pub sign: i8,
    pub dist_sq: Q,
}

impl SignedMeasure {
    pub fn zero() -> SignedMeasure {
        SignedMeasure {
            sign: 0,
            dist_sq: Q::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateClass {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// A Hesselink stratum: unstable states with the same measure and the same
/// adapted cocharacter up to the Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub measure: SignedMeasure,
    pub lps_class: OneParamSubgroup,
    pub members: Vec<State>,
}

/// `X = X^ss  u  union of strata`, on the level of states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    pub semistable: Vec<State>,
    pub strata: Vec<Stratum>,
}

fn check_theta(ws: &WeightSystem, lin: &Linearization) -> Result<()> {
    if lin.theta.dim() != ws.rank() {
        return Err(Error::input(format!(
            "theta has {} coordinates, expected {}",
            lin.theta.dim(),
            ws.rank()
        )));
    }
    Ok(())
}

/// `min over chi in S of <lambda, chi - theta>`.
pub fn mu(ws: &WeightSystem, s: &State, lam: &OneParamSubgroup, lin: &Linearization) -> Result<Q> {
    check_theta(ws, lin)?;
    ws.check_state(s)?;
    if lam.lambda.dim() != ws.rank() {
        return Err(Error::input("one-parameter subgroup has the wrong dimension"));
    }
    Ok(mu_raw(ws, s, &lam.lambda, &lin.theta))
}

pub(crate) fn mu_raw(ws: &WeightSystem, s: &State, lambda: &QVector, theta: &QVector) -> Q {
    s.members()
        .iter()
        .map(|&i| lambda.dot(ws.weight(i)))
        .min()
        .expect("nonempty state")
        - lambda.dot(theta)
}

/// Exact semistability test by LP (no hull computation).
pub fn is_semistable(ws: &WeightSystem, s: &State, theta: &QVector) -> bool {
    lp::in_convex_hull(theta, &ws.points(s))
}

/// The instability measure and a witness point: the nearest point of the hull
/// when unstable, a nearest boundary point when stable, `theta` otherwise.
pub fn measure_m(ws: &WeightSystem, s: &State, lin: &Linearization) -> Result<(SignedMeasure, QVector)> {
    check_theta(ws, lin)?;
    ws.check_state(s)?;
    let theta = &lin.theta;
    let hull = QPolytope::hull(&ws.points(s))?;
    match hull.locate(theta) {
        Location::Outside => {
            let (p, d) = project_metric(theta, &hull, ws.form())?;
            Ok((SignedMeasure { sign: 1, dist_sq: d }, p))
        }
        Location::Interior if hull.is_full_dimensional() => {
            let (p, d) = nearest_boundary_point(theta, &hull, ws.form())?;
            Ok((SignedMeasure { sign: -1, dist_sq: d }, p))
        }
        _ => Ok((SignedMeasure::zero(), theta.clone())),
    }
}

/// The adapted cocharacter of an unstable state; `None` when semistable.
pub fn adapted_lps(ws: &WeightSystem, s: &State, lin: &Linearization) -> Result<Option<OneParamSubgroup>> {
    let (m, p) = measure_m(ws, s, lin)?;
    if m.sign <= 0 {
        return Ok(None);
    }
    OneParamSubgroup::along(&ws.form().dual_apply(&p.sub(&lin.theta))).map(Some)
}

pub fn classify_state(ws: &WeightSystem, s: &State, lin: &Linearization) -> Result<StateClass> {
    let (m, _) = measure_m(ws, s, lin)?;
    Ok(match m.sign {
        1 => StateClass::Unstable,
        -1 => StateClass::Stable,
        _ => StateClass::StrictlySemistable,
    })
}

/// Stability class from hull location alone, without distances.
pub fn classify_fast(ws: &WeightSystem, s: &State, theta: &QVector) -> StateClass {
    let pts = ws.points(s);
    if !lp::in_convex_hull(theta, &pts) {
        return StateClass::Unstable;
    }
    let hull = QPolytope::hull(&pts).expect("nonempty state");
    if hull.is_full_dimensional() && hull.locate(theta) == Location::Interior {
        StateClass::Stable
    } else {
        StateClass::StrictlySemistable
    }
}

/// The state of `lim_{t -> 0} lambda(t) x`: members of `S` minimizing
/// `<lambda, chi - theta>`.
pub fn limit_state(
    ws: &WeightSystem,
    s: &State,
    lam: &OneParamSubgroup,
    lin: &Linearization,
) -> Result<State> {
    let m = mu(ws, s, lam, lin)? + lam.lambda.dot(&lin.theta);
    State::new(
        s.members()
            .iter()
            .copied()
            .filter(|&i| lam.lambda.dot(ws.weight(i)) == m),
    )
}

/// Hesselink stratification of the states of `family` at `lin`.
pub fn stratify(ws: &WeightSystem, family: &StateFamily, lin: &Linearization) -> Result<Stratification> {
    check_theta(ws, lin)?;
    let states = family.states(ws)?;
    let mut semistable = Vec::new();
    let mut groups: BTreeMap<(Q, QVector), Vec<State>> = BTreeMap::new();
    for s in states {
        let (m, p) = measure_m(ws, &s, lin)?;
        if m.sign <= 0 {
            semistable.push(s);
            continue;
        }
        let lambda = ws.form().dual_apply(&p.sub(&lin.theta)).primitive()?;
        groups
            .entry((m.dist_sq, ws.canonical_lps(&lambda)))
            .or_default()
            .push(s);
    }
    semistable.sort();
    let mut strata: Vec<Stratum> = groups
        .into_iter()
        .map(|((d, lambda), mut members)| {
            members.sort();
            Stratum {
                measure: SignedMeasure { sign: 1, dist_sq: d },
                lps_class: OneParamSubgroup { lambda },
                members,
            }
        })
        .collect();
    strata.sort_by(|a, b| {
        b.measure
            .dist_sq
            .cmp(&a.measure.dist_sq)
            .then_with(|| a.lps_class.cmp(&b.lps_class))
    });
    Ok(Stratification { semistable, strata })
}

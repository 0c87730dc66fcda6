use std::collections::BTreeSet;

use serde_json::{json, Map, Value};
use vgit::fibers::{
    classify_fiber, invariant_monoid, nilcone_components, weyl_invariants, FiberDescriptor, FiberKind,
    NilconeComponent, Normality, Polynomial, WeylAction,
};
use vgit::gitfan::{
    chamber_components, classify_theta, covering_edges, fan_verify, inclusion_poset, profile_at, walls,
    FanData, GitClass, Profile, ProfileKind, ThetaClass,
};
use vgit::polycore::{fmt_q, linalg, QPolytope};
use vgit::stability::{classify_fast, stratify, StateClass};
use vgit::{Linearization, QVector, State, StateFamily, WeightSystem, Q};

use crate::input::{parse_theta, Loaded};
use crate::render::{Report, Section};
use crate::{Args, CliError, Command};

fn q(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

fn vector(v: &QVector) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn vector_text(v: &QVector) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}

fn state(ws: &WeightSystem, s: &State) -> Value {
    json!(ws.state_labels(s))
}

fn state_text(ws: &WeightSystem, s: &State) -> String {
    format!("{{{}}}", ws.state_labels(s).join(","))
}

fn polytope(p: &QPolytope) -> Value {
    Value::Array(p.vertices().iter().map(vector).collect())
}

fn profile(ws: &WeightSystem, p: &Profile) -> Value {
    let kind = match p.kind {
        ProfileKind::Minimal => "minimal",
        ProfileKind::Full => "full",
    };
    json!({
        "kind": kind,
        "states": p.states.iter().map(|s| state(ws, s)).collect::<Vec<_>>(),
    })
}

fn profile_text(ws: &WeightSystem, p: &Profile) -> String {
    let parts: Vec<String> = p.states.iter().map(|s| state_text(ws, s)).collect();
    parts.join(" ")
}

fn class_json(ws: &WeightSystem, id: Option<usize>, c: &GitClass) -> Value {
    let mut m = Map::new();
    if let Some(id) = id {
        m.insert("id".into(), json!(id));
    }
    m.insert("dim".into(), json!(c.dim));
    m.insert("chamber".into(), json!(c.is_chamber));
    m.insert("sample".into(), vector(&c.sample));
    m.insert("vertices".into(), polytope(&c.cone));
    m.insert("profile".into(), profile(ws, &c.profile));
    m.insert("walls".into(), json!(c.touches_wall));
    Value::Object(m)
}

fn thetas(loaded: &Loaded, args: &Args) -> Result<Vec<QVector>, CliError> {
    match &args.theta {
        Some(t) => Ok(vec![parse_theta(t, loaded.ws.rank())?]),
        None if !loaded.queries.is_empty() => Ok(loaded.queries.clone()),
        None => Err(CliError::schema(
            "this command needs --theta or a nonempty queries list",
        )),
    }
}

fn poset_dot(classes: &[GitClass], edges: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph poset {\n");
    for (i, c) in classes.iter().enumerate() {
        out.push_str(&format!(
            "  {i} [label=\"dim={};chamber={}\"];\n",
            c.dim, c.is_chamber
        ));
    }
    for (a, b) in covering_edges(edges) {
        out.push_str(&format!("  {a} -> {b};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn execute(loaded: &Loaded, args: &Args) -> Result<Report, CliError> {
    let mut echo = Map::new();
    if let Some(t) = &args.theta {
        echo.insert("theta".into(), json!(t));
    }
    let degree_bound = args.degree_bound.unwrap_or(loaded.options.degree_bound);
    if degree_bound < 1 {
        return Err(CliError::schema("--degree-bound: must be at least 1"));
    }
    if args.command == Command::Fiber {
        echo.insert("degree_bound".into(), json!(degree_bound));
        echo.insert("grading".into(), json!(args.grading));
        if let Some(c) = &args.component {
            echo.insert("component".into(), json!(c));
        }
    }
    let name = format!("{:?}", args.command).to_lowercase();
    let mut report = Report {
        command: name,
        args: Value::Object(echo),
        result: Value::Null,
        sections: Vec::new(),
        dot: None,
        violations: 0,
    };
    match args.command {
        Command::Classify => classify(loaded, args, &mut report)?,
        Command::Fan => fan(loaded, &mut report)?,
        Command::Strata => strata(loaded, args, &mut report)?,
        Command::Walls => wall_list(loaded, &mut report)?,
        Command::Chambers => chambers(loaded, &mut report)?,
        Command::Nilcone => nilcone(loaded, &mut report)?,
        Command::Fiber => fiber(loaded, args, degree_bound, &mut report)?,
        Command::Poset => poset(loaded, &mut report)?,
        Command::Verify => verify(loaded, &mut report)?,
    }
    Ok(report)
}

fn classify(loaded: &Loaded, args: &Args, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let mut out = Vec::new();
    let mut sec = Section::new("classify", &["theta", "effective", "dim", "chamber", "profile"]);
    for theta in thetas(loaded, args)? {
        let lin = Linearization::new(theta.clone());
        match classify_theta(ws, &loaded.family, &lin)? {
            ThetaClass::NotEffective => {
                out.push(json!({ "theta": vector(&theta), "effective": false }));
                sec.row(vec![
                    vector_text(&theta),
                    "no".into(),
                    "-".into(),
                    "-".into(),
                    "-".into(),
                ]);
            }
            ThetaClass::Class(c) => {
                out.push(json!({
                    "theta": vector(&theta),
                    "effective": true,
                    "class": class_json(ws, None, &c),
                }));
                sec.row(vec![
                    vector_text(&theta),
                    "yes".into(),
                    c.dim.to_string(),
                    c.is_chamber.to_string(),
                    profile_text(ws, &c.profile),
                ]);
            }
        }
    }
    report.result = Value::Array(out);
    report.sections.push(sec);
    Ok(())
}

fn fan(loaded: &Loaded, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let data = FanData::new(ws, &loaded.family)?;
    let classes = data.classes();
    let chambers = classes.iter().filter(|c| c.is_chamber).count();
    report.result = json!({
        "classes": classes.iter().enumerate().map(|(i, c)| class_json(ws, Some(i), c)).collect::<Vec<_>>(),
        "num_classes": classes.len(),
        "num_chambers": chambers,
        "num_walls": data.walls().len(),
    });
    let mut sec = Section::new(
        format!(
            "fan: {} classes, {} chambers, {} walls",
            classes.len(),
            chambers,
            data.walls().len()
        ),
        &["id", "dim", "chamber", "sample", "vertices"],
    );
    for (i, c) in classes.iter().enumerate() {
        sec.row(vec![
            i.to_string(),
            c.dim.to_string(),
            c.is_chamber.to_string(),
            vector_text(&c.sample),
            c.cone.vertices().len().to_string(),
        ]);
    }
    report.sections.push(sec);
    report.dot = Some(poset_dot(classes, &inclusion_poset(classes).edges));
    Ok(())
}

fn strata(loaded: &Loaded, args: &Args, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let mut out = Vec::new();
    for theta in thetas(loaded, args)? {
        let s = stratify(ws, &loaded.family, &Linearization::new(theta.clone()))?;
        let mut sec = Section::new(
            format!(
                "strata at {}: {} semistable states",
                vector_text(&theta),
                s.semistable.len()
            ),
            &["d^2", "lambda", "states"],
        );
        for st in &s.strata {
            sec.row(vec![
                fmt_q(&st.measure.dist_sq),
                vector_text(st.lps_class.lambda()),
                st.members.len().to_string(),
            ]);
        }
        report.sections.push(sec);
        out.push(json!({
            "theta": vector(&theta),
            "semistable": s.semistable.iter().map(|x| state(ws, x)).collect::<Vec<_>>(),
            "strata": s.strata.iter().map(|st| json!({
                "dist_sq": q(&st.measure.dist_sq),
                "lambda": vector(st.lps_class.lambda()),
                "members": st.members.iter().map(|x| state(ws, x)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }));
    }
    report.result = Value::Array(out);
    Ok(())
}

fn wall_list(loaded: &Loaded, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let list = walls(ws, &loaded.family)?;
    let mut sec = Section::new(
        format!("walls: {}", list.len()),
        &["id", "normal", "offset", "states"],
    );
    let mut out = Vec::new();
    for (i, w) in list.iter().enumerate() {
        sec.row(vec![
            i.to_string(),
            vector_text(w.support.normal()),
            fmt_q(w.support.offset()),
            w.generating_states
                .iter()
                .map(|s| state_text(ws, s))
                .collect::<Vec<_>>()
                .join(" "),
        ]);
        out.push(json!({
            "id": i,
            "normal": vector(w.support.normal()),
            "offset": q(w.support.offset()),
            "piece": polytope(&w.piece),
            "generating_states": w.generating_states.iter().map(|s| state(ws, s)).collect::<Vec<_>>(),
        }));
    }
    report.result = Value::Array(out);
    report.sections.push(sec);
    Ok(())
}

fn chambers(loaded: &Loaded, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let classes = FanData::new(ws, &loaded.family)?.classes().to_vec();
    let components = chamber_components(ws, &loaded.family)?;
    let list: Vec<(usize, &GitClass)> = classes.iter().enumerate().filter(|(_, c)| c.is_chamber).collect();
    report.result = json!({
        "chambers": list.iter().map(|(i, c)| class_json(ws, Some(*i), c)).collect::<Vec<_>>(),
        "wall_complement_components": components.len(),
        "consistent": components.len() == list.len(),
    });
    let mut sec = Section::new(
        format!(
            "chambers: {} (wall complement components: {})",
            list.len(),
            components.len()
        ),
        &["id", "sample", "vertices"],
    );
    for (i, c) in &list {
        sec.row(vec![
            i.to_string(),
            vector_text(&c.sample),
            c.cone.vertices().len().to_string(),
        ]);
    }
    report.sections.push(sec);
    Ok(())
}

fn nilcone(loaded: &Loaded, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let comps = nilcone_components(ws)?;
    let mut sec = Section::new(
        format!("nilcone: {} components", comps.len()),
        &["id", "size", "members"],
    );
    let mut out = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        sec.row(vec![
            i.to_string(),
            c.len().to_string(),
            state_text(ws, &c.members),
        ]);
        out.push(json!({
            "id": i,
            "size": c.len(),
            "members": state(ws, &c.members),
            "hull": polytope(&c.hull),
        }));
    }
    report.result = json!({ "components": out, "num_components": comps.len() });
    report.sections.push(sec);
    Ok(())
}

fn monomial(e: &[i64]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| {
            if a == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{a}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn poly_text(p: &Polynomial) -> String {
    let parts: Vec<String> = p
        .iter()
        .map(|(e, c)| {
            if c == &Q::from_integer(1.into()) {
                monomial(e)
            } else {
                format!("{} {}", fmt_q(c), monomial(e))
            }
        })
        .collect();
    parts.join(" + ")
}

fn kind_text(k: &FiberKind) -> String {
    match k {
        FiberKind::Wps(w) => {
            let parts: Vec<String> = w.iter().map(i64::to_string).collect();
            format!("WPS({})", parts.join(","))
        }
        FiberKind::WpsQuotient => "WPSQuotient".into(),
        FiberKind::ToricNonWps => "ToricNonWPS".into(),
        FiberKind::Point => "Point".into(),
        FiberKind::Empty => "Empty".into(),
        FiberKind::Undetermined => "Undetermined".into(),
    }
}

fn descriptor_json(f: &FiberDescriptor) -> Value {
    let weights = match &f.kind {
        FiberKind::Wps(w) => json!(w),
        _ => Value::Null,
    };
    json!({
        "kind": kind_text(&f.kind),
        "wps_weights": weights,
        "rank": f.rank,
        "content": f.content,
        "normality": match f.normality {
            Normality::Normal => "Normal",
            Normality::NotDetermined => "NotDetermined",
        },
        "hilbert_basis": {
            "complete": f.hilbert_basis.complete,
            "certificate": f.hilbert_basis.certificate,
            "bound": f.hilbert_basis.bound,
            "elements": f.hilbert_basis.elements.iter().enumerate().map(|(i, e)| json!({
                "name": format!("b{}", i + 1),
                "monomial": monomial(&e.exponents),
                "exponents": e.exponents,
                "degree": e.degree,
                "raw_degree": e.raw_degree,
            })).collect::<Vec<_>>(),
        },
        "relations": f.relations.iter().map(|r| json!({
            "degree": r.degree,
            "relation": r.to_string(),
        })).collect::<Vec<_>>(),
        "nonsimplicial_degree": f.nonsimplicial_degree,
    })
}

fn selected_components(
    ws: &WeightSystem,
    comps: &[NilconeComponent],
    spec: Option<&str>,
) -> Result<Vec<(String, NilconeComponent)>, CliError> {
    let Some(spec) = spec else {
        return Ok(comps
            .iter()
            .enumerate()
            .map(|(i, c)| (i.to_string(), c.clone()))
            .collect());
    };
    let idx = spec
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<usize>, _>>()
        .map_err(|_| CliError::schema(format!("--component: expected IDX or \"i,j\", got {spec:?}")))?;
    if idx.is_empty() || idx.len() > 2 {
        return Err(CliError::schema("--component: expected one or two indices"));
    }
    for &i in &idx {
        if i >= comps.len() {
            return Err(CliError::schema(format!(
                "--component: index {i} out of range ({} components)",
                comps.len()
            )));
        }
    }
    let mut members: BTreeSet<usize> = comps[idx[0]].members.members().iter().copied().collect();
    for &i in &idx[1..] {
        let other: BTreeSet<usize> = comps[i].members.members().iter().copied().collect();
        members = members.intersection(&other).copied().collect();
    }
    if members.is_empty() {
        return Err(CliError::schema(format!(
            "--component: components {spec} do not meet"
        )));
    }
    let members = State::new(members)?;
    let hull = QPolytope::hull(&ws.points(&members))?;
    Ok(vec![(spec.to_string(), NilconeComponent { members, hull })])
}

fn fiber(loaded: &Loaded, args: &Args, degree_bound: i64, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let comps = nilcone_components(ws)?;
    let selected = selected_components(ws, &comps, args.component.as_deref())?;
    let explicit = args.component.is_some();
    let mut grading = QVector::unit(ws.rank(), 0);
    if args.grading == "-" {
        grading = grading.neg();
    }
    let mut sec = Section::new(
        format!("fibers graded by {}", vector_text(&grading)),
        &["component", "members", "kind", "basis degrees", "relations"],
    );
    let mut out = Vec::new();
    for (name, c) in &selected {
        let variables: Vec<Value> = c
            .members
            .members()
            .iter()
            .enumerate()
            .map(|(k, &i)| json!({ "name": format!("x{}", k + 1), "label": ws.label(i), "weight": vector(ws.weight(i)) }))
            .collect();
        let mut entry = Map::new();
        entry.insert("component".into(), json!(name));
        entry.insert("variables".into(), Value::Array(variables));
        match classify_fiber(c, ws, &grading, degree_bound) {
            Err(e) if !explicit && matches!(e, vgit::Error::Precondition(_)) => {
                entry.insert("error".into(), json!(e.to_string()));
                sec.row(vec![
                    name.clone(),
                    state_text(ws, &c.members),
                    "-".into(),
                    "-".into(),
                    e.to_string(),
                ]);
            }
            Err(e) => return Err(e.into()),
            Ok(f) => {
                let degrees: Vec<String> = f.hilbert_basis.degrees().iter().map(i64::to_string).collect();
                let rels: Vec<String> = f.relations.iter().map(ToString::to_string).collect();
                sec.row(vec![
                    name.clone(),
                    state_text(ws, &c.members),
                    kind_text(&f.kind),
                    degrees.join(","),
                    rels.join("; "),
                ]);
                entry.insert("fiber".into(), descriptor_json(&f));
                entry.insert("weyl".into(), weyl_entries(ws, c, &grading, &f, degree_bound)?);
            }
        }
        out.push(Value::Object(entry));
    }
    report.result = Value::Array(out);
    report.sections.push(sec);
    Ok(())
}

/// Invariants of each non-identity Weyl element mapping the component to
/// itself.
fn weyl_entries(
    ws: &WeightSystem,
    c: &NilconeComponent,
    grading: &QVector,
    f: &FiberDescriptor,
    degree_bound: i64,
) -> Result<Value, CliError> {
    if !f.hilbert_basis.complete {
        return Ok(Value::Array(Vec::new()));
    }
    let m = invariant_monoid(c, ws, grading)?;
    let identity = linalg::identity(ws.rank());
    let mut out = Vec::new();
    for (k, w) in ws.weyl().iter().enumerate() {
        if w == &identity {
            continue;
        }
        let Ok(sigma) = WeylAction::from_matrix(&m, ws, w) else {
            continue;
        };
        let Ok(inv) = weyl_invariants(&m, &sigma, degree_bound) else {
            continue;
        };
        out.push(json!({
            "element": k,
            "permutation": sigma.perm(),
            "generators": inv.generators.iter().map(|(d, p)| json!({
                "degree": d,
                "polynomial": poly_text(p),
            })).collect::<Vec<_>>(),
            "strict_containment": inv.strict_containment,
        }));
    }
    Ok(Value::Array(out))
}

fn poset(loaded: &Loaded, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let data = FanData::new(ws, &loaded.family)?;
    let classes = data.classes();
    let p = inclusion_poset(classes);
    let cover = covering_edges(&p.edges);
    report.result = json!({
        "classes": classes.iter().enumerate().map(|(i, c)| json!({
            "id": i,
            "dim": c.dim,
            "chamber": c.is_chamber,
            "sample": vector(&c.sample),
            "profile": profile(ws, &c.profile),
        })).collect::<Vec<_>>(),
        "edges": p.edges,
        "covering_edges": cover,
        "violations": p.violations,
    });
    let mut sec = Section::new(
        format!(
            "poset: {} classes, {} covering inclusions",
            classes.len(),
            cover.len()
        ),
        &["from", "to"],
    );
    for (a, b) in &cover {
        sec.row(vec![a.to_string(), b.to_string()]);
    }
    report.sections.push(sec);
    report.violations = p.violations.len();
    report.dot = Some(poset_dot(classes, &p.edges));
    Ok(())
}

fn stable_set(ws: &WeightSystem, family: &StateFamily, theta: &QVector) -> Result<BTreeSet<State>, CliError> {
    let mut out = BTreeSet::new();
    for s in family.states(ws)? {
        if classify_fast(ws, &s, theta) == StateClass::Stable {
            out.insert(s);
        }
    }
    Ok(out)
}

fn verify(loaded: &Loaded, report: &mut Report) -> Result<(), CliError> {
    let ws = &loaded.ws;
    let family = &loaded.family;
    let data = FanData::new(ws, family)?;
    let classes = data.classes();
    let mut checks: Vec<(String, Vec<String>)> = Vec::new();

    checks.push(("fan axioms".into(), fan_verify(ws, family, classes)?.violations));
    checks.push(("inclusion poset".into(), inclusion_poset(classes).violations));

    let chambers = classes.iter().filter(|c| c.is_chamber).count();
    let components = chamber_components(ws, family)?.len();
    let mut v = Vec::new();
    if chambers != components {
        v.push(format!(
            "{chambers} chambers but {components} wall complement components"
        ));
    }
    checks.push(("chambers vs wall complement".into(), v));

    let mut v = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        if profile_at(ws, family, &c.sample)? != c.profile {
            v.push(format!(
                "class {i}: sample profile differs from the class profile"
            ));
        }
    }
    checks.push(("class samples".into(), v));

    let mut v = Vec::new();
    let stable: Vec<BTreeSet<State>> = classes
        .iter()
        .map(|c| stable_set(ws, family, &c.sample))
        .collect::<Result<_, _>>()?;
    for (i, f) in classes.iter().enumerate().filter(|(_, c)| !c.is_chamber) {
        for (j, c) in classes.iter().enumerate().filter(|(_, c)| c.is_chamber) {
            if !f.cone.vertices().iter().all(|x| c.cone.contains(x)) {
                continue;
            }
            if !c.profile.included_in(&f.profile) {
                v.push(format!(
                    "chamber {j} is not semistable-contained in face class {i}"
                ));
            }
            if !stable[i].is_subset(&stable[j]) {
                v.push(format!(
                    "stable states of class {i} are not stable in chamber {j}"
                ));
            }
        }
    }
    checks.push(("monotonicity across walls".into(), v));

    let mut v = Vec::new();
    let probes: Vec<QVector> = classes
        .iter()
        .map(|c| c.sample.clone())
        .chain(loaded.queries.iter().cloned())
        .collect();
    for theta in &probes {
        let s = data.stable_nonempty(ws, family, &Linearization::new(theta.clone()))?;
        if s.hypothesis_met && s.nonempty != s.direct {
            v.push(format!(
                "at {}: interior test says {} but direct enumeration says {}",
                vector_text(theta),
                s.nonempty,
                s.direct
            ));
        }
    }
    checks.push(("stable points criterion".into(), v));

    if loaded.options.grid > 0 {
        let mut v = Vec::new();
        let known: BTreeSet<&Profile> = classes.iter().map(|c| &c.profile).collect();
        for theta in grid_points(ws, loaded.options.grid) {
            let p = profile_at(ws, family, &theta)?;
            if !p.is_empty() && !known.contains(&p) {
                v.push(format!(
                    "grid point {} has a profile of no class",
                    vector_text(&theta)
                ));
            }
        }
        checks.push(("grid profiles".into(), v));
    }

    let total: usize = checks.iter().map(|c| c.1.len()).sum();
    let mut sec = Section::new(
        format!("verify: {} checks, {} violations", checks.len(), total),
        &["check", "violations"],
    );
    for (name, v) in &checks {
        sec.row(vec![name.clone(), v.len().to_string()]);
    }
    report.sections.push(sec);
    if total > 0 {
        let mut detail = Section::new("violations", &["check", "message"]);
        for (name, v) in &checks {
            for msg in v {
                detail.row(vec![name.clone(), msg.clone()]);
            }
        }
        report.sections.push(detail);
    }
    report.result = json!({
        "checks": checks.iter().map(|(name, v)| json!({ "name": name, "violations": v })).collect::<Vec<_>>(),
        "num_classes": classes.len(),
        "num_violations": total,
    });
    report.violations = total;
    Ok(())
}

/// Points with coordinates in `(1/grid) Z` inside the bounding box of the
/// weights.
fn grid_points(ws: &WeightSystem, grid: i64) -> Vec<QVector> {
    let r = ws.rank();
    let lo: Vec<i64> = (0..r)
        .map(|i| {
            ws.weights()
                .iter()
                .map(|w| w[i].to_integer())
                .min()
                .unwrap()
                .try_into()
                .unwrap_or(0)
        })
        .collect();
    let hi: Vec<i64> = (0..r)
        .map(|i| {
            ws.weights()
                .iter()
                .map(|w| w[i].to_integer())
                .max()
                .unwrap()
                .try_into()
                .unwrap_or(0)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<i64> = lo.iter().map(|x| x * grid).collect();
    loop {
        out.push(QVector::new(
            cur.iter().map(|&c| Q::new(c.into(), grid.into())).collect(),
        ));
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= hi[i] * grid {
                break;
            }
            cur[i] = lo[i] * grid;
            i += 1;
        }
    }
}

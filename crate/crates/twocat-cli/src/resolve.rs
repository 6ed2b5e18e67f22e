//! Turning a loaded manifest into library objects, and back.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::Value;

use twocat::category::{
    DiagramMorphism, TableError, Tables, TwoCategory, TwoDiagram, TwoFunctor,
    TwoNaturalTransformation, Variance,
};

use crate::format::{
    CategorySpec, CellMapSpec, DiagramSpec, FaultSpec, FunctorSpec, ManifestFile, MorphismSpec,
    VarianceSpec, WitnessKind,
};
use crate::input::{self, InputError, Origins};

/// A named item of a manifest together with the names it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

/// A fully resolved manifest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    /// The merged document, with includes expanded.
    pub spec: ManifestFile,
    pub categories: Vec<Named<Arc<TwoCategory>>>,
    pub functors: Vec<Named<TwoFunctor>>,
    pub diagrams: Vec<Named<Arc<TwoDiagram>>>,
    pub morphisms: Vec<Named<DiagramMorphism>>,
}

fn find<'a, T>(items: &'a [Named<T>], name: &str) -> Option<&'a T> {
    items.iter().find(|x| x.name == name).map(|x| &x.value)
}

impl Manifest {
    pub fn category(&self, name: &str) -> Option<&Arc<TwoCategory>> {
        find(&self.categories, name)
    }

    pub fn functor(&self, name: &str) -> Option<&TwoFunctor> {
        find(&self.functors, name)
    }

    pub fn diagram(&self, name: &str) -> Option<&Arc<TwoDiagram>> {
        find(&self.diagrams, name)
    }

    pub fn morphism(&self, name: &str) -> Option<&DiagramMorphism> {
        find(&self.morphisms, name)
    }

    /// The single JSON document describing this manifest.
    pub fn to_json(&self) -> String {
        serialize(&self.spec)
    }
}

/// Canonical text of a manifest: indented JSON with scalar arrays kept on
/// one line, so that table rows read as rows.
pub fn serialize(spec: &ManifestFile) -> String {
    let value = serde_json::to_value(spec).expect("manifests serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    let scalar = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_));
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(scalar) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push_str(&format!("[{}]", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!(
                    "{}{}: ",
                    pad(indent + 1),
                    Value::String(k.clone())
                ));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn parse(path: &Path) -> Result<Manifest, Vec<InputError>> {
    let loaded = input::load(path)?;
    resolve(loaded.spec, &loaded.origins)
}

pub fn parse_text(text: &str, path: &Path) -> Result<Manifest, Vec<InputError>> {
    let loaded = input::load_text(text, path)?;
    resolve(loaded.spec, &loaded.origins)
}

/// An error message with the identifier it concerns, for locating it.
struct Problem {
    needle: String,
    message: String,
}

fn problem(needle: &str, message: String) -> Problem {
    Problem {
        needle: needle.to_string(),
        message,
    }
}

pub fn resolve(spec: ManifestFile, origins: &Origins) -> Result<Manifest, Vec<InputError>> {
    let mut errors = Vec::new();
    let mut report = |kind: &'static str, item: &str, problems: Vec<Problem>| {
        for p in problems {
            errors.push(origins.error(
                kind,
                item,
                &p.needle,
                format!("{kind} `{item}`: {}", p.message),
            ));
        }
    };

    let mut categories = Vec::new();
    for c in &spec.categories {
        match build_category(c) {
            Ok(value) => categories.push(Named {
                name: c.name.clone(),
                value: Arc::new(value),
            }),
            Err(p) => report("category", &c.name, vec![p]),
        }
    }
    let mut functors = Vec::new();
    for f in &spec.functors {
        match build_functor(f, &categories) {
            Ok(value) => functors.push(Named {
                name: f.name.clone(),
                value,
            }),
            Err(p) => report("functor", &f.name, p),
        }
    }
    let mut diagrams = Vec::new();
    for d in &spec.diagrams {
        match build_diagram(d, &categories) {
            Ok(value) => diagrams.push(Named {
                name: d.name.clone(),
                value: Arc::new(value),
            }),
            Err(p) => report("diagram", &d.name, p),
        }
    }
    let mut morphisms = Vec::new();
    for m in &spec.morphisms {
        match build_morphism(m, &spec.diagrams, &diagrams) {
            Ok(value) => morphisms.push(Named {
                name: m.name.clone(),
                value,
            }),
            Err(p) => report("morphism", &m.name, p),
        }
    }
    let names = |kind: &str| -> Vec<&str> {
        match kind {
            "category" => spec.categories.iter().map(|c| c.name.as_str()).collect(),
            "functor" => spec.functors.iter().map(|c| c.name.as_str()).collect(),
            "diagram" => spec.diagrams.iter().map(|c| c.name.as_str()).collect(),
            _ => spec.morphisms.iter().map(|c| c.name.as_str()).collect(),
        }
    };
    let v = &spec.verify;
    let mut refs: Vec<(&str, &str, &str)> = Vec::new();
    refs.extend(
        v.categories
            .iter()
            .map(|n| ("category", n.as_str(), "verify.categories")),
    );
    refs.extend(
        v.diagrams
            .iter()
            .map(|n| ("diagram", n.as_str(), "verify.diagrams")),
    );
    refs.extend(
        v.functors
            .iter()
            .map(|n| ("functor", n.as_str(), "verify.functors")),
    );
    refs.extend(
        v.constant
            .iter()
            .map(|n| ("diagram", n.as_str(), "verify.constant")),
    );
    refs.extend(
        v.retractions
            .iter()
            .map(|n| ("morphism", n.as_str(), "verify.retractions")),
    );
    refs.extend(
        v.equivalences
            .iter()
            .map(|n| ("morphism", n.as_str(), "verify.equivalences")),
    );
    for s in &v.sections {
        refs.push(("functor", s.functor.as_str(), "verify.sections"));
        refs.push(("diagram", s.diagram.as_str(), "verify.sections"));
    }
    for fault in &spec.faults {
        match fault {
            FaultSpec::Face { target, .. } => {
                if !names("category").contains(&target.as_str())
                    && !names("diagram").contains(&target.as_str())
                {
                    refs.push(("category or diagram", target.as_str(), "faults"));
                }
            }
            FaultSpec::Witness {
                witness, source, ..
            } => {
                let kind = match witness {
                    WitnessKind::Retraction => "morphism",
                    WitnessKind::Projection | WitnessKind::Section => "functor",
                };
                refs.push((kind, source.as_str(), "faults"));
            }
        }
    }
    for (kind, name, place) in refs {
        if !names(kind).contains(&name) {
            errors.push(InputError::new(
                Path::new("<manifest>"),
                format!("unknown {kind} `{name}` in {place}"),
            ));
        }
    }
    if errors.is_empty() {
        Ok(Manifest {
            spec,
            categories,
            functors,
            diagrams,
            morphisms,
        })
    } else {
        Err(errors)
    }
}

fn build_category(c: &CategorySpec) -> Result<TwoCategory, Problem> {
    let t = Tables {
        objects: c.objects.clone(),
        one_cells: c.one_cells.clone(),
        two_cells: c.two_cells.clone(),
        id1: c.id1.clone(),
        id2: c.id2.clone(),
        hcomp1: c.hcomp1.clone(),
        vcomp2: c.vcomp2.clone(),
        hcomp2: c.hcomp2.clone(),
    };
    TwoCategory::from_tables(&t).map_err(|e| {
        let needle = match &e {
            TableError::Duplicate(n) => n.clone(),
            TableError::Unknown { name, .. } => name.clone(),
            TableError::Conflict { left, .. } => left.clone(),
        };
        problem(&needle, e.to_string())
    })
}

fn lookup<'a>(
    categories: &'a [Named<Arc<TwoCategory>>],
    name: &str,
) -> Result<&'a Arc<TwoCategory>, Problem> {
    find(categories, name).ok_or_else(|| problem(name, format!("unknown category `{name}`")))
}

/// Resolves a name-level cell map into a 2-functor, demanding an image for
/// every cell of `source`.
fn build_cell_map(
    m: &CellMapSpec,
    source: &Arc<TwoCategory>,
    target: &Arc<TwoCategory>,
) -> Result<TwoFunctor, Vec<Problem>> {
    let mut problems = Vec::new();
    let (s, t) = (&**source, &**target);
    let mut level = |map: &BTreeMap<String, String>,
                     kind: &str,
                     names: Vec<&str>,
                     image: &dyn Fn(&str) -> Option<usize>|
     -> Vec<usize> {
        for k in map.keys() {
            if !names.contains(&k.as_str()) {
                problems.push(problem(k, format!("unknown {kind} `{k}` in the source")));
            }
        }
        let mut out = Vec::new();
        for n in names {
            match map.get(n) {
                None => problems.push(problem(
                    n,
                    format!("non-total map: no image for {kind} `{n}`"),
                )),
                Some(v) => match image(v) {
                    Some(i) => out.push(i),
                    None => {
                        problems.push(problem(v, format!("unknown {kind} `{v}` in the target")))
                    }
                },
            }
        }
        out
    };
    let objects = level(
        &m.objects,
        "object",
        s.object_names().iter().map(String::as_str).collect(),
        &|n| t.object_by_name(n),
    );
    let one_cells = level(
        &m.one_cells,
        "1-cell",
        s.one_cells().iter().map(|c| c.name.as_str()).collect(),
        &|n| t.one_cell_by_name(n),
    );
    let two_cells = level(
        &m.two_cells,
        "2-cell",
        s.two_cells().iter().map(|c| c.name.as_str()).collect(),
        &|n| t.two_cell_by_name(n),
    );
    if problems.is_empty() {
        Ok(TwoFunctor {
            source: source.clone(),
            target: target.clone(),
            objects,
            one_cells,
            two_cells,
        })
    } else {
        Err(problems)
    }
}

fn build_functor(
    f: &FunctorSpec,
    categories: &[Named<Arc<TwoCategory>>],
) -> Result<TwoFunctor, Vec<Problem>> {
    let source = lookup(categories, &f.source).map_err(|p| vec![p])?;
    let target = lookup(categories, &f.target).map_err(|p| vec![p])?;
    build_cell_map(&f.cells(), source, target)
}

fn variance(v: VarianceSpec) -> Variance {
    match v {
        VarianceSpec::Covariant => Variance::Covariant,
        VarianceSpec::Contravariant => Variance::Contravariant,
    }
}

fn build_diagram(
    d: &DiagramSpec,
    categories: &[Named<Arc<TwoCategory>>],
) -> Result<TwoDiagram, Vec<Problem>> {
    let base = lookup(categories, &d.base).map_err(|p| vec![p])?.clone();
    let mut problems = Vec::new();
    for k in d.fibres.keys() {
        if base.object_by_name(k).is_none() {
            problems.push(problem(k, format!("unknown object `{k}` of the base")));
        }
    }
    let mut fibres = Vec::new();
    for o in base.object_names() {
        match d.fibres.get(o) {
            None => problems.push(problem(
                o,
                format!("non-total diagram: no fibre over `{o}`"),
            )),
            Some(n) => match lookup(categories, n) {
                Ok(c) => fibres.push(c.clone()),
                Err(p) => problems.push(p),
            },
        }
    }
    if !problems.is_empty() {
        return Err(problems);
    }
    let v = variance(d.variance);
    let ends = |f: usize, v: Variance| match v {
        Variance::Covariant => (base.src1(f), base.tgt1(f)),
        Variance::Contravariant => (base.tgt1(f), base.src1(f)),
    };
    for k in d.on_one.keys() {
        if base.one_cell_by_name(k).is_none() {
            problems.push(problem(k, format!("unknown 1-cell `{k}` of the base")));
        }
    }
    for k in d.on_two.keys() {
        if base.two_cell_by_name(k).is_none() {
            problems.push(problem(k, format!("unknown 2-cell `{k}` of the base")));
        }
    }
    let mut on_one = Vec::new();
    for f in 0..base.one_cell_count() {
        let name = &base.one_cell(f).name;
        let (a, b) = ends(f, v);
        match d.on_one.get(name) {
            None if base.try_id1(base.src1(f)) == Some(f) => {
                on_one.push(TwoFunctor::identity(&fibres[a]))
            }
            None => problems.push(problem(
                name,
                format!("non-total diagram: no transport for 1-cell `{name}`"),
            )),
            Some(m) => {
                match build_cell_map(m, &fibres[a], &fibres[b]) {
                    Ok(g) => on_one.push(g),
                    Err(mut p) => {
                        let (a2, b2) = ends(f, flip(v));
                        if build_cell_map(m, &fibres[a2], &fibres[b2]).is_ok() {
                            p = vec![problem(
                            name,
                            format!("variance mismatch: the transport of `{name}` runs the other way"),
                        )];
                        }
                        problems.extend(p);
                    }
                }
            }
        }
    }
    if !problems.is_empty() {
        return Err(problems);
    }
    let mut on_two = Vec::new();
    for alpha in 0..base.two_cell_count() {
        let name = &base.two_cell(alpha).name;
        let (f, g) = (base.src2(alpha), base.tgt2(alpha));
        let (a, b) = ends(f, v);
        let identity = base.try_id2(f) == Some(alpha);
        match d.on_two.get(name) {
            None if identity => on_two.push(TwoNaturalTransformation::identity(&on_one[f])),
            None => problems.push(problem(
                name,
                format!("non-total diagram: no components for 2-cell `{name}`"),
            )),
            Some(m) => {
                let (sf, tf) = (&fibres[a], &fibres[b]);
                let mut components = Vec::new();
                for k in m.keys() {
                    if sf.object_by_name(k).is_none() {
                        problems.push(problem(
                            k,
                            format!("unknown object `{k}` in the components of `{name}`"),
                        ));
                    }
                }
                for x in sf.object_names() {
                    match m.get(x).map(|c| (c, tf.one_cell_by_name(c))) {
                        None => problems.push(problem(
                            x,
                            format!("non-total map: no component of `{name}` at `{x}`"),
                        )),
                        Some((c, None)) => {
                            problems.push(problem(c, format!("unknown 1-cell `{c}` in the target")))
                        }
                        Some((_, Some(i))) => components.push(i),
                    }
                }
                on_two.push(TwoNaturalTransformation {
                    source: on_one[f].clone(),
                    target: on_one[g].clone(),
                    components,
                });
            }
        }
    }
    if problems.is_empty() {
        Ok(TwoDiagram {
            base,
            variance: v,
            fibres,
            on_one,
            on_two,
        })
    } else {
        Err(problems)
    }
}

fn flip(v: Variance) -> Variance {
    match v {
        Variance::Covariant => Variance::Contravariant,
        Variance::Contravariant => Variance::Covariant,
    }
}

fn build_morphism(
    m: &MorphismSpec,
    specs: &[DiagramSpec],
    diagrams: &[Named<Arc<TwoDiagram>>],
) -> Result<DiagramMorphism, Vec<Problem>> {
    let get = |n: &str| {
        let spec = specs.iter().find(|d| d.name == n);
        match (spec, find(diagrams, n)) {
            (Some(s), Some(d)) => Ok((s, d.clone())),
            _ => Err(vec![problem(n, format!("unknown diagram `{n}`"))]),
        }
    };
    let (ss, source) = get(&m.source)?;
    let (ts, target) = get(&m.target)?;
    if ss.base != ts.base {
        return Err(vec![problem(
            &m.target,
            format!(
                "base mismatch: `{}` is over `{}`, `{}` over `{}`",
                ss.name, ss.base, ts.name, ts.base
            ),
        )]);
    }
    if ss.variance != ts.variance {
        return Err(vec![problem(
            &m.target,
            format!("variance mismatch between `{}` and `{}`", ss.name, ts.name),
        )]);
    }
    let base = &source.base;
    let mut problems = Vec::new();
    for k in m.components.keys() {
        if base.object_by_name(k).is_none() {
            problems.push(problem(k, format!("unknown object `{k}` of the base")));
        }
    }
    let mut components = Vec::new();
    for (c, o) in base.object_names().iter().enumerate() {
        match m.components.get(o) {
            None => problems.push(problem(
                o,
                format!("non-total morphism: no component at `{o}`"),
            )),
            Some(map) => match build_cell_map(map, &source.fibres[c], &target.fibres[c]) {
                Ok(f) => components.push(f),
                Err(p) => problems.extend(p),
            },
        }
    }
    if problems.is_empty() {
        Ok(DiagramMorphism {
            source,
            target,
            components,
        })
    } else {
        Err(problems)
    }
}

/// The name-level description of a 2-category.
pub fn category_spec(name: &str, c: &TwoCategory) -> CategorySpec {
    let t = c.tables();
    CategorySpec {
        name: name.to_string(),
        objects: t.objects,
        one_cells: t.one_cells,
        two_cells: t.two_cells,
        id1: t.id1,
        id2: t.id2,
        hcomp1: t.hcomp1,
        vcomp2: t.vcomp2,
        hcomp2: t.hcomp2,
    }
}

pub fn cell_map_spec(f: &TwoFunctor) -> CellMapSpec {
    let (s, t) = (&*f.source, &*f.target);
    CellMapSpec {
        objects: (0..s.object_count())
            .map(|x| {
                (
                    s.object_name(x).to_string(),
                    t.object_name(f.obj(x)).to_string(),
                )
            })
            .collect(),
        one_cells: (0..s.one_cell_count())
            .map(|x| {
                (
                    s.one_cell(x).name.clone(),
                    t.one_cell(f.one(x)).name.clone(),
                )
            })
            .collect(),
        two_cells: (0..s.two_cell_count())
            .map(|x| {
                (
                    s.two_cell(x).name.clone(),
                    t.two_cell(f.two(x)).name.clone(),
                )
            })
            .collect(),
    }
}

pub fn functor_spec(name: &str, source: &str, target: &str, f: &TwoFunctor) -> FunctorSpec {
    let m = cell_map_spec(f);
    FunctorSpec {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        objects: m.objects,
        one_cells: m.one_cells,
        two_cells: m.two_cells,
    }
}

/// The name-level description of a diagram whose base is called `base` and
/// whose fibre over each base object is called `fibres[c]`.
pub fn diagram_spec(name: &str, d: &TwoDiagram, base: &str, fibres: &[&str]) -> DiagramSpec {
    let b = &*d.base;
    DiagramSpec {
        name: name.to_string(),
        base: base.to_string(),
        variance: match d.variance {
            Variance::Covariant => VarianceSpec::Covariant,
            Variance::Contravariant => VarianceSpec::Contravariant,
        },
        fibres: (0..b.object_count())
            .map(|c| (b.object_name(c).to_string(), fibres[c].to_string()))
            .collect(),
        on_one: (0..b.one_cell_count())
            .map(|f| (b.one_cell(f).name.clone(), cell_map_spec(&d.on_one[f])))
            .collect(),
        on_two: (0..b.two_cell_count())
            .map(|a| {
                let t = &d.on_two[a];
                let (s, tg) = (&*t.source.source, &*t.source.target);
                let comps = (0..s.object_count())
                    .map(|x| {
                        (
                            s.object_name(x).to_string(),
                            tg.one_cell(t.component(x)).name.clone(),
                        )
                    })
                    .collect();
                (b.two_cell(a).name.clone(), comps)
            })
            .collect(),
    }
}

pub fn morphism_spec(name: &str, source: &str, target: &str, m: &DiagramMorphism) -> MorphismSpec {
    let b = &*m.source.base;
    MorphismSpec {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        components: (0..b.object_count())
            .map(|c| {
                (
                    b.object_name(c).to_string(),
                    cell_map_spec(&m.components[c]),
                )
            })
            .collect(),
    }
}

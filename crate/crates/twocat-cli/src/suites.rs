//! The verification suites run by `verify`.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use twocat::category::{
    check_diagram, check_diagram_morphism, check_oplax, check_two_functor, validate,
    DiagramMorphism, OplaxTransformation, TwoCategory, TwoDiagram, TwoFunctor, Variance,
};
use twocat::comma::{comma, projections, retraction_r, section_jz_iz, Side};
use twocat::grothendieck::grothendieck;
use twocat::hocolim::{build_e, constant_level, hocolim, hocolim_map, iso_112, iso_114};
use twocat::homology::{homology, is_homology_iso_upto, normalized_chain_complex, HomologyError};
use twocat::nerves::{
    diag_nerve, diag_nerve_map, diag_nerve_simplicial, diag_nerve_simplicial_map, double_nerve,
    nerve_category, nerve_simplicial_twocat, wbar_double_nerve, wbar_repackaging,
};
use twocat::simplicial::{
    aw_map, check_simplicial_identities, cube_window, verify_iso, wbar, MultiSimplicialSet,
    SimplicialError, Truncation,
};

use crate::format::{Construction, FaultSpec, SideSpec, WitnessKind, WitnessPart};
use crate::report::{describe, Report};
use crate::resolve::Manifest;

pub const SUITES: [&str; 7] = [
    "identities",
    "iso112",
    "iso114",
    "retractions",
    "oplax",
    "contractibility",
    "invariance",
];

/// Truncation used by a suite when neither the command line nor the
/// manifest sets one.
pub fn default_truncation(suite: &str) -> usize {
    match suite {
        "contractibility" | "invariance" => 4,
        _ => 3,
    }
}

/// Why a suite stopped before finishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Abort {
    UnknownSuite(String),
    /// A level outgrew the simplex budget.
    Budget(String),
    /// The truncation is too low for the suite.
    Truncation(String),
}

impl std::fmt::Display for Abort {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Abort::UnknownSuite(s) => write!(
                f,
                "unknown suite `{s}`; expected one of {} or all",
                SUITES.join(", ")
            ),
            Abort::Budget(s) => write!(f, "simplex budget exceeded: {s}"),
            Abort::Truncation(s) => write!(f, "{s}"),
        }
    }
}

/// A failed check, or a reason to abandon the whole run.
enum Stop {
    Fail(String),
    Abort(Abort),
}

impl From<SimplicialError> for Stop {
    fn from(e: SimplicialError) -> Self {
        match e {
            SimplicialError::BudgetExceeded { .. } => Stop::Abort(Abort::Budget(e.to_string())),
            other => Stop::Fail(other.to_string()),
        }
    }
}

impl From<HomologyError> for Stop {
    fn from(e: HomologyError) -> Self {
        Stop::Fail(e.to_string())
    }
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Result<(), Stop> {
    if ok {
        Ok(())
    } else {
        Err(Stop::Fail(detail()))
    }
}

fn structural(r: twocat::ValidationReport) -> Result<(), Stop> {
    ensure(r.is_empty(), || describe(&r))
}

fn panic_text(e: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".to_string()
    }
}

/// Settings shared by every suite of one run.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    /// Overrides the manifest and suite defaults when set.
    pub truncation: Option<usize>,
    pub budget: usize,
}

/// Runs `suite` (or every suite for `all`) on the manifest.
pub fn run(m: &Manifest, suite: &str, settings: Settings) -> Result<Report, Abort> {
    let chosen = settings.truncation.or(m.spec.truncation);
    if suite == "all" {
        let mut all = Report::new("all", chosen.unwrap_or(default_truncation("iso112")));
        for s in SUITES {
            all.checks.extend(
                run_one(
                    m,
                    s,
                    chosen.unwrap_or(default_truncation(s)),
                    settings.budget,
                )?
                .checks,
            );
        }
        return Ok(all);
    }
    if !SUITES.contains(&suite) {
        return Err(Abort::UnknownSuite(suite.to_string()));
    }
    run_one(
        m,
        suite,
        chosen.unwrap_or(default_truncation(suite)),
        settings.budget,
    )
}

/// Names of manifest items, by kind.
#[derive(Clone, Debug, Default)]
pub struct Items {
    pub categories: Vec<String>,
    pub functors: Vec<String>,
    pub diagrams: Vec<String>,
    pub morphisms: Vec<String>,
}

impl Items {
    pub fn all(m: &Manifest) -> Self {
        Self {
            categories: m.categories.iter().map(|x| x.name.clone()).collect(),
            functors: m.functors.iter().map(|x| x.name.clone()).collect(),
            diagrams: m.diagrams.iter().map(|x| x.name.clone()).collect(),
            morphisms: m.morphisms.iter().map(|x| x.name.clone()).collect(),
        }
    }
}

/// Validates the named items and everything they are built from.
pub fn validate_items(m: &Manifest, items: &Items, truncation: usize) -> Report {
    let mut run = Run::new(
        m,
        "validate",
        truncation,
        twocat::simplicial::DEFAULT_BUDGET,
    );
    let outcome = (|| {
        for n in &items.categories {
            run.category_ok(n)?;
        }
        for n in &items.functors {
            run.functor_ok(n)?;
        }
        for n in &items.diagrams {
            run.diagram_ok(n)?;
        }
        for n in &items.morphisms {
            run.morphism_ok(n)?;
        }
        Ok::<(), Abort>(())
    })();
    outcome.expect("validation builds no simplicial sets");
    run.report
}

fn run_one(m: &Manifest, suite: &str, t: usize, budget: usize) -> Result<Report, Abort> {
    let mut run = Run::new(m, suite, t, budget);
    match suite {
        "identities" => run.identities()?,
        "iso112" | "iso114" => run.isos()?,
        "retractions" => run.retractions()?,
        "oplax" => run.oplax()?,
        "contractibility" => run.contractibility()?,
        _ => run.invariance()?,
    }
    Ok(run.report)
}

struct Run<'a> {
    m: &'a Manifest,
    suite: &'a str,
    t: usize,
    budget: usize,
    report: Report,
    valid: HashMap<String, bool>,
}

impl<'a> Run<'a> {
    fn new(m: &'a Manifest, suite: &'a str, t: usize, budget: usize) -> Self {
        Self {
            m,
            suite,
            t,
            budget,
            report: Report::new(suite, t),
            valid: HashMap::new(),
        }
    }

    fn trunc(&self) -> Truncation {
        Truncation::new(self.t).with_budget(self.budget)
    }

    fn full_name(&self, name: &str) -> String {
        if self.suite == "validate" {
            name.to_string()
        } else {
            format!("{}/{name}", self.suite)
        }
    }

    /// Runs one check. `Ok(false)` means the check failed or was skipped.
    fn check(
        &mut self,
        name: &str,
        body: impl FnOnce() -> Result<String, Stop>,
    ) -> Result<bool, Abort> {
        let full = self.full_name(name);
        match catch_unwind(AssertUnwindSafe(body)) {
            Ok(Ok(detail)) => {
                self.report.pass(full, detail);
                Ok(true)
            }
            Ok(Err(Stop::Fail(detail))) => {
                self.report.fail(full, detail);
                Ok(false)
            }
            Ok(Err(Stop::Abort(a))) => Err(a),
            Err(e) => {
                self.report
                    .fail(full, format!("internal error: {}", panic_text(e)));
                Ok(false)
            }
        }
    }

    /// Like [`Run::check`], but skipped when `ready` is false.
    fn check_if(
        &mut self,
        ready: bool,
        name: &str,
        body: impl FnOnce() -> Result<String, Stop>,
    ) -> Result<bool, Abort> {
        if ready {
            self.check(name, body)
        } else {
            let full = self.full_name(name);
            self.report.skip(full, "an input failed validation");
            Ok(false)
        }
    }

    fn memo(
        &mut self,
        key: String,
        compute: impl FnOnce(&mut Self) -> Result<bool, Abort>,
    ) -> Result<bool, Abort> {
        if let Some(&ok) = self.valid.get(&key) {
            return Ok(ok);
        }
        let ok = compute(self)?;
        self.valid.insert(key, ok);
        Ok(ok)
    }

    fn category_ok(&mut self, name: &str) -> Result<bool, Abort> {
        let c = self.m.category(name).expect("resolved").clone();
        self.memo(format!("category/{name}"), |run| {
            run.check(&format!("validate/category/{name}"), || {
                structural(validate(&c))?;
                let (o, a, t) = c.counts();
                Ok(format!("{o} objects, {a} 1-cells, {t} 2-cells"))
            })
        })
    }

    fn category_name(&self, c: &Arc<TwoCategory>) -> Option<String> {
        self.m
            .categories
            .iter()
            .find(|x| Arc::ptr_eq(&x.value, c))
            .map(|x| x.name.clone())
    }

    fn categories_ok(&mut self, cs: &[Arc<TwoCategory>]) -> Result<bool, Abort> {
        let mut ok = true;
        for c in cs {
            if let Some(n) = self.category_name(c) {
                ok &= self.category_ok(&n)?;
            }
        }
        Ok(ok)
    }

    fn functor_ok(&mut self, name: &str) -> Result<bool, Abort> {
        let f = self.m.functor(name).expect("resolved").clone();
        self.memo(format!("functor/{name}"), |run| {
            let ready = run.categories_ok(&[f.source.clone(), f.target.clone()])?;
            run.check_if(ready, &format!("validate/functor/{name}"), || {
                structural(check_two_functor(&f))?;
                Ok("strict 2-functor".to_string())
            })
        })
    }

    fn diagram_ok(&mut self, name: &str) -> Result<bool, Abort> {
        let d = self.m.diagram(name).expect("resolved").clone();
        self.memo(format!("diagram/{name}"), |run| {
            let mut cats = vec![d.base.clone()];
            cats.extend(d.fibres.iter().cloned());
            let ready = run.categories_ok(&cats)?;
            run.check_if(ready, &format!("validate/diagram/{name}"), || {
                structural(check_diagram(&d))?;
                let variance = if d.variance == Variance::Covariant {
                    "covariant"
                } else {
                    "contravariant"
                };
                Ok(format!(
                    "{variance} diagram over {} objects",
                    d.base.object_count()
                ))
            })
        })
    }

    fn diagram_name(&self, d: &Arc<TwoDiagram>) -> Option<String> {
        self.m
            .diagrams
            .iter()
            .find(|x| Arc::ptr_eq(&x.value, d))
            .map(|x| x.name.clone())
    }

    fn morphism_ok(&mut self, name: &str) -> Result<bool, Abort> {
        let g = self.m.morphism(name).expect("resolved").clone();
        self.memo(format!("morphism/{name}"), |run| {
            let mut ready = true;
            for d in [&g.source, &g.target] {
                if let Some(n) = run.diagram_name(d) {
                    ready &= run.diagram_ok(&n)?;
                }
            }
            run.check_if(ready, &format!("validate/morphism/{name}"), || {
                structural(check_diagram_morphism(&g))?;
                Ok("2-natural in the base".to_string())
            })
        })
    }

    fn categories(&self) -> Vec<String> {
        let listed = &self.m.spec.verify.categories;
        if listed.is_empty() {
            self.m.categories.iter().map(|c| c.name.clone()).collect()
        } else {
            listed.clone()
        }
    }

    fn diagrams(&self) -> Vec<String> {
        let listed = &self.m.spec.verify.diagrams;
        if listed.is_empty() {
            self.m.diagrams.iter().map(|c| c.name.clone()).collect()
        } else {
            listed.clone()
        }
    }

    fn functors(&self) -> Vec<String> {
        let listed = &self.m.spec.verify.functors;
        if listed.is_empty() {
            self.m.functors.iter().map(|c| c.name.clone()).collect()
        } else {
            listed.clone()
        }
    }

    fn identities(&mut self) -> Result<(), Abort> {
        let (t, budget) = (self.trunc(), self.budget);
        for name in self.categories() {
            let ready = self.category_ok(&name)?;
            let c = self.m.category(&name).expect("resolved").clone();
            let faults = self.m.spec.faults.clone();
            let faults = &faults;
            if c.is_locally_discrete() {
                self.check_if(ready, &format!("nerve/{name}"), || {
                    let mut x = nerve_category(&c, t)?;
                    inject(faults, Construction::Nerve, &name, x.inner_mut())?;
                    identities(&x)
                })?;
            }
            self.check_if(ready, &format!("double_nerve/{name}"), || {
                let mut x = double_nerve(&c, t)?;
                inject(faults, Construction::DoubleNerve, &name, x.inner_mut())?;
                identities(&x)
            })?;
            self.check_if(ready, &format!("diag_nerve/{name}"), || {
                let mut x = diag_nerve(&c, t)?;
                inject(faults, Construction::DiagNerve, &name, x.inner_mut())?;
                identities(&x)
            })?;
            self.check_if(ready, &format!("wbar/{name}"), || {
                let mut x = wbar(&double_nerve(&c, t)?, t)?;
                inject(faults, Construction::Wbar, &name, x.inner_mut())?;
                identities(&x)
            })?;
            self.check_if(ready, &format!("wbar_double_nerve/{name}"), || {
                let mut x = wbar_double_nerve(&c, t)?;
                inject(faults, Construction::WbarDoubleNerve, &name, x.inner_mut())?;
                identities(&x)
            })?;
            self.check_if(ready, &format!("repackaging/{name}"), || {
                let f = wbar_repackaging(&c, t)?;
                structural(f.check())?;
                ensure(verify_iso(&f), || {
                    "the repackaging map is not a bijection on every level".to_string()
                })?;
                Ok(format!("bijective, level sizes {:?}", f.target.sizes()))
            })?;
        }
        for name in self.diagrams() {
            let ready = self.diagram_ok(&name)?;
            let d = self.m.diagram(&name).expect("resolved").clone();
            let faults = self.m.spec.faults.clone();
            let faults = &faults;
            self.check_if(ready, &format!("grothendieck/{name}"), || {
                let g = grothendieck(&d);
                structural(validate(&g.category))?;
                let (o, a, t) = g.category.counts();
                Ok(format!("valid, {o} objects, {a} 1-cells, {t} 2-cells"))
            })?;
            self.check_if(ready, &format!("hocolim/{name}"), || {
                let h = hocolim(&d, t.bound);
                structural(h.simplicial.check())?;
                let sizes: Vec<_> = h.simplicial.levels.iter().map(|l| l.counts()).collect();
                Ok(format!(
                    "levels and structure 2-functors valid, level counts {sizes:?}"
                ))
            })?;
            self.check_if(ready, &format!("e/{name}"), || {
                let mut x = build_e(&d, t)?;
                inject(faults, Construction::E, &name, x.inner_mut())?;
                identities(&x)
            })?;
            self.check_if(ready, &format!("hocolim_nerve/{name}"), || {
                let h = hocolim(&d, t.bound);
                let mut x = nerve_simplicial_twocat(&h.simplicial, cube_window(t.bound), budget)?;
                inject(faults, Construction::HocolimNerve, &name, x.inner_mut())?;
                identities(&x)
            })?;
        }
        for name in self.m.spec.verify.constant.clone() {
            let ready = self.diagram_ok(&name)?;
            let d = self.m.diagram(&name).expect("resolved").clone();
            self.check_if(ready, &format!("constant_levels/{name}"), || {
                let h = hocolim(&d, t.bound);
                let mut sizes = Vec::new();
                for p in 0..=t.bound {
                    let level = constant_level(&h, p).map_err(|e| Stop::Fail(e.to_string()))?;
                    structural(check_two_functor(&level.functor))?;
                    ensure(level.functor.is_bijective(), || {
                        format!("level {p} is not the product")
                    })?;
                    sizes.push(level.chains.len());
                }
                Ok(format!("level p is the fibre times {sizes:?} chains"))
            })?;
        }
        Ok(())
    }

    fn isos(&mut self) -> Result<(), Abort> {
        let t = self.trunc();
        let which = self.suite;
        for name in self.diagrams() {
            let ready = self.diagram_ok(&name)?;
            let d = self.m.diagram(&name).expect("resolved").clone();
            self.check_if(ready, &format!("{which}/{name}"), || {
                let f = if which == "iso112" {
                    iso_112(&d, t)?
                } else {
                    iso_114(&d, t)?
                };
                structural(f.check())?;
                ensure(verify_iso(&f), || {
                    "not a bijection on every level".to_string()
                })?;
                Ok(format!(
                    "bijective simplicial map, level sizes {:?}",
                    f.source.sizes()
                ))
            })?;
        }
        Ok(())
    }

    /// Every (object, fibre object) pair of the diagrams behind a morphism.
    fn pairs(d: &TwoDiagram) -> Vec<(usize, usize)> {
        (0..d.base.object_count())
            .flat_map(|c| (0..d.fibres[c].object_count()).map(move |y| (c, y)))
            .collect()
    }

    fn retractions(&mut self) -> Result<(), Abort> {
        self.witnessed(false)
    }

    fn oplax(&mut self) -> Result<(), Abort> {
        self.witnessed(true)
    }

    /// The three retraction/section pairs: with `witnesses` set, checks their
    /// oplax witnesses; otherwise checks that they compose to identities.
    fn witnessed(&mut self, witnesses: bool) -> Result<(), Abort> {
        let faults = self.m.spec.faults.clone();
        let faults = &faults;
        for name in self.functors() {
            let ready = self.functor_ok(&name)?;
            let f = self.m.functor(&name).expect("resolved").clone();
            for side in [Side::Over, Side::Under] {
                self.check_if(
                    ready,
                    &format!("projection/{name}/{}", side_label(side)),
                    || {
                        let mut p = projections(&f, side);
                        if witnesses {
                            inject_witness(
                                faults,
                                WitnessKind::Projection,
                                &name,
                                Some(side),
                                &mut p.witness,
                            )?;
                            structural(check_oplax(&p.witness))?;
                            return Ok(format!(
                                "{} components and naturality cells coherent",
                                p.witness.components.len()
                            ));
                        }
                        structural(check_two_functor(&p.big_pi))?;
                        structural(check_two_functor(&p.iota))?;
                        ensure(
                            p.iota
                                .then(&p.big_pi)
                                .same_cells(&TwoFunctor::identity(&f.source)),
                            || "the projection does not retract the section".to_string(),
                        )?;
                        Ok("projection after section is the identity".to_string())
                    },
                )?;
            }
        }
        for name in self.m.spec.verify.retractions.clone() {
            let ready = self.morphism_ok(&name)?;
            let g = self.m.morphism(&name).expect("resolved").clone();
            self.check_if(ready, &format!("retraction/{name}"), || {
                let side = match g.source.variance {
                    Variance::Covariant => Side::Over,
                    Variance::Contravariant => Side::Under,
                };
                let pairs = Self::pairs(&g.target);
                for &(c, y) in &pairs {
                    let mut r =
                        retraction_r(&g, c, y, side).map_err(|e| Stop::Fail(e.to_string()))?;
                    let at = || format!("at ({c}, {y})");
                    if witnesses {
                        inject_witness(
                            faults,
                            WitnessKind::Retraction,
                            &name,
                            Some(side),
                            &mut r.witness,
                        )?;
                        let w = check_oplax(&r.witness);
                        ensure(w.is_empty(), || format!("{} {}", describe(&w), at()))?;
                    } else {
                        structural(check_two_functor(&r.retraction))?;
                        structural(check_two_functor(&r.section))?;
                        let id = TwoFunctor::identity(r.target.category());
                        ensure(r.section.then(&r.retraction).same_cells(&id), || {
                            format!("the retraction does not undo the section {}", at())
                        })?;
                    }
                }
                Ok(format!("holds at all {} pairs", pairs.len()))
            })?;
        }
        for s in self.m.spec.verify.sections.clone() {
            let ready = self.functor_ok(&s.functor)? & self.diagram_ok(&s.diagram)?;
            let f = self.m.functor(&s.functor).expect("resolved").clone();
            let d = self.m.diagram(&s.diagram).expect("resolved").clone();
            self.check_if(
                ready,
                &format!("section/{}/{}", s.functor, s.diagram),
                || {
                    let pairs = Self::pairs(&d);
                    for &(c, z) in &pairs {
                        let mut x =
                            section_jz_iz(&f, &d, c, z).map_err(|e| Stop::Fail(e.to_string()))?;
                        let at = || format!("at ({c}, {z})");
                        if witnesses {
                            inject_witness(
                                faults,
                                WitnessKind::Section,
                                &s.functor,
                                None,
                                &mut x.witness,
                            )?;
                            let w = check_oplax(&x.witness);
                            ensure(w.is_empty(), || format!("{} {}", describe(&w), at()))?;
                        } else {
                            structural(check_two_functor(&x.retraction))?;
                            structural(check_two_functor(&x.section))?;
                            let id = TwoFunctor::identity(x.target.category());
                            ensure(x.section.then(&x.retraction).same_cells(&id), || {
                                format!("the retraction does not undo the section {}", at())
                            })?;
                        }
                    }
                    Ok(format!("holds at all {} pairs", pairs.len()))
                },
            )?;
        }
        Ok(())
    }

    fn top_degree(&self) -> Result<usize, Abort> {
        if self.t < 2 {
            return Err(Abort::Truncation(format!(
                "suite {} needs a truncation of at least 2",
                self.suite
            )));
        }
        Ok((self.t - 1).min(2))
    }

    fn contractibility(&mut self) -> Result<(), Abort> {
        let top = self.top_degree()?;
        let t = self.trunc();
        for name in self.categories() {
            let ready = self.category_ok(&name)?;
            let c = self.m.category(&name).expect("resolved").clone();
            let id = TwoFunctor::identity(&c);
            for x in 0..c.object_count() {
                for side in [Side::Over, Side::Under] {
                    let label = format!("slice/{name}/{}/{}", c.object_name(x), side_label(side));
                    self.check_if(ready, &label, || {
                        let slice = comma(&id, x, side);
                        structural(validate(slice.category()))?;
                        let n = diag_nerve(slice.category(), t)?;
                        point_like(&n, top)
                    })?;
                }
            }
        }
        Ok(())
    }

    fn invariance(&mut self) -> Result<(), Abort> {
        let top = self.top_degree()?;
        let t = self.trunc();
        let faults = self.m.spec.faults.clone();
        let faults = &faults;
        for name in self.categories() {
            let ready = self.category_ok(&name)?;
            let c = self.m.category(&name).expect("resolved").clone();
            self.check_if(ready, &format!("aw/{name}"), || {
                let mut nn = double_nerve(&c, t)?;
                inject(faults, Construction::DoubleNerve, &name, nn.inner_mut())?;
                homology_iso(&aw_map(&nn, t.bound)?, top)
            })?;
        }
        for name in self.diagrams() {
            let ready = self.diagram_ok(&name)?;
            let d = self.m.diagram(&name).expect("resolved").clone();
            self.check_if(ready, &format!("aw/grothendieck/{name}"), || {
                let g = grothendieck(&d);
                homology_iso(&aw_map(&double_nerve(&g.category, t)?, t.bound)?, top)
            })?;
        }
        for name in self.functors() {
            let ready = self.functor_ok(&name)?;
            let f = self.m.functor(&name).expect("resolved").clone();
            for side in [Side::Over, Side::Under] {
                self.check_if(
                    ready,
                    &format!("projection/{name}/{}", side_label(side)),
                    || {
                        let p = projections(&f, side);
                        let source = Arc::new(diag_nerve(&p.total.category, t)?);
                        let target = Arc::new(diag_nerve(&f.source, t)?);
                        homology_iso(&diag_nerve_map(&p.big_pi, &source, &target)?, top)
                    },
                )?;
            }
        }
        for name in self.m.spec.verify.equivalences.clone() {
            let ready = self.morphism_ok(&name)?;
            let g = self.m.morphism(&name).expect("resolved").clone();
            self.check_if(ready, &format!("equivalence/{name}"), || {
                isomorphic_components(&g)?;
                let (h, k) = (hocolim(&g.source, t.bound), hocolim(&g.target, t.bound));
                let family = hocolim_map(&g, &h, &k);
                let source = Arc::new(diag_nerve_simplicial(&h.simplicial, t)?);
                let target = Arc::new(diag_nerve_simplicial(&k.simplicial, t)?);
                homology_iso(&diag_nerve_simplicial_map(&family, &source, &target)?, top)
            })?;
        }
        Ok(())
    }
}

fn side_label(side: Side) -> &'static str {
    match side {
        Side::Over => "over",
        Side::Under => "under",
    }
}

fn identities(x: &MultiSimplicialSet) -> Result<String, Stop> {
    structural(check_simplicial_identities(x))?;
    let sizes: Vec<String> = x
        .levels()
        .map(|(idx, l)| format!("{idx:?}:{}", l.len()))
        .collect();
    Ok(format!(
        "identities hold on {} levels ({})",
        sizes.len(),
        sizes.join(" ")
    ))
}

fn point_like(x: &twocat::simplicial::SimplicialSet, top: usize) -> Result<String, Stop> {
    let cc = normalized_chain_complex(x);
    structural(cc.check())?;
    let mut parts = Vec::new();
    for i in 0..=top {
        let h = homology(&cc, i)?;
        let ok = if i == 0 {
            h.is_integers()
        } else {
            h.is_trivial()
        };
        ensure(ok, || format!("H{i} = {h}"))?;
        parts.push(format!("H{i} = {h}"));
    }
    Ok(parts.join(", "))
}

fn homology_iso(f: &twocat::simplicial::SimplicialMap, top: usize) -> Result<String, Stop> {
    structural(f.check())?;
    ensure(is_homology_iso_upto(f, top)?, || {
        format!("not a homology isomorphism through degree {top}")
    })?;
    Ok(format!("homology isomorphism in degrees 0..={top}"))
}

fn isomorphic_components(g: &DiagramMorphism) -> Result<(), Stop> {
    for (c, f) in g.components.iter().enumerate() {
        ensure(f.is_bijective(), || {
            format!(
                "the component at {} is not an isomorphism",
                g.source.base.object_name(c)
            )
        })?;
    }
    Ok(())
}

/// Applies the face faults aimed at `construction` on `target`.
fn inject(
    faults: &[FaultSpec],
    construction: Construction,
    target: &str,
    x: &mut MultiSimplicialSet,
) -> Result<(), Stop> {
    for f in faults {
        let FaultSpec::Face {
            construction: c,
            target: t,
            level,
            direction,
            face,
            simplex,
            value,
        } = f
        else {
            continue;
        };
        if *c != construction || t != target {
            continue;
        }
        let out_of_range = || {
            Stop::Fail(format!(
                "fault on {} {t} does not address a face",
                c.label()
            ))
        };
        if *direction >= x.dims()
            || level.len() != x.dims()
            || level[*direction] == 0
            || *face > level[*direction]
        {
            return Err(out_of_range());
        }
        if *simplex >= x.size(level) {
            return Err(out_of_range());
        }
        let mut below = level.clone();
        below[*direction] -= 1;
        let size = x.size(&below);
        let current = x.face(level, *direction, *face, *simplex);
        let v = value.unwrap_or((current + 1) % size.max(1));
        x.set_face(level, *direction, *face, *simplex, v);
    }
    Ok(())
}

/// Applies the witness faults aimed at the witness of `kind` built from `source`.
fn inject_witness(
    faults: &[FaultSpec],
    kind: WitnessKind,
    source: &str,
    side: Option<Side>,
    w: &mut OplaxTransformation,
) -> Result<(), Stop> {
    for f in faults {
        let FaultSpec::Witness {
            witness,
            source: s,
            side: fs,
            part,
            index,
            value,
        } = f
        else {
            continue;
        };
        let side_matches = match (fs, side) {
            (None, _) | (_, None) => true,
            (Some(SideSpec::Over), Some(x)) => x == Side::Over,
            (Some(SideSpec::Under), Some(x)) => x == Side::Under,
        };
        if *witness != kind || s != source || !side_matches {
            continue;
        }
        let target = &*w.target.target;
        let (cells, count) = match part {
            WitnessPart::Component => (&mut w.components, target.one_cell_count()),
            WitnessPart::Naturality => (&mut w.naturality, target.two_cell_count()),
        };
        let Some(slot) = cells.get_mut(*index) else {
            return Err(Stop::Fail(format!(
                "witness fault index {index} is out of range"
            )));
        };
        *slot = value.unwrap_or((*slot + 1) % count.max(1));
    }
    Ok(())
}

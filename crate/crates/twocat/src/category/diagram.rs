//! Strict 2-diagrams `C → 2Cat` (covariant) or `C^op → 2Cat` (contravariant).

use std::sync::Arc;

use super::maps::{check_two_functor, check_two_natural};
use super::{validate, CellId, TwoCategory, TwoFunctor, TwoNaturalTransformation};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A strict 2-functor into 2-categories, given cell by cell.
///
/// For a covariant diagram `on_one[f]` is `f_* : D_a → D_b` for `f : a → b`;
/// for a contravariant one it is `f^* : D_b → D_a`. `on_two[α]` is the
/// transformation between the functors of the boundary of `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDiagram {
    pub base: Arc<TwoCategory>,
    pub variance: Variance,
    pub fibres: Vec<Arc<TwoCategory>>,
    pub on_one: Vec<TwoFunctor>,
    pub on_two: Vec<TwoNaturalTransformation>,
}

impl TwoDiagram {
    /// The diagram constant at `fibre`, with identity functors everywhere.
    pub fn constant(base: &Arc<TwoCategory>, fibre: &Arc<TwoCategory>, variance: Variance) -> Self {
        let id = TwoFunctor::identity(fibre);
        Self {
            base: base.clone(),
            variance,
            fibres: vec![fibre.clone(); base.object_count()],
            on_one: vec![id.clone(); base.one_cell_count()],
            on_two: vec![TwoNaturalTransformation::identity(&id); base.two_cell_count()],
        }
    }

    pub fn fibre(&self, c: CellId) -> &Arc<TwoCategory> {
        &self.fibres[c]
    }

    /// The transport functor of a 1-cell of the base.
    pub fn transport(&self, f: CellId) -> &TwoFunctor {
        &self.on_one[f]
    }

    /// The transformation attached to a 2-cell of the base.
    pub fn transport2(&self, a: CellId) -> &TwoNaturalTransformation {
        &self.on_two[a]
    }

    /// Fibre index a 1-cell `f` transports out of.
    pub fn transport_source(&self, f: CellId) -> CellId {
        match self.variance {
            Variance::Covariant => self.base.src1(f),
            Variance::Contravariant => self.base.tgt1(f),
        }
    }

    /// Fibre index a 1-cell `f` transports into.
    pub fn transport_target(&self, f: CellId) -> CellId {
        match self.variance {
            Variance::Covariant => self.base.tgt1(f),
            Variance::Contravariant => self.base.src1(f),
        }
    }

    /// The same data read as a covariant diagram on the opposite base.
    pub fn mirrored(&self) -> TwoDiagram {
        let flip = match self.variance {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        };
        TwoDiagram {
            base: Arc::new(super::opposite(&self.base)),
            variance: flip,
            ..self.clone()
        }
    }
}

/// Checks shapes, that every transport is a 2-functor and every 2-cell gives a
/// 2-natural transformation, and strict functoriality of the assignment.
pub fn check_diagram(d: &TwoDiagram) -> ValidationReport {
    let mut r = validate(&d.base).within("base");
    let c = &*d.base;
    if d.fibres.len() != c.object_count()
        || d.on_one.len() != c.one_cell_count()
        || d.on_two.len() != c.two_cell_count()
    {
        r.push("diagram shape", "assignments do not cover the base");
        return r;
    }
    for (i, x) in d.fibres.iter().enumerate() {
        r.merge(validate(x).within(&format!("fibre over {}", c.object_name(i))));
    }
    if !r.is_empty() {
        return r;
    }
    let n1 = |f: CellId| c.one_cell(f).name.clone();
    let n2 = |a: CellId| c.two_cell(a).name.clone();
    for f in 0..c.one_cell_count() {
        let t = &d.on_one[f];
        let ok = *t.source == *d.fibres[d.transport_source(f)]
            && *t.target == *d.fibres[d.transport_target(f)];
        if !ok {
            r.push("diagram transport endpoints", n1(f));
            continue;
        }
        r.merge(check_two_functor(t).within(&format!("transport of {}", n1(f))));
    }
    for a in 0..c.two_cell_count() {
        let t = &d.on_two[a];
        let ok =
            t.source.same_cells(&d.on_one[c.src2(a)]) && t.target.same_cells(&d.on_one[c.tgt2(a)]);
        if !ok {
            r.push("diagram 2-cell transport boundary", n2(a));
            continue;
        }
        r.merge(check_two_natural(t).within(&format!("transport of {}", n2(a))));
    }
    if !r.is_empty() {
        return r;
    }
    for x in 0..c.object_count() {
        let id = TwoFunctor::identity(&d.fibres[x]);
        r.require(
            d.on_one[c.id1(x)].same_cells(&id),
            "diagram preserves identity 1-cells",
            || c.object_name(x).to_string(),
        );
    }
    for f in 0..c.one_cell_count() {
        let id = TwoNaturalTransformation::identity(&d.on_one[f]);
        r.require(
            d.on_two[c.id2(f)].components == id.components,
            "diagram preserves identity 2-cells",
            || n1(f),
        );
    }
    for (&(g, f), &gf) in c.hcomp1_table() {
        let composite = match d.variance {
            Variance::Covariant => d.on_one[f].then(&d.on_one[g]),
            Variance::Contravariant => d.on_one[g].then(&d.on_one[f]),
        };
        r.require(
            d.on_one[gf].same_cells(&composite),
            "diagram preserves 1-cell composition",
            || format!("{} ∘ {}", n1(g), n1(f)),
        );
    }
    for (&(b, a), &ba) in c.vcomp2_table() {
        let target = &d.fibres[d.transport_target(c.src2(a))];
        let ok = (0..d.on_two[a].components.len()).all(|x| {
            d.on_two[ba].component(x)
                == target.comp1(d.on_two[b].component(x), d.on_two[a].component(x))
        });
        r.require(ok, "diagram preserves vertical composition", || {
            format!("{} · {}", n2(b), n2(a))
        });
    }
    for (&(b, a), &ba) in c.hcomp2_table() {
        // a : f ⇒ g on x → y, b : f' ⇒ g' on y → z.
        let f = c.src2(a);
        let (f2, g2) = (c.src2(b), c.tgt2(b));
        let ok = match d.variance {
            Variance::Covariant => {
                let dz = &d.fibres[c.tgt1(f2)];
                (0..d.fibres[c.src1(f)].object_count()).all(|x| {
                    let lhs = d.on_two[ba].component(x);
                    let rhs = dz.comp1(
                        d.on_two[b].component(d.on_one[c.tgt2(a)].obj(x)),
                        d.on_one[f2].one(d.on_two[a].component(x)),
                    );
                    lhs == rhs
                })
            }
            Variance::Contravariant => {
                let dx = &d.fibres[c.src1(f)];
                (0..d.fibres[c.tgt1(f2)].object_count()).all(|z| {
                    let lhs = d.on_two[ba].component(z);
                    let rhs = dx.comp1(
                        d.on_two[a].component(d.on_one[g2].obj(z)),
                        d.on_one[f].one(d.on_two[b].component(z)),
                    );
                    lhs == rhs
                })
            }
        };
        r.require(ok, "diagram preserves horizontal composition", || {
            format!("{} ∘ {}", n2(b), n2(a))
        });
    }
    r
}

/// A 2-natural transformation `Γ : D ⇒ E` between diagrams on the same base:
/// one 2-functor `Γ_c : D_c → E_c` per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramMorphism {
    pub source: Arc<TwoDiagram>,
    pub target: Arc<TwoDiagram>,
    pub components: Vec<TwoFunctor>,
}

impl DiagramMorphism {
    pub fn identity(d: &Arc<TwoDiagram>) -> Self {
        Self {
            source: d.clone(),
            target: d.clone(),
            components: d.fibres.iter().map(TwoFunctor::identity).collect(),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &DiagramMorphism) -> DiagramMorphism {
        DiagramMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            components: self
                .components
                .iter()
                .zip(&next.components)
                .map(|(a, b)| a.then(b))
                .collect(),
        }
    }
}

pub fn check_diagram_morphism(m: &DiagramMorphism) -> ValidationReport {
    let mut r = ValidationReport::new();
    let (d, e) = (&*m.source, &*m.target);
    if d.base != e.base || d.variance != e.variance || m.components.len() != d.fibres.len() {
        r.push(
            "diagram morphism shape",
            "diagrams differ in base or variance",
        );
        return r;
    }
    let c = &*d.base;
    for x in 0..c.object_count() {
        let g = &m.components[x];
        if *g.source != *d.fibres[x] || *g.target != *e.fibres[x] {
            r.push(
                "diagram morphism component endpoints",
                c.object_name(x).to_string(),
            );
            continue;
        }
        r.merge(check_two_functor(g).within(&format!("component at {}", c.object_name(x))));
    }
    if !r.is_empty() {
        return r;
    }
    for f in 0..c.one_cell_count() {
        let (s, t) = (d.transport_source(f), d.transport_target(f));
        let lhs = d.on_one[f].then(&m.components[t]);
        let rhs = m.components[s].then(&e.on_one[f]);
        r.require(
            lhs.same_cells(&rhs),
            "diagram morphism naturality on 1-cells",
            || c.one_cell(f).name.clone(),
        );
    }
    for a in 0..c.two_cell_count() {
        let f = c.src2(a);
        let (s, t) = (d.transport_source(f), d.transport_target(f));
        let ok = (0..d.fibres[s].object_count()).all(|x| {
            m.components[t].one(d.on_two[a].component(x))
                == e.on_two[a].component(m.components[s].obj(x))
        });
        r.require(ok, "diagram morphism naturality on 2-cells", || {
            c.two_cell(a).name.clone()
        });
    }
    r
}

/// A modification between parallel diagram morphisms: one 2-natural
/// transformation `m_c : Γ_c ⇒ Γ'_c` per object of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramModification {
    pub source: DiagramMorphism,
    pub target: DiagramMorphism,
    pub components: Vec<TwoNaturalTransformation>,
}

pub fn check_diagram_modification(m: &DiagramModification) -> ValidationReport {
    let mut r = check_diagram_morphism(&m.source).within("source morphism");
    r.merge(check_diagram_morphism(&m.target).within("target morphism"));
    if !r.is_empty() {
        return r;
    }
    let (d, e) = (&*m.source.source, &*m.source.target);
    let c = &*d.base;
    if m.components.len() != c.object_count() {
        r.push(
            "diagram modification shape",
            "components do not cover the base",
        );
        return r;
    }
    for x in 0..c.object_count() {
        let t = &m.components[x];
        let ok = t.source.same_cells(&m.source.components[x])
            && t.target.same_cells(&m.target.components[x]);
        if !ok {
            r.push(
                "diagram modification component boundary",
                c.object_name(x).to_string(),
            );
            continue;
        }
        r.merge(check_two_natural(t).within(&format!("component at {}", c.object_name(x))));
    }
    if !r.is_empty() {
        return r;
    }
    for f in 0..c.one_cell_count() {
        let (s, t) = (d.transport_source(f), d.transport_target(f));
        let ok = (0..d.fibres[s].object_count()).all(|x| {
            e.on_one[f].one(m.components[s].component(x))
                == m.components[t].component(d.on_one[f].obj(x))
        });
        r.require(ok, "diagram modification naturality", || {
            c.one_cell(f).name.clone()
        });
    }
    r
}

//! The bundled example 2-categories, 2-functors and diagrams.

use std::sync::Arc;

use crate::category::{
    terminal, DiagramMorphism, TwoCategory, TwoDiagram, TwoFunctor, TwoNaturalTransformation,
    Variance,
};
use crate::comma::representable_into;

/// The terminal 2-category.
pub fn pt() -> Arc<TwoCategory> {
    Arc::new(terminal())
}

/// The walking arrow `e : 0 → 1`.
pub fn walking_arrow() -> Arc<TwoCategory> {
    Arc::new(TwoCategory::unit_closed(&["0", "1"], &[("e", "0", "1")], &[]).expect("walking arrow"))
}

/// The walking 2-cell `φ : f ⇒ g` between `f, g : a → b`.
pub fn walking_two_cell() -> Arc<TwoCategory> {
    let c = TwoCategory::unit_closed(
        &["a", "b"],
        &[("f", "a", "b"), ("g", "a", "b")],
        &[("phi", "f", "g")],
    );
    Arc::new(c.expect("walking 2-cell"))
}

/// Builds a 2-functor from name-level assignments; cells not listed are
/// identities, sent to the identity on the image of their boundary.
pub fn functor_by_names(
    source: &Arc<TwoCategory>,
    target: &Arc<TwoCategory>,
    objects: &[(&str, &str)],
    one_cells: &[(&str, &str)],
    two_cells: &[(&str, &str)],
) -> TwoFunctor {
    let (s, t) = (&**source, &**target);
    let lookup = |table: &[(&str, &str)], name: &str| {
        table
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| v.to_string())
    };
    let objs: Vec<usize> = (0..s.object_count())
        .map(|x| {
            let image = lookup(objects, s.object_name(x))
                .unwrap_or_else(|| panic!("no image for {}", s.object_name(x)));
            t.object_by_name(&image).unwrap()
        })
        .collect();
    let ones: Vec<usize> = (0..s.one_cell_count())
        .map(|f| match lookup(one_cells, &s.one_cell(f).name) {
            Some(n) => t.one_cell_by_name(&n).unwrap(),
            None => t.id1(objs[s.src1(f)]),
        })
        .collect();
    let twos = (0..s.two_cell_count())
        .map(|a| match lookup(two_cells, &s.two_cell(a).name) {
            Some(n) => t.two_cell_by_name(&n).unwrap(),
            None => t.id2(ones[s.src2(a)]),
        })
        .collect();
    TwoFunctor {
        source: source.clone(),
        target: target.clone(),
        objects: objs,
        one_cells: ones,
        two_cells: twos,
    }
}

/// `F : WA → WTC`, `0 ↦ a`, `1 ↦ b`, `e ↦ f`.
pub fn arrow_to_two_cell() -> TwoFunctor {
    functor_by_names(
        &walking_arrow(),
        &walking_two_cell(),
        &[("0", "a"), ("1", "b")],
        &[("e", "f")],
        &[],
    )
}

/// The covariant diagram over WA with `D_0 = WA`, `D_1 = WTC` and `e_* = F`.
pub fn covariant_diagram() -> Arc<TwoDiagram> {
    let base = walking_arrow();
    let f = arrow_to_two_cell();
    let (wa, wtc) = (f.source.clone(), f.target.clone());
    let e = base.one_cell_by_name("e").unwrap();
    let fibres = vec![wa.clone(), wtc.clone()];
    let on_one: Vec<TwoFunctor> = (0..base.one_cell_count())
        .map(|g| {
            if g == e {
                f.clone()
            } else {
                TwoFunctor::identity(&fibres[base.src1(g)])
            }
        })
        .collect();
    let on_two = (0..base.two_cell_count())
        .map(|a| TwoNaturalTransformation::identity(&on_one[base.src2(a)]))
        .collect();
    Arc::new(TwoDiagram {
        base,
        variance: Variance::Covariant,
        fibres,
        on_one,
        on_two,
    })
}

/// The contravariant representable `WTC(−, b)`.
pub fn contravariant_diagram() -> Arc<TwoDiagram> {
    let c = walking_two_cell();
    let b = c.object_by_name("b").unwrap();
    representable_into(&c, b).diagram
}

/// The constant diagram with value `fibre`.
pub fn constant_diagram(
    base: &Arc<TwoCategory>,
    fibre: &Arc<TwoCategory>,
    variance: Variance,
) -> Arc<TwoDiagram> {
    Arc::new(TwoDiagram::constant(base, fibre, variance))
}

/// The unique morphism `Γ : D ⇒ pt` into the constant terminal diagram.
pub fn collapse(d: &Arc<TwoDiagram>) -> DiagramMorphism {
    let point = pt();
    let target = constant_diagram(&d.base, &point, d.variance);
    DiagramMorphism {
        source: d.clone(),
        components: d
            .fibres
            .iter()
            .map(|x| TwoFunctor::to_terminal(x, &point))
            .collect(),
        target,
    }
}

/// A morphism `Γ : D ⇒ D'` whose components are isomorphisms, where `D'`
/// has every fibre renamed with a trailing `'`.
pub fn relabelled(d: &Arc<TwoDiagram>) -> DiagramMorphism {
    let copies: Vec<_> = d
        .fibres
        .iter()
        .map(|x| crate::category::relabel(x, "'"))
        .collect();
    let retarget = |g: &TwoFunctor, s: usize, t: usize| TwoFunctor {
        source: copies[s].0.clone(),
        target: copies[t].0.clone(),
        ..g.clone()
    };
    let base = &*d.base;
    let on_one: Vec<TwoFunctor> = (0..base.one_cell_count())
        .map(|f| retarget(&d.on_one[f], d.transport_source(f), d.transport_target(f)))
        .collect();
    let on_two = (0..base.two_cell_count())
        .map(|a| TwoNaturalTransformation {
            source: on_one[base.src2(a)].clone(),
            target: on_one[base.tgt2(a)].clone(),
            components: d.on_two[a].components.clone(),
        })
        .collect();
    let target = TwoDiagram {
        base: d.base.clone(),
        variance: d.variance,
        fibres: copies.iter().map(|(c, _)| c.clone()).collect(),
        on_one,
        on_two,
    };
    DiagramMorphism {
        source: d.clone(),
        target: Arc::new(target),
        components: copies.into_iter().map(|(_, iso)| iso).collect(),
    }
}

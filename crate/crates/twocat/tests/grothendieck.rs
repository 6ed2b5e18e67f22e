mod common;

use std::sync::Arc;

use proptest::prelude::*;
use twocat::category::{
    check_two_functor, check_two_natural, validate, DiagramModification, DiagramMorphism,
    TwoCategory, TwoDiagram, TwoFunctor, TwoNaturalTransformation, Variance,
};
use twocat::corpus;
use twocat::grothendieck::{
    base_change, check_pullback, fibre_embedding, grothendieck, grothendieck_modification,
    grothendieck_transformation, projection,
};

/// 2-cells from `u` to `v` in `c`.
fn two_cells_between(c: &TwoCategory, u: usize, v: usize) -> usize {
    c.two_cells_from(u)
        .iter()
        .filter(|&&a| c.tgt2(a) == v)
        .count()
}

/// Cell counts of `∫D` read off the defining grammar of its cells.
fn grammar_counts(d: &TwoDiagram) -> (usize, usize, usize) {
    let b = &*d.base;
    let objects = d.fibres.iter().map(|x| x.object_count()).sum();
    let mut ones = 0;
    let mut twos = 0;
    // Base 1-cell, object pair (x, y), fibre 1-cell u with its fibre.
    let mut pairs: Vec<(usize, usize, usize, usize)> = Vec::new();
    for f in 0..b.one_cell_count() {
        let (a, c) = (b.src1(f), b.tgt1(f));
        match d.variance {
            Variance::Covariant => {
                let fib = &d.fibres[c];
                for x in 0..d.fibres[a].object_count() {
                    let fx = d.on_one[f].obj(x);
                    for &u in fib.one_cells_from(fx) {
                        pairs.push((f, x, fib.tgt1(u), u));
                    }
                }
            }
            Variance::Contravariant => {
                let fib = &d.fibres[a];
                for y in 0..d.fibres[c].object_count() {
                    let fy = d.on_one[f].obj(y);
                    for u in 0..fib.one_cell_count() {
                        if fib.tgt1(u) == fy {
                            pairs.push((f, fib.src1(u), y, u));
                        }
                    }
                }
            }
        }
    }
    ones += pairs.len();
    for alpha in 0..b.two_cell_count() {
        let (f, g) = (b.src2(alpha), b.tgt2(alpha));
        for &(f1, x, y, u) in pairs.iter().filter(|p| p.0 == f) {
            for &(_, _, _, v) in pairs.iter().filter(|p| p.0 == g && p.1 == x && p.2 == y) {
                twos += match d.variance {
                    Variance::Covariant => {
                        let fib = &d.fibres[b.tgt1(f1)];
                        let whiskered = fib.comp1(v, d.on_two[alpha].component(x));
                        two_cells_between(fib, u, whiskered)
                    }
                    Variance::Contravariant => {
                        let fib = &d.fibres[b.src1(f1)];
                        let whiskered = fib.comp1(d.on_two[alpha].component(y), u);
                        two_cells_between(fib, whiskered, v)
                    }
                };
            }
        }
    }
    (objects, ones, twos)
}

fn corpus_diagrams() -> Vec<Arc<TwoDiagram>> {
    vec![
        corpus::covariant_diagram(),
        corpus::contravariant_diagram(),
        corpus::constant_diagram(
            &corpus::walking_two_cell(),
            &corpus::walking_arrow(),
            Variance::Covariant,
        ),
        corpus::constant_diagram(
            &corpus::walking_arrow(),
            &corpus::walking_two_cell(),
            Variance::Contravariant,
        ),
    ]
}

#[test]
fn grothendieck_constructions_validate() {
    for d in corpus_diagrams() {
        let g = grothendieck(&d);
        let r = validate(&g.category);
        assert!(r.is_empty(), "{r}");
        assert_eq!(g.category.counts(), grammar_counts(&d));
        let id = g.category.id1(g.object(0, 0).unwrap());
        let k = g.one_key(id);
        assert_eq!((k.f, k.u), (d.base.id1(0), d.fibres[0].id1(0)));
    }
}

#[test]
fn constant_point_diagram_recovers_the_base() {
    for c in [corpus::walking_arrow(), corpus::walking_two_cell()] {
        for v in [Variance::Covariant, Variance::Contravariant] {
            let g = grothendieck(&corpus::constant_diagram(&c, &corpus::pt(), v));
            let pi = projection(&g);
            assert!(check_two_functor(&pi).is_empty());
            assert!(pi.is_bijective());
        }
    }
}

#[test]
fn diagram_over_the_point_recovers_the_fibre() {
    let wtc = corpus::walking_two_cell();
    let g = grothendieck(&corpus::constant_diagram(
        &corpus::pt(),
        &wtc,
        Variance::Covariant,
    ));
    let e = fibre_embedding(&g, 0);
    assert!(check_two_functor(&e).is_empty());
    assert!(e.is_bijective());
}

#[test]
fn transformations_of_diagrams() {
    for d in corpus_diagrams() {
        let g = grothendieck(&d);
        let id = grothendieck_transformation(&DiagramMorphism::identity(&d), &g, &g);
        assert!(id.same_cells(&TwoFunctor::identity(&g.category)));

        let collapse = corpus::collapse(&d);
        let point = grothendieck(&collapse.target);
        let to_point = grothendieck_transformation(&collapse, &g, &point);
        assert!(check_two_functor(&to_point).is_empty());
        assert!(to_point
            .then(&projection(&point))
            .same_cells(&projection(&g)));

        let relabel = corpus::relabelled(&d);
        let copy = grothendieck(&relabel.target);
        let iso = grothendieck_transformation(&relabel, &g, &copy);
        assert!(check_two_functor(&iso).is_empty());
        assert!(iso.is_bijective());

        let onward = DiagramMorphism {
            source: relabel.target.clone(),
            target: collapse.target.clone(),
            components: relabel
                .target
                .fibres
                .iter()
                .map(|x| TwoFunctor::to_terminal(x, &collapse.target.fibres[0]))
                .collect(),
        };
        let composite = grothendieck_transformation(&relabel.then(&onward), &g, &point);
        let stepwise = iso.then(&grothendieck_transformation(&onward, &copy, &point));
        assert!(composite.same_cells(&stepwise));
    }
}

#[test]
fn identity_modification_gives_identity_transformation() {
    for d in corpus_diagrams() {
        let g = grothendieck(&d);
        let id = DiagramMorphism::identity(&d);
        let m = DiagramModification {
            source: id.clone(),
            target: id.clone(),
            components: id
                .components
                .iter()
                .map(TwoNaturalTransformation::identity)
                .collect(),
        };
        let t = grothendieck_modification(&m, &g, &g);
        assert!(check_two_natural(&t).is_empty());
        assert!(t
            .components
            .iter()
            .enumerate()
            .all(|(o, &e)| e == g.category.id1(o)));
    }
}

#[test]
fn fibre_embeddings() {
    for d in corpus_diagrams() {
        let g = grothendieck(&d);
        let pi = projection(&g);
        for c in 0..d.base.object_count() {
            let e = fibre_embedding(&g, c);
            assert!(check_two_functor(&e).is_empty());
            let mut seen = e.objects.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), e.objects.len());
            let mut images: Vec<usize> = e.objects.clone();
            images.sort();
            let mut fibre: Vec<usize> = (0..g.category.object_count())
                .filter(|&o| g.object_key(o).base == c)
                .collect();
            fibre.sort();
            assert_eq!(images, fibre);
            let over = e.then(&pi);
            assert!(over.objects.iter().all(|&x| x == c));
            assert!(over.one_cells.iter().all(|&f| f == d.base.id1(c)));
        }
    }
}

#[test]
fn base_change_examples() {
    let d = corpus::contravariant_diagram();
    let whole = grothendieck(&d);
    let id = TwoFunctor::identity(&d.base);
    let (same, bar) = base_change(&id, &d, &whole);
    assert!(bar.same_cells(&TwoFunctor::identity(&whole.category)));
    assert!(check_pullback(&id, &same, &bar, &whole).is_empty());

    let f = corpus::arrow_to_two_cell();
    let (restricted, bar) = base_change(&f, &d, &whole);
    let r = check_pullback(&f, &restricted, &bar, &whole);
    assert!(r.is_empty(), "{r}");
    assert!(validate(&restricted.category).is_empty());

    let p = corpus::pt();
    for c in 0..d.base.object_count() {
        let at = TwoFunctor {
            source: p.clone(),
            target: d.base.clone(),
            objects: vec![c],
            one_cells: vec![d.base.id1(c)],
            two_cells: vec![d.base.id2_of_object(c)],
        };
        let (over_point, bar) = base_change(&at, &d, &whole);
        let via = fibre_embedding(&over_point, 0).then(&bar);
        assert!(via.same_cells(&fibre_embedding(&whole, c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn constant_diagrams_give_products(base in common::shapes(), fibre in common::shapes(), covariant: bool) {
        let v = if covariant { Variance::Covariant } else { Variance::Contravariant };
        let (c, x) = (base.build(), fibre.build());
        let d = corpus::constant_diagram(&c, &x, v);
        let g = grothendieck(&d);
        prop_assert!(validate(&g.category).is_empty());
        let (co, c1, c2) = c.counts();
        let (xo, x1, x2) = x.counts();
        prop_assert_eq!(g.category.counts(), (co * xo, c1 * x1, c2 * x2));
        prop_assert_eq!(g.category.counts(), grammar_counts(&d));
    }

    #[test]
    fn slices_of_random_shapes(shape in common::shapes()) {
        let c = shape.build();
        for x in 0..c.object_count() {
            let d = twocat::comma::representable_into(&c, x).diagram;
            let g = grothendieck(&d);
            prop_assert!(validate(&g.category).is_empty());
            prop_assert_eq!(g.category.counts(), grammar_counts(&d));
            let d = twocat::comma::representable_from(&c, x).diagram;
            let g = grothendieck(&d);
            prop_assert!(validate(&g.category).is_empty());
            prop_assert_eq!(g.category.counts(), grammar_counts(&d));
        }
    }
}

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use twocat::category::{
    check_two_functor, check_two_natural, product, DiagramModification, TwoDiagram, Variance,
};
use twocat::corpus;
use twocat::hocolim::{
    build_e, check_simplicial_functor, constant_level, hocolim, hocolim_map, hocolim_modification,
    iso_112, iso_114, ESimplex,
};
use twocat::nerves::{double_nerve, nerve_category};
use twocat::simplicial::{check_simplicial_identities, verify_iso, TrisimplicialSet};

use common::oracles;

fn corpus_diagrams() -> Vec<Arc<TwoDiagram>> {
    vec![corpus::covariant_diagram(), corpus::contravariant_diagram()]
}

fn locally_discrete(shape: &common::Shape) -> common::Shape {
    common::Shape {
        two_cells: shape
            .two_cells
            .iter()
            .map(|v| vec![false; v.len()])
            .collect(),
        ..shape.clone()
    }
}

#[test]
fn hocolim_levels_and_structure_maps() {
    let mut diagrams = corpus_diagrams();
    diagrams.push(corpus::constant_diagram(
        &corpus::walking_arrow(),
        &corpus::walking_two_cell(),
        Variance::Covariant,
    ));
    for d in diagrams {
        let h = hocolim(&d, 3);
        let r = h.simplicial.check();
        assert!(r.is_empty(), "{r}");
    }
}

#[test]
fn level_one_objects_are_counted_by_the_coproduct() {
    for d in corpus_diagrams() {
        let h = hocolim(&d, 2);
        let b = &*d.base;
        let expected: usize = (0..b.one_cell_count())
            .map(|f| {
                let free = match d.variance {
                    Variance::Covariant => b.src1(f),
                    Variance::Contravariant => b.tgt1(f),
                };
                d.fibres[free].object_count()
            })
            .sum();
        assert_eq!(h.simplicial.levels[1].object_count(), expected);
    }
}

#[test]
fn hocolim_of_the_point_diagram_is_the_nerve() {
    let wa = corpus::walking_arrow();
    let h = hocolim(
        &corpus::constant_diagram(&wa, &corpus::pt(), Variance::Covariant),
        4,
    );
    let n = nerve_category(&wa, 4).unwrap();
    for p in 0..=4 {
        let size = n.len(p);
        assert_eq!(h.simplicial.levels[p].counts(), (size, size, size));
    }
}

#[test]
fn hocolim_over_the_point_is_constant() {
    let wtc = corpus::walking_two_cell();
    let h = hocolim(
        &corpus::constant_diagram(&corpus::pt(), &wtc, Variance::Covariant),
        3,
    );
    for p in 0..=3 {
        assert_eq!(h.simplicial.levels[p].counts(), wtc.counts());
        for i in 0..h.simplicial.faces[p].len() {
            assert!(h.simplicial.face(p, i).is_bijective());
        }
    }
}

#[test]
fn maps_and_modifications_of_hocolims() {
    for d in corpus_diagrams() {
        let h = hocolim(&d, 3);
        let id = hocolim_map(&twocat::category::DiagramMorphism::identity(&d), &h, &h);
        assert!(id.iter().enumerate().all(|(p, f)| f.same_cells(
            &twocat::category::TwoFunctor::identity(&h.simplicial.levels[p])
        )));
        for gamma in [corpus::collapse(&d), corpus::relabelled(&d)] {
            let target = hocolim(&gamma.target, 3);
            let family = hocolim_map(&gamma, &h, &target);
            let r = check_simplicial_functor(&family, &h.simplicial, &target.simplicial);
            assert!(r.is_empty(), "{r}");
        }
        let gamma = twocat::category::DiagramMorphism::identity(&d);
        let m = DiagramModification {
            source: gamma.clone(),
            target: gamma.clone(),
            components: gamma
                .components
                .iter()
                .map(twocat::category::TwoNaturalTransformation::identity)
                .collect(),
        };
        for t in hocolim_modification(&m, &h, &h) {
            assert!(check_two_natural(&t).is_empty());
        }
    }
}

#[test]
fn constant_diagram_levels_are_products() {
    let wa = corpus::walking_arrow();
    let wtc = corpus::walking_two_cell();
    let h = hocolim(&corpus::constant_diagram(&wa, &wtc, Variance::Covariant), 3);
    let n = nerve_category(&wa, 3).unwrap();
    for p in 0..=3 {
        let level = constant_level(&h, p).unwrap();
        assert!(check_two_functor(&level.functor).is_empty());
        assert!(level.functor.is_bijective());
        assert_eq!(level.chains.len(), n.len(p));
        let (o, a, t) = wtc.counts();
        let k = n.len(p);
        assert_eq!(level.product.counts(), (o * k, a * k, t * k));
    }
    assert!(constant_level(&hocolim(&corpus::covariant_diagram(), 2), 1).is_err());
}

fn check_e(e: &TrisimplicialSet) {
    let r = check_simplicial_identities(e);
    assert!(r.is_empty(), "{r}");
}

#[test]
fn e_passes_the_identities() {
    for d in corpus_diagrams() {
        check_e(&build_e(&d, 3).unwrap());
    }
}

#[test]
fn e_at_outer_degree_zero_pairs_base_objects_with_fibre_objects() {
    for d in corpus_diagrams() {
        let e = build_e(&d, 3).unwrap();
        let objects: usize = d.fibres.iter().map(|x| x.object_count()).sum();
        for n in 0..=3 {
            for q in 0..=3 {
                assert_eq!(e.size(&[0, n, q]), objects);
            }
        }
    }
}

#[test]
fn e_of_the_point_diagram_is_the_padded_double_nerve() {
    let wtc = corpus::walking_two_cell();
    for v in [Variance::Covariant, Variance::Contravariant] {
        let d = corpus::constant_diagram(&wtc, &corpus::pt(), v);
        let e = build_e(&d, 3).unwrap();
        check_e(&e);
        let nn = double_nerve(&wtc, 3).unwrap();
        for (idx, level) in e.levels() {
            assert_eq!(level.len(), nn.len(idx[0], idx[2]));
        }
    }
}

/// The q-face of a covariant simplex of `E`, expanded by hand: delete the
/// 1-cell `f^i_m` of every base column and, when the top one goes, precompose
/// every `u^k_m` with the component of `α^q_m` at `x_{m-1}`.
fn q_face_by_hand(d: &TwoDiagram, s: &ESimplex, q: usize, i: usize) -> ESimplex {
    let base = &*d.base;
    let mut columns = Vec::new();
    let mut us = Vec::new();
    for (m, col) in s.grid.columns.iter().enumerate() {
        let mut ones = col.ones.clone();
        let mut twos = col.twos.clone();
        if i == 0 {
            ones.remove(0);
            twos.remove(0);
        } else if i == q {
            ones.pop();
            twos.pop();
        } else {
            ones.remove(i);
            let merged = base.vcomp(twos[i], twos[i - 1]);
            twos.splice(i - 1..=i, [merged]);
        }
        columns.push(twocat::nerves::Column { ones, twos });
        let u = &s.us[m];
        if i == q {
            let fibre = &*d.fibres[s.grid.objects[m + 1]];
            let alpha = col.twos[q - 1];
            let w = d.on_two[alpha].component(s.xs[m]);
            us.push(twocat::nerves::Column {
                ones: u.ones.iter().map(|&x| fibre.comp1(x, w)).collect(),
                twos: u
                    .twos
                    .iter()
                    .map(|&phi| fibre.hcomp(phi, fibre.id2(w)))
                    .collect(),
            });
        } else {
            us.push(u.clone());
        }
    }
    ESimplex {
        grid: twocat::nerves::Grid {
            objects: s.grid.objects.clone(),
            columns,
        },
        xs: s.xs.clone(),
        us,
    }
}

#[test]
fn q_faces_match_the_hand_expansion() {
    let d = corpus::covariant_diagram();
    let e = build_e(&d, 3).unwrap();
    let mut checked = 0;
    for (p, n, q) in [(1, 1, 1), (1, 2, 2), (2, 1, 1), (1, 0, 2), (2, 0, 1)] {
        let idx = [p, n, q];
        let size = e.size(&idx);
        let stride = (size / 10).max(1);
        for k in (0..size).step_by(stride).take(10) {
            let s = ESimplex::decode(p, n, q, e.simplex(&idx, k));
            for i in 0..=q {
                let face = e.face(&idx, 2, i, k);
                let got = ESimplex::decode(p, n, q - 1, e.simplex(&[p, n, q - 1], face));
                assert_eq!(
                    got,
                    q_face_by_hand(&d, &s, q, i),
                    "level {idx:?} simplex {k} face {i}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 10);
}

#[test]
fn comparison_isomorphisms_on_the_corpus() {
    for d in corpus_diagrams() {
        for (name, f) in [
            ("112", iso_112(&d, 3).unwrap()),
            ("114", iso_114(&d, 3).unwrap()),
        ] {
            let r = f.check();
            assert!(r.is_empty(), "{name} {:?}: {r}", d.variance);
            assert!(verify_iso(&f), "{name} {:?}", d.variance);
        }
    }
}

#[test]
fn comparison_isomorphisms_on_degenerate_diagrams() {
    let wtc = corpus::walking_two_cell();
    let point = corpus::pt();
    for v in [Variance::Covariant, Variance::Contravariant] {
        let terminal = corpus::constant_diagram(&wtc, &point, v);
        let over_point = corpus::constant_diagram(&point, &wtc, v);
        for d in [terminal, over_point] {
            let a = iso_112(&d, 3).unwrap();
            let b = iso_114(&d, 3).unwrap();
            assert!(verify_iso(&a) && verify_iso(&b));
        }
    }
    let f = iso_112(
        &corpus::constant_diagram(&corpus::walking_arrow(), &point, Variance::Covariant),
        3,
    )
    .unwrap();
    assert!(f
        .source
        .sizes()
        .iter()
        .zip(f.target.sizes())
        .all(|(a, b)| *a == b));
    let trivial = iso_114(
        &corpus::constant_diagram(&point, &point, Variance::Covariant),
        3,
    )
    .unwrap();
    assert_eq!(trivial.source.sizes(), [1, 1, 1, 1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn constant_levels_are_products(base in common::shapes(), fibre in common::shapes(), p in 0usize..=2) {
        let b = locally_discrete(&base).build();
        let x = fibre.build();
        let h = hocolim(&corpus::constant_diagram(&b, &x, Variance::Covariant), 2);
        prop_assert!(h.simplicial.check().is_empty());
        let level = constant_level(&h, p).unwrap();
        prop_assert!(check_two_functor(&level.functor).is_empty());
        prop_assert!(level.functor.is_bijective());
        prop_assert_eq!(level.chains.len(), oracles::composable_chains(&b, p));
        let discrete = Arc::new(twocat::category::TwoCategory::unit_closed(&["*"], &[], &[]).unwrap());
        let expected = product(&[x.clone(), discrete]).category.counts();
        let k = level.chains.len();
        prop_assert_eq!(level.product.counts(), (expected.0 * k, expected.1 * k, expected.2 * k));
    }

    #[test]
    fn comparisons_on_random_constant_diagrams(base in common::shapes(), fibre in common::shapes(), covariant: bool) {
        let v = if covariant { Variance::Covariant } else { Variance::Contravariant };
        let d = corpus::constant_diagram(&base.build(), &fibre.build(), v);
        let e = build_e(&d, 2).unwrap();
        prop_assert!(check_simplicial_identities(&e).is_empty());
        prop_assert!(verify_iso(&iso_112(&d, 2).unwrap()));
        prop_assert!(verify_iso(&iso_114(&d, 2).unwrap()));
    }

    #[test]
    fn comparisons_on_random_representables(shape in common::shapes(), pick in 0usize..4, into: bool) {
        let c = shape.build();
        let x = pick % c.object_count();
        let d = if into {
            twocat::comma::representable_into(&c, x).diagram
        } else {
            twocat::comma::representable_from(&c, x).diagram
        };
        let d = Arc::new(d);
        let e = build_e(&d, 2).unwrap();
        prop_assert!(check_simplicial_identities(&e).is_empty());
        prop_assert!(hocolim(&d, 2).simplicial.check().is_empty());
        prop_assert!(verify_iso(&iso_112(&d, 2).unwrap()));
        prop_assert!(verify_iso(&iso_114(&d, 2).unwrap()));
    }
}

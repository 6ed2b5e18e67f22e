mod common;

use std::sync::Arc;

use proptest::prelude::*;
use twocat::category::{
    check_cell_map, check_modification, check_two_functor, hom_category, opposite, product,
    terminal, validate, CellMap, Modification, TwoCategory, TwoFunctor, TwoNaturalTransformation,
};
use twocat::corpus;

fn id_transformation(c: &Arc<TwoCategory>) -> TwoNaturalTransformation {
    TwoNaturalTransformation::identity(&TwoFunctor::identity(c))
}

#[test]
fn corpus_categories_validate() {
    assert!(validate(&terminal()).is_empty());
    for c in [
        corpus::pt(),
        corpus::walking_arrow(),
        corpus::walking_two_cell(),
    ] {
        let r = validate(&c);
        assert!(r.is_empty(), "{r}");
    }
    assert_eq!(corpus::walking_two_cell().counts(), (2, 4, 5));
    assert_eq!(corpus::walking_arrow().counts(), (2, 3, 3));
}

#[test]
fn vertical_composite_of_non_composable_pair_is_malformed() {
    let mut t = corpus::walking_two_cell().tables();
    t.vcomp2.push(("phi".into(), "phi".into(), "phi".into()));
    let c = TwoCategory::from_tables(&t).unwrap();
    let r = validate(&c);
    assert!(r.has_rule("malformed table"), "{r}");
}

#[test]
fn identity_functor_passes_and_bad_two_cell_map_fails() {
    let c = corpus::walking_two_cell();
    assert!(check_cell_map(CellMap::TwoFunctor(&TwoFunctor::identity(&c))).is_empty());
    let mut bad = TwoFunctor::identity(&c);
    let phi = c.two_cell_by_name("phi").unwrap();
    let f = c.one_cell_by_name("f").unwrap();
    bad.two_cells[phi] = c.id2(f);
    let r = check_two_functor(&bad);
    assert!(!r.is_empty());
    assert!(
        r.violations().iter().any(|v| v.detail.contains("phi")),
        "{r}"
    );
}

#[test]
fn identity_transformation_and_modification_pass() {
    let c = corpus::walking_two_cell();
    let t = id_transformation(&c);
    assert!(check_cell_map(CellMap::TwoNatural(&t)).is_empty());
    let m = Modification {
        source: t.clone(),
        target: t.clone(),
        components: t.components.iter().map(|&e| c.id2(e)).collect(),
    };
    assert!(check_modification(&m).is_empty());
    let mut wrong = m.clone();
    wrong.components[0] = c.two_cell_by_name("phi").unwrap();
    assert!(!check_modification(&wrong).is_empty());
}

#[test]
fn opposite_examples() {
    let t = corpus::pt();
    assert_eq!(opposite(&t), *t);
    let wa = corpus::walking_arrow();
    let op = opposite(&wa);
    let e = op.one_cell_by_name("e").unwrap();
    assert_eq!(
        (op.object_name(op.src1(e)), op.object_name(op.tgt1(e))),
        ("1", "0")
    );
    let wtc = corpus::walking_two_cell();
    assert_eq!(opposite(&opposite(&wtc)), *wtc);
    let op = Arc::new(opposite(&wtc));
    let (a, b) = (
        wtc.object_by_name("a").unwrap(),
        wtc.object_by_name("b").unwrap(),
    );
    assert_eq!(op.hom2(b, a).len(), wtc.hom2(a, b).len());
}

#[test]
fn product_examples() {
    let wa = corpus::walking_arrow();
    let wtc = corpus::walking_two_cell();
    assert_eq!(product(std::slice::from_ref(&wtc)).category, *wtc);
    let sq = product(&[wa.clone(), wa]);
    assert_eq!(sq.category.object_count(), 4);
    assert_eq!(sq.category.one_cell_count(), 9);
    assert!(validate(&sq.category).is_empty());
    let with_point = product(&[wtc.clone(), corpus::pt()]);
    let target = Arc::new(with_point.category.clone());
    let iso = TwoFunctor {
        source: wtc.clone(),
        target,
        objects: (0..wtc.object_count())
            .map(|x| with_point.object(&vec![x, 0]).unwrap())
            .collect(),
        one_cells: (0..wtc.one_cell_count())
            .map(|x| with_point.one_cell(&vec![x, 0]).unwrap())
            .collect(),
        two_cells: (0..wtc.two_cell_count())
            .map(|x| with_point.two_cell(&vec![x, 0]).unwrap())
            .collect(),
    };
    assert!(check_two_functor(&iso).is_empty());
    assert!(iso.is_bijective());
}

#[test]
fn hom_category_examples() {
    let wtc = corpus::walking_two_cell();
    let (a, b) = (
        wtc.object_by_name("a").unwrap(),
        wtc.object_by_name("b").unwrap(),
    );
    let h = hom_category(&wtc, a, b);
    assert_eq!(h.category.counts(), (2, 3, 3));
    assert!(h.category.is_locally_discrete());
    let phi = h.arrow_of(wtc.two_cell_by_name("phi").unwrap()).unwrap();
    let name = |o| wtc.one_cell(h.objects[o]).name.clone();
    assert_eq!(
        (name(h.category.src1(phi)), name(h.category.tgt1(phi))),
        ("f".to_string(), "g".to_string())
    );
    assert_eq!(hom_category(&wtc, b, a).category.counts(), (0, 0, 0));
    let p = corpus::pt();
    assert_eq!(hom_category(&p, 0, 0).category.counts(), (1, 1, 1));
}

#[test]
fn cyclic_groups_validate() {
    for n in 1..=4 {
        let g = common::cyclic_group(n);
        assert_eq!(g.counts(), (1, n, n));
        assert!(validate(&g).is_empty());
    }
}

proptest! {
    #[test]
    fn random_shapes_validate(shape in common::shapes()) {
        let c = shape.build();
        prop_assert!(validate(&c).is_empty());
    }

    #[test]
    fn opposite_is_an_involution(shape in common::shapes()) {
        let c = shape.build();
        let op = opposite(&c);
        prop_assert!(validate(&op).is_empty());
        prop_assert_eq!(opposite(&op), (*c).clone());
    }

    #[test]
    fn product_counts_multiply(a in common::shapes(), b in common::shapes()) {
        let (x, y) = (a.build(), b.build());
        let p = product(&[x.clone(), y.clone()]);
        let (xo, x1, x2) = x.counts();
        let (yo, y1, y2) = y.counts();
        prop_assert_eq!(p.category.counts(), (xo * yo, x1 * y1, x2 * y2));
        prop_assert!(validate(&p.category).is_empty());
    }

    #[test]
    fn hom_categories_are_categories(shape in common::shapes()) {
        let c = shape.build();
        for a in 0..c.object_count() {
            for b in 0..c.object_count() {
                let h = hom_category(&c, a, b);
                prop_assert!(validate(&h.category).is_empty());
                prop_assert_eq!(h.category.object_count(), c.hom(a, b).len());
                prop_assert_eq!(h.category.one_cell_count(), c.hom2(a, b).len());
            }
        }
    }
}

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use twocat::category::{
    check_diagram, check_oplax, check_two_functor, check_two_natural, validate, TwoCategory,
    TwoFunctor, Variance,
};
use twocat::comma::{
    comma, comma_base_change, fibre_diagram, induced_fibre_functor, induced_fibre_transformation,
    projections, retraction_r, section_jz_iz, CommaError, Side,
};
use twocat::corpus;
use twocat::grothendieck::grothendieck;
use twocat::homology::{homology, normalized_chain_complex};
use twocat::nerves::diag_nerve;

fn sides() -> [Side; 2] {
    [Side::Over, Side::Under]
}

/// Independent count of the objects of `F↓c` or `c↓F`: pairs `(a, p)`.
fn count_objects(f: &TwoFunctor, c: usize, side: Side) -> usize {
    let t = &*f.target;
    (0..f.source.object_count())
        .map(|a| match side {
            Side::Over => t.hom(f.obj(a), c).len(),
            Side::Under => t.hom(c, f.obj(a)).len(),
        })
        .sum()
}

#[test]
fn slice_of_walking_two_cell_over_b() {
    let c = corpus::walking_two_cell();
    let b = c.object_by_name("b").unwrap();
    let m = comma(&TwoFunctor::identity(&c), b, Side::Over);
    assert!(validate(m.category()).is_empty());
    let mut names: Vec<String> = (0..m.category().object_count())
        .map(|o| c.one_cell(m.object_parts(o).1).name.clone())
        .collect();
    names.sort();
    assert_eq!(names, ["1_b", "f", "g"]);
}

#[test]
fn comma_of_the_point_is_terminal() {
    let p = corpus::pt();
    for side in sides() {
        let m = comma(&TwoFunctor::identity(&p), 0, side);
        assert_eq!(m.category().counts(), (1, 1, 1));
    }
}

#[test]
fn object_counts_match_pairs() {
    let f = corpus::arrow_to_two_cell();
    for side in sides() {
        for c in 0..f.target.object_count() {
            let m = comma(&f, c, side);
            assert_eq!(m.category().object_count(), count_objects(&f, c, side));
            assert!(validate(m.category()).is_empty());
        }
    }
}

#[test]
fn comma_is_the_grothendieck_construction_of_the_representable() {
    let c = corpus::walking_two_cell();
    let b = c.object_by_name("b").unwrap();
    let m = comma(&TwoFunctor::identity(&c), b, Side::Over);
    let direct = grothendieck(&corpus::contravariant_diagram());
    assert_eq!(**m.category(), *direct.category);
}

#[test]
fn representable_diagrams_are_diagrams() {
    let c = corpus::walking_two_cell();
    for x in 0..c.object_count() {
        let into = twocat::comma::representable_into(&c, x);
        let from = twocat::comma::representable_from(&c, x);
        assert_eq!(into.diagram.variance, Variance::Contravariant);
        assert!(check_diagram(&into.diagram).is_empty());
        assert!(check_diagram(&from.diagram).is_empty());
    }
}

#[test]
fn fibre_diagrams_are_functorial() {
    let f = corpus::arrow_to_two_cell();
    for side in sides() {
        let d = fibre_diagram(&f, side);
        let r = check_diagram(&d.diagram);
        assert!(r.is_empty(), "{side:?}: {r}");
    }
    let p = corpus::pt();
    let d = fibre_diagram(&TwoFunctor::identity(&p), Side::Over);
    assert_eq!(d.diagram.fibres[0].counts(), (1, 1, 1));
}

#[test]
fn identity_cells_induce_identities() {
    let f = corpus::arrow_to_two_cell();
    let c = &f.target;
    for side in sides() {
        for x in 0..c.object_count() {
            let m = comma(&f, x, side);
            let h = induced_fibre_functor(&m, &m, c.id1(x));
            assert!(h.same_cells(&TwoFunctor::identity(m.category())));
            let t = induced_fibre_transformation(&m, &m, c.id2_of_object(x));
            assert!(check_two_natural(&t).is_empty());
            assert!(t
                .components
                .iter()
                .all(|&e| m.category().id1(m.category().src1(e)) == e));
        }
    }
}

#[test]
fn projection_retracts_onto_the_source() {
    let f = corpus::arrow_to_two_cell();
    for side in sides() {
        let p = projections(&f, side);
        assert!(p
            .iota
            .then(&p.big_pi)
            .same_cells(&TwoFunctor::identity(&f.source)));
        assert!(check_two_functor(&p.big_pi).is_empty());
        assert!(check_two_functor(&p.iota).is_empty());
        let r = check_oplax(&p.witness);
        assert!(r.is_empty(), "{side:?}: {r}");
    }
}

#[test]
fn retraction_has_a_section_and_a_witness() {
    let cases = [
        (corpus::collapse(&corpus::covariant_diagram()), Side::Over),
        (
            corpus::collapse(&corpus::contravariant_diagram()),
            Side::Under,
        ),
        (corpus::relabelled(&corpus::covariant_diagram()), Side::Over),
        (
            corpus::relabelled(&corpus::contravariant_diagram()),
            Side::Under,
        ),
    ];
    for (gamma, side) in cases {
        let base = &gamma.source.base;
        for c in 0..base.object_count() {
            for y in 0..gamma.target.fibres[c].object_count() {
                let r = retraction_r(&gamma, c, y, side).unwrap();
                assert!(check_two_functor(&r.retraction).is_empty());
                assert!(check_two_functor(&r.section).is_empty());
                assert!(r
                    .section
                    .then(&r.retraction)
                    .same_cells(&TwoFunctor::identity(r.target.category())));
                let w = check_oplax(&r.witness);
                assert!(w.is_empty(), "{side:?} c={c} y={y}: {w}");
            }
        }
    }
}

#[test]
fn retraction_rejects_the_wrong_side() {
    let gamma = corpus::collapse(&corpus::covariant_diagram());
    assert!(matches!(
        retraction_r(&gamma, 0, 0, Side::Under),
        Err(CommaError::SideMismatch { .. })
    ));
}

#[test]
fn fibre_section_retracts() {
    let c = corpus::walking_two_cell();
    let f = corpus::arrow_to_two_cell();
    let contra = corpus::contravariant_diagram();
    let cov = twocat::comma::representable_from(&c, c.object_by_name("a").unwrap()).diagram;
    for d in [contra, cov] {
        for x in 0..c.object_count() {
            for z in 0..d.fibres[x].object_count() {
                let s = section_jz_iz(&f, &d, x, z).unwrap();
                assert!(check_two_functor(&s.retraction).is_empty());
                assert!(check_two_functor(&s.section).is_empty());
                assert!(s
                    .section
                    .then(&s.retraction)
                    .same_cells(&TwoFunctor::identity(s.target.category())));
                let w = check_oplax(&s.witness);
                assert!(w.is_empty(), "{:?} x={x} z={z}: {w}", d.variance);
                let pi = twocat::grothendieck::projection(&s.restricted);
                assert!(s.inclusion.then(&pi).same_cells(&s.target.projection()));
            }
        }
    }
}

#[test]
fn base_change_of_commas() {
    let f = corpus::arrow_to_two_cell();
    let id_c = TwoFunctor::identity(&f.target);
    let id_a = TwoFunctor::identity(&f.source);
    for side in sides() {
        for d in 0..f.target.object_count() {
            let m = comma_base_change(&f, &id_c, &id_c, &f, d, side).unwrap();
            assert!(check_two_functor(&m.functor).is_empty());
            let left = m.functor.then(&m.target.projection());
            let right = m.source.projection().then(&f);
            assert!(left.same_cells(&right));
            let same = comma_base_change(&f, &f, &id_c, &id_a, d, side).unwrap();
            assert!(same
                .functor
                .same_cells(&TwoFunctor::identity(same.source.category())));
        }
    }
    let bad = comma_base_change(&f, &id_c, &id_c, &id_a, 0, Side::Over);
    assert!(matches!(bad, Err(CommaError::NonCommutingSquare)));
}

#[test]
fn fibre_diagram_of_identity_on_a_walking_arrow() {
    let wa: Arc<TwoCategory> = corpus::walking_arrow();
    let d = fibre_diagram(&TwoFunctor::identity(&wa), Side::Over);
    let sizes: Vec<usize> = d
        .commas
        .iter()
        .map(|m| m.category().object_count())
        .collect();
    assert_eq!(sizes, [1, 2]);
}

#[test]
fn witness_naturality_cells_pair_the_comma_two_cell_with_an_identity() {
    let f = corpus::arrow_to_two_cell();
    for side in sides() {
        let p = projections(&f, side);
        let c = &*f.target;
        let total = &p.total;
        for h in 0..total.category.one_cell_count() {
            let kh = total.one_key(h);
            let home = match side {
                Side::Over => c.tgt1(kh.f),
                Side::Under => c.src1(kh.f),
            };
            let m = &p.fibres.commas[home];
            let inner = m.one_parts(kh.u);
            let k = total.two_key(p.witness.naturality[h]);
            assert_eq!(k.alpha, inner.phi);
            assert_eq!(m.two_parts(k.phi), f.source.id2(inner.u));
        }
    }
}

#[test]
fn induced_fibre_functors_compose() {
    let g = common::cyclic_group(3);
    let id = TwoFunctor::identity(&g);
    let m = comma(&id, 0, Side::Over);
    let n = comma(&id, 0, Side::Under);
    for h in 0..3 {
        for k in 0..3 {
            let hk = g.comp1(k, h);
            for x in [&m, &n] {
                let both = induced_fibre_functor(x, x, h).then(&induced_fibre_functor(x, x, k));
                let once = induced_fibre_functor(x, x, hk);
                let (first, second) = match x.side {
                    Side::Over => (both, once),
                    Side::Under => (
                        induced_fibre_functor(x, x, k).then(&induced_fibre_functor(x, x, h)),
                        once,
                    ),
                };
                assert!(check_two_functor(&second).is_empty());
                assert!(first.same_cells(&second), "{:?} {h} {k}", x.side);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn slices_of_random_shapes_are_contractible(shape in common::shapes()) {
        let c = shape.build();
        let id = TwoFunctor::identity(&c);
        for x in 0..c.object_count() {
            for side in sides() {
                let m = comma(&id, x, side);
                prop_assert!(validate(m.category()).is_empty());
                let cc = normalized_chain_complex(&diag_nerve(m.category(), 3).unwrap());
                prop_assert!(homology(&cc, 0).unwrap().is_integers());
                prop_assert!(homology(&cc, 1).unwrap().is_trivial());
                prop_assert!(homology(&cc, 2).unwrap().is_trivial());
            }
        }
    }
}

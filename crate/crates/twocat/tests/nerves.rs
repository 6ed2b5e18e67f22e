mod common;

use proptest::prelude::*;
use twocat::corpus;
use twocat::hocolim::{hocolim, SimplicialTwoCategory};
use twocat::nerves::{
    diag_nerve_simplicial, double_nerve, nerve_category, nerve_simplicial_twocat,
    wbar_double_nerve, wbar_repackaging,
};
use twocat::simplicial::{
    check_simplicial_identities, cube_window, diag3, verify_iso, DEFAULT_BUDGET,
};

use common::oracles;

/// Monotone maps `[p] → [1]`, counted by listing all maps.
fn monotone_maps(p: usize) -> usize {
    (0..1usize << (p + 1))
        .filter(|bits| (0..p).all(|i| (bits >> i) & 1 <= (bits >> (i + 1)) & 1))
        .count()
}

#[test]
fn nerve_of_a_category_examples() {
    let n = nerve_category(&corpus::pt(), 4).unwrap();
    assert_eq!(n.sizes(), [1; 5]);
    let wa = corpus::walking_arrow();
    let n = nerve_category(&wa, 4).unwrap();
    for p in 0..=4 {
        assert_eq!(n.len(p), p + 2);
        assert_eq!(n.len(p), monotone_maps(p));
    }
    assert_eq!(n.len(0), wa.object_count());
    assert!(check_simplicial_identities(&n).is_empty());
}

#[test]
fn nerve_of_a_category_rejects_two_cells() {
    assert!(nerve_category(&corpus::walking_two_cell(), 2).is_err());
}

#[test]
fn nerves_of_cyclic_groups_count_tuples() {
    for order in 1..=3 {
        let g = common::cyclic_group(order);
        let n = nerve_category(&g, 4).unwrap();
        for p in 0..=4 {
            assert_eq!(n.len(p), order.pow(p as u32));
            assert_eq!(n.len(p), oracles::composable_chains(&g, p));
        }
        assert!(check_simplicial_identities(&n).is_empty());
    }
}

#[test]
fn double_nerve_examples() {
    let nn = double_nerve(&corpus::pt(), 3).unwrap();
    assert!(nn.levels().all(|(_, l)| l.len() == 1));
    let wtc = corpus::walking_two_cell();
    let nn = double_nerve(&wtc, 4).unwrap();
    assert_eq!(nn.len(1, 1), 5);
    assert_eq!(nn.len(2, 1), 8);
    assert_eq!(nn.len(1, 1), 1 + 3 + 1);
}

#[test]
fn explicit_codiagonal_examples() {
    let w = wbar_double_nerve(&corpus::pt(), 4).unwrap();
    assert_eq!(w.sizes(), [1; 5]);
    let wtc = corpus::walking_two_cell();
    let w = wbar_double_nerve(&wtc, 4).unwrap();
    assert_eq!(w.len(2), 7);
    assert!(check_simplicial_identities(&w).is_empty());
}

#[test]
fn repackaging_is_an_isomorphism_on_the_corpus() {
    for c in [
        corpus::pt(),
        corpus::walking_arrow(),
        corpus::walking_two_cell(),
    ] {
        let f = wbar_repackaging(&c, 4).unwrap();
        assert!(f.check().is_empty());
        assert!(verify_iso(&f));
        for n in 0..=4 {
            assert_eq!(f.target.len(n), oracles::staircase_count(&c, n));
        }
    }
}

#[test]
fn nerve_of_constant_simplicial_two_categories() {
    let point = SimplicialTwoCategory::constant(&corpus::pt(), 2);
    let t = nerve_simplicial_twocat(&point, cube_window(2), DEFAULT_BUDGET).unwrap();
    assert!(t.levels().all(|(_, l)| l.len() == 1));
    let wtc = corpus::walking_two_cell();
    let s = SimplicialTwoCategory::constant(&wtc, 2);
    let t = nerve_simplicial_twocat(&s, cube_window(2), DEFAULT_BUDGET).unwrap();
    assert!(check_simplicial_identities(&t).is_empty());
    for n in 0..=2 {
        for q in 0..=2 {
            let level = [1, n, q];
            for k in 0..t.size(&level) {
                assert_eq!(t.face(&level, 0, 0, k), t.face(&level, 0, 1, k));
                assert_eq!(
                    t.simplex(&[0, n, q], t.face(&level, 0, 0, k)),
                    t.simplex(&level, k)
                );
            }
        }
    }
}

#[test]
fn nerve_of_hocolim_passes_identities() {
    for d in [corpus::covariant_diagram(), corpus::contravariant_diagram()] {
        let h = hocolim(&d, 2);
        let t = nerve_simplicial_twocat(&h.simplicial, cube_window(2), DEFAULT_BUDGET).unwrap();
        let r = check_simplicial_identities(&t);
        assert!(r.is_empty(), "{r}");
    }
}

#[test]
fn direct_diagonal_matches_the_trisimplicial_diagonal() {
    for d in [corpus::covariant_diagram(), corpus::contravariant_diagram()] {
        let h = hocolim(&d, 3);
        let t = nerve_simplicial_twocat(&h.simplicial, cube_window(3), DEFAULT_BUDGET).unwrap();
        let via = diag3(&t, 3).unwrap();
        let direct = diag_nerve_simplicial(&h.simplicial, 3).unwrap();
        assert_eq!(via, direct);
        assert!(check_simplicial_identities(&direct).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn repackaging_is_an_isomorphism(shape in common::shapes()) {
        let c = shape.build();
        let f = wbar_repackaging(&c, 3).unwrap();
        prop_assert!(f.check().is_empty());
        prop_assert!(verify_iso(&f));
        prop_assert!(check_simplicial_identities(&f.target).is_empty());
    }

    #[test]
    fn nerve_sizes_match_path_counts(order in 1usize..=3, shape in common::shapes()) {
        let g = common::cyclic_group(order);
        let n = nerve_category(&g, 3).unwrap();
        for p in 0..=3 {
            prop_assert_eq!(n.len(p), oracles::composable_chains(&g, p));
        }
        let c = shape.build();
        let nn = double_nerve(&c, 3).unwrap();
        for p in 0..=3 {
            prop_assert_eq!(nn.len(p, 0), oracles::composable_chains(&c, p));
        }
    }
}

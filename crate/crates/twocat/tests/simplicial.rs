mod common;

use std::sync::Arc;

use proptest::prelude::*;
use twocat::corpus;
use twocat::nerves::{double_nerve, nerve_category};
use twocat::simplicial::{
    aw_map, check_simplicial_identities, diag, verify_iso, wbar, BisimplicialSet, SimplicialMap,
    Truncation,
};

use common::oracles;

/// Checks the codiagonal matching condition on a tuple of entries.
fn compatible(b: &BisimplicialSet, tuple: &[usize]) -> bool {
    let n = tuple.len() - 1;
    (0..n).all(|j| b.dh(n - j, j, 0, tuple[j]) == b.dv(n - j - 1, j + 1, j + 1, tuple[j + 1]))
}

#[test]
fn identities_on_nerves_of_the_point() {
    let p = corpus::pt();
    let n = nerve_category(&p, 4).unwrap();
    assert_eq!(n.sizes(), [1, 1, 1, 1, 1]);
    assert!(check_simplicial_identities(&n).is_empty());
}

#[test]
fn identities_on_the_double_nerve_of_the_walking_two_cell() {
    let nn = double_nerve(&corpus::walking_two_cell(), 4).unwrap();
    let r = check_simplicial_identities(&nn);
    assert!(r.is_empty(), "{r}");
}

#[test]
fn corrupted_face_is_reported() {
    let wa = corpus::walking_arrow();
    let mut n = nerve_category(&wa, 3).unwrap();
    assert!(check_simplicial_identities(&n).is_empty());
    let k = (0..n.len(2))
        .find(|&k| n.d(2, 0, k) != n.d(2, 1, k))
        .unwrap();
    let wrong = (0..n.len(1)).find(|&x| x != n.d(2, 0, k)).unwrap();
    n.inner_mut().set_face(&[2], 0, 0, k, wrong);
    let r = check_simplicial_identities(&n);
    assert!(!r.is_empty());
    let hit = r
        .violations()
        .iter()
        .find(|v| v.rule == "d_i d_j = d_{j-1} d_i" && v.detail.contains(&format!("simplex {k}")));
    assert!(hit.is_some(), "{r}");
}

#[test]
fn diagonal_examples() {
    let p = corpus::pt();
    let d = diag(&double_nerve(&p, 4).unwrap(), 4).unwrap();
    assert_eq!(d.sizes(), [1, 1, 1, 1, 1]);
    let wtc = corpus::walking_two_cell();
    let nn = double_nerve(&wtc, 3).unwrap();
    let d = diag(&nn, 3).unwrap();
    assert_eq!(d.len(1), 5);
    for n in 0..=3 {
        assert_eq!(d.len(n), oracles::grid_count(&wtc, n, n));
    }
    assert!(check_simplicial_identities(&d).is_empty());
}

#[test]
fn codiagonal_examples() {
    let p = corpus::pt();
    let w = wbar(&double_nerve(&p, 4).unwrap(), 4).unwrap();
    assert_eq!(w.sizes(), [1, 1, 1, 1, 1]);
    let wtc = corpus::walking_two_cell();
    let nn = double_nerve(&wtc, 4).unwrap();
    let w = wbar(&nn, 4).unwrap();
    assert_eq!(w.len(2), 7);
    for n in 0..=4 {
        assert_eq!(w.len(n), oracles::staircase_count(&wtc, n));
        for k in 0..w.len(n) {
            assert!(compatible(&nn, w.simplex_at(n, k)));
        }
    }
    assert!(check_simplicial_identities(&w).is_empty());
}

#[test]
fn codiagonal_rejects_a_shallow_input() {
    let nn = double_nerve(&corpus::walking_arrow(), 2).unwrap();
    assert!(wbar(&nn, 3).is_err());
    let tight = double_nerve(&corpus::walking_arrow(), Truncation::new(4).with_budget(3));
    assert!(tight.is_err());
}

#[test]
fn alexander_whitney_examples() {
    let p = corpus::pt();
    let aw = aw_map(&double_nerve(&p, 3).unwrap(), 3).unwrap();
    assert!(aw.check().is_empty());
    assert!(verify_iso(&aw));
    let wtc = corpus::walking_two_cell();
    let nn = double_nerve(&wtc, 3).unwrap();
    let aw = aw_map(&nn, 3).unwrap();
    assert!(aw.check().is_empty());
    assert_eq!(aw.levels[0], (0..nn.len(0, 0)).collect::<Vec<_>>());
    for k in 0..aw.source.len(2) {
        let image = aw.target.simplex_at(2, aw.apply(2, k));
        assert!(compatible(&nn, image));
    }
    assert!(aw.source.len(2) > aw.target.len(2));
    assert!(!verify_iso(&aw));
}

#[test]
fn identity_maps_are_isomorphisms() {
    let x = Arc::new(nerve_category(&corpus::walking_arrow(), 3).unwrap());
    let id = SimplicialMap::identity(&x);
    assert!(id.check().is_empty());
    assert!(verify_iso(&id));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn double_nerve_sizes_and_identities(shape in common::shapes()) {
        let c = shape.build();
        let nn = double_nerve(&c, 3).unwrap();
        for p in 0..=3 {
            for q in 0..=3 {
                prop_assert_eq!(nn.len(p, q), oracles::grid_count(&c, p, q));
            }
        }
        prop_assert!(check_simplicial_identities(&nn).is_empty());
    }

    #[test]
    fn codiagonal_is_simplicial_and_compatible(shape in common::shapes()) {
        let c = shape.build();
        let nn = double_nerve(&c, 3).unwrap();
        let w = wbar(&nn, 3).unwrap();
        prop_assert!(check_simplicial_identities(&w).is_empty());
        prop_assert_eq!(w.len(0), nn.len(0, 0));
        for n in 0..=3 {
            prop_assert_eq!(w.len(n), oracles::staircase_count(&c, n));
            for k in 0..w.len(n) {
                prop_assert!(compatible(&nn, w.simplex_at(n, k)));
            }
        }
        let aw = aw_map(&nn, 3).unwrap();
        prop_assert!(aw.check().is_empty());
        let d = diag(&nn, 3).unwrap();
        prop_assert_eq!(d.len(0), w.len(0));
    }
}

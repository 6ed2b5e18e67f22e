mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use twocat::category::{relabel, TwoCategory, TwoFunctor};
use twocat::comma::{comma, projections, Side};
use twocat::corpus;
use twocat::hocolim::{hocolim, hocolim_map};
use twocat::homology::{
    homology, induced_homology_map, is_homology_iso_upto, normalized_chain_complex, smith,
    HomologyError, HomologyResult, Matrix,
};
use twocat::nerves::{
    diag_nerve, diag_nerve_map, diag_nerve_simplicial, diag_nerve_simplicial_map, double_nerve,
    nerve_category,
};
use twocat::simplicial::{aw_map, SimplicialMap, SimplicialSet};

fn groups(x: &SimplicialSet, top: usize) -> Vec<HomologyResult> {
    let cc = normalized_chain_complex(x);
    assert!(cc.check().is_empty());
    (0..=top).map(|i| homology(&cc, i).unwrap()).collect()
}

fn point_like(x: &SimplicialSet) -> bool {
    let h = groups(x, 2);
    h[0].is_integers() && h[1].is_trivial() && h[2].is_trivial()
}

fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
    Arc::new(x)
}

#[test]
fn homology_of_a_point() {
    let x = nerve_category(&corpus::pt(), 4).unwrap();
    let cc = normalized_chain_complex(&x);
    assert_eq!(
        (0..=4).map(|n| cc.rank(n)).collect::<Vec<_>>(),
        [1, 0, 0, 0, 0]
    );
    assert!(point_like(&x));
}

#[test]
fn homology_of_the_walking_arrow() {
    let x = nerve_category(&corpus::walking_arrow(), 4).unwrap();
    let cc = normalized_chain_complex(&x);
    assert_eq!(
        (0..=4).map(|n| cc.rank(n)).collect::<Vec<_>>(),
        [2, 1, 0, 0, 0]
    );
    assert!(groups(&x, 3).iter().skip(1).all(HomologyResult::is_trivial));
    assert!(point_like(&x));
}

#[test]
fn boundaries_square_to_zero_on_the_walking_two_cell() {
    let x = diag_nerve(&corpus::walking_two_cell(), 4).unwrap();
    let cc = normalized_chain_complex(&x);
    assert!(cc.check().is_empty());
    assert!(point_like(&x));
}

#[test]
fn cyclic_groups_have_torsion() {
    for n in 2..=3u32 {
        let x = nerve_category(&common::cyclic_group(n as usize), 4).unwrap();
        let h = groups(&x, 3);
        assert!(h[0].is_integers());
        assert_eq!(h[1].betti, 0);
        assert_eq!(h[1].torsion, [BigInt::from(n)]);
        assert!(h[2].is_trivial());
        assert_eq!(h[3].torsion, [BigInt::from(n)]);
        assert_eq!(h[1].to_string(), format!("Z/{n}"));
    }
}

#[test]
fn degrees_beyond_the_truncation_are_refused() {
    let x = nerve_category(&corpus::walking_arrow(), 3).unwrap();
    let cc = normalized_chain_complex(&x);
    assert!(homology(&cc, 2).is_ok());
    assert!(matches!(
        homology(&cc, 3),
        Err(HomologyError::DegreeOutOfRange { degree: 3, .. })
    ));
    let shallow = nerve_category(&corpus::walking_arrow(), 0).unwrap();
    assert_eq!(
        homology(&normalized_chain_complex(&shallow), 0),
        Err(HomologyError::TooShallow)
    );
}

#[test]
fn identity_induces_identity() {
    let x = arc(nerve_category(&common::cyclic_group(2), 4).unwrap());
    let id = SimplicialMap::identity(&x);
    for i in 0..=2 {
        let m = induced_homology_map(&id, i).unwrap();
        let size = m.matrix.rows;
        assert_eq!(m.matrix, Matrix::identity(size));
    }
    assert_eq!(is_homology_iso_upto(&id, 3), Ok(true));
}

#[test]
fn collapsing_a_contractible_nerve() {
    let wa = corpus::walking_arrow();
    let p = corpus::pt();
    let source = arc(diag_nerve(&wa, 4).unwrap());
    let target = arc(diag_nerve(&p, 4).unwrap());
    let f = diag_nerve_map(&TwoFunctor::to_terminal(&wa, &p), &source, &target).unwrap();
    assert_eq!(is_homology_iso_upto(&f, 2), Ok(true));
    let m = induced_homology_map(&f, 0).unwrap();
    assert_eq!(m.matrix, Matrix::identity(1));
}

#[test]
fn collapsing_a_circle_is_not_an_isomorphism() {
    let g = common::cyclic_group(2);
    let p = corpus::pt();
    let source = arc(diag_nerve(&g, 3).unwrap());
    let target = arc(diag_nerve(&p, 3).unwrap());
    let f = diag_nerve_map(&TwoFunctor::to_terminal(&g, &p), &source, &target).unwrap();
    assert_eq!(is_homology_iso_upto(&f, 0), Ok(true));
    assert_eq!(is_homology_iso_upto(&f, 1), Ok(false));
}

#[test]
fn alexander_whitney_is_a_homology_isomorphism() {
    let nn = double_nerve(&corpus::walking_two_cell(), 4).unwrap();
    let aw = aw_map(&nn, 4).unwrap();
    assert_eq!(is_homology_iso_upto(&aw, 2), Ok(true));
    assert_eq!(
        induced_homology_map(&aw, 0).unwrap().matrix,
        Matrix::identity(1)
    );
}

#[test]
fn slices_are_contractible() {
    let wtc = corpus::walking_two_cell();
    let id = TwoFunctor::identity(&wtc);
    for c in 0..wtc.object_count() {
        for side in [Side::Over, Side::Under] {
            let m = comma(&id, c, side);
            let x = diag_nerve(m.category(), 4).unwrap();
            assert!(point_like(&x), "{side:?} {}", wtc.object_name(c));
        }
    }
}

#[test]
fn projection_from_the_total_fibre_is_a_homology_isomorphism() {
    let f = corpus::arrow_to_two_cell();
    for side in [Side::Over, Side::Under] {
        let p = projections(&f, side);
        let source = arc(diag_nerve(&p.total.category, 4).unwrap());
        let target = arc(diag_nerve(&f.source, 4).unwrap());
        let map = diag_nerve_map(&p.big_pi, &source, &target).unwrap();
        assert!(map.check().is_empty());
        assert_eq!(is_homology_iso_upto(&map, 2), Ok(true), "{side:?}");
    }
}

#[test]
fn isomorphic_diagrams_have_isomorphic_hocolims() {
    for d in [corpus::covariant_diagram(), corpus::contravariant_diagram()] {
        let gamma = corpus::relabelled(&d);
        let (h, k) = (hocolim(&d, 4), hocolim(&gamma.target, 4));
        let family = hocolim_map(&gamma, &h, &k);
        let source = arc(diag_nerve_simplicial(&h.simplicial, 4).unwrap());
        let target = arc(diag_nerve_simplicial(&k.simplicial, 4).unwrap());
        let map = diag_nerve_simplicial_map(&family, &source, &target).unwrap();
        assert!(map.check().is_empty());
        assert_eq!(is_homology_iso_upto(&map, 2), Ok(true));
    }
}

fn small_matrices() -> impl Strategy<Value = Matrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |v| Matrix {
            rows: r,
            cols: c,
            data: v
                .chunks(c)
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in small_matrices()) {
        let s = smith(&m);
        let d = s.left.mul(&m).mul(&s.right);
        for i in 0..d.rows {
            for j in 0..d.cols {
                let expected = if i == j && i < s.rank() { s.invariants[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(d.get(i, j), &expected);
            }
        }
        prop_assert_eq!(s.left.mul(&s.left_inv), Matrix::identity(m.rows));
        prop_assert_eq!(s.right.mul(&s.right_inv), Matrix::identity(m.cols));
        for w in s.invariants.windows(2) {
            prop_assert!(&w[1] % &w[0] == BigInt::from(0));
        }
        prop_assert!(s.invariants.iter().all(|x| *x > BigInt::from(0)));
    }

    #[test]
    fn diagonal_nerve_homology_matches_the_graph(shape in common::shapes()) {
        let c = shape.build();
        let x = diag_nerve(&c, 3).unwrap();
        let h = groups(&x, 2);
        let (b0, b1) = shape.graph_betti();
        prop_assert_eq!(h[0].betti, b0);
        prop_assert_eq!(h[1].betti, b1);
        prop_assert!(h[0].torsion.is_empty() && h[1].torsion.is_empty());
        prop_assert!(h[2].is_trivial());
    }

    #[test]
    fn relabelling_preserves_homology(shape in common::shapes()) {
        let c: Arc<TwoCategory> = shape.build();
        let (copy, iso) = relabel(&c, "'");
        let source = arc(diag_nerve(&c, 3).unwrap());
        let target = arc(diag_nerve(&copy, 3).unwrap());
        let f = diag_nerve_map(&iso, &source, &target).unwrap();
        prop_assert!(twocat::simplicial::verify_iso(&f));
        let (a, b) = (groups(&source, 2), groups(&target, 2));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(x.same_group(y));
        }
        prop_assert_eq!(is_homology_iso_upto(&f, 1), Ok(true));
    }

    #[test]
    fn alexander_whitney_on_random_shapes(shape in common::shapes()) {
        let c = shape.build();
        let aw = aw_map(&double_nerve(&c, 3).unwrap(), 3).unwrap();
        prop_assert_eq!(is_homology_iso_upto(&aw, 1), Ok(true));
    }
}

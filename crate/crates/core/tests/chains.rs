mod common;

use common::{betti, rank, trimmed};
use descent::chain::{classical_cone, direct_sum, shift, ChainComplex, ChainMap};
use descent::exactla::Matrix;
use descent::random::Gen;
use proptest::prelude::*;

#[test]
fn exact_two_term_complex() {
    let c = ChainComplex::new(vec![1, 1], vec![Matrix::from_i64(1, 1, &[3])]).unwrap();
    assert!(c.is_acyclic());
    assert_eq!(c.euler_characteristic(), 0);
    let bad = ChainComplex::new(
        vec![1, 1, 1],
        vec![Matrix::from_i64(1, 1, &[1]), Matrix::from_i64(1, 1, &[1])],
    );
    assert!(bad.is_err(), "d_1 d_2 is not zero");
}

#[test]
fn non_chain_maps_are_rejected() {
    let c = ChainComplex::new(vec![1, 1], vec![Matrix::from_i64(1, 1, &[1])]).unwrap();
    let z = ChainComplex::concentrated(0, 1);
    // identity in degree 0 only does not commute with d_1
    assert!(ChainMap::new(
        &c,
        &z,
        vec![Matrix::from_i64(1, 1, &[1]), Matrix::zeros(0, 1)]
    )
    .is_err());
}

fn gen(seed: u64) -> Gen {
    Gen::new(seed, 5, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differentials_square_to_zero(seed in any::<u64>()) {
        let c = gen(seed).complex();
        for n in 2..c.len() {
            prop_assert!((&*c.d(n - 1) * &*c.d(n)).is_zero());
        }
    }

    #[test]
    fn homology_matches_ranks(seed in any::<u64>()) {
        let c = gen(seed).complex();
        prop_assert_eq!(trimmed(&c.betti()), betti(&c));
        let alternating: i64 = c.betti().iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(c.euler_characteristic(), alternating);
    }

    #[test]
    fn equivalence_iff_classical_cone_is_acyclic(seed in any::<u64>()) {
        let mut g = gen(seed);
        let a = g.complex();
        let f = if g.coin(0.5) { g.qis_from(&a) } else { let b = g.complex(); g.map(&a, &b) };
        let cone = classical_cone(&f).cone;
        prop_assert_eq!(f.is_qis(), betti(&cone).is_empty());
    }

    #[test]
    fn homology_is_functorial(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b, c) = (g.complex(), g.complex(), g.complex());
        let (f, h) = (g.map(&a, &b), g.map(&b, &c));
        let lhs = f.then(&h).induced_homology();
        let rhs = h.induced_homology().compose(&f.induced_homology()).unwrap();
        prop_assert!(lhs.same_as(&rhs));
        prop_assert!(ChainMap::identity(&a).induced_homology().is_identity());
    }

    #[test]
    fn quasi_inverses(seed in any::<u64>()) {
        let mut g = gen(seed);
        let a = g.complex();
        let f = g.qis_from(&a);
        prop_assert!(f.is_qis());
        let inv = f.quasi_inverse().unwrap();
        prop_assert!(f.then(&inv).induced_homology().is_identity());
        prop_assert!(inv.then(&f).induced_homology().is_identity());
    }

    #[test]
    fn null_homotopic_maps_vanish_on_homology(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        let h = g.null_homotopic(&a, &b);
        prop_assert!(h.induced_homology().is_zero());
        let s = h.null_homotopy().expect("null-homotopic by construction");
        prop_assert!(h.is_homotopy(&ChainMap::zero(&a, &b), &s));
    }

    #[test]
    fn sums_and_shifts(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        let sum = direct_sum(&[&a, &b]).sum;
        let (ha, hb) = (betti(&a), betti(&b));
        let expected: Vec<usize> = (0..ha.len().max(hb.len())).map(|n| ha.get(n).unwrap_or(&0) + hb.get(n).unwrap_or(&0)).collect();
        prop_assert_eq!(betti(&sum), expected);
        let mut shifted = vec![0];
        shifted.extend(ha.iter().copied());
        prop_assert_eq!(betti(&shift(&a, 1)), trimmed(&shifted));
    }

    #[test]
    fn maps_round_trip_through_json(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        let f = g.map(&a, &b);
        let back: ChainMap = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back.comps(), f.comps());
        prop_assert_eq!(back.source(), f.source());
        let ranks: Vec<usize> = f.comps().iter().map(rank).collect();
        prop_assert_eq!(ranks, back.comps().iter().map(Matrix::rank).collect::<Vec<_>>());
    }
}

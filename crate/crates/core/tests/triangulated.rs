mod common;

use common::{betti, trimmed};
use descent::chain::{ChainComplex, ChainMap, GradedMap};
use descent::cogroup::{abelian_check, coaction, comultiplication};
use descent::homotopy::{are_homotopic, ore_square, roof_equal, Roof};
use descent::random::Gen;
use descent::triangles::{
    cofiber_of_map, cofiber_triangle, minus, minus_is_negation, octahedron, suspend, suspend_map,
    verify_les,
};
use proptest::prelude::*;

fn gen(seed: u64) -> Gen {
    Gen::new(seed, 4, 3)
}

fn roof(g: &mut Gen, a: &ChainComplex, b: &ChainComplex) -> Roof {
    let e = g.qis_from(b);
    let f = g.map(a, e.target());
    Roof::new(f, e).unwrap()
}

#[test]
fn roofs_need_an_equivalence_backwards() {
    let a = ChainComplex::concentrated(0, 1);
    let zero = ChainMap::zero(&a, &a);
    assert!(Roof::new(ChainMap::identity(&a), zero).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ore_squares_commute_up_to_homotopy(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        let (e, f) = (g.qis_from(&a), g.map(&a, &b));
        let s = ore_square(&f, &e).unwrap();
        prop_assert!(s.i().is_qis());
        prop_assert!(s.homotopy.joins(&f.then(s.i()), &e.then(s.j())));
        prop_assert!(f.then(s.i()).induced_homology().same_as(&e.then(s.j()).induced_homology()));
    }

    #[test]
    fn roof_composition_is_composition_on_homology(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b, c) = (g.complex(), g.complex(), g.complex());
        let (r1, r2) = (roof(&mut g, &a, &b), roof(&mut g, &b, &c));
        let both = r2.compose(&r1).unwrap();
        let e1 = r1.backward.induced_homology().inverse().unwrap().compose(&r1.forward.induced_homology()).unwrap();
        let e2 = r2.backward.induced_homology().inverse().unwrap().compose(&r2.forward.induced_homology()).unwrap();
        prop_assert!(both.graded().same_as(&e2.compose(&e1).unwrap()));
        prop_assert!(roof_equal(&Roof::identity(&b).compose(&r1).unwrap(), &r1));
    }

    #[test]
    fn roofs_round_trip_through_json(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        let r = roof(&mut g, &a, &b);
        let back: Roof = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert!(roof_equal(&back, &r));
        prop_assert_eq!(back.forward.comps(), r.forward.comps());
    }

    #[test]
    fn homotopic_maps_are_found(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        let f = g.map(&a, &b);
        let f2 = f.add(&g.null_homotopic(&a, &b)).unwrap();
        let found = are_homotopic(&f, &f2, 1).unwrap();
        let h = found.witness().expect("homotopic by construction");
        prop_assert!(h.joins(&f, &f2) || h.joins(&f2, &f));
    }

    #[test]
    fn cofiber_sequences_are_exact(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        let f = g.map(&a, &b);
        let t = cofiber_of_map(&f).unwrap();
        prop_assert!(t.check_shape().is_ok());
        prop_assert!(verify_les(&t).unwrap().exact());
        let r = roof(&mut g, &a, &b);
        prop_assert!(verify_les(&cofiber_triangle(&r).unwrap()).unwrap().exact());
    }

    #[test]
    fn suspension_shifts_degrees(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        let sa = suspend(&a).unwrap();
        let mut shifted = vec![0];
        shifted.extend(betti(&a));
        prop_assert_eq!(betti(&sa), trimmed(&shifted));
        let f = g.map(&a, &b);
        let sf = suspend_map(&f).unwrap();
        let (h, sh) = (f.induced_homology(), sf.induced_homology());
        for n in 0..betti(&a).len() {
            let rank = |m: Option<&descent::exactla::Matrix>| m.map_or(0, |m| m.rank());
            prop_assert_eq!(rank(h.block(n)), rank(sh.block(n + 1)));
        }
    }

    #[test]
    fn minus_map_is_negation(seed in any::<u64>()) {
        let b = gen(seed).complex();
        let m = minus(&b).unwrap();
        prop_assert!(minus_is_negation(&m));
        prop_assert!(roof_equal(&m.m.compose(&m.m).unwrap(), &Roof::identity(m.m.source())));
    }

    #[test]
    fn octahedral_comparison_is_an_equivalence(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 3, 2);
        let (a, b, c) = (g.complex(), g.complex(), g.complex());
        let (u, v) = (g.map(&a, &b), g.map(&b, &c));
        let oct = octahedron(&u, &v).unwrap();
        prop_assert!(oct.psi_is_qis);
        prop_assert!(verify_les(&oct.triangle).unwrap().exact());
    }

    #[test]
    fn cogroup_laws(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 3, 2);
        let a = g.complex();
        let d = comultiplication(&a).unwrap();
        prop_assert!(d.counit_check().unwrap());
        prop_assert!(d.inverse_check().unwrap());
        prop_assert!(d.coassoc_check().unwrap());
        prop_assert!(abelian_check(&a).unwrap());
        let b = g.complex();
        let co = coaction(&g.map(&a, &b)).unwrap();
        prop_assert!(co.counit_check());
    }

    #[test]
    fn sum_of_maps_adds_on_homology(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 3, 2);
        let (a, b) = (g.complex(), g.complex());
        let d = comultiplication(&a).unwrap();
        let (sa, sb) = (d.suspension.clone(), suspend(&b).unwrap());
        let (f, h) = (g.map(&sa, &sb), g.map(&sa, &sb));
        let sum = d.sum_of_maps(&Roof::from_map(&f), &Roof::from_map(&h)).unwrap();
        let expected: GradedMap = f.induced_homology().add(&h.induced_homology()).unwrap();
        prop_assert!(sum.graded().same_as(&expected));
    }
}

mod common;

use common::{betti, trimmed};
use descent::chain::ChainMap;
use descent::error::Error;
use descent::random::Gen;
use descent::simpobj::bisimplicial::{unit_composites, Bisimplicial};
use descent::simpobj::cyl::{cone_const, cyl_const};
use descent::simpobj::{constant, coproduct, unit};
use descent::simpsets::{circle, delta, product};
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn standard_simplices_count_monotone_maps() {
    for n in 0..=3 {
        let d = delta(n, 4).unwrap();
        for k in 0..=4 {
            // nondecreasing maps [k] -> [n]
            assert_eq!(d.size(k), binomial(n + k + 1, k + 1), "Δ[{n}]_{k}");
        }
        assert_eq!(d.nondegenerate(n).len(), 1);
    }
}

#[test]
fn simplicial_identities_on_sets() {
    let sets = [
        delta(2, 4).unwrap(),
        circle(4).unwrap().object,
        product(&delta(1, 4).unwrap(), &delta(1, 4).unwrap())
            .unwrap()
            .object,
    ];
    for k in &sets {
        for n in 2..=k.truncation() {
            for x in 0..k.size(n) {
                for j in 1..=n {
                    for i in 0..j {
                        assert_eq!(
                            k.face(n - 1, i, k.face(n, j, x)),
                            k.face(n - 1, j - 1, k.face(n, i, x))
                        );
                    }
                }
            }
        }
        for n in 0..k.truncation() {
            for x in 0..k.size(n) {
                for j in 0..=n {
                    let s = k.degen(n, j, x);
                    assert_eq!(k.face(n + 1, j, s), x);
                    assert_eq!(k.face(n + 1, j + 1, s), x);
                }
            }
        }
    }
}

#[test]
fn too_shallow_truncations_are_errors() {
    let f = ChainMap::identity(&Gen::new(1, 3, 2).complex());
    let shallow = cyl_const(&f, &f, 1).unwrap().object.simple();
    assert!(matches!(
        shallow,
        Err(Error::Truncation {
            needed: 2,
            available: 1
        })
    ));
    assert!(cyl_const(&f, &f, 2).unwrap().object.simple().is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_objects_are_simplicial(seed in any::<u64>()) {
        let x = Gen::new(seed, 3, 2).simplicial(3);
        prop_assert!(x.check_identities().is_ok());
    }

    #[test]
    fn moore_complex_has_the_same_homology(seed in any::<u64>()) {
        let x = Gen::new(seed, 3, 2).simplicial(3);
        let normalized = x.simple().unwrap();
        let (moore, _) = x.moore().unwrap();
        prop_assert_eq!(trimmed(&normalized.complex.betti()), betti(&moore));
    }

    #[test]
    fn simple_of_a_constant_object(seed in any::<u64>()) {
        let a = Gen::new(seed, 5, 3).complex();
        let s = constant(&a, 3).simple().unwrap();
        prop_assert_eq!(&s.complex, &a);
        let (lambda, rho) = unit(&a, 3).unwrap();
        prop_assert!(lambda.is_qis() && rho.is_qis());
    }

    #[test]
    fn cone_of_the_identity_is_acyclic(seed in any::<u64>()) {
        let a = Gen::new(seed, 4, 3).complex();
        let c = cone_const(&ChainMap::identity(&a), 3).unwrap();
        prop_assert!(betti(&c.object.simple().unwrap().complex).is_empty());
    }

    #[test]
    fn cone_of_an_equivalence_is_acyclic(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 4, 3);
        let a = g.complex();
        let f = g.qis_from(&a);
        let c = cone_const(&f, 3).unwrap();
        prop_assert!(betti(&c.object.simple().unwrap().complex).is_empty());
    }

    #[test]
    fn simple_preserves_coproducts(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 3, 2);
        let (x, y) = (g.simplicial(3), g.simplicial(3));
        let (xy, _, _) = coproduct(&x, &y);
        let (hx, hy) = (betti(&x.simple().unwrap().complex), betti(&y.simple().unwrap().complex));
        let sum: Vec<usize> = (0..hx.len().max(hy.len())).map(|n| hx.get(n).unwrap_or(&0) + hy.get(n).unwrap_or(&0)).collect();
        prop_assert_eq!(betti(&xy.simple().unwrap().complex), sum);
    }

    #[test]
    fn comparison_map_is_an_equivalence(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 2, 1);
        let (x, y) = (g.simplicial(3), g.simplicial(3));
        let z = Bisimplicial::tensor(&x, &y);
        prop_assert!(z.check().is_ok());
        prop_assert!(z.aw_map().unwrap().is_qis());
    }

    #[test]
    fn unit_composites_are_identities(seed in any::<u64>()) {
        let x = Gen::new(seed, 3, 2).simplicial(3);
        for c in unit_composites(&x).unwrap() {
            prop_assert!(c.induced_homology().is_identity());
        }
    }
}

mod common;

use common::{betti, rank, trimmed};
use descent::chain::classical_cone;
use descent::exactla::{Matrix, Subspace};
use descent::filtered::{
    coarsening, converges, dec, dec_reindex, fiber_sequence, next_page_matches, page, path,
    random_filtered, Cochain, FilteredComplex, FilteredMap, PathFiltration,
};
use descent::random::Gen;
use proptest::prelude::*;

/// `A^0 = Q x -> A^1 = Q y`, `dx = y`, with `F^1 A^1 = A^1` and `F^1 A^0 = 0`.
fn two_term() -> FilteredComplex {
    let a = Cochain::new(vec![1, 1], vec![Matrix::from_i64(1, 1, &[1])]).unwrap();
    FilteredComplex::new(a, 1, vec![vec![Subspace::zero(1), Subspace::full(1)]]).unwrap()
}

#[test]
fn two_term_example() {
    let f = two_term();
    let e1 = page(&f, 1);
    assert_eq!(
        e1.dims().into_iter().collect::<Vec<_>>(),
        vec![((0, 0), 1), ((1, 0), 1)]
    );
    assert!(e1.d_r[&(0, 0)].is_invertible());
    assert!(page(&f, 2).dims().is_empty());
    assert!(page(&dec(&f).unwrap(), 1).dims().is_empty());
}

#[test]
fn trivial_filtration_has_cohomology_on_the_first_page() {
    let c = Gen::new(3, 5, 4).complex();
    let a = Cochain::dual_of(&c);
    assert_eq!(trimmed(&a.cohomology_dims()), betti(&c));
    let e1 = page(&FilteredComplex::trivial(a.clone()), 1);
    for ((p, q), k) in e1.dims() {
        assert_eq!(p, 0);
        assert_eq!(k, a.cohomology_dims()[q as usize]);
    }
}

/// `dim F^{p+n} A^n` minus the rank of `d` on it modulo `F^{p+n+1} A^{n+1}`.
fn dec_dim(f: &FilteredComplex, p: i64, n: i64) -> usize {
    let here = f.level(p + n, n);
    let next = f.level(p + n + 1, n + 1);
    let rows = f.complex.dim(n + 1);
    let image = if rows == 0 {
        Matrix::zeros(0, here.dim())
    } else {
        &f.complex.d(n) * here.basis()
    };
    let joint = Matrix::hstack(rows, &[&image, next.basis()]);
    here.dim() - (rank(&joint) - rank(next.basis()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pages_are_homology_of_the_previous_page(seed in any::<u64>(), steps in 1usize..=3) {
        let f = random_filtered(&mut Gen::new(seed, 5, 4), steps);
        for r in 1..=f.length() + 1 {
            prop_assert!(next_page_matches(&page(&f, r), &page(&f, r + 1)));
        }
        prop_assert!(converges(&f));
    }

    #[test]
    fn decalage_matches_its_defining_formula(seed in any::<u64>(), steps in 1usize..=3) {
        let f = random_filtered(&mut Gen::new(seed, 5, 4), steps);
        let d = dec(&f).unwrap();
        let top = f.complex.len() as i64;
        for p in (d.lo() - 2)..=(d.hi() + 1) {
            for n in 0..top {
                prop_assert_eq!(d.level(p, n).dim(), dec_dim(&f, p, n), "p = {}, n = {}", p, n);
            }
        }
    }

    #[test]
    fn decalage_lowers_pages_by_one(seed in any::<u64>(), steps in 1usize..=3) {
        let f = random_filtered(&mut Gen::new(seed, 5, 4), steps);
        let (e1, e2) = (page(&dec(&f).unwrap(), 1), page(&f, 2));
        for ((p, q), k) in e1.dims() {
            let (p2, q2) = dec_reindex(p, q);
            prop_assert_eq!(e2.dim(p2, q2), k);
        }
        prop_assert_eq!(e1.dims().values().sum::<usize>(), e2.dims().values().sum::<usize>());
    }

    #[test]
    fn fiber_sequences_are_exact_on_the_first_page(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 4, 3);
        let f = random_filtered(&mut g, 2);
        let m = coarsening(&mut g, &f);
        prop_assert!(fiber_sequence(&m, PathFiltration::M).unwrap().e1_exact());
        prop_assert!(fiber_sequence(&m, PathFiltration::N).unwrap().e1_exact());
    }

    #[test]
    fn path_of_a_dual_map_is_the_dual_cone(seed in any::<u64>()) {
        let mut g = Gen::new(seed, 4, 3);
        let (a, b) = (g.complex(), g.complex());
        let f = g.map(&a, &b);
        let (da, db) = (FilteredComplex::trivial(Cochain::dual_of(&a)), FilteredComplex::trivial(Cochain::dual_of(&b)));
        let dual = FilteredMap::dual_of(&f, &db, &da).unwrap();
        let zero = FilteredComplex::trivial(Cochain::zero());
        let p = path(&dual, &FilteredMap::zero(&zero, &da), PathFiltration::M).unwrap();
        let cone = classical_cone(&f).cone;
        prop_assert_eq!(&p.object.complex, &Cochain::dual_of(&cone));
        prop_assert_eq!(trimmed(&p.object.complex.cohomology_dims()), betti(&cone));
    }

    #[test]
    fn filtered_complexes_round_trip_through_json(seed in any::<u64>()) {
        let f = random_filtered(&mut Gen::new(seed, 4, 3), 2);
        let back: FilteredComplex = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(page(&back, 1).dims(), page(&f, 1).dims());
        for p in f.lo()..f.hi() {
            for n in 0..f.complex.len() as i64 {
                prop_assert!(back.level(p, n).same_as(&f.level(p, n)));
            }
        }
    }
}

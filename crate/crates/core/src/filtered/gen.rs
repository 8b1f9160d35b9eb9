//! Seeded filtered complexes and maps.

use crate::chain::ChainComplex;
use crate::exactla::{Matrix, Subspace};
use crate::random::Gen;

use super::{Cochain, FilteredComplex, FilteredMap};

/// The chain complex whose dual is `c`.
fn predual(c: &Cochain) -> ChainComplex {
    let dims = c.dims().to_vec();
    let d = (1..dims.len() as i64)
        .map(|n| c.d(n - 1).transpose())
        .collect();
    ChainComplex::new(dims, d).expect("dual of a cochain complex")
}

/// Span of a few random vectors per degree and their differentials, which
/// is stable under `d`.
fn random_closed(g: &mut Gen, c: &Cochain) -> Vec<Subspace> {
    let gens: Vec<Matrix> = (0..c.len() as i64)
        .map(|n| {
            let k = g.below(2) + usize::from(g.coin(0.3));
            g.sparse(c.dim(n), k, 0.6)
        })
        .collect();
    (0..c.len() as i64)
        .map(|n| {
            let own = &gens[n as usize];
            let hit = if n > 0 {
                &c.d(n - 1) * &gens[n as usize - 1]
            } else {
                Matrix::zeros(c.dim(0), 0)
            };
            Subspace::span(c.dim(n), &Matrix::hstack(c.dim(n), &[own, &hit]))
        })
        .collect()
}

fn add_levels(a: &[Subspace], b: &[Subspace]) -> Vec<Subspace> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.sum(y).expect("same ambient"))
        .collect()
}

/// Steps `F^0 = A ⊇ F^1 ⊇ ... ⊇ F^steps = 0` built from the top down,
/// each containing `floor(p)`.
fn build(
    g: &mut Gen,
    c: &Cochain,
    steps: usize,
    floor: &dyn Fn(i64) -> Vec<Subspace>,
) -> FilteredComplex {
    let full: Vec<Subspace> = c.dims().iter().map(|&k| Subspace::full(k)).collect();
    let mut levels = vec![full];
    let mut above: Vec<Subspace> = c.dims().iter().map(|&k| Subspace::zero(k)).collect();
    let mut rest = Vec::new();
    for p in (1..steps as i64).rev() {
        let fresh = random_closed(g, c);
        above = add_levels(&add_levels(&above, &fresh), &floor(p));
        rest.push(above.clone());
    }
    rest.reverse();
    levels.extend(rest);
    FilteredComplex::new(c.clone(), 0, levels).expect("saturated filtration")
}

/// A random filtered complex with `F^0 = A` and `F^steps = 0`.
pub fn random_filtered(g: &mut Gen, steps: usize) -> FilteredComplex {
    let c = Cochain::dual_of(&g.complex());
    build(g, &c, steps, &|_| {
        c.dims().iter().map(|&k| Subspace::zero(k)).collect()
    })
}

/// A random filtered map out of `source`; the target filtration is
/// saturated by the images of `F^p`.
pub fn random_filtered_map(g: &mut Gen, source: &FilteredComplex, steps: usize) -> FilteredMap {
    let xc = predual(&source.complex);
    let yc = g.complex();
    let h = g.map(&yc, &xc);
    let y = Cochain::dual_of(&yc);
    let comps: Vec<Matrix> = (0..source.complex.len())
        .map(|n| h.comp(n).transpose())
        .collect();
    let image = |p: i64| -> Vec<Subspace> {
        (0..y.len() as i64)
            .map(|n| {
                let m = super::comp(&comps, n, y.dim(n), source.complex.dim(n));
                source.level(p, n).image_under(&m).expect("shapes agree")
            })
            .collect()
    };
    let steps = steps.max(source.hi().max(1) as usize);
    let target = build(g, &y, steps, &image);
    FilteredMap::new(source, &target, comps).expect("target filtration contains the image")
}

/// The identity onto a coarser filtration `G^p = F^p + (random)`.
pub fn coarsening(g: &mut Gen, f: &FilteredComplex) -> FilteredMap {
    let c = f.complex.clone();
    let steps = f.hi().max(1) as usize;
    let target = build(g, &c, steps, &|p| {
        (0..c.len() as i64).map(|n| f.level(p, n)).collect()
    });
    FilteredMap::new(
        f,
        &target,
        c.dims().iter().map(|&k| Matrix::identity(k)).collect(),
    )
    .expect("coarser filtration")
}

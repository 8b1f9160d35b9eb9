//! Path objects `B ×_A C` with the filtrations `M` and `N`, loops and
//! fiber sequences.

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};

use super::{induced_on_page, page, Cochain, FilteredComplex, FilteredMap};

/// `M` keeps `F^p` on the middle summand, `N` uses `F^{p-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathFiltration {
    M,
    N,
}

impl PathFiltration {
    fn middle_shift(self) -> i64 {
        match self {
            PathFiltration::M => 0,
            PathFiltration::N => 1,
        }
    }
}

fn direct_sum(parts: &[Subspace]) -> Subspace {
    let ambient = parts.iter().map(Subspace::ambient).sum();
    let bases: Vec<&Matrix> = parts.iter().map(Subspace::basis).collect();
    Subspace::span(ambient, &Matrix::block_diag(&bases))
}

/// `path(f, g)^n = B^n ⊕ A^{n-1} ⊕ C^n` for `f : B -> A`, `g : C -> A`,
/// with `D(b, a, c) = (db, f b - g c - da, dc)`.
#[derive(Clone, Debug)]
pub struct Path {
    pub object: FilteredComplex,
    pub to_first: FilteredMap,
    pub to_second: FilteredMap,
}

pub fn path(f: &FilteredMap, g: &FilteredMap, kind: PathFiltration) -> Result<Path> {
    if f.target != g.target {
        return Err(Error::DimensionMismatch(
            "path needs maps into the same filtered complex".into(),
        ));
    }
    let (b, a, c) = (&f.source, &f.target, &g.source);
    let (bc, ac, cc) = (&b.complex, &a.complex, &c.complex);
    let len = bc.len().max(ac.len() + 1).max(cc.len());
    let dims: Vec<usize> = (0..len as i64)
        .map(|n| bc.dim(n) + ac.dim(n - 1) + cc.dim(n))
        .collect();
    let part =
        |comps: &[Matrix], n: i64, rows: usize, cols: usize| super::comp(comps, n, rows, cols);
    let d = (0..len as i64)
        .map(|n| {
            let rows = dims.get(n as usize + 1).copied().unwrap_or(0);
            let mut m = Matrix::zeros(rows, dims[n as usize]);
            if rows == 0 {
                return m;
            }
            let (r_a, r_c) = (bc.dim(n + 1), bc.dim(n + 1) + ac.dim(n));
            let (c_a, c_c) = (bc.dim(n), bc.dim(n) + ac.dim(n - 1));
            m.set_block(0, 0, &bc.d(n));
            m.set_block(r_a, 0, &part(&f.comps, n, ac.dim(n), bc.dim(n)));
            m.set_block(r_a, c_a, &-&ac.d(n - 1));
            m.set_block(r_a, c_c, &-&part(&g.comps, n, ac.dim(n), cc.dim(n)));
            m.set_block(r_c, c_c, &cc.d(n));
            m
        })
        .collect();
    let complex = Cochain::new(dims, d)?;
    let s = kind.middle_shift();
    let lo = b.lo().min(a.lo() + s).min(c.lo());
    let hi = b.hi().max(a.hi() + s).max(c.hi());
    let object = FilteredComplex::from_rule(complex, lo, hi, |p, n| {
        direct_sum(&[b.level(p, n), a.level(p - s, n - 1), c.level(p, n)])
    })?;
    let projection =
        |target: &FilteredComplex, offset: &dyn Fn(i64) -> usize| -> Result<FilteredMap> {
            let comps = (0..len as i64)
                .map(|n| {
                    let mut m = Matrix::zeros(target.complex.dim(n), object.complex.dim(n));
                    m.set_block(0, offset(n), &Matrix::identity(target.complex.dim(n)));
                    m
                })
                .collect();
            FilteredMap::new(&object, target, comps)
        };
    let to_first = projection(b, &|_| 0)?;
    let to_second = projection(c, &|n| bc.dim(n) + ac.dim(n - 1))?;
    Ok(Path {
        object,
        to_first,
        to_second,
    })
}

fn zero_filtered() -> FilteredComplex {
    FilteredComplex::trivial(Cochain::zero())
}

/// `ΩX = path(0 -> X <- 0)`, the desuspension of `X` with `F^p` or
/// `F^{p-1}` in degree `n` taken from `X^{n-1}`.
pub fn loop_object(x: &FilteredComplex, kind: PathFiltration) -> Result<FilteredComplex> {
    let zero = FilteredMap::zero(&zero_filtered(), x);
    Ok(path(&zero, &zero, kind)?.object)
}

/// `ΩY -> path(f) -> X -> Y` for `f : X -> Y`.
pub struct FiberSequence {
    pub loop_target: FilteredComplex,
    pub path: Path,
    pub inclusion: FilteredMap,
    pub projection: FilteredMap,
    pub map: FilteredMap,
}

pub fn fiber_sequence(f: &FilteredMap, kind: PathFiltration) -> Result<FiberSequence> {
    let y = &f.target;
    let zero = FilteredMap::zero(&zero_filtered(), y);
    let p = path(f, &zero, kind)?;
    let loop_target = loop_object(y, kind)?;
    let xc = &f.source.complex;
    let comps = (0..loop_target.complex.len() as i64)
        .map(|n| {
            let mut m = Matrix::zeros(p.object.complex.dim(n), loop_target.complex.dim(n));
            m.set_block(xc.dim(n), 0, &Matrix::identity(loop_target.complex.dim(n)));
            m
        })
        .collect();
    let inclusion = FilteredMap::new(&loop_target, &p.object, comps)?;
    let projection = p.to_first.clone();
    Ok(FiberSequence {
        loop_target,
        path: p,
        inclusion,
        projection,
        map: f.clone(),
    })
}

fn exact(a: Option<&Matrix>, b: Option<&Matrix>, middle: usize) -> bool {
    let ra = a.map_or(0, Matrix::rank);
    let rb = b.map_or(0, Matrix::rank);
    let zero = match (a, b) {
        (Some(a), Some(b)) if a.rows() > 0 && b.cols() > 0 => (b * a).is_zero(),
        _ => true,
    };
    zero && ra + rb == middle
}

impl FiberSequence {
    /// Exactness of `E_1(ΩY) -> E_1(path) -> E_1(X) -> E_1(ΩY)[1]` in
    /// each filtration degree, the last map induced by `f`.
    pub fn e1_exact(&self) -> bool {
        let e_loop = page(&self.loop_target, 1);
        let e_path = page(&self.path.object, 1);
        let e_x = page(&self.map.source, 1);
        let comps = |m: &FilteredMap| {
            let m = m.clone();
            move |n: i64| {
                super::comp(
                    &m.comps,
                    n,
                    m.target.complex.dim(n),
                    m.source.complex.dim(n),
                )
            }
        };
        let iota = induced_on_page(&e_loop, &e_path, &comps(&self.inclusion), 0);
        let pi = induced_on_page(&e_path, &e_x, &comps(&self.projection), 0);
        // X^n -> Y^n = (ΩY)^{n+1}
        let f = self.map.clone();
        let lc = self.loop_target.complex.clone();
        let delta_comps =
            move |n: i64| super::comp(&f.comps, n, lc.dim(n + 1), f.source.complex.dim(n));
        let delta = induced_on_page(&e_x, &e_loop, &delta_comps, 1);
        let keys: std::collections::BTreeSet<(i64, i64)> = e_loop
            .dims()
            .keys()
            .chain(e_path.dims().keys())
            .chain(e_x.dims().keys())
            .copied()
            .collect();
        keys.into_iter().all(|(p, q)| {
            exact(iota.get(&(p, q)), pi.get(&(p, q)), e_path.dim(p, q))
                && exact(pi.get(&(p, q)), delta.get(&(p, q)), e_x.dim(p, q))
                && exact(delta.get(&(p, q - 1)), iota.get(&(p, q)), e_loop.dim(p, q))
        })
    }
}

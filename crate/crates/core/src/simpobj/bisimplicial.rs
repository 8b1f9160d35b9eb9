//! Bisimplicial chain complexes, their diagonal, the iterated simple and the
//! Alexander-Whitney comparison between the two totalizations.
//!
//! `p` is the horizontal index and `q` the vertical one. The iterated simple
//! totalizes each column first, so a coordinate of `Z_{p,q}` in internal
//! degree `r` carries the differential
//! `d + (-1)^r (∂_v + (-1)^q ∂_h)`.

use std::sync::{Arc, OnceLock};

use crate::chain::{sign, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactla::Matrix;

use super::{Simple, SimplicialMap, SimplicialObject};

/// `A ⊗ B` with degree `n` laid out as `⊕_a A_a ⊗ B_{n-a}`, `a` ascending,
/// and `d(x ⊗ y) = dx ⊗ y + (-1)^a x ⊗ dy`.
pub fn tensor_product(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    if a.is_empty() || b.is_empty() {
        return ChainComplex::zero();
    }
    let len = a.len() + b.len() - 1;
    let offs = tensor_offsets(a, b, len);
    let dims: Vec<usize> = (0..len)
        .map(|n| (0..=n).map(|i| a.dim(i) * b.dim(n - i)).sum())
        .collect();
    let mut diffs = Vec::new();
    for n in 1..len {
        let mut m = Matrix::zeros(dims[n - 1], dims[n]);
        for i in 0..=n {
            let j = n - i;
            if a.dim(i) * b.dim(j) == 0 {
                continue;
            }
            if i >= 1 {
                m.add_block(
                    offs[n - 1][i - 1],
                    offs[n][i],
                    &a.d(i).kron(&Matrix::identity(b.dim(j))),
                );
            }
            if j >= 1 {
                m.add_block(
                    offs[n - 1][i],
                    offs[n][i],
                    &Matrix::identity(a.dim(i)).kron(&b.d(j)).scale(&sign(i)),
                );
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(dims, diffs).expect("tensor product of complexes")
}

// offs[n][a]: where A_a ⊗ B_{n-a} starts in degree n
fn tensor_offsets(a: &ChainComplex, b: &ChainComplex, len: usize) -> Vec<Vec<usize>> {
    (0..len)
        .map(|n| {
            let mut run = 0;
            (0..=n)
                .map(|i| {
                    let here = run;
                    run += a.dim(i) * b.dim(n - i);
                    here
                })
                .collect()
        })
        .collect()
}

/// `f ⊗ g` between tensor products.
pub fn tensor_maps(
    f: &ChainMap,
    g: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
) -> ChainMap {
    let (a, b, a2, b2) = (f.source(), g.source(), f.target(), g.target());
    let so = tensor_offsets(a, b, source.len());
    let to = tensor_offsets(a2, b2, target.len());
    let len = source.len().min(target.len());
    let comps = (0..len)
        .map(|n| {
            let mut m = Matrix::zeros(target.dim(n), source.dim(n));
            for i in 0..=n {
                let blk = f.comp(i).kron(&g.comp(n - i));
                if blk.rows() > 0 && blk.cols() > 0 {
                    m.set_block(to[n][i], so[n][i], &blk);
                }
            }
            m
        })
        .collect();
    ChainMap::trusted(source, target, comps)
}

/// The iterated simple and the data needed to address it.
pub struct IteratedSimple {
    /// `p -> s(Z_{p,*})`.
    pub outer: SimplicialObject,
    pub columns: Vec<Arc<Simple>>,
    pub simple: Arc<Simple>,
}

impl IteratedSimple {
    /// Position of coordinate `c` of `Z_{p,q}` in internal degree `r`.
    pub fn position(&self, p: usize, q: usize, r: usize, c: usize) -> Option<usize> {
        let inner = self.columns[p].position(q, r, c)?;
        self.simple.position(p, q + r, inner)
    }
}

/// A grid of complexes known for `p, q <= N`.
pub struct Bisimplicial {
    grid: Vec<Vec<ChainComplex>>,
    // hface[p][q][i] : Z_{p,q} -> Z_{p-1,q}
    hface: Vec<Vec<Vec<ChainMap>>>,
    // vface[p][q][j] : Z_{p,q} -> Z_{p,q-1}
    vface: Vec<Vec<Vec<ChainMap>>>,
    hdeg: Vec<Vec<Vec<ChainMap>>>,
    vdeg: Vec<Vec<Vec<ChainMap>>>,
    hskel: usize,
    vskel: usize,
    columns: OnceLock<Vec<SimplicialObject>>,
    iterated: OnceLock<std::result::Result<Arc<IteratedSimple>, Error>>,
}

impl Bisimplicial {
    fn from_parts(
        grid: Vec<Vec<ChainComplex>>,
        hface: Vec<Vec<Vec<ChainMap>>>,
        vface: Vec<Vec<Vec<ChainMap>>>,
        hdeg: Vec<Vec<Vec<ChainMap>>>,
        vdeg: Vec<Vec<Vec<ChainMap>>>,
        hskel: usize,
        vskel: usize,
    ) -> Self {
        Bisimplicial {
            grid,
            hface,
            vface,
            hdeg,
            vdeg,
            hskel,
            vskel,
            columns: OnceLock::new(),
            iterated: OnceLock::new(),
        }
    }

    /// `Z_{p,q} = X_p ⊗ Y_q` with horizontal operators from `X` and vertical
    /// ones from `Y`.
    pub fn tensor(x: &SimplicialObject, y: &SimplicialObject) -> Self {
        let big_n = x.truncation().min(y.truncation());
        let grid: Vec<Vec<ChainComplex>> = (0..=big_n)
            .map(|p| {
                (0..=big_n)
                    .map(|q| tensor_product(x.level(p), y.level(q)))
                    .collect()
            })
            .collect();
        let id_x = |p: usize| ChainMap::identity(x.level(p));
        let id_y = |q: usize| ChainMap::identity(y.level(q));
        let hface = (0..=big_n)
            .map(|p| {
                (0..=big_n)
                    .map(|q| {
                        if p == 0 {
                            return Vec::new();
                        }
                        (0..=p)
                            .map(|i| {
                                tensor_maps(x.face(p, i), &id_y(q), &grid[p][q], &grid[p - 1][q])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let vface = (0..=big_n)
            .map(|p| {
                (0..=big_n)
                    .map(|q| {
                        if q == 0 {
                            return Vec::new();
                        }
                        (0..=q)
                            .map(|j| {
                                tensor_maps(&id_x(p), y.face(q, j), &grid[p][q], &grid[p][q - 1])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let hdeg = (0..big_n)
            .map(|p| {
                (0..=big_n)
                    .map(|q| {
                        (0..=p)
                            .map(|i| {
                                tensor_maps(x.degen(p, i), &id_y(q), &grid[p][q], &grid[p + 1][q])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let vdeg = (0..=big_n)
            .map(|p| {
                (0..big_n)
                    .map(|q| {
                        (0..=q)
                            .map(|j| {
                                tensor_maps(&id_x(p), y.degen(q, j), &grid[p][q], &grid[p][q + 1])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::from_parts(grid, hface, vface, hdeg, vdeg, x.skeletal(), y.skeletal())
    }

    /// `Z_{p,q} = X_p`, constant in the vertical direction.
    pub fn constant_vertical(x: &SimplicialObject) -> Self {
        Self::tensor(
            x,
            &super::constant(&ChainComplex::concentrated(0, 1), x.truncation()),
        )
    }

    /// `Z_{p,q} = Y_q`, constant in the horizontal direction.
    pub fn constant_horizontal(y: &SimplicialObject) -> Self {
        Self::tensor(
            &super::constant(&ChainComplex::concentrated(0, 1), y.truncation()),
            y,
        )
    }

    pub fn truncation(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn skeletal(&self) -> (usize, usize) {
        (self.hskel, self.vskel)
    }

    pub fn entry(&self, p: usize, q: usize) -> &ChainComplex {
        &self.grid[p][q]
    }

    pub fn hface(&self, p: usize, q: usize, i: usize) -> &ChainMap {
        &self.hface[p][q][i]
    }

    pub fn vface(&self, p: usize, q: usize, j: usize) -> &ChainMap {
        &self.vface[p][q][j]
    }

    /// Checks both sets of simplicial identities and that horizontal and
    /// vertical operators commute.
    pub fn check(&self) -> Result<()> {
        for p in 0..=self.truncation() {
            self.column(p).check_identities()?;
        }
        for q in 0..=self.truncation() {
            self.row(q).check_identities()?;
        }
        let big_n = self.truncation();
        let eq = |a: ChainMap, b: ChainMap| a.comps() == b.comps();
        for p in 1..=big_n {
            for q in 1..=big_n {
                for i in 0..=p {
                    for j in 0..=q {
                        if !eq(
                            self.hface[p][q][i].then(&self.vface[p - 1][q][j]),
                            self.vface[p][q][j].then(&self.hface[p][q - 1][i]),
                        ) {
                            return Err(Error::NotCommuting(format!(
                                "horizontal and vertical faces at ({p}, {q})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Column `p`: the vertical simplicial object `q -> Z_{p,q}`.
    pub fn column(&self, p: usize) -> SimplicialObject {
        self.columns.get_or_init(|| {
            (0..=self.truncation())
                .map(|p| self.build_column(p))
                .collect()
        })[p]
            .clone()
    }

    fn build_column(&self, p: usize) -> SimplicialObject {
        let big_n = self.truncation();
        let levels = self.grid[p].clone();
        let atoms = levels
            .iter()
            .map(|c| {
                vec![super::Atom {
                    tag: Vec::new(),
                    dims: c.dims().to_vec(),
                }]
            })
            .collect();
        let degens = (0..big_n).map(|q| self.vdeg[p][q].clone()).collect();
        SimplicialObject::from_parts(levels, atoms, self.vface[p].clone(), degens, self.vskel)
    }

    /// Row `q`: the horizontal simplicial object `p -> Z_{p,q}`.
    pub fn row(&self, q: usize) -> SimplicialObject {
        let big_n = self.truncation();
        let levels: Vec<ChainComplex> = (0..=big_n).map(|p| self.grid[p][q].clone()).collect();
        let atoms = levels
            .iter()
            .map(|c| {
                vec![super::Atom {
                    tag: Vec::new(),
                    dims: c.dims().to_vec(),
                }]
            })
            .collect();
        let faces = (0..=big_n).map(|p| self.hface[p][q].clone()).collect();
        let degens = (0..big_n).map(|p| self.hdeg[p][q].clone()).collect();
        SimplicialObject::from_parts(levels, atoms, faces, degens, self.hskel)
    }

    /// `n -> Z_{n,n}` with `d_i = d^h_i d^v_i` and `s_j = s^h_j s^v_j`.
    pub fn diagonal(&self) -> SimplicialObject {
        let big_n = self.truncation();
        let levels: Vec<ChainComplex> = (0..=big_n).map(|n| self.grid[n][n].clone()).collect();
        let atoms = levels
            .iter()
            .map(|c| {
                vec![super::Atom {
                    tag: Vec::new(),
                    dims: c.dims().to_vec(),
                }]
            })
            .collect();
        let faces = (0..=big_n)
            .map(|n| {
                (0..if n == 0 { 0 } else { n + 1 })
                    .map(|i| self.vface[n][n][i].then(&self.hface[n][n - 1][i]))
                    .collect()
            })
            .collect();
        let degens = (0..big_n)
            .map(|n| {
                (0..=n)
                    .map(|j| self.vdeg[n][n][j].then(&self.hdeg[n][n + 1][j]))
                    .collect()
            })
            .collect();
        SimplicialObject::from_parts(levels, atoms, faces, degens, self.hskel + self.vskel)
    }

    /// `s(p -> s(q -> Z_{p,q}))`.
    pub fn iterated_simple(&self) -> Result<Arc<IteratedSimple>> {
        self.iterated
            .get_or_init(|| self.compute_iterated().map(Arc::new))
            .clone()
    }

    fn compute_iterated(&self) -> Result<IteratedSimple> {
        let big_n = self.truncation();
        let cols: Vec<SimplicialObject> = (0..=big_n).map(|p| self.column(p)).collect();
        let columns = cols
            .iter()
            .map(SimplicialObject::simple)
            .collect::<Result<Vec<_>>>()?;
        let horizontal =
            |p: usize, ops: &dyn Fn(usize) -> ChainMap, to: usize| -> Result<ChainMap> {
                SimplicialMap::trusted(&cols[p], &cols[to], (0..=big_n).map(ops).collect()).simple()
            };
        let mut faces = vec![Vec::new()];
        for p in 1..=big_n {
            faces.push(
                (0..=p)
                    .map(|i| horizontal(p, &|q| self.hface[p][q][i].clone(), p - 1))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let degens = (0..big_n)
            .map(|p| {
                (0..=p)
                    .map(|i| horizontal(p, &|q| self.hdeg[p][q][i].clone(), p + 1))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let levels = columns.iter().map(|s| s.complex.clone()).collect();
        let outer = SimplicialObject::new(levels, faces, degens, self.hskel)?;
        let simple = outer.simple()?;
        Ok(IteratedSimple {
            outer,
            columns,
            simple,
        })
    }

    /// The Alexander-Whitney map `s(diag Z) -> ss Z`: a coordinate of
    /// `Z_{n,n}` goes to `Σ_q (d^v_{q+1} ⋯ d^v_n)(d^h_0)^{n-q}` in
    /// `Z_{n-q,q}`, a back face horizontally and a front face vertically.
    pub fn aw_map(&self) -> Result<ChainMap> {
        let diag = self.diagonal().simple()?;
        let ss = self.iterated_simple()?;
        let len = diag.complex.len().min(ss.simple.complex.len());
        let mut comps = Vec::with_capacity(len);
        for t in 0..len {
            let mut m = Matrix::zeros(ss.simple.complex.dim(t), diag.complex.dim(t));
            for b in &diag.blocks[t] {
                let (n, r) = (b.p, b.q);
                for q in 0..=n {
                    let p = n - q;
                    let mut f = ChainMap::identity(&self.grid[n][n]);
                    for k in 0..q {
                        f = f.then(&self.hface[n - k][n][0]);
                    }
                    for j in (q + 1..=n).rev() {
                        f = f.then(&self.vface[p][j][j]);
                    }
                    let c = f.comp(r);
                    for (col, &src) in b.coords.iter().enumerate() {
                        for row in 0..c.rows() {
                            let v = c.get(row, src);
                            if num_traits::Zero::is_zero(v) {
                                continue;
                            }
                            if let Some(pos) = ss.position(p, q, r, row) {
                                let cur = m.get(pos, b.offset + col) + v;
                                m.set(pos, b.offset + col, cur);
                            }
                        }
                    }
                }
            }
            comps.push(m);
        }
        ChainMap::new(&diag.complex, &ss.simple.complex, comps)
    }
}

/// Both composites `λ μ` of the compatibility between `μ` and `λ`, for
/// `Δ × X` and `X × Δ`. With the normalized simple the middle terms equal
/// `sX` on the nose, so each composite is the comparison map itself.
pub fn unit_composites(x: &SimplicialObject) -> Result<[ChainMap; 2]> {
    let sx = x.simple()?.complex.clone();
    let one = |z: Bisimplicial| -> Result<ChainMap> {
        let mu = z.aw_map()?;
        if mu.source() != &sx || mu.target() != &sx {
            return Err(Error::Invalid(
                "constant grid does not totalize to sX".into(),
            ));
        }
        Ok(mu)
    };
    Ok([
        one(Bisimplicial::constant_horizontal(x))?,
        one(Bisimplicial::constant_vertical(x))?,
    ])
}

/// A levelwise map of grids `Z_{p,q} -> W_{p,q}`.
pub struct GridMap {
    levels: Vec<Vec<ChainMap>>,
}

impl GridMap {
    /// `F ⊗ G : X ⊗ Y -> X' ⊗ Y'`.
    pub fn tensor(
        f: &SimplicialMap,
        g: &SimplicialMap,
        source: &Bisimplicial,
        target: &Bisimplicial,
    ) -> Self {
        let big_n = source.truncation().min(target.truncation());
        let levels = (0..=big_n)
            .map(|p| {
                (0..=big_n)
                    .map(|q| {
                        tensor_maps(
                            f.level(p),
                            g.level(q),
                            source.entry(p, q),
                            target.entry(p, q),
                        )
                    })
                    .collect()
            })
            .collect();
        GridMap { levels }
    }

    pub fn level(&self, p: usize, q: usize) -> &ChainMap {
        &self.levels[p][q]
    }

    /// The map of diagonals, checked to be simplicial.
    pub fn diagonal(&self, source: &Bisimplicial, target: &Bisimplicial) -> Result<SimplicialMap> {
        let levels = (0..self.levels.len())
            .map(|n| self.levels[n][n].clone())
            .collect();
        SimplicialMap::new(&source.diagonal(), &target.diagonal(), levels)
    }

    /// The induced map of iterated simples, column by column.
    pub fn iterated(&self, source: &Bisimplicial, target: &Bisimplicial) -> Result<ChainMap> {
        let (s, t) = (source.iterated_simple()?, target.iterated_simple()?);
        let cols = (0..self.levels.len())
            .map(|p| {
                SimplicialMap::new(&source.column(p), &target.column(p), self.levels[p].clone())?
                    .simple()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(&s.outer, &t.outer, cols)?.simple()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Gen;
    use crate::simpobj::constant;
    use crate::simpobj::cyl::cone_const;
    use crate::simpobj::tensor::boxtimes;
    use crate::simpsets::delta;

    #[test]
    fn tensor_product_homology_is_kunneth() {
        let mut g = Gen::new(31, 3, 2);
        for _ in 0..10 {
            let a = g.complex();
            let b = g.complex();
            let t = tensor_product(&a, &b);
            let (ha, hb) = (a.betti(), b.betti());
            let mut want = vec![0usize; (ha.len() + hb.len()).saturating_sub(1)];
            for (i, x) in ha.iter().enumerate() {
                for (j, y) in hb.iter().enumerate() {
                    want[i + j] += x * y;
                }
            }
            while want.last() == Some(&0) {
                want.pop();
            }
            assert_eq!(t.betti(), want);
        }
    }

    #[test]
    fn aw_is_a_quasi_isomorphism() {
        let mut g = Gen::new(32, 2, 1);
        for _ in 0..4 {
            let a = g.complex();
            let b = g.complex();
            let f = g.map(&a, &b);
            let x = cone_const(&f, 3).unwrap().object;
            let y = boxtimes(&delta(1, 3).unwrap(), &constant(&g.complex(), 3))
                .unwrap()
                .object;
            let z = Bisimplicial::tensor(&x, &y);
            z.check().unwrap();
            z.diagonal().check_identities().unwrap();
            let mu = z.aw_map().unwrap();
            assert!(mu.is_qis());
        }
    }

    #[test]
    fn aw_is_natural() {
        let mut g = Gen::new(33, 2, 1);
        for _ in 0..3 {
            let a = g.complex();
            let a2 = g.complex();
            let b = g.complex();
            let f = g.map(&a, &b);
            let phi = g.map(&a2, &a);
            let (src, tgt) = (
                cone_const(&phi.then(&f), 3).unwrap(),
                cone_const(&f, 3).unwrap(),
            );
            let alpha = SimplicialMap::constant_between(&ChainMap::identity(&b), src.y(), tgt.y());
            let beta = SimplicialMap::constant_between(&phi, src.source(), tgt.source());
            let gamma = SimplicialMap::zero(src.z(), tgt.z());
            let big_f = crate::simpobj::cyl::cyl_map(&src, &tgt, &alpha, &beta, &gamma).unwrap();
            big_f.verify().unwrap();
            let y = boxtimes(&delta(1, 3).unwrap(), &constant(&g.complex(), 3))
                .unwrap()
                .object;
            let (zs, zt) = (
                Bisimplicial::tensor(&src.object, &y),
                Bisimplicial::tensor(&tgt.object, &y),
            );
            let m = GridMap::tensor(&big_f, &SimplicialMap::identity(&y), &zs, &zt);
            let diag = m.diagonal(&zs, &zt).unwrap().simple().unwrap();
            let ss = m.iterated(&zs, &zt).unwrap();
            let left = diag.then(&zt.aw_map().unwrap());
            let right = zs.aw_map().unwrap().then(&ss);
            assert_eq!(left.comps(), right.comps());
        }
    }

    #[test]
    fn unit_composites_are_identities_on_homology() {
        let mut g = Gen::new(34, 2, 1);
        for _ in 0..3 {
            let (a, b) = (g.complex(), g.complex());
            let f = g.map(&a, &b);
            let x = cone_const(&f, 3).unwrap().object;
            for c in unit_composites(&x).unwrap() {
                assert!(c.induced_homology().is_identity());
            }
        }
    }
}

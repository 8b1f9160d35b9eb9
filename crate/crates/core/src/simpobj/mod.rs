//! Simplicial chain complexes, their normalized totalization and the
//! constructions built from them.
//!
//! Every level is a direct sum of *atoms*: summands tagged by where they
//! sit in a cylinder or tensor construction. Tags let reindexing maps such
//! as the interchange of iterated cylinders be written down exactly.
//! Degeneracies are always coordinate injections, so the normalized quotient
//! of a level is spanned by the coordinates no degeneracy hits.

pub mod bisimplicial;
pub mod cyl;
pub mod tensor;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::chain::{sign, sum_of, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};

/// One step of an atom's address.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Seg {
    /// The end of a cylinder glued along `d^0`.
    Y,
    /// The `k`-th interior copy of a cylinder level.
    M(usize),
    /// The end of a cylinder glued along `d^1`.
    Z,
    /// A simplex of a simplicial set acting by `⊠` or `⊗`.
    Cell(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub tag: Vec<Seg>,
    pub dims: Vec<usize>,
}

impl Atom {
    fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    pub(crate) fn prefixed(&self, seg: Seg) -> Atom {
        let mut tag = Vec::with_capacity(self.tag.len() + 1);
        tag.push(seg);
        tag.extend(self.tag.iter().cloned());
        Atom {
            tag,
            dims: self.dims.clone(),
        }
    }
}

struct Inner {
    levels: Vec<ChainComplex>,
    atoms: Vec<Vec<Atom>>,
    faces: Vec<Vec<ChainMap>>,
    degens: Vec<Vec<ChainMap>>,
    skeletal: usize,
    simple: OnceLock<std::result::Result<Arc<Simple>, Error>>,
}

/// A simplicial object in bounded chain complexes, known up to a truncation
/// level. Cheap to clone.
#[derive(Clone)]
pub struct SimplicialObject(Arc<Inner>);

impl fmt::Debug for SimplicialObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialObject")
            .field(
                "levels",
                &self
                    .0
                    .levels
                    .iter()
                    .map(|c| c.dims().to_vec())
                    .collect::<Vec<_>>(),
            )
            .field("skeletal", &self.0.skeletal)
            .finish()
    }
}

impl PartialEq for SimplicialObject {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.levels == other.0.levels
                && self
                    .0
                    .faces
                    .iter()
                    .zip(&other.0.faces)
                    .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.comps() == y.comps()))
                && self
                    .0
                    .degens
                    .iter()
                    .zip(&other.0.degens)
                    .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.comps() == y.comps())))
    }
}

impl Eq for SimplicialObject {}

/// Where a coordinate of `X_p` in internal degree `q` sits in the simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleBlock {
    pub p: usize,
    pub q: usize,
    pub offset: usize,
    pub coords: Vec<usize>,
}

/// The normalized total complex with its layout: `blocks[n]` lists the
/// `(p, q)` pieces of total degree `n`, `p` ascending.
#[derive(Clone, Debug)]
pub struct Simple {
    pub complex: ChainComplex,
    pub blocks: Vec<Vec<SimpleBlock>>,
}

impl Simple {
    /// Position of coordinate `c` of `X_p` (internal degree `q`).
    pub fn position(&self, p: usize, q: usize, c: usize) -> Option<usize> {
        let b = self.blocks.get(p + q)?.iter().find(|b| b.p == p)?;
        debug_assert_eq!(b.q, q);
        b.coords.binary_search(&c).ok().map(|i| b.offset + i)
    }

    pub fn block(&self, p: usize, q: usize) -> Option<&SimpleBlock> {
        self.blocks.get(p + q)?.iter().find(|b| b.p == p)
    }
}

impl SimplicialObject {
    /// Generic constructor: checks shapes, the simplicial identities and that
    /// degeneracies are coordinate injections. Every level becomes one atom.
    pub fn new(
        levels: Vec<ChainComplex>,
        faces: Vec<Vec<ChainMap>>,
        degens: Vec<Vec<ChainMap>>,
        skeletal: usize,
    ) -> Result<Self> {
        let atoms = levels
            .iter()
            .map(|c| {
                vec![Atom {
                    tag: Vec::new(),
                    dims: c.dims().to_vec(),
                }]
            })
            .collect();
        let x = Self::from_parts(levels, atoms, faces, degens, skeletal);
        x.check_shapes()?;
        x.check_identities()?;
        Ok(x)
    }

    pub(crate) fn from_parts(
        levels: Vec<ChainComplex>,
        atoms: Vec<Vec<Atom>>,
        faces: Vec<Vec<ChainMap>>,
        degens: Vec<Vec<ChainMap>>,
        skeletal: usize,
    ) -> Self {
        SimplicialObject(Arc::new(Inner {
            levels,
            atoms,
            faces,
            degens,
            skeletal,
            simple: OnceLock::new(),
        }))
    }

    fn check_shapes(&self) -> Result<()> {
        let n_levels = self.0.levels.len();
        if n_levels == 0 || self.0.faces.len() != n_levels || self.0.degens.len() + 1 != n_levels {
            return Err(Error::Invalid(
                "simplicial object has inconsistent level counts".into(),
            ));
        }
        for n in 0..n_levels {
            let want = if n == 0 { 0 } else { n + 1 };
            if self.0.faces[n].len() != want {
                return Err(Error::Invalid(format!("level {n} needs {want} faces")));
            }
            for f in &self.0.faces[n] {
                if f.source() != &self.0.levels[n] || f.target() != &self.0.levels[n - 1] {
                    return Err(Error::DimensionMismatch(format!(
                        "face at level {n} has the wrong ends"
                    )));
                }
            }
            if n + 1 < n_levels {
                if self.0.degens[n].len() != n + 1 {
                    return Err(Error::Invalid(format!(
                        "level {n} needs {} degeneracies",
                        n + 1
                    )));
                }
                for s in &self.0.degens[n] {
                    if s.source() != &self.0.levels[n] || s.target() != &self.0.levels[n + 1] {
                        return Err(Error::DimensionMismatch(format!(
                            "degeneracy at level {n} has the wrong ends"
                        )));
                    }
                    if !s.comps().iter().all(Matrix::is_coordinate_injection) {
                        return Err(Error::Unsupported(format!(
                            "degeneracy at level {n} is not a coordinate injection"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks every simplicial identity as an equality of chain maps.
    pub fn check_identities(&self) -> Result<()> {
        let big_n = self.truncation();
        let eq = |a: &ChainMap, b: &ChainMap| a.comps() == b.comps();
        let bad = |m: String| Err(Error::Invalid(m));
        for n in 2..=big_n {
            for j in 1..=n {
                for i in 0..j {
                    if !eq(
                        &self.face(n, j).then(self.face(n - 1, i)),
                        &self.face(n, i).then(self.face(n - 1, j - 1)),
                    ) {
                        return bad(format!("d_{i} d_{j} identity fails at level {n}"));
                    }
                }
            }
        }
        for n in 0..big_n {
            for j in 0..=n {
                let s = self.degen(n, j);
                for i in 0..=n + 1 {
                    let lhs = s.then(self.face(n + 1, i));
                    let ok = if i < j {
                        eq(&lhs, &self.face(n, i).then(self.degen(n - 1, j - 1)))
                    } else if i == j || i == j + 1 {
                        eq(&lhs, &ChainMap::identity(self.level(n)))
                    } else {
                        eq(&lhs, &self.face(n, i - 1).then(self.degen(n - 1, j)))
                    };
                    if !ok {
                        return bad(format!("d_{i} s_{j} identity fails at level {n}"));
                    }
                }
                if n + 1 < big_n {
                    for i in 0..=j {
                        if !eq(
                            &s.then(self.degen(n + 1, i)),
                            &self.degen(n, i).then(self.degen(n + 1, j + 1)),
                        ) {
                            return bad(format!("s_{i} s_{j} identity fails at level {n}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> usize {
        self.0.levels.len() - 1
    }

    /// Every coordinate above this level is degenerate.
    pub fn skeletal(&self) -> usize {
        self.0.skeletal
    }

    pub fn level(&self, n: usize) -> &ChainComplex {
        &self.0.levels[n]
    }

    pub fn levels(&self) -> &[ChainComplex] {
        &self.0.levels
    }

    pub fn atoms(&self, n: usize) -> &[Atom] {
        &self.0.atoms[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &ChainMap {
        &self.0.faces[n][i]
    }

    pub fn degen(&self, n: usize, j: usize) -> &ChainMap {
        &self.0.degens[n][j]
    }

    /// `offsets[a][q]`: where atom `a` starts in internal degree `q`.
    pub fn atom_offsets(&self, n: usize) -> Vec<Vec<usize>> {
        let len = self.level(n).len();
        let mut run = vec![0usize; len];
        self.atoms(n)
            .iter()
            .map(|a| {
                let here = run.clone();
                for (q, r) in run.iter_mut().enumerate() {
                    *r += a.dim(q);
                }
                here
            })
            .collect()
    }

    pub fn atom_index(&self, n: usize) -> HashMap<&[Seg], usize> {
        self.atoms(n)
            .iter()
            .enumerate()
            .map(|(i, a)| (a.tag.as_slice(), i))
            .collect()
    }

    /// Coordinates of level `n`, internal degree `q`, hit by no degeneracy.
    pub fn nondegenerate(&self, n: usize, q: usize) -> Vec<usize> {
        let dim = self.level(n).dim(q);
        let mut hit = vec![false; dim];
        if n > 0 {
            for s in &self.0.degens[n - 1] {
                let m = s.comp(q);
                for j in 0..m.cols() {
                    for i in 0..m.rows() {
                        if !num_traits::Zero::is_zero(m.get(i, j)) {
                            hit[i] = true;
                        }
                    }
                }
            }
        }
        (0..dim).filter(|&c| !hit[c]).collect()
    }

    /// The normalized total complex: degree `n` is the sum over `p + q = n`
    /// of the nondegenerate part of `X_p` in degree `q`, with differential
    /// `d + (-1)^q Σ (-1)^i d_i`.
    pub fn simple(&self) -> Result<Arc<Simple>> {
        self.0
            .simple
            .get_or_init(|| self.compute_simple().map(Arc::new))
            .clone()
    }

    fn compute_simple(&self) -> Result<Simple> {
        let skel = self.skeletal();
        if self.truncation() < skel + 1 {
            return Err(Error::Truncation {
                needed: skel + 1,
                available: self.truncation(),
            });
        }
        let top = skel + 1;
        for q in 0..self.level(top).len() {
            if !self.nondegenerate(top, q).is_empty() {
                return Err(Error::Invalid(format!(
                    "level {top} has nondegenerate coordinates beyond the skeletal bound {skel}"
                )));
            }
        }
        let nd: Vec<Vec<Vec<usize>>> = (0..=skel)
            .map(|p| {
                (0..self.level(p).len())
                    .map(|q| self.nondegenerate(p, q))
                    .collect()
            })
            .collect();
        let nd_at = |p: usize, q: usize| -> &[usize] {
            nd.get(p).and_then(|v| v.get(q)).map_or(&[], Vec::as_slice)
        };
        let max_q = (0..=skel).map(|p| self.level(p).len()).max().unwrap_or(0);
        let total = skel + max_q;
        let mut blocks: Vec<Vec<SimpleBlock>> = Vec::with_capacity(total);
        let mut dims = Vec::with_capacity(total);
        for n in 0..total {
            let mut off = 0;
            let mut here = Vec::new();
            for p in 0..=skel.min(n) {
                let q = n - p;
                let coords = nd_at(p, q).to_vec();
                if !coords.is_empty() {
                    here.push(SimpleBlock {
                        p,
                        q,
                        offset: off,
                        coords: coords.clone(),
                    });
                    off += coords.len();
                }
            }
            blocks.push(here);
            dims.push(off);
        }
        let mut diffs = Vec::new();
        for n in 1..total {
            let mut m = Matrix::zeros(dims[n - 1], dims[n]);
            for b in &blocks[n] {
                let (p, q) = (b.p, b.q);
                if q >= 1 {
                    if let Some(t) = blocks[n - 1].iter().find(|t| t.p == p) {
                        let d = self.level(p).d(q);
                        m.set_block(
                            t.offset,
                            b.offset,
                            &d.select_rows(&t.coords).select_columns(&b.coords),
                        );
                    }
                }
                if p >= 1 {
                    if let Some(t) = blocks[n - 1].iter().find(|t| t.p == p - 1) {
                        let mut acc = Matrix::zeros(t.coords.len(), b.coords.len());
                        for i in 0..=p {
                            let f = self
                                .face(p, i)
                                .comp(q)
                                .select_rows(&t.coords)
                                .select_columns(&b.coords);
                            acc = &acc + &f.scale(&sign(i));
                        }
                        m.add_block(t.offset, b.offset, &acc.scale(&sign(q)));
                    }
                }
            }
            diffs.push(m);
        }
        let complex = ChainComplex::new(dims, diffs)?;
        Ok(Simple { complex, blocks })
    }

    /// Moore normalization: `N_p = ∩_{i ≥ 1} ker d_i` per internal degree,
    /// totalized with the residual face `d_0`. Returns the complex and, per
    /// total degree, the basis of each `N_{p,q}` as columns in `X_p`.
    pub fn moore(&self) -> Result<(ChainComplex, Vec<Vec<(usize, usize, Matrix)>>)> {
        let skel = self.skeletal();
        if self.truncation() < skel + 1 {
            return Err(Error::Truncation {
                needed: skel + 1,
                available: self.truncation(),
            });
        }
        let basis = |p: usize, q: usize| -> Matrix {
            let dim = self.level(p).dim(q);
            let mut s = Subspace::full(dim);
            for i in 1..=p {
                let k = Subspace::from_basis(dim, self.face(p, i).comp(q).kernel_basis())
                    .expect("kernel");
                s = s.intersection(&k).expect("same ambient");
            }
            s.basis().clone()
        };
        let max_q = (0..=skel).map(|p| self.level(p).len()).max().unwrap_or(0);
        let total = skel + max_q;
        let mut pieces: Vec<Vec<(usize, usize, Matrix)>> = Vec::new();
        let mut dims = Vec::new();
        for n in 0..total {
            let here: Vec<(usize, usize, Matrix)> = (0..=skel.min(n))
                .map(|p| (p, n - p, basis(p, n - p)))
                .filter(|(_, _, b)| b.cols() > 0)
                .collect();
            dims.push(here.iter().map(|(_, _, b)| b.cols()).sum());
            pieces.push(here);
        }
        let mut diffs = Vec::new();
        for n in 1..total {
            let mut m = Matrix::zeros(dims[n - 1], dims[n]);
            let mut col = 0;
            for (p, q, b) in &pieces[n] {
                let mut row = 0;
                for (p2, _, b2) in &pieces[n - 1] {
                    let img = if p2 == p && *q >= 1 {
                        Some(&*self.level(*p).d(*q) * b)
                    } else if *p2 + 1 == *p {
                        Some((&self.face(*p, 0).comp(*q).into_owned() * b).scale(&sign(*q)))
                    } else {
                        None
                    };
                    if let Some(img) = img {
                        let coords = b2
                            .solve_matrix(&img)
                            .ok_or_else(|| Error::Invalid("Moore complex is not closed".into()))?;
                        m.set_block(row, col, &coords);
                    }
                    row += b2.cols();
                }
                col += b.cols();
            }
            diffs.push(m);
        }
        Ok((ChainComplex::new(dims, diffs)?, pieces))
    }

    /// The inverse order object: `d_i` and `d_{n-i}` trade places, as do
    /// `s_j` and `s_{n-j}`.
    pub fn upsilon(&self) -> SimplicialObject {
        let faces = self
            .0
            .faces
            .iter()
            .enumerate()
            .map(|(n, fs)| (0..fs.len()).map(|i| fs[n - i].clone()).collect())
            .collect();
        let degens = self
            .0
            .degens
            .iter()
            .enumerate()
            .map(|(n, ss)| (0..ss.len()).map(|j| ss[n - j].clone()).collect())
            .collect();
        Self::from_parts(
            self.0.levels.clone(),
            self.0.atoms.clone(),
            faces,
            degens,
            self.0.skeletal,
        )
    }

    /// Restricts to levels `0..=n`.
    pub fn truncate(&self, n: usize) -> Result<SimplicialObject> {
        if n > self.truncation() {
            return Err(Error::Truncation {
                needed: n,
                available: self.truncation(),
            });
        }
        Ok(Self::from_parts(
            self.0.levels[..=n].to_vec(),
            self.0.atoms[..=n].to_vec(),
            self.0.faces[..=n].to_vec(),
            self.0.degens[..n].to_vec(),
            self.0.skeletal,
        ))
    }
}

/// `A × Δ`: every level `A`, every operator the identity.
pub fn constant(a: &ChainComplex, big_n: usize) -> SimplicialObject {
    let id = ChainMap::identity(a);
    let levels = vec![a.clone(); big_n + 1];
    let atoms = vec![
        vec![Atom {
            tag: Vec::new(),
            dims: a.dims().to_vec()
        }];
        big_n + 1
    ];
    let faces = (0..=big_n)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                vec![id.clone(); n + 1]
            }
        })
        .collect();
    let degens = (0..big_n).map(|n| vec![id.clone(); n + 1]).collect();
    SimplicialObject::from_parts(levels, atoms, faces, degens, 0)
}

pub fn zero_object(big_n: usize) -> SimplicialObject {
    constant(&ChainComplex::zero(), big_n)
}

/// The identifications `λ : s(A × Δ) -> A` and `ρ : A -> s(A × Δ)`.
pub fn unit(a: &ChainComplex, big_n: usize) -> Result<(ChainMap, ChainMap)> {
    let s = constant(a, big_n.max(1)).simple()?;
    let lambda = ChainMap::new(
        &s.complex,
        a,
        a.dims().iter().map(|&k| Matrix::identity(k)).collect(),
    )?;
    let rho = ChainMap::new(
        a,
        &s.complex,
        a.dims().iter().map(|&k| Matrix::identity(k)).collect(),
    )?;
    Ok((lambda, rho))
}

/// `X ⊔ Y` levelwise, with atoms of `X` tagged `Y` and those of `Y` tagged
/// `Z`, and the two inclusions.
pub fn coproduct(
    x: &SimplicialObject,
    y: &SimplicialObject,
) -> (SimplicialObject, SimplicialMap, SimplicialMap) {
    let big_n = x.truncation().min(y.truncation());
    let layout: Vec<Pieces> = (0..=big_n)
        .map(|n| pieces(&[x.level(n), y.level(n)]))
        .collect();
    let levels = layout.iter().map(|l| l.complex.clone()).collect();
    let atoms = (0..=big_n)
        .map(|n| {
            let left = x.atoms(n).iter().map(|a| a.prefixed(Seg::Y));
            left.chain(y.atoms(n).iter().map(|a| a.prefixed(Seg::Z)))
                .collect()
        })
        .collect();
    let op = |n: usize, to: usize, fx: &ChainMap, fy: &ChainMap| {
        assemble(
            &layout[n],
            &layout[to],
            &[(0, 0, fx.clone()), (1, 1, fy.clone())],
        )
    };
    let faces = (0..=big_n)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| op(n, n - 1, x.face(n, i), y.face(n, i)))
                    .collect()
            }
        })
        .collect();
    let degens = (0..big_n)
        .map(|n| {
            (0..=n)
                .map(|j| op(n, n + 1, x.degen(n, j), y.degen(n, j)))
                .collect()
        })
        .collect();
    let object =
        SimplicialObject::from_parts(levels, atoms, faces, degens, x.skeletal().max(y.skeletal()));
    let inclusion = |side: &SimplicialObject, at: usize| {
        let levels = (0..=big_n)
            .map(|n| {
                assemble(
                    &pieces(&[side.level(n)]),
                    &layout[n],
                    &[(at, 0, ChainMap::identity(side.level(n)))],
                )
            })
            .collect();
        let side = if side.truncation() == big_n {
            side.clone()
        } else {
            side.truncate(big_n).expect("within range")
        };
        SimplicialMap::trusted(&side, &object, levels)
    };
    let (inl, inr) = (inclusion(x, 0), inclusion(y, 1));
    (object, inl, inr)
}

/// A levelwise chain map commuting with faces and degeneracies.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: SimplicialObject,
    target: SimplicialObject,
    levels: Vec<ChainMap>,
}

impl SimplicialMap {
    pub fn new(
        source: &SimplicialObject,
        target: &SimplicialObject,
        levels: Vec<ChainMap>,
    ) -> Result<Self> {
        let m = Self::trusted(source, target, levels);
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn trusted(
        source: &SimplicialObject,
        target: &SimplicialObject,
        levels: Vec<ChainMap>,
    ) -> Self {
        SimplicialMap {
            source: source.clone(),
            target: target.clone(),
            levels,
        }
    }

    pub fn verify(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        let big_n = x.truncation();
        if y.truncation() < big_n || self.levels.len() != big_n + 1 {
            return Err(Error::DimensionMismatch(
                "simplicial map has the wrong number of levels".into(),
            ));
        }
        for n in 0..=big_n {
            if self.levels[n].source() != x.level(n) || self.levels[n].target() != y.level(n) {
                return Err(Error::DimensionMismatch(format!(
                    "level {n} of the map has the wrong ends"
                )));
            }
        }
        for n in 1..=big_n {
            for i in 0..=n {
                if self.levels[n].then(y.face(n, i)).comps()
                    != x.face(n, i).then(&self.levels[n - 1]).comps()
                {
                    return Err(Error::NotCommuting(format!("map and d_{i} at level {n}")));
                }
            }
        }
        for n in 0..big_n {
            for j in 0..=n {
                if self.levels[n].then(y.degen(n, j)).comps()
                    != x.degen(n, j).then(&self.levels[n + 1]).comps()
                {
                    return Err(Error::NotCommuting(format!("map and s_{j} at level {n}")));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &SimplicialObject) -> Self {
        Self::trusted(x, x, x.levels().iter().map(ChainMap::identity).collect())
    }

    pub fn zero(x: &SimplicialObject, y: &SimplicialObject) -> Self {
        Self::trusted(
            x,
            y,
            (0..=x.truncation())
                .map(|n| ChainMap::zero(x.level(n), y.level(n)))
                .collect(),
        )
    }

    /// `f × Δ` between the given constant objects.
    pub fn constant_between(f: &ChainMap, x: &SimplicialObject, y: &SimplicialObject) -> Self {
        Self::trusted(x, y, vec![f.clone(); x.truncation() + 1])
    }

    /// `f × Δ` with freshly built constant ends.
    pub fn constant(f: &ChainMap, big_n: usize) -> Self {
        let x = constant(f.source(), big_n);
        let y = constant(f.target(), big_n);
        Self::constant_between(f, &x, &y)
    }

    pub fn source(&self) -> &SimplicialObject {
        &self.source
    }

    pub fn target(&self) -> &SimplicialObject {
        &self.target
    }

    pub fn level(&self, n: usize) -> &ChainMap {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[ChainMap] {
        &self.levels
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &SimplicialMap) -> Result<SimplicialMap> {
        if f.target != self.source {
            return Err(Error::DimensionMismatch(
                "simplicial maps are not composable".into(),
            ));
        }
        let levels = f
            .levels
            .iter()
            .zip(&self.levels)
            .map(|(a, b)| a.then(b))
            .collect();
        Ok(Self::trusted(&f.source, &self.target, levels))
    }

    pub fn then(&self, g: &SimplicialMap) -> SimplicialMap {
        g.compose(self).expect("composable by construction")
    }

    pub fn is_levelwise_qis(&self) -> bool {
        self.levels.iter().all(ChainMap::is_qis)
    }

    pub fn upsilon(&self) -> SimplicialMap {
        Self::trusted(
            &self.source.upsilon(),
            &self.target.upsilon(),
            self.levels.clone(),
        )
    }

    /// The induced map of normalized total complexes.
    pub fn simple(&self) -> Result<ChainMap> {
        let (s, t) = (self.source.simple()?, self.target.simple()?);
        let len = s.complex.len().min(t.complex.len());
        let mut comps = Vec::with_capacity(len);
        for n in 0..len {
            let mut m = Matrix::zeros(t.complex.dim(n), s.complex.dim(n));
            for b in &s.blocks[n] {
                if let Some(tb) = t.blocks[n].iter().find(|tb| tb.p == b.p) {
                    let f = self.levels[b.p]
                        .comp(b.q)
                        .select_rows(&tb.coords)
                        .select_columns(&b.coords);
                    m.set_block(tb.offset, b.offset, &f);
                }
            }
            comps.push(m);
        }
        Ok(ChainMap::trusted(&s.complex, &t.complex, comps))
    }

    pub fn add(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::trusted(&self.source, &self.target, levels))
    }
}

/// Summands of a level being assembled: the dense sum and where each piece
/// starts in every internal degree.
pub(crate) struct Pieces {
    pub complex: ChainComplex,
    pub offsets: Vec<Vec<usize>>,
}

pub(crate) fn pieces(parts: &[&ChainComplex]) -> Pieces {
    let complex = sum_of(parts);
    let len = complex.len();
    let mut run = vec![0usize; len];
    let offsets = parts
        .iter()
        .map(|c| {
            let here = run.clone();
            for (q, r) in run.iter_mut().enumerate() {
                *r += c.dim(q);
            }
            here
        })
        .collect();
    Pieces { complex, offsets }
}

/// A block map between assembled levels; `blocks` holds
/// `(target piece, source piece, map)`.
pub(crate) fn assemble(
    src: &Pieces,
    tgt: &Pieces,
    blocks: &[(usize, usize, ChainMap)],
) -> ChainMap {
    let len = src.complex.len().min(tgt.complex.len());
    let comps = (0..len)
        .map(|q| {
            let mut m = Matrix::zeros(tgt.complex.dim(q), src.complex.dim(q));
            for (ti, si, f) in blocks {
                let c = f.comp(q);
                if c.rows() > 0 && c.cols() > 0 {
                    m.add_block(tgt.offsets[*ti][q], src.offsets[*si][q], &c);
                }
            }
            m
        })
        .collect();
    ChainMap::trusted(&src.complex, &tgt.complex, comps)
}

/// The levelwise map sending the atom tagged `t` identically onto the atom
/// tagged `rule(t)`, or to zero when `rule` returns `None`. The result is
/// checked to be simplicial.
pub fn tag_map(
    source: &SimplicialObject,
    target: &SimplicialObject,
    rule: impl Fn(&[Seg]) -> Option<Vec<Seg>>,
) -> Result<SimplicialMap> {
    let mut levels = Vec::new();
    for n in 0..=source.truncation() {
        let (xs, ys) = (source.level(n), target.level(n));
        let (so, to) = (source.atom_offsets(n), target.atom_offsets(n));
        let index = target.atom_index(n);
        let len = xs.len().min(ys.len());
        let mut comps: Vec<Matrix> = (0..len)
            .map(|q| Matrix::zeros(ys.dim(q), xs.dim(q)))
            .collect();
        for (a, atom) in source.atoms(n).iter().enumerate() {
            let Some(tag) = rule(&atom.tag) else { continue };
            let &b = index
                .get(tag.as_slice())
                .ok_or_else(|| Error::Invalid(format!("no atom tagged {tag:?} at level {n}")))?;
            if target.atoms(n)[b].dims != atom.dims {
                return Err(Error::DimensionMismatch(format!(
                    "atoms {:?} and {tag:?} differ",
                    atom.tag
                )));
            }
            for (q, m) in comps.iter_mut().enumerate() {
                if atom.dim(q) > 0 {
                    m.add_block(to[b][q], so[a][q], &Matrix::identity(atom.dim(q)));
                }
            }
        }
        levels.push(ChainMap::new(xs, ys, comps)?);
    }
    SimplicialMap::new(source, target, levels)
}

#[derive(Serialize, Deserialize)]
struct SimplicialJson {
    levels: Vec<ChainComplex>,
    faces: Vec<Vec<ChainMap>>,
    degeneracies: Vec<Vec<ChainMap>>,
    skeletal: usize,
}

impl Serialize for SimplicialObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SimplicialJson {
            levels: self.0.levels.clone(),
            faces: self.0.faces[1..].to_vec(),
            degeneracies: self.0.degens.clone(),
            skeletal: self.0.skeletal,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialObject {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = SimplicialJson::deserialize(de)?;
        let mut faces = vec![Vec::new()];
        faces.extend(raw.faces);
        SimplicialObject::new(raw.levels, faces, raw.degeneracies, raw.skeletal)
            .map_err(serde::de::Error::custom)
    }
}

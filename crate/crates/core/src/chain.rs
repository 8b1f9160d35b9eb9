//! Bounded chain complexes of finite-dimensional rational vector spaces,
//! chain maps, homology and the classical mapping cone.
//!
//! Complexes live in degrees `0..len()`, the differential has degree -1.
//! Homology is computed from an explicit splitting of every degree, which
//! also gives chain-level contractions; these are reused to build
//! quasi-inverses and null-homotopies.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};

struct Inner {
    dims: Vec<usize>,
    // d[n] has shape dims[n-1] x dims[n]; d[0] is a 0 x dims[0] placeholder.
    d: Vec<Matrix>,
    homology: OnceLock<Arc<Homology>>,
}

/// A bounded, non-negatively graded chain complex. Cheap to clone.
#[derive(Clone)]
pub struct ChainComplex {
    inner: Arc<Inner>,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.dims == other.inner.dims && self.inner.d == other.inner.d)
    }
}

impl Eq for ChainComplex {}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainComplex")
            .field("dims", &self.inner.dims)
            .field("d", &&self.inner.d[1.min(self.inner.d.len())..])
            .finish()
    }
}

impl ChainComplex {
    /// Builds a complex from `dims` and the differentials `d_1, d_2, ...`
    /// (`diffs[n - 1]` is `d_n`). Missing differentials are zero.
    pub fn new(dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if diffs.len() + 1 > dims.len().max(1) {
            if diffs
                .iter()
                .skip(dims.len().saturating_sub(1))
                .any(|m| !m.is_zero() || m.rows() + m.cols() > 0)
            {
                return Err(Error::DimensionMismatch(format!(
                    "{} differentials given for {} degrees",
                    diffs.len(),
                    dims.len()
                )));
            }
        }
        let mut d = Vec::with_capacity(dims.len());
        for n in 0..dims.len() {
            if n == 0 {
                d.push(Matrix::zeros(0, dims[0]));
                continue;
            }
            let m = match diffs.get(n - 1) {
                Some(m) => {
                    if m.shape() != (dims[n - 1], dims[n]) {
                        return Err(Error::DimensionMismatch(format!(
                            "d_{n} has shape {:?}, expected {:?}",
                            m.shape(),
                            (dims[n - 1], dims[n])
                        )));
                    }
                    m.clone()
                }
                None => Matrix::zeros(dims[n - 1], dims[n]),
            };
            d.push(m);
        }
        for n in 2..dims.len() {
            if !(&d[n - 1] * &d[n]).is_zero() {
                return Err(Error::Invalid(format!("d_{} d_{} is not zero", n - 1, n)));
            }
        }
        Ok(Self::from_trusted(dims, d))
    }

    fn from_trusted(mut dims: Vec<usize>, mut d: Vec<Matrix>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
            d.pop();
        }
        ChainComplex {
            inner: Arc::new(Inner {
                dims,
                d,
                homology: OnceLock::new(),
            }),
        }
    }

    pub fn zero() -> Self {
        Self::from_trusted(Vec::new(), Vec::new())
    }

    /// `Q^dim` placed in a single degree.
    pub fn concentrated(degree: usize, dim: usize) -> Self {
        let mut dims = vec![0; degree + 1];
        dims[degree] = dim;
        Self::new(dims, Vec::new()).expect("zero differential")
    }

    /// Number of stored degrees; every degree `>= len()` is zero.
    pub fn len(&self) -> usize {
        self.inner.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.inner.dims.get(n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }

    /// The differential `d_n : C_n -> C_{n-1}`, for `n >= 1`.
    pub fn d(&self, n: usize) -> Cow<'_, Matrix> {
        assert!(n >= 1, "d_0 is not a differential");
        match self.inner.d.get(n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim(n - 1), self.dim(n))),
        }
    }

    pub fn homology(&self) -> Arc<Homology> {
        self.inner
            .homology
            .get_or_init(|| Arc::new(Homology::compute(self)))
            .clone()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.homology().dims()
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti().iter().all(|&b| b == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.inner
            .dims
            .iter()
            .enumerate()
            .map(|(n, &k)| if n % 2 == 0 { k as i64 } else { -(k as i64) })
            .sum()
    }
}

/// Splitting data of one degree: `C_n = B_n ⊕ H_n ⊕ W_n` with `d` mapping
/// `W_n` isomorphically onto `B_{n-1}`.
#[derive(Clone, Debug)]
pub struct HomologyDegree {
    pub cycles: Subspace,
    pub boundaries: Subspace,
    /// Columns are cycles representing a basis of homology.
    pub reps: Matrix,
    /// Coordinates in the homology basis; kills boundaries and `W_n`.
    pub proj: Matrix,
    /// `k_n : C_n -> C_{n+1}` with `1 - reps·proj = d k + k d`.
    pub contraction: Matrix,
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub degrees: Vec<HomologyDegree>,
}

impl Homology {
    fn compute(c: &ChainComplex) -> Self {
        let len = c.len();
        let cycles: Vec<Subspace> = (0..len)
            .map(|n| {
                if n == 0 {
                    Subspace::full(c.dim(0))
                } else {
                    decompose_kernel(&c.d(n))
                }
            })
            .collect();
        let w: Vec<Matrix> = (0..len)
            .map(|n| {
                Subspace::full(c.dim(n))
                    .complement_of(&cycles[n])
                    .expect("same ambient")
            })
            .collect();
        let mut degrees = Vec::with_capacity(len);
        for n in 0..len {
            let dim = c.dim(n);
            let (bd, w_next) = if n + 1 < len {
                (&*c.d(n + 1) * &w[n + 1], w[n + 1].clone())
            } else {
                (Matrix::zeros(dim, 0), Matrix::zeros(c.dim(n + 1), 0))
            };
            let boundaries = Subspace::from_basis(dim, bd.clone()).expect("d is injective on W");
            let hr = cycles[n].complement_of(&boundaries).expect("same ambient");
            let p = Matrix::hstack(dim, &[&bd, &hr, &w[n]]);
            let pinv = p.inverse().expect("adapted basis");
            let (nb, nh) = (bd.cols(), hr.cols());
            let rows_b: Vec<usize> = (0..nb).collect();
            let rows_h: Vec<usize> = (nb..nb + nh).collect();
            let proj = pinv.select_rows(&rows_h);
            let contraction = &w_next * &pinv.select_rows(&rows_b);
            degrees.push(HomologyDegree {
                cycles: cycles[n].clone(),
                boundaries,
                reps: hr,
                proj,
                contraction,
            });
        }
        Homology { degrees }
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.degrees.iter().map(|d| d.reps.cols()).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.reps.cols())
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    fn proj(&self, n: usize, ambient: usize) -> Cow<'_, Matrix> {
        match self.degrees.get(n) {
            Some(d) => Cow::Borrowed(&d.proj),
            None => Cow::Owned(Matrix::zeros(0, ambient)),
        }
    }

    fn reps(&self, n: usize, ambient: usize) -> Cow<'_, Matrix> {
        match self.degrees.get(n) {
            Some(d) => Cow::Borrowed(&d.reps),
            None => Cow::Owned(Matrix::zeros(ambient, 0)),
        }
    }

    fn contraction(&self, n: usize, src: usize, tgt: usize) -> Cow<'_, Matrix> {
        match self.degrees.get(n) {
            Some(d) if d.contraction.shape() == (tgt, src) => Cow::Borrowed(&d.contraction),
            _ => Cow::Owned(Matrix::zeros(tgt, src)),
        }
    }
}

fn decompose_kernel(m: &Matrix) -> Subspace {
    Subspace::from_basis(m.cols(), m.kernel_basis()).expect("kernel basis is independent")
}

/// A map between homologies, one matrix per degree, in the bases chosen by
/// [`Homology`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedMap {
    pub blocks: Vec<Matrix>,
}

impl GradedMap {
    pub fn new(mut blocks: Vec<Matrix>) -> Self {
        while blocks
            .last()
            .is_some_and(|b| b.rows() == 0 && b.cols() == 0)
        {
            blocks.pop();
        }
        GradedMap { blocks }
    }

    pub fn identity(dims: &[usize]) -> Self {
        Self::new(dims.iter().map(|&k| Matrix::identity(k)).collect())
    }

    pub fn zero(target: &[usize], source: &[usize]) -> Self {
        let len = target.len().max(source.len());
        Self::new(
            (0..len)
                .map(|n| Matrix::zeros(at(target, n), at(source, n)))
                .collect(),
        )
    }

    pub fn block(&self, n: usize) -> Option<&Matrix> {
        self.blocks.get(n)
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::cols).collect()
    }

    pub fn target_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    fn block_or_empty(&self, n: usize, rows: usize, cols: usize) -> Cow<'_, Matrix> {
        match self.blocks.get(n) {
            Some(b) => Cow::Borrowed(b),
            None => Cow::Owned(Matrix::zeros(rows, cols)),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        let len = self.blocks.len().max(other.blocks.len());
        let mut out = Vec::with_capacity(len);
        for n in 0..len {
            let a = other.blocks.get(n);
            let b = self.blocks.get(n);
            let mid_b = b.map_or(0, Matrix::cols);
            let mid_a = a.map_or(0, Matrix::rows);
            if mid_a != mid_b {
                return Err(Error::DimensionMismatch(format!(
                    "graded composition in degree {n}: {mid_b} vs {mid_a}"
                )));
            }
            let a = other.block_or_empty(n, mid_a, 0);
            let b = self.block_or_empty(n, 0, mid_b);
            out.push(&*b * &*a);
        }
        Ok(GradedMap::new(out))
    }

    fn zip(&self, other: &GradedMap, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> Result<GradedMap> {
        let len = self.blocks.len().max(other.blocks.len());
        let mut out = Vec::with_capacity(len);
        for n in 0..len {
            let (r, c) = self
                .blocks
                .get(n)
                .or(other.blocks.get(n))
                .map_or((0, 0), Matrix::shape);
            let a = self.block_or_empty(n, r, c);
            let b = other.block_or_empty(n, r, c);
            if a.shape() != b.shape() {
                return Err(Error::DimensionMismatch(format!(
                    "graded maps differ in shape in degree {n}"
                )));
            }
            out.push(f(&a, &b));
        }
        Ok(GradedMap::new(out))
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> GradedMap {
        GradedMap::new(self.blocks.iter().map(|b| -b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<GradedMap> {
        self.blocks
            .iter()
            .map(Matrix::inverse)
            .collect::<Option<Vec<_>>>()
            .map(GradedMap::new)
    }

    pub fn is_identity(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_square() && *b == Matrix::identity(b.rows()))
    }

    /// Degreewise block diagonal sum.
    pub fn direct_sum(&self, other: &GradedMap) -> GradedMap {
        let len = self.blocks.len().max(other.blocks.len());
        GradedMap::new(
            (0..len)
                .map(|n| {
                    let a = self.block_or_empty(n, 0, 0);
                    let b = other.block_or_empty(n, 0, 0);
                    Matrix::block_diag(&[&a, &b])
                })
                .collect(),
        )
    }

    /// Equality that ignores trailing empty blocks and treats a missing
    /// degree as an empty block.
    pub fn same_as(&self, other: &GradedMap) -> bool {
        let len = self.blocks.len().max(other.blocks.len());
        (0..len).all(|n| match (self.blocks.get(n), other.blocks.get(n)) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) | (None, Some(a)) => a.rows() == 0 || a.cols() == 0,
            (None, None) => true,
        })
    }
}

fn at(v: &[usize], n: usize) -> usize {
    v.get(n).copied().unwrap_or(0)
}

/// A chain map. Components are stored for the degrees where both sides can
/// be nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: Vec<Matrix>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("source", &self.source.dims())
            .field("target", &self.target.dims())
            .field("f", &self.comps)
            .finish()
    }
}

impl ChainMap {
    /// Validates shapes and the chain condition `d f = f d`.
    pub fn new(source: &ChainComplex, target: &ChainComplex, comps: Vec<Matrix>) -> Result<Self> {
        let m = Self::unchecked(source, target, comps)?;
        m.check_chain()?;
        Ok(m)
    }

    fn unchecked(
        source: &ChainComplex,
        target: &ChainComplex,
        mut comps: Vec<Matrix>,
    ) -> Result<Self> {
        let keep = source.len().min(target.len());
        for (n, c) in comps.iter().enumerate() {
            if c.shape() != (target.dim(n), source.dim(n)) {
                return Err(Error::DimensionMismatch(format!(
                    "component f_{n} has shape {:?}, expected {:?}",
                    c.shape(),
                    (target.dim(n), source.dim(n))
                )));
            }
        }
        comps.truncate(keep);
        while comps.len() < keep {
            let n = comps.len();
            comps.push(Matrix::zeros(target.dim(n), source.dim(n)));
        }
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        })
    }

    /// Skips the chain condition; for internal constructions whose
    /// correctness is asserted by tests.
    pub(crate) fn trusted(
        source: &ChainComplex,
        target: &ChainComplex,
        comps: Vec<Matrix>,
    ) -> Self {
        let m = Self::unchecked(source, target, comps).expect("component shapes");
        debug_assert!(m.check_chain().is_ok(), "not a chain map");
        m
    }

    fn check_chain(&self) -> Result<()> {
        let len = self.source.len().max(self.target.len());
        for n in 1..=len {
            let lhs = &*self.target.d(n) * &*self.comp(n);
            let rhs = &*self.comp(n - 1) * &*self.source.d(n);
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "chain condition fails in degree {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            comps: c.dims().iter().map(|&k| Matrix::identity(k)).collect(),
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self::unchecked(source, target, Vec::new()).expect("zero map")
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, n: usize) -> Cow<'_, Matrix> {
        match self.comps.get(n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.target.dim(n), self.source.dim(n))),
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap) -> Result<ChainMap> {
        if f.target != self.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: target {:?} vs source {:?}",
                f.target.dims(),
                self.source.dims()
            )));
        }
        let keep = f.source.len().min(self.target.len());
        let comps = (0..keep).map(|n| &*self.comp(n) * &*f.comp(n)).collect();
        Ok(ChainMap {
            source: f.source.clone(),
            target: self.target.clone(),
            comps,
        })
    }

    /// Like [`compose`](Self::compose) for maps whose composability is
    /// guaranteed by construction.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        g.compose(self).expect("composable by construction")
    }

    fn zip(&self, other: &ChainMap, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("maps are not parallel".into()));
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn induced_homology(&self) -> GradedMap {
        let hs = self.source.homology();
        let ht = self.target.homology();
        let len = self.source.len().max(self.target.len());
        GradedMap::new(
            (0..len)
                .map(|n| {
                    &(&*ht.proj(n, self.target.dim(n)) * &*self.comp(n))
                        * &*hs.reps(n, self.source.dim(n))
                })
                .collect(),
        )
    }

    pub fn is_qis(&self) -> bool {
        let (a, b) = (self.source.betti(), self.target.betti());
        a == b && self.induced_homology().is_iso()
    }

    /// A chain map `target -> source` inverting this map on homology.
    pub fn quasi_inverse(&self) -> Result<ChainMap> {
        let h = self.induced_homology();
        let inv = h
            .inverse()
            .filter(|_| self.is_qis())
            .ok_or_else(|| Error::NotQuasiIso("map has no homology inverse".into()))?;
        Ok(realize_graded(&self.target, &self.source, &inv))
    }

    /// Checks `self - other = d h + h d` where `h[n] : A_n -> B_{n+1}`.
    pub fn is_homotopy(&self, other: &ChainMap, h: &[Matrix]) -> bool {
        let (a, b) = (&self.source, &self.target);
        let len = a.len().max(b.len());
        let hn = |n: usize| -> Matrix {
            h.get(n)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(b.dim(n + 1), a.dim(n)))
        };
        for n in 0..len {
            if h.get(n)
                .is_some_and(|m| m.shape() != (b.dim(n + 1), a.dim(n)))
            {
                return false;
            }
            let mut rhs = &*b.d(n + 1) * &hn(n);
            if n >= 1 {
                rhs = &rhs + &(&hn(n - 1) * &*a.d(n));
            }
            let lhs = &*self.comp(n) - &*other.comp(n);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// A chain homotopy `h` with `self = d h + h d`, provided the map is zero
    /// on homology.
    pub fn null_homotopy(&self) -> Option<Vec<Matrix>> {
        if !self.induced_homology().is_zero() {
            return None;
        }
        let (a, b) = (&self.source, &self.target);
        let (ha, hb) = (a.homology(), b.homology());
        let len = a.len().max(b.len());
        let h = (0..len)
            .map(|n| {
                let kb = hb.contraction(n, b.dim(n), b.dim(n + 1));
                let first = &*kb * &*self.comp(n);
                let ka = ha.contraction(n, a.dim(n), a.dim(n + 1));
                let ib = hb.reps(n + 1, b.dim(n + 1));
                let pb = hb.proj(n + 1, b.dim(n + 1));
                let second = &(&(&*ib * &*pb) * &*self.comp(n + 1)) * &*ka;
                &first + &second
            })
            .collect();
        Some(h)
    }

    /// Block diagonal map `A ⊕ A' -> B ⊕ B'`.
    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let s = direct_sum(&[&self.source, &other.source]);
        let t = direct_sum(&[&self.target, &other.target]);
        let len = s.sum.len().min(t.sum.len());
        let comps = (0..len)
            .map(|n| Matrix::block_diag(&[&self.comp(n), &other.comp(n)]))
            .collect();
        ChainMap::trusted(&s.sum, &t.sum, comps)
    }
}

/// The chain map `reps_T · g · proj_S`, which realizes any graded map.
pub fn realize_graded(source: &ChainComplex, target: &ChainComplex, g: &GradedMap) -> ChainMap {
    let (hs, ht) = (source.homology(), target.homology());
    let len = source.len().min(target.len());
    let comps = (0..len)
        .map(|n| {
            let blk = g.block_or_empty(n, ht.dim(n), hs.dim(n));
            &(&*ht.reps(n, target.dim(n)) * &*blk) * &*hs.proj(n, source.dim(n))
        })
        .collect();
    ChainMap::trusted(source, target, comps)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: ChainComplex,
    pub inclusions: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

/// The direct sum alone, without structure maps.
pub fn sum_of(parts: &[&ChainComplex]) -> ChainComplex {
    let len = parts.iter().map(|c| c.len()).max().unwrap_or(0);
    let dims: Vec<usize> = (0..len)
        .map(|n| parts.iter().map(|c| c.dim(n)).sum())
        .collect();
    let mut d = vec![Matrix::zeros(0, at(&dims, 0))];
    for n in 1..len {
        let blocks: Vec<Cow<'_, Matrix>> = parts.iter().map(|c| c.d(n)).collect();
        let refs: Vec<&Matrix> = blocks.iter().map(|b| &**b).collect();
        d.push(Matrix::block_diag(&refs));
    }
    ChainComplex::from_trusted(dims, d)
}

pub fn direct_sum(parts: &[&ChainComplex]) -> DirectSum {
    let sum = sum_of(parts);
    let dims = sum.dims().to_vec();
    let len = dims.len();
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offsets = vec![0usize; len];
    for c in parts {
        let mut inc = Vec::new();
        let mut pro = Vec::new();
        for n in 0..len {
            let mut i = Matrix::zeros(dims[n], c.dim(n));
            i.set_block(offsets[n], 0, &Matrix::identity(c.dim(n)));
            pro.push(i.transpose());
            inc.push(i);
            offsets[n] += c.dim(n);
        }
        inclusions.push(ChainMap::trusted(c, &sum, inc));
        projections.push(ChainMap::trusted(&sum, c, pro));
    }
    DirectSum {
        sum,
        inclusions,
        projections,
    }
}

/// `C[k]`: degree `n` holds `C_{n-k}`, differential multiplied by `(-1)^k`.
pub fn shift(c: &ChainComplex, k: usize) -> ChainComplex {
    let mut dims = vec![0; k];
    dims.extend_from_slice(c.dims());
    let sign = if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    let mut d = vec![Matrix::zeros(0, at(&dims, 0))];
    for n in 1..dims.len() {
        if n > k {
            d.push(c.d(n - k).scale(&sign));
        } else {
            d.push(Matrix::zeros(dims[n - 1], dims[n]));
        }
    }
    ChainComplex::from_trusted(dims, d)
}

/// The textbook mapping cone `B_n ⊕ A_{n-1}` with `d(b, a) = (db + fa, -da)`.
#[derive(Clone, Debug)]
pub struct ClassicalCone {
    pub cone: ChainComplex,
    pub inclusion: ChainMap,
    /// Projection onto `A[1]`.
    pub projection: ChainMap,
}

pub fn classical_cone(f: &ChainMap) -> ClassicalCone {
    let (a, b) = (f.source(), f.target());
    let len = b.len().max(a.len() + 1);
    let dims: Vec<usize> = (0..len)
        .map(|n| b.dim(n) + if n >= 1 { a.dim(n - 1) } else { 0 })
        .collect();
    let mut d = vec![Matrix::zeros(0, dims[0])];
    for n in 1..len {
        let mut m = Matrix::zeros(dims[n - 1], dims[n]);
        m.set_block(0, 0, &b.d(n));
        m.set_block(0, b.dim(n), &f.comp(n - 1));
        if n >= 2 {
            m.set_block(b.dim(n - 1), b.dim(n), &-&*a.d(n - 1));
        }
        d.push(m);
    }
    let cone = ChainComplex::from_trusted(dims.clone(), d);
    let a1 = shift(a, 1);
    let inc = (0..len)
        .map(|n| {
            let mut m = Matrix::zeros(dims[n], b.dim(n));
            m.set_block(0, 0, &Matrix::identity(b.dim(n)));
            m
        })
        .collect();
    let pro = (0..len)
        .map(|n| {
            let an = if n >= 1 { a.dim(n - 1) } else { 0 };
            let mut m = Matrix::zeros(an, dims[n]);
            m.set_block(0, b.dim(n), &Matrix::identity(an));
            m
        })
        .collect();
    ClassicalCone {
        inclusion: ChainMap::trusted(b, &cone, inc),
        projection: ChainMap::trusted(&cone, &a1, pro),
        cone,
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    dims: Vec<usize>,
    #[serde(default)]
    d: BTreeMap<String, Matrix>,
}

impl Serialize for ChainComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // zero differentials are omitted; empty shapes do not survive a round trip
        let d = (1..self.len())
            .filter(|&n| !self.d(n).is_zero())
            .map(|n| (n.to_string(), self.d(n).into_owned()))
            .collect();
        ComplexJson {
            dims: self.dims().to_vec(),
            d,
        }
        .serialize(s)
    }
}

fn degree_key<E: serde::de::Error>(k: &str) -> std::result::Result<usize, E> {
    k.parse()
        .map_err(|_| E::custom(format!("degree key `{k}` is not a natural number")))
}

impl<'de> Deserialize<'de> for ChainComplex {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(de)?;
        let mut diffs = vec![None; raw.dims.len().saturating_sub(1)];
        for (k, m) in raw.d {
            let n: usize = degree_key(&k)?;
            if n == 0 || n > diffs.len() {
                return Err(serde::de::Error::custom(format!(
                    "differential d_{n} is out of range"
                )));
            }
            diffs[n - 1] = Some(m);
        }
        let diffs = diffs
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.unwrap_or_else(|| Matrix::zeros(raw.dims[i], raw.dims[i + 1])))
            .collect();
        ChainComplex::new(raw.dims, diffs).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    source: ChainComplex,
    target: ChainComplex,
    #[serde(default)]
    f: BTreeMap<String, Matrix>,
}

impl Serialize for ChainMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(n, m)| (n.to_string(), m.clone()))
            .collect();
        MapJson {
            source: self.source.clone(),
            target: self.target.clone(),
            f,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChainMap {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MapJson::deserialize(de)?;
        let len = raw.source.len().min(raw.target.len());
        let mut comps: Vec<Matrix> = (0..len)
            .map(|n| Matrix::zeros(raw.target.dim(n), raw.source.dim(n)))
            .collect();
        for (k, m) in raw.f {
            let n: usize = degree_key(&k)?;
            if n < len {
                comps[n] = m;
            } else if !m.is_zero() || m.shape() != (raw.target.dim(n), raw.source.dim(n)) {
                return Err(serde::de::Error::custom(format!(
                    "component f_{n} is out of range"
                )));
            }
        }
        ChainMap::new(&raw.source, &raw.target, comps).map_err(serde::de::Error::custom)
    }
}

/// `(-1)^k`.
pub fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize) -> ChainComplex {
        ChainComplex::concentrated(0, n)
    }

    fn two_term(d: i64) -> ChainComplex {
        ChainComplex::new(vec![1, 1], vec![Matrix::from_i64(1, 1, &[d])]).unwrap()
    }

    #[test]
    fn homology_examples() {
        assert!(two_term(1).is_acyclic());
        assert_eq!(two_term(0).betti(), vec![1, 1]);

        let c = ChainComplex::new(
            vec![1, 2, 1],
            vec![
                Matrix::from_i64(1, 2, &[0, 1]),
                Matrix::from_i64(2, 1, &[1, 0]),
            ],
        )
        .unwrap();
        // rank d1 = 1, rank d2 = 1: H0 = 0, H1 = 2 - 1 - 1 = 0, H2 = 0.
        assert_eq!(c.betti(), Vec::<usize>::new());

        let bad = ChainComplex::new(
            vec![1, 1, 1],
            vec![Matrix::from_i64(1, 1, &[1]), Matrix::from_i64(1, 1, &[1])],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn splitting_identities() {
        let c = ChainComplex::new(
            vec![2, 3, 1],
            vec![
                Matrix::from_i64(2, 3, &[1, 1, 0, 0, 0, 0]),
                Matrix::from_i64(3, 1, &[1, -1, 0]),
            ],
        )
        .unwrap();
        let h = c.homology();
        for n in 0..c.len() {
            let deg = &h.degrees[n];
            let one = Matrix::identity(c.dim(n));
            let mut rhs = &*c.d(n + 1) * &deg.contraction;
            if n >= 1 {
                rhs = &rhs + &(&h.degrees[n - 1].contraction * &*c.d(n));
            }
            assert_eq!(&one - &(&deg.reps * &deg.proj), rhs, "degree {n}");
            assert_eq!(&deg.proj * &deg.reps, Matrix::identity(deg.reps.cols()));
        }
    }

    #[test]
    fn induced_maps() {
        let c = q(1);
        let two = ChainMap::new(&c, &c, vec![Matrix::from_i64(1, 1, &[2])]).unwrap();
        assert_eq!(
            two.induced_homology().blocks[0],
            Matrix::from_i64(1, 1, &[2])
        );
        assert!(ChainMap::identity(&c).induced_homology().is_identity());
        let zero = ChainMap::zero(&c, &c);
        assert!(!zero.is_qis());
        assert!(ChainMap::zero(&ChainComplex::zero(), &two_term(1)).is_qis());
        let to_acyclic =
            ChainMap::new(&c, &two_term(1), vec![Matrix::from_i64(1, 1, &[1])]).unwrap();
        assert!(to_acyclic.induced_homology().is_zero());
    }

    #[test]
    fn cones_and_shifts() {
        let c = two_term(0);
        assert!(classical_cone(&ChainMap::identity(&c)).cone.is_acyclic());
        let zero = ChainMap::zero(&c, &ChainComplex::zero());
        assert_eq!(classical_cone(&zero).cone, shift(&c, 1));
        assert_eq!(shift(&q(1), 1).dims(), &[0, 1]);
        let s = direct_sum(&[&two_term(1), &two_term(1)]);
        assert!(s.sum.is_acyclic());
    }

    #[test]
    fn null_homotopy_of_zero_on_homology() {
        let a = two_term(0);
        let b = two_term(1);
        let f = ChainMap::new(
            &a,
            &b,
            vec![Matrix::from_i64(1, 1, &[3]), Matrix::zeros(1, 1)],
        )
        .unwrap();
        let h = f.null_homotopy().unwrap();
        assert!(f.is_homotopy(&ChainMap::zero(&a, &b), &h));
    }

    #[test]
    fn json_roundtrip() {
        let c = ChainComplex::new(vec![1, 2], vec![Matrix::from_i64(1, 2, &[1, -1])]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"dims":[1,2],"d":{"1":[["1","-1"]]}}"#);
        let back: ChainComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let f = ChainMap::identity(&c);
        let back: ChainMap = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<ChainComplex>(
            r#"{"dims":[1,1,1],"d":{"1":[["1"]],"2":[["1"]]}}"#
        )
        .is_err());
    }
}

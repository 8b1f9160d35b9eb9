//! Bounded filtered cochain complexes and their spectral sequences.
//!
//! Cochain convention: `d : A^n -> A^{n+1}`. Filtrations are decreasing,
//! indexed by `p ∈ Z`, full below the stored range and zero above it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};

mod dec;
mod gen;
mod path;

pub use dec::{dec, dec_map, dec_reindex};
pub use gen::{coarsening, random_filtered, random_filtered_map};
pub use path::{fiber_sequence, loop_object, path, FiberSequence, PathFiltration};

#[cfg(test)]
mod tests;

/// A bounded cochain complex in degrees `0..len`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "CochainJson")]
pub struct Cochain {
    dims: Vec<usize>,
    /// `d[n] : A^n -> A^{n+1}`.
    d: Vec<Matrix>,
}

#[derive(Deserialize)]
struct CochainJson {
    dims: Vec<usize>,
    d: Vec<Matrix>,
}

impl TryFrom<CochainJson> for Cochain {
    type Error = Error;

    fn try_from(c: CochainJson) -> Result<Cochain> {
        Cochain::new(c.dims, c.d)
    }
}

/// Trailing zero-dimensional degrees do not count.
impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        let top = |c: &Cochain| c.dims.iter().rposition(|&k| k > 0).map_or(0, |n| n + 1);
        let (m, n) = (top(self), top(other));
        m == n && self.dims[..m] == other.dims[..n] && self.d[..m] == other.d[..n]
    }
}

impl Eq for Cochain {}

impl Cochain {
    pub fn new(dims: Vec<usize>, mut d: Vec<Matrix>) -> Result<Self> {
        if d.len() > dims.len() {
            return Err(Error::DimensionMismatch(
                "more differentials than degrees".into(),
            ));
        }
        d.resize_with(dims.len(), || Matrix::zeros(0, 0));
        for n in 0..dims.len() {
            let rows = dims.get(n + 1).copied().unwrap_or(0);
            if d[n].rows() == 0 && d[n].cols() == 0 {
                d[n] = Matrix::zeros(rows, dims[n]);
            }
            if d[n].shape() != (rows, dims[n]) {
                return Err(Error::DimensionMismatch(format!(
                    "d^{n} has shape {:?}",
                    d[n].shape()
                )));
            }
            if n > 0 && !(&d[n] * &d[n - 1]).is_zero() {
                return Err(Error::Invalid(format!("d^{n} d^{} != 0", n - 1)));
            }
        }
        Ok(Cochain { dims, d })
    }

    pub fn zero() -> Self {
        Cochain {
            dims: Vec::new(),
            d: Vec::new(),
        }
    }

    /// The dual `Hom(C, Q)`: degree `n` is `C_n^*` with `d^n = (d_{n+1})^T`.
    pub fn dual_of(c: &ChainComplex) -> Self {
        let dims = c.dims().to_vec();
        let d = (0..dims.len())
            .map(|n| {
                if n + 1 < dims.len() {
                    c.d(n + 1).transpose()
                } else {
                    Matrix::zeros(0, dims[n])
                }
            })
            .collect();
        Cochain { dims, d }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: i64) -> usize {
        usize::try_from(n)
            .ok()
            .and_then(|n| self.dims.get(n))
            .copied()
            .unwrap_or(0)
    }

    /// `d^n`, zero outside the stored range.
    pub fn d(&self, n: i64) -> Matrix {
        match usize::try_from(n).ok().and_then(|k| self.d.get(k)) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..self.len() as i64)
            .map(|n| {
                let out = self.d(n);
                out.cols() - out.rank() - self.d(n - 1).rank()
            })
            .collect()
    }

    /// `X[-1]`: degree `n` holds `X^{n-1}`, differential `-d`.
    pub fn desuspend(&self) -> Self {
        let mut dims = vec![0];
        dims.extend_from_slice(&self.dims);
        let mut d = vec![Matrix::zeros(self.dim(0), 0)];
        d.extend(self.d.iter().map(|m| -m));
        Cochain { dims, d }
    }
}

/// A chain map between cochain complexes, possibly raising degree by
/// `shift`.
fn check_cochain_map(
    source: &Cochain,
    target: &Cochain,
    comps: &[Matrix],
    shift: i64,
    sign: bool,
) -> Result<()> {
    for n in 0..source.len() as i64 {
        let f = comp(comps, n, target.dim(n + shift), source.dim(n));
        if f.shape() != (target.dim(n + shift), source.dim(n)) {
            return Err(Error::DimensionMismatch(format!(
                "component {n} has shape {:?}",
                f.shape()
            )));
        }
        let next = comp(comps, n + 1, target.dim(n + 1 + shift), source.dim(n + 1));
        let lhs = &target.d(n + shift) * &f;
        let rhs = &next * &source.d(n);
        let ok = if sign { lhs == -&rhs } else { lhs == rhs };
        if !ok {
            return Err(Error::NotCommuting(format!(
                "component {n} does not commute with d"
            )));
        }
    }
    Ok(())
}

fn comp(comps: &[Matrix], n: i64, rows: usize, cols: usize) -> Matrix {
    usize::try_from(n)
        .ok()
        .and_then(|k| comps.get(k))
        .cloned()
        .unwrap_or_else(|| Matrix::zeros(rows, cols))
}

/// A cochain complex with a decreasing filtration preserved by `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    pub complex: Cochain,
    lo: i64,
    // steps[k][n] = F^{lo+k} A^n
    steps: Vec<Vec<Subspace>>,
}

impl FilteredComplex {
    pub fn new(complex: Cochain, lo: i64, steps: Vec<Vec<Subspace>>) -> Result<Self> {
        let f = FilteredComplex { complex, lo, steps };
        f.validate()?;
        Ok(f)
    }

    /// `F^p = A` for `p ≤ 0` and `F^1 = 0`.
    pub fn trivial(complex: Cochain) -> Self {
        let full = complex.dims().iter().map(|&k| Subspace::full(k)).collect();
        FilteredComplex {
            complex,
            lo: 0,
            steps: vec![full],
        }
    }

    fn validate(&self) -> Result<()> {
        let len = self.complex.len();
        for (k, step) in self.steps.iter().enumerate() {
            if step.len() != len {
                return Err(Error::DimensionMismatch(format!(
                    "filtration step {k} covers {} degrees",
                    step.len()
                )));
            }
            for (n, s) in step.iter().enumerate() {
                if s.ambient() != self.complex.dims()[n] {
                    return Err(Error::DimensionMismatch(format!(
                        "F^{} A^{n} has the wrong ambient",
                        self.lo + k as i64
                    )));
                }
            }
        }
        for p in self.lo..=self.hi() {
            for n in 0..len as i64 {
                if !self.level(p, n).contains_subspace(&self.level(p + 1, n)) {
                    return Err(Error::Invalid(format!(
                        "filtration not decreasing at p = {p}, n = {n}"
                    )));
                }
                if !self
                    .level(p, n + 1)
                    .contains_subspace(&self.level(p, n).image_under(&self.complex.d(n))?)
                {
                    return Err(Error::Invalid(format!(
                        "d does not preserve F^{p} in degree {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// First index at which every step is zero.
    pub fn hi(&self) -> i64 {
        self.lo + self.steps.len() as i64
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// `F^p A^n`.
    pub fn level(&self, p: i64, n: i64) -> Subspace {
        let dim = self.complex.dim(n);
        if n < 0 || n as usize >= self.complex.len() {
            return Subspace::zero(dim);
        }
        if p < self.lo {
            Subspace::full(dim)
        } else if p >= self.hi() {
            Subspace::zero(dim)
        } else {
            self.steps[(p - self.lo) as usize][n as usize].clone()
        }
    }

    /// Number of nontrivial steps; pages stabilize from `r = length + 1`.
    pub fn length(&self) -> usize {
        self.steps.len() + 1
    }

    /// Filtration indices where `gr^p` can be nonzero.
    pub fn graded_range(&self) -> std::ops::RangeInclusive<i64> {
        (self.lo - 1)..=(self.hi() - 1)
    }

    /// Rebuilds the stored steps from a rule `(p, n) -> F^p A^n` on
    /// `[lo, hi)`.
    pub fn from_rule(
        complex: Cochain,
        lo: i64,
        hi: i64,
        rule: impl Fn(i64, i64) -> Subspace,
    ) -> Result<Self> {
        let steps = (lo..hi)
            .map(|p| (0..complex.len() as i64).map(|n| rule(p, n)).collect())
            .collect();
        Self::new(complex, lo, steps)
    }
}

#[derive(Serialize, Deserialize)]
struct FilteredJson {
    complex: Cochain,
    /// `"p,n"` to a matrix whose columns span `F^p A^n`.
    filtration: BTreeMap<String, Matrix>,
}

impl Serialize for FilteredComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut filtration = BTreeMap::new();
        for p in self.lo..self.hi() {
            for n in 0..self.complex.len() as i64 {
                filtration.insert(format!("{p},{n}"), self.level(p, n).basis().clone());
            }
        }
        FilteredJson {
            complex: self.complex.clone(),
            filtration,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FilteredComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = FilteredJson::deserialize(d)?;
        let mut keyed = BTreeMap::new();
        for (k, m) in j.filtration {
            let (p, n) = k
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad filtration key {k}")))?;
            let p: i64 = p.trim().parse().map_err(D::Error::custom)?;
            let n: usize = n.trim().parse().map_err(D::Error::custom)?;
            keyed.insert((p, n), m);
        }
        let lo = keyed.keys().map(|k| k.0).min().unwrap_or(0);
        let hi = keyed.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let dims = j.complex.dims().to_vec();
        let mut steps = Vec::new();
        for p in lo..hi {
            let mut step = Vec::new();
            for (n, &dim) in dims.iter().enumerate() {
                let s = match keyed.get(&(p, n)) {
                    Some(m) if m.rows() == dim => Subspace::span(dim, m),
                    Some(_) => {
                        return Err(D::Error::custom(format!(
                            "F^{p} A^{n} has the wrong number of rows"
                        )))
                    }
                    None => return Err(D::Error::custom(format!("missing F^{p} A^{n}"))),
                };
                step.push(s);
            }
            steps.push(step);
        }
        FilteredComplex::new(j.complex, lo, steps).map_err(D::Error::custom)
    }
}

/// A cochain map with `f(F^p) ⊆ G^p`.
#[derive(Clone, Debug)]
pub struct FilteredMap {
    pub source: FilteredComplex,
    pub target: FilteredComplex,
    pub comps: Vec<Matrix>,
}

impl FilteredMap {
    pub fn new(
        source: &FilteredComplex,
        target: &FilteredComplex,
        comps: Vec<Matrix>,
    ) -> Result<Self> {
        let comps: Vec<Matrix> = (0..source.complex.len() as i64)
            .map(|n| comp(&comps, n, target.complex.dim(n), source.complex.dim(n)))
            .collect();
        check_cochain_map(&source.complex, &target.complex, &comps, 0, false)?;
        check_filtered(source, target, &comps, 0)?;
        Ok(FilteredMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        })
    }

    pub fn identity(f: &FilteredComplex) -> Self {
        let comps = f
            .complex
            .dims()
            .iter()
            .map(|&k| Matrix::identity(k))
            .collect();
        FilteredMap {
            source: f.clone(),
            target: f.clone(),
            comps,
        }
    }

    pub fn zero(source: &FilteredComplex, target: &FilteredComplex) -> Self {
        let comps = (0..source.complex.len() as i64)
            .map(|n| Matrix::zeros(target.complex.dim(n), source.complex.dim(n)))
            .collect();
        FilteredMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    /// The cochain dual of a chain map `g : B -> A`, as a map `A^* -> B^*`.
    pub fn dual_of(
        g: &ChainMap,
        source: &FilteredComplex,
        target: &FilteredComplex,
    ) -> Result<Self> {
        Self::new(
            source,
            target,
            g.comps().iter().map(Matrix::transpose).collect(),
        )
    }

    pub fn compose(&self, first: &FilteredMap) -> Result<FilteredMap> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch(
                "filtered maps are not composable".into(),
            ));
        }
        let comps = self
            .comps
            .iter()
            .zip(&first.comps)
            .map(|(a, b)| a * b)
            .collect();
        Ok(FilteredMap {
            source: first.source.clone(),
            target: self.target.clone(),
            comps,
        })
    }
}

fn check_filtered(
    source: &FilteredComplex,
    target: &FilteredComplex,
    comps: &[Matrix],
    shift: i64,
) -> Result<()> {
    let lo = source.lo.min(target.lo) - 1;
    let hi = source.hi().max(target.hi());
    for p in lo..=hi {
        for n in 0..source.complex.len() as i64 {
            let m = comp(
                comps,
                n,
                target.complex.dim(n + shift),
                source.complex.dim(n),
            );
            let image = source.level(p, n).image_under(&m)?;
            if !target.level(p, n + shift).contains_subspace(&image) {
                return Err(Error::Invalid(format!(
                    "map does not respect the filtration at p = {p}, n = {n}"
                )));
            }
        }
    }
    Ok(())
}

/// `E_r^{p,q}` with representatives of a basis and the subspace they are
/// taken modulo.
#[derive(Clone, Debug)]
struct Term {
    reps: Matrix,
    denominator: Subspace,
}

impl Term {
    fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Coordinates of the classes of the columns of `v`.
    fn classes(&self, v: &Matrix) -> Matrix {
        let k = self.dim();
        if k == 0 || v.cols() == 0 {
            return Matrix::zeros(k, v.cols());
        }
        let ambient = self.reps.rows();
        let both = Matrix::hstack(ambient, &[&self.reps, self.denominator.basis()]);
        let x = both
            .solve_matrix(v)
            .expect("vectors lie in the cycle space");
        x.block(0, 0, k, v.cols())
    }
}

/// `Z_r^{p,n} = F^p A^n ∩ d^{-1}(F^{p+r} A^{n+1})`.
fn cycles(f: &FilteredComplex, r: i64, p: i64, n: i64) -> Subspace {
    let here = f.level(p, n);
    let there = f.level(p + r, n + 1);
    let pre = there.preimage(&f.complex.d(n)).expect("shapes agree");
    here.intersection(&pre).expect("same ambient")
}

fn term(f: &FilteredComplex, r: usize, p: i64, n: i64) -> Term {
    let r = r as i64;
    let z = cycles(f, r, p, n);
    let below = cycles(f, r - 1, p + 1, n);
    let hit = cycles(f, r - 1, p - r + 1, n - 1)
        .image_under(&f.complex.d(n - 1))
        .expect("shapes agree");
    let denominator = below
        .sum(&hit)
        .expect("same ambient")
        .intersection(&z)
        .expect("same ambient");
    let reps = z.complement_of(&denominator).expect("same ambient");
    Term { reps, denominator }
}

/// `E_r` with its differential; keys are `(p, q)` with total degree
/// `p + q`.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    terms: BTreeMap<(i64, i64), Term>,
    /// `d_r : E_r^{p,q} -> E_r^{p+r, q-r+1}`, keyed by the source.
    pub d_r: BTreeMap<(i64, i64), Matrix>,
}

impl SpectralPage {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.terms.get(&(p, q)).map_or(0, Term::dim)
    }

    /// Nonzero terms.
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.terms
            .iter()
            .filter(|(_, t)| t.dim() > 0)
            .map(|(&k, t)| (k, t.dim()))
            .collect()
    }

    /// Sum of `E_r^{p,q}` over `p + q = n`.
    pub fn total_dim(&self, n: i64) -> usize {
        self.terms
            .iter()
            .filter(|((p, q), _)| p + q == n)
            .map(|(_, t)| t.dim())
            .sum()
    }

    fn differential(&self, key: (i64, i64)) -> Option<&Matrix> {
        self.d_r.get(&key)
    }
}

impl Serialize for SpectralPage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct PageJson<'a> {
            r: usize,
            terms: BTreeMap<String, usize>,
            d_r: BTreeMap<String, &'a Matrix>,
        }
        let key = |(p, q): &(i64, i64)| format!("{p},{q}");
        PageJson {
            r: self.r,
            terms: self.dims().iter().map(|(k, &v)| (key(k), v)).collect(),
            d_r: self
                .d_r
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(k, m)| (key(k), m))
                .collect(),
        }
        .serialize(s)
    }
}

pub fn page(f: &FilteredComplex, r: usize) -> SpectralPage {
    let mut terms = BTreeMap::new();
    for p in f.graded_range() {
        for n in 0..f.complex.len() as i64 {
            terms.insert((p, n - p), term(f, r, p, n));
        }
    }
    let mut d_r = BTreeMap::new();
    for (&(p, q), t) in &terms {
        let n = p + q;
        let tk = (p + r as i64, q - r as i64 + 1);
        let image = &f.complex.d(n) * &t.reps;
        let m = match terms.get(&tk) {
            Some(target) => target.classes(&image),
            None => Matrix::zeros(0, t.dim()),
        };
        d_r.insert((p, q), m);
    }
    SpectralPage { r, terms, d_r }
}

/// `dim E_{r+1} = dim ker d_r - rank d_r` in every bidegree.
pub fn next_page_matches(e: &SpectralPage, next: &SpectralPage) -> bool {
    let r = e.r as i64;
    let keys: std::collections::BTreeSet<_> =
        e.terms.keys().chain(next.terms.keys()).copied().collect();
    keys.into_iter().all(|(p, q)| {
        let out = e.differential((p, q)).map_or(0, Matrix::rank);
        let incoming = e.differential((p - r, q + r - 1)).map_or(0, Matrix::rank);
        e.dim(p, q) - out - incoming == next.dim(p, q)
    })
}

/// `E_∞` as the page at which the sequence is guaranteed to have stopped.
pub fn limit_page(f: &FilteredComplex) -> SpectralPage {
    page(f, f.length() + 1)
}

/// `E_∞` has total dimension `dim H^n` in each degree.
pub fn converges(f: &FilteredComplex) -> bool {
    let e = limit_page(f);
    f.complex
        .cohomology_dims()
        .iter()
        .enumerate()
        .all(|(n, &h)| e.total_dim(n as i64) == h)
}

/// The map induced on `E_r` by a filtration-preserving linear map of
/// cochain degree `shift`, commuting with `d` up to sign.
pub fn induced_on_page(
    source: &SpectralPage,
    target: &SpectralPage,
    comps: &dyn Fn(i64) -> Matrix,
    shift: i64,
) -> BTreeMap<(i64, i64), Matrix> {
    source
        .terms
        .iter()
        .map(|(&(p, q), t)| {
            let n = p + q;
            let key = (p, q + shift);
            let m = match target.terms.get(&key) {
                Some(tt) => tt.classes(&(&comps(n) * &t.reps)),
                None => Matrix::zeros(0, t.dim()),
            };
            ((p, q), m)
        })
        .collect()
}

impl FilteredMap {
    pub fn on_page(&self, r: usize) -> (SpectralPage, SpectralPage, BTreeMap<(i64, i64), Matrix>) {
        let (es, et) = (page(&self.source, r), page(&self.target, r));
        let get = |n: i64| {
            comp(
                &self.comps,
                n,
                self.target.complex.dim(n),
                self.source.complex.dim(n),
            )
        };
        let m = induced_on_page(&es, &et, &get, 0);
        (es, et, m)
    }

    /// Whether `E_r(f)` is an isomorphism in every bidegree.
    pub fn is_page_iso(&self, r: usize) -> bool {
        let (es, et, m) = self.on_page(r);
        let keys: std::collections::BTreeSet<_> =
            es.terms.keys().chain(et.terms.keys()).copied().collect();
        keys.into_iter().all(|k| {
            let (a, b) = (es.dim(k.0, k.1), et.dim(k.0, k.1));
            a == b && (a == 0 || m.get(&k).is_some_and(Matrix::is_invertible))
        })
    }
}

/// Iso on `E_1`, that is on the cohomology of every `gr^p`.
pub fn is_filtered_qis(f: &FilteredMap) -> bool {
    f.is_page_iso(1)
}

pub fn is_e2_iso(f: &FilteredMap) -> bool {
    f.is_page_iso(2)
}

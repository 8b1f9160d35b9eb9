//! Homotopies through admissible cylinders, Ore squares and roofs.
//!
//! Every cylinder here is the simple of a simplicial cylinder on constant
//! objects. Its normalized coordinates are the two ends in simplicial
//! degree 0 and one interior copy of the source in simplicial degree 1.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain::{sign, ChainComplex, ChainMap, GradedMap};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::simpobj::cyl::{cyl_const, cyl_map, Cylinder};
use crate::simpobj::SimplicialMap;

/// Truncation used for cylinders on constant objects.
pub const LEVELS: usize = 2;

/// `cyl(f, g)` for `f : A -> B`, `g : A -> C`, with `i : B -> cyl(f, g)`
/// and `j : C -> cyl(f, g)`.
pub struct CylPair {
    pub f: ChainMap,
    pub g: ChainMap,
    pub cylinder: Cylinder,
    pub complex: ChainComplex,
    pub i: ChainMap,
    pub j: ChainMap,
}

fn rewrap(m: &ChainMap, source: &ChainComplex) -> ChainMap {
    ChainMap::trusted(source, m.target(), m.comps().to_vec())
}

pub fn cyl_pair(f: &ChainMap, g: &ChainMap) -> Result<CylPair> {
    let cylinder = cyl_const(f, g, LEVELS)?;
    let complex = cylinder.object.simple()?.complex.clone();
    let i = rewrap(&cylinder.y_leg.simple()?, f.target());
    let j = rewrap(&cylinder.z_leg.simple()?, g.target());
    Ok(CylPair {
        f: f.clone(),
        g: g.clone(),
        cylinder,
        complex,
        i,
        j,
    })
}

impl CylPair {
    pub fn source(&self) -> &ChainComplex {
        self.f.source()
    }

    /// The map `cyl(f, g) -> T` that is `y` on the `B` end, `z` on the `C`
    /// end and uses `k` on the interior copy, where
    /// `y f - z g = d k + k d` and `k[q] : A_q -> T_{q+1}`.
    pub fn out(&self, y: &ChainMap, z: &ChainMap, k: Option<&[Matrix]>) -> Result<ChainMap> {
        let t = y.target();
        if z.target() != t || y.source() != self.f.target() || z.source() != self.g.target() {
            return Err(Error::DimensionMismatch(
                "maps out of a cylinder have the wrong ends".into(),
            ));
        }
        let obj = &self.cylinder.object;
        let s = obj.simple()?;
        let (off0, off1) = (obj.atom_offsets(0), obj.atom_offsets(1));
        let a = self.source();
        let comps = (0..self.complex.len())
            .map(|n| {
                let mut m = Matrix::zeros(t.dim(n), self.complex.dim(n));
                for b in &s.blocks[n] {
                    let q = b.q;
                    for (idx, &c) in b.coords.iter().enumerate() {
                        let col = if b.p == 0 {
                            if c < off0[1][q] {
                                y.comp(q).column(c - off0[0][q])
                            } else {
                                z.comp(q).column(c - off0[1][q])
                            }
                        } else {
                            let x = c - off1[1][q];
                            debug_assert!(x < a.dim(q));
                            match k.and_then(|k| k.get(q)) {
                                Some(kq) if kq.rows() > 0 => kq.scale(&sign(q)).column(x),
                                _ => vec![num_traits::Zero::zero(); t.dim(n)],
                            }
                        };
                        for (r, v) in col.into_iter().enumerate() {
                            m.set(r, b.offset + idx, v);
                        }
                    }
                }
                m
            })
            .collect();
        ChainMap::new(&self.complex, t, comps)
    }

    /// The map `r` with `r i = y` and `r j = z`, when `y f = z g`.
    pub fn factor(&self, y: &ChainMap, z: &ChainMap) -> Result<ChainMap> {
        if y.compose(&self.f)?.comps() != z.compose(&self.g)?.comps() {
            return Err(Error::NotCommuting("factor needs y f = z g".into()));
        }
        self.out(y, z, None)
    }
}

/// `cyl(α, β, γ) : cyl(f, g) -> cyl(f', g')` with `α` on the `B` end, `β` on
/// the source and `γ` on the `C` end.
pub fn cyl_morphism(
    src: &CylPair,
    tgt: &CylPair,
    alpha: &ChainMap,
    beta: &ChainMap,
    gamma: &ChainMap,
) -> Result<ChainMap> {
    let (s, t) = (&src.cylinder, &tgt.cylinder);
    let a = SimplicialMap::constant_between(alpha, s.y(), t.y());
    let b = SimplicialMap::constant_between(beta, s.source(), t.source());
    let c = SimplicialMap::constant_between(gamma, s.z(), t.z());
    let m = cyl_map(s, t, &a, &b, &c)?.simple()?;
    Ok(ChainMap::trusted(
        &src.complex,
        &tgt.complex,
        m.comps().to_vec(),
    ))
}

/// How an admissible cylinder was obtained.
#[derive(Clone)]
pub enum Provenance {
    Identity,
    Swap(Box<AdmissibleCylinder>),
    /// Glued along the second end of `first` and the first end of `second`.
    Glue {
        first: Box<AdmissibleCylinder>,
        second: Box<AdmissibleCylinder>,
        pair: Arc<CylPair>,
    },
}

/// `A ⇉ Ã -> A` with `σ i = σ j = Id`.
#[derive(Clone)]
pub struct AdmissibleCylinder {
    pub object: ChainComplex,
    pub carrier: ChainComplex,
    pub i: ChainMap,
    pub j: ChainMap,
    pub sigma: ChainMap,
    pub provenance: Provenance,
}

impl PartialEq for AdmissibleCylinder {
    fn eq(&self, other: &Self) -> bool {
        self.object == other.object
            && self.carrier == other.carrier
            && self.i == other.i
            && self.j == other.j
            && self.sigma == other.sigma
    }
}

impl std::fmt::Debug for AdmissibleCylinder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdmissibleCylinder")
            .field("object", &self.object.dims())
            .field("carrier", &self.carrier.dims())
            .finish()
    }
}

impl AdmissibleCylinder {
    pub fn identity(a: &ChainComplex) -> Self {
        let id = ChainMap::identity(a);
        AdmissibleCylinder {
            object: a.clone(),
            carrier: a.clone(),
            i: id.clone(),
            j: id.clone(),
            sigma: id,
            provenance: Provenance::Identity,
        }
    }

    /// Number of gluings in the provenance tree.
    pub fn gluings(&self) -> usize {
        match &self.provenance {
            Provenance::Identity => 0,
            Provenance::Swap(c) => c.gluings(),
            Provenance::Glue { first, second, .. } => 1 + first.gluings() + second.gluings(),
        }
    }

    /// `σ i = σ j = Id` and all three maps are quasi-isomorphisms.
    pub fn check(&self) -> Result<()> {
        let id = ChainMap::identity(&self.object);
        if self.i.then(&self.sigma) != id || self.j.then(&self.sigma) != id {
            return Err(Error::Invalid(
                "cylinder retraction is not a left inverse".into(),
            ));
        }
        if !(self.i.is_qis() && self.j.is_qis() && self.sigma.is_qis()) {
            return Err(Error::NotQuasiIso("cylinder structure map".into()));
        }
        Ok(())
    }
}

pub fn swap(c: &AdmissibleCylinder) -> AdmissibleCylinder {
    if let Provenance::Swap(inner) = &c.provenance {
        return (**inner).clone();
    }
    AdmissibleCylinder {
        object: c.object.clone(),
        carrier: c.carrier.clone(),
        i: c.j.clone(),
        j: c.i.clone(),
        sigma: c.sigma.clone(),
        provenance: Provenance::Swap(Box::new(c.clone())),
    }
}

/// Carrier `cyl(p, j)` for the first end `p` of `second` and the second
/// end `j` of `first`; the new ends are the first end of `first` and the
/// second end of `second`.
pub fn glue(first: &AdmissibleCylinder, second: &AdmissibleCylinder) -> Result<AdmissibleCylinder> {
    if first.object != second.object {
        return Err(Error::DimensionMismatch(
            "glued cylinders live over different objects".into(),
        ));
    }
    let pair = cyl_pair(&second.i, &first.j)?;
    let s = first.i.then(&pair.j);
    let t = second.j.then(&pair.i);
    let eta = pair.factor(&second.sigma, &first.sigma)?;
    Ok(AdmissibleCylinder {
        object: first.object.clone(),
        carrier: pair.complex.clone(),
        i: s,
        j: t,
        sigma: eta,
        provenance: Provenance::Glue {
            first: Box::new(first.clone()),
            second: Box::new(second.clone()),
            pair: Arc::new(pair),
        },
    })
}

/// `cyl(A)`, the gluing of two identity cylinders. Its first end is the
/// `j` leg of `cyl(Id, Id)` and its second end the `i` leg.
pub fn cyl_object(a: &ChainComplex) -> Result<AdmissibleCylinder> {
    let id = AdmissibleCylinder::identity(a);
    glue(&id, &id)
}

/// A map `H` out of an admissible cylinder with `H i = f` and `H j = g`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub cylinder: AdmissibleCylinder,
    pub h: ChainMap,
    pub f: ChainMap,
    pub g: ChainMap,
}

impl Homotopy {
    pub fn new(cylinder: AdmissibleCylinder, h: ChainMap) -> Result<Self> {
        if h.source() != &cylinder.carrier {
            return Err(Error::DimensionMismatch(
                "homotopy is not defined on the cylinder".into(),
            ));
        }
        let f = h.compose(&cylinder.i)?;
        let g = h.compose(&cylinder.j)?;
        Ok(Homotopy { cylinder, h, f, g })
    }

    /// Checks `H i = f` and `H j = g` against the given endpoints.
    pub fn joins(&self, f: &ChainMap, g: &ChainMap) -> bool {
        self.f.comps() == f.comps() && self.g.comps() == g.comps()
    }

    pub fn reversed(&self) -> Homotopy {
        Homotopy {
            cylinder: swap(&self.cylinder),
            h: self.h.clone(),
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// `t H`, a homotopy from `t f` to `t g`.
    pub fn post(&self, t: &ChainMap) -> Result<Homotopy> {
        Homotopy::new(self.cylinder.clone(), t.compose(&self.h)?)
    }

    /// Glues `self : f ~ g` and `next : g ~ k` into `f ~ k`.
    pub fn concat(&self, next: &Homotopy) -> Result<Homotopy> {
        if self.g.comps() != next.f.comps() {
            return Err(Error::Invalid("homotopies do not meet".into()));
        }
        let c = glue(&self.cylinder, &next.cylinder)?;
        let Provenance::Glue { pair, .. } = &c.provenance else {
            unreachable!()
        };
        let h = pair.factor(&next.h, &self.h)?;
        Homotopy::new(c, h)
    }
}

/// A homotopy from `f` to `g` through `c`, when one exists. Complete: over
/// a field every glued cylinder carries a witness exactly when `f - g` is
/// null-homotopic, and the identity cylinder exactly when `f = g`.
pub fn homotopy_on(c: &AdmissibleCylinder, f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
    if f.source() != &c.object || g.source() != &c.object || f.target() != g.target() {
        return Err(Error::DimensionMismatch(
            "maps do not start at the cylinder object".into(),
        ));
    }
    let h = match &c.provenance {
        Provenance::Identity => (f.comps() == g.comps()).then(|| f.clone()),
        Provenance::Swap(inner) => return Ok(homotopy_on(inner, g, f)?.map(|h| h.reversed())),
        Provenance::Glue {
            first,
            second,
            pair,
        } => {
            // constant homotopies on both halves, f on `first` and g on `second`
            let h1 = f.compose(&first.sigma)?;
            let h2 = g.compose(&second.sigma)?;
            let diff = h2.compose(&pair.f)?.sub(&h1.compose(&pair.g)?)?;
            match diff.null_homotopy() {
                Some(k) => Some(pair.out(&h2, &h1, Some(&k))?),
                None => None,
            }
        }
    };
    h.map(|h| {
        let w = Homotopy::new(c.clone(), h)?;
        if !w.joins(f, g) {
            return Err(Error::Invalid(
                "constructed homotopy has the wrong ends".into(),
            ));
        }
        Ok(w)
    })
    .transpose()
}

/// Outcome of a bounded search.
#[derive(Clone, Debug)]
pub enum Search {
    Found(Box<Homotopy>),
    /// Nothing within the budget; says nothing about larger cylinders.
    Unknown {
        tried: usize,
    },
}

impl Search {
    pub fn witness(&self) -> Option<&Homotopy> {
        match self {
            Search::Found(h) => Some(h),
            Search::Unknown { .. } => None,
        }
    }
}

/// Tries the identity cylinder, then cylinders with up to `budget`
/// gluings, building each from the previous by gluing on `cyl(A)` and
/// also trying the swapped version.
pub fn are_homotopic(f: &ChainMap, g: &ChainMap, budget: usize) -> Result<Search> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::DimensionMismatch("maps are not parallel".into()));
    }
    let a = f.source();
    let mut tried = 0;
    let mut current = AdmissibleCylinder::identity(a);
    let mut base: Option<AdmissibleCylinder> = None;
    for level in 0..=budget {
        if level == 1 {
            current = cyl_object(a)?;
            base = Some(current.clone());
        } else if level > 1 {
            current = glue(&current, base.as_ref().expect("set at level 1"))?;
        }
        for c in [current.clone(), swap(&current)] {
            tried += 1;
            if let Some(h) = homotopy_on(&c, f, g)? {
                return Ok(Search::Found(Box::new(h)));
            }
            if level == 0 {
                break;
            }
        }
    }
    Ok(Search::Unknown { tried })
}

/// For `f : A -> B`, `g : A -> C`: a homotopy on `cyl(A)` from `j_C g` to
/// `i_B f`, namely `cyl(f, Id, g)`.
pub fn canonical_homotopy(pair: &CylPair) -> Result<Homotopy> {
    let a = pair.source();
    let c = cyl_object(a)?;
    let Provenance::Glue { pair: base, .. } = &c.provenance else {
        unreachable!()
    };
    let h = cyl_morphism(base, pair, &pair.f, &ChainMap::identity(a), &pair.g)?;
    Homotopy::new(c, h)
}

/// The square `i f ~ j e` completing `B <- A -> C`, with `i` a
/// quasi-isomorphism when `e` is.
pub struct OreSquare {
    pub pair: CylPair,
    pub homotopy: Homotopy,
}

impl OreSquare {
    pub fn i(&self) -> &ChainMap {
        &self.pair.i
    }

    pub fn j(&self) -> &ChainMap {
        &self.pair.j
    }
}

pub fn ore_square(f: &ChainMap, e: &ChainMap) -> Result<OreSquare> {
    if !e.is_qis() {
        return Err(Error::NotQuasiIso(
            "the Ore square needs a quasi-isomorphism leg".into(),
        ));
    }
    let pair = cyl_pair(f, e)?;
    let homotopy = canonical_homotopy(&pair)?.reversed();
    debug_assert!(pair.i.is_qis());
    Ok(OreSquare { pair, homotopy })
}

/// `A -> T <~ B`, standing for `backward^{-1} ∘ forward`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RoofJson")]
pub struct Roof {
    pub forward: ChainMap,
    pub backward: ChainMap,
}

#[derive(Deserialize)]
struct RoofJson {
    forward: ChainMap,
    backward: ChainMap,
}

impl TryFrom<RoofJson> for Roof {
    type Error = Error;

    fn try_from(r: RoofJson) -> Result<Roof> {
        Roof::new(r.forward, r.backward)
    }
}

impl Roof {
    pub fn new(forward: ChainMap, backward: ChainMap) -> Result<Roof> {
        if forward.target() != backward.target() {
            return Err(Error::DimensionMismatch(
                "roof legs end in different objects".into(),
            ));
        }
        if !backward.is_qis() {
            return Err(Error::NotQuasiIso("backward leg of a roof".into()));
        }
        Ok(Roof { forward, backward })
    }

    pub fn from_map(f: &ChainMap) -> Roof {
        Roof {
            forward: f.clone(),
            backward: ChainMap::identity(f.target()),
        }
    }

    pub fn identity(a: &ChainComplex) -> Roof {
        Roof::from_map(&ChainMap::identity(a))
    }

    pub fn source(&self) -> &ChainComplex {
        self.forward.source()
    }

    pub fn target(&self) -> &ChainComplex {
        self.backward.source()
    }

    /// The induced map on homology.
    pub fn graded(&self) -> GradedMap {
        let back = self
            .backward
            .induced_homology()
            .inverse()
            .expect("backward leg is a quasi-isomorphism");
        back.compose(&self.forward.induced_homology())
            .expect("homology dimensions match")
    }

    pub fn invert(&self) -> Result<Roof> {
        Roof::new(self.backward.clone(), self.forward.clone())
    }

    /// `self ∘ first`, through an Ore square on the middle cospan.
    pub fn compose(&self, first: &Roof) -> Result<Roof> {
        if first.target() != self.source() {
            return Err(Error::DimensionMismatch("roofs are not composable".into()));
        }
        let sq = ore_square(&self.forward, &first.backward)?;
        Roof::new(first.forward.then(sq.j()), self.backward.then(sq.i()))
    }

    pub fn direct_sum(&self, other: &Roof) -> Roof {
        Roof {
            forward: self.forward.direct_sum(&other.forward),
            backward: self.backward.direct_sum(&other.backward),
        }
    }
}

/// Equality in the homotopy category, decided on homology.
pub fn roof_equal(r1: &Roof, r2: &Roof) -> bool {
    r1.source() == r2.source() && r1.target() == r2.target() && r1.graded().same_as(&r2.graded())
}

/// For `f, g : A -> B`, a quasi-isomorphism `s : A' -> A` and a homotopy
/// from `f s` to `g s`: a quasi-isomorphism `t' : B -> B'` with `t' f`
/// homotopic to `t' g`, built from cylinders of rows and columns.
pub struct Coequalizer {
    pub t: ChainMap,
    /// From `t' f` to `t I g`, where `t I` is homotopic to `t'`.
    pub homotopy: Homotopy,
    /// From `t'` to `t I`.
    pub legs: Homotopy,
}

pub fn coequalize(f: &ChainMap, g: &ChainMap, s: &ChainMap, h: &Homotopy) -> Result<Coequalizer> {
    if !s.is_qis() {
        return Err(Error::NotQuasiIso(
            "coequalizing needs a quasi-isomorphism".into(),
        ));
    }
    let (fs, gs) = (f.compose(s)?, g.compose(s)?);
    if !h.joins(&fs, &gs) {
        return Err(Error::Invalid("homotopy does not join f s and g s".into()));
    }
    let (a, b) = (f.source(), f.target());
    let (id_a, id_b) = (ChainMap::identity(a), ChainMap::identity(b));
    let c = &h.cylinder;
    // cylinders of the three rows A <- A' -> B
    let row1 = cyl_pair(s, &fs)?;
    let row2 = cyl_pair(&s.compose(&c.sigma)?, &h.h)?;
    let row3 = cyl_pair(s, &gs)?;
    let alpha = cyl_morphism(&row1, &row2, &id_a, &c.i, &id_b)?;
    let beta = cyl_morphism(&row3, &row2, &id_a, &c.j, &id_b)?;
    let gamma = row1.factor(f, &id_b)?;
    let delta = row3.factor(g, &id_b)?;
    // columns of the first 3x3 diagram
    let col_a = cyl_pair(&id_a, &id_a)?;
    let col_mid = cyl_pair(&gamma, &alpha)?;
    let col_b = cyl_pair(&id_b, &id_b)?;
    let top_a = cyl_morphism(&col_a, &col_mid, f, &row1.i, &row2.i)?;
    let e = cyl_morphism(&col_b, &col_mid, &id_b, &row1.j, &row2.j)?;
    // columns of the second 3x3 diagram
    let beta2 = beta.then(&col_mid.j);
    let left = glue(&swap(&cyl_object(a)?), &AdmissibleCylinder::identity(a))?;
    let right = glue(&swap(&cyl_object(b)?), &AdmissibleCylinder::identity(b))?;
    let Provenance::Glue { pair: col1, .. } = &left.provenance else {
        unreachable!()
    };
    let Provenance::Glue { pair: col3, .. } = &right.provenance else {
        unreachable!()
    };
    let col2 = cyl_pair(&delta, &beta2)?;
    let h_prime = cyl_morphism(col1, &col2, g, &row3.i, &top_a)?;
    let t = cyl_morphism(col3, &col2, &id_b, &row3.j, &e)?;
    let legs = Homotopy::new(right.clone(), t.clone())?;
    let t_prime = legs.f.clone();
    if !t_prime.is_qis() {
        return Err(Error::NotQuasiIso("coequalizing map".into()));
    }
    let homotopy = Homotopy::new(left, h_prime)?;
    if !homotopy.joins(&f.then(&t_prime), &g.then(&legs.g)) {
        return Err(Error::Invalid(
            "coequalizing homotopy has the wrong ends".into(),
        ));
    }
    Ok(Coequalizer {
        t: t_prime,
        homotopy,
        legs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Gen;

    #[test]
    fn cylinder_object_ranks() {
        let q = ChainComplex::concentrated(0, 1);
        let c = cyl_object(&q).unwrap();
        assert_eq!(c.carrier.dims(), &[2, 1]);
        c.check().unwrap();
        assert!(cyl_object(&ChainComplex::zero())
            .unwrap()
            .carrier
            .is_empty());
    }

    #[test]
    fn canonical_homotopy_ends() {
        let mut g = Gen::new(41, 4, 3);
        for _ in 0..5 {
            let a = g.complex();
            let (b, c) = (g.complex(), g.complex());
            let (f, k) = (g.map(&a, &b), g.map(&a, &c));
            let pair = cyl_pair(&f, &k).unwrap();
            let h = canonical_homotopy(&pair).unwrap();
            assert!(h.joins(&k.then(&pair.j), &f.then(&pair.i)));
            assert_eq!(h.f.induced_homology(), h.g.induced_homology());
            let found = are_homotopic(&h.f, &h.g, 1).unwrap();
            assert!(found.witness().is_some());
        }
    }

    #[test]
    fn glue_and_swap() {
        let mut g = Gen::new(42, 3, 2);
        let a = g.complex();
        let c = cyl_object(&a).unwrap();
        assert_eq!(swap(&swap(&c)), c);
        let cc = glue(&c, &swap(&c)).unwrap();
        cc.check().unwrap();
        assert_eq!(cc.gluings(), 3);
    }

    #[test]
    fn homotopies_compose() {
        let mut g = Gen::new(43, 3, 2);
        let a = g.complex();
        let b = g.complex();
        let f = g.map(&a, &b);
        let f2 = f.add(&g.null_homotopic(&a, &b)).unwrap();
        let f3 = f2.add(&g.null_homotopic(&a, &b)).unwrap();
        let h1 = are_homotopic(&f, &f2, 1)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        let h2 = are_homotopic(&f2, &f3, 1)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        let h = h1.concat(&h2).unwrap();
        assert!(h.joins(&f, &f3));
        h.cylinder.check().unwrap();
    }

    #[test]
    fn roofs() {
        let mut g = Gen::new(44, 3, 2);
        let a = g.complex();
        let e = g.qis_from(&a);
        let r = Roof::from_map(&e);
        let inv = r.invert().unwrap();
        assert!(roof_equal(&inv.compose(&r).unwrap(), &Roof::identity(&a)));
        let b = g.complex();
        let f = g.map(&a, &b);
        let rf = Roof::from_map(&f);
        assert!(roof_equal(&Roof::identity(&b).compose(&rf).unwrap(), &rf));
    }

    #[test]
    fn coequalizer() {
        let mut g = Gen::new(45, 2, 1);
        let a = g.complex();
        let b = g.complex();
        let f = g.map(&a, &b);
        let f2 = f.add(&g.null_homotopic(&a, &b)).unwrap();
        let s = g.qis_onto(&a);
        let (fs, f2s) = (f.compose(&s).unwrap(), f2.compose(&s).unwrap());
        let h = are_homotopic(&fs, &f2s, 1)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        let co = coequalize(&f, &f2, &s, &h).unwrap();
        assert!(co.t.is_qis());
        assert!(co.legs.g.is_qis());
        assert_eq!(
            f.then(&co.t).induced_homology(),
            f2.then(&co.legs.g).induced_homology()
        );
    }
}

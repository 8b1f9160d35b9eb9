//! Cones, suspensions and cofiber triangles, the minus map and the
//! rotation, completion and octahedron constructions.
//!
//! Equalities of triangle maps are decided on homology. Constructions that
//! hold on the nose at the chain or simplicial level are checked there.

use serde::{Deserialize, Serialize};

use crate::chain::{realize_graded, ChainComplex, ChainMap, GradedMap};
use crate::error::{Error, Result};
use crate::homotopy::{are_homotopic, cyl_morphism, cyl_pair, CylPair, Homotopy, Roof};
use crate::simpobj::cyl::{cone, lambda_big};
use crate::simpobj::{constant, tag_map, Seg, SimplicialMap};

/// Truncation for objects built from two nested cylinders.
pub const NESTED_LEVELS: usize = 3;

/// `c(f) = cyl(f, A -> 0)` with `i : B -> c(f)`.
pub fn cone_of(f: &ChainMap) -> Result<CylPair> {
    cyl_pair(f, &ChainMap::zero(f.source(), &ChainComplex::zero()))
}

/// `ΣA = cyl(A -> 0, A -> 0)`.
pub fn suspension(a: &ChainComplex) -> Result<CylPair> {
    let z = ChainMap::zero(a, &ChainComplex::zero());
    cyl_pair(&z, &z)
}

pub fn suspend(a: &ChainComplex) -> Result<ChainComplex> {
    Ok(suspension(a)?.complex)
}

/// `Σf`.
pub fn suspend_map(f: &ChainMap) -> Result<ChainMap> {
    let (s, t) = (suspension(f.source())?, suspension(f.target())?);
    let zero = ChainMap::zero(&ChainComplex::zero(), &ChainComplex::zero());
    cyl_morphism(&s, &t, &zero, f, &zero)
}

pub fn suspend_roof(r: &Roof) -> Result<Roof> {
    Roof::new(suspend_map(&r.forward)?, suspend_map(&r.backward)?)
}

/// `p : c(f) -> ΣA`, the cone of `(f) -> (A -> 0)`.
pub fn boundary(cone: &CylPair) -> Result<ChainMap> {
    let a = cone.source();
    let susp = suspension(a)?;
    let zero = ChainMap::zero(&ChainComplex::zero(), &ChainComplex::zero());
    cyl_morphism(
        cone,
        &susp,
        &ChainMap::zero(cone.f.target(), &ChainComplex::zero()),
        &ChainMap::identity(a),
        &zero,
    )
}

/// `A -> B -> C -> ΣA` with roof-valued maps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Triangle {
    pub a: ChainComplex,
    pub b: ChainComplex,
    pub c: ChainComplex,
    pub u: Roof,
    pub v: Roof,
    pub w: Roof,
}

impl Triangle {
    pub fn check_shape(&self) -> Result<()> {
        let sa = suspend(&self.a)?;
        let ok = self.u.source() == &self.a
            && self.u.target() == &self.b
            && self.v.source() == &self.b
            && self.v.target() == &self.c
            && self.w.source() == &self.c
            && self.w.target() == &sa;
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(
                "triangle maps do not chain up".into(),
            ))
        }
    }
}

/// The triangle of a roof `A -> T <~ B`: `A -> B -> c(f̄) -> ΣA` with
/// middle map `i w`.
pub fn cofiber_triangle(f: &Roof) -> Result<Triangle> {
    let cone = cone_of(&f.forward)?;
    let p = boundary(&cone)?;
    Ok(Triangle {
        a: f.source().clone(),
        b: f.target().clone(),
        c: cone.complex.clone(),
        u: f.clone(),
        v: Roof::from_map(&f.backward.then(&cone.i)),
        w: Roof::from_map(&p),
    })
}

pub fn cofiber_of_map(f: &ChainMap) -> Result<Triangle> {
    cofiber_triangle(&Roof::from_map(f))
}

/// One spot `X -a-> Y -b-> Z` of a long sequence.
fn exact_at(a: &GradedMap, b: &GradedMap, dims_y: &[usize]) -> bool {
    let len = dims_y.len().max(a.blocks.len()).max(b.blocks.len());
    (0..len).all(|n| {
        let rank_a = a.block(n).map_or(0, |m| m.rank());
        let rank_b = b.block(n).map_or(0, |m| m.rank());
        let composite_zero = match (a.block(n), b.block(n)) {
            (Some(ma), Some(mb)) => ma.cols() == 0 || mb.rows() == 0 || (mb * ma).is_zero(),
            _ => true,
        };
        composite_zero && rank_a + rank_b == dims_y.get(n).copied().unwrap_or(0)
    })
}

/// Where the long exact sequence of a triangle fails.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct LesReport {
    pub at_b: bool,
    pub at_c: bool,
    pub at_suspension: bool,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.at_b && self.at_c && self.at_suspension
    }
}

/// Exactness of `H A -> H B -> H C -> H ΣA -> H ΣB`, the last map being `Σu`.
pub fn verify_les(t: &Triangle) -> Result<LesReport> {
    t.check_shape()?;
    let (u, v, w) = (t.u.graded(), t.v.graded(), t.w.graded());
    let su = suspend_roof(&t.u)?.graded();
    let sa = suspend(&t.a)?;
    Ok(LesReport {
        at_b: exact_at(&u, &v, &t.b.betti()),
        at_c: exact_at(&v, &w, &t.c.betti()),
        at_suspension: exact_at(&w, &su, &sa.betti()),
    })
}

/// Whether `(x, y, z)` are isomorphisms making both ladders commute on
/// homology.
pub fn triangle_iso(t: &Triangle, t2: &Triangle, maps: (&Roof, &Roof, &Roof)) -> Result<bool> {
    let (x, y, z) = maps;
    let (gx, gy, gz) = (x.graded(), y.graded(), z.graded());
    if !(gx.is_iso() && gy.is_iso() && gz.is_iso()) {
        return Ok(false);
    }
    let sx = suspend_roof(x)?.graded();
    let sq = |top: &GradedMap,
              right: &GradedMap,
              left: &GradedMap,
              bottom: &GradedMap|
     -> Result<bool> { Ok(right.compose(top)?.same_as(&bottom.compose(left)?)) };
    Ok(sq(&t.u.graded(), &gy, &gx, &t2.u.graded())?
        && sq(&t.v.graded(), &gz, &gy, &t2.v.graded())?
        && sq(&t.w.graded(), &sx, &gz, &t2.w.graded())?)
}

/// `Σ¹₂B` with `p1, p2 : Σ¹₂B -> ΣB` and `m_B = p2 p1^{-1}`.
pub struct MinusData {
    pub b: ChainComplex,
    pub middle: ChainComplex,
    pub p1: ChainMap,
    pub p2: ChainMap,
    pub m: Roof,
    /// The interchange on `Λ¹₂B`; `P1 Θ = P2` and `Θ² = Id` were checked.
    pub theta: SimplicialMap,
}

fn theta_rule(t: &[Seg]) -> Option<Vec<Seg>> {
    Some(match t {
        [Seg::Y, Seg::Y] => vec![Seg::Y, Seg::Y],
        [Seg::Y, Seg::M(l)] => vec![Seg::M(*l)],
        [Seg::M(k)] => vec![Seg::Y, Seg::M(*k)],
        [Seg::Y, Seg::Z] => vec![Seg::Z],
        [Seg::Z] => vec![Seg::Y, Seg::Z],
        _ => return None,
    })
}

pub fn minus(b: &ChainComplex) -> Result<MinusData> {
    let bx = constant(b, NESTED_LEVELS);
    let cb = cone(&SimplicialMap::identity(&bx))?;
    let lam12 = cone(&cb.y_leg)?;
    let lam = lambda_big(&bx)?;
    let p1s = tag_map(&lam12.object, &lam.object, |t| match t {
        [Seg::M(k)] => Some(vec![Seg::M(*k)]),
        _ => None,
    })?;
    let p2s = tag_map(&lam12.object, &lam.object, |t| match t {
        [Seg::Y, Seg::M(l)] => Some(vec![Seg::M(*l)]),
        _ => None,
    })?;
    let theta = tag_map(&lam12.object, &lam12.object, theta_rule)?;
    let same = |x: &SimplicialMap, y: &SimplicialMap| {
        x.levels()
            .iter()
            .zip(y.levels())
            .all(|(a, b)| a.comps() == b.comps())
    };
    if !same(&theta.then(&p1s), &p2s)
        || !same(&theta.then(&theta), &SimplicialMap::identity(&lam12.object))
    {
        return Err(Error::Invalid(
            "interchange on the double cone misbehaves".into(),
        ));
    }
    let sb = suspend(b)?;
    let middle = lam12.object.simple()?.complex.clone();
    let wrap = |m: ChainMap| -> Result<ChainMap> {
        if m.target() != &sb {
            return Err(Error::Invalid("suspension models disagree".into()));
        }
        Ok(ChainMap::trusted(&middle, &sb, m.comps().to_vec()))
    };
    let p1 = wrap(p1s.simple()?)?;
    let p2 = wrap(p2s.simple()?)?;
    if !p1.is_qis() {
        return Err(Error::NotQuasiIso("collapsing the cone".into()));
    }
    let p1_inverse = Roof::new(ChainMap::identity(&sb), p1.clone())?;
    let m = Roof::from_map(&p2).compose(&p1_inverse)?;
    Ok(MinusData {
        b: b.clone(),
        middle,
        p1,
        p2,
        m,
        theta,
    })
}

/// The rotated triangle `B -> C -> ΣA -> ΣB` of a cofiber triangle, with
/// last map `m_B Σu`, and an isomorphism onto it from the cofiber triangle
/// of `v`.
pub struct Rotation {
    pub rotated: Triangle,
    pub cofiber: Triangle,
    /// `c(v̄) -> ΣA`, the third rung of the ladder.
    pub gamma: Roof,
}

pub fn rotate(t: &Triangle) -> Result<Rotation> {
    t.check_shape()?;
    let minus_b = minus(&t.b)?;
    let last = minus_b.m.compose(&suspend_roof(&t.u)?)?;
    let sa = suspend(&t.a)?;
    let rotated = Triangle {
        a: t.b.clone(),
        b: t.c.clone(),
        c: sa.clone(),
        u: t.v.clone(),
        v: t.w.clone(),
        w: last,
    };
    let cofiber = cofiber_triangle(&t.v)?;
    // c(v̄) -> ΣA is p on the end and zero on the interior, since p v̄ = 0
    if t.w.backward.comps() != ChainMap::identity(&sa).comps() {
        return Err(Error::Unsupported(
            "rotation expects a cofiber triangle in normal form".into(),
        ));
    }
    let pair = cone_of(&t.v.forward)?;
    let gamma_map = pair.factor(&t.w.forward, &ChainMap::zero(&ChainComplex::zero(), &sa))?;
    let gamma = Roof::from_map(&gamma_map);
    Ok(Rotation {
        rotated,
        cofiber,
        gamma,
    })
}

/// Completes `(α, β)` to a morphism between cofiber triangles of maps.
pub struct Completion {
    pub gamma: Roof,
    /// The homotopy used when the left square only commutes up to homotopy.
    pub homotopy: Option<Homotopy>,
}

/// `c(α, β)` for a strictly commuting square `β f = g α`.
pub fn cone_map(f: &ChainMap, g: &ChainMap, alpha: &ChainMap, beta: &ChainMap) -> Result<ChainMap> {
    if beta.compose(f)?.comps() != g.compose(alpha)?.comps() {
        return Err(Error::NotCommuting("β f != g α".into()));
    }
    let (cf, cg) = (cone_of(f)?, cone_of(g)?);
    let zero = ChainMap::zero(&ChainComplex::zero(), &ChainComplex::zero());
    cyl_morphism(&cf, &cg, beta, alpha, &zero)
}

/// TR3 for maps `f : A -> B`, `g : A' -> B'` and roofs `α`, `β` whose
/// square commutes on homology.
pub fn complete_morphism(
    f: &ChainMap,
    g: &ChainMap,
    alpha: &Roof,
    beta: &Roof,
) -> Result<Completion> {
    let (ga, gb) = (alpha.graded(), beta.graded());
    if !gb
        .compose(&f.induced_homology())?
        .same_as(&g.induced_homology().compose(&ga)?)
    {
        return Err(Error::NotCommuting(
            "left square does not commute in the homotopy category".into(),
        ));
    }
    let strict = |r: &Roof| r.backward.comps() == ChainMap::identity(r.target()).comps();
    // general roofs are replaced by chain maps with the same effect on homology
    let a_map = if strict(alpha) {
        alpha.forward.clone()
    } else {
        realize_graded(f.source(), g.source(), &ga)
    };
    let b_map = if strict(beta) {
        beta.forward.clone()
    } else {
        realize_graded(f.target(), g.target(), &gb)
    };
    let a_map = ChainMap::trusted(f.source(), g.source(), a_map.comps().to_vec());
    let b_map = ChainMap::trusted(f.target(), g.target(), b_map.comps().to_vec());
    let bf = b_map.compose(f)?;
    let ga_ = g.compose(&a_map)?;
    if bf.comps() == ga_.comps() {
        return Ok(Completion {
            gamma: Roof::from_map(&cone_map(f, g, &a_map, &b_map)?),
            homotopy: None,
        });
    }
    let h = match are_homotopic(&bf, &ga_, 1)?.witness() {
        Some(h) => h.clone(),
        None => {
            return Err(Error::NotCommuting(
                "no homotopy found for the left square".into(),
            ))
        }
    };
    let cyl = &h.cylinder;
    let cone_h = cone_of(&h.h)?;
    let id_b2 = ChainMap::identity(g.target());
    // columns f, H, g α, g joined by (i, β), (j, Id), (α, Id)
    let first = cone_map(f, &h.h, &cyl.i, &b_map)?;
    let second = cone_map(&ga_, &h.h, &cyl.j, &id_b2)?;
    let third = cone_map(&ga_, g, &a_map, &id_b2)?;
    debug_assert_eq!(first.target(), &cone_h.complex);
    let back = Roof::new(first, second)?;
    let gamma = Roof::from_map(&third).compose(&back)?;
    Ok(Completion {
        gamma,
        homotopy: Some(h),
    })
}

/// The octahedron triangle `c(u) -> c(vu) -> c(v) -> Σc(u)` and the
/// comparisons used to show it is a cofiber triangle.
pub struct Octahedron {
    pub triangle: Triangle,
    /// `s(ψ)` for `ψ : C(v) -> C(α')`; checked to be a quasi-isomorphism.
    pub psi: ChainMap,
    pub psi_is_qis: bool,
    /// `τ : CCA -> CA` from the meet retraction; `τ I = τ ϱ = Id` checked.
    pub tau: SimplicialMap,
}

pub fn octahedron(u: &ChainMap, v: &ChainMap) -> Result<Octahedron> {
    let vu = v.compose(u)?;
    let (a, b) = (u.source(), u.target());
    let alpha = cone_map(u, &vu, &ChainMap::identity(a), v)?;
    let beta = cone_map(&vu, v, u, &ChainMap::identity(v.target()))?;
    let cv = cone_of(v)?;
    let cu = cone_of(u)?;
    let p = boundary(&cv)?;
    let gamma = p.then(&suspend_map(&cu.i)?);
    let triangle = Triangle {
        a: cu.complex.clone(),
        b: alpha.target().clone(),
        c: cv.complex.clone(),
        u: Roof::from_map(&alpha),
        v: Roof::from_map(&beta),
        w: Roof::from_map(&gamma),
    };
    // simplicial comparison ψ : C(v) -> C(α')
    let big_n = NESTED_LEVELS;
    let (ax, bx, cx) = (
        constant(a, big_n),
        constant(b, big_n),
        constant(v.target(), big_n),
    );
    let us = SimplicialMap::constant_between(u, &ax, &bx);
    let vs = SimplicialMap::constant_between(v, &bx, &cx);
    let vus = SimplicialMap::constant_between(&vu, &ax, &cx);
    let c_u = cone(&us)?;
    let c_vu = cone(&vus)?;
    let c_v = cone(&vs)?;
    let alpha_s = crate::simpobj::cyl::cyl_map(
        &c_u,
        &c_vu,
        &vs,
        &SimplicialMap::identity(&ax),
        &SimplicialMap::zero(c_u.z(), c_vu.z()),
    )?;
    let c_alpha = cone(&alpha_s)?;
    let psi_s = tag_map(&c_v.object, &c_alpha.object, |t| match t {
        [Seg::Y] => Some(vec![Seg::Y, Seg::Y]),
        [Seg::M(k)] => Some(vec![Seg::M(*k), Seg::Y]),
        _ => None,
    })?;
    let psi = psi_s.simple()?;
    let psi_is_qis = psi.is_qis();
    let tau = meet_retraction(a)?;
    Ok(Octahedron {
        triangle,
        psi,
        psi_is_qis,
        tau,
    })
}

fn position(seg: &Seg) -> Option<usize> {
    match seg {
        Seg::Y => Some(0),
        Seg::M(k) => Some(*k),
        _ => None,
    }
}

/// `τ : CCA -> CA` sending the atom at positions `(k, l)` to position
/// `max(k, l)`; checks `τ I_{CA} = τ ϱ = Id`.
pub fn meet_retraction(a: &ChainComplex) -> Result<SimplicialMap> {
    let ax = constant(a, NESTED_LEVELS);
    let ca = cone(&SimplicialMap::identity(&ax))?;
    let cca = cone(&SimplicialMap::identity(&ca.object))?;
    let tau = tag_map(&cca.object, &ca.object, |t| {
        let (o, i) = (position(t.first()?)?, position(t.get(1)?)?);
        Some(vec![match o.max(i) {
            0 => Seg::Y,
            m => Seg::M(m),
        }])
    })?;
    let rho = crate::simpobj::cyl::cyl_map(
        &ca,
        &cca,
        &ca.y_leg,
        &ca.y_leg,
        &SimplicialMap::zero(ca.z(), cca.z()),
    )?;
    let id = SimplicialMap::identity(&ca.object);
    let same = |x: &SimplicialMap| {
        x.levels()
            .iter()
            .zip(id.levels())
            .all(|(p, q)| p.comps() == q.comps())
    };
    if !same(&cca.y_leg.then(&tau)) || !same(&rho.then(&tau)) {
        return Err(Error::Invalid("meet retraction is not a retraction".into()));
    }
    Ok(tau)
}

/// `m_B` acts as `-Id` on homology.
pub fn minus_is_negation(m: &MinusData) -> bool {
    let g = m.m.graded();
    g.same_as(&GradedMap::identity(&m.p1.target().betti()).neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::classical_cone;
    use crate::random::Gen;

    #[test]
    fn suspension_is_a_shift() {
        let q = ChainComplex::concentrated(0, 1);
        assert_eq!(suspend(&q).unwrap().betti(), vec![0, 1]);
        let mut g = Gen::new(51, 3, 2);
        let a = g.complex();
        assert!(cone_of(&ChainMap::identity(&a))
            .unwrap()
            .complex
            .is_acyclic());
    }

    #[test]
    fn cones_match_classical() {
        let mut g = Gen::new(52, 3, 2);
        for _ in 0..5 {
            let a = g.complex();
            let b = g.complex();
            let f = g.map(&a, &b);
            assert_eq!(
                cone_of(&f).unwrap().complex.betti(),
                classical_cone(&f).cone.betti()
            );
            let t = cofiber_of_map(&f).unwrap();
            assert!(verify_les(&t).unwrap().exact());
            assert!(t.v.compose(&t.u).unwrap().graded().is_zero());
        }
    }

    #[test]
    fn minus_squares_to_identity() {
        let mut g = Gen::new(53, 3, 2);
        let b = g.complex();
        let m = minus(&b).unwrap();
        assert!(crate::homotopy::roof_equal(
            &m.m.compose(&m.m).unwrap(),
            &Roof::identity(m.p1.target())
        ));
        assert!(minus_is_negation(&m));
    }

    #[test]
    fn rotation_is_a_cofiber_triangle() {
        let mut g = Gen::new(54, 3, 2);
        let a = g.complex();
        let b = g.complex();
        let f = g.map(&a, &b);
        let t = cofiber_of_map(&f).unwrap();
        let r = rotate(&t).unwrap();
        let ids = (Roof::identity(&t.b), Roof::identity(&t.c));
        assert!(triangle_iso(&r.cofiber, &r.rotated, (&ids.0, &ids.1, &r.gamma)).unwrap());
        assert!(verify_les(&r.rotated).unwrap().exact());
    }

    #[test]
    fn completion_up_to_homotopy() {
        let mut g = Gen::new(55, 3, 2);
        let a = g.complex();
        let b = g.complex();
        let f = g.map(&a, &b);
        let beta = ChainMap::identity(&b)
            .add(&g.null_homotopic(&b, &b))
            .unwrap();
        let c = complete_morphism(&f, &f, &Roof::identity(&a), &Roof::from_map(&beta)).unwrap();
        assert!(c.gamma.graded().is_iso());
        let t = cofiber_of_map(&f).unwrap();
        assert!(triangle_iso(
            &t,
            &t,
            (&Roof::identity(&a), &Roof::from_map(&beta), &c.gamma)
        )
        .unwrap());
    }

    #[test]
    fn octahedron_checks() {
        let mut g = Gen::new(56, 2, 1);
        let a = g.complex();
        let b = g.complex();
        let c = g.complex();
        let u = g.map(&a, &b);
        let v = g.map(&b, &c);
        let o = octahedron(&u, &v).unwrap();
        assert!(o.psi_is_qis);
        assert!(verify_les(&o.triangle).unwrap().exact());
    }
}

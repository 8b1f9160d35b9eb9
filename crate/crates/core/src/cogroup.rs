//! The cogroup structure on `ΣA = s(S¹ ⊗ A)` and the coaction of `ΣA` on
//! cones.
//!
//! `s(S¹ ⊗ A)` coincides with the cone-model suspension of
//! [`crate::triangles::suspend`], so the minus map can be used directly.

use crate::chain::{direct_sum, sum_of, ChainComplex, ChainMap, DirectSum};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::homotopy::{roof_equal, Roof};
use crate::simpobj::tensor::{glued_tensor, tensor_map, tensor_pointed};
use crate::simpsets::{omega_bar_gadget, omega_gadget, SimplicialSetMap};
use crate::triangles::{minus, suspend};

const GADGET_LEVELS: usize = 2;

/// `[f₁; f₂; ...]` into the direct sum of the targets.
fn stack(maps: &[&ChainMap]) -> ChainMap {
    let source = maps[0].source();
    let targets: Vec<&ChainComplex> = maps.iter().map(|m| m.target()).collect();
    let sum = sum_of(&targets);
    let comps = (0..sum.len().min(source.len()))
        .map(|n| {
            let parts: Vec<_> = maps.iter().map(|m| m.comp(n).into_owned()).collect();
            let refs: Vec<&Matrix> = parts.iter().collect();
            Matrix::vstack(source.dim(n), &refs)
        })
        .collect();
    ChainMap::trusted(source, &sum, comps)
}

/// `[Id Id] : X ⊕ X -> X`.
pub fn fold(x: &ChainComplex) -> ChainMap {
    let ds = direct_sum(&[x, x]);
    ds.projections[0]
        .add(&ds.projections[1])
        .expect("parallel projections")
}

/// `X ⊕ Y -> Y ⊕ X`.
pub fn swap_sum(x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let ds = direct_sum(&[x, y]);
    stack(&[&ds.projections[1], &ds.projections[0]])
}

fn span_inverse(e: &ChainMap) -> Result<Roof> {
    Roof::new(ChainMap::identity(e.target()), e.clone())
}

/// `d_A : ΣA ⇒ ΣA ⊕ ΣA` with its defining maps.
pub struct Comultiplication {
    pub a: ChainComplex,
    pub suspension: ChainComplex,
    pub sum: DirectSum,
    pub d: Roof,
    /// `s(α ⊗ A) : s(Ω ⊗ A) -> ΣA`.
    pub alpha: ChainMap,
    /// `s(π ⊗ A)` followed by the splitting of the wedge.
    pub pi: ChainMap,
}

pub fn comultiplication(a: &ChainComplex) -> Result<Comultiplication> {
    let og = omega_gadget(GADGET_LEVELS)?;
    let omega = tensor_pointed(&og.omega, a)?;
    let circle = tensor_pointed(&og.circle.object, a)?;
    let wedge = tensor_pointed(&og.wedge.object, a)?;
    let alpha = tensor_map(&omega, &circle, &og.alpha)?.simple()?;
    if !alpha.is_qis() {
        return Err(Error::NotQuasiIso("collapse of the q-leg".into()));
    }
    let split =
        |m: &SimplicialSetMap| -> Result<ChainMap> { tensor_map(&wedge, &circle, m)?.simple() };
    let splitting = stack(&[&split(&og.wedge.to_first)?, &split(&og.wedge.to_second)?]);
    let pi = tensor_map(&omega, &wedge, &og.pi)?
        .simple()?
        .then(&splitting);
    let suspension = alpha.target().clone();
    let d = Roof::from_map(&pi).compose(&span_inverse(&alpha)?)?;
    let sum = direct_sum(&[&suspension, &suspension]);
    Ok(Comultiplication {
        a: a.clone(),
        suspension,
        sum,
        d,
        alpha,
        pi,
    })
}

impl Comultiplication {
    /// `π₂ d_A = Id` strictly on the chain level and `π₁ d_A = Id` in the
    /// homotopy category.
    pub fn counit_check(&self) -> Result<bool> {
        let second = self.pi.then(&self.sum.projections[1]);
        let strict = second.comps() == self.alpha.comps();
        let first = Roof::from_map(&self.sum.projections[0]).compose(&self.d)?;
        Ok(strict && roof_equal(&first, &Roof::identity(&self.suspension)))
    }

    /// `fold (Id ⊕ m_A) d_A` vanishes on homology.
    pub fn inverse_check(&self) -> Result<bool> {
        let m = minus(&self.a)?;
        if m.p1.target() != &self.suspension {
            return Err(Error::Invalid("suspension models disagree".into()));
        }
        let twisted = Roof::identity(&self.suspension)
            .direct_sum(&m.m)
            .compose(&self.d)?;
        let total = Roof::from_map(&fold(&self.suspension)).compose(&twisted)?;
        Ok(total.graded().is_zero())
    }

    pub fn coassoc_check(&self) -> Result<bool> {
        let id = Roof::identity(&self.suspension);
        let left = self.d.direct_sum(&id).compose(&self.d)?;
        let right = id.direct_sum(&self.d).compose(&self.d)?;
        Ok(roof_equal(&left, &right))
    }

    /// `fold (f ⊕ g) d_A`.
    pub fn sum_of_maps(&self, f: &Roof, g: &Roof) -> Result<Roof> {
        let x = f.target();
        let both = f.direct_sum(g).compose(&self.d)?;
        Roof::from_map(&fold(x)).compose(&both)
    }
}

/// The comultiplication of `Σ²A` is invariant under swapping the summands.
pub fn abelian_check(a: &ChainComplex) -> Result<bool> {
    let sa = suspend(a)?;
    let c = comultiplication(&sa)?;
    let tau = Roof::from_map(&swap_sum(&c.suspension, &c.suspension));
    Ok(roof_equal(&tau.compose(&c.d)?, &c.d))
}

/// `w_f : c(f) ⇒ ΣA ⊕ c(f)` on the glued model `c(f) = s(Δ[1] ⊗_f (A, B))`.
pub struct Coaction {
    pub cone: ChainComplex,
    pub suspension: ChainComplex,
    pub w: Roof,
    pub alpha: ChainMap,
    pub pi: ChainMap,
}

pub fn coaction(f: &ChainMap) -> Result<Coaction> {
    let og = omega_bar_gadget(GADGET_LEVELS)?;
    let far = og
        .interval
        .index_of(0, "1")
        .ok_or_else(|| Error::Invalid("interval has no vertex 1".into()))?;
    let interval = glued_tensor(&og.interval, Some(far), f)?;
    let omega = glued_tensor(&og.omega_bar, Some(og.p.apply(0, far)), f)?;
    let wedge = glued_tensor(&og.wedge.object, Some(og.wedge.second.apply(0, far)), f)?;
    let circle = tensor_pointed(&og.circle.object, f.source())?;
    let alpha = tensor_map(&omega, &interval, &og.alpha)?.simple()?;
    if !alpha.is_qis() {
        return Err(Error::NotQuasiIso("collapse of the loop".into()));
    }
    let to_circle = tensor_map(&wedge, &circle, &og.wedge.to_first)?.simple()?;
    let to_cone = tensor_map(&wedge, &interval, &og.wedge.to_second)?.simple()?;
    let pi = tensor_map(&omega, &wedge, &og.pi)?
        .simple()?
        .then(&stack(&[&to_circle, &to_cone]));
    let cone = alpha.target().clone();
    let w = Roof::from_map(&pi).compose(&span_inverse(&alpha)?)?;
    Ok(Coaction {
        cone,
        suspension: to_circle.target().clone(),
        w,
        alpha,
        pi,
    })
}

impl Coaction {
    /// `π₂ w_f = Id`, strictly.
    pub fn counit_check(&self) -> bool {
        let ds = direct_sum(&[&self.suspension, &self.cone]);
        self.pi.then(&ds.projections[1]).comps() == self.alpha.comps()
    }

    /// `(Id ⊕ w) w = (d ⊕ Id) w`.
    pub fn compatibility_check(&self, d: &Comultiplication) -> Result<bool> {
        if d.suspension != self.suspension {
            return Err(Error::DimensionMismatch(
                "coaction and comultiplication on different objects".into(),
            ));
        }
        let left = Roof::identity(&self.suspension)
            .direct_sum(&self.w)
            .compose(&self.w)?;
        let right =
            d.d.direct_sum(&Roof::identity(&self.cone))
                .compose(&self.w)?;
        Ok(roof_equal(&left, &right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Gen;
    use crate::triangles::cone_of;

    #[test]
    fn zero_object() {
        let c = comultiplication(&ChainComplex::zero()).unwrap();
        assert_eq!(c.suspension.total_dim(), 0);
        assert!(c.counit_check().unwrap());
    }

    #[test]
    fn cogroup_laws() {
        let mut g = Gen::new(61, 3, 2);
        for _ in 0..4 {
            let a = g.complex();
            let c = comultiplication(&a).unwrap();
            assert!(c.counit_check().unwrap());
            assert!(c.inverse_check().unwrap());
            assert!(c.coassoc_check().unwrap());
            assert!(abelian_check(&a).unwrap());
        }
    }

    #[test]
    fn sums_of_maps_add_on_homology() {
        let mut g = Gen::new(62, 3, 2);
        let a = g.complex();
        let x = g.complex();
        let c = comultiplication(&a).unwrap();
        let f = Roof::from_map(&g.map(&c.suspension, &x));
        let h = Roof::from_map(&g.map(&c.suspension, &x));
        let s = c.sum_of_maps(&f, &h).unwrap();
        assert!(s.graded().same_as(&f.graded().add(&h.graded()).unwrap()));
        let zero = Roof::from_map(&ChainMap::zero(&c.suspension, &x));
        assert!(roof_equal(&c.sum_of_maps(&f, &zero).unwrap(), &f));
    }

    #[test]
    fn coaction_laws() {
        let mut g = Gen::new(63, 3, 2);
        for _ in 0..3 {
            let a = g.complex();
            let b = g.complex();
            let f = g.map(&a, &b);
            let w = coaction(&f).unwrap();
            assert_eq!(w.cone.betti(), cone_of(&f).unwrap().complex.betti());
            assert!(w.counit_check());
            let d = comultiplication(&a).unwrap();
            assert!(w.compatibility_check(&d).unwrap());
        }
    }
}

//! Actions of finite simplicial sets on simplicial chain complexes.
//!
//! `K ⊠ X` has level `n` equal to `⊕_{K_n} X_n`. For a pointed `K` and a
//! complex `A`, `K ⊗ A` has level `n` equal to `⊕_{K_n} A` with the cells
//! over the basepoint removed. The glued variant replaces `A` by `B` on
//! the cells that are constant at a chosen vertex and uses `f : A -> B`
//! where an `A`-cell meets such a cell.

use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::simpsets::{FinSimplicialSet, SimplicialSetMap};

use super::{assemble, pieces, Pieces, Seg, SimplicialMap, SimplicialObject};

/// Highest level at or below the truncation carrying a nondegenerate cell
/// accepted by `keep`.
fn top_cell(k: &FinSimplicialSet, keep: impl Fn(usize, usize) -> bool) -> usize {
    (0..=k.truncation())
        .rev()
        .find(|&n| k.nondegenerate(n).into_iter().any(|x| keep(n, x)))
        .unwrap_or(0)
}

/// The totally degenerate simplex on vertex `v` at each level.
fn vertex_cells(k: &FinSimplicialSet, v: usize) -> Vec<usize> {
    let mut out = vec![v];
    for m in 0..k.truncation() {
        out.push(k.degen(m, 0, out[m]));
    }
    out
}

/// `K ⊠ X` with one piece per cell.
pub struct BoxTimes {
    pub object: SimplicialObject,
    pub cells: FinSimplicialSet,
    layout: Vec<Pieces>,
}

pub fn boxtimes(k: &FinSimplicialSet, x: &SimplicialObject) -> Result<BoxTimes> {
    let big_n = k.truncation().min(x.truncation());
    let mut layout = Vec::with_capacity(big_n + 1);
    let mut atoms = Vec::with_capacity(big_n + 1);
    for n in 0..=big_n {
        let parts = vec![x.level(n); k.size(n)];
        layout.push(pieces(&parts));
        atoms.push(
            (0..k.size(n))
                .flat_map(|c| {
                    x.atoms(n)
                        .iter()
                        .map(move |a| a.prefixed(Seg::Cell(k.name(n, c).to_string())))
                })
                .collect(),
        );
    }
    let faces = (0..=big_n)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    let blocks: Vec<_> = (0..k.size(n))
                        .map(|c| (k.face(n, i, c), c, x.face(n, i).clone()))
                        .collect();
                    assemble(&layout[n], &layout[n - 1], &blocks)
                })
                .collect()
        })
        .collect();
    let degens = (0..big_n)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let blocks: Vec<_> = (0..k.size(n))
                        .map(|c| (k.degen(n, j, c), c, x.degen(n, j).clone()))
                        .collect();
                    assemble(&layout[n], &layout[n + 1], &blocks)
                })
                .collect()
        })
        .collect();
    let skeletal = top_cell(k, |_, _| true) + x.skeletal();
    let levels = layout.iter().map(|p| p.complex.clone()).collect();
    let object = SimplicialObject::from_parts(levels, atoms, faces, degens, skeletal);
    Ok(BoxTimes {
        object,
        cells: k.clone(),
        layout,
    })
}

/// `φ ⊠ F : K ⊠ X -> L ⊠ X'`.
pub fn boxtimes_map(
    src: &BoxTimes,
    tgt: &BoxTimes,
    phi: &SimplicialSetMap,
    f: &SimplicialMap,
) -> Result<SimplicialMap> {
    phi.verify(&src.cells, &tgt.cells)?;
    let big_n = src.object.truncation().min(tgt.object.truncation());
    let levels = (0..=big_n)
        .map(|n| {
            let blocks: Vec<_> = (0..src.cells.size(n))
                .map(|c| (phi.apply(n, c), c, f.level(n).clone()))
                .collect();
            assemble(&src.layout[n], &tgt.layout[n], &blocks)
        })
        .collect();
    SimplicialMap::new(&src.object, &tgt.object, levels)
}

/// What a tensor cell carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Carrier {
    A,
    B,
}

/// `K ⊗ A`, or its glued variant along `f : A -> B` at a vertex.
pub struct Tensor {
    pub object: SimplicialObject,
    pub cells: FinSimplicialSet,
    pub f: ChainMap,
    // per level: piece index of each cell, None over the basepoint
    slot: Vec<Vec<Option<(usize, Carrier)>>>,
    layout: Vec<Pieces>,
}

impl Tensor {
    /// Piece of cell `c` at level `n`, if it is not over the basepoint.
    pub fn piece(&self, n: usize, c: usize) -> Option<usize> {
        self.slot[n][c].map(|(p, _)| p)
    }
}

/// `K ⊗ A` for pointed `K`.
pub fn tensor_pointed(k: &FinSimplicialSet, a: &ChainComplex) -> Result<Tensor> {
    glued_tensor(k, None, &ChainMap::identity(a))
}

/// `K ⊗ A` with the cells constant at `v` carrying `B` and the faces from
/// `A`-cells onto them acting by `f`.
pub fn glued_tensor(k: &FinSimplicialSet, v: Option<usize>, f: &ChainMap) -> Result<Tensor> {
    let base = k
        .basepoint()
        .ok_or_else(|| Error::Invalid("tensor needs a pointed simplicial set".into()))?;
    if v == Some(base) {
        return Err(Error::Invalid(
            "glueing vertex must differ from the basepoint".into(),
        ));
    }
    let big_n = k.truncation();
    let base_cells = vertex_cells(k, base);
    let v_cells = v.map(|v| vertex_cells(k, v));
    let (a, b) = (f.source(), f.target());
    let mut slot = Vec::with_capacity(big_n + 1);
    let mut layout = Vec::with_capacity(big_n + 1);
    let mut atoms = Vec::with_capacity(big_n + 1);
    for n in 0..=big_n {
        let mut here = vec![None; k.size(n)];
        let mut parts = Vec::new();
        let mut level_atoms = Vec::new();
        for c in 0..k.size(n) {
            if c == base_cells[n] {
                continue;
            }
            let carrier = if v_cells.as_ref().is_some_and(|vc| vc[n] == c) {
                Carrier::B
            } else {
                Carrier::A
            };
            let cx = if carrier == Carrier::A { a } else { b };
            here[c] = Some((parts.len(), carrier));
            parts.push(cx);
            level_atoms.push(super::Atom {
                tag: vec![Seg::Cell(k.name(n, c).to_string())],
                dims: cx.dims().to_vec(),
            });
        }
        layout.push(pieces(&parts));
        slot.push(here);
        atoms.push(level_atoms);
    }
    let link = |from: Carrier, to: Carrier| -> Result<ChainMap> {
        match (from, to) {
            (Carrier::A, Carrier::A) => Ok(ChainMap::identity(a)),
            (Carrier::A, Carrier::B) => Ok(f.clone()),
            (Carrier::B, Carrier::B) => Ok(ChainMap::identity(b)),
            (Carrier::B, Carrier::A) => Err(Error::Invalid(
                "a glued cell maps onto an unglued one".into(),
            )),
        }
    };
    let operator = |n: usize, m: usize, image: &dyn Fn(usize) -> usize| -> Result<ChainMap> {
        let mut blocks = Vec::new();
        for c in 0..k.size(n) {
            let Some((sp, sc)) = slot[n][c] else { continue };
            let Some((tp, tc)) = slot[m][image(c)] else {
                continue;
            };
            blocks.push((tp, sp, link(sc, tc)?));
        }
        Ok(assemble(&layout[n], &layout[m], &blocks))
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=big_n {
        faces.push(
            (0..=n)
                .map(|i| operator(n, n - 1, &|c| k.face(n, i, c)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let degens = (0..big_n)
        .map(|n| {
            (0..=n)
                .map(|j| operator(n, n + 1, &|c| k.degen(n, j, c)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let skeletal = top_cell(k, |n, x| x != base_cells[n]);
    let levels = layout.iter().map(|p| p.complex.clone()).collect();
    let object = SimplicialObject::from_parts(levels, atoms, faces, degens, skeletal);
    Ok(Tensor {
        object,
        cells: k.clone(),
        f: f.clone(),
        slot,
        layout,
    })
}

/// `φ ⊗ A` for a pointed map `φ : K -> L`. Each cell's carrier must agree
/// with the carrier it lands on, and glued cells must land on glued cells
/// or the basepoint.
pub fn tensor_map(src: &Tensor, tgt: &Tensor, phi: &SimplicialSetMap) -> Result<SimplicialMap> {
    phi.verify(&src.cells, &tgt.cells)?;
    if src.cells.basepoint().map(|b| phi.apply(0, b)) != tgt.cells.basepoint() {
        return Err(Error::Invalid("map does not preserve basepoints".into()));
    }
    let (a, b) = (src.f.source(), src.f.target());
    let (ta, tb) = (tgt.f.source(), tgt.f.target());
    let mismatch = || Error::DimensionMismatch("cell carriers do not match".into());
    let big_n = src.object.truncation().min(tgt.object.truncation());
    let mut levels = Vec::with_capacity(big_n + 1);
    for n in 0..=big_n {
        let mut blocks = Vec::new();
        for c in 0..src.cells.size(n) {
            let Some((sp, sc)) = src.slot[n][c] else {
                continue;
            };
            let Some((tp, tc)) = tgt.slot[n][phi.apply(n, c)] else {
                continue;
            };
            let m = match (sc, tc) {
                (Carrier::A, Carrier::A) if a == ta => ChainMap::identity(a),
                (Carrier::A, Carrier::B)
                    if a == ta && b == tb && src.f.comps() == tgt.f.comps() =>
                {
                    src.f.clone()
                }
                (Carrier::B, Carrier::B) if b == tb => ChainMap::identity(b),
                (Carrier::B, Carrier::A) => {
                    return Err(Error::Invalid(
                        "a glued cell maps onto an unglued one".into(),
                    ))
                }
                _ => return Err(mismatch()),
            };
            blocks.push((tp, sp, m));
        }
        levels.push(assemble(&src.layout[n], &tgt.layout[n], &blocks));
    }
    SimplicialMap::new(&src.object, &tgt.object, levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::shift;
    use crate::random::Gen;
    use crate::simpobj::constant;
    use crate::simpobj::cyl::cone_const;
    use crate::simpsets::{circle, delta};

    #[test]
    fn suspension_shifts() {
        let mut g = Gen::with_defaults(21);
        for _ in 0..5 {
            let a = g.complex();
            let s1 = circle(2).unwrap();
            let t = tensor_pointed(&s1.object, &a).unwrap();
            t.object.check_identities().unwrap();
            let s = t.object.simple().unwrap();
            assert_eq!(s.complex.total_dim(), a.total_dim());
            assert_eq!(s.complex.betti(), shift(&a, 1).betti());
        }
    }

    #[test]
    fn boxtimes_delta_zero_is_identity() {
        let mut g = Gen::with_defaults(22);
        let a = g.complex();
        let x = constant(&a, 2);
        let d0 = delta(0, 2).unwrap();
        let b = boxtimes(&d0, &x).unwrap();
        assert_eq!(b.object.simple().unwrap().complex, a);
    }

    #[test]
    fn cone_is_interval_tensor() {
        let mut g = Gen::with_defaults(23);
        let a = g.complex();
        let interval = delta(1, 2).unwrap().pointed_at(0).unwrap();
        let t = tensor_pointed(&interval, &a).unwrap();
        let c = cone_const(&ChainMap::identity(&a), 2).unwrap();
        let st = t.object.simple().unwrap();
        let sc = c.object.simple().unwrap();
        assert_eq!(st.complex.dims(), sc.complex.dims());
        assert!(st.complex.is_acyclic());
    }
}

//! Simplicial cylinders `Cyl(f, g)`, cones and the interchange of iterated
//! cylinders.
//!
//! Level `n` of `Cyl(f, g)` for `f : X -> Y`, `g : X -> Z` is
//! `Y_n ⊕ X_n^{⊕n} ⊕ Z_n`. The copy `k` corresponds to the simplex
//! `0^k 1^{n+1-k}` of `Δ[1]`; `Y` sits at `k = 0` (all ones) and `Z` at
//! `k = n + 1` (all zeros).

use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};

use super::{
    assemble, constant, pieces, tag_map, zero_object, Pieces, Seg, SimplicialMap, SimplicialObject,
};

/// A cylinder with its two legs and the offsets of its pieces.
pub struct Cylinder {
    pub object: SimplicialObject,
    pub f: SimplicialMap,
    pub g: SimplicialMap,
    /// `Y -> Cyl(f, g)`.
    pub y_leg: SimplicialMap,
    /// `Z -> Cyl(f, g)`.
    pub z_leg: SimplicialMap,
    layout: Vec<Pieces>,
}

impl Cylinder {
    pub fn source(&self) -> &SimplicialObject {
        self.f.source()
    }

    pub fn y(&self) -> &SimplicialObject {
        self.f.target()
    }

    pub fn z(&self) -> &SimplicialObject {
        self.g.target()
    }
}

fn single(c: &ChainComplex) -> Pieces {
    Pieces {
        complex: c.clone(),
        offsets: vec![vec![0; c.len()]],
    }
}

pub fn cyl(f: &SimplicialMap, g: &SimplicialMap) -> Result<Cylinder> {
    if f.source() != g.source() {
        return Err(Error::DimensionMismatch(
            "cylinder legs have different sources".into(),
        ));
    }
    let (x, y, z) = (f.source(), f.target(), g.target());
    let big_n = x.truncation().min(y.truncation()).min(z.truncation());
    let mut layout = Vec::with_capacity(big_n + 1);
    let mut atoms = Vec::with_capacity(big_n + 1);
    for n in 0..=big_n {
        let mut parts: Vec<&ChainComplex> = vec![y.level(n)];
        parts.extend(std::iter::repeat(x.level(n)).take(n));
        parts.push(z.level(n));
        layout.push(pieces(&parts));
        let mut a: Vec<_> = y.atoms(n).iter().map(|t| t.prefixed(Seg::Y)).collect();
        for k in 1..=n {
            a.extend(x.atoms(n).iter().map(|t| t.prefixed(Seg::M(k))));
        }
        a.extend(z.atoms(n).iter().map(|t| t.prefixed(Seg::Z)));
        atoms.push(a);
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=big_n {
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut blocks = vec![
                (0, 0, y.face(n, i).clone()),
                (n, n + 1, z.face(n, i).clone()),
            ];
            for k in 1..=n {
                let k2 = if i < k { k - 1 } else { k };
                let d = x.face(n, i);
                let m = if k2 == 0 {
                    d.then(f.level(n - 1))
                } else if k2 == n {
                    d.then(g.level(n - 1))
                } else {
                    d.clone()
                };
                blocks.push((k2, k, m));
            }
            fs.push(assemble(&layout[n], &layout[n - 1], &blocks));
        }
        faces.push(fs);
    }
    let degens = (0..big_n)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let mut blocks = vec![
                        (0, 0, y.degen(n, j).clone()),
                        (n + 2, n + 1, z.degen(n, j).clone()),
                    ];
                    for k in 1..=n {
                        blocks.push((if j < k { k + 1 } else { k }, k, x.degen(n, j).clone()));
                    }
                    assemble(&layout[n], &layout[n + 1], &blocks)
                })
                .collect()
        })
        .collect();
    let skeletal = y.skeletal().max(z.skeletal()).max(x.skeletal() + 1);
    let levels = layout.iter().map(|p| p.complex.clone()).collect();
    let object = SimplicialObject::from_parts(levels, atoms, faces, degens, skeletal);
    let leg = |side: &SimplicialObject, at: &dyn Fn(usize) -> usize| {
        let levels = (0..=big_n)
            .map(|n| {
                assemble(
                    &single(side.level(n)),
                    &layout[n],
                    &[(at(n), 0, ChainMap::identity(side.level(n)))],
                )
            })
            .collect();
        SimplicialMap::trusted(side, &object, levels)
    };
    let y_leg = leg(y, &|_| 0);
    let z_leg = leg(z, &|n| n + 1);
    Ok(Cylinder {
        object: object.clone(),
        f: f.clone(),
        g: g.clone(),
        y_leg,
        z_leg,
        layout,
    })
}

/// The map `Cyl(f, g) -> Cyl(f', g')` induced by `α : Y -> Y'`,
/// `β : X -> X'`, `γ : Z -> Z'` with `f'β = αf` and `g'β = γg`.
pub fn cyl_map(
    src: &Cylinder,
    tgt: &Cylinder,
    alpha: &SimplicialMap,
    beta: &SimplicialMap,
    gamma: &SimplicialMap,
) -> Result<SimplicialMap> {
    let big_n = src.object.truncation().min(tgt.object.truncation());
    for n in 0..=big_n {
        if beta.level(n).then(tgt.f.level(n)).comps() != src.f.level(n).then(alpha.level(n)).comps()
        {
            return Err(Error::NotCommuting(format!("f' β != α f at level {n}")));
        }
        if beta.level(n).then(tgt.g.level(n)).comps() != src.g.level(n).then(gamma.level(n)).comps()
        {
            return Err(Error::NotCommuting(format!("g' β != γ g at level {n}")));
        }
    }
    let levels = (0..=big_n)
        .map(|n| {
            let mut blocks = vec![
                (0, 0, alpha.level(n).clone()),
                (n + 1, n + 1, gamma.level(n).clone()),
            ];
            for k in 1..=n {
                blocks.push((k, k, beta.level(n).clone()));
            }
            assemble(&src.layout[n], &tgt.layout[n], &blocks)
        })
        .collect();
    Ok(SimplicialMap::trusted(&src.object, &tgt.object, levels))
}

/// The cone `C(f) = Cyl(f, X -> 0)`.
pub fn cone(f: &SimplicialMap) -> Result<Cylinder> {
    let zero = zero_object(f.source().truncation());
    cyl(f, &SimplicialMap::zero(f.source(), &zero))
}

/// `ΛX = C(X -> 0)`.
pub fn lambda_big(x: &SimplicialObject) -> Result<Cylinder> {
    let zero = zero_object(x.truncation());
    let to_zero = SimplicialMap::zero(x, &zero);
    cyl(&to_zero, &to_zero)
}

/// `Cyl(f × Δ, g × Δ)` for chain maps with a common source.
pub fn cyl_const(f: &ChainMap, g: &ChainMap, big_n: usize) -> Result<Cylinder> {
    if f.source() != g.source() {
        return Err(Error::DimensionMismatch(
            "maps have different sources".into(),
        ));
    }
    let x = constant(f.source(), big_n);
    let y = constant(f.target(), big_n);
    let z = if f.target() == g.target() {
        y.clone()
    } else {
        constant(g.target(), big_n)
    };
    cyl(
        &SimplicialMap::constant_between(f, &x, &y),
        &SimplicialMap::constant_between(g, &x, &z),
    )
}

/// `C(f × Δ)`.
pub fn cone_const(f: &ChainMap, big_n: usize) -> Result<Cylinder> {
    let x = constant(f.source(), big_n);
    let y = constant(f.target(), big_n);
    cone(&SimplicialMap::constant_between(f, &x, &y))
}

/// The commutative diagram
///
/// ```text
/// Z'  <-g'-  X'  -f'->  Y'
/// ^α         ^β         ^γ
/// Z   <-g-   X   -f->   Y
/// vα'        vβ'        vγ'
/// Z'' <-g''- X'' -f''-> Y''
/// ```
pub struct Grid3 {
    pub f: SimplicialMap,
    pub g: SimplicialMap,
    pub f1: SimplicialMap,
    pub g1: SimplicialMap,
    pub f2: SimplicialMap,
    pub g2: SimplicialMap,
    pub alpha: SimplicialMap,
    pub beta: SimplicialMap,
    pub gamma: SimplicialMap,
    pub alpha2: SimplicialMap,
    pub beta2: SimplicialMap,
    pub gamma2: SimplicialMap,
}

/// The two iterated cylinders of a [`Grid3`] and the maps relating them.
pub struct IteratedCylinders {
    /// `Cyl(δ', δ)`, cylinders of the rows glued along the column maps.
    pub by_rows: Cylinder,
    /// `Cyl(f̂, ĝ)`, cylinders of the columns glued along the row maps.
    pub by_columns: Cylinder,
    /// The interchange `Θ : Cyl(δ', δ) -> Cyl(f̂, ĝ)`.
    pub theta: SimplicialMap,
    /// The `Y`-leg `Cyl(f'', g'') -> Cyl(δ', δ)`.
    pub i_rows: SimplicialMap,
    /// The `Y`-leg `Cyl(γ', γ) -> Cyl(f̂, ĝ)`.
    pub i_columns: SimplicialMap,
    /// `Cyl(γ', γ) -> Cyl(δ', δ)` induced by the row `Y`-legs.
    pub psi: SimplicialMap,
    /// `Cyl(f'', g'') -> Cyl(f̂, ĝ)` induced by the column `Y`-legs.
    pub psi_prime: SimplicialMap,
}

/// Swaps the first two address steps of every atom.
pub fn swap_outer(tag: &[Seg]) -> Option<Vec<Seg>> {
    let mut t = tag.to_vec();
    if t.len() >= 2 {
        t.swap(0, 1);
    }
    Some(t)
}

pub fn iterated_cylinders(grid: &Grid3) -> Result<IteratedCylinders> {
    let row = cyl(&grid.f, &grid.g)?;
    let row1 = cyl(&grid.f1, &grid.g1)?;
    let row2 = cyl(&grid.f2, &grid.g2)?;
    let delta = cyl_map(&row, &row1, &grid.gamma, &grid.beta, &grid.alpha)?;
    let delta2 = cyl_map(&row, &row2, &grid.gamma2, &grid.beta2, &grid.alpha2)?;
    let col_z = cyl(&grid.alpha2, &grid.alpha)?;
    let col_x = cyl(&grid.beta2, &grid.beta)?;
    let col_y = cyl(&grid.gamma2, &grid.gamma)?;
    let g_hat = cyl_map(&col_x, &col_z, &grid.g2, &grid.g, &grid.g1)?;
    let f_hat = cyl_map(&col_x, &col_y, &grid.f2, &grid.f, &grid.f1)?;
    let by_rows = cyl(&delta2, &delta)?;
    let by_columns = cyl(&f_hat, &g_hat)?;
    let theta = tag_map(&by_rows.object, &by_columns.object, swap_outer)?;
    let psi = cyl_map(&col_y, &by_rows, &row2.y_leg, &row.y_leg, &row1.y_leg)?;
    let psi_prime = cyl_map(&row2, &by_columns, &col_y.y_leg, &col_x.y_leg, &col_z.y_leg)?;
    Ok(IteratedCylinders {
        i_rows: by_rows.y_leg.clone(),
        i_columns: by_columns.y_leg.clone(),
        by_rows,
        by_columns,
        theta,
        psi,
        psi_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainMap;
    use crate::random::Gen;

    fn ranks(x: &SimplicialObject, q: usize) -> Vec<usize> {
        x.levels().iter().map(|c| c.dim(q)).collect()
    }

    #[test]
    fn cylinder_ranks() {
        let q = ChainComplex::concentrated(0, 1);
        let id = ChainMap::identity(&q);
        let c = cyl_const(&id, &id, 3).unwrap();
        c.object.check_identities().unwrap();
        assert_eq!(ranks(&c.object, 0), vec![2, 3, 4, 5]);
        c.y_leg.verify().unwrap();
        c.z_leg.verify().unwrap();
        // normalized Δ[1] has nondegenerate ranks 2, 1
        assert_eq!(c.object.simple().unwrap().complex.dims(), &[2, 1]);
    }

    #[test]
    fn cones_match_the_classical_cone() {
        let mut g = Gen::with_defaults(5);
        for _ in 0..10 {
            let a = g.complex();
            let b = g.complex();
            let f = g.map(&a, &b);
            let c = cone_const(&f, 2).unwrap();
            c.object.check_identities().unwrap();
            let s = c.object.simple().unwrap();
            assert_eq!(
                s.complex.betti(),
                crate::chain::classical_cone(&f).cone.betti()
            );
        }
    }

    #[test]
    fn lambda_is_a_shift() {
        let mut g = Gen::with_defaults(6);
        let a = g.complex();
        let l = lambda_big(&constant(&a, 2)).unwrap();
        let mut want = a.betti();
        if !want.is_empty() {
            want.insert(0, 0);
        }
        assert_eq!(l.object.simple().unwrap().complex.betti(), want);
    }

    #[test]
    fn interchange_of_iterated_cylinders() {
        let mut gen = Gen::new(7, 3, 2);
        let (x, y, z) = (gen.complex(), gen.complex(), gen.complex());
        let big_n = 3;
        let (cx, cy, cz) = (
            constant(&x, big_n),
            constant(&y, big_n),
            constant(&z, big_n),
        );
        let f = SimplicialMap::constant_between(&gen.map(&x, &y), &cx, &cy);
        let g = SimplicialMap::constant_between(&gen.map(&x, &z), &cx, &cz);
        let scaled = |o: &SimplicialObject, k: i64| {
            let m = ChainMap::identity(o.level(0)).scale(&crate::exactla::int(k));
            SimplicialMap::constant_between(&m, o, o)
        };
        let grid = Grid3 {
            f: f.clone(),
            g: g.clone(),
            f1: f.clone(),
            g1: g.clone(),
            f2: f.clone(),
            g2: g.clone(),
            alpha: scaled(&cz, 2),
            beta: scaled(&cx, 2),
            gamma: scaled(&cy, 2),
            alpha2: scaled(&cz, -1),
            beta2: scaled(&cx, -1),
            gamma2: scaled(&cy, -1),
        };
        let it = iterated_cylinders(&grid).unwrap();
        it.by_rows.object.check_identities().unwrap();
        let lhs = it.theta.compose(&it.i_rows).unwrap();
        assert_eq!(
            lhs.levels()
                .iter()
                .map(|m| m.comps().to_vec())
                .collect::<Vec<_>>(),
            it.psi_prime
                .levels()
                .iter()
                .map(|m| m.comps().to_vec())
                .collect::<Vec<_>>()
        );
        let lhs = it.theta.compose(&it.psi).unwrap();
        assert_eq!(
            lhs.levels()
                .iter()
                .map(|m| m.comps().to_vec())
                .collect::<Vec<_>>(),
            it.i_columns
                .levels()
                .iter()
                .map(|m| m.comps().to_vec())
                .collect::<Vec<_>>()
        );
        let back = tag_map(&it.by_columns.object, &it.by_rows.object, swap_outer).unwrap();
        for (n, m) in back.compose(&it.theta).unwrap().levels().iter().enumerate() {
            assert_eq!(m, &ChainMap::identity(it.by_rows.object.level(n)));
        }
        assert!(it.theta.simple().unwrap().is_qis());
    }
}

//! The descent cone against the textbook mapping cone.
//!
//! With the normalized simple, `c(f)_n = B_n ⊕ A_{n-1}` and
//! `ΣA_n = A_{n-1}`; the identifications with the classical cone and with
//! `A[1]` are the identity on `B` and `(-1)^{n-1}` on `A_{n-1}`. Under them
//! the two connecting maps agree with sign [`CONNECTING_SIGN`].

use descent::chain::{classical_cone, shift, ChainComplex, ChainMap, GradedMap};
use descent::exactla::{int, Matrix, Scalar};
use descent::triangles::{boundary, cofiber_of_map, cone_of, suspend, verify_les};
use serde_json::json;

use crate::report::{sweep, trimmed, witness, Config, VerificationReport};

pub const CONNECTING_SIGN: i64 = 1;

fn alternating(n: usize) -> Scalar {
    int(if n % 2 == 1 { 1 } else { -1 })
}

/// `Id_B ⊕ (-1)^{n-1} Id_A : c(f) -> cone(f)`.
fn to_classical(
    a: &ChainComplex,
    b: &ChainComplex,
    source: &ChainComplex,
    target: &ChainComplex,
) -> descent::error::Result<ChainMap> {
    let comps = (0..source.len())
        .map(|n| {
            let mut m = Matrix::zeros(target.dim(n), source.dim(n));
            m.set_block(0, 0, &Matrix::identity(b.dim(n)));
            if n >= 1 {
                m.set_block(
                    b.dim(n),
                    b.dim(n),
                    &Matrix::identity(a.dim(n - 1)).scale(&alternating(n)),
                );
            }
            m
        })
        .collect();
    ChainMap::new(source, target, comps)
}

/// `(-1)^{n-1} : ΣA -> A[1]`.
fn to_shift(
    a: &ChainComplex,
    source: &ChainComplex,
    target: &ChainComplex,
) -> descent::error::Result<ChainMap> {
    let comps = (0..source.len())
        .map(|n| {
            if n == 0 {
                Matrix::zeros(0, 0)
            } else {
                Matrix::identity(a.dim(n - 1)).scale(&alternating(n))
            }
        })
        .collect();
    ChainMap::new(source, target, comps)
}

/// `H(first)` followed by `H(second)` is exact in every degree.
fn exact(first: &GradedMap, second: &GradedMap, middle: &[usize]) -> bool {
    (0..middle.len()).all(|n| {
        let (f, g) = (first.block(n), second.block(n));
        let rf = f.map_or(0, Matrix::rank);
        let rg = g.map_or(0, Matrix::rank);
        let zero = match (f, g) {
            (Some(f), Some(g)) if f.rows() > 0 && g.cols() > 0 => (g * f).is_zero(),
            _ => true,
        };
        zero && rf + rg == middle[n]
    })
}

pub fn run(cfg: &Config) -> VerificationReport {
    sweep("cone", cfg, |c| {
        let (a, b) = (c.gen.complex(), c.gen.complex());
        let want = c.index % 4 == 0;
        let f = if want {
            c.gen.qis_from(&a)
        } else {
            c.gen.map(&a, &b)
        };
        let b = f.target().clone();
        let w = || witness(&f);
        let pair = cone_of(&f)?;
        let classical = classical_cone(&f);
        c.check(
            "homology matches the classical cone",
            trimmed(&pair.complex.betti()) == trimmed(&classical.cone.betti()),
            w,
        );
        let phi = to_classical(&a, &b, &pair.complex, &classical.cone)?;
        c.check(
            "identification is an isomorphism",
            phi.comps().iter().all(Matrix::is_invertible),
            w,
        );
        c.check(
            "identification respects the inclusion",
            pair.i.then(&phi).comps() == classical.inclusion.comps(),
            w,
        );

        let sa = suspend(&a)?;
        let a1 = shift(&a, 1);
        let sigma = to_shift(&a, &sa, &a1)?;
        let p = boundary(&pair)?;
        let sign = int(CONNECTING_SIGN);
        let connecting = phi.then(&classical.projection).induced_homology();
        let transported = p.then(&sigma).scale(&sign).induced_homology();
        c.check("connecting maps agree", connecting.same_as(&transported), w);

        // the classical sequence B -> cone -> A[1] -> B[1]
        let hb = b.betti();
        let (hi, hp) = (
            classical.inclusion.induced_homology(),
            classical.projection.induced_homology(),
        );
        let f1 = ChainMap::new(
            &a1,
            &shift(&b, 1),
            (0..a1.len())
                .map(|n| {
                    if n == 0 {
                        Matrix::zeros(0, 0)
                    } else {
                        f.comp(n - 1).into_owned()
                    }
                })
                .collect(),
        )?;
        let les = exact(&f.induced_homology(), &hi, &hb)
            && exact(&hi, &hp, &classical.cone.betti())
            && exact(&hp, &f1.induced_homology(), &a1.betti());
        c.check("classical sequence is exact", les, w);
        let descent = verify_les(&cofiber_of_map(&f)?)?.exact();
        c.check("descent sequence is exact", descent, w);
        c.check(
            "equivalence iff acyclic cone",
            f.is_qis() == pair.complex.is_acyclic(),
            || json!({ "f": witness(&f) }),
        );
        Ok(())
    })
}

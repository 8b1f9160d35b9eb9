//! The descent axioms for the normalized simple of simplicial complexes.

use descent::chain::{direct_sum, ChainMap};
use descent::random::Gen;
use descent::simpobj::bisimplicial::{Bisimplicial, GridMap};
use descent::simpobj::cyl::cone_const;
use descent::simpobj::{coproduct, unit, SimplicialMap};
use serde_json::{json, Value};

use crate::report::{sweep, trimmed, witness, Case, Config, VerificationReport};

fn map_witness(f: &SimplicialMap) -> Value {
    json!({ "source": witness(f.source()), "target": witness(f.target()), "levels": witness(f.levels()) })
}

/// Sums of quasi-isomorphisms are quasi-isomorphisms, and only those.
fn sums(c: &mut Case) {
    let (a, b) = (c.gen.complex(), c.gen.complex());
    let f = c.gen.qis_from(&a);
    let want = c.gen.coin(0.5);
    let h = c.gen.maybe_qis(&b, want);
    let sum = f.direct_sum(&h);
    c.check(
        "S2 sums of equivalences",
        sum.is_qis() == h.is_qis(),
        || json!({ "f": witness(&f), "g": witness(&h) }),
    );
}

/// `[s(inl) s(inr)] : sX ⊕ sY -> s(X ⊔ Y)` is an isomorphism, and the
/// normalized simple agrees with the Moore complex.
fn coproducts(c: &mut Case, big_n: usize) -> descent::error::Result<()> {
    let (x, y) = (c.gen.simplicial(big_n), c.gen.simplicial(big_n));
    let (xy, inl, inr) = coproduct(&x, &y);
    let (sl, sr) = (inl.simple()?, inr.simple()?);
    let sum = direct_sum(&[sl.source(), sr.source()]);
    let both = sum.projections[0]
        .then(&sl)
        .add(&sum.projections[1].then(&sr))?;
    let square = both
        .comps()
        .iter()
        .all(|m| m.rows() == m.cols() && m.is_invertible());
    let w = || json!({ "x": witness(&x), "y": witness(&y) });
    c.check(
        "S3 simple of a coproduct",
        square && both.source().len() == both.target().len(),
        w,
    );
    let (moore, _) = xy.moore()?;
    c.check(
        "S3 Moore complex agrees",
        trimmed(&moore.betti()) == trimmed(&xy.simple()?.complex.betti()),
        w,
    );
    Ok(())
}

/// `μ` is a quasi-isomorphism and commutes with maps of grids.
fn comparison(c: &mut Case) -> descent::error::Result<()> {
    let mut g = Gen::new(c.seed ^ 0x5eed, c.gen.max_dim.min(2), c.gen.max_deg.min(1));
    let want = g.coin(0.5);
    let f = g.levelwise_map(3, want);
    let y = g.simplicial(3);
    let (zs, zt) = (
        Bisimplicial::tensor(f.source(), &y),
        Bisimplicial::tensor(f.target(), &y),
    );
    let (mu_s, mu_t) = (zs.aw_map()?, zt.aw_map()?);
    let w = || json!({ "map": map_witness(&f), "y": witness(&y) });
    c.check(
        "S4 comparison is a quasi-isomorphism",
        mu_s.is_qis() && mu_t.is_qis(),
        w,
    );
    let m = GridMap::tensor(&f, &SimplicialMap::identity(&y), &zs, &zt);
    let left = m.diagonal(&zs, &zt)?.simple()?.then(&mu_t);
    let right = mu_s.then(&m.iterated(&zs, &zt)?);
    c.check("S4 comparison is natural", left.comps() == right.comps(), w);
    Ok(())
}

fn units(c: &mut Case, big_n: usize) -> descent::error::Result<()> {
    let a = c.gen.complex();
    let (lambda, rho) = unit(&a, big_n)?;
    let id = |m: &ChainMap| m.comps() == ChainMap::identity(m.source()).comps();
    let ok = lambda.is_qis() && id(&lambda.then(&rho)) && id(&rho.then(&lambda));
    c.check("S5 unit", ok, || witness(&a));
    Ok(())
}

fn exactness(c: &mut Case, big_n: usize) -> descent::error::Result<()> {
    let f = c.gen.levelwise_map(big_n, true);
    let ok = f.is_levelwise_qis() && f.simple()?.is_qis();
    c.check("S6 levelwise equivalences", ok, || map_witness(&f));
    Ok(())
}

fn acyclicity(c: &mut Case, big_n: usize) -> descent::error::Result<()> {
    let a = c.gen.complex();
    let f = c.gen.maybe_qis(&a, c.index % 5 < 2);
    let qis = f.is_qis();
    if !qis {
        c.count("S7 non-equivalences");
    }
    let cone = cone_const(&f, big_n)?.object.simple()?.complex.is_acyclic();
    c.check("S7 equivalence iff acyclic cone", qis == cone, || {
        witness(&f)
    });
    Ok(())
}

fn inverse_order(c: &mut Case, big_n: usize) -> descent::error::Result<()> {
    let f = c.gen.levelwise_map(big_n, c.index % 2 == 0);
    let (plain, reversed) = (f.simple()?.is_qis(), f.upsilon().simple()?.is_qis());
    if !plain {
        c.count("S8 non-equivalences");
    }
    c.check("S8 inverse order", plain == reversed, || map_witness(&f));
    Ok(())
}

pub fn run(cfg: &Config) -> VerificationReport {
    let big_n = cfg.truncation.max(2);
    sweep("axioms", cfg, |c| {
        sums(c);
        coproducts(c, big_n)?;
        comparison(c)?;
        units(c, big_n)?;
        exactness(c, big_n)?;
        acyclicity(c, big_n)?;
        inverse_order(c, big_n)
    })
}

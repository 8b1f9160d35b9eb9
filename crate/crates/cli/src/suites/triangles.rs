//! Cofiber triangles: existence, rotation, completion of morphisms and the
//! octahedron.

use descent::chain::{realize_graded, ChainMap, GradedMap};
use descent::error::Result;
use descent::homotopy::Roof;
use descent::random::Gen;
use descent::simpobj::cyl::{iterated_cylinders, Grid3};
use descent::simpobj::{constant, SimplicialMap};
use descent::triangles::{
    cofiber_of_map, cofiber_triangle, complete_morphism, cone_of, meet_retraction, octahedron,
    rotate, suspend, suspend_roof, triangle_iso, verify_les, Triangle, NESTED_LEVELS,
};
use serde_json::json;

use crate::report::{sweep, witness, Case, Config, VerificationReport};

fn vanishing_composites(t: &Triangle) -> Result<bool> {
    let su = suspend_roof(&t.u)?;
    Ok(t.v.compose(&t.u)?.graded().is_zero()
        && t.w.compose(&t.v)?.graded().is_zero()
        && su.compose(&t.w)?.graded().is_zero())
}

fn existence(c: &mut Case) -> Result<()> {
    let a = c.gen.complex();
    let id = cofiber_of_map(&ChainMap::identity(&a))?;
    c.check(
        "TR1 cone of the identity is acyclic",
        id.c.is_acyclic(),
        || witness(&a),
    );
    let b = c.gen.complex();
    let e = c.gen.qis_from(&b);
    let f = c.gen.map(&a, e.target());
    let roof = Roof::new(f, e)?;
    let t = cofiber_triangle(&roof)?;
    let w = || witness(&roof);
    c.check_result(
        "TR1 triangle of a roof",
        t.check_shape()
            .and_then(|_| verify_les(&t))
            .map(|r| r.exact()),
        w,
    );
    c.check_result("TR1 composites vanish", vanishing_composites(&t), w);
    Ok(())
}

fn rotation(c: &mut Case) -> Result<()> {
    let (a, b) = (c.gen.complex(), c.gen.complex());
    let f = c.gen.map(&a, &b);
    let t = cofiber_of_map(&f)?;
    let r = rotate(&t)?;
    let ids = (Roof::identity(&t.b), Roof::identity(&t.c));
    let w = || witness(&f);
    c.check_result(
        "TR2 rotation is a cofiber triangle",
        triangle_iso(&r.cofiber, &r.rotated, (&ids.0, &ids.1, &r.gamma)),
        w,
    );
    c.check_result(
        "TR2 rotated sequence is exact",
        verify_les(&r.rotated).map(|l| l.exact()),
        w,
    );
    Ok(())
}

/// A square `β f ≃ g α` that commutes on homology but usually not on the
/// nose; `α` is an equivalence so that `g` can be solved for.
fn completion(c: &mut Case) -> Result<()> {
    let (a, b, b2) = (c.gen.complex(), c.gen.complex(), c.gen.complex());
    let f = c.gen.map(&a, &b);
    let alpha = c.gen.qis_from(&a);
    let beta = c.gen.map(&b, &b2);
    let a2 = alpha.target().clone();
    let target = beta
        .compose(&f)?
        .induced_homology()
        .compose(&alpha.induced_homology().inverse().expect("equivalence"))?;
    let g = realize_graded(&a2, &b2, &target).add(&c.gen.null_homotopic(&a2, &b2))?;
    let (ra, rb) = if c.gen.coin(0.5) {
        (Roof::from_map(&alpha), Roof::from_map(&beta))
    } else {
        // the same morphisms presented through a nontrivial backward leg
        let e = c.gen.qis_from(&b2);
        (Roof::from_map(&alpha), Roof::new(beta.then(&e), e)?)
    };
    let w = || json!({ "f": witness(&f), "g": witness(&g), "alpha": witness(&ra), "beta": witness(&rb) });
    let done = complete_morphism(&f, &g, &ra, &rb)?;
    if done.homotopy.is_some() {
        c.count("TR3 squares commuting up to homotopy");
    }
    let (tf, tg) = (cofiber_of_map(&f)?, cofiber_of_map(&g)?);
    let gamma = done.gamma.graded();
    let sq = |top: &GradedMap,
              right: &GradedMap,
              left: &GradedMap,
              bottom: &GradedMap|
     -> Result<bool> { Ok(right.compose(top)?.same_as(&bottom.compose(left)?)) };
    let middle = sq(&tf.v.graded(), &gamma, &rb.graded(), &tg.v.graded())?;
    let right = sq(
        &tf.w.graded(),
        &suspend_roof(&ra)?.graded(),
        &gamma,
        &tg.w.graded(),
    )?;
    c.check("TR3 completed ladder commutes", middle && right, w);
    Ok(())
}

/// A commuting 3x3 grid of constant objects with identities on the
/// middle column.
fn grid(g: &mut Gen) -> Grid3 {
    let big_n = NESTED_LEVELS;
    let (x, y, z) = (g.complex(), g.complex(), g.complex());
    let (f, gg) = (g.map(&x, &y), g.map(&x, &z));
    let xs = constant(&x, big_n);
    let lift = |m: &ChainMap, s: &descent::simpobj::SimplicialObject| {
        let t = constant(m.target(), big_n);
        (SimplicialMap::constant_between(m, s, &t), t)
    };
    let (fs, ys) = lift(&f, &xs);
    let (gs, zs) = lift(&gg, &xs);
    let row = |g: &mut Gen| {
        let (y1, z1) = (g.complex(), g.complex());
        let (gamma, alpha) = (g.map(&y, &y1), g.map(&z, &z1));
        let (gamma_s, y1) = lift(&gamma, &ys);
        let (alpha_s, z1) = lift(&alpha, &zs);
        let f1 = SimplicialMap::constant_between(&f.then(&gamma), &xs, &y1);
        let g1 = SimplicialMap::constant_between(&gg.then(&alpha), &xs, &z1);
        (f1, g1, gamma_s, alpha_s)
    };
    let (f1, g1, gamma, alpha) = row(g);
    let (f2, g2, gamma2, alpha2) = row(g);
    let id = SimplicialMap::identity(&xs);
    Grid3 {
        f: fs,
        g: gs,
        f1,
        g1,
        f2,
        g2,
        alpha,
        beta: id.clone(),
        gamma,
        alpha2,
        beta2: id,
        gamma2,
    }
}

fn same(a: &SimplicialMap, b: &SimplicialMap) -> bool {
    a.levels().len() == b.levels().len()
        && a.levels()
            .iter()
            .zip(b.levels())
            .all(|(x, y)| x.comps() == y.comps())
}

fn octahedral(c: &mut Case) -> Result<()> {
    let a = c.gen.complex();
    let (b, d) = (c.gen.complex(), c.gen.complex());
    let u = c.gen.map(&a, &b);
    let v = c.gen.map(&b, &d);
    let w = || json!({ "u": witness(&u), "v": witness(&v) });
    c.check_result(
        "TR4 meet retraction",
        meet_retraction(&a).map(|_| true),
        || witness(&a),
    );
    let oct = octahedron(&u, &v)?;
    c.check_result(
        "TR4 octahedron sequence is exact",
        verify_les(&oct.triangle).map(|l| l.exact()),
        w,
    );
    c.check("TR4 comparison is an equivalence", oct.psi_is_qis, w);
    c.check(
        "TR4 octahedron shape",
        oct.triangle.a == cone_of(&u)?.complex && oct.triangle.c == cone_of(&v)?.complex,
        w,
    );
    let sa = suspend(&oct.triangle.a)?;
    c.check(
        "TR4 third map lands in the suspension",
        oct.triangle.w.target() == &sa,
        w,
    );

    let it = iterated_cylinders(&grid(&mut c.gen))?;
    c.check(
        "TR4 interchange on the first leg",
        same(&it.theta.compose(&it.i_rows)?, &it.psi_prime),
        || json!(null),
    );
    c.check(
        "TR4 interchange on the comparison",
        same(&it.theta.compose(&it.psi)?, &it.i_columns),
        || json!(null),
    );
    Ok(())
}

pub fn run(cfg: &Config) -> VerificationReport {
    sweep("triangles", cfg, |c| {
        existence(c)?;
        rotation(c)?;
        completion(c)?;
        octahedral(c)
    })
}

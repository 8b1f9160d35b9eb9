//! Roofs, Ore squares and the calculus of left fractions.

use descent::chain::{direct_sum, ChainComplex};
use descent::homotopy::{are_homotopic, coequalize, ore_square, roof_equal, Roof};
use descent::random::Gen;
use serde_json::json;

use crate::report::{sweep, trimmed, witness, Config, VerificationReport};

/// `A -> T <~ B` with a random forward leg.
fn roof(g: &mut Gen, a: &ChainComplex, b: &ChainComplex) -> Roof {
    let e = g.qis_from(b);
    let f = g.map(a, e.target());
    Roof::new(f, e).expect("backward leg is a quasi-isomorphism")
}

pub fn run(cfg: &Config) -> VerificationReport {
    sweep("fractions", cfg, |c| {
        let objs: Vec<ChainComplex> = (0..4).map(|_| c.gen.complex()).collect();
        let r1 = roof(&mut c.gen, &objs[0], &objs[1]);
        let r2 = roof(&mut c.gen, &objs[1], &objs[2]);
        let r3 = roof(&mut c.gen, &objs[2], &objs[3]);
        let w = || json!({ "first": witness(&r1), "second": witness(&r2), "third": witness(&r3) });

        let sq = ore_square(&r2.forward, &r1.backward)?;
        let joined = sq
            .homotopy
            .joins(&r2.forward.then(sq.i()), &r1.backward.then(sq.j()));
        c.check(
            "Ore square homotopy",
            joined && sq.homotopy.cylinder.check().is_ok(),
            w,
        );
        c.check("Ore square equivalence leg", sq.i().is_qis(), w);

        let r21 = r2.compose(&r1)?;
        let oracle = r2.graded().compose(&r1.graded())?;
        c.check(
            "composite matches homology",
            r21.graded().same_as(&oracle),
            w,
        );
        let left = r3.compose(&r21)?;
        let right = r3.compose(&r2)?.compose(&r1)?;
        c.check("associativity", roof_equal(&left, &right), w);
        let unital = roof_equal(&Roof::identity(r1.target()).compose(&r1)?, &r1)
            && roof_equal(&r1.compose(&Roof::identity(r1.source()))?, &r1);
        c.check("unit", unital, w);

        // a second Ore square, pushed further along an equivalence
        let t = c.gen.qis_from(sq.i().target());
        let other = Roof::new(
            r1.forward.then(sq.j()).then(&t),
            r2.backward.then(sq.i()).then(&t),
        )?;
        c.check("independent of the Ore square", roof_equal(&other, &r21), w);

        // homotopic maps agree once precomposed with an equivalence
        let (a, b) = (&objs[0], &objs[1]);
        let f = c.gen.map(a, b);
        let f2 = f.add(&c.gen.null_homotopic(a, b))?;
        let s = c.gen.qis_onto(a);
        let wf = || json!({ "f": witness(&f), "g": witness(&f2), "s": witness(&s) });
        let (fs, f2s) = (f.compose(&s)?, f2.compose(&s)?);
        match are_homotopic(&fs, &f2s, 1)?.witness() {
            Some(h) => {
                let co = coequalize(&f, &f2, &s, h)?;
                let ok = co.t.is_qis()
                    && co.legs.g.is_qis()
                    && f.then(&co.t).induced_homology() == f2.then(&co.legs.g).induced_homology();
                c.check("coequalizing equivalence", ok, wf);
            }
            None => c.fail(
                "coequalizing equivalence",
                "no homotopy between f s and g s".into(),
                wf(),
            ),
        }
        let sum = direct_sum(&[a, b]).sum;
        let (ha, hb) = (a.betti(), b.betti());
        let betti: Vec<usize> = (0..ha.len().max(hb.len()))
            .map(|n| ha.get(n).unwrap_or(&0) + hb.get(n).unwrap_or(&0))
            .collect();
        c.check(
            "coproducts on homology",
            trimmed(&sum.betti()) == trimmed(&betti),
            || json!({ "a": witness(a), "b": witness(b) }),
        );
        Ok(())
    })
}

//! `Σ` is the shift on homology, and the group law on `[ΣA, X]` is the
//! sum of graded maps.

use descent::cogroup::comultiplication;
use descent::homotopy::{roof_equal, Roof};
use descent::triangles::{minus, suspend, suspend_map};
use serde_json::json;

use crate::report::{sweep, trimmed, witness, Config, VerificationReport};

pub fn run(cfg: &Config) -> VerificationReport {
    sweep("stability", cfg, |c| {
        let (a, x) = (c.gen.complex(), c.gen.complex());
        let sa = suspend(&a)?;
        let mut shifted = vec![0];
        shifted.extend(a.betti());
        c.check(
            "suspension shifts homology",
            trimmed(&sa.betti()) == trimmed(&shifted),
            || witness(&a),
        );

        let b = c.gen.complex();
        let f = c.gen.map(&a, &b);
        let sf = suspend_map(&f)?;
        let (hf, hsf) = (f.induced_homology(), sf.induced_homology());
        let ranks = (0..a.len().max(b.len())).all(|n| {
            hf.block(n).map_or(0, |m| m.rank()) == hsf.block(n + 1).map_or(0, |m| m.rank())
        });
        c.check(
            "suspension shifts maps",
            ranks && f.is_qis() == sf.is_qis(),
            || witness(&f),
        );

        let d = comultiplication(&a)?;
        let g = Roof::from_map(&c.gen.map(&d.suspension, &x));
        let h = Roof::from_map(&c.gen.map(&d.suspension, &x));
        let w = || json!({ "a": witness(&a), "f": witness(&g), "g": witness(&h) });
        let sum = d.sum_of_maps(&g, &h)?;
        c.check(
            "group law is addition",
            sum.graded().same_as(&g.graded().add(&h.graded())?),
            w,
        );
        let neg = h.compose(&minus(&a)?.m)?;
        c.check(
            "inverse is negation",
            neg.graded().same_as(&h.graded().neg()),
            w,
        );
        let zero = d.sum_of_maps(&h, &neg)?;
        c.check(
            "a map plus its inverse is zero",
            roof_equal(
                &zero,
                &Roof::from_map(&descent::chain::ChainMap::zero(&d.suspension, &x)),
            ),
            w,
        );
        Ok(())
    })
}

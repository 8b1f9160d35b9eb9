//! The sign automorphism `m_B` of `ΣB`.

use descent::homotopy::{roof_equal, Roof};
use descent::triangles::{minus, minus_is_negation, suspend_roof};
use serde_json::json;

use crate::report::{sweep, witness, Config, VerificationReport};

pub fn run(cfg: &Config) -> VerificationReport {
    sweep("minus", cfg, |c| {
        let (b, b2) = (c.gen.complex(), c.gen.complex());
        let m = minus(&b)?;
        let w = || witness(&b);
        let sb = m.p1.target().clone();
        c.check(
            "squares to the identity",
            roof_equal(&m.m.compose(&m.m)?, &Roof::identity(&sb)),
            w,
        );
        c.check("acts as minus the identity", minus_is_negation(&m), w);
        let f = Roof::from_map(&c.gen.map(&b, &b2));
        let m2 = minus(&b2)?;
        let sf = suspend_roof(&f)?;
        let natural = roof_equal(&m2.m.compose(&sf)?, &sf.compose(&m.m)?);
        c.check("natural", natural, || json!({ "f": witness(&f) }));
        Ok(())
    })
}

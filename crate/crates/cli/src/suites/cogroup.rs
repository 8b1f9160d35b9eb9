//! The cogroup laws of `ΣA` and the coaction on cones.

use descent::cogroup::{abelian_check, coaction, comultiplication};
use serde_json::json;

use crate::report::{sweep, witness, Config, VerificationReport};

pub fn run(cfg: &Config) -> VerificationReport {
    sweep("cogroup", cfg, |c| {
        let a = c.gen.complex();
        let w = || witness(&a);
        let d = comultiplication(&a)?;
        c.check_result("counit", d.counit_check(), w);
        c.check_result("inverse", d.inverse_check(), w);
        c.check_result("coassociativity", d.coassoc_check(), w);
        c.check_result("double suspension is abelian", abelian_check(&a), w);
        let b = c.gen.complex();
        let f = c.gen.map(&a, &b);
        let wf = || json!({ "f": witness(&f) });
        let act = coaction(&f)?;
        c.check("coaction counit", act.counit_check(), wf);
        c.check_result("coaction is compatible", act.compatibility_check(&d), wf);
        Ok(())
    })
}

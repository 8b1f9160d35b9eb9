//! The Alexander-Whitney comparison `s(diag Z) -> ss Z` and its
//! compatibility with the unit.

use descent::random::Gen;
use descent::simpobj::bisimplicial::{unit_composites, Bisimplicial};
use serde_json::json;

use crate::report::{sweep, witness, Config, VerificationReport};

pub fn run(cfg: &Config) -> VerificationReport {
    let big_n = cfg.truncation.clamp(2, 3);
    sweep("comparison", cfg, |c| {
        // grids grow as products of levels, so the factors stay small
        let mut g = Gen::new(c.seed, cfg.max_dim.min(3), cfg.max_deg.min(2));
        let (x, y) = (g.simplicial(big_n), g.simplicial(big_n));
        let z = Bisimplicial::tensor(&x, &y);
        let w = || json!({ "x": witness(&x), "y": witness(&y) });
        c.check_result("grid identities", z.check().map(|_| true), w);
        let mu = z.aw_map()?;
        c.check("comparison is a quasi-isomorphism", mu.is_qis(), w);
        let composites = unit_composites(&x)?;
        let ok = composites
            .iter()
            .all(|m| m.induced_homology().is_identity());
        c.check("unit compatibility", ok, || witness(&x));
        Ok(())
    })
}

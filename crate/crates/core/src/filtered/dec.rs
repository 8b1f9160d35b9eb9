//! Décalage: `(Dec F)^p A^n = F^{p+n} A^n ∩ d^{-1}(F^{p+n+1} A^{n+1})`.

use crate::error::Result;

use super::{FilteredComplex, FilteredMap};

pub fn dec(f: &FilteredComplex) -> Result<FilteredComplex> {
    let top = f.complex.len() as i64;
    let d = |n: i64| f.complex.d(n);
    FilteredComplex::from_rule(f.complex.clone(), f.lo() - top - 1, f.hi() + 1, |p, n| {
        let next = f
            .level(p + n + 1, n + 1)
            .preimage(&d(n))
            .expect("shapes agree");
        f.level(p + n, n).intersection(&next).expect("same ambient")
    })
}

/// The same underlying map between the décalages.
pub fn dec_map(m: &FilteredMap) -> Result<FilteredMap> {
    FilteredMap::new(&dec(&m.source)?, &dec(&m.target)?, m.comps.clone())
}

/// The bidegree of `E_2(F)` matching `E_1^{p,q}(Dec F)`.
pub fn dec_reindex(p: i64, q: i64) -> (i64, i64) {
    (2 * p + q, -p)
}

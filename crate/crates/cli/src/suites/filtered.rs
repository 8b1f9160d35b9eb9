//! Spectral sequences of filtered cochain complexes, décalage and path
//! objects.

use descent::filtered::{
    coarsening, converges, dec, dec_map, dec_reindex, fiber_sequence, is_e2_iso, is_filtered_qis,
    next_page_matches, page, path, random_filtered, random_filtered_map, FilteredComplex,
    FilteredMap, PathFiltration,
};
use serde_json::json;

use crate::report::{sweep, witness, Case, Config, VerificationReport};

fn pages(c: &mut Case, f: &FilteredComplex) {
    let top = f.length() + 2;
    let mut e = page(f, 1);
    let mut ok = true;
    for r in 1..=top {
        let next = page(f, r + 1);
        ok &= next_page_matches(&e, &next);
        e = next;
    }
    c.check("page recursion", ok, || witness(f));
    c.check("convergence to cohomology", converges(f), || witness(f));
}

fn decalage(c: &mut Case, f: &FilteredComplex) -> descent::error::Result<()> {
    let d = dec(f)?;
    let (e1, e2) = (page(&d, 1), page(f, 2));
    let totals = (0..f.complex.len() as i64).all(|n| e1.total_dim(n) == e2.total_dim(n));
    c.check(
        "décalage shifts pages in each total degree",
        totals,
        || witness(f),
    );
    let moved = e1.dims().iter().all(|(&(p, q), &k)| {
        let (p2, q2) = dec_reindex(p, q);
        e2.dim(p2, q2) == k
    });
    let sizes = e1.dims().values().sum::<usize>() == e2.dims().values().sum::<usize>();
    c.check("décalage reindexing", moved && sizes, || witness(f));
    Ok(())
}

fn transport(c: &mut Case, m: &FilteredMap) -> descent::error::Result<()> {
    let e2 = is_e2_iso(m);
    c.count(if e2 {
        "E2-isomorphisms"
    } else {
        "non E2-isomorphisms"
    });
    let ok = e2 == is_filtered_qis(&dec_map(m)?);
    c.check("E2-isomorphism iff filtered equivalence after décalage", ok, || json!({ "source": witness(&m.source), "target": witness(&m.target), "comps": witness(&m.comps) }));
    Ok(())
}

fn paths(c: &mut Case, f: &FilteredMap) -> descent::error::Result<()> {
    let h = coarsening(&mut c.gen, &f.target);
    let into = FilteredMap::identity(&h.target);
    let f2 = h.compose(f)?;
    let (m, n) = (
        path(&f2, &into, PathFiltration::M)?,
        path(&f2, &into, PathFiltration::N)?,
    );
    let (b, mid, cc) = (&f2.source, &f2.target, &into.source);
    let lo = b.lo().min(mid.lo()).min(cc.lo()) - 1;
    let hi = b.hi().max(mid.hi() + 1).max(cc.hi()) + 1;
    let mut ok = m.object.complex == n.object.complex;
    for p in lo..=hi {
        for deg in 0..m.object.complex.len() as i64 {
            let expect = |s: i64| {
                b.level(p, deg).dim() + mid.level(p - s, deg - 1).dim() + cc.level(p, deg).dim()
            };
            ok &= m.object.level(p, deg).dim() == expect(0)
                && n.object.level(p, deg).dim() == expect(1);
        }
    }
    let w = || json!({ "source": witness(&f.source), "target": witness(&f.target), "comps": witness(&f.comps) });
    c.check("path filtration ranks", ok, w);
    let exact = fiber_sequence(f, PathFiltration::M)?.e1_exact()
        && fiber_sequence(f, PathFiltration::N)?.e1_exact();
    c.check("fiber sequences are exact on E1", exact, w);
    Ok(())
}

pub fn run(cfg: &Config) -> VerificationReport {
    sweep("filtered", cfg, |c| {
        let steps = 1 + c.gen.below(3);
        let f = random_filtered(&mut c.gen, steps);
        pages(c, &f);
        decalage(c, &f)?;
        let m = if c.index % 2 == 0 {
            coarsening(&mut c.gen, &f)
        } else {
            random_filtered_map(&mut c.gen, &f, steps)
        };
        transport(c, &m)?;
        paths(c, &m)
    })
}

//! Verification reports and the seeded sweep that fills them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use descent::error::Error;
use descent::random::{case_seed, Gen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Generator bounds and sweep size for one suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub seed: u64,
    pub cases: u64,
    pub max_dim: usize,
    pub max_deg: usize,
    pub truncation: usize,
    /// Runs only this case index instead of `0..cases`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub property: String,
    pub case: u64,
    pub case_seed: u64,
    pub message: String,
    pub counterexample: Value,
    /// Where the counterexample was written, if it was.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: u64,
    pub config: Config,
    pub status: Status,
    /// Property name to number of passing checks.
    pub checks: BTreeMap<String, u64>,
    /// Free counters, e.g. how many generated maps were not quasi-isomorphisms.
    pub stats: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn stat(&self, key: &str) -> u64 {
        self.stats.get(key).copied().unwrap_or(0)
    }

    pub fn markdown(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "## {} ({status})\n", self.suite);
        let _ = writeln!(
            out,
            "seed {}, {} cases, wall time {:.2?}\n",
            self.seed, self.cases, self.wall_time
        );
        let _ = writeln!(out, "| property | passed |\n|---|---|");
        for (k, v) in &self.checks {
            let _ = writeln!(out, "| {k} | {v} |");
        }
        if !self.stats.is_empty() {
            let _ = writeln!(out, "\n| counter | value |\n|---|---|");
            for (k, v) in &self.stats {
                let _ = writeln!(out, "| {k} | {v} |");
            }
        }
        for f in &self.failures {
            let _ = writeln!(
                out,
                "\n- case {} (seed {}): {}: {}",
                f.case, f.case_seed, f.property, f.message
            );
            if let Some(file) = &f.file {
                let _ = writeln!(out, "  counterexample: `{file}`");
            }
        }
        out
    }
}

/// What a single case records.
pub struct Case {
    pub index: u64,
    pub seed: u64,
    pub gen: Gen,
    checks: BTreeMap<String, u64>,
    stats: BTreeMap<String, u64>,
    failures: Vec<Failure>,
}

impl Case {
    fn new(cfg: &Config, index: u64) -> Self {
        let seed = case_seed(cfg.seed, index);
        Case {
            index,
            seed,
            gen: Gen::new(seed, cfg.max_dim, cfg.max_deg),
            checks: BTreeMap::new(),
            stats: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    /// Records `ok` under `property`; on failure `witness` is serialized.
    pub fn check(&mut self, property: &str, ok: bool, witness: impl FnOnce() -> Value) {
        if ok {
            *self.checks.entry(property.to_string()).or_default() += 1;
        } else {
            self.fail(property, "property does not hold".into(), witness());
        }
    }

    /// Like [`Case::check`] for computations that may error out.
    pub fn check_result(
        &mut self,
        property: &str,
        ok: Result<bool, Error>,
        witness: impl FnOnce() -> Value,
    ) {
        match ok {
            Ok(ok) => self.check(property, ok, witness),
            Err(e) => self.fail(property, e.to_string(), witness()),
        }
    }

    pub fn count(&mut self, key: &str) {
        *self.stats.entry(key.to_string()).or_default() += 1;
    }

    pub fn fail(&mut self, property: &str, message: String, counterexample: Value) {
        self.failures.push(Failure {
            property: property.to_string(),
            case: self.index,
            case_seed: self.seed,
            message,
            counterexample,
            file: None,
        });
    }
}

/// Drops trailing zeros so that dimension vectors of different lengths
/// compare by content.
pub fn trimmed(dims: &[usize]) -> Vec<usize> {
    let end = dims.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
    dims[..end].to_vec()
}

/// Serializes anything for a counterexample, falling back to its error.
pub fn witness<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or_else(|e| Value::String(e.to_string()))
}

/// Runs `body` on the cases `indices` in parallel and merges in index order.
pub fn sweep_indices<F>(suite: &str, cfg: &Config, indices: &[u64], body: F) -> VerificationReport
where
    F: Fn(&mut Case) -> Result<(), Error> + Sync,
{
    let start = Instant::now();
    let done: Vec<Case> = indices
        .par_iter()
        .map(|&i| {
            let mut case = Case::new(cfg, i);
            if let Err(e) = body(&mut case) {
                case.fail("construction", e.to_string(), Value::Null);
            }
            case
        })
        .collect();
    let mut report = VerificationReport {
        suite: suite.to_string(),
        seed: cfg.seed,
        cases: indices.len() as u64,
        config: *cfg,
        status: Status::Pass,
        checks: BTreeMap::new(),
        stats: BTreeMap::new(),
        failures: Vec::new(),
        wall_time: Duration::ZERO,
    };
    for case in done {
        for (k, v) in case.checks {
            *report.checks.entry(k).or_default() += v;
        }
        for (k, v) in case.stats {
            *report.stats.entry(k).or_default() += v;
        }
        report.failures.extend(case.failures);
    }
    if !report.failures.is_empty() {
        report.status = Status::Fail;
    }
    report.wall_time = start.elapsed();
    report
}

pub fn sweep<F>(suite: &str, cfg: &Config, body: F) -> VerificationReport
where
    F: Fn(&mut Case) -> Result<(), Error> + Sync,
{
    let indices: Vec<u64> = match cfg.replay {
        Some(i) => vec![i],
        None => (0..cfg.cases).collect(),
    };
    sweep_indices(suite, cfg, &indices, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64) -> Config {
        Config {
            seed,
            cases: 8,
            max_dim: 3,
            max_deg: 2,
            truncation: 3,
            replay: None,
        }
    }

    #[test]
    fn sweeps_are_deterministic() {
        let run = |seed| {
            sweep("toy", &cfg(seed), |c| {
                let a = c.gen.complex();
                let alternating: i64 = a
                    .betti()
                    .iter()
                    .enumerate()
                    .map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) })
                    .sum();
                c.check("euler", a.euler_characteristic() == alternating, || {
                    witness(&a)
                });
                if a.total_dim() > 4 {
                    c.count("large");
                }
                Ok(())
            })
        };
        let (r1, r2) = (run(5), run(5));
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
        assert!(r1.passed());
        assert_eq!(r1.checks["euler"], 8);
    }

    #[test]
    fn failures_carry_the_case() {
        let r = sweep("toy", &cfg(1), |c| {
            let i = c.index;
            c.check("even", i % 2 == 0, || Value::from(i));
            Ok(())
        });
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures.len(), 4);
        assert_eq!(r.failures[0].case, 1);
        assert_eq!(r.failures[0].case_seed, case_seed(1, 1));
        let again = sweep(
            "toy",
            &Config {
                replay: Some(3),
                ..cfg(1)
            },
            |c| {
                let i = c.index;
                c.check("even", i % 2 == 0, || Value::from(i));
                Ok(())
            },
        );
        assert_eq!(again.failures, vec![r.failures[1].clone()]);
        let back: VerificationReport =
            serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back.failures, r.failures);
    }
}

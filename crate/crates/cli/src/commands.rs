//! Execution of parsed commands. Everything is rendered to strings so that
//! the binary only prints and exits.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use descent::chain::{ChainComplex, ChainMap};
use descent::error::Error;
use descent::filtered::{dec, page, FilteredComplex, SpectralPage};
use descent::homotopy::Roof;
use descent::simpobj::cyl::cyl_const;
use descent::triangles::{boundary, cone_of, suspend};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, Sweep, DEFAULT_SEED, SEED_VAR};
use crate::report::{Config, Failure, VerificationReport};
use crate::suites::Suite;

pub const PASS: i32 = 0;
pub const PROPERTY_FAILURE: i32 = 1;
pub const INPUT_ERROR: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// An input problem, reported as JSON on stderr with exit code 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputError {
    pub error: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl InputError {
    fn new(error: &'static str, message: impl Into<String>) -> Self {
        InputError {
            error,
            message: message.into(),
            line: None,
            column: None,
        }
    }

    fn json(e: serde_json::Error, origin: &str) -> Self {
        use serde_json::error::Category;
        let kind = match e.classify() {
            Category::Syntax | Category::Eof => "malformed json",
            Category::Data => "invalid data",
            Category::Io => "io",
        };
        InputError {
            error: kind,
            message: format!("{origin}: {e}"),
            line: Some(e.line()),
            column: Some(e.column()),
        }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Truncation { .. } => "truncation",
            _ => "invalid input",
        };
        InputError::new(kind, e.to_string())
    }
}

/// What a counterexample file holds: enough to rerun the failing case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: Suite,
    pub config: Config,
    pub case: u64,
    pub case_seed: u64,
    pub failures: Vec<Failure>,
}

/// The seed of a sweep: the flag, then the environment, then the default.
pub fn resolve_seed(sweep: &Sweep, env: Option<&str>) -> Result<u64, InputError> {
    if let Some(s) = sweep.seed {
        return Ok(s);
    }
    match env {
        Some(v) => v.trim().parse().map_err(|_| {
            InputError::new(
                "invalid input",
                format!("{SEED_VAR}={v:?} is not an unsigned integer"),
            )
        }),
        None => Ok(DEFAULT_SEED),
    }
}

pub fn config(suite: Suite, sweep: &Sweep, seed: u64) -> Config {
    let d = suite.defaults();
    Config {
        seed,
        cases: sweep.cases.unwrap_or(d.cases),
        max_dim: sweep.max_dim.unwrap_or(d.max_dim),
        max_deg: sweep.max_deg.unwrap_or(d.max_deg),
        truncation: sweep.truncation,
        replay: None,
    }
}

/// Runs `cli`, reading `-` or missing inputs from `stdin`.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let env = std::env::var(SEED_VAR).ok();
    run_with_env(cli, stdin, env.as_deref())
}

pub fn run_with_env(cli: &Cli, stdin: &mut dyn Read, env_seed: Option<&str>) -> Outcome {
    let result = match cli.command.suites() {
        Some((sweep, suites)) => verify(cli, sweep, suites, env_seed),
        None => compute(cli, stdin).map(|out| (PASS, out)),
    };
    match result {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: INPUT_ERROR,
            stdout: String::new(),
            stderr: serde_json::to_string(&e).expect("plain fields") + "\n",
        },
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<(String, String), InputError> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = fs::read_to_string(p)
                .map_err(|e| InputError::new("io", format!("{}: {e}", p.display())))?;
            Ok((text, p.display().to_string()))
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| InputError::new("io", format!("stdin: {e}")))?;
            Ok((text, "stdin".into()))
        }
    }
}

fn parse<T: DeserializeOwned>(path: Option<&Path>, stdin: &mut dyn Read) -> Result<T, InputError> {
    let (text, origin) = read_input(path, stdin)?;
    serde_json::from_str(&text).map_err(|e| InputError::json(e, &origin))
}

fn pretty<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn fenced(title: &str, v: &Value) -> String {
    format!("# {title}\n\n```json\n{}```\n", pretty(v))
}

fn compute(cli: &Cli, stdin: &mut dyn Read) -> Result<String, InputError> {
    let md = cli.format == Format::Md;
    let name = cli.command.name();
    let out = match &cli.command {
        Command::Homology { input } => {
            let c: ChainComplex = parse(input.as_deref(), stdin)?;
            let mut dims = c.betti();
            dims.resize(c.len().max(dims.len()), 0);
            if md {
                let mut s = format!(
                    "# homology\n\nEuler characteristic {}\n\n| degree | dim |\n|---|---|\n",
                    c.euler_characteristic()
                );
                for (n, d) in dims.iter().enumerate() {
                    let _ = writeln!(s, "| {n} | {d} |");
                }
                return Ok(s);
            }
            json!({ "dims": dims, "euler_characteristic": c.euler_characteristic() })
        }
        Command::Cone { input } => {
            let f: ChainMap = parse(input.as_deref(), stdin)?;
            let pair = cone_of(&f)?;
            let p = boundary(&pair)?;
            json!({ "cone": pair.complex, "inclusion": pair.i, "boundary": p, "dims": pair.complex.betti() })
        }
        Command::Suspend { input } => {
            let a: ChainComplex = parse(input.as_deref(), stdin)?;
            serde_json::to_value(suspend(&a)?).expect("serializable")
        }
        Command::Cyl { f, g, truncation } => {
            let f: ChainMap = parse(Some(f), stdin)?;
            let g: ChainMap = parse(Some(g), stdin)?;
            let cyl = cyl_const(&f, &g, *truncation)?;
            let simple = cyl.object.simple()?;
            json!({ "object": cyl.object, "simple": simple.complex, "dims": simple.complex.betti() })
        }
        Command::RoofCompose { first, second } => {
            let r1: Roof = parse(Some(first), stdin)?;
            let r2: Roof = parse(Some(second), stdin)?;
            let r = r2.compose(&r1)?;
            json!({ "roof": r, "homology": r.graded() })
        }
        Command::Ss { input, page: r } => {
            if *r == 0 {
                return Err(InputError::new("invalid input", "pages start at 1"));
            }
            let f: FilteredComplex = parse(input.as_deref(), stdin)?;
            let e = page(&f, *r);
            if md {
                return Ok(page_markdown(&e));
            }
            serde_json::to_value(&e).expect("serializable")
        }
        Command::Dec { input } => {
            let f: FilteredComplex = parse(input.as_deref(), stdin)?;
            serde_json::to_value(dec(&f)?).expect("serializable")
        }
        _ => unreachable!("verification commands are dispatched separately"),
    };
    Ok(if md { fenced(name, &out) } else { pretty(&out) })
}

fn page_markdown(e: &SpectralPage) -> String {
    let mut s = format!("# E_{}\n\n", e.r);
    if e.dims().is_empty() {
        s.push_str("zero page\n");
        return s;
    }
    s.push_str("| p | q | dim |\n|---|---|---|\n");
    for ((p, q), d) in e.dims() {
        let _ = writeln!(s, "| {p} | {q} | {d} |");
    }
    s
}

fn verify(
    cli: &Cli,
    sweep: &Sweep,
    suites: Vec<Suite>,
    env_seed: Option<&str>,
) -> Result<(i32, String), InputError> {
    let mut reports = match &sweep.replay {
        Some(path) => vec![replay(path)?],
        None => {
            let seed = resolve_seed(sweep, env_seed)?;
            let chosen = match &sweep.only {
                Some(name) => {
                    let s = Suite::from_name(name)
                        .filter(|s| suites.contains(s))
                        .ok_or_else(|| {
                            InputError::new(
                                "invalid input",
                                format!("`{name}` is not a suite of {}", cli.command.name()),
                            )
                        })?;
                    vec![s]
                }
                None => suites,
            };
            chosen
                .into_iter()
                .map(|s| s.run(&config(s, sweep, seed)))
                .collect()
        }
    };
    let mut notes = String::new();
    for r in &mut reports {
        if let Err(e) = write_counterexamples(r, &sweep.counterexamples) {
            let _ = writeln!(notes, "could not write counterexamples: {e}");
        }
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let code = if passed { PASS } else { PROPERTY_FAILURE };
    let status = if passed { "pass" } else { "fail" };
    let out = match cli.format {
        Format::Json => {
            pretty(&json!({ "command": cli.command.name(), "status": status, "reports": reports }))
        }
        Format::Md => {
            let mut s = format!("# {} ({status})\n\n", cli.command.name());
            for r in &reports {
                s.push_str(&r.markdown());
                s.push('\n');
            }
            s + &notes
        }
    };
    Ok((code, out))
}

fn replay(path: &Path) -> Result<VerificationReport, InputError> {
    let ce: Counterexample = parse(Some(path), &mut std::io::empty())?;
    Ok(ce.suite.run(&Config {
        replay: Some(ce.case),
        ..ce.config
    }))
}

/// Writes one file per failing case and records its path on the failures.
pub fn write_counterexamples(report: &mut VerificationReport, dir: &Path) -> std::io::Result<()> {
    if report.failures.is_empty() {
        return Ok(());
    }
    let suite = Suite::from_name(&report.suite).expect("reports come from suites");
    let mut cases: Vec<(u64, u64)> = report
        .failures
        .iter()
        .map(|f| (f.case, f.case_seed))
        .collect();
    cases.dedup();
    fs::create_dir_all(dir)?;
    for (case, case_seed) in cases {
        let file: PathBuf = dir.join(format!("{}-{case}-{case_seed:016x}.json", report.suite));
        let failures: Vec<Failure> = report
            .failures
            .iter()
            .filter(|f| f.case == case)
            .cloned()
            .collect();
        let config = Config {
            replay: None,
            ..report.config
        };
        let ce = Counterexample {
            suite,
            config,
            case,
            case_seed,
            failures,
        };
        fs::write(&file, pretty(&ce))?;
        for f in report.failures.iter_mut().filter(|f| f.case == case) {
            f.file = Some(file.display().to_string());
        }
    }
    Ok(())
}

use std::fs;
use std::path::PathBuf;

use clap::Parser;
use descent_cli::args::Cli;
use descent_cli::commands::{run_with_env, Counterexample, Outcome, INPUT_ERROR, PASS};
use descent_cli::report::{sweep, Config};
use descent_cli::suites::Suite;
use serde_json::{json, Value};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("descent-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn exec(args: &[&str], stdin: &str) -> Outcome {
    exec_env(args, stdin, None)
}

fn exec_env(args: &[&str], stdin: &str, env: Option<&str>) -> Outcome {
    let cli = Cli::try_parse_from(std::iter::once("descent").chain(args.iter().copied())).unwrap();
    run_with_env(&cli, &mut stdin.as_bytes(), env)
}

fn json_of(o: &Outcome) -> Value {
    assert_eq!(o.code, PASS, "stderr: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

const EXACT: &str = r#"{"dims":[1,1],"d":{"1":[["1"]]}}"#;
const TWO_TERM: &str = r#"{"complex":{"dims":[1,1],"d":[[["1"]]]},"filtration":{"0,0":[["1"]],"0,1":[["1"]],"1,0":[[]],"1,1":[["1"]]}}"#;

#[test]
fn homology_of_an_exact_complex() {
    let v = json_of(&exec(&["homology"], EXACT));
    assert_eq!(v["dims"], json!([0, 0]));
    let v = json_of(&exec(&["homology", "-"], r#"{"dims":[2,1,0]}"#));
    assert_eq!(
        v["dims"],
        json!([2, 1]),
        "trailing zero degrees are dropped"
    );
    assert_eq!(v["euler_characteristic"], json!(1));
}

#[test]
fn dec_then_first_page_vanishes() {
    let e1 = json_of(&exec(&["ss", "--page", "1"], TWO_TERM));
    assert_eq!(e1["terms"], json!({"0,0": 1, "1,0": 1}));
    let e2 = json_of(&exec(&["ss", "--page", "2"], TWO_TERM));
    assert_eq!(e2["terms"], json!({}));
    let d = exec(&["dec"], TWO_TERM);
    let page = json_of(&exec(&["ss", "--page", "1"], &json_of(&d).to_string()));
    assert_eq!(page["terms"], json!({}));
    assert_eq!(page["d_r"], json!({}));
    let md = exec(&["--format", "md", "ss", "--page", "1"], &d.stdout);
    assert!(md.stdout.contains("zero page"));
}

#[test]
fn malformed_input_reports_a_position() {
    let o = exec(&["homology"], "{\"dims\": [1,\n  1,, ]}");
    assert_eq!(o.code, INPUT_ERROR);
    assert!(o.stdout.is_empty());
    let e: Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(e["error"], "malformed json");
    assert_eq!(e["line"], 2);
    assert!(e["column"].as_u64().unwrap() > 0);

    let o = exec(&["homology"], r#"{"dims":[1,1],"d":{"1":[["1","2"]]}}"#);
    assert_eq!(o.code, INPUT_ERROR);
    let e: Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(e["error"], "invalid data");
    assert!(e.get("line").is_some());
}

#[test]
fn shallow_truncation_is_reported_verbatim() {
    let dir = scratch("cyl");
    let f = dir.join("f.json");
    fs::write(
        &f,
        r#"{"source":{"dims":[1]},"target":{"dims":[1]},"f":{"0":[["2"]]}}"#,
    )
    .unwrap();
    let f = f.to_str().unwrap();
    let o = exec(&["cyl", f, f, "--truncation", "1"], "");
    assert_eq!(o.code, INPUT_ERROR);
    let e: Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(e["error"], "truncation");
    assert_eq!(e["message"], "truncation 1 is too low, level 2 is required");

    // the cylinder of an isomorphism with itself has the homology of the target
    let v = json_of(&exec(&["cyl", f, f, "--truncation", "3"], ""));
    assert_eq!(v["dims"], json!([1]));
}

#[test]
fn cone_and_suspension() {
    let v = json_of(&exec(
        &["cone"],
        r#"{"source":{"dims":[1]},"target":{"dims":[1]},"f":{"0":[["2"]]}}"#,
    ));
    assert_eq!(v["dims"], json!([]));
    assert_eq!(v["cone"]["dims"], json!([1, 1]));
    let v = json_of(&exec(&["suspend"], EXACT));
    assert_eq!(v["dims"], json!([0, 1, 1]));
}

#[test]
fn roofs_compose_on_homology() {
    let twice = r#"{"source":{"dims":[1]},"target":{"dims":[1]},"f":{"0":[["2"]]}}"#;
    let id = r#"{"source":{"dims":[1]},"target":{"dims":[1]},"f":{"0":[["1"]]}}"#;
    let dir = scratch("roofs");
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    fs::write(&a, format!(r#"{{"forward":{twice},"backward":{id}}}"#)).unwrap();
    fs::write(&b, format!(r#"{{"forward":{id},"backward":{twice}}}"#)).unwrap();
    let v = json_of(&exec(
        &["roof-compose", a.to_str().unwrap(), b.to_str().unwrap()],
        "",
    ));
    let blocks = v["homology"].to_string();
    assert!(blocks.contains("\"1\""), "{blocks}");

    fs::write(
        &b,
        format!(
            r#"{{"forward":{id},"backward":{{"source":{{"dims":[1]}},"target":{{"dims":[1]}}}}}}"#
        ),
    )
    .unwrap();
    let o = exec(
        &["roof-compose", a.to_str().unwrap(), b.to_str().unwrap()],
        "",
    );
    assert_eq!(o.code, INPUT_ERROR, "a zero backward leg is no equivalence");
}

#[test]
fn verification_is_deterministic() {
    let args = [
        "verify-triangles",
        "--cases",
        "4",
        "--only",
        "cone",
        "--seed",
        "9",
    ];
    let (a, b) = (exec(&args, ""), exec(&args, ""));
    assert_eq!(a.code, PASS);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["reports"][0]["seed"], 9);
    assert!(exec(
        &[
            "--format",
            "md",
            "verify-triangles",
            "--cases",
            "2",
            "--only",
            "minus"
        ],
        ""
    )
    .stdout
    .contains("## minus (pass)"));
}

#[test]
fn seed_comes_from_flag_then_environment() {
    let args = ["verify-cogroup", "--cases", "1", "--only", "stability"];
    let seed_of = |o: &Outcome| json_of(o)["reports"][0]["seed"].as_u64().unwrap();
    assert_eq!(seed_of(&exec_env(&args, "", None)), 42);
    assert_eq!(seed_of(&exec_env(&args, "", Some("17"))), 17);
    let mut flagged = args.to_vec();
    flagged.extend(["--seed", "3"]);
    assert_eq!(seed_of(&exec_env(&flagged, "", Some("17"))), 3);
    assert_eq!(exec_env(&args, "", Some("minus one")).code, INPUT_ERROR);
    assert_eq!(
        exec(&["verify-cogroup", "--only", "cone"], "").code,
        INPUT_ERROR
    );
}

#[test]
fn counterexamples_are_written_and_replayed() {
    let dir = scratch("replay");
    let cfg = Config {
        seed: 5,
        cases: 6,
        max_dim: 3,
        max_deg: 2,
        truncation: 3,
        replay: None,
    };
    let mut r = sweep("minus", &cfg, |c| {
        let i = c.index;
        c.check("odd cases fail", i % 2 == 0, || json!({ "index": i }));
        Ok(())
    });
    descent_cli::commands::write_counterexamples(&mut r, &dir).unwrap();
    assert_eq!(r.failures.len(), 3);
    let file = r.failures[1].file.clone().unwrap();
    let ce: Counterexample = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!((ce.suite, ce.case, ce.config), (Suite::Minus, 3, cfg));
    assert_eq!(ce.failures[0].counterexample, json!({ "index": 3 }));

    // the real minus suite passes on that case
    let o = exec(&["verify-triangles", "--replay", &file], "");
    let v = json_of(&o);
    assert_eq!(v["reports"][0]["suite"], "minus");
    assert_eq!(v["reports"][0]["cases"], 1);
    assert_eq!(v["reports"][0]["config"]["replay"], 3);
}

#[test]
fn broken_replay_files_are_input_errors() {
    let dir = scratch("bad-replay");
    let file = dir.join("broken.json");
    fs::write(&file, r#"{"suite":"no-such-suite"}"#).unwrap();
    assert_eq!(
        exec(&["report", "--replay", file.to_str().unwrap()], "").code,
        INPUT_ERROR
    );
}

use std::io::Write as _;
use std::process::{Command, Stdio};

use ybe_core::catalog;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ybe(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ybe").chain(args.iter().copied());
    let code = ybe_cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ybe-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn mpl_of_gi6() {
    let o = ybe(&["mpl", "--example", "gi6"], "");
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "multipermutation level 4\n");
}

#[test]
fn simple4_is_simple() {
    let o = ybe(&["simple", "--example", "simple4"], "");
    assert_eq!((o.code, o.stdout.as_str()), (0, "simple: true\n"));
    let o = ybe(&["simple", "--example", "gi6"], "");
    assert_eq!((o.code, o.stdout.as_str()), (1, "simple: false\n"));
}

#[test]
fn malformed_file_reports_line() {
    let path = temp_file("nonsense.cs", "# header below\ncycleset 2\n1 2\n1 x\n");
    let o = ybe(&["check", &path], "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 4"), "{}", o.stderr);
    let o = ybe(&["check", "/nonexistent/file.cs"], "");
    assert_eq!(o.code, 2);
}

#[test]
fn invalid_table_exits_one_with_report() {
    let o = ybe(&["check", "-"], "cycleset 2\n2 1\n1 2\n");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("invalid cycleset"), "{}", o.stderr);
}

#[test]
fn usage_errors() {
    assert_eq!(ybe(&[], "").code, 2);
    assert_eq!(ybe(&["frobnicate"], "").code, 2);
    assert_eq!(ybe(&["mpl"], "").code, 2);
    let o = ybe(&["example", "nope"], "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("counterexample8"));
    assert_eq!(ybe(&["--help"], "").code, 0);
}

#[test]
fn every_example_round_trips_through_check() {
    for name in catalog::NAMES {
        let emitted = ybe(&["example", name, "--emit"], "");
        assert_eq!(emitted.code, 0, "{name}");
        let checked = ybe(&["check", "-"], &emitted.stdout);
        assert_eq!(checked.code, 0, "{name}: {}", checked.stderr);
        assert!(checked.stdout.contains("valid"));
    }
}

#[test]
fn binary_pipe_round_trip() {
    let exe = env!("CARGO_BIN_EXE_ybe");
    let emitted = Command::new(exe)
        .args(["example", "counterexample8", "--emit"])
        .output()
        .unwrap();
    assert!(emitted.status.success());
    let mut child = Command::new(exe)
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&emitted.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "line 1: cycleset of size 8: valid, square-free\n"
    );
}

#[test]
fn convert_and_back() {
    let o = ybe(&["convert", "--example", "ess-d4", "--to", "cycleset"], "");
    assert_eq!(o.stdout, "cycleset 4\n1 4 3 2\n2 3 4 1\n4 1 2 3\n3 2 1 4\n");
    let s = ybe(&["convert", "-", "--to", "solution"], &o.stdout);
    assert_eq!(s.code, 0);
    let ess = catalog::entry("ess-d4").unwrap().fixture.emit();
    assert_eq!(s.stdout, ess);
}

#[test]
fn retract_steps() {
    let o = ybe(&["retract", "--example", "gi6", "--steps", "4"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("step 4"));
    assert!(o.stdout.ends_with("cycleset 1\n1\n"), "{}", o.stdout);
    let j = ybe(&["--json", "retract", "--example", "gi6", "--steps", "4"], "");
    let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(v["sizes"].as_array().unwrap().len(), 5);
    assert_eq!(v["sizes"].as_array().unwrap().first(), Some(&serde_json::json!(6)));
    assert_eq!(v["sizes"].as_array().unwrap().last(), Some(&serde_json::json!(1)));
}

#[test]
fn group_and_exact_iso() {
    let o = ybe(&["group", "--example", "ess-d4", "--exact-iso", "D4"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("order: 8\n"));
    assert!(o.stdout.contains("isomorphic to D4: true"));
    let o = ybe(&["group", "--example", "ess-d4", "--exact-iso", "C8"], "");
    assert_eq!(o.code, 1);
    let o = ybe(&["group", "--example", "ess-d4", "--exact-iso", "Q8"], "");
    assert_eq!(o.code, 2);
    let j = ybe(&["--json", "group", "--example", "counterexample8"], "");
    let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(v["order"], 64);
    assert_eq!(v["named"], "D4xD4");
    assert_eq!(v["order_histogram"]["2"], 35);
}

#[test]
fn extend_reproduces_tables() {
    for (cocycle, table) in catalog::EXTENSION_PAIRS {
        let o = ybe(&["extend", "--example", cocycle], "");
        assert_eq!(o.code, 0);
        let printed = catalog::entry(table).unwrap().fixture.emit();
        assert_eq!(o.stdout, printed, "{cocycle}");
    }
    let acocycle = temp_file("f.ac", "acocycle 2 3\n0 0 0\n0 0 0\n0 1 0\n");
    let o = ybe(&["extend", "--base", "example:three-elem", "--cocycle", &acocycle], "");
    assert_eq!(o.stdout, catalog::entry("f2-6").unwrap().fixture.emit());
    let o = ybe(&["extend", "--cocycle", &acocycle], "");
    assert_eq!(o.code, 2, "a bare cocycle needs a base");
}

#[test]
fn cocycles_and_cohomology() {
    let o = ybe(&["--json", "cocycles", "--prime", "2", "--base", "example:three-elem"], "");
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["dimension"], 6);
    assert_eq!(ybe(&["cocycles", "--prime", "4", "--base", "example:three-elem"], "").code, 2);

    let trivial = temp_file(
        "trivial.dc",
        "dcocycle 3 2\nlabels a b\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n1 2\n",
    );
    let o = ybe(
        &["cohomologous", &trivial, "example:gi-cocycle", "--base", "example:three-elem"],
        "",
    );
    assert_eq!((o.code, o.stdout.as_str()), (1, "cohomologous: false\n"));
    let o = ybe(&["cohomologous", "example:gi-cocycle", "example:gi-cocycle"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("gamma_1 = id"));
}

#[test]
fn semidirect_and_axiom_failures() {
    let base = temp_file("x.cs", "cycleset 2\n1 2\n1 2\n");
    let module = temp_file("s.cs", "cycleset 2\n2 1\n2 1\n");
    let trivial = temp_file("trivial.act", "action 2 2\n1 2\n1 2\n");
    let o = ybe(&["semidirect", "--base", &base, "--module", &module, "--action", &trivial], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("cycleset 4\n"));
    let broken = temp_file("broken.act", "action 2 2\n1 1\n1 2\n");
    let o = ybe(&["semidirect", "--base", &base, "--module", &module, "--action", &broken], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("(3)"), "{}", o.stderr);
}

#[test]
fn extract_cover_of_cover6() {
    let o = ybe(
        &[
            "--json",
            "extract-cover",
            "--total",
            "example:cover6",
            "--partition",
            "{1,3,5}{2,4,6}",
            "--labels",
            "a b c",
        ],
        "",
    );
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["s_labels"], serde_json::json!(["a", "b", "c"]));
    assert_eq!(v["alpha"][1], serde_json::json!([1, 3, 2]));
    let o = ybe(&["extract-cover", "--total", "example:cover6", "--partition", "{1,2}{3,4,5,6}"], "");
    assert_eq!(o.code, 1);
}

#[test]
fn covers_and_iso() {
    let o = ybe(&["covers", "--example", "cover6"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("{1,3,5}{2,4,6} -> 2 points, fiber size 3"), "{}", o.stdout);
    let o = ybe(&["iso", "example:gi6", "example:gi-cocycle"], "");
    assert_eq!(o.code, 0);
    let o = ybe(&["iso", "example:gi6", "example:const6"], "");
    assert_eq!((o.code, o.stdout.as_str()), (1, "isomorphic: false\n"));
}

#[test]
fn example_listing() {
    let o = ybe(&["example"], "");
    assert_eq!(o.stdout.lines().count(), catalog::NAMES.len());
    let o = ybe(&["example", "counterexample8"], "");
    assert!(o.stdout.contains("kind: cycleset\nsize: 8\n"));
}

#[test]
fn example_prefix_as_file_argument() {
    let o = ybe(&["mpl", "example:gi6"], "");
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "multipermutation level 4\n");
    let o = ybe(&["check", "example:cover6"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let o = ybe(&["mpl", "example:nope"], "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("gi6"), "{}", o.stderr);
}

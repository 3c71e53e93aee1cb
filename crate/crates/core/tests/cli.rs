use std::path::Path;
use std::process::Command;

use k3fib::cli::{run, DataSource};
use serde_json::Value;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn k3fib_in(dir: Option<&Path>, args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("k3fib").chain(args.iter().copied());
    let code = run(
        argv,
        DataSource {
            dir: dir.map(Path::to_path_buf),
        },
        &mut out,
        &mut err,
    );
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn k3fib(args: &[&str]) -> Outcome {
    k3fib_in(None, args)
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

fn assert_valid(name: &str, json: &str) -> Value {
    let v: Value = serde_json::from_str(json).expect("output is JSON");
    let errors: Vec<String> = schema(name)
        .iter_errors(&v)
        .map(|e| format!("{e} at {}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{name}: {}", errors.join("\n"));
    v
}

#[test]
fn classify_outputs() {
    let md = k3fib(&["classify", "--md"]);
    assert_eq!(md.code, 0, "{}", md.err);
    let rows = md
        .out
        .lines()
        .filter(|l| l.starts_with("| ") && !l.starts_with("| #"))
        .count();
    assert_eq!(rows, 18);
    assert!(md.out.contains("verdict: pass"));
    let js = k3fib(&["classify", "--json"]);
    assert_eq!(js.code, 0);
    let v = assert_valid("classify", &js.out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 18);
    assert_eq!(
        v["rows"][0]["computed"]["torsion"],
        serde_json::json!([3, 6])
    );
}

#[test]
fn corrupted_niemeier_data() {
    let dir = tempfile::tempdir().unwrap();
    let text = k3fib::niemeier::CATALOG_TEXT;
    let start = text.find("lattice D24\n").unwrap();
    let end = start + text[start..].find("end\n").unwrap() + 4;
    std::fs::write(
        dir.path().join("niemeier.txt"),
        format!("{}{}", &text[..start], &text[end..]),
    )
    .unwrap();
    let r = k3fib_in(Some(dir.path()), &["classify"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("row 18"), "{}", r.err);
    assert!(r.out.contains("MISMATCH"));

    std::fs::write(dir.path().join("niemeier.txt"), "version 7\n").unwrap();
    assert_eq!(k3fib_in(Some(dir.path()), &["classify"]).code, 1);
}

#[test]
fn verify_outputs() {
    let r = k3fib(&["verify", "18"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("I16*"));
    let all = k3fib(&["verify", "all", "--json"]);
    assert_eq!(all.code, 0, "{}", all.err);
    let v = assert_valid("verify", &all.out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 19);
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
    let five = k3fib(&["verify", "5", "--json"]);
    assert_eq!(
        assert_valid("verify", &five.out)["reports"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
    assert_eq!(k3fib(&["verify", "5b", "3"]).code, 0);
}

#[test]
fn verify_usage_errors() {
    for args in [
        &["verify", "19"][..],
        &["verify", "0"],
        &["verify", "all", "3"],
        &["verify"],
        &["verify", "x"],
    ] {
        assert_eq!(k3fib(args).code, 2, "{args:?}");
    }
}

#[test]
fn corrupted_model_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let text = k3fib::genusone::catalog::MODELS_TEXT.replace("I16*@∞", "I15*@∞");
    std::fs::write(dir.path().join("models.txt"), text).unwrap();
    let r = k3fib_in(Some(dir.path()), &["verify", "18"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("model 18 fails: fibers"), "{}", r.err);
    assert_eq!(k3fib_in(Some(dir.path()), &["verify", "17"]).code, 0);
}

#[test]
fn incidence_outputs() {
    let stats = k3fib(&["incidence", "stats"]);
    assert_eq!(stats.code, 0);
    assert!(stats
        .out
        .contains("points 21, lines 21, edges 105, 5-regular, bipartite, girth 6"));
    let seven = k3fib(&["incidence", "cycles", "--n", "7"]).out;
    assert!(seven.contains("chordless 14-cycles: none"));
    assert!(
        seven.contains("cycles with chords allowed: 9443520"),
        "{seven}"
    );
    assert!(k3fib(&["incidence", "config", "--type", "D20"])
        .out
        .contains("impossible"));
    assert!(k3fib(&["incidence", "config", "--type", "D16"])
        .out
        .contains("found"));
    let all = k3fib(&["incidence", "cycles", "--all"]);
    assert_eq!(all.code, 0);
    assert!(all.out.contains("verdict: pass"));
    let hexagon = "(0,0); ⟨0,1,0⟩; [1,0,0]; ⟨0,0,1⟩; [0,1,0]; ⟨1,0,0⟩";
    let a = k3fib(&[
        "incidence",
        "analyze",
        "--vertices",
        hexagon,
        "--type",
        "A5",
    ]);
    assert_eq!(a.code, 0, "{}", a.err);
    assert!(
        a.out.contains("disjoint 9+9") && a.out.contains("sections 9+9"),
        "{}",
        a.out
    );
    for args in [
        &["incidence", "stats", "--json"][..],
        &["incidence", "cycles", "--n", "9", "--json"],
        &["incidence", "cycles", "--all", "--json"],
        &["incidence", "config", "--type", "D7", "--json"],
        &["incidence", "config", "--type", "D9", "--json"],
        &[
            "incidence",
            "analyze",
            "--vertices",
            hexagon,
            "--type",
            "A5",
            "--json",
        ],
        &["incidence", "split", "--n", "6", "--json"],
    ] {
        let r = k3fib(args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.err);
        assert_valid("incidence", &r.out);
    }
}

#[test]
fn incidence_usage_errors() {
    for args in [
        &["incidence", "cycles", "--n", "2"][..],
        &["incidence", "cycles"],
        &["incidence", "config", "--type", "F4"],
        &[
            "incidence",
            "analyze",
            "--vertices",
            "P0 Q1",
            "--type",
            "A5",
        ],
        &[
            "incidence",
            "analyze",
            "--vertices",
            "(0,0) (1,1)",
            "--type",
            "A5",
        ],
        &["incidence", "analyze", "--vertices", "", "--type", "A5"],
        &["classify", "--json", "--md"],
        &["frobnicate"],
    ] {
        assert_eq!(k3fib(args).code, 2, "{args:?}");
    }
    // well-formed vertices that do not form the claimed diagram
    assert_eq!(
        k3fib(&[
            "incidence",
            "analyze",
            "--vertices",
            "P0 P1",
            "--type",
            "A5"
        ])
        .code,
        1
    );
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["classify", "--json"][..],
        &["verify", "all", "--json"],
        &["incidence", "split", "--n", "6", "--json"],
    ] {
        assert_eq!(k3fib(args).out, k3fib(args).out, "{args:?}");
    }
}

#[test]
fn binary_honors_data_directory() {
    let exe = env!("CARGO_BIN_EXE_k3fib");
    let ok = Command::new(exe)
        .args(["verify", "18"])
        .env_remove("K3FIB_DATA")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("models.txt"),
        "version 1\nmodel 18\nrow 18\ncoefficients 0|t^3|0|0|t\nfibers I12*@∞\nend\n",
    )
    .unwrap();
    let bad = Command::new(exe)
        .args(["verify", "18"])
        .env("K3FIB_DATA", dir.path())
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(exe).args(["verify", "19"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let progress = Command::new(exe)
        .args(["verify", "18", "--progress"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&progress.stderr).contains("[1/1] model 18"));
    let quiet = Command::new(exe).args(["verify", "18"]).output().unwrap();
    assert!(quiet.stderr.is_empty());
}

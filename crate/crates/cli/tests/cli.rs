use std::path::PathBuf;

use localaut::document::{DocumentError, GroupDocument};
use localaut::{run, Outcome};
use localaut_core::enumerate::{census_c_classes, census_cd_lifts};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("localaut").chain(args.iter().copied()))
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("localaut-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn s3_table_matches_golden_file() {
    let golden = std::fs::read_to_string(data("s3_table.txt")).unwrap();
    let out = cli(&["s3-table", "--format", "text"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, golden);
    assert_eq!(out.stdout.lines().count(), 9);
    assert_eq!(cli(&["s3-table"]).stdout, out.stdout);
}

#[test]
fn check_c_on_gamma_s3() {
    let out = cli(&["check-c", "--in", &data("gamma_s3.json")]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "C: yes\n"));
    let out = cli(&["check-d", "--in", &data("gamma_s3.json"), "--expect"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "D: yes\n"));
}

#[test]
fn empty_group_is_a_usage_error() {
    let out = cli(&["check-c", "--in", &data("empty-group.json")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("no elements"), "{}", out.stderr);
}

#[test]
fn expect_turns_negative_answers_into_status_one() {
    let pi = cli(&["construct", "pi", "--group", "S3", "--radii", "0,1", "--format", "json"]);
    assert_eq!(pi.code, 0);
    let path = temp_file("pi01.json", &pi.stdout);
    assert_eq!(cli(&["check-d", "--in", &path]).code, 0);
    let out = cli(&["check-d", "--in", &path, "--expect"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("D: no\n"));
    assert_eq!(cli(&["discrete", "--in", &path, "--expect"]).code, 1);
    assert_eq!(cli(&["discrete", "--in", &data("gamma_s3.json"), "--expect"]).code, 0);
    let none = cli(&["cocycles", "--in", &path]);
    assert_eq!(none.stdout, "involutive compatibility cocycles: 0\n");
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["no-such-command"]).code, 2);
    assert_eq!(cli(&["check-c"]).code, 2);
    assert_eq!(cli(&["check-c", "--group", "S3", "--in", "x.json"]).code, 2);
    assert_eq!(cli(&["construct", "wreath", "--group", "C2"]).code, 2);
    assert_eq!(cli(&["construct", "pi", "--group", "S3", "--radii", "0"]).code, 2);
    assert_eq!(cli(&["count-restrictions", "--group", "S3", "--ball", "3"]).code, 2);
    assert_eq!(cli(&["census", "--radius", "3"]).code, 2);
    assert_eq!(cli(&["check-c", "--in", "/nonexistent/file.json"]).code, 2);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("s3-table"));
}

#[test]
fn malformed_documents_name_the_element() {
    let good = std::fs::read_to_string(data("gamma_s3.json")).unwrap();
    let bad = good.replacen("\"01\": \"12\"", "\"01\": \"11\"", 1);
    assert_ne!(bad, good);
    let doc = GroupDocument::parse(&bad).unwrap();
    match doc.to_group() {
        Err(DocumentError::Element { field, index, .. }) => assert_eq!((field, index), ("generators", 0)),
        other => panic!("unexpected {other:?}"),
    }
    let path = temp_file("bad.json", &bad);
    let out = cli(&["check-c", "--in", &path]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("generators[0]"), "{}", out.stderr);
    let path = temp_file("broken.json", "{\n  \"degree\": 3,\n  oops\n}");
    let out = cli(&["check-c", "--in", &path]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    let enc = good.replace("flat-word-map", "cycles");
    assert!(matches!(GroupDocument::parse(&enc), Err(DocumentError::Encoding(_))));
}

#[test]
fn census_documents_round_trip() {
    let base = census_c_classes(3, 2).unwrap();
    let lifts = census_cd_lifts(&base, true).unwrap();
    for r in base.iter().chain(&lifts.rows) {
        for with_elements in [false, true] {
            let doc = GroupDocument::from_group(&r.group, with_elements, Default::default());
            let text = doc.to_json();
            let back = GroupDocument::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), text);
            assert_eq!(back.to_group().unwrap(), r.group);
        }
    }
}

#[test]
fn json_output_has_sorted_keys() {
    fn sorted(v: &Value) -> bool {
        match v {
            Value::Object(m) => {
                let keys: Vec<&String> = m.keys().collect();
                keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(sorted)
            }
            Value::Array(a) => a.iter().all(sorted),
            _ => true,
        }
    }
    for args in [
        vec!["census", "--format", "json"],
        vec!["construct", "delta", "--group", "S3", "--format", "json", "--elements"],
        vec!["classify", "--group", "D4", "--format", "json"],
        vec!["check-c", "--group", "S3", "--format", "json"],
    ] {
        let out = cli(&args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(sorted(&v), "{args:?}");
        // Deterministic output.
        assert_eq!(cli(&args).stdout, out.stdout);
    }
}

#[test]
fn census_json_rows() {
    let out = cli(&["census", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let orders: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [3, 6, 12, 24, 24, 48]);
    let out = cli(&["cd-lifts", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let fresh: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["gamma_image"] == Value::Bool(false))
        .map(|r| r["description"].as_str().unwrap())
        .collect();
    assert_eq!(fresh, ["Γ_2(Π(S3,sgn,{1}))", "Σ_2(Π(S3,sgn,{1}),K_2)"]);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn cd_lifts_from_documents_warn_about_completeness() {
    let out = cli(&["cd-lifts", "--in", &data("gamma_s3.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("warning: base list is not known to be complete"));
    assert!(out.stdout.contains("Γ_2(gamma_s3)"));
}

#[test]
fn counts_and_closures() {
    let out = cli(&["count-restrictions", "--in", &data("gamma_s3.json"), "--ball", "6", "--stabilizer"]);
    assert_eq!(out.stdout, "6\n");
    let out = cli(&["count-restrictions", "--group", "S3", "--ball", "12", "--stabilizer"]);
    assert_eq!(out.stdout, format!("2^{} · 3\n", 1 + 3 * 2047));
    let out = cli(&["count-restrictions", "--group", "S3", "--ball", "12", "--stabilizer", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["value"], Value::Null);
    let out = cli(&["pk-local", "--group", "S3", "--target", "3"]);
    assert!(out.stdout.contains("order 3072"));
}

#[test]
fn constructions_and_towers() {
    let cases: &[(&[&str], &str)] = &[
        (&["construct", "gamma", "--group", "S3"], "order 6\n"),
        (&["construct", "delta", "--group", "S3"], "order 12\n"),
        (&["construct", "delta", "--group", "S3", "--transversal", "lex-greatest"], "order 12\n"),
        (&["construct", "phi", "--group", "S3"], "order 48\n"),
        (&["construct", "phi", "--group", "D4", "--partition", "0,2|1,3"], "order 32\n"),
        (&["construct", "phik", "--group", "S3", "-k", "3"], "order 3072\n"),
        (&["construct", "pi", "--group", "S3", "--radii", "1"], "order 24\n"),
        (&["construct", "wreath", "--group", "C2", "--top", "C2"], "order 32\n"),
    ];
    for (args, needle) in cases {
        let out = cli(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert!(out.stdout.contains(needle), "{args:?}: {}", out.stdout);
    }
    let pi = cli(&["construct", "pi", "--group", "S3", "--radii", "1", "--format", "json"]);
    let path = temp_file("pi1.json", &pi.stdout);
    assert!(cli(&["construct", "gammak", "--in", &path]).stdout.contains("order 24\n"));
    assert!(cli(&["construct", "sigma", "--in", &path, "--diagonal-swap"]).stdout.contains("order 48\n"));
    let out = cli(&["tower", "partition", "--group", "D4", "--partition", "0,2|1,3", "--steps", "3"]);
    assert_eq!(out.stdout, "level 1: order 8, claims ok\nlevel 2: order 32, claims ok\nlevel 3: order 128, claims ok\n");
    assert_eq!(cli(&["tower", "partition", "--group", "D4", "--steps", "2"]).code, 2);
}

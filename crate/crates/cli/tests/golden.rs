//! Byte-stable reports for the reference inputs. Timing is dropped before
//! comparison. Set `PFDEG_UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn report(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_pfdeg"))
        .args(args)
        .env_remove("PFDEG_CACHE_DIR")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    v.as_object_mut().expect("object").remove("timing_ms");
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

fn check(name: &str, args: &[&str]) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let actual = report(args);
    if std::env::var_os("PFDEG_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).expect("golden file exists");
    assert_eq!(actual, expected, "{name} drifted");
}

#[test]
fn negative_trace_cubic() {
    check("analyze_negative_trace.json", &["analyze", "-46,-15,3,1"]);
}

#[test]
fn counterexample_cubic_lift() {
    check("analyze_counterexample.json", &["analyze", "--emit-biperron", "-126,65,-13,1"]);
}

#[test]
fn quadratic_closed_form() {
    check("realize_quadratic.json", &["realize", "-1,-3,1", "--n", "2", "--bound", "3"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["family", "--epsilon", "1/4", "--emit-biperron"];
    assert_eq!(report(&args), report(&args));
}

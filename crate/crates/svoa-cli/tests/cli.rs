//! End-to-end tests for the `svoa` binary: exit codes, JSON output,
//! configuration precedence and the persistent cache round trip.

use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

fn svoa() -> Command {
    let mut cmd = Command::cargo_bin("svoa").unwrap();
    // Isolate every test from the ambient environment.
    cmd.env_remove("SVOA_Y")
        .env_remove("SVOA_HEIGHT")
        .env_remove("SVOA_CACHE_DIR");
    cmd
}

fn json_payload(output: &[u8]) -> Value {
    let v: Value = serde_json::from_slice(output).expect("valid JSON report");
    assert_eq!(v["pass"], Value::Bool(true));
    v["payload"].clone()
}

#[test]
fn qseries_text_output() {
    svoa()
        .args(["qseries", "--kind", "c", "--order", "4"])
        .assert()
        .success()
        .stdout(predicate::str::contains("42112"))
        .stdout(predicate::str::contains("verdict: pass"));
}

#[test]
fn qseries_json_coefficients() {
    let out = svoa()
        .args(["--json", "qseries", "--kind", "a", "--order", "3"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let payload = json_payload(&out);
    let coeffs: Vec<String> = payload["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect();
    assert_eq!(coeffs, ["1", "-16", "112", "-448"]);
}

#[test]
fn qseries_unknown_kind_is_a_usage_error() {
    svoa()
        .args(["qseries", "--kind", "nope"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("unknown series kind"));
}

#[test]
fn trace_identity_passes() {
    svoa()
        .args(["trace-identity", "--order", "6"])
        .assert()
        .success()
        .stdout(predicate::str::contains("equal: true"));
}

#[test]
fn sector_dimension() {
    svoa()
        .args(["sector", "--norm", "-2", "--picture", "-1", "--ghost", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("dim: 242"));
}

#[test]
fn cohomology_json_massless() {
    let out = svoa()
        .args([
            "--json",
            "cohomology",
            "--norm",
            "0",
            "--picture",
            "-1",
            "--ghost",
            "1",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let payload = json_payload(&out);
    assert_eq!(payload["dims"]["1"], Value::from(8u64));
}

#[test]
fn sector_rejects_unsupported_norm() {
    svoa()
        .args(["sector", "--norm", "7", "--picture", "-1", "--ghost", "1"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("unsupported norm"));
}

#[test]
fn denominator_check_small_height() {
    let out = svoa()
        .args(["--json", "denominator-check", "--height", "2"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let payload = json_payload(&out);
    assert_eq!(payload["roots"], Value::from(245u64));
    assert_eq!(payload["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn denominator_check_rejects_bad_reference_vector() {
    svoa()
        .args(["denominator-check", "--height", "1", "--r", "1,0,0"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("10 coordinates"));
}

#[test]
fn cartan_csv_format() {
    svoa()
        .args(["cartan", "--height", "2", "--format", "csv"])
        .assert()
        .success()
        .stdout(predicate::str::contains(","));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap().to_string();
    svoa()
        .args(["--cache-dir", &path, "brst-check"])
        .assert()
        .success();
    let out = svoa()
        .args(["--cache-dir", &path, "cache", "inspect"])
        .assert()
        .success()
        .stdout(predicate::str::contains("valid: true"))
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("entries:"), "inspect lists entry count");
    svoa()
        .args(["--cache-dir", &path, "cache", "clear"])
        .assert()
        .success()
        .stdout(predicate::str::contains("removed: 1"));
    svoa()
        .args(["--cache-dir", &path, "cache", "clear"])
        .assert()
        .success()
        .stdout(predicate::str::contains("removed: 0"));
}

#[test]
fn cache_command_requires_directory() {
    svoa()
        .args(["cache", "inspect"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("--cache-dir"));
}

#[test]
fn config_file_sets_default_height() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("svoa.conf");
    std::fs::write(&cfg, "# test config\ny = 1\nheight = 2\n").unwrap();
    let out = svoa()
        .args(["--json", "--config", cfg.to_str().unwrap(), "denominator-check"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let payload = json_payload(&out);
    assert_eq!(payload["height"], Value::from(2u64));
}

#[test]
fn config_file_overrides_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("svoa.conf");
    std::fs::write(&cfg, "height = 2\n").unwrap();
    let out = svoa()
        .env("SVOA_HEIGHT", "1")
        .args(["--json", "--config", cfg.to_str().unwrap(), "denominator-check"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert_eq!(json_payload(&out)["height"], Value::from(2u64));
}

#[test]
fn environment_sets_default_height() {
    let out = svoa()
        .env("SVOA_HEIGHT", "1")
        .args(["--json", "denominator-check"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert_eq!(json_payload(&out)["height"], Value::from(1u64));
}

#[test]
fn malformed_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("svoa.conf");
    std::fs::write(&cfg, "speed = fast\n").unwrap();
    svoa()
        .args(["--config", cfg.to_str().unwrap(), "qseries", "--kind", "c"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("unknown config key"));
}

#[test]
fn output_is_deterministic() {
    let run = || {
        svoa()
            .args(["--json", "cartan", "--height", "2"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone()
    };
    assert_eq!(run(), run());
}

//! End-to-end tests of the binary: output determinism, exit codes, and the
//! catalog directory override.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conepolar"))
}

#[test]
fn eval_all_routes_agree_and_exit_zero() {
    let out = bin()
        .args([
            "eval",
            "--model",
            "P2",
            "--profile",
            "generic",
            "--invariant",
            "S",
            "--class",
            "1",
            "--route",
            "all",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("exit"), "{stdout}");
    assert!(stdout.contains("polar"), "{stdout}");
    assert!(stdout.contains("divisors"), "{stdout}");
}

#[test]
fn output_is_byte_identical_for_identical_invocations() {
    let run = || {
        bin()
            .args([
                "suite", "--model", "BlqP2", "--samples", "40", "--seed", "7",
                "--format", "json",
            ])
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "suite output not deterministic");

    let run = || {
        bin()
            .args([
                "eval", "--model", "P1xP1", "--invariant", "M", "--class", "1,1",
                "--format", "json",
            ])
            .output()
            .unwrap()
    };
    assert_eq!(run().stdout, run().stdout, "eval output not deterministic");
}

#[test]
fn usage_errors_exit_two() {
    let out = bin()
        .args(["eval", "--model", "NoSuchModel", "--invariant", "s", "--class", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoSuchModel"));

    let out = bin()
        .args(["eval", "--model", "P2", "--invariant", "q", "--class", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // The divisor route only applies to the curve-side Seshadri constant.
    let out = bin()
        .args([
            "eval", "--model", "P2", "--invariant", "N", "--class", "1", "--route",
            "divisors",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Wrong coordinate count names the flag.
    let out = bin()
        .args(["eval", "--model", "P2", "--invariant", "s", "--class", "1,2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--class"));
}

#[test]
fn golden_and_dual_pass_on_catalog() {
    let out = bin().args(["golden", "--model", "P2"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));

    let out = bin().args(["dual", "--model", "BlpP3"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("dual(nef) == eff_curves: ok"));
}

#[test]
fn export_catalog_roundtrips_and_env_override_works() {
    let dir = std::env::temp_dir().join(format!("conepolar-cli-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let out = bin()
        .args(["export-catalog", "--dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("BlqP2.json").exists());

    // A corrupted incidence multiplicity loads fine but breaks the divisor
    // route against the exit route: a mathematical failure, exit code 1.
    let path = dir.join("BlqP2.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let broken = text.replace(
        "{ \"label\": \"line\", \"class_div\": [\"1\", \"0\"], \"mult\": \"1\" }",
        "{ \"label\": \"line\", \"class_div\": [\"1\", \"0\"], \"mult\": \"2\" }",
    );
    assert_ne!(broken, text);
    std::fs::write(&path, broken).unwrap();

    let out = bin()
        .env("CONEPOLAR_CATALOG_DIR", dir.to_str().unwrap())
        .args([
            "eval", "--model", "BlqP2", "--profile", "generic", "--invariant", "S",
            "--class", "1,0", "--route", "all",
        ])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(1),
        "route disagreement should exit 1: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("ROUTE DISAGREEMENT"), "{stdout}");

    let _ = std::fs::remove_dir_all(&dir);
}

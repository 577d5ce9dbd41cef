use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn wpvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpvol"))
        .args(args)
        .env_remove("WPVOL_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn volume_all_methods_agree() {
    let out = wpvol(&["volume", "--m", "1,1", "--method", "all"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "V(1,1) = 3/2  [recursive]\nV(1,1) = 3/2  [closed]\nV(1,1) = 3/2  [inversion]\nintegral = 9\n"
    );
}

#[test]
fn volume_json_and_csv() {
    let out = wpvol(&["volume", "--m", "0,0,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["values"]["recursive"], "1/6");
    assert_eq!(v["integral"], "1");
    let out = wpvol(&[
        "volume", "--m", "2", "--method", "closed", "--format", "csv",
    ]);
    assert_eq!(stdout(&out), "method,value\nclosed,5/4\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(wpvol(&["volume", "--m", "x"]).status.code(), Some(2));
    assert_eq!(
        wpvol(&["volume", "--m", "1", "--method", "guess"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(wpvol(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wpvol(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        wpvol(&["coords", "--input", "/nonexistent/theory.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn zograf_series_and_betti() {
    assert_eq!(stdout(&wpvol(&["zograf", "--n", "5"])), "v_5 = 5\n");
    assert_eq!(
        stdout(&wpvol(&["betti", "--n", "4", "--poly"])),
        "1 + 5q^2 + q^4\n"
    );
    let csv = stdout(&wpvol(&["betti", "--n", "3", "--format", "csv"]));
    assert_eq!(csv, "n,coefficients,euler\n1,1,1\n2,1,1\n3,1 0 1,2\n");
    let series = stdout(&wpvol(&["series", "--order", "2"]));
    assert_eq!(series, "F = 1 + s1*x + 1/2*s2*x^2 + 5/4*s1^2*x^2\n");
}

#[test]
fn checks_pass_and_faults_fail() {
    for suite in ["pde", "inversion", "laplace", "omega", "tensor"] {
        let out = wpvol(&["check", "--suite", suite, "--order", "5"]);
        assert!(out.status.success(), "{suite}: {}", stdout(&out));
    }
    let out = wpvol(&["check", "--suite", "omega", "--inject-fault", "omega-sign"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL] omega"));
}

#[test]
fn tensor_and_coords_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    fs::write(
        &a,
        r#"{"order": 6, "coords": "C", "values": ["1", "2", "0", "1/3"]}"#,
    )
    .unwrap();
    let prod = dir.path().join("prod.json");
    let out = wpvol(&[
        "tensor",
        "--left",
        a.to_str().unwrap(),
        "--right",
        a.to_str().unwrap(),
        "--out",
        prod.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&prod).unwrap()).unwrap();
    assert_eq!(v["values"][1], "4");

    let s = dir.path().join("s.json");
    fs::write(
        &s,
        stdout(&wpvol(&[
            "coords",
            "--input",
            prod.to_str().unwrap(),
            "--to",
            "s",
        ])),
    )
    .unwrap();
    let back = stdout(&wpvol(&[
        "coords",
        "--input",
        s.to_str().unwrap(),
        "--to",
        "C",
    ]));
    assert_eq!(back, fs::read_to_string(&prod).unwrap());

    let mismatched = wpvol(&[
        "tensor",
        "--left",
        a.to_str().unwrap(),
        "--right",
        a.to_str().unwrap(),
        "--order",
        "7",
    ]);
    assert_eq!(mismatched.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "check", "--suite", "tensor", "--seed", "3", "--format", "json",
    ];
    assert_eq!(wpvol(&args).stdout, wpvol(&args).stdout);
    let asym = ["asym", "--n", "12", "--format", "csv"];
    assert_eq!(wpvol(&asym).stdout, wpvol(&asym).stdout);
}

#[test]
fn volume_cache_persists() {
    let dir = tempfile::tempdir().unwrap();
    let run = |dir: &Path| {
        Command::new(env!("CARGO_BIN_EXE_wpvol"))
            .args(["volume", "--m", "2,1"])
            .env("WPVOL_CACHE_DIR", dir)
            .output()
            .unwrap()
    };
    let first = run(dir.path());
    let cache = fs::read_to_string(dir.path().join("volumes.json")).unwrap();
    assert!(cache.contains("\"2,1\": \"161/48\""));
    assert_eq!(run(dir.path()).stdout, first.stdout);

    fs::write(dir.path().join("volumes.json"), "not json").unwrap();
    assert!(run(dir.path()).status.success());
}

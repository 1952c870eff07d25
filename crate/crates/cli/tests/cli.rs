use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tropopt::semifield::{MaxPlus, MaxTimes, MinPlus};
use tropopt_cli::codec::{parse_json, report_from_json, report_to_json};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tropopt"));
    cmd.env_remove("TROPOPT_MODE");
    cmd
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json") && !p.to_string_lossy().ends_with(".report.json"))
        .collect();
    files.sort();
    files
}

fn golden(instance: &Path) -> PathBuf {
    instance.with_extension("report.json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tropopt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn corpus_covers_every_form() {
    let files = corpus();
    for form in tropopt::Form::ALL {
        let hit = files.iter().any(|f| {
            let v: Value = serde_json::from_str(&std::fs::read_to_string(f).unwrap()).unwrap();
            v["problem"].as_str().unwrap().parse::<tropopt::Form>().unwrap() == form
        });
        assert!(hit, "no example for {form}");
    }
}

#[test]
fn solve_reproduces_golden_reports() {
    for file in corpus() {
        let out = bin().arg("solve").arg(&file).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", file.display());
        let expected = std::fs::read_to_string(golden(&file)).unwrap();
        assert_eq!(stdout(&out), expected, "{}", file.display());
    }
}

#[test]
fn verify_passes_on_the_corpus_and_fails_with_a_fault() {
    for file in corpus() {
        let out = bin().arg("verify").arg(&file).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{}: {}", file.display(), String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["verification"]["status"], "pass");

        let out = bin().arg("verify").arg(&file).arg("--inject-fault").output().unwrap();
        assert_eq!(out.status.code(), Some(4), "{}", file.display());
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["diagnostic"]["kind"], "verification-failure");
    }
}

#[test]
fn reports_round_trip() {
    for file in corpus() {
        let text = std::fs::read_to_string(golden(&file)).unwrap();
        let v = parse_json(&text).unwrap();
        let back = match v["semifield"].as_str().unwrap() {
            "max-plus" => report_to_json(&report_from_json::<MaxPlus>(&v).unwrap()),
            "min-plus" => report_to_json(&report_from_json::<MinPlus>(&v).unwrap()),
            "max-times" => report_to_json(&report_from_json::<MaxTimes>(&v).unwrap()),
            other => panic!("unexpected semifield {other}"),
        };
        assert_eq!(back, v, "{}", file.display());
    }
}

#[test]
fn malformed_input_exits_2_with_empty_stdout() {
    let cases = [
        ("bad.json", "{\"semifield\": "),
        ("unknown-form.json", r#"{"semifield":"max-plus","problem":"P7","data":{}}"#),
        ("missing.json", r#"{"semifield":"max-plus","problem":"P4","data":{"p":["1"]}}"#),
        ("inf.json", r#"{"semifield":"max-plus","problem":"P3","data":{"A":[["inf"]]}}"#),
        ("ragged.json", r#"{"semifield":"max-plus","problem":"P3","data":{"A":[["1","2"],["3"]]}}"#),
        ("extra.json", r#"{"semifield":"max-plus","problem":"P3","data":{"A":[["1"]],"p":["0"]}}"#),
    ];
    for (name, body) in cases {
        let out = bin().arg("solve").arg(temp_file(name, body)).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty(), "{name}");
    }
    let out = bin().arg("solve").arg("/nonexistent/instance.json").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_3_with_the_condition() {
    let cases = [
        (
            "diverges.json",
            r#"{"semifield":"max-plus","problem":"P8","data":{"B":[["1"]],"p":["0"],"q":["0"]}}"#,
            "Tr(B) > 1",
        ),
        (
            "inverted.json",
            r#"{"semifield":"max-plus","problem":"P4","data":{"p":["0"],"q":["0"],"g":["3"],"h":["1"]}}"#,
            "g ≰ h",
        ),
        (
            "radius.json",
            r#"{"semifield":"max-plus","problem":"P3","data":{"A":[[null,"1"],[null,null]]}}"#,
            "spectral radius = 0",
        ),
    ];
    for (name, body, condition) in cases {
        for command in ["solve", "verify"] {
            let out = bin().arg(command).arg(temp_file(name, body)).output().unwrap();
            assert_eq!(out.status.code(), Some(3), "{name}");
            let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
            assert_eq!(v["diagnostic"]["condition"], condition);
        }
    }
}

#[test]
fn algebra_commands() {
    let run = |op: &str, body: &str| {
        let out = bin().args(["algebra", op]).arg(temp_file(&format!("{op}.json"), body)).output().unwrap();
        (out.status.code().unwrap(), serde_json::from_str::<Value>(&stdout(&out)).unwrap_or(Value::Null))
    };
    let (code, v) = run("star", r#"{"semifield":"max-plus","matrix":[[null,"-1"],["-2",null]]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"], serde_json::json!([["0", "-1"], ["-2", "0"]]));

    let (code, v) = run("eigen", r#"{"semifield":"max-plus","matrix":[[1,3],[0,2]]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["lambda"], "2");
    assert_eq!(v["generator"], serde_json::json!([["1"], ["0"]]));

    let (code, v) = run("spectral-radius", r#"{"semifield":"max-plus","matrix":[["1/2"]]}"#);
    assert_eq!((code, v["lambda"].clone()), (0, Value::from("1/2")));

    let (code, v) = run("plus", r#"{"semifield":"max-plus","matrix":[["0"]]}"#);
    assert_eq!((code, v["result"].clone()), (0, serde_json::json!([["0"]])));

    let (code, v) = run("star", r#"{"semifield":"max-plus","matrix":[[1]]}"#);
    assert_eq!(code, 3);
    assert_eq!(v["diagnostic"]["condition"], "Tr(B) > 1");

    let (code, v) = run("plus", r#"{"semifield":"max-plus","matrix":[["-1"]]}"#);
    assert_eq!(code, 3);
    assert_eq!(v["diagnostic"]["condition"], "Tr(C) ≠ 1");

    let (code, _) = run("eigen", r#"{"semifield":"max-plus","matrix":[[null]]}"#);
    assert_eq!(code, 3);
}

#[test]
fn mode_comes_from_the_environment() {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/p15_rayleigh_affine.json");
    let out = bin().arg("solve").arg(&file).env("TROPOPT_MODE", "float").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["diagnostics"]["mode"], "float");
    assert!(!v["optimum"].as_str().unwrap().contains('/'));

    let out = bin().arg("solve").arg(&file).env("TROPOPT_MODE", "fast").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_accepts_grid_and_sample_overrides() {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/p04_cheby_box.json");
    let out = bin()
        .args(["verify", "--samples", "7", "--grid-step", "1/4"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verification"]["samples_checked"], 7);
    assert_eq!(v["verification"]["grid"]["step"], "1/4");

    let out = bin().args(["verify", "--grid-step", "0"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

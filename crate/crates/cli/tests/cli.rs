use std::process::{Command, Output};

fn cyclo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo"))
        .args(args)
        .output()
        .expect("run cyclo")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn face_lattices() {
    let k = cyclo(&["faces", "K", "4"]);
    assert_eq!(k.status.code(), Some(0));
    assert!(stdout(&k).contains("f-vector: 5,5,1"));

    let w = cyclo(&["faces", "W", "3", "--format", "json"]);
    assert_eq!(w.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&w.stdout).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([6, 6, 1]));
    assert_eq!(v["faces"].as_array().unwrap().len(), 13);

    let d = cyclo(&["faces", "D", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&d.stdout).unwrap();
    assert_eq!(v["faces"].as_array().unwrap().len(), 7);
}

#[test]
fn hrep_export() {
    let o = cyclo(&["export", "hrep", "W", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains(" <= ")).count(), 12);
    assert_eq!(text.lines().filter(|l| l.starts_with("= ")).count(), 1);
    assert!(text.contains("1][3 : 27 <= 1 0 1 1"));
}

#[test]
fn complex_and_deblow_exports() {
    let o = cyclo(&[
        "export", "complex", "--cobar", "cycl", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cells: usize = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["basis"].as_array().unwrap().len())
        .sum();
    assert_eq!(cells, 3);

    let o = cyclo(&["export", "deblow-report", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.contains("(1(23))") && l.contains("<1>x[123]")));
}

#[test]
fn verification_exit_codes() {
    let ok = cyclo(&["verify", "koszul", "--module", "cycl", "--max-n", "4"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = cyclo(&["verify", "koszul", "--module", "free", "--max-n", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn usage_errors() {
    assert_eq!(cyclo(&["bogus"]).status.code(), Some(2));
    assert_eq!(cyclo(&["faces", "X", "3"]).status.code(), Some(2));
    assert_eq!(
        cyclo(&["verify", "koszul", "--max-n", "9"]).status.code(),
        Some(2)
    );
    assert_eq!(cyclo(&["faces", "K", "40"]).status.code(), Some(2));
    assert_eq!(
        cyclo(&["verify", "spectral", "--module", "ass"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["verify", "traces", "--max-n", "3", "--format", "json"];
    let a = cyclo(&args);
    let b = cyclo(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let dir = std::env::temp_dir().join(format!("cyclo-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w4.json");
    let o = cyclo(&[
        "faces",
        "W",
        "4",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(
        written,
        cyclo(&["faces", "W", "4", "--format", "json"]).stdout
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn level_function_base() {
    let o = cyclo(&["export", "hrep", "K", "4", "--c-base", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("16"));
    assert_ne!(
        cyclo(&["export", "hrep", "K", "4", "--c-base", "1"])
            .status
            .code(),
        Some(0)
    );
}

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roundsleek")).args(args).output().unwrap()
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report on stdout")
}

#[test]
fn two_lines_round_names_a_vertical_pair() {
    let out = run(&["--space", "gallery:two-lines", "--check", "round", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["verdict"], "violated");
    let x = &r["witness"]["x"]["vector"];
    let y = &r["witness"]["y"]["vector"];
    assert_eq!(x[0], y[0]);
    let b: f64 = x[1].as_str().unwrap().parse().unwrap();
    let b2: f64 = y[1].as_str().unwrap().parse().unwrap();
    assert_eq!(b + b2, 1.0);
}

#[test]
fn open_interval_is_sleek_exactly() {
    let out = run(&["--space", "gallery:open-interval", "--check", "sleek"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdict"], "holds_exact");
}

#[test]
fn quadrant_figure() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let out = run(&["--space", "gallery:quadrant", "--check", "sleek", "--svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let w = &report(&out)["witness"];
    assert_eq!(w["x"]["vector"], serde_json::json!(["1", "-1"]));
    assert_eq!(w["y"]["vector"], serde_json::json!(["0", "0"]));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert!(text.contains("<polygon") && text.contains("class=\"ball\"") && text.contains("class=\"witness\""));
    assert!(!text.contains("href"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["--check", "round"]).status.code(), Some(64));
    assert_eq!(run(&["--space", "gallery:R1", "--check", "roundish"]).status.code(), Some(64));
    assert_eq!(run(&["--space", "gallery:nowhere", "--check", "round"]).status.code(), Some(64));
    assert_eq!(run(&["--space", "gallery:R1", "--check", "round", "--sep", "0.001"]).status.code(), Some(64));
    assert_eq!(run(&["--space", "gallery:R3", "--check", "round", "--budget", "5", "--svg", "/dev/null"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_space_file_names_the_json_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("space.json");
    std::fs::write(
        &file,
        r#"{"schema":1,"type":"product_euclid","factors":[{"type":"euclidean","dim":1},{"type":"euclidean","dim":"two"}]}"#,
    )
    .unwrap();
    let out = run(&["--space", file.to_str().unwrap(), "--check", "round"]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("factors[1].dim"), "{err}");
}

#[test]
fn inconclusive_exits_2() {
    // three pairs leave too many comparisons open on the series product
    let out = run(&["--space", "gallery:product-D", "--check", "round", "--budget", "3"]);
    assert_eq!(report(&out)["verdict"], "inconclusive");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn replay_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["--space", "gallery:closed-interval", "--check", "sleek", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["--replay", path.to_str().unwrap()]).status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\"violated\"", "\"holds_exact\"", 1)).unwrap();
    assert_eq!(run(&["--replay", path.to_str().unwrap()]).status.code(), Some(1));
}

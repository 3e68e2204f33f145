use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use coneval::commands::FIGURES;
use coneval::format;
use coneval_core::arrangement::gamma_region;
use coneval_core::verify::{evaluate, Check, Instance};
use coneval_core::gamma::Mutation;
use coneval_core::{Cone, QVector};
use serde_json::Value;

const WEDGE: &str = r#"{"vrep": {"rays": [[1, 0], [1, 1]]}}"#;
const QUADRANT: &str = r#"{"dim": 2, "hrep": [[1, 0], [0, 1]]}"#;

fn coneval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coneval")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = coneval(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    coneval(args).status.code().unwrap()
}

#[test]
fn eval_examples() {
    assert_eq!(ok(&["eval", WEDGE, "--y", "2,1", "--x", "1,1/2"]), "1\n");
    assert_eq!(ok(&["eval", WEDGE, "--y", "2,1", "--x", "3,0"]), "0\n");
    assert_eq!(ok(&["eval", r#"{"dim": 3, "vrep": {}}"#, "--y", "5,-1/3,2", "--x", "0,0,0"]), "1\n");
    let prime = ok(&["eval", WEDGE, "--y", "2,1", "--x", "1,1/2", "--variant", "gamma-prime"]);
    let c = format::parse_cone(&serde_json::from_str(WEDGE).unwrap()).unwrap();
    let (y, x) = (format::parse_point("2,1").unwrap(), format::parse_point("1,1/2").unwrap());
    assert_eq!(prime.trim(), coneval_core::gamma::gamma_prime_y_eval(&c, &y, &x).unwrap().to_string());
}

#[test]
fn eval_formal_sums() {
    let sum = r#"{"dim": 1, "terms": [{"coeff": "1/2", "conditions": [{"normal": [1], "offset": "0", "rel": ">="}]},
                                      {"coeff": "-3", "conditions": [{"normal": [1], "offset": "1", "rel": ">"}]}]}"#;
    assert_eq!(ok(&["eval", "--sum", sum, "--x", "1/2"]), "1/2\n");
    assert_eq!(ok(&["eval", "--sum", sum, "--x", "2"]), "-5/2\n");
    assert_eq!(exit_code(&["eval", "--sum", sum, "--x", "2", "--y", "1", "--variant", "gamma-prime"]), 2);
}

#[test]
fn quadrant_faces_dual_and_angle() {
    let faces = json(&["faces", QUADRANT]);
    let list = faces["faces"].as_array().unwrap();
    assert_eq!(list.len(), 4);
    let dims: Vec<u64> = list.iter().map(|f| f["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [0, 1, 1, 2]);
    assert_eq!(list[3]["subfaces"].as_array().unwrap().len(), 4);

    let dual = json(&["dual", QUADRANT]);
    let quadrant = format::parse_cone(&serde_json::from_str(QUADRANT).unwrap()).unwrap();
    assert_eq!(dual["hrep"], format::cone(&quadrant)["hrep"]);

    // the face spanned by e1
    let rays = faces["rays"].as_array().unwrap();
    let e1 = rays.iter().position(|r| r == &serde_json::json!(["1", "0"])).unwrap();
    let face = list.iter().find(|f| f["rays"] == serde_json::json!([e1])).unwrap();
    let angle = json(&["angle", QUADRANT, "--face", &face["index"].to_string()]);
    let expected = Cone::from_hrep(2, &[QVector::from_ints(&[0, 1])]).unwrap();
    assert_eq!(format::parse_cone(&angle).unwrap(), expected);
    assert_eq!(exit_code(&["angle", QUADRANT, "--face", "4"]), 2);
}

#[test]
fn cone_from_stdin_and_file() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_coneval"))
        .args(["faces", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(QUADRANT.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quadrant.json");
    std::fs::write(&path, QUADRANT).unwrap();
    assert_eq!(ok(&["faces", path.to_str().unwrap()]), stdout(&out));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(exit_code(&["faces", "{not json"]), 2);
    assert_eq!(exit_code(&["faces", "/no/such/file.json"]), 2);
    assert_eq!(exit_code(&["faces", r#"{"dim": 2, "hrep": [[1, 0]], "vrep": {"rays": [[0, 1]]}}"#]), 2);
    assert_eq!(exit_code(&["faces", r#"{"hrep": [[0.5, 1]]}"#]), 2);
    assert_eq!(exit_code(&["eval", WEDGE, "--y", "1,2,3", "--x", "0,0"]), 2);
    assert_eq!(exit_code(&["eval", WEDGE, "--y", "1,x", "--x", "0,0"]), 2);
    assert_eq!(exit_code(&["region", WEDGE, "--y", "1,1", "--box", "1,0,0,1"]), 2);
    assert_eq!(exit_code(&["check", "--suite", "nope"]), 2);
    assert_eq!(exit_code(&["frobnicate"]), 2);
}

#[test]
fn region_matches_library_and_is_deterministic() {
    let a = ok(&["region", WEDGE, "--y", "3/2,1/2"]);
    assert_eq!(a, ok(&["region", WEDGE, "--y", "3/2,1/2"]));
    let c = format::parse_cone(&serde_json::from_str(WEDGE).unwrap()).unwrap();
    let y = format::parse_point("3/2,1/2").unwrap();
    assert_eq!(a, format::to_text(&format::cells(&gamma_region(&c, &y).unwrap())));
    let all = json(&["region", WEDGE, "--y", "3/2,1/2", "--all"]);
    let some = json(&["region", WEDGE, "--y", "3/2,1/2"]);
    assert!(all["cells"].as_array().unwrap().len() > some["cells"].as_array().unwrap().len());
}

#[test]
fn region_in_three_dimensions() {
    let c = r#"{"vrep": {"rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}}"#;
    let v = json(&["region", c, "--y", "1,1,1"]);
    assert_eq!(v["dim"], 3);
    assert!(!v["cells"].as_array().unwrap().is_empty());
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("r.svg");
    assert_eq!(exit_code(&["region", c, "--y", "1,1,1", "--svg", svg.to_str().unwrap()]), 2);
    assert!(!svg.exists());
}

#[test]
fn region_svg_with_ball() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("r.svg");
    ok(&["region", WEDGE, "--y", "-1,2", "--svg", svg.to_str().unwrap(), "--circle"]);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg ") && text.ends_with("</svg>\n"));
    assert!(text.contains("viewBox=\"0 0 800 800\""));
    // ball over [0, y] has centre (-1/2, 1) and radius sqrt(5)/2
    assert!(text.contains("class=\"ball\" cx=\"350\" cy=\"300\" r=\"112\""));
    assert!(text.contains("class=\"region\""));
    let decimal = text.as_bytes().windows(3).any(|w| w[0].is_ascii_digit() && w[1] == b'.' && w[2].is_ascii_digit());
    assert!(!decimal, "coordinates are integers");
}

#[test]
fn origin_region() {
    let v = json(&["region", QUADRANT, "--y", "0,0"]);
    assert!(v["cells"].as_array().unwrap().len() <= 1);
}

#[test]
fn check_runs_one_suite_and_fails_under_mutation() {
    let out = ok(&["check", "--suite", "euler", "--trials", "5", "--seed", "42"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 1);
    assert!(out.contains("euler"));

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let r = report.to_str().unwrap();
    let args = ["check", "--suite", "main-cut", "--trials", "10", "--mutation", "drop-cut-term", "--max-failures", "1"];
    let o = coneval(&[&args[..], &["--report", r]].concat());
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], false);
    let failure = &v["suites"][0]["failures"][0];
    for key in ["check", "cone", "inputs", "expected", "actual"] {
        assert!(!failure[key].is_null(), "{key}");
    }
    let inst = format::parse_instance(failure).unwrap();
    assert!(!evaluate(&inst, Mutation::DropCutTerm).unwrap().unwrap().passed());

    assert_eq!(exit_code(&["check", "--replay", r, "--mutation", "drop-cut-term"]), 1);
    assert_eq!(exit_code(&["check", "--replay", r]), 0);
}

#[test]
fn check_all_suites_briefly() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("all.json");
    let r = report.to_str().unwrap();
    let args = ["check", "--trials", "2", "--dim-max", "3", "--points", "5", "--seed", "42", "--report", r];
    let out = ok(&args);
    assert!(out.ends_with("15 of 15 suites passed\n"), "{out}");
    let first = std::fs::read(&report).unwrap();
    ok(&args);
    assert_eq!(std::fs::read(&report).unwrap(), first);
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_coneval"))
        .args(["check", "--suite", "euler", "--trials", "2", "--report", p])
        .env("CONEVAL_SEED", "77")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["seed"], "77");
    let o = Command::new(env!("CARGO_BIN_EXE_coneval"))
        .args(["check", "--suite", "euler", "--trials", "2", "--seed", "5", "--report", p])
        .env("CONEVAL_SEED", "77")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["seed"], "5");
}

fn svg_files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".svg"))
        .collect();
    names.sort();
    names
}

#[test]
fn figures_are_two_stable_svgs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("figs");
    ok(&["figures", d.to_str().unwrap()]);
    assert_eq!(svg_files(&d), ["figure-a.svg", "figure-b.svg"]);
    assert_eq!(std::fs::read_dir(&d).unwrap().count(), 2);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for name in ["figure-a.svg", "figure-b.svg"] {
        let got = std::fs::read_to_string(d.join(name)).unwrap();
        assert_eq!(got, std::fs::read_to_string(golden.join(name)).unwrap(), "{name} differs from the golden file");
    }
    let again = dir.path().join("again");
    ok(&["figures", again.to_str().unwrap()]);
    for name in ["figure-a.svg", "figure-b.svg"] {
        assert_eq!(std::fs::read(d.join(name)).unwrap(), std::fs::read(again.join(name)).unwrap());
    }
}

#[test]
fn figure_regions_are_the_closed_form() {
    for fig in &FIGURES {
        let (cone, y) = fig.configuration();
        assert!(cone.is_nondegenerate());
        assert!(cone.relint_contains(&y).unwrap() && cone.dual_relint_contains(&y).unwrap());
        // gamma_region equals the cells of C ∩ (y - relint C*) with value 1
        let check = Instance { check: Check::ClosedFormRegion, cone: cone.clone(), vectors: vec![y.clone()], face: None };
        assert!(evaluate(&check, Mutation::None).unwrap().unwrap().passed(), "{}", fig.file);
        let region = gamma_region(&cone, &y).unwrap();
        assert!(region.cells.iter().all(|c| c.value == coneval_core::Rational::one()));
    }
}

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_galekit")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let json = serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"));
    (out.status.code().expect("exit code"), json, text)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn check_fan_on_the_line() {
    let (code, v, _) = run(&["check-fan", "--a", &fixture("line_a_fan.json"), "--complex", &fixture("line_complex.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "fan");
    let (code, v, _) = run(&["check-fan", "--a", &fixture("line_a_overlap.json"), "--complex", &fixture("line_complex.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "not_fan");
    assert_eq!(strings(&v["certificate"]["witness"]), vec!["1"]);
}

#[test]
fn prism_polytopality() {
    let (code, v, _) = run(&["polytopal", "--a", &fixture("prism_a.json"), "--complex", &fixture("prism_complex.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "none");
    let (code, v, _) =
        run(&["polytopal", "--a", &fixture("prism_a.json"), "--complex", &fixture("prism_swapped_complex.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "polytopal");
    let (code, v, _) = run(&["complete", "--a", &fixture("prism_a.json"), "--complex", &fixture("prism_complex.json")]);
    assert_eq!((code, &v["complete"]), (0, &Value::Bool(true)));
}

#[test]
fn gale_of_a_basis_is_empty() {
    let (code, v, _) = run(&["gale", &fixture("identity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 0);
    assert_eq!(v["columns"].as_array().unwrap().len(), 2);
}

#[test]
fn gale_of_the_trapezoid_gamma() {
    let (_, v, _) = run(&["gale", &fixture("square_gamma.json")]);
    let cols: Vec<Vec<String>> = v["columns"].as_array().unwrap().iter().map(strings).collect();
    assert_eq!(cols, vec![vec!["1", "0"], vec!["0", "1"], vec!["-1", "0"], vec!["-1", "-1"]]);
}

#[test]
fn normal_fans() {
    let (code, v, _) = run(&["normal-fan", "--poly", &fixture("triangle_poly.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["generic"], true);
    assert_eq!(v["dual_complex"]["ghost_vertices"], serde_json::json!([3]));
    let (_, v, _) = run(&["normal-fan", "--poly", &fixture("nongeneric_poly.json")]);
    assert_eq!(v["generic"], false);
    assert_eq!(v["maximal"], serde_json::json!([[1, 2], [1, 4], [2, 3, 4]]));
}

#[test]
fn gkz_chambers() {
    let (code, v, _) = run(&["gkz", "--gamma", &fixture("square_gamma.json"), "--delta", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["generators"], serde_json::json!([["1", "1"]]));
    let (code, v, _) = run(&["gkz", "--gamma", &fixture("square_gamma.json"), "--delta", "-1,0"]);
    assert_eq!((code, &v["error"]), (2, &Value::from("DELTA_OUTSIDE")));
    let (code, v, _) = run(&["gkz", "--gamma", &fixture("line_gamma.json"), "--delta", "1,1"]);
    assert_eq!((code, &v["error"]), (2, &Value::from("SHAPE")));
}

#[test]
fn prism_toric_commands() {
    let base = ["--a".to_string(), fixture("prism_a.json"), "--faces".into(), fixture("prism_faces.json"), "--gamma".into(), fixture("prism_gamma.json")];
    let with = |cmd: &str, extra: &[&str]| {
        let mut args: Vec<&str> = vec![cmd];
        args.extend(base.iter().map(String::as_str));
        args.extend_from_slice(extra);
        run(&args)
    };
    let (_, v, _) = with("nef", &[]);
    assert_eq!(v["generators"], serde_json::json!([["0", "0", "1"]]));
    let (code, v, _) = with("ample", &["--delta", "0,0,2"]);
    assert_eq!((code, &v["ample"]), (1, &Value::Bool(false)));
    let (code, _, _) = with("projective", &[]);
    assert_eq!(code, 1);
    let (code, v, _) = with("cartier", &["--b", "1,0,0,1,0,0"]);
    assert_eq!(code, 1);
    assert_eq!(v["smallest_multiple"], 3);
    let (code, _, _) = with("cartier", &["--b", "3,0,0,3,0,0"]);
    assert_eq!(code, 0);
}

#[test]
fn quadrics_and_links() {
    let (code, v, _) = run(&["quadrics", "--gamma", &fixture("square_gamma.json"), "--delta", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["equations"]), vec!["x1^2 + x3^2 = 1", "x1^2 + x2^2 + x4^2 = 2"]);
    let (code, v, _) = run(&["link", "--points", &fixture("pentagon_points.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["complex"]["facets"].as_array().unwrap().len(), 5);
    let (code, v, _) = run(&["quadrics", "--gamma", &fixture("pentagon_gamma.json"), "--delta", "1,1,1"]);
    assert_eq!((code, &v["nondegenerate"]), (1, &Value::Bool(false)));
}

#[test]
fn lvmb_commands() {
    let (code, v, _) = run(&["lvmb", "--datum", &fixture("prism_datum.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["complete_fan"], true);
    let (code, v, _) = run(&["is-lvm", "--datum", &fixture("prism_datum.json")]);
    assert_eq!((code, &v["lvm"]), (1, &Value::Bool(false)));
    let (code, v, _) = run(&["is-lvm", "--datum", &fixture("prism_swapped_datum.json")]);
    assert_eq!((code, &v["lvm"]), (0, &Value::Bool(true)));
    let (code, v, _) = run(&["is-lvm", "--datum", &fixture("pentagon_datum.json")]);
    assert_eq!((code, &v["origin_lvm"]), (0, &Value::Bool(true)));
}

#[test]
fn euler_characteristic() {
    let (code, v, _) = run(&["euler", "--complex", &fixture("pentagon_complex.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["euler_characteristic"], -8);
}

#[test]
fn retraction() {
    let args = ["retract", "--a", &fixture("square_a.json"), "--complex", &fixture("square_complex.json")];
    let (code, v, _) = run(&[&args[..], &["--gamma", &fixture("square_gamma.json"), "--point", "2,1,1,1"]].concat());
    assert_eq!(code, 0);
    let xs: Vec<f64> = v["coords"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((xs[2] - 0.5).abs() < 1e-15 && xs.iter().all(|x| *x > 0.0));
    let (code, v, _) = run(&[&args[..], &["--point", "0.5:0.5,1,-2,1:1", "--complex-coords"]].concat());
    assert_eq!(code, 0);
    assert_eq!(v["coords"].as_array().unwrap().len(), 4);
    let (code, v, _) = run(&[&args[..], &["--point", "0,1,0,1"]].concat());
    assert_eq!((code, &v["error"]), (2, &Value::from("POINT_NOT_IN_UK")));
}

#[test]
fn lattice_commands() {
    let (code, v, _) = run(&["snf", &fixture("zmat.json")]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["divisors"]), vec!["2", "6", "12"]);
    let (_, v, _) = run(&["stabilizer", "--gamma", &fixture("nonprimitive_gamma.json"), "--i", "1"]);
    assert_eq!(v["order"], "2");
    let (code, v, _) = run(&["stabilizer", "--gamma", &fixture("nonprimitive_gamma.json"), "--i", "1,2"]);
    assert_eq!((code, &v["error"]), (2, &Value::from("INFINITE")));
    let (_, v, _) = run(&["check-fan", "--a", &fixture("nonprimitive_a.json"), "--complex", &fixture("line_complex.json")]);
    assert_eq!(v["nonsingular"], false);
    let (_, v, _) = run(&["check-fan", "--a", &fixture("square_a.json"), "--complex", &fixture("square_complex.json")]);
    assert_eq!(v["nonsingular"], true);
}

#[test]
fn malformed_input_exits_with_two() {
    let (code, v, _) = run(&["gale", &fixture("bad_decimal.json")]);
    assert_eq!((code, &v["error"]), (2, &Value::from("PARSE")));
    let (code, v, _) = run(&["gale", &fixture("missing.json")]);
    assert_eq!((code, &v["error"]), (2, &Value::from("IO")));
}

#[test]
fn output_is_byte_identical() {
    let args = ["polytopal", "--a", &fixture("prism_a.json"), "--complex", &fixture("prism_swapped_complex.json")];
    let (_, _, first) = run(&args);
    let (_, _, second) = run(&args);
    assert_eq!(first, second);
}

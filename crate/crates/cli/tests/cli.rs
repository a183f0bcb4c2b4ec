use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const COMMANDS: [&str; 14] = [
    "order",
    "newton",
    "poly",
    "ideal-poly",
    "coeff",
    "directrix",
    "ridge",
    "tangent-cone",
    "max-contact",
    "prepare",
    "delta",
    "nu-poly",
    "probe-equiv",
    "plot",
];

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_idexp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const CUSP: &str = r#"{"field":"Q","variables":{"u":["x"],"y":["y"]},"pairs":[{"generators":["y^2 - x^3"],"b":2}],
 "script":[{"center":["x","y"],"chart":"x"},{"adjoin":"t"}]}"#;

#[test]
fn delta_five_polyhedron() {
    let out = run(&["poly", "--fixture", "delta-five"], None);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "poly");
    assert_eq!(r["result"]["vertices"], json!([[[7, 2], [3, 2]]]));
    assert_eq!(r["result"]["delta"], json!([5, 1]));
}

#[test]
fn z_presentation_prepares_with_one_substitution() {
    let r = report(&run(&["prepare", "--fixture", "delta-five-z"], None));
    assert_eq!(r["result"]["steps"], json!([{"y": "z", "c": [-1, 1], "v": [2, 0]}]));
    assert_eq!(r["result"]["status"], "prepared");
    assert_eq!(r["result"]["delta"], json!([5, 1]));
}

#[test]
fn poly_not_unique_probe() {
    let out = run(&["probe-equiv", "--fixture", "poly-not-unique-e1-d2"], None);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["verdict"], "no distinguishing sequence found");
    assert_eq!(r["result"]["complete"], true);
    assert_eq!(r["input"]["options"]["search_depth"], 3);
}

#[test]
fn output_is_deterministic() {
    for cmd in COMMANDS {
        let a = run(&[cmd, "--fixture", "poly-not-unique-e2-d2"], None);
        let b = run(&[cmd, "--fixture", "poly-not-unique-e2-d2"], None);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert!(!a.stdout.is_empty(), "{cmd}");
    }
}

#[test]
fn embedded_input_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    for fixture in ["delta-five", "char-three", "poly-not-unique-e1-d2", "max-contact"] {
        for cmd in COMMANDS {
            let first = run(&[cmd, "--fixture", fixture], None);
            let r = report(&first);
            let path = dir.path().join(format!("{fixture}-{cmd}.json"));
            std::fs::write(&path, serde_json::to_string(&r["input"]).unwrap()).unwrap();
            let again = run(&[cmd, path.to_str().unwrap()], None);
            assert_eq!(first.stdout, again.stdout, "{fixture} {cmd}");
            assert_eq!(code(&first), code(&again), "{fixture} {cmd}");
        }
    }
}

#[test]
fn flags_override_document_options() {
    let doc = CUSP.replace(r#""script""#, r#""options":{"degree_bound":8},"script""#);
    let r = report(&run(&["delta"], Some(&doc)));
    assert_eq!(r["input"]["options"]["degree_bound"], 8);
    let r = report(&run(&["delta", "--degree-bound", "12"], Some(&doc)));
    assert_eq!(r["input"]["options"]["degree_bound"], 12);
}

#[test]
fn scripts_run_through_lsb_and_transform() {
    let r = report(&run(&["lsb", "-"], Some(CUSP)));
    assert_eq!(r["result"]["fully_permissible"], true);
    assert_eq!(r["result"]["final"], "(<y^2 - x>, 2)");
    let r = report(&run(&["transform"], Some(CUSP)));
    assert_eq!(r["result"]["variables"]["t"], json!(["t"]));

    let bad = CUSP.replace(r#""chart":"x""#, r#""chart":"x"},{"center":["x","y"],"chart":"x""#);
    let out = run(&["transform"], Some(&bad));
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["error"]["kind"], "precondition");
    let r = report(&run(&["lsb"], Some(&bad)));
    assert_eq!(r["result"]["stopped_at"], 1);
}

#[test]
fn plot_writes_svg_in_the_plane() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let out = run(&["plot", "--fixture", "delta-five", "--svg", path.to_str().unwrap()], None);
    assert_eq!(code(&out), 0);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("<svg"));
    let r = report(&run(&["plot", "--fixture", "delta-eins"], None));
    assert_eq!(r["result"]["svg"], Value::Null);
}

#[test]
fn exit_codes() {
    let input = |out: &Output| (code(out), report(out)["error"]["kind"].as_str().unwrap().to_string());
    assert_eq!(input(&run(&["poly"], Some("{\"field\":"))), (1, "input".into()));
    let parse = r#"{"field":"Q","variables":{"u":["x"],"y":["y"]},"pairs":[{"generators":["y^2 +* x"],"b":2}]}"#;
    assert_eq!(input(&run(&["poly"], Some(parse))), (1, "parse".into()));
    assert_eq!(input(&run(&["poly", "--fixture", "nope"], None)), (1, "input".into()));
    assert_eq!(input(&run(&["probe-equiv", "--fixture", "delta-five"], None)), (1, "input".into()));
    assert_eq!(input(&run(&["max-contact", "--fixture", "ridge-f2"], None)), (2, "unsupported-characteristic".into()));
    assert_eq!(code(&run(&["no-such-command"], None)), 1);
    assert_eq!(code(&run(&["poly", "--no-such-flag"], None)), 1);
    assert_eq!(code(&run(&["--help"], None)), 0);
}

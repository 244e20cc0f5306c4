use std::path::PathBuf;
use std::process::{Command, Output};

use lnd_core::{parse_poly, Session};
use serde_json::Value;

fn sessions() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../sessions")
}

fn lnd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lnd"))
        .current_dir(sessions())
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = lnd(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), v)
}

fn strs(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect()
}

#[test]
fn certify_shear_reports_zero_fiber() {
    let (code, v) = json(&[
        "certify",
        "--in",
        "ex2.lnd",
        "D1",
        "D2",
        "--max-degree",
        "8",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["kind"], "fiber-report");
    let roots = &v["result"]["degenerate_fibers"]["rational_roots"];
    assert_eq!(roots[0]["alpha"], "0");
    assert_eq!(roots.as_array().unwrap().len(), 1);
}

#[test]
fn log_of_unitriangular_family() {
    let (code, v) = json(&["log", "--in", "ex1.lnd", "U", "--max-iter", "64"]);
    assert_eq!(code, 0);
    let d = &v["result"]["derivation"];
    assert_eq!(d["X"], "a");
    assert_eq!(d["Y"], "-1/2*a*c + a*Z + b");
    assert_eq!(d["Z"], "c");
}

#[test]
fn bracket_lies_in_span_of_first() {
    let (code, v) = json(&["bracket", "--in", "ex1.lnd", "D2", "D3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["in_span"], true);
    assert_eq!(v["result"]["coefficients"]["D1"], "-1");
    assert!(v["conventions"]["bracket"]
        .as_str()
        .unwrap()
        .contains("D o E - E o D"));
}

#[test]
fn exp_then_compose() {
    let (_, v) = json(&["exp", "--in", "ex1.lnd", "D3", "--t", "-1/2"]);
    assert_eq!(v["result"]["automorphism"]["Z"], "Z - 1/2");
    let (_, v) = json(&["compose", "--in", "ex1.lnd", "U", "U"]);
    assert_eq!(v["result"]["composition"]["Y"], "a*c + 2*a*Z + 2*b + Y");
}

#[test]
fn hypersurface_pipeline() {
    let (_, v) = json(&["kernel", "--in", "ex3.lnd", "D1", "D2", "--max-degree", "4"]);
    assert_eq!(v["result"]["f"], "X");
    let (_, v) = json(&[
        "preslice",
        "--in",
        "ex3.lnd",
        "--index",
        "1",
        "D1",
        "D2",
        "--max-degree",
        "4",
    ]);
    assert_eq!(v["result"]["q"], "t^2");
    let (code, v) = json(&[
        "fiber-rectify",
        "--in",
        "ex3.lnd",
        "--alpha",
        "1",
        "D1",
        "D2",
        "--max-degree",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["result"]["coordinates"]), ["-Z", "-T"]);
    let (code, v) = json(&[
        "fiber-rectify",
        "--in",
        "ex3.lnd",
        "--alpha",
        "0",
        "D1",
        "D2",
        "--f",
        "f",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["stage"], "fiber-rectify");
}

#[test]
fn descent_and_rectify_on_the_plane() {
    let (_, v) = json(&[
        "descent",
        "--in",
        "plane.lnd",
        "--p",
        "seed",
        "--slices",
        "X",
        "P1",
        "P2",
    ]);
    assert_eq!(v["result"]["slice"], "Y");
    assert_eq!(v["result"]["descents"], 2);
    let (_, v) = json(&["rectify", "--in", "plane.lnd", "P1", "P3"]);
    assert_eq!(strs(&v["result"]["coordinates"]), ["Y", "X"]);
    assert_eq!(v["result"]["jacobian"], "-1");
}

#[test]
fn certificate_and_mates() {
    let (code, v) = json(&["certify", "--in", "mates.lnd", "E1", "E2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["f"], "Z");
    assert!(!v["assumed_hypotheses"].as_array().unwrap().is_empty());
    let (code, v) = json(&["mates", "--in", "mates.lnd", "F"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["derivations"][1]["X"], "-2*Y");
    let (code, _) = json(&["mates", "--in", "mates.lnd", "G"]);
    assert_eq!(code, 1);
}

#[test]
fn exit_codes() {
    let (code, v) = json(&[
        "kernel",
        "--in",
        "ex1-triple.lnd",
        "D1",
        "D2",
        "D3",
        "--max-degree",
        "3",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["stage"], "kernel_generator");
    assert_eq!(
        lnd(&["log", "--in", "ex1.lnd", "Nope"]).status.code(),
        Some(3)
    );
    assert_eq!(lnd(&["log", "ex1.lnd"]).status.code(), Some(3));
    assert_eq!(lnd(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(lnd(&["--help"]).status.code(), Some(0));
    assert_eq!(
        lnd(&["check", "--in", "missing.lnd"]).status.code(),
        Some(3)
    );
}

#[test]
fn bad_session_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("lnd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.lnd");
    std::fs::write(&file, "ring Q[X]\npoly f = X^-1\n").unwrap();
    let out = lnd(&["check", "--in", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "fibers",
        "--in",
        "ex3.lnd",
        "D1",
        "D2",
        "--max-degree",
        "4",
        "--json",
    ];
    assert_eq!(lnd(&args).stdout, lnd(&args).stdout);
}

#[test]
fn text_report_carries_the_json_numbers() {
    let text = String::from_utf8(lnd(&["log", "--in", "ex1.lnd", "U"]).stdout).unwrap();
    assert!(text.contains("Y: -1/2*a*c + a*Z + b"));
    assert!(text.contains("sha256: "));
}

fn collect_polys<'a>(v: &'a Value, key: &str, out: &mut Vec<&'a str>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let poly_key = matches!(
                    k.as_str(),
                    "f" | "p" | "slice" | "q_of_f" | "X" | "Y" | "Z" | "T" | "a" | "b" | "c"
                ) || matches!(key, "coordinates" | "slices" | "basis");
                match x {
                    Value::String(s) if poly_key => out.push(s),
                    _ => collect_polys(x, k, out),
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if let (Value::String(s), true) =
                    (x, matches!(key, "coordinates" | "slices" | "basis"))
                {
                    out.push(s);
                } else {
                    collect_polys(x, key, out);
                }
            }
        }
        _ => {}
    }
}

#[test]
fn polynomial_strings_reparse() {
    for (file, args) in [
        ("ex1.lnd", vec!["log", "U"]),
        ("ex2.lnd", vec!["fibers", "D1", "D2"]),
        (
            "ex2.lnd",
            vec!["invariants", "D1", "D2", "--max-degree", "4"],
        ),
        ("ex1-triple.lnd", vec!["rectify", "D1", "D2", "D3"]),
    ] {
        let text = std::fs::read_to_string(sessions().join(file)).unwrap();
        let session = Session::parse(&text).unwrap();
        let mut full = vec![args[0], "--in", file];
        full.extend(&args[1..]);
        let (_, v) = json(&full);
        let mut found = Vec::new();
        collect_polys(&v["result"], "", &mut found);
        assert!(!found.is_empty());
        for s in found {
            let p = parse_poly(s, &session.ring).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }
}

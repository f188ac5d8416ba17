//! Byte-stable CLI output on fixture files.
//!
//! `ONEMOTIVE_BLESS=1 cargo test -p onemotive-cli --test golden` rewrites the
//! input files under `tests/data` and the expected outputs under `tests/golden`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use onemotive::cohomology::{fixtures as coh, ComparisonInput};
use onemotive::motives::{fixtures, t_oint, MotiveMorphism};
use onemotive::LinearMap;
use serde_json::{json, Value};

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn bless() -> bool {
    std::env::var_os("ONEMOTIVE_BLESS").is_some()
}

fn envelope(kind: &str, payload: Value) -> String {
    let mut s = serde_json::to_string_pretty(&json!({"kind": kind, "version": 1, "payload": payload})).unwrap();
    s.push('\n');
    s
}

fn inputs() -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> =
        fixtures::all().into_iter().map(|(n, m)| (format!("{n}.json"), envelope("motive", m.to_json()))).collect();
    v.push(("elliptic_fhs.json".into(), envelope("fhs", t_oint(&fixtures::elliptic()).unwrap().to_json())));
    let seq = fixtures::seq_counter();
    v.push((
        "counterexample.json".into(),
        envelope("sequence", json!({"sequence": seq.iter().map(MotiveMorphism::to_json).collect::<Vec<_>>()})),
    ));
    for (n, d) in coh::proper_all() {
        v.push((format!("{n}.json"), envelope("properCohomology", d.to_json())));
    }
    for (n, d) in coh::smooth_all() {
        v.push((format!("{n}.json"), envelope("smoothCohomology", d.to_json())));
    }
    let g = coh::genus_one();
    let cmp = ComparisonInput { boundary: LinearMap::zero(1, 1), global_forms: LinearMap::identity(1) };
    v.push((
        "genus_one_compare.json".into(),
        envelope("cohomology", json!({"proper": g.to_json(), "comparison": cmp.to_json()})),
    ));
    v.push(("snf_3x3.json".into(), envelope("matrix", json!({"matrix": [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]}))));
    v
}

/// `(verb, input file, expected exit code)`
const CASES: &[(&str, &str, i32)] = &[
    ("validate", "elliptic.json", 0),
    ("validate", "elliptic_half_period.json", 0),
    ("sharp", "elliptic.json", 0),
    ("sharp", "elliptic_fhs.json", 0),
    ("sharp", "elliptic_mixed.json", 0),
    ("uext", "ga.json", 1),
    ("uext", "gm.json", 0),
    ("uext", "ga_hat_shift.json", 0),
    ("dual", "kummer.json", 0),
    ("dual", "ga.json", 0),
    ("pair", "kummer.json", 0),
    ("pair", "ga_hat_shift.json", 0),
    ("pair", "elliptic_half_period.json", 1),
    ("realize", "elliptic_torsion_zero.json", 0),
    ("unrealize", "elliptic_fhs.json", 0),
    ("classify", "elliptic.json", 0),
    ("classify", "ga.json", 0),
    ("exactcheck", "counterexample.json", 0),
    ("cohom", "cuspidal_cubic.json", 0),
    ("cohom", "nodal_cubic.json", 0),
    ("cohom", "genus_one.json", 0),
    ("cohom", "punctured_elliptic.json", 0),
    ("cohom", "genus_one_compare.json", 0),
    ("compare", "gamma.json", 0),
    ("snf", "snf_3x3.json", 0),
    ("realize", "nodal_cubic.json", 2),
];

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_onemotive"));
    cmd.args(args);
    match stdin {
        None => cmd.output().unwrap(),
        Some(text) => {
            use std::io::Write;
            cmd.stdin(std::process::Stdio::piped())
                .stdout(std::process::Stdio::piped())
                .stderr(std::process::Stdio::piped());
            let mut child = cmd.spawn().unwrap();
            child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
            child.wait_with_output().unwrap()
        }
    }
}

#[test]
fn inputs_are_current() {
    let data = dir("data");
    for (name, text) in inputs() {
        let path = data.join(&name);
        if bless() {
            std::fs::create_dir_all(&data).unwrap();
            std::fs::write(&path, &text).unwrap();
        } else {
            assert_eq!(std::fs::read_to_string(&path).unwrap(), text, "{name} is stale");
        }
    }
}

#[test]
fn outputs_match_golden_files() {
    if bless() {
        for (name, text) in inputs() {
            std::fs::create_dir_all(dir("data")).unwrap();
            std::fs::write(dir("data").join(name), text).unwrap();
        }
    }
    let golden = dir("golden");
    for (verb, file, code) in CASES {
        let input = dir("data").join(file);
        let out = run(&[verb, "--in", input.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(*code), "{verb} {file}: {}", String::from_utf8_lossy(&out.stderr));
        let path = golden.join(format!("{verb}__{file}"));
        if bless() {
            std::fs::create_dir_all(&golden).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
        } else {
            let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
            assert!(want == out.stdout, "{verb} {file} differs from {}", path.display());
        }
    }
}

#[test]
fn output_is_deterministic_across_runs() {
    let input = dir("data").join("kummer.json");
    let a = run(&["pair", "--in", input.to_str().unwrap()], None);
    let b = run(&["pair", "--in", input.to_str().unwrap()], None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn stdin_and_bare_payloads_are_accepted() {
    let m = fixtures::elliptic().to_json().to_string();
    let out = run(&["sharp"], Some(&m));
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "sharpEnvelope");
    assert_eq!(v["payload"]["dims"]["Vsharp"], 2);
}

#[test]
fn schema_violations_exit_with_two() {
    for bad in ["{", "[1, 2", r#"{"formal": {}, "group": {"lieDim": "x"}}"#, r#"{"whatever": 1}"#] {
        let out = run(&["sharp"], Some(bad));
        assert_eq!(out.status.code(), Some(2), "{bad}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["payload"]["code"], "parse");
    }
}

#[test]
fn invalid_motive_is_a_domain_error() {
    // lattice vector inside the additive part
    let bad = json!({
        "formal": {"f0dim": 0},
        "group": {"lieDim": 1, "lattice": [["1"]], "addSub": [["1"]]},
        "uA": [],
    });
    let out = run(&["validate"], Some(&bad.to_string()));
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["valid"], false);
}

#[test]
fn ga_has_no_universal_extension() {
    let out = run(&["uext", "--fixture", "ga"], None);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["message"], "Hom(M,Ga) nonzero");
    assert_eq!(v["payload"]["witness"], json!(["1"]));
}

#[test]
fn kummer_pairing_is_perfect() {
    let out = run(&["pair", "--fixture", "kummer"], None);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["perfect"], true);
    let phi = v["payload"]["phi"].as_array().unwrap();
    assert_eq!((phi.len(), phi[0].as_array().unwrap().len()), (2, 2));
}

#[test]
fn seeded_compare_is_reproducible() {
    let a = run(&["compare", "--seed", "7", "--count", "10"], None);
    let b = run(&["compare", "--seed", "7", "--count", "10"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let tmp = std::env::temp_dir().join(format!("onemotive-golden-{}.json", std::process::id()));
    let out = run(&["realize", "--fixture", "gm", "--out", tmp.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&tmp).unwrap()).unwrap();
    assert_eq!(v["kind"], "fhs");
    std::fs::remove_file(tmp).unwrap();
}

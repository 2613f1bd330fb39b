//! The command-line surface: exit codes, report shape and canonical JSON.

use std::path::PathBuf;
use std::process::Command;

use cychom::cli::{run, EXIT_INVALID, EXIT_NOT_ESTABLISHED, EXIT_OK, EXIT_SIZE_CAP};
use serde_json::Value;
use sha2::{Digest, Sha256};

const ALGEBRAS: [&str; 8] =
    ["ground_field", "dual_numbers", "z2", "z3", "z4", "m2", "hecke_s3_s2", "random_dim3"];

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn cychom(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("cychom").chain(args.iter().copied()));
    (out.code, out.stdout)
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("report is JSON")
}

fn keys_anywhere(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                out.push(k.clone());
                keys_anywhere(x, out);
            }
        }
        Value::Array(xs) => xs.iter().for_each(|x| keys_anywhere(x, out)),
        _ => {}
    }
}

#[test]
fn check_reports_the_algebra() {
    let (code, out) = cychom(&["check", &fixture("dual_numbers.json")]);
    assert_eq!(code, EXIT_OK);
    let r = json(&out);
    assert_eq!(r["result"]["dim"], 2);
    assert_eq!(r["result"]["unit"], serde_json::json!(["1/1", "0/1"]));
}

#[test]
fn malformed_inputs() {
    let (code, out) = cychom(&["check", &fixture("dangling_index.json")]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(json(&out)["error"]["kind"], "PARSE_ERROR");

    let (code, out) = cychom(&["check", &fixture("non_associative.json")]);
    assert_eq!(code, EXIT_INVALID);
    let err = &json(&out)["error"];
    assert_eq!(err["kind"], "VALIDATION_ERROR");
    assert!(err["message"].as_str().unwrap().contains("(e1, e0, e0)"));

    let (code, _) = cychom(&["check", "--no-validate", &fixture("non_associative.json")]);
    assert_eq!(code, EXIT_OK);

    let (code, _) = cychom(&["check", &fixture("does_not_exist.json")]);
    assert_eq!(code, EXIT_INVALID);
    let (code, _) = cychom(&["frobnicate"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn periodic_for_the_ground_field() {
    let (code, out) = cychom(&["hp", &fixture("ground_field.json")]);
    assert_eq!(code, EXIT_OK);
    let r = json(&out);
    assert_eq!(r["result"]["hp_even"], 1);
    assert_eq!(r["result"]["hp_odd"], 0);
    assert_eq!(r["header"]["certificate"], 0);
}

#[test]
fn periodic_refusal_for_dual_numbers() {
    let path = fixture("dual_numbers.json");
    for extra in [&[][..], &["--certificate"][..], &["--max-degree", "6"][..], &["--format", "text"][..]] {
        let mut args = vec!["hp", path.as_str()];
        args.extend_from_slice(extra);
        let (code, out) = cychom(&args);
        assert_eq!(code, EXIT_NOT_ESTABLISHED, "{extra:?}");
        assert!(out.contains("NOT_ESTABLISHED"));
        assert!(!out.contains("hp_even") && !out.contains("hp_odd"), "{out}");
    }
    let r = json(&cychom(&["hp", &fixture("dual_numbers.json")]).1);
    assert_eq!(r["result"]["hochschild"], serde_json::json!([2, 1, 1, 1, 1]));
}

#[test]
fn identities_pass_on_every_fixture() {
    for name in ALGEBRAS {
        let (code, out) = cychom(&["identities", "--max-degree", "3", &fixture(&format!("{name}.json"))]);
        assert_eq!(code, EXIT_OK, "{name}");
        assert_eq!(json(&out)["result"]["pass"], true, "{name}");
    }
}

#[test]
fn size_caps() {
    let (code, out) = cychom(&["hh", "--cap-dim", "2", &fixture("m2.json")]);
    assert_eq!(code, EXIT_SIZE_CAP);
    assert_eq!(json(&out)["error"]["kind"], "SIZE_CAP_EXCEEDED");
    let (code, _) = cychom(&["hh", "--cap-dim", "2", "--i-know", "--max-degree", "1", &fixture("m2.json")]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn every_report_has_the_reproducibility_header() {
    let path = fixture("z3.json");
    let digest = hex::encode(Sha256::digest(std::fs::read(&path).unwrap()));
    for cmd in ["check", "hh", "hc", "hp", "identities"] {
        let (code, out) = cychom(&[cmd, "--max-degree", "3", &path]);
        assert_eq!(code, EXIT_OK, "{cmd}");
        let h = &json(&out)["header"];
        assert_eq!(h["tool"], "cychom");
        assert_eq!(h["version"], env!("CARGO_PKG_VERSION"));
        assert_eq!(h["command"], cmd);
        assert_eq!(h["max_degree"], 3);
        assert_eq!(h["input_sha256"], digest.as_str());
        if cmd != "check" && cmd != "identities" {
            assert_eq!(h["certificate"], 0, "{cmd}");
        }
    }
}

#[test]
fn reports_round_trip_byte_for_byte() {
    let mut reports = Vec::new();
    for name in ["dual_numbers", "z2", "m2"] {
        for cmd in ["check", "hh", "hc", "hp", "identities"] {
            reports.push(cychom(&[cmd, "--max-degree", "3", "--certificate", &fixture(&format!("{name}.json"))]).1);
        }
    }
    reports.push(cychom(&["tower", "--max-degree", "2", &fixture("z4_tower.json")]).1);
    reports.push(cychom(&["orbifold", "--oracle", &fixture("orbifold_examples.json")]).1);
    reports.push(cychom(&["check", &fixture("dangling_index.json")]).1);
    for text in reports {
        let v = json(&text);
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
        let mut keys = Vec::new();
        keys_anywhere(&v, &mut keys);
        assert!(!keys.is_empty());
    }
}

#[test]
fn towers_and_orbifolds() {
    let (code, out) = cychom(&["tower", "--max-degree", "3", &fixture("z4_tower.json")]);
    assert_eq!(code, EXIT_OK);
    let r = json(&out);
    assert_eq!(r["result"]["pass"], true);
    assert_eq!(r["result"]["hp"]["hp_even"], serde_json::json!([2, 4]));

    let (code, out) = cychom(&["tower", "--max-degree", "3", &fixture("dual_constant_tower.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["hp"]["status"], "CERT_MISSING");

    let (code, out) = cychom(&["orbifold", "--oracle", &fixture("gl3_components.json")]);
    assert_eq!(code, EXIT_OK);
    let r = json(&out);
    for c in r["result"]["components"].as_array().unwrap() {
        assert_eq!(c["projector_agrees"], true);
        assert_eq!(c["euler"]["pass"], true);
    }
}

#[test]
fn binary_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_cychom");
    let go = |args: &[&str]| {
        let out = Command::new(exe).args(args).output().unwrap();
        (out.status.code(), out.stdout)
    };
    let path = fixture("hecke_s3_s2.json");
    let first = go(&["hc", "--max-degree", "4", &path]);
    assert_eq!(first.0, Some(0));
    assert_eq!(first, go(&["hc", "--max-degree", "4", &path]));
    let refusal = go(&["hp", &fixture("dual_numbers.json")]);
    assert_eq!(refusal.0, Some(EXIT_NOT_ESTABLISHED));
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn frobex(args: &[&str], envs: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_frobex"));
    cmd.args(args).env_remove("FROBEX_CACHE_DIR");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Timing is the only nondeterministic field.
fn mask_timing(mut v: Value) -> Value {
    if let Some(levels) = v.get_mut("per_e").and_then(Value::as_array_mut) {
        for l in levels {
            l["ms"] = Value::from(0);
        }
    }
    v
}

fn problem(name: &str) -> String {
    format!("{}/../../problems/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn dimension_of_polynomial_ring() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "zero.problem", "p = 5\nvars = x y z\nI = []\n");
    let v = json(&frobex(&["dim", f.to_str().unwrap()], &[]));
    assert_eq!(v["dim"], 3);
}

#[test]
fn fedder_on_the_node() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "node.problem", "p = 2\nvars = x y\nI = [x*y]\n");
    let v = json(&frobex(&["fedder", f.to_str().unwrap()], &[]));
    assert_eq!(v["fpure"], true);
    let f = write(
        dir.path(),
        "cusp.problem",
        "p = 2\nvars = x y\nI = [x^3 + y^3]\n",
    );
    let out = frobex(&["fedder", f.to_str().unwrap()], &[]);
    assert!(out.status.success());
}

#[test]
fn complexity_of_the_plane() {
    let plane = problem("plane.problem");
    let v = json(&frobex(&["cseq", &plane, "--emax", "4"], &[]));
    let c: Vec<u64> = v["per_e"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["c_e"].as_u64().unwrap())
        .collect();
    assert_eq!(c, [1, 0, 0, 0]);
    assert_eq!(v["exponent_estimate"], "-inf");
    assert_eq!(v["bound"]["ok"], true);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "bound",
            "digest",
            "dim",
            "exponent_estimate",
            "n",
            "p",
            "per_e"
        ]
    );
}

#[test]
fn univariate_csv() {
    let out = frobex(
        &["cseq", &problem("univariate.problem"), "--format", "csv"],
        &[],
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows[0][..4], ["1", "1", "2", "0.0"]);
    assert_eq!(rows[1][..4], ["2", "0", "6", "-inf"]);
}

#[test]
fn exit_status_contract() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let ok = problem("univariate.problem");
    let code = |args: &[&str]| frobex(args, &[]).status.code().unwrap();

    assert_eq!(code(&["gb", &ok]), 0);
    assert_eq!(code(&["nonsense", &ok]), 1);
    assert_eq!(code(&["gb", d.join("missing").to_str().unwrap()]), 1);
    let composite = write(d, "p4.problem", "p = 4\nvars = x\nI = [x]\n");
    let out = frobex(&["gb", composite.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p4.problem:1:"));
    let inhomogeneous = write(
        d,
        "inh.problem",
        "p = 2\nvars = x y\nI = [x*y,\n  x + y^2]\n",
    );
    let out = frobex(&["gb", inhomogeneous.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inh.problem:4:3"));
    assert_eq!(code(&["colon", &ok]), 1);
    assert_eq!(code(&["cseq", &ok, "--emax", "45"]), 1);
    assert_eq!(code(&["gb", &ok, "--order", "weird"]), 1);

    let violating = write(
        d,
        "bad.problem",
        "p = 2\nvars = x y\nI = [x*y]\n[subalgebra]\nkind = explicit\na1 = [1]\na2 = [x^9, y^9]\n",
    );
    assert_eq!(code(&["cseq", violating.to_str().unwrap()]), 2);
    let v = json(&frobex(
        &["validate-fgraded", violating.to_str().unwrap()],
        &[],
    ));
    assert_eq!(v["ok"], false);
    assert_eq!(
        (v["witness"]["e"].as_u64(), v["witness"]["e_prime"].as_u64()),
        (Some(1), Some(1))
    );
}

#[test]
fn runs_are_deterministic_modulo_timing() {
    for cmd in ["cseq", "bound-check", "gb", "mingens", "hf"] {
        let a = frobex(&[cmd, &problem("minors.problem"), "--emax", "2"], &[]);
        let b = frobex(
            &[
                cmd,
                &problem("minors.problem"),
                "--emax",
                "2",
                "--jobs",
                "1",
            ],
            &[],
        );
        assert_eq!(mask_timing(json(&a)), mask_timing(json(&b)), "{cmd}");
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("gb-cache");
    for name in ["minors.problem", "node-pair.problem"] {
        let f = problem(name);
        for cmd in ["cseq", "gb", "colon", "dim"] {
            if cmd == "colon" && name == "minors.problem" {
                continue;
            }
            let plain = mask_timing(json(&frobex(&[cmd, &f, "--emax", "2"], &[])));
            let cold = mask_timing(json(&frobex(
                &[cmd, &f, "--emax", "2"],
                &[("FROBEX_CACHE_DIR", &cache)],
            )));
            let warm = mask_timing(json(&frobex(
                &[
                    cmd,
                    &f,
                    "--emax",
                    "2",
                    "--cache-dir",
                    cache.to_str().unwrap(),
                ],
                &[],
            )));
            assert_eq!(plain, cold, "{name} {cmd}");
            assert_eq!(plain, warm, "{name} {cmd}");
        }
    }
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
}

#[test]
fn order_flag_changes_basis_order_not_invariants() {
    let f = problem("minors.problem");
    let grevlex = json(&frobex(&["cseq", &f, "--emax", "2"], &[]));
    let lex = json(&frobex(&["cseq", &f, "--emax", "2", "--order", "lex"], &[]));
    let strip = |v: &Value| {
        v["per_e"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| (l["c_e"].clone(), l["d_e"].clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&grevlex), strip(&lex));
    assert_ne!(grevlex["digest"], lex["digest"]);
    let gb = json(&frobex(&["gb", &f, "--order", "lex"], &[]));
    assert_eq!(gb["order"], "lex");
}

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modsat")).args(args).output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// Multiplicities of `V_a ⊗ V_b ⊗ V_c` for `SO(3)`, spins `a, b, c`.
fn clebsch_gordan(spins: &[i64]) -> BTreeMap<i64, i64> {
    let mut acc = BTreeMap::from([(0i64, 1i64)]);
    for &s in spins {
        let mut next = BTreeMap::new();
        for (&j, &m) in &acc {
            for k in (j - s).abs()..=j + s {
                *next.entry(k).or_insert(0) += m;
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn base_change_matrix_is_clebsch_gordan_mod_3() {
    let dir = tempfile::tempdir().unwrap();
    let setup = write(dir.path(), "s.json", r#"{"group": "A1", "automorphism": {"kind": "block_cyclic", "order": 3}}"#);
    let v = json_of(&run(&["brauer", "matrix", "--setup", &setup, "--weight-bound", "3"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "block_cyclic");
    let cols: Vec<Vec<i64>> = serde_json::from_value(v["columns"].clone()).unwrap();
    let rows: Vec<Vec<i64>> = serde_json::from_value(v["rows"].clone()).unwrap();
    let entries: Vec<Vec<u64>> = serde_json::from_value(v["entries"].clone()).unwrap();
    assert!(cols.len() >= 4);
    for (j, c) in cols.iter().enumerate() {
        let want: BTreeMap<i64, u64> =
            clebsch_gordan(c).into_iter().map(|(k, m)| (k, m.rem_euclid(3) as u64)).filter(|(_, m)| *m != 0).collect();
        let got: BTreeMap<i64, u64> =
            rows.iter().enumerate().filter(|(i, _)| entries[*i][j] != 0).map(|(i, r)| (r[0], entries[i][j])).collect();
        assert_eq!(got, want, "column {c:?}");
    }
    assert!(v["liftability"]["all_nonnegative"].as_bool().unwrap());
}

#[test]
fn out_file_matches_stdout_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let setup = write(
        dir.path(),
        "s.json",
        r#"{"group": "A2:adjoint", "automorphism": {"kind": "inner_torsion", "order": 3, "t": [1, 1]}}"#,
    );
    let out = dir.path().join("m.json");
    let a = run(&["brauer", "matrix", "--setup", &setup, "--weight-bound", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&["brauer", "matrix", "--setup", &setup, "--weight-bound", "6"]);
    assert_eq!(std::fs::read(&out).unwrap(), b.stdout);
    let v: Value = serde_json::from_slice(&b.stdout).unwrap();
    for row in v["entries"].as_array().unwrap() {
        assert!(row.as_array().unwrap().iter().all(|e| e.as_u64().unwrap() < 3));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write(
        dir.path(),
        "c3.json",
        r#"{"group": "C3", "automorphism": {"kind": "inner_torsion", "order": 2, "t": [1, 1, 1]}}"#,
    );
    let o = run(&["brauer", "matrix", "--setup", &c3]);
    assert_eq!(o.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&o.stderr);
    assert!(msg.contains("C_n:n") && msg.contains("E8:31"), "{msg}");

    let bad = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(run(&["brauer", "matrix", "--setup", &bad]).status.code(), Some(1));
    assert_eq!(run(&["brauer", "matrix", "--setup", "/nonexistent.json"]).status.code(), Some(1));
    let kind = write(dir.path(), "k.json", r#"{"group": "A2", "automorphism": {"kind": "twisted", "order": 2}}"#);
    assert_eq!(run(&["brauer", "matrix", "--setup", &kind]).status.code(), Some(1));
    assert_eq!(run(&["group", "Q7"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["auto", "--datum", "A2", "--kind", "pinned", "--ell", "4", "--perm", "1,0"]).status.code(), Some(1));
}

#[test]
fn auto_and_fold() {
    let a = json_of(&run(&["auto", "--datum", "A2", "--kind", "pinned", "--ell", "2", "--perm", "1,0"]));
    assert_eq!(a["automorphism"]["kind"], "pinned");
    assert_eq!(a["validation"]["passed"], true);
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "a.json", &serde_json::to_string(&a["automorphism"]).unwrap());
    let f = json_of(&run(&["fold", "--datum", "A2", "--auto", &file]));
    assert_eq!(f["fixed_datum"]["rank"], 1);
    let d4 = json_of(&run(&["fold", "--datum", "D4", "--kind", "pinned", "--ell", "3", "--perm", "2,1,3,0"]));
    assert_eq!(d4["fixed_label"], "G2/sc");
}

#[test]
fn group_summary() {
    let g = json_of(&run(&["group", "B3:adjoint"]));
    assert_eq!(g["rank"], 3);
    assert_eq!(g["num_roots"], 18);
    assert_eq!(g["dual_label"], "C3/sc");
}

#[test]
fn toral_parameter() {
    let dir = tempfile::tempdir().unwrap();
    let th = write(dir.path(), "t.json", r#"{"datum": "A2", "theta": [{"num": 1, "den": 7}, {"num": 2, "den": 7}]}"#);
    let p = json_of(&run(&["param", "toral", "--theta", &th, "--w", "s1 s2", "--inner-ell", "3"]));
    assert_eq!(p["frob_twist"], 1);
    assert_eq!(p["torus_part"][0]["num"], 3);
    assert_eq!(p["torus_part"][1]["num"], 6);
    assert_eq!(p["weyl_part"], serde_json::json!([1, 2]));
    assert_eq!(p["elliptic"], true);
    let q = json_of(&run(&["param", "toral", "--theta", &th, "--ell", "3"]));
    assert_eq!(q["frob_twist"], 0);
    assert_eq!(q["torus_part"][0]["num"], 1);
    let bad = write(dir.path(), "b.json", r#"{"datum": "A1", "theta": [{"num": 1, "den": 6}]}"#);
    assert_eq!(run(&["param", "toral", "--theta", &bad, "--inner-ell", "3"]).status.code(), Some(1));
}

#[test]
fn gr_fixed_negative_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"kind": "inner_torsion", "order": 3, "t": [1]}"#);
    let v = json_of(&run(&["gr", "fixed", "--datum", "A1", "--auto", &a, "--lambda", "-1"]));
    assert_eq!(v["dim"], 1);
    assert!(v["fixed"].is_object());
}

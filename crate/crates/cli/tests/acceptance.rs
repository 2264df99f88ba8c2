//! Acceptance properties, one verdict line each. Every line combines the seeded
//! suite with checks against oracles written independently in this file.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use modsat::brauer::{brauer_restrict, char_zero_counterexample, normalized_brauer, SatakeSetup};
use modsat::charring::{weyl_character, Ring};
use modsat::rootdata::{block_cyclic_automorphism, inner_torsion_automorphism, pinned_automorphism, RootDatum};
use modsat::suite::{run_suite, SuiteOptions, SuiteReport};
use modsat::tate::{les_check, split_sequence, Coeff, SigmaModule};
use serde_json::Value;

type Poly = BTreeMap<Vec<i64>, i64>;

const SEED: u64 = 20240611;

fn modsat(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modsat")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn modsat_json(args: &[&str]) -> Value {
    let (code, text) = modsat(args);
    assert_eq!(code, 0, "modsat {args:?} exited {code}");
    serde_json::from_str(&text).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn poly_mul(a: &Poly, b: &Poly, p: Option<i64>) -> Poly {
    let mut out = Poly::new();
    for (x, c) in a {
        for (y, d) in b {
            let w: Vec<i64> = x.iter().zip(y).map(|(s, t)| s + t).collect();
            *out.entry(w).or_insert(0) += c * d;
        }
    }
    clean(out, p)
}

fn clean(f: Poly, p: Option<i64>) -> Poly {
    f.into_iter()
        .map(|(w, c)| (w, p.map_or(c, |p| c.rem_euclid(p))))
        .filter(|(_, c)| *c != 0)
        .collect()
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Terms on weights fixed by `m`.
fn fixed_part(f: &Poly, m: &[Vec<i64>]) -> Poly {
    f.iter().filter(|(w, _)| apply(m, w) == **w).map(|(w, c)| (w.clone(), *c)).collect()
}

/// Weights of the irreducible `A1` module of highest weight `n`, in fundamental-weight coordinates.
fn a1_weights(n: i64) -> Vec<i64> {
    (0..=n).map(|k| n - 2 * k).collect()
}

/// Same in root coordinates (adjoint datum): highest weight `n alpha`.
fn a1_adjoint_weights(n: i64) -> Vec<i64> {
    (-n..=n).collect()
}

struct Line {
    id: u32,
    name: String,
    ok: bool,
    detail: String,
}

fn line(report: &SuiteReport, id: u32, oracle: Result<String, String>) -> Line {
    let c = report.criterion(id).expect("criterion present");
    let (ok, detail) = match oracle {
        Ok(d) if c.passed => (true, format!("{}; oracle: {d}", c.detail)),
        Ok(d) => (false, format!("suite: {}; oracle: {d}", c.detail)),
        Err(e) => (false, format!("suite: {}; oracle FAILED: {e}", c.detail)),
    };
    Line { id, name: c.name.clone(), ok, detail }
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_bad_primes() -> Result<String, String> {
    let v = modsat_json(&["bad-primes"]);
    let got: Vec<(String, String)> = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["types"].as_str().unwrap().to_string(), r["bound"].as_str().unwrap().to_string()))
        .collect();
    let want: Vec<(String, String)> =
        [("A_n", "1"), ("B_n, D_n", "2"), ("C_n", "n"), ("G_2, F_4, E_6", "3"), ("E_7", "19"), ("E_8", "31")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
    check(got == want, format!("cli table {got:?}"))?;
    for (label, b) in [("E7", 19), ("E8", 31), ("A5", 1), ("C4", 4), ("G2", 3), ("F4", 3), ("D5", 2)] {
        let g = modsat_json(&["group", label]);
        check(g["bad_prime_bound"] == b, format!("{label}: {}", g["bad_prime_bound"]))?;
    }
    Ok("cli table and per-type bounds match the published table".into())
}

fn c2_char_l() -> Result<String, String> {
    let d = RootDatum::from_label("A2").unwrap();
    let s = SatakeSetup::new(&pinned_automorphism(&d, &[1, 0], 2).unwrap()).unwrap();
    let sigma = s.sigma.to_rows();
    let w = char_zero_counterexample(&s).unwrap().ok_or("no counterexample")?;
    let (f, g) = (w.f.terms().clone(), w.g.terms().clone());
    for h in [&f, &g] {
        check(h.iter().all(|(x, c)| h.get(&apply(&sigma, x)) == Some(c)), "input not sigma-invariant")?;
    }
    // over Z the fixed part of a product is not the product of fixed parts
    let lhs = fixed_part(&poly_mul(&f, &g, None), &sigma);
    let rhs = poly_mul(&fixed_part(&f, &sigma), &fixed_part(&g, &sigma), None);
    check(lhs != rhs, "Z pair is multiplicative")?;
    // reduced mod 2 it is
    let lhs2 = clean(lhs.clone(), Some(2));
    let rhs2 = clean(rhs, Some(2));
    check(lhs2 == rhs2, "mod 2 reduction not multiplicative")?;
    let fp = w.f.reduce_mod(2).unwrap();
    let gp = w.g.reduce_mod(2).unwrap();
    let lib = brauer_restrict(&fp.multiply(&gp).unwrap(), &s).unwrap().value;
    let want: Poly = lhs2.iter().map(|(x, c)| (s.to_fixed(x).unwrap(), *c)).collect();
    check(lib.terms() == &want, format!("library Br {:?} vs oracle {want:?}", lib.terms()))?;
    Ok(format!("A2 fold l=2: Br(fg) != Br(f)Br(g) over Z ({} vs product), equal mod 2", lhs.len()))
}

fn c3_routes() -> Result<String, String> {
    let a1 = RootDatum::from_label("A1:adjoint").unwrap();
    let s = SatakeSetup::new(&inner_torsion_automorphism(&a1, &[1], 3).unwrap()).unwrap();
    let g = Arc::new(s.g_datum.clone());
    for n in 0..6 {
        let chi = weyl_character(&g, &[n], s.ring()).unwrap();
        let want: Poly = a1_weights(n).into_iter().map(|k| (vec![3 * k], 1)).collect();
        let got = normalized_brauer(&chi, &s).unwrap();
        check(got.terms() == &want, format!("inner A1 chi({n}): {:?}", got.terms()))?;
    }
    let s = SatakeSetup::new(&block_cyclic_automorphism(&RootDatum::from_label("A1").unwrap(), 3).unwrap()).unwrap();
    let g = Arc::new(s.g_datum.clone());
    for lam in [[1, 0, 0], [1, 1, 1], [2, 1, 0], [0, 2, 2]] {
        // the dual datum is adjoint; outer tensor product, then e^(a,b,c) -> e^(a+b+c)
        let mut want = Poly::new();
        for a in a1_adjoint_weights(lam[0]) {
            for b in a1_adjoint_weights(lam[1]) {
                for c in a1_adjoint_weights(lam[2]) {
                    *want.entry(vec![a + b + c]).or_insert(0) += 1;
                }
            }
        }
        let want = clean(want, Some(3));
        let got = normalized_brauer(&weyl_character(&g, &lam, s.ring()).unwrap(), &s).unwrap();
        check(got.terms() == &want, format!("base change {lam:?}: {:?} vs {want:?}", got.terms()))?;
    }
    Ok("inner A1 and base-change A1 at l=3 match e^lambda -> e^(N lambda) computed by hand".into())
}

fn c4_ring_map() -> Result<String, String> {
    let d = RootDatum::from_label("A3").unwrap();
    let s = SatakeSetup::new(&pinned_automorphism(&d, &[2, 1, 0], 2).unwrap()).unwrap();
    let g = Arc::new(s.g_datum.clone());
    let lams: Vec<Vec<i64>> = g.dominant_weights(10, 1).unwrap().into_iter().filter(|w| w.iter().any(|&x| x != 0)).take(4).collect();
    let mut n = 0;
    for a in &lams {
        for b in &lams {
            let f = weyl_character(&g, a, s.ring()).unwrap();
            let h = weyl_character(&g, b, s.ring()).unwrap();
            // test-side multiplication of the images
            let bf = normalized_brauer(&f, &s).unwrap().terms().clone();
            let bh = normalized_brauer(&h, &s).unwrap().terms().clone();
            let prod = poly_mul(&bf, &bh, Some(2));
            let mut sum = bf.clone();
            for (w, c) in &bh {
                *sum.entry(w.clone()).or_insert(0) += c;
            }
            let sum = clean(sum, Some(2));
            check(normalized_brauer(&f.multiply(&h).unwrap(), &s).unwrap().terms() == &prod, "product")?;
            check(normalized_brauer(&f.add(&h).unwrap(), &s).unwrap().terms() == &sum, "sum")?;
            n += 1;
        }
    }
    Ok(format!("A3 fold l=2: {n} pairs of irreducible characters"))
}

fn c5_sigma_dual(dir: &Path) -> Result<String, String> {
    let setup = write(
        dir,
        "inner_a1.json",
        r#"{"group": "A1:adjoint", "automorphism": {"kind": "inner_torsion", "order": 3, "t": [1]}}"#,
    );
    let v = modsat_json(&["brauer", "matrix", "--setup", &setup, "--weight-bound", "2"]);
    let cols: Vec<Vec<i64>> = serde_json::from_value(v["columns"].clone()).unwrap();
    let rows: Vec<Vec<i64>> = serde_json::from_value(v["rows"].clone()).unwrap();
    let entries: Vec<Vec<u64>> = serde_json::from_value(v["entries"].clone()).unwrap();
    check(cols == vec![vec![0], vec![1], vec![2]], format!("columns {cols:?}"))?;
    for (j, c) in cols.iter().enumerate() {
        let got: BTreeSet<i64> = rows.iter().enumerate().filter(|(i, _)| entries[*i][j] != 0).map(|(_, r)| r[0]).collect();
        let want: BTreeSet<i64> = a1_weights(c[0]).into_iter().map(|k| 3 * k).collect();
        check(got == want, format!("column {c:?}: {got:?}"))?;
        check(rows.iter().enumerate().all(|(i, _)| entries[i][j] <= 1), "entries above 1")?;
    }
    Ok("3-column inner A1 l=3 matrix equals chi(n) -> sum of e^(3k)".into())
}

/// `dim V(lambda)` for `B_n` by the Weyl product over positive roots, in doubled
/// `epsilon` coordinates; `lambda` in fundamental-weight coordinates.
fn b_dim(n: usize, lambda: &[i64]) -> i128 {
    let mut eps = vec![0i64; n];
    for (k, &c) in lambda.iter().enumerate() {
        for e in eps.iter_mut().take(if k + 1 < n { k + 1 } else { n }) {
            *e += if k + 1 < n { 2 * c } else { c };
        }
    }
    let rho: Vec<i64> = (0..n).map(|i| 2 * (n - i) as i64 - 1).collect();
    let mut roots = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        roots.push(e);
        for j in i + 1..n {
            let mut a = vec![0; n];
            a[i] = 1;
            a[j] = -1;
            roots.push(a.clone());
            a[j] = 1;
            roots.push(a);
        }
    }
    let (mut num, mut den) = (1i128, 1i128);
    for a in &roots {
        let ip = |v: &[i64]| v.iter().zip(a).map(|(x, y)| x * y).sum::<i64>() as i128;
        num *= ip(&eps.iter().zip(&rho).map(|(x, y)| x + y).collect::<Vec<_>>());
        den *= ip(&rho);
    }
    num / den
}

fn c6_bn() -> Result<String, String> {
    let mut dims = Vec::new();
    for n in [2usize, 3] {
        let d = Arc::new(RootDatum::from_label(&format!("B{n}")).unwrap());
        let unit = |i: usize, k: i64| {
            let mut v = vec![0; n];
            v[i] = k;
            v
        };
        let chi = weyl_character(&d, &unit(n - 1, 1), Ring::Z).unwrap();
        let got: BTreeMap<Vec<i64>, i64> = chi.multiply(&chi).unwrap().decompose().unwrap().into_iter().collect();
        let mut want: BTreeMap<Vec<i64>, i64> = (0..n - 1).map(|i| (unit(i, 1), 1)).collect();
        want.insert(unit(n - 1, 2), 1);
        want.insert(vec![0; n], 1);
        check(got == want, format!("B{n}: {got:?}"))?;
        let sq = b_dim(n, &unit(n - 1, 1)).pow(2);
        let total: i128 = want.keys().map(|l| b_dim(n, l)).sum();
        check(sq == total, format!("B{n}: {sq} != {total}"))?;
        check(chi.dim() as i128 == b_dim(n, &unit(n - 1, 1)), "spin dimension")?;
        dims.push(format!("B{n}: {sq} = {total}"));
    }
    Ok(format!("decomposition exact; Weyl dimensions {}", dims.join(", ")))
}

fn c7_tate(dir: &Path) -> Result<String, String> {
    for ell in [2, 3, 5] {
        for (coeff, want) in [("Fl", (1, 1)), ("Zl", (1, 0))] {
            let m = write(
                dir,
                "triv.json",
                &format!(r#"{{"coeff": "{coeff}", "ell": {ell}, "presentation": [[]], "sigma": [[1]]}}"#),
            );
            let v = modsat_json(&["tate", "--module", &m]);
            check((v["t0"]["dim"].as_u64(), v["t1"]["dim"].as_u64()) == (Some(want.0), Some(want.1)), format!("{coeff} l={ell}"))?;
        }
        for d in 1..=5usize {
            // tuples fixed by rotation: the diagonal ones
            let total = d.pow(ell as u32);
            let fixed = (0..total)
                .filter(|&x| {
                    let digits: Vec<usize> = (0..ell).map(|k| (x / d.pow(k as u32)) % d).collect();
                    digits.iter().all(|&t| t == digits[0])
                })
                .count();
            let f = modsat::tate::tate_of_tensor_power(&vec![0; d], ell as u64, Coeff::Fl, 10_000).unwrap();
            let z = modsat::tate::tate_of_tensor_power(&vec![0; d], ell as u64, Coeff::Zl, 10_000).unwrap();
            check((f.t0, f.t1, z.t0, z.t1) == (fixed, fixed, fixed, 0), format!("d={d} l={ell}"))?;
        }
    }
    Ok("trivial modules via cli, tensor powers against fixed-tuple counts".into())
}

fn c8_goodness(dir: &Path) -> Result<String, String> {
    let m = write(dir, "aug.json", r#"{"coeff": "Zl", "ell": 3, "presentation": [[], []], "sigma": [[0, -1], [1, -1]]}"#);
    let v = modsat_json(&["tate", "--module", &m]);
    check(v["t0"]["dim"] == 0 && v["t1"]["dim"] == 1, "augmentation ideal cohomology")?;
    check(v["goodness"]["good"] == false, "augmentation ideal reported good")?;
    let m = write(dir, "perm.json", r#"{"coeff": "Zl", "ell": 3, "presentation": [[], [], [], []], "sigma": [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]}"#);
    let v = modsat_json(&["tate", "--module", &m]);
    let cert = &v["goodness"]["certificate"];
    check(v["goodness"]["good"] == true && cert["trivial"] == 1 && cert["regular"] == 1, "Z[C3] + Z")?;
    Ok("I_3 has T0 = 0, T1 = F_3 and is not good; Z[C3] + Z is good".into())
}

fn c9_les() -> Result<String, String> {
    for ell in [2, 3, 5] {
        let a = SigmaModule::trivial(Coeff::Fl, ell).unwrap();
        let b = SigmaModule::regular(Coeff::Fl, ell).unwrap();
        let r = les_check(&split_sequence(&a, &b).unwrap()).unwrap();
        check(r.exact && r.connecting_zero == [true, true], format!("split l={ell}"))?;
    }
    Ok("split sequences exact with zero connecting maps".into())
}

fn c10_strata(dir: &Path) -> Result<String, String> {
    let auto = write(dir, "fold.json", r#"{"kind": "pinned", "order": 2, "perm": [1, 0]}"#);
    // positive roots of simply connected A2 in fundamental-weight coordinates; lambda dominant
    let roots = [[2, -1], [-1, 2], [1, 1]];
    for lam in [[2, 1], [1, 2], [1, 1], [2, 2], [3, 2], [0, 0]] {
        let arg = format!("{},{}", lam[0], lam[1]);
        let v = modsat_json(&["gr", "fixed", "--datum", "A2", "--auto", &auto, "--lambda", &arg]);
        let want: i64 = roots.iter().map(|a| a[0] * lam[0] + a[1] * lam[1]).sum();
        check(v["dim"] == want, format!("{lam:?}: dim {}", v["dim"]))?;
        check(v["fixed"].is_null() == (lam[0] != lam[1]), format!("{lam:?}: fixed {}", v["fixed"]))?;
    }
    Ok("A2 dominant dimensions = sum of <lambda, alpha>; only symmetric lambda have fixed points".into())
}

fn c11_dl(dir: &Path) -> Result<String, String> {
    let read = |v: &Value| -> Vec<Vec<(i64, i64)>> {
        v["characters"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_array().unwrap().iter().map(|q| (q["num"].as_i64().unwrap(), q["den"].as_i64().unwrap())).collect())
            .collect()
    };
    let th = write(dir, "th1.json", r#"{"datum": "A1", "theta": [{"num": 1, "den": 5}]}"#);
    for deg in ["0", "1"] {
        let v = modsat_json(&["dl", "tate", "--wx", "s1", "--twist", "s1", "--theta", &th, "--degree", deg]);
        // s acts on the coweight lattice of A1 by -1
        check(read(&v) == vec![vec![(1, 5)], vec![(4, 5)]], format!("A1 degree {deg}"))?;
    }
    let th = write(dir, "th2.json", r#"{"datum": "A2", "theta": [{"num": 1, "den": 7}, {"num": 3, "den": 7}]}"#);
    // Coxeter element s1 s2 on X^vee = span of simple coroots; its centralizer is cyclic of order 3
    let s1 = |x: [i64; 2]| [x[0] - (2 * x[0] - x[1]), x[1]];
    let s2 = |x: [i64; 2]| [x[0], x[1] - (-x[0] + 2 * x[1])];
    let mut orbit = BTreeSet::new();
    let mut x = [1i64, 3];
    for _ in 0..3 {
        orbit.insert(vec![(x[0].rem_euclid(7), 7), (x[1].rem_euclid(7), 7)]);
        x = s1(s2(x));
    }
    for deg in ["0", "1"] {
        let v = modsat_json(&["dl", "tate", "--wx", "s1; s2", "--twist", "s1 s2", "--theta", &th, "--degree", deg]);
        let got: BTreeSet<Vec<(i64, i64)>> = read(&v).into_iter().collect();
        check(v["characters"].as_array().unwrap().len() == 3 && got == orbit, format!("A2 degree {deg}: {got:?}"))?;
    }
    Ok("A1: {theta, -theta}; A2: Coxeter orbit of theta, both degrees".into())
}

fn c12_cosets() -> Result<String, String> {
    // S3 as permutations of 0..3, sigma = conjugation by c = (0 1 2), K = <c>
    let mul = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let inv = |p: &[usize; 3]| {
        let mut r = [0; 3];
        for i in 0..3 {
            r[p[i]] = i;
        }
        r
    };
    let g: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let c = [1, 2, 0];
    let k: Vec<[usize; 3]> = vec![[0, 1, 2], c, mul(&c, &c)];
    let sigma = |x: &[usize; 3]| mul(&mul(&c, x), &inv(&c));
    let coset = |x: &[usize; 3]| k.iter().map(|y| mul(x, y)).min().unwrap();
    let cosets: BTreeSet<_> = g.iter().map(coset).collect();
    let fixed_cosets = cosets.iter().filter(|x| coset(&sigma(x)) == **x).count();
    let gs = g.iter().filter(|x| sigma(x) == **x).count();
    let ks = k.iter().filter(|x| sigma(x) == **x).count();
    let (want_cosets, want_quot) = (fixed_cosets, gs / ks);
    let (gg, kk, ss) = modsat::grcombi::failure_witness().unwrap();
    let r = modsat::grcombi::coset_fixed_points(&gg, &kk, &ss).unwrap();
    check((r.fixed_cosets, r.fixed_quotient) == (want_cosets, want_quot), format!("{r:?}"))?;
    check(want_cosets != want_quot, "oracle witness bijective")?;
    Ok(format!("S3/A3 l=3 by hand: {want_cosets} fixed cosets vs {want_quot}"))
}

fn c13_determinism() -> Result<String, String> {
    let (c1, a) = modsat(&["suite", "--seed", "5", "--threads", "1"]);
    let (c4, b) = modsat(&["suite", "--seed", "5", "--threads", "4"]);
    check(c1 == 0 && c4 == 0, "suite exit code")?;
    check(a == b, "output differs between 1 and 4 threads")?;
    let (c, other) = modsat(&["suite", "--seed", "6"]);
    let verdicts = |t: &str| -> Vec<bool> {
        let v: Value = serde_json::from_str(t).unwrap();
        v["criteria"].as_array().unwrap().iter().map(|c| c["passed"].as_bool().unwrap()).collect()
    };
    check(c == 0 && verdicts(&a) == verdicts(&other), "verdicts depend on the seed")?;
    let (code, _) = modsat(&["suite", "--seed", "5", "--corrupt-folding-table"]);
    check(code != 0, "corrupted folding table not detected")?;
    Ok("cli output byte-identical for 1 and 4 threads; seed 6 same verdicts; negative control fails".into())
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_suite(&SuiteOptions { seed: SEED, ..Default::default() });
    let d = dir.path();
    let lines = vec![
        line(&report, 1, c1_bad_primes()),
        line(&report, 2, c2_char_l()),
        line(&report, 3, c3_routes()),
        line(&report, 4, c4_ring_map()),
        line(&report, 5, c5_sigma_dual(d)),
        line(&report, 6, c6_bn()),
        line(&report, 7, c7_tate(d)),
        line(&report, 8, c8_goodness(d)),
        line(&report, 9, c9_les()),
        line(&report, 10, c10_strata(d)),
        line(&report, 11, c11_dl(d)),
        line(&report, 12, c12_cosets()),
        line(&report, 13, c13_determinism()),
    ];
    for l in &lines {
        println!("criterion {:>2} {:<32} {}  {}", l.id, l.name, if l.ok { "PASS" } else { "FAIL" }, l.detail);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.ok).map(|l| l.id).collect();
    println!("acceptance: {} of {} criteria pass", lines.len() - failed.len(), lines.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

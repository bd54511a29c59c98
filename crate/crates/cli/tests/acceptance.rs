//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_traits::Zero;
use serde_json::Value;

use rigidkit::json::parse_rat;
use rigidkit::{run_scenario, Analysis, Report, Scenario};
use rigidkit_core::central_ext::{build_universal_extension, classify_symplectic};
use rigidkit_core::lie::{semidirect, LieAlgebra, Representation};
use rigidkit_core::linalg::rational::{qi, Rational};
use rigidkit_core::linalg::Subspace;

type Check = Result<(), String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

fn ensure(ok: bool, what: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn shipped(name: &str) -> Report {
    let (s, bytes) = Scenario::load(&root().join("scenarios").join(format!("{name}.json"))).unwrap();
    run_scenario(&s, &bytes, None)
}

fn inline(body: &str) -> Report {
    let s = Scenario::from_slice(body.as_bytes()).unwrap();
    run_scenario(&s, body.as_bytes(), None)
}

fn functional(v: &Value) -> Vec<Rational> {
    v.as_array().unwrap().iter().map(|x| parse_rat(x).unwrap()).collect()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    f()?;
    let spent = start.elapsed();
    match limit {
        Some(l) if spent > l => Err(format!("took {spent:?}, limit {l:?}")),
        _ => Ok(()),
    }
}

fn criterion1() -> Check {
    let r = shipped("sl4_jordan_example");
    ensure(r.failures.is_empty(), format!("failures {:?}", r.failures))?;
    let roots = r.result(Analysis::Roots).unwrap();
    let got: BTreeSet<(Vec<Rational>, u64)> = roots["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (functional(&x["functional"]), x["dim"].as_u64().unwrap()))
        .collect();
    let mut expected = BTreeSet::new();
    for (a, b, d) in [(1, -1, 2), (3, 1, 2), (2, 2, 1)] {
        expected.insert((vec![qi(a), qi(b)], d));
        expected.insert((vec![qi(-a), qi(-b)], d));
    }
    ensure(got == expected, format!("roots {got:?}"))?;
    ensure(roots["zero_space_dim"] == 5, "g0 dimension")?;
    let rig = r.result(Analysis::Rigidity).unwrap();
    let jordan = rig["semisimple_on_classes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["key"] == serde_json::json!([1, -1]) && c["kind"] == "root")
        .map(|c| c["semisimple"] == false);
    ensure(jordan == Some(true), "Jordan flag on the (1,-1) class")?;
    ensure(rig["genuinely_higher_rank"] == true, "genuinely higher rank")?;
    ensure(rig["all_roots_detected"] == false, "all roots detected should be false")?;
    let det = r.result(Analysis::Detect).unwrap();
    ensure(det["normalizer_quotient"] == serde_json::json!(["id", "(34)"]), "N/C quotient")?;
    let e12 = det["table"].as_array().unwrap().iter().find(|e| e["label"] == "e1-e2").unwrap();
    ensure(e12["detected"] == false, "e1-e2 should be undetected")?;
    ensure(r.result(Analysis::Chambers).unwrap()["count"] == 6, "six chambers")
}

fn criterion2() -> Check {
    let r = shipped("sl_dm_embedding");
    ensure(r.failures.is_empty(), format!("failures {:?}", r.failures))?;
    let (mu, d) = ([1i64, 2, -3], 2usize);
    let mut expected = BTreeSet::new();
    for i in 0..mu.len() {
        for k in 0..d {
            for j in 0..mu.len() {
                for l in 0..d {
                    let f: Vec<Rational> = (0..d)
                        .map(|m| qi(if k == m { mu[i] } else { 0 } - if l == m { mu[j] } else { 0 }))
                        .collect();
                    if f.iter().any(|x| !x.is_zero()) {
                        expected.insert(f);
                    }
                }
            }
        }
    }
    let roots = r.result(Analysis::Roots).unwrap();
    let got: BTreeSet<Vec<Rational>> =
        roots["roots"].as_array().unwrap().iter().map(|x| functional(&x["functional"])).collect();
    ensure(got == expected, format!("roots {got:?} vs formula {expected:?}"))?;
    let det = r.result(Analysis::Detect).unwrap();
    ensure(det["all_detected"] == true, "all Cartan roots detected")?;
    let rig = r.result(Analysis::Rigidity).unwrap();
    ensure(rig["all_semisimple"] == true, "semisimplicity flags")?;
    ensure(!rig["semisimple_on_classes"].as_array().unwrap().is_empty(), "class flags present")
}

/// Dimension of invariant alternating forms by a floating-point rank count, independent
/// of the exact kernel code.
fn invariant_form_dim_oracle(g: &LieAlgebra) -> usize {
    let n = g.matrix_of(&g.basis_vector(0)).unwrap().rows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mats: Vec<DMatrix<f64>> = (0..g.dim())
        .map(|i| {
            let m = g.matrix_of(&g.basis_vector(i)).unwrap();
            DMatrix::from_fn(n, n, |r, c| m.get(r, c).to_string().parse::<f64>().unwrap())
        })
        .collect();
    let mut system = DMatrix::zeros(mats.len() * n * n, pairs.len());
    for (col, &(a, b)) in pairs.iter().enumerate() {
        let mut j = DMatrix::zeros(n, n);
        j[(a, b)] = 1.0;
        j[(b, a)] = -1.0;
        for (k, x) in mats.iter().enumerate() {
            let e = x.transpose() * &j + &j * x;
            for (p, v) in e.iter().enumerate() {
                system[(k * n * n + p, col)] = *v;
            }
        }
    }
    pairs.len() - system.rank(1e-9)
}

fn criterion3() -> Check {
    for (n, expected) in [(3, 0), (2, 1)] {
        let g = LieAlgebra::sl(n).unwrap();
        let rho = Representation::standard(&g).unwrap();
        let oracle = invariant_form_dim_oracle(&g);
        ensure(oracle == expected, format!("oracle gives {oracle} for sl({n})"))?;
        let class = classify_symplectic(&rho);
        ensure(class.dim() == expected, format!("sl({n}) form space dimension {}", class.dim()))?;
        ensure(class.is_symplectic() == (expected > 0), "symplectic flag")?;
    }
    Ok(())
}

fn criterion4() -> Check {
    let g = LieAlgebra::sl(2).unwrap();
    let rho = Representation::standard(&g).unwrap();
    let ext = build_universal_extension(&g, &rho).map_err(|e| e.to_string())?;
    let e = ext.extended();
    ensure(e.dim() == 6, "extended dimension")?;
    let basis = |i: usize| e.basis_vector(i);
    let mut triples = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let t1 = e.bracket(&e.bracket(&basis(i), &basis(j)), &basis(k));
                let t2 = e.bracket(&e.bracket(&basis(j), &basis(k)), &basis(i));
                let t3 = e.bracket(&e.bracket(&basis(k), &basis(i)), &basis(j));
                let sum: Vec<Rational> = (0..6).map(|c| &t1[c] + &t2[c] + &t3[c]).collect();
                ensure(sum.iter().all(Zero::is_zero), format!("Jacobi fails on ({i},{j},{k})"))?;
                triples += 1;
            }
        }
    }
    ensure(triples == 20, "all C(6,3) triples")?;
    let z = 5;
    ensure((0..6).all(|i| e.bracket_basis(z, i).iter().all(Zero::is_zero)), "z central")?;
    let ee = e.bracket_basis(3, 4);
    ensure(ee[..5].iter().all(Zero::is_zero) && !ee[5].is_zero(), "[e,e] spans z")?;
    let all: Vec<Vec<Rational>> = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).map(|(i, j)| e.bracket_basis(i, j)).collect();
    ensure(Subspace::span(6, &all).dim() == 6, "extended algebra perfect")?;
    let check = ext.verify();
    ensure(check.all_pass(), format!("library verification {check:?}"))?;

    let g3 = LieAlgebra::sl(3).unwrap();
    let rho3 = Representation::standard(&g3).unwrap();
    let ext3 = build_universal_extension(&g3, &rho3).map_err(|e| e.to_string())?;
    ensure(ext3.center_dim() == 0, "non-symplectic input has trivial z")?;
    let plain = semidirect(&g3, &rho3).map_err(|e| e.to_string())?;
    ensure(ext3.extended().structure_constants() == plain.structure_constants(), "matches the semidirect product")?;

    let r = shipped("sl2_heisenberg_extension");
    ensure(r.failures.is_empty(), format!("failures {:?}", r.failures))?;
    let x = r.result(Analysis::Extend).unwrap();
    ensure(x["center_dim"] == 1 && x["perfect"] == true && x["e_spans_z"] == true, "scenario extension fields")
}

fn steinberg_ok(v: &Value, routed: bool) -> Check {
    ensure(v["passed"] == true, format!("checks {}", v["checks"]))?;
    ensure(v["round_trips"]["checked"] == 100, "100 round trips")?;
    ensure(v["cartan_commutators"]["checked"].as_u64().unwrap_or(0) > 0, "commutators checked")?;
    ensure(v["reflections"]["checked"].as_u64().unwrap_or(0) > 0, "reflections checked")?;
    if routed {
        let lemmas = &v["conjugation_lemmas"];
        ensure(lemmas["failures"] == serde_json::json!([]), "lemma failures")?;
        let names = lemmas["routed_roots"].as_array().unwrap();
        ensure(names.iter().any(|n| n == "e1-e2"), "two-route agreement at e1-e2")?;
    }
    Ok(())
}

fn criterion5() -> Check {
    let r = inline(
        r#"{"name": "sl3_words", "algebra": {"kind": "sl", "n": 3},
            "steinberg": {"seed": 7, "round_trips": 100}, "analyses": ["steinberg-verify"]}"#,
    );
    ensure(r.failures.is_empty(), format!("sl3 failures {:?}", r.failures))?;
    steinberg_ok(r.result(Analysis::SteinbergVerify).unwrap(), false)?;
    let r = shipped("sl4_jordan_example");
    ensure(r.failures.is_empty(), format!("sl4 failures {:?}", r.failures))?;
    steinberg_ok(r.result(Analysis::SteinbergVerify).unwrap(), true)
}

fn criterion6() -> Check {
    for name in ["pcf_cat_map", "pcf_cubic_units"] {
        let r = shipped(name);
        ensure(r.failures.is_empty(), format!("{name} failures {:?}", r.failures))?;
        let p = r.result(Analysis::Pcf).unwrap();
        ensure(p["kappa"] == 1.0, "kappa 1")?;
        for line in p["decay"].as_array().unwrap() {
            let gap = line["relative_gap"].as_f64().unwrap();
            ensure(gap < 0.1, format!("{name} line {} decay gap {gap}", line["line"]))?;
        }
        ensure(p["cycles"]["count"] == 50, "50 cycles")?;
        ensure(p["cycles"]["max"].as_f64().unwrap() < 1e-8, format!("{name} cycles {}", p["cycles"]["max"]))?;
        ensure(p["independence_max"].as_f64().unwrap() < 1e-8, format!("{name} independence"))?;
        let t = &p["transfer"];
        ensure(t["residual"].as_f64().unwrap() < 1e-6, format!("{name} transfer residual"))?;
        ensure(t["planted_gap"].as_f64().unwrap() < 1e-8, format!("{name} planted match"))?;
    }
    let r = shipped("pcf_negative_control");
    ensure(r.failures.is_empty(), format!("negative control {:?}", r.failures))?;
    let p = r.result(Analysis::Pcf).unwrap();
    ensure(p["obstruction"]["deviation"].as_f64().unwrap_or(0.0) > 1e-8, "CycleObstruction raised")
}

fn criterion7() -> Check {
    let names = [
        "sl4_jordan_example",
        "sl_dm_embedding",
        "sl2_heisenberg_extension",
        "pcf_cat_map",
        "pcf_cubic_units",
        "pcf_negative_control",
    ];
    for name in names {
        let path = root().join("scenarios").join(format!("{name}.json"));
        let run = || Command::new(env!("CARGO_BIN_EXE_rigidkit")).arg("run").arg(&path).output().unwrap();
        let (a, b) = (run(), run());
        ensure(a.status.success() && b.status.success(), format!("{name} exit status"))?;
        ensure(a.stdout == b.stdout, format!("{name} not byte-identical"))?;
        let golden = std::fs::read(root().join("golden").join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        ensure(a.stdout == golden, format!("{name} differs from golden"))?;
    }
    Ok(())
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 7] = [
        ("1 sl(4) worked example", secs(5), criterion1),
        ("2 sl(dm) embedding", secs(10), criterion2),
        ("3 invariant-form classification", None, criterion3),
        ("4 universal central extension", None, criterion4),
        ("5 Steinberg word calculus", None, criterion5),
        ("6 periodic cycle functional suite", secs(60), criterion6),
        ("7 CLI determinism and goldens", None, criterion7),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        match timed(limit, f) {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

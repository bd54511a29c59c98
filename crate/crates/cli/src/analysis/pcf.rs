use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rigidkit_pcf::{
    CocycleKind, Element, Error as PcfError, HolderCocycle, IntMatrix, LyapunovPath, Pcf, PcfConfig, ToralAbelianAction,
    TrigMap, TrigTerm, TwistSpec,
};

use super::{with_checks, Outcome};
use crate::error::AnalysisError;
use crate::scenario::{CocycleSpec, PcfSpec, TrigSpec};

fn trig(spec: &TrigSpec) -> TrigMap {
    TrigMap {
        components: spec
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|t| TrigTerm { amplitude: t.amplitude, frequency: t.frequency.clone(), phase: t.phase })
                    .collect()
            })
            .collect(),
    }
}

fn vectors(vs: &[Vec<f64>]) -> Vec<DVector<f64>> {
    vs.iter().map(|v| DVector::from_vec(v.clone())).collect()
}

fn vec_json(v: &DVector<f64>) -> Value {
    json!(v.iter().copied().collect::<Vec<f64>>())
}

fn build(spec: &PcfSpec) -> Result<(ToralAbelianAction, HolderCocycle), AnalysisError> {
    let gens = spec.generators.iter().map(|g| IntMatrix::from_rows(g)).collect::<Result<Vec<_>, _>>()?;
    let action = ToralAbelianAction::new(gens)?;
    let (k, q) = (action.rank(), spec.target_dim);
    let twist = match &spec.twist {
        None => TwistSpec::trivial(k, q),
        Some(ms) => {
            let mats = ms.iter().map(|m| DMatrix::from_row_iterator(q, q, m.iter().flatten().copied())).collect();
            TwistSpec::new(q, mats, spec.modulus_tolerance)?
        }
    };
    let cocycle = match &spec.cocycle {
        CocycleSpec::PlantedCoboundary { amplitude, transfer, constants } => {
            let t = transfer.as_ref().map_or_else(|| TrigMap::sine(action.dim(), q, *amplitude), trig);
            let c = constants.as_deref().map_or_else(|| vec![DVector::zeros(q); k], vectors);
            HolderCocycle::planted_coboundary(&action, twist, t, c)?
        }
        CocycleSpec::Constant { constants } => HolderCocycle::constant(twist, vectors(constants))?,
        CocycleSpec::Trigonometric { generators } => {
            HolderCocycle::trigonometric(twist, generators.iter().map(trig).collect())?
        }
    };
    Ok((action, cocycle.with_kappa(spec.kappa)?))
}

fn point(rng: &mut ChaCha8Rng, d: usize) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.gen_range(0.0..1.0))
}

fn random_element(rng: &mut ChaCha8Rng, k: usize) -> Element {
    Element((0..k).map(|_| rng.gen_range(-2..=2)).collect())
}

/// Elements other than `a` that contract line `i`: `a^2` and each generator oriented to contract.
fn contracting_elements(action: &ToralAbelianAction, a: &Element, i: usize) -> Vec<Element> {
    let k = action.rank();
    let mut out = vec![a.scale(2)];
    for g in 0..k {
        let m = action.eigenvalue(g, i).abs();
        let e = Element::generator(k, g);
        let e = if m < 1.0 - 1e-9 { e } else if m > 1.0 + 1e-9 { e.inverse() } else { continue };
        if e != *a {
            out.push(e);
        }
    }
    out
}

pub fn run(spec: &PcfSpec) -> Outcome {
    let (action, cocycle) = build(spec)?;
    let cfg = PcfConfig {
        tolerance: spec.tolerance,
        budget: spec.budget,
        cycle_tolerance: spec.cycle_tolerance,
        leaf_tolerance: spec.leaf_tolerance,
        modulus_tolerance: spec.modulus_tolerance,
    };
    let pcf = Pcf::new(&action, &cocycle, cfg)?;
    let (d, k) = (action.dim(), action.rank());
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let samples: Vec<_> =
        (0..200).map(|_| (random_element(&mut rng, k), random_element(&mut rng, k), point(&mut rng, d))).collect();
    let cocycle_residual = cocycle.cocycle_residual(&action, &samples);

    let mut decay = Vec::new();
    let mut decay_ok = true;
    for line in 0..d {
        let a = action.contracting_generator(line)?;
        let pairs: Vec<_> = (0..spec.decay_samples)
            .map(|_| {
                let x = point(&mut rng, d);
                let y = &x + &action.lines()[line] * rng.gen_range(0.2..1.0);
                (x, y)
            })
            .collect();
        let fit = pcf.decay_fit(&a, &pairs)?;
        decay_ok &= fit.relative_gap() < 0.1 && fit.rate <= fit.coarse_bound;
        decay.push(json!({
            "line": line,
            "element": a.0,
            "rate": fit.rate,
            "chain_bound": fit.chain_bound,
            "coarse_bound": fit.coarse_bound,
            "relative_gap": fit.relative_gap(),
            "window": [fit.window.0, fit.window.1],
        }));
    }

    let mut independence: f64 = 0.0;
    for line in 0..d {
        let a = action.contracting_generator(line)?;
        for b in contracting_elements(&action, &a, line) {
            for _ in 0..3 {
                let x = point(&mut rng, d);
                let y = &x + &action.lines()[line] * rng.gen_range(-1.0..1.0);
                independence = independence.max(pcf.independence(&a, &b, &x, &y)?);
            }
        }
    }

    let mut cycle_max: f64 = 0.0;
    for _ in 0..spec.cycles {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let tau = LyapunovPath::parallelogram(point(&mut rng, d), i, rng.gen_range(-1.5..1.5), j, rng.gen_range(-1.5..1.5));
        cycle_max = cycle_max.max(pcf.cycle_test(&tau)?);
    }

    let x0 = point(&mut rng, d);
    let grid: Vec<_> = (0..spec.grid).map(|_| point(&mut rng, d)).collect();
    let smallness = pcf.smallness();
    let mut out = json!({
        "action": {
            "dim": d,
            "rank": k,
            "eigenvalues": (0..k).map(|g| (0..d).map(|i| action.eigenvalue(g, i)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "epsilon": action.epsilon(),
        },
        "smallness": {
            "epsilon": smallness.epsilon,
            "threshold": smallness.threshold,
            "twist_norm": smallness.twist_norm,
        },
        "kappa": cocycle.kappa(),
        "cocycle_residual": cocycle_residual,
        "decay": decay,
        "independence_max": independence,
        "cycles": { "count": spec.cycles, "max": cycle_max },
    });

    let tol = spec.cycle_tolerance;
    match pcf.transfer(&x0, &grid) {
        Err(PcfError::CycleObstruction { deviation }) if spec.expect_obstruction => {
            out["obstruction"] = json!({ "deviation": deviation });
            Ok(with_checks(out, &[("obstruction_raised", true), ("cycles_exceed_tolerance", cycle_max > tol)]))
        }
        Err(e) => Err(e.into()),
        Ok(_) if spec.expect_obstruction => Ok(with_checks(out, &[("obstruction_raised", false)])),
        Ok(t) => {
            let mut checks = vec![
                ("cycles_below_tolerance", cycle_max < tol),
                ("independence_below_tolerance", independence < tol),
                ("transfer_residual", t.residual < 1e-6),
                ("decay_matches_estimate", decay_ok),
            ];
            let mut transfer = json!({
                "residual": t.residual,
                "cycle_deviation": t.cycle_deviation,
                "base_point": vec_json(&x0),
                "constants": t.constants.iter().map(vec_json).collect::<Vec<_>>(),
            });
            if let CocycleKind::PlantedCoboundary { transfer: tmap, constants } = cocycle.kind() {
                let base = tmap.eval(&x0);
                let value_gap = grid
                    .iter()
                    .zip(&t.values)
                    .map(|(x, v)| (v - (tmap.eval(x) - &base)).norm())
                    .fold(0.0, f64::max);
                let constant_gap = (0..k)
                    .map(|g| {
                        let psi = cocycle.twist().psi(&Element::generator(k, g));
                        let expected = &constants[g] + &base - psi * &base;
                        (&t.constants[g] - expected).norm()
                    })
                    .fold(0.0, f64::max);
                transfer["planted_gap"] = json!(value_gap);
                transfer["planted_constant_gap"] = json!(constant_gap);
                checks.push(("planted_match", value_gap < tol && constant_gap < tol));
            }
            out["transfer"] = transfer;
            Ok(with_checks(out, &checks))
        }
    }
}

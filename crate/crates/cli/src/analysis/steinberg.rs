use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rigidkit_core::linalg::rational::{q, Rational};
use rigidkit_core::roots::{restricted_roots, Functional, RayKey, RestrictedRootSystem};
use rigidkit_core::steinberg::{
    commutator_relation, cone_generated, factor_unipotent, unipotent_inverse, verify_conjugation_lemmas,
    weyl_element_from_root, UnipotentElement, Word, WordContext,
};

use super::{with_checks, Inputs, Outcome};
use crate::error::AnalysisError;
use crate::json::to_qvector;
use crate::scenario::SteinbergSpec;

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn json(&self) -> Value {
        json!({ "checked": self.checked, "failures": self.failures })
    }
}

fn round_trips(ctx: &WordContext<'_>, phi: &[Functional], spec: &SteinbergSpec) -> Result<Tally, AnalysisError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut keys: Vec<RayKey> = phi.iter().map(Functional::ray_key).collect();
    let mut tally = Tally::default();
    for k in 0..spec.round_trips {
        keys.shuffle(&mut rng);
        let mut legs = Vec::new();
        for key in &keys {
            let c = q(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            let leg = ctx.unipotent_from_coords(key, &[c])?;
            if !leg.is_identity() {
                legs.push(leg);
            }
        }
        let original = Word::new(legs);
        let u = ctx.evaluate(&original);
        let mut order = keys.clone();
        order.shuffle(&mut rng);
        let w = factor_unipotent(ctx, &u, phi, &order)?;
        let back = factor_unipotent(ctx, &u, phi, &keys)?;
        tally.record(ctx.evaluate(&w) == u && back == original, || format!("round trip {k}"));
    }
    Ok(tally)
}

fn commutator_check(
    ctx: &WordContext<'_>,
    sys: &RestrictedRootSystem,
    x: &UnipotentElement,
    y: &UnipotentElement,
    tally: &mut Tally,
) -> Result<(), AnalysisError> {
    let (mu, nu) = (x.label().to_functional(), y.label().to_functional());
    let w = commutator_relation(ctx, x, y)?;
    let c = &(&(x.matrix() * y.matrix()) * &unipotent_inverse(x.matrix())) * &unipotent_inverse(y.matrix());
    let cone: Vec<RayKey> = cone_generated(&mu, &nu, sys)?.iter().map(Functional::ray_key).collect();
    let supported = w.labels().iter().all(|k| cone.contains(k));
    tally.record(ctx.evaluate(&w) == c && supported, || format!("commutator [{mu}, {nu}]"));
    Ok(())
}

fn sample(samples: &[Rational], i: usize) -> Rational {
    samples[i % samples.len()].clone()
}

pub fn verify(inputs: &Inputs<'_>) -> Outcome {
    let g = inputs.algebra()?;
    let cartan = inputs.cartan()?;
    let spec = inputs.scenario.steinberg.clone().unwrap_or_default();
    let samples: Vec<Rational> = to_qvector(&spec.samples);
    if samples.is_empty() || samples.iter().all(|s| s == &q(0, 1)) {
        return Err(AnalysisError::MissingInput("nonzero steinberg samples".into()));
    }
    let csys = cartan.system();
    let ctx = WordContext::new(g, csys)?;
    let phi: Vec<Functional> = cartan.ordered_roots().iter().filter(|r| cartan.height(r).is_positive()).cloned().collect();
    let trips = round_trips(&ctx, &phi, &spec)?;

    let roots: Vec<Functional> = cartan.ordered_roots().to_vec();
    let root_vector = |r: &Functional| g.matrix_of(&csys.root_space(r).expect("root").basis()[0]);
    let mut commutators = Tally::default();
    for (i, r) in roots.iter().enumerate() {
        for (j, s) in roots.iter().enumerate() {
            if i == j || r.negatively_proportional(s) {
                continue;
            }
            let x = ctx.unipotent_from_coords(&r.ray_key(), &[sample(&samples, i + j)])?;
            let y = ctx.unipotent_from_coords(&s.ray_key(), &[sample(&samples, i + j + 1)])?;
            commutator_check(&ctx, csys, &x, &y, &mut commutators)?;
        }
    }

    let mut reflections = Tally::default();
    for r in &roots {
        let w = weyl_element_from_root(&ctx, &root_vector(r)?)?;
        for s in &roots {
            let expected = cartan.reflect(r, s)?;
            reflections.record(w.root == *r && w.apply(s) == expected, || format!("reflection in {r} of {s}"));
        }
    }

    let mut out = json!({
        "positive_roots": phi.len(),
        "round_trips": trips.json(),
        "cartan_commutators": commutators.json(),
        "reflections": reflections.json(),
    });
    let mut checks = vec![
        ("round_trips", trips.failures.is_empty()),
        ("cartan_commutators", commutators.failures.is_empty()),
        ("reflections", reflections.failures.is_empty()),
    ];

    if let Ok(a) = inputs.abelian() {
        let asys = restricted_roots(g, a)?;
        let actx = WordContext::new(g, &asys)?;
        let keys = actx.class_keys();
        let mut class_commutators = Tally::default();
        for (i, k1) in keys.iter().enumerate() {
            for (j, k2) in keys.iter().enumerate() {
                let (mu, nu) = (k1.to_functional(), k2.to_functional());
                if i == j || mu.negatively_proportional(&nu) {
                    continue;
                }
                let coords = |k: &RayKey, shift: usize| -> Vec<Rational> {
                    let dim = actx.class(k).expect("class").root_space.dim();
                    (0..dim).map(|m| sample(&samples, shift + m)).collect()
                };
                let x = actx.unipotent_from_coords(k1, &coords(k1, i))?;
                let y = actx.unipotent_from_coords(k2, &coords(k2, j + 1))?;
                commutator_check(&actx, &asys, &x, &y, &mut class_commutators)?;
            }
        }
        let lemmas = verify_conjugation_lemmas(g, cartan, &asys, &samples)?;
        out["class_commutators"] = class_commutators.json();
        out["conjugation_lemmas"] = json!({
            "membership_checks": lemmas.membership_checks,
            "route_checks": lemmas.route_checks,
            "routed_roots": lemmas.routed_roots,
            "failures": lemmas.failures,
        });
        checks.push(("class_commutators", class_commutators.failures.is_empty()));
        checks.push(("conjugation_lemmas", lemmas.passed()));
    }
    Ok(with_checks(out, &checks))
}

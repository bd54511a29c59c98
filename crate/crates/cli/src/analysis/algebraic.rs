use num_traits::Zero;
use serde_json::{json, Value};

use rigidkit_core::central_ext::{build_universal_extension, classify_symplectic, invariant_two_forms};
use rigidkit_core::lie::semidirect;
use rigidkit_core::roots::{
    detection, find_detecting_conjugators, normalizer_quotient, restricted_roots, restricted_weights, rigidity_report,
    weyl_chambers, ActionType, ClassKind, RayKey, RestrictedRootSystem, RigidityInput,
};
use rigidkit_core::Error as CoreError;

use super::{with_checks, Inputs, Outcome};
use crate::error::AnalysisError;
use crate::json::{functional, matrix, vector};

pub(crate) fn ray_key(k: &RayKey) -> Value {
    Value::Array(
        k.0.iter()
            .map(|x| i64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v)))
            .collect(),
    )
}

pub(crate) fn system(inputs: &Inputs<'_>) -> Result<RestrictedRootSystem, AnalysisError> {
    let g = inputs.algebra()?;
    let a = inputs.abelian()?;
    let mut sys = restricted_roots(g, a)?;
    if let Some(rho) = inputs.representation()? {
        sys = sys.with_weights(restricted_weights(rho, a)?);
    }
    Ok(sys)
}

pub fn roots(inputs: &Inputs<'_>) -> Outcome {
    let sys = system(inputs)?;
    let roots: Vec<Value> = sys
        .roots()
        .iter()
        .map(|(f, s)| json!({ "functional": functional(f), "ray": ray_key(&f.ray_key()), "dim": s.dim() }))
        .collect();
    let classes: Vec<Value> = sys
        .coarse_classes()
        .iter()
        .map(|c| {
            json!({
                "key": ray_key(&c.key),
                "members": c.members.iter().map(functional).collect::<Vec<_>>(),
                "root_dim": c.root_space.dim(),
                "weight_dim": c.weight_space.as_ref().map(|w| w.dim()),
            })
        })
        .collect();
    let weights = sys.weights().map(|w| {
        w.spaces
            .iter()
            .map(|(f, s)| json!({ "functional": functional(f), "dim": s.dim() }))
            .collect::<Vec<_>>()
    });
    Ok(json!({
        "rank": sys.rank(),
        "algebra_dim": sys.algebra_dim(),
        "zero_space_dim": sys.zero_space().dim(),
        "complete": sys.is_complete(),
        "symmetric": sys.is_symmetric(),
        "roots": roots,
        "classes": classes,
        "weights": weights,
    }))
}

pub fn chambers(inputs: &Inputs<'_>) -> Outcome {
    let sys = system(inputs)?;
    let report = weyl_chambers(&sys);
    Ok(json!({
        "count": report.count(),
        "hyperplanes": report.hyperplanes.iter().map(functional).collect::<Vec<_>>(),
        "chambers": report
            .chambers
            .iter()
            .map(|c| json!({ "signs": c.signs, "witness": vector(&c.witness) }))
            .collect::<Vec<_>>(),
    }))
}

pub fn detect(inputs: &Inputs<'_>) -> Outcome {
    let g = inputs.algebra()?;
    let a = inputs.abelian()?;
    let cartan = inputs.cartan()?;
    let report = detection(g, cartan, a)?;
    let table: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "label": e.label,
                "root": functional(&e.root),
                "restriction": functional(&e.restriction),
                "detected": e.detected,
            })
        })
        .collect();
    let mut conjugators = Vec::new();
    for e in report.undetected() {
        let witnesses = match find_detecting_conjugators(cartan, &report, &e.root) {
            Ok(ws) => ws
                .iter()
                .map(|w| json!({ "via": cartan.root_label(g, &w.r1), "image": cartan.root_label(g, &w.image) }))
                .collect(),
            Err(CoreError::NoWitness) => Vec::new(),
            Err(err) => return Err(err.into()),
        };
        conjugators.push(json!({ "root": e.label, "witnesses": witnesses }));
    }
    let quotient = match normalizer_quotient(g, a) {
        Ok(perms) => json!(perms.iter().map(|p| p.cycle_notation()).collect::<Vec<_>>()),
        Err(CoreError::UnsupportedAmbient | CoreError::NotInCartan) => Value::Null,
        Err(err) => return Err(err.into()),
    };
    Ok(json!({
        "table": table,
        "all_detected": report.all_detected(),
        "undetected": report.undetected().iter().map(|e| e.label.clone()).collect::<Vec<_>>(),
        "conjugators": conjugators,
        "normalizer_quotient": quotient,
    }))
}

pub fn rigidity(inputs: &Inputs<'_>) -> Outcome {
    let input = RigidityInput {
        algebra: inputs.algebra()?,
        subalgebra: inputs.abelian()?,
        representation: inputs.representation()?,
        cartan: inputs.cartan_opt(),
        ideals: inputs.ideals()?,
    };
    let (r, _, _) = rigidity_report(&input)?;
    let classes: Vec<Value> = r
        .semisimple_on_classes
        .iter()
        .map(|c| {
            let kind = match c.kind {
                ClassKind::Root => "root",
                ClassKind::Weight => "weight",
            };
            json!({ "key": ray_key(&c.key), "kind": kind, "semisimple": c.semisimple })
        })
        .collect();
    Ok(json!({
        "genuinely_higher_rank": r.genuinely_higher_rank,
        "higher_rank_per_ideal": r.higher_rank_per_ideal,
        "all_roots_detected": r.all_roots_detected,
        "zero_weight_present": r.zero_weight_present,
        "symplectic_contribution": r.symplectic_contribution,
        "symplectic_dim": r.symplectic_dim,
        "action_type": match r.action_type {
            ActionType::I => "I",
            ActionType::II => "II",
        },
        "all_semisimple": r.semisimple_on_classes.iter().all(|c| c.semisimple),
        "semisimple_on_classes": classes,
    }))
}

pub fn extend(inputs: &Inputs<'_>) -> Outcome {
    let g = inputs.algebra()?;
    let rho = inputs.representation()?.ok_or_else(|| AnalysisError::MissingInput("representation".into()))?;
    let forms = invariant_two_forms(rho);
    let class = classify_symplectic(rho);
    let ext = build_universal_extension(g, rho)?;
    let check = ext.verify();
    let plain = semidirect(g, rho)?;
    let matches_semidirect = (ext.center_dim() == 0).then(|| ext.extended().structure_constants() == plain.structure_constants());
    let e = ext.extended();
    let start = g.dim() + rho.target_dim();
    let mut central_brackets = Vec::new();
    for i in g.dim()..start {
        for j in i + 1..start {
            let v = e.bracket_basis(i, j);
            if v[start..].iter().any(|x| !x.is_zero()) {
                central_brackets.push(json!({ "left": e.labels()[i], "right": e.labels()[j], "value": vector(&v[start..]) }));
            }
        }
    }
    let out = json!({
        "form_space_dim": forms.len(),
        "forms": forms.iter().map(|f| matrix(f.matrix())).collect::<Vec<_>>(),
        "symplectic": class.is_symplectic(),
        "base_dim": plain.dim(),
        "extended_dim": e.dim(),
        "center_dim": check.center_dim,
        "generated_center_dim": check.generated_center_dim,
        "jacobi_failure": check.jacobi_failure,
        "perfect": check.perfect,
        "e_spans_z": check.e_spans_z(),
        "matches_semidirect": matches_semidirect,
        "central_brackets": central_brackets,
    });
    Ok(with_checks(
        out,
        &[
            ("jacobi", check.jacobi_failure.is_none()),
            ("z_central", check.z_central),
            ("projection_homomorphism", check.projection_homomorphism),
            ("matches_semidirect", matches_semidirect != Some(false)),
        ],
    ))
}

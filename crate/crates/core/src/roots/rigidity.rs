//! Rigidity diagnostics assembled from roots, weights, detection and invariant forms.

use super::functional::{Functional, RayKey};
use super::system::{restricted_roots, restricted_weights, RestrictedRootSystem};
use super::weyl::{detection, CartanData, DetectionReport};
use crate::central_ext::classify_symplectic;
use crate::error::{Error, Result};
use crate::lie::{AbelianSubalgebra, LieAlgebra, Representation};
use crate::linalg::{jordan_chevalley, QMatrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionType {
    I,
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Root,
    Weight,
}

/// Whether every generator acts semisimply on one coarse class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSemisimplicity {
    pub key: RayKey,
    pub kind: ClassKind,
    pub semisimple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    /// Proxy: every declared ideal carries two non-proportional restricted roots.
    pub genuinely_higher_rank: bool,
    pub higher_rank_per_ideal: Vec<bool>,
    /// `None` when no Cartan data is available.
    pub all_roots_detected: Option<bool>,
    pub zero_weight_present: bool,
    pub symplectic_contribution: bool,
    pub symplectic_dim: usize,
    pub action_type: ActionType,
    pub semisimple_on_classes: Vec<ClassSemisimplicity>,
}

pub struct RigidityInput<'a> {
    pub algebra: &'a LieAlgebra,
    pub subalgebra: &'a AbelianSubalgebra,
    pub representation: Option<&'a Representation>,
    pub cartan: Option<&'a CartanData>,
    /// Declared simple ideals; empty means the whole algebra.
    pub ideals: &'a [Subspace],
}

/// Also returns the root system and detection table it was computed from.
pub fn rigidity_report(
    input: &RigidityInput<'_>,
) -> Result<(RigidityReport, RestrictedRootSystem, Option<DetectionReport>)> {
    let alg = input.algebra;
    let a = input.subalgebra;
    let mut sys = restricted_roots(alg, a)?;
    if let Some(rho) = input.representation {
        sys = sys.with_weights(restricted_weights(rho, a)?);
    }

    let whole = [Subspace::full(alg.dim())];
    let ideals = if input.ideals.is_empty() { &whole[..] } else { input.ideals };
    let mut higher_rank_per_ideal = Vec::new();
    for ideal in ideals {
        if ideal.ambient_dim() != alg.dim() || !alg.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let carried: Vec<&Functional> = sys
            .roots()
            .iter()
            .filter(|(_, s)| !s.intersection(ideal).is_zero())
            .map(|(f, _)| f)
            .collect();
        let two = carried
            .iter()
            .enumerate()
            .any(|(i, f)| carried[i + 1..].iter().any(|g| !f.proportional(g)));
        higher_rank_per_ideal.push(two);
    }

    let det = input.cartan.map(|c| detection(alg, c, a)).transpose()?;
    let zero_weight_present = sys.weights().is_some_and(|w| w.zero_weight_space().is_some());
    let symp = input.representation.map(classify_symplectic);
    let symplectic_contribution = symp.is_some_and(|s| s.is_symplectic());

    let mut semisimple_on_classes = Vec::new();
    for class in sys.coarse_classes() {
        if !class.root_space.is_zero() {
            let mats: Vec<QMatrix> = a.generators().iter().map(|x| alg.ad(x)).collect();
            semisimple_on_classes.push(ClassSemisimplicity {
                key: class.key.clone(),
                kind: ClassKind::Root,
                semisimple: acts_semisimply(&class.root_space, &mats)?,
            });
        }
        if let (Some(rho), Some(ws)) = (input.representation, &class.weight_space) {
            if !ws.is_zero() {
                let mats: Vec<QMatrix> = a.generators().iter().map(|x| rho.act(x)).collect();
                semisimple_on_classes.push(ClassSemisimplicity {
                    key: class.key.clone(),
                    kind: ClassKind::Weight,
                    semisimple: acts_semisimply(ws, &mats)?,
                });
            }
        }
    }

    let report = RigidityReport {
        genuinely_higher_rank: higher_rank_per_ideal.iter().all(|&b| b),
        higher_rank_per_ideal,
        all_roots_detected: det.as_ref().map(DetectionReport::all_detected),
        zero_weight_present,
        symplectic_contribution,
        symplectic_dim: symp.map_or(0, |s| s.dim()),
        action_type: if symplectic_contribution && zero_weight_present { ActionType::II } else { ActionType::I },
        semisimple_on_classes,
    };
    Ok((report, sys, det))
}

fn acts_semisimply(space: &Subspace, mats: &[QMatrix]) -> Result<bool> {
    for m in mats {
        let restricted = space.restrict(m)?;
        if !jordan_chevalley(&restricted)?.nilpotent.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::qvec;

    #[test]
    fn rank_one_is_not_higher_rank() {
        let g = LieAlgebra::sl(3).unwrap();
        let x = g.coordinates_of(&QMatrix::diagonal(&qvec(&[2, -1, -1]))).unwrap();
        let a = AbelianSubalgebra::new(&g, vec![x]).unwrap();
        let input = RigidityInput { algebra: &g, subalgebra: &a, representation: None, cartan: None, ideals: &[] };
        let (r, _, _) = rigidity_report(&input).unwrap();
        assert!(!r.genuinely_higher_rank);
        assert_eq!(r.action_type, ActionType::I);
    }
}

//! Matrix-level checks of conjugation by Weyl elements of detected roots.

use super::calculus::WordContext;
use super::unipotent::{exp_nilpotent, log_unipotent};
use super::weyl_element::{weyl_element_from_root, WeylElement};
use crate::error::Result;
use crate::lie::LieAlgebra;
use crate::linalg::rational::{fmt_rational, Rational};
use crate::linalg::QMatrix;
use crate::roots::{detection, find_detecting_conjugators, CartanData, Functional, RestrictedRootSystem};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjugationReport {
    pub membership_checks: usize,
    pub route_checks: usize,
    /// Undetected roots for which two routes were compared.
    pub routed_roots: Vec<String>,
    pub failures: Vec<String>,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Frame<'a> {
    alg: &'a LieAlgebra,
    cartan: &'a CartanData,
    asys: &'a RestrictedRootSystem,
    restriction: Vec<(Functional, Functional)>,
}

impl Frame<'_> {
    fn root_vector(&self, r: &Functional) -> QMatrix {
        let v = &self.cartan.system().root_space(r).expect("Cartan root").basis()[0];
        self.alg.matrix_of(v).expect("realization")
    }

    fn restrict(&self, r: &Functional) -> Option<&Functional> {
        self.restriction.iter().find(|(c, _)| c == r).map(|(_, f)| f)
    }

    /// Whether `m` lies in the A-coarse class of the restriction of Cartan root `r`.
    fn in_predicted_class(&self, r: &Functional, m: &QMatrix) -> bool {
        let Some(f) = self.restrict(r) else { return false };
        let Ok(x) = self.alg.coordinates_of(m) else { return false };
        if f.is_zero() {
            return self.asys.zero_space().contains(&x);
        }
        self.asys.class_of(f).is_some_and(|c| c.root_space.contains(&x))
    }

    fn label(&self, r: &Functional) -> String {
        self.cartan.root_label(self.alg, r)
    }
}

/// For detected `r1`, `r2` and sampled `v = exp(c X_{r2})`: `log(w v w^-1)` lies in the
/// root space of `w_{r1}(r2)` and in its A-class. For each undetected root, the first two
/// detecting conjugators give the same matrix after passing through their detected images.
pub fn verify_conjugation_lemmas(
    alg: &LieAlgebra,
    cartan: &CartanData,
    asys: &RestrictedRootSystem,
    samples: &[Rational],
) -> Result<ConjugationReport> {
    let det = detection(alg, cartan, asys.subalgebra())?;
    let ctx = WordContext::new(alg, cartan.system())?;
    let frame = Frame {
        alg,
        cartan,
        asys,
        restriction: det.entries.iter().map(|e| (e.root.clone(), e.restriction.clone())).collect(),
    };
    let mut weyl: Vec<(Functional, WeylElement)> = Vec::new();
    for e in det.entries.iter().filter(|e| e.detected) {
        weyl.push((e.root.clone(), weyl_element_from_root(&ctx, &frame.root_vector(&e.root))?));
    }
    let weyl_of = |r: &Functional| weyl.iter().find(|(s, _)| s == r).map(|(_, w)| w);

    let mut report = ConjugationReport::default();
    for (r1, w) in &weyl {
        let w_inv = w.inverse_matrix();
        for e2 in det.entries.iter().filter(|e| e.detected && !e.root.proportional(r1)) {
            let image = cartan.reflect(r1, &e2.root)?;
            if w.apply(&e2.root) != image {
                report.failures.push(format!("w_{} does not induce the reflection on {}", frame.label(r1), e2.label));
            }
            let x2 = frame.root_vector(&e2.root);
            for c in samples {
                report.membership_checks += 1;
                let v = exp_nilpotent(&x2.scale(c))?;
                let conj = log_unipotent(&(&(&w.matrix * &v) * &w_inv))?;
                let in_root = alg
                    .coordinates_of(&conj)
                    .is_ok_and(|x| cartan.system().root_space(&image).is_some_and(|s| s.contains(&x)));
                if !in_root || !frame.in_predicted_class(&image, &conj) {
                    report.failures.push(format!(
                        "conjugating {} by w_{} at c={} leaves the predicted class",
                        e2.label,
                        frame.label(r1),
                        fmt_rational(c)
                    ));
                }
            }
        }
    }

    for e in det.undetected() {
        let ws = find_detecting_conjugators(cartan, &det, &e.root)?;
        if ws.len() < 2 {
            report.failures.push(format!("fewer than two detecting conjugators for {}", e.label));
            continue;
        }
        report.routed_roots.push(e.label.clone());
        let xr = frame.root_vector(&e.root);
        for c in samples {
            report.route_checks += 1;
            let x = exp_nilpotent(&xr.scale(c))?;
            let mut back = Vec::new();
            for wit in &ws[..2] {
                let w = weyl_of(&wit.r1).expect("detected root has a Weyl element");
                let u = &(&w.inverse_matrix() * &x) * &w.matrix;
                let lu = log_unipotent(&u)?;
                let space = cartan.system().root_space(&wit.image).expect("root");
                let coords = alg.coordinates_of(&lu).ok().and_then(|v| space.coordinates(&v));
                let Some(k) = coords.filter(|_| frame.in_predicted_class(&wit.image, &lu)) else {
                    report.failures.push(format!(
                        "route via {} does not pass through the class of {}",
                        frame.label(&wit.r1),
                        frame.label(&wit.image)
                    ));
                    continue;
                };
                let rebuilt = exp_nilpotent(&alg.matrix_of(&space.combine(&k))?)?;
                back.push(&(&w.matrix * &rebuilt) * &w.inverse_matrix());
            }
            if back.len() == 2 && (back[0] != back[1] || back[0] != x) {
                report.failures.push(format!("routes disagree at {} for c={}", e.label, fmt_rational(c)));
            }
        }
    }
    Ok(report)
}

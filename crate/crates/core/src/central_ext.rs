//! Invariant two-forms and the universal Lie central extension of `g ⋉ Q^N`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{derived_and_perfect, semidirect, LieAlgebra, Representation};
use crate::linalg::rational::{dot, QVector, Rational};
use crate::linalg::{QMatrix, Subspace};

/// Antisymmetric bilinear form `omega(v, w) = v^T J w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm(QMatrix);

impl TwoForm {
    pub fn new(j: QMatrix) -> Result<Self> {
        if !j.is_square() || !(&j + &j.transpose()).is_zero() {
            return Err(Error::InvalidInput("two-form matrix must be antisymmetric".into()));
        }
        Ok(TwoForm(j))
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }

    pub fn eval(&self, v: &[Rational], w: &[Rational]) -> Rational {
        dot(v, &self.0.mul_vec(w))
    }

    /// `D^T J + J D = 0` for every action matrix.
    pub fn is_invariant(&self, rho: &Representation) -> bool {
        rho.action_matrices()
            .iter()
            .all(|d| (&(&d.transpose() * &self.0) + &(&self.0 * d)).is_zero())
    }
}

/// Basis of the invariant antisymmetric forms, from the exact null space of the
/// linear system `D^T J + J D = 0` in the unknowns `J_ab`, `a < b`.
pub fn invariant_two_forms(rho: &Representation) -> Vec<TwoForm> {
    let n = rho.target_dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    if pairs.is_empty() {
        return Vec::new();
    }
    let elementary = |a: usize, b: usize| &QMatrix::unit(n, a, b) - &QMatrix::unit(n, b, a);
    let solutions: Vec<QVector> = if rho.action_matrices().is_empty() {
        (0..pairs.len())
            .map(|k| (0..pairs.len()).map(|i| Rational::from_integer((i == k).into())).collect())
            .collect()
    } else {
        let mut cols = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            let j = elementary(a, b);
            let mut col = Vec::new();
            for d in rho.action_matrices() {
                col.extend((&(&d.transpose() * &j) + &(&j * d)).vectorize());
            }
            cols.push(col);
        }
        let rows = cols[0].len();
        QMatrix::from_columns(&cols, rows).kernel_basis()
    };
    solutions
        .iter()
        .map(|s| {
            let mut j = QMatrix::zeros(n, n);
            for (c, &(a, b)) in s.iter().zip(&pairs) {
                if !c.is_zero() {
                    j = &j + &elementary(a, b).scale(c);
                }
            }
            TwoForm(j)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymplecticClass {
    Symplectic { dim: usize },
    NonSymplectic,
}

impl SymplecticClass {
    pub fn dim(&self) -> usize {
        match self {
            SymplecticClass::Symplectic { dim } => *dim,
            SymplecticClass::NonSymplectic => 0,
        }
    }

    pub fn is_symplectic(&self) -> bool {
        matches!(self, SymplecticClass::Symplectic { .. })
    }
}

pub fn classify_symplectic(rho: &Representation) -> SymplecticClass {
    match invariant_two_forms(rho).len() {
        0 => SymplecticClass::NonSymplectic,
        dim => SymplecticClass::Symplectic { dim },
    }
}

/// `g ⊕ e ⊕ z` with `[V1, V2] = sum_k omega_k(V1, V2) z_k`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    g: LieAlgebra,
    rho: Representation,
    base: LieAlgebra,
    forms: Vec<TwoForm>,
    extended: LieAlgebra,
}

fn extension_constants(g: &LieAlgebra, rho: &Representation, forms: &[TwoForm]) -> Result<(LieAlgebra, Vec<Vec<QVector>>, Vec<String>)> {
    let base = semidirect(g, rho)?;
    let (d, n, m) = (g.dim(), rho.target_dim(), forms.len());
    let total = d + n + m;
    let mut c = vec![vec![vec![Rational::zero(); total]; total]; total];
    for i in 0..d + n {
        for j in 0..d + n {
            for (k, v) in base.bracket_basis(i, j).into_iter().enumerate() {
                c[i][j][k] = v;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for (k, w) in forms.iter().enumerate() {
                c[d + a][d + b][d + n + k] = w.matrix().get(a, b).clone();
            }
        }
    }
    let mut labels = base.labels().to_vec();
    labels.extend((1..=m).map(|k| format!("z{k}")));
    Ok((base, c, labels))
}

/// Builds the universal extension from a basis of invariant forms. With no invariant
/// forms the result has exactly the structure constants of `g ⋉ Q^N`.
pub fn build_universal_extension(g: &LieAlgebra, rho: &Representation) -> Result<CentralExtension> {
    let forms = invariant_two_forms(rho);
    let (base, c, labels) = extension_constants(g, rho, &forms)?;
    let extended = LieAlgebra::from_structure_constants(labels, c)?;
    Ok(CentralExtension { g: g.clone(), rho: rho.clone(), base, forms, extended })
}

/// Extension by a single user-supplied invariant form.
pub fn single_form_extension(g: &LieAlgebra, rho: &Representation, omega: &TwoForm) -> Result<LieAlgebra> {
    if !omega.is_invariant(rho) {
        return Err(Error::NotInvariantForm);
    }
    let (_, c, labels) = extension_constants(g, rho, std::slice::from_ref(omega))?;
    LieAlgebra::from_structure_constants(labels, c)
}

impl CentralExtension {
    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn forms(&self) -> &[TwoForm] {
        &self.forms
    }

    pub fn extended(&self) -> &LieAlgebra {
        &self.extended
    }

    pub fn center_dim(&self) -> usize {
        self.forms.len()
    }

    pub fn fiber_dim(&self) -> usize {
        self.rho.target_dim()
    }

    pub fn levi_dim(&self) -> usize {
        self.g.dim()
    }

    /// Replaces the extended algebra without validation, for negative controls.
    pub fn with_extended_unchecked(mut self, extended: LieAlgebra) -> Self {
        self.extended = extended;
        self
    }

    fn z_range(&self) -> std::ops::Range<usize> {
        let start = self.g.dim() + self.rho.target_dim();
        start..start + self.forms.len()
    }

    pub fn verify(&self) -> ExtensionReport {
        let e = &self.extended;
        let jacobi_failure = e.jacobi_violation().map(|(i, j, k)| {
            [i, j, k].map(|x| e.labels()[x].clone())
        });
        let zr = self.z_range();
        let z_central = zr.clone().all(|z| (0..e.dim()).all(|i| e.bracket_basis(z, i).iter().all(Zero::is_zero)));

        let bd = self.base.dim();
        let projection_homomorphism = (0..e.dim()).all(|i| {
            (0..e.dim()).all(|j| {
                let lhs = &e.bracket_basis(i, j)[..bd];
                let rhs = if i < bd && j < bd { self.base.bracket_basis(i, j) } else { vec![Rational::zero(); bd] };
                lhs == rhs.as_slice()
            })
        });

        let applicable = derived_and_perfect(&self.g).1 && !self.rho.has_trivial_block();
        let perfect = applicable.then(|| derived_and_perfect(e).1);

        // z-components generated by brackets of the part of e reached by g.
        let n = self.rho.target_dim();
        let reached: Vec<QVector> = self
            .rho
            .action_matrices()
            .iter()
            .flat_map(|d| (0..n).map(move |a| d.col(a)))
            .collect();
        let reached = Subspace::span(n, &reached);
        let mut zvecs = Vec::new();
        for v in reached.basis() {
            for w in reached.basis() {
                zvecs.push(self.forms.iter().map(|f| f.eval(v, w)).collect::<QVector>());
            }
        }
        let generated_center_dim = if self.forms.is_empty() { 0 } else { Subspace::span(self.forms.len(), &zvecs).dim() };

        ExtensionReport {
            jacobi_failure,
            z_central,
            projection_homomorphism,
            perfect,
            center_dim: self.forms.len(),
            generated_center_dim,
        }
    }

    /// Checks that `(X, V, z) -> (X, V, sum c_k z_k)`, with `omega = sum c_k omega_k`,
    /// is a Lie homomorphism onto the single-form extension.
    pub fn canonical_map_is_homomorphism(&self, omega: &TwoForm) -> Result<bool> {
        let target = single_form_extension(&self.g, &self.rho, omega)?;
        let cols: Vec<QVector> = self.forms.iter().map(|f| f.matrix().vectorize()).collect();
        let n = self.rho.target_dim();
        let coeffs = if cols.is_empty() {
            if omega.matrix().is_zero() { Vec::new() } else { return Err(Error::NotInvariantForm) }
        } else {
            QMatrix::from_columns(&cols, n * n)
                .solve(&omega.matrix().vectorize())
                .ok_or(Error::NotInvariantForm)?
        };
        let bd = self.base.dim();
        let phi = |x: &[Rational]| -> QVector {
            let mut y: QVector = x[..bd].to_vec();
            y.push(x[bd..].iter().zip(&coeffs).map(|(a, b)| a * b).sum());
            y
        };
        let e = &self.extended;
        for i in 0..e.dim() {
            for j in 0..e.dim() {
                let lhs = phi(&e.bracket_basis(i, j));
                let rhs = target.bracket(&phi(&e.basis_vector(i)), &phi(&e.basis_vector(j)));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Outcome of the five extension checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    /// Labels of the first basis triple violating Jacobi.
    pub jacobi_failure: Option<[String; 3]>,
    pub z_central: bool,
    pub projection_homomorphism: bool,
    /// Perfectness; `None` when `g` is not perfect or a declared block is trivial.
    pub perfect: Option<bool>,
    pub center_dim: usize,
    /// Dimension of the z-span of brackets within `[g, e]`.
    pub generated_center_dim: usize,
}

impl ExtensionReport {
    pub fn e_spans_z(&self) -> bool {
        self.generated_center_dim == self.center_dim
    }

    pub fn all_pass(&self) -> bool {
        self.jacobi_failure.is_none()
            && self.z_central
            && self.projection_homomorphism
            && self.perfect != Some(false)
            && self.e_spans_z()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::qi;

    #[test]
    fn area_form_for_sl2() {
        let g = LieAlgebra::sl(2).unwrap();
        let rho = Representation::standard(&g).unwrap();
        let forms = invariant_two_forms(&rho);
        assert_eq!(forms.len(), 1);
        assert!(forms[0].is_invariant(&rho));
    }

    #[test]
    fn sl3_standard_is_not_symplectic() {
        let g = LieAlgebra::sl(3).unwrap();
        let rho = Representation::standard(&g).unwrap();
        assert_eq!(classify_symplectic(&rho), SymplecticClass::NonSymplectic);
    }

    #[test]
    fn heisenberg_extension_spot_value() {
        let g = LieAlgebra::sl(2).unwrap();
        let rho = Representation::standard(&g).unwrap();
        let ext = build_universal_extension(&g, &rho).unwrap();
        assert_eq!(ext.extended().dim(), 6);
        let w = &ext.forms()[0];
        let expected = w.eval(&[qi(1), qi(0)], &[qi(0), qi(1)]);
        assert_eq!(ext.extended().structure_constant(3, 4, 5), expected);
        assert!(ext.verify().all_pass());
    }
}

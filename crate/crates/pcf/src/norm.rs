use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Norm `|v| = |B^{-1} v|_2` given by a basis `B` (columns).
#[derive(Debug, Clone)]
pub struct AdaptedNorm {
    basis: DMatrix<f64>,
    basis_inverse: DMatrix<f64>,
    /// Geometric scaling factor used (1 when no scaling was needed).
    pub lambda: f64,
}

impl AdaptedNorm {
    pub fn euclidean(n: usize) -> Self {
        AdaptedNorm { basis: DMatrix::identity(n, n), basis_inverse: DMatrix::identity(n, n), lambda: 1.0 }
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn vector_norm(&self, v: &DVector<f64>) -> f64 {
        (&self.basis_inverse * v).norm()
    }

    pub fn operator_norm(&self, s: &DMatrix<f64>) -> f64 {
        spectral_norm(&(&self.basis_inverse * s * &self.basis))
    }

    pub fn max_operator_norm(&self, family: &[DMatrix<f64>]) -> f64 {
        family.iter().map(|s| self.operator_norm(s)).fold(0.0, f64::max)
    }
}

pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Checks that every eigenvalue of `s` has modulus 1 within `tol`.
pub fn is_quasi_unipotent(s: &DMatrix<f64>, tol: f64) -> bool {
    s.complex_eigenvalues().iter().all(|z| (z.norm() - 1.0).abs() <= tol)
}

/// Norm under which every member of a commuting quasi-unipotent family has operator
/// norm at most `1 + eps`: a common real Schur basis rescaled by powers of `lambda`.
pub fn adapted_norm(family: &[DMatrix<f64>], eps: f64, modulus_tol: f64) -> Result<AdaptedNorm> {
    let Some(first) = family.first() else {
        return Err(Error::InvalidInput("empty family".into()));
    };
    let n = first.nrows();
    if family.iter().any(|s| s.nrows() != n || s.ncols() != n) {
        return Err(Error::DimensionMismatch("family members of different sizes".into()));
    }
    for (i, a) in family.iter().enumerate() {
        if !is_quasi_unipotent(a, modulus_tol) {
            return Err(Error::NotSlowFamily);
        }
        for b in &family[i + 1..] {
            let scale = 1.0 + spectral_norm(a) * spectral_norm(b);
            if spectral_norm(&(a * b - b * a)) > 1e-9 * scale {
                return Err(Error::NotSlowFamily);
            }
        }
    }
    let bound = 1.0 + eps;
    let euclid = AdaptedNorm::euclidean(n);
    if euclid.max_operator_norm(family) <= bound {
        return Ok(euclid);
    }
    let mut generic = DMatrix::zeros(n, n);
    let mut w = 1.0;
    for s in family {
        generic += s * w;
        w *= 0.37;
    }
    let (q, t) = generic.schur().unpack();
    let exponents = block_exponents(&t);
    let mut lambda: f64 = 0.5;
    while lambda > 1e-12 {
        let d = DMatrix::from_diagonal(&DVector::from_iterator(n, exponents.iter().map(|&e| lambda.powi(e))));
        let d_inv = DMatrix::from_diagonal(&DVector::from_iterator(n, exponents.iter().map(|&e| lambda.powi(-e))));
        let norm = AdaptedNorm { basis: &q * d_inv, basis_inverse: d * q.transpose(), lambda };
        if norm.max_operator_norm(family) <= bound {
            return Ok(norm);
        }
        lambda *= 0.5;
    }
    Err(Error::NotSlowFamily)
}

/// One exponent per diagonal block of a quasi-triangular matrix, decreasing from
/// `floor(b/2)` for `b` blocks, repeated inside 2x2 blocks.
fn block_exponents(t: &DMatrix<f64>) -> Vec<i32> {
    let n = t.nrows();
    let scale = 1e-12 * (1.0 + t.amax());
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        let size = if i + 1 < n && t[(i + 1, i)].abs() > scale { 2 } else { 1 };
        blocks.push(size);
        i += size;
    }
    let top = (blocks.len() / 2) as i32;
    blocks
        .iter()
        .enumerate()
        .flat_map(|(b, &size)| std::iter::repeat_n(top - b as i32, size))
        .collect()
}

//! Subspaces of `Q^n` in canonical reduced-row-echelon form.

use num_traits::Zero;

use super::matrix::QMatrix;
use super::rational::{is_zero_vec, zero_vec, QVector, Rational};
use crate::error::{Error, Result};

/// A linear subspace stored by its reduced row echelon basis.
///
/// Because the basis is canonical, two subspaces are equal exactly when their
/// stored data is equal, so `Subspace` can be used as a map key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<QVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, &QMatrix::identity(ambient_dim).to_rows())
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[QVector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient_dim), "vector length mismatch");
        let m = QMatrix::from_rows(vectors.to_vec()).expect("uniform rows");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient_dim, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<QVector> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: QVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = self.combine(&coords);
        (rebuilt.as_slice() == v).then_some(coords)
    }

    /// `sum_i coords[i] * basis[i]`.
    pub fn combine(&self, coords: &[Rational]) -> QVector {
        let mut out = zero_vec(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(v) || self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    pub fn sum_all<'a, I: IntoIterator<Item = &'a Subspace>>(ambient_dim: usize, parts: I) -> Subspace {
        let vs: Vec<QVector> = parts.into_iter().flat_map(|s| s.basis.iter().cloned()).collect();
        Subspace::span(ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve sum a_i u_i - sum b_j w_j = 0.
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        let mut cols: Vec<QVector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = QMatrix::from_columns(&cols, self.ambient_dim);
        let vs: Vec<QVector> = m.kernel_basis().iter().map(|c| self.combine(&c[..k])).collect();
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Matrix of `m` restricted to this (assumed `m`-invariant) subspace, in the
    /// canonical basis. Column `j` holds the coordinates of `m * basis[j]`.
    pub fn restrict(&self, m: &QMatrix) -> Result<QMatrix> {
        let cols: Result<Vec<QVector>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&m.mul_vec(b)).ok_or_else(|| {
                Error::DimensionMismatch("subspace is not invariant under the matrix".into())
            }))
            .collect();
        Ok(QMatrix::from_columns(&cols?, self.dim()))
    }

    pub fn is_invariant_under(&self, m: &QMatrix) -> bool {
        self.basis.iter().all(|b| self.contains(&m.mul_vec(b)))
    }

    /// Lifts a subspace of `Q^dim` given in this subspace's coordinates back to the ambient space.
    pub fn lift(&self, inner: &Subspace) -> Subspace {
        let vs: Vec<QVector> = inner.basis().iter().map(|c| self.combine(c)).collect();
        Subspace::span(self.ambient_dim, &vs)
    }
}

/// Exact null space of `m`.
pub fn kernel(m: &QMatrix) -> Subspace {
    Subspace::span(m.cols(), &m.kernel_basis())
}

/// Whether the parts form a direct-sum decomposition of the whole ambient space.
pub fn is_direct_sum_decomposition(ambient_dim: usize, parts: &[Subspace]) -> bool {
    let total: usize = parts.iter().map(Subspace::dim).sum();
    total == ambient_dim && Subspace::sum_all(ambient_dim, parts).dim() == ambient_dim
}

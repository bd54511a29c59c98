use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::rational::{is_zero_vec, zero_vec, QVector, Rational};
use crate::linalg::{QMatrix, Subspace};

/// Default cap on the dimension reached by bracket closure.
pub const DEFAULT_DIMENSION_CAP: usize = 128;

type SparseVec = Vec<(usize, Rational)>;

fn sparsify(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Finite-dimensional Lie algebra given by exact structure constants,
/// `[b_i, b_j] = sum_k c[i][j][k] b_k`, optionally with a faithful matrix
/// realization of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    brackets: Vec<Vec<SparseVec>>,
    realization: Option<Realization>,
}

/// Basis matrices plus a fast left inverse used to read off coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    matrices: Vec<QMatrix>,
    pivots: Vec<usize>,
    pivot_inverse: QMatrix,
}

impl Realization {
    fn new(matrices: Vec<QMatrix>) -> Result<Self> {
        let rows: Vec<QVector> = matrices.iter().map(QMatrix::vectorize).collect();
        let b = QMatrix::from_rows(rows)?;
        let (_, pivots) = b.rref();
        if pivots.len() != matrices.len() {
            return Err(Error::InvalidInput("realization matrices are linearly dependent".into()));
        }
        let mut sub = QMatrix::zeros(matrices.len(), matrices.len());
        for (i, m) in matrices.iter().enumerate() {
            let v = m.entries();
            for (j, &p) in pivots.iter().enumerate() {
                sub.set(i, j, v[p].clone());
            }
        }
        Ok(Realization { matrices, pivots, pivot_inverse: sub.inverse()? })
    }

    pub fn matrices(&self) -> &[QMatrix] {
        &self.matrices
    }

    pub fn matrix_size(&self) -> usize {
        self.matrices.first().map_or(0, QMatrix::rows)
    }

    /// Coordinates of a matrix in the realization basis, if it lies in the span.
    pub fn coordinates(&self, m: &QMatrix) -> Option<QVector> {
        let v = m.entries();
        let picked: QVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        // c B_P = v_P  =>  c = v_P B_P^{-1}
        let c = self.pivot_inverse.transpose().mul_vec(&picked);
        (self.matrix(&c) == *m).then_some(c)
    }

    pub fn matrix(&self, coords: &[Rational]) -> QMatrix {
        let n = self.matrix_size();
        let mut acc = QMatrix::zeros(n, n);
        for (c, m) in coords.iter().zip(&self.matrices) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        acc
    }
}

/// Incremental row echelon form used for span membership during closure.
struct Echelon {
    rows: Vec<(usize, QVector)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &[Rational]) -> QVector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent; returns whether it was added.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        let r: QVector = r.iter().map(|x| x * &inv).collect();
        self.rows.push((p, r));
        true
    }
}

impl LieAlgebra {
    /// Builds an algebra from dense structure constants, checking antisymmetry and Jacobi.
    pub fn from_structure_constants(labels: Vec<String>, c: Vec<Vec<QVector>>) -> Result<Self> {
        let d = labels.len();
        if c.len() != d || c.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return Err(Error::DimensionMismatch("structure constants must be d x d x d".into()));
        }
        let brackets = c.iter().map(|row| row.iter().map(|v| sparsify(v)).collect()).collect();
        let alg = LieAlgebra { labels, brackets, realization: None };
        alg.validate()?;
        Ok(alg)
    }

    /// Bracket closure of square matrices, with the default dimension cap.
    pub fn build_from_matrices(generators: &[QMatrix]) -> Result<Self> {
        Self::build_from_matrices_capped(generators, DEFAULT_DIMENSION_CAP)
    }

    /// Bracket closure of square matrices.
    ///
    /// The basis starts with the independent generators in input order, followed by
    /// new brackets in discovery order, so rebuilding from the realization of the
    /// result reproduces identical structure constants.
    pub fn build_from_matrices_capped(generators: &[QMatrix], cap: usize) -> Result<Self> {
        let n = generators.first().map_or(0, QMatrix::rows);
        if generators.iter().any(|g| !g.is_square() || g.rows() != n) {
            return Err(Error::DimensionMismatch("generators must be square and of equal size".into()));
        }
        let mut ech = Echelon::new();
        let mut basis: Vec<QMatrix> = Vec::new();
        for g in generators {
            if ech.insert(&g.vectorize()) {
                basis.push(g.clone());
                if basis.len() > cap {
                    return Err(Error::ClosureExplosion { cap });
                }
            }
        }
        let mut i = 0;
        while i < basis.len() {
            for j in 0..i {
                let br = basis[j].commutator(&basis[i]);
                if ech.insert(&br.vectorize()) {
                    basis.push(br);
                    if basis.len() > cap {
                        return Err(Error::ClosureExplosion { cap });
                    }
                }
            }
            i += 1;
        }
        let labels = (0..basis.len()).map(|k| format!("b{k}")).collect();
        Self::from_basis_matrices(basis, labels)
    }

    /// Structure constants of a subalgebra spanned by independent, bracket-closed matrices.
    pub fn from_basis_matrices(basis: Vec<QMatrix>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != basis.len() {
            return Err(Error::DimensionMismatch("one label per basis matrix".into()));
        }
        let real = Realization::new(basis)?;
        let d = real.matrices.len();
        let mut brackets = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in (i + 1)..d {
                let br = real.matrices[i].commutator(&real.matrices[j]);
                let c = real.coordinates(&br).ok_or(Error::NotInAlgebra)?;
                let neg: QVector = c.iter().map(|x| -x).collect();
                brackets[i][j] = sparsify(&c);
                brackets[j][i] = sparsify(&neg);
            }
        }
        let alg = LieAlgebra { labels, brackets, realization: Some(real) };
        alg.validate()?;
        Ok(alg)
    }

    /// `sl(n)` with basis `H1..H(n-1)` (`H_k = E_kk - E_(k+1)(k+1)`) followed by
    /// the off-diagonal `E_ij` in lexicographic order (one-based labels).
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("sl(n) needs n >= 2".into()));
        }
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for k in 0..n - 1 {
            basis.push(&QMatrix::unit(n, k, k) - &QMatrix::unit(n, k + 1, k + 1));
            labels.push(format!("H{}", k + 1));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    basis.push(QMatrix::unit(n, i, j));
                    labels.push(format!("E{}{}", i + 1, j + 1));
                }
            }
        }
        Self::from_basis_matrices(basis, labels)
    }

    fn validate(&self) -> Result<()> {
        if let Some((i, j)) = self.antisymmetry_violation() {
            return Err(Error::InvalidStructure(format!("antisymmetry at ({i},{j})")));
        }
        if let Some((i, j, k)) = self.jacobi_violation() {
            return Err(Error::InvalidStructure(format!("Jacobi identity at ({i},{j},{k})")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.brackets[i][j]
            .iter()
            .find(|(m, _)| *m == k)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// Dense `c[i][j][k]` table.
    pub fn structure_constants(&self) -> Vec<Vec<QVector>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.bracket_basis(i, j)).collect())
            .collect()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> QVector {
        let mut v = zero_vec(self.dim());
        for (k, c) in &self.brackets[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> QVector {
        let d = self.dim();
        let mut out = zero_vec(d);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = xi * yj;
                for (k, c) in &self.brackets[i][j] {
                    out[*k] += &f * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)` in the basis: column `j` is `[x, b_j]`.
    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..d {
                for (k, c) in &self.brackets[i][j] {
                    let v = m.get(*k, j) + xi * c;
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> QVector {
        let mut v = zero_vec(self.dim());
        v[i] = Rational::from_integer(1.into());
        v
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                let a = self.bracket_basis(i, j);
                let b = self.bracket_basis(j, i);
                if a.iter().zip(&b).any(|(x, y)| x != &-y) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis triple `i < j < k` violating the Jacobi identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let mut acc = zero_vec(d);
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    for x in acc.iter_mut() {
                        x.set_zero();
                    }
                    self.accumulate_double(&mut acc, i, j, k);
                    self.accumulate_double(&mut acc, j, k, i);
                    self.accumulate_double(&mut acc, k, i, j);
                    if !is_zero_vec(&acc) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `acc += [[b_i, b_j], b_k]`.
    fn accumulate_double(&self, acc: &mut [Rational], i: usize, j: usize, k: usize) {
        for (m, c) in &self.brackets[i][j] {
            for (l, e) in &self.brackets[*m][k] {
                acc[*l] += c * e;
            }
        }
    }

    /// Coordinates of a matrix in the basis, via the realization.
    pub fn coordinates_of(&self, m: &QMatrix) -> Result<QVector> {
        let real = self.realization.as_ref().ok_or(Error::NotInAlgebra)?;
        real.coordinates(m).ok_or(Error::NotInAlgebra)
    }

    pub fn matrix_of(&self, coords: &[Rational]) -> Result<QMatrix> {
        let real = self.realization.as_ref().ok_or(Error::NotInAlgebra)?;
        Ok(real.matrix(coords))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        (0..self.dim()).all(|i| {
            s.basis().iter().all(|v| s.contains(&self.bracket(&self.basis_vector(i), v)))
        })
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        b.iter().enumerate().all(|(i, x)| b[i + 1..].iter().all(|y| s.contains(&self.bracket(x, y))))
    }

    /// Replaces the labels, keeping the structure.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch("one label per basis element".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Structure-constant-only copy with one entry overwritten, skipping validation.
    /// Meant for negative controls in verification code.
    pub fn corrupted(&self, i: usize, j: usize, k: usize, value: Rational) -> Self {
        let mut out = self.clone();
        let row = &mut out.brackets[i][j];
        row.retain(|(m, _)| *m != k);
        if !value.is_zero() {
            row.push((k, value));
            row.sort_by_key(|(m, _)| *m);
        }
        out.realization = None;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{qi, qvec};

    fn sl2_triple() -> Vec<QMatrix> {
        vec![
            QMatrix::from_i64(&[&[0, 1], &[0, 0]]),
            QMatrix::from_i64(&[&[1, 0], &[0, -1]]),
            QMatrix::from_i64(&[&[0, 0], &[1, 0]]),
        ]
    }

    #[test]
    fn sl2_relations() {
        let l = LieAlgebra::build_from_matrices(&sl2_triple()).unwrap();
        assert_eq!(l.dim(), 3);
        // [h, e] = 2e with e = b0, h = b1
        assert_eq!(l.bracket_basis(1, 0), qvec(&[2, 0, 0]));
        assert_eq!(l.bracket_basis(0, 2), qvec(&[0, 1, 0]));
    }

    #[test]
    fn closure_of_two_generators_is_sl2() {
        let gens = vec![QMatrix::from_i64(&[&[0, 1], &[0, 0]]), QMatrix::from_i64(&[&[0, 0], &[1, 0]])];
        assert_eq!(LieAlgebra::build_from_matrices(&gens).unwrap().dim(), 3);
    }

    #[test]
    fn closure_cap() {
        let gens = vec![QMatrix::from_i64(&[&[0, 1], &[0, 0]]), QMatrix::from_i64(&[&[0, 0], &[1, 0]])];
        assert_eq!(
            LieAlgebra::build_from_matrices_capped(&gens, 2),
            Err(Error::ClosureExplosion { cap: 2 })
        );
    }

    #[test]
    fn corrupted_constant_breaks_jacobi() {
        let l = LieAlgebra::sl(2).unwrap();
        let bad = l.corrupted(0, 1, 1, qi(5));
        assert!(bad.antisymmetry_violation().is_some());
        let c = bad.structure_constants();
        assert!(LieAlgebra::from_structure_constants(l.labels().to_vec(), c).is_err());
    }

    #[test]
    fn coordinates_via_realization() {
        let l = LieAlgebra::sl(3).unwrap();
        let m = QMatrix::diagonal(&qvec(&[1, 1, -2]));
        let c = l.coordinates_of(&m).unwrap();
        assert_eq!(l.matrix_of(&c).unwrap(), m);
        assert!(l.coordinates_of(&QMatrix::identity(3)).is_err());
    }
}

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("integer matrix must be square and nonempty".into()));
        }
        Ok(IntMatrix { n, data: rows.concat() })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s: i128 = 0;
                for k in 0..n {
                    s += i128::from(self.get(i, k)) * i128::from(other.get(k, j));
                }
                data[i * n + j] = i64::try_from(s).map_err(|_| Error::InvalidInput("integer overflow".into()))?;
            }
        }
        Ok(IntMatrix { n, data })
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> i128 {
        let n = self.n;
        let mut m: Vec<Vec<i128>> = self.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    /// Inverse of a unimodular matrix via the adjugate.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let d = self.det();
        if d != 1 && d != -1 {
            return Err(Error::InvalidAction(format!("determinant {d} is not +-1")));
        }
        let n = self.n;
        if n == 1 {
            return Ok(IntMatrix { n, data: vec![self.data[0] * d as i64] });
        }
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| self.get(r, c)).collect())
                    .collect();
                let cof = IntMatrix { n: n - 1, data: minor.concat() }.det();
                let s = if (i + j) % 2 == 0 { cof } else { -cof };
                data[i * n + j] = i64::try_from(s * d).map_err(|_| Error::InvalidInput("integer overflow".into()))?;
            }
        }
        Ok(IntMatrix { n, data })
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j) as f64)
    }
}

/// Element of Z^k as an exponent vector over the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<i64>);

impl Element {
    pub fn generator(k: usize, i: usize) -> Self {
        let mut e = vec![0; k];
        e[i] = 1;
        Element(e)
    }

    pub fn inverse(&self) -> Self {
        Element(self.0.iter().map(|e| -e).collect())
    }

    pub fn add(&self, other: &Element) -> Self {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, n: i64) -> Self {
        Element(self.0.iter().map(|e| e * n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Canonical word: letters `(generator, +-1)`, rightmost acts first.
    pub fn word(&self) -> Vec<(usize, i64)> {
        let mut w = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e.unsigned_abs() {
                w.push((i, e.signum()));
            }
        }
        w
    }
}

/// Z^k acting on the d-torus by commuting unimodular integer matrices.
#[derive(Debug, Clone)]
pub struct ToralAbelianAction {
    dim: usize,
    generators: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
    float: Vec<DMatrix<f64>>,
    float_inv: Vec<DMatrix<f64>>,
    lines: Vec<DVector<f64>>,
    line_basis_inverse: DMatrix<f64>,
    eigenvalues: Vec<Vec<f64>>,
}

impl ToralAbelianAction {
    pub fn new(generators: Vec<IntMatrix>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidAction("no generators".into()));
        };
        let dim = first.dim();
        if generators.iter().any(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch("generators of different sizes".into()));
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.mul(b)? != b.mul(a)? {
                    return Err(Error::InvalidAction("generators do not commute".into()));
                }
            }
        }
        let inverses = generators.iter().map(IntMatrix::unimodular_inverse).collect::<Result<Vec<_>>>()?;
        let float: Vec<DMatrix<f64>> = generators.iter().map(IntMatrix::to_f64).collect();
        let float_inv: Vec<DMatrix<f64>> = inverses.iter().map(IntMatrix::to_f64).collect();
        let lines = common_eigenlines(&float)?;
        let v = DMatrix::from_columns(&lines);
        let line_basis_inverse = v.try_inverse().ok_or(Error::ComplexSpectrum)?;
        let eigenvalues: Vec<Vec<f64>> = float
            .iter()
            .map(|m| lines.iter().map(|l| (m * l).dot(l)).collect())
            .collect();
        for (m, vals) in float.iter().zip(&eigenvalues) {
            for (l, &lambda) in lines.iter().zip(vals) {
                if (m * l - l * lambda).norm() > 1e-8 * (1.0 + lambda.abs()) {
                    return Err(Error::ComplexSpectrum);
                }
            }
        }
        let action = ToralAbelianAction { dim, generators, inverses, float, float_inv, lines, line_basis_inverse, eigenvalues };
        if !(0..action.rank()).any(|g| action.eigenvalues[g].iter().all(|l| (l.abs() - 1.0).abs() > 1e-12)) {
            return Err(Error::InvalidAction("no hyperbolic generator".into()));
        }
        Ok(action)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    /// Unit eigenlines shared by all generators.
    pub fn lines(&self) -> &[DVector<f64>] {
        &self.lines
    }

    /// Eigenvalue of generator `g` on line `i`.
    pub fn eigenvalue(&self, g: usize, i: usize) -> f64 {
        self.eigenvalues[g][i]
    }

    pub fn element_eigenvalue(&self, a: &Element, i: usize) -> f64 {
        a.0.iter().enumerate().map(|(g, &e)| self.eigenvalues[g][i].powi(e as i32)).product()
    }

    pub fn element_matrix(&self, a: &Element) -> Result<IntMatrix> {
        let mut m = IntMatrix::identity(self.dim);
        for (g, s) in a.word() {
            let f = if s > 0 { &self.generators[g] } else { &self.inverses[g] };
            m = f.mul(&m)?;
        }
        Ok(m)
    }

    /// Action of a single letter on a point of the cover.
    pub fn apply_letter(&self, g: usize, sign: i64, x: &DVector<f64>) -> DVector<f64> {
        if sign > 0 {
            &self.float[g] * x
        } else {
            &self.float_inv[g] * x
        }
    }

    pub fn apply(&self, a: &Element, x: &DVector<f64>) -> DVector<f64> {
        a.word().into_iter().fold(x.clone(), |p, (g, s)| self.apply_letter(g, s, &p))
    }

    /// Coordinates of a displacement in the eigenline basis.
    pub fn line_coordinates(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.line_basis_inverse * v
    }

    /// Contraction coefficient (largest stable modulus) and expansion coefficient
    /// (smallest unstable modulus) of generator `g`.
    pub fn contraction_expansion(&self, g: usize) -> (Option<f64>, Option<f64>) {
        let mods = self.eigenvalues[g].iter().map(|l| l.abs());
        let plus = mods.clone().filter(|&m| m < 1.0 - 1e-12).fold(None, |acc: Option<f64>, m| Some(acc.map_or(m, |a| a.max(m))));
        let minus = mods.filter(|&m| m > 1.0 + 1e-12).fold(None, |acc: Option<f64>, m| Some(acc.map_or(m, |a| a.min(m))));
        (plus, minus)
    }

    /// `min_a min(lambda_+(a)^{-1/2}, lambda_-(a)^{1/2})` over the supplied generators.
    pub fn epsilon(&self) -> f64 {
        (0..self.rank())
            .flat_map(|g| {
                let (p, m) = self.contraction_expansion(g);
                [p.map(|p| p.powf(-0.5)), m.map(f64::sqrt)]
            })
            .flatten()
            .fold(f64::INFINITY, f64::min)
    }

    /// First generator that is not neutral on line `i`, inverted if it expands there,
    /// so that the returned element contracts the line.
    pub fn contracting_generator(&self, i: usize) -> Result<Element> {
        let k = self.rank();
        for g in 0..k {
            let m = self.eigenvalues[g][i].abs();
            if m < 1.0 - 1e-12 {
                return Ok(Element::generator(k, g));
            }
            if m > 1.0 + 1e-12 {
                return Ok(Element::generator(k, g).inverse());
            }
        }
        Err(Error::NonRegular { line: i })
    }
}

fn real_eigenvalues(m: &DMatrix<f64>) -> Option<Vec<f64>> {
    let vals = m.complex_eigenvalues();
    if vals.iter().any(|z| z.im.abs() > 1e-9) {
        return None;
    }
    let mut v: Vec<f64> = vals.iter().map(|z| z.re).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Some(v)
}

fn null_vector(m: &DMatrix<f64>) -> DVector<f64> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    let mut v: DVector<f64> = v_t.row(idx).transpose();
    if v[v.iamax()] < 0.0 {
        v = -v;
    }
    v.normalize()
}

/// Eigenlines of the first generator (or small integer combination) with simple real spectrum.
fn common_eigenlines(gens: &[DMatrix<f64>]) -> Result<Vec<DVector<f64>>> {
    let n = gens[0].nrows();
    let mut candidates: Vec<DMatrix<f64>> = gens.to_vec();
    for c in 1..=3 {
        let mut m = DMatrix::zeros(n, n);
        for (i, g) in gens.iter().enumerate() {
            m += g * ((c * (i + 1)) as f64);
        }
        candidates.push(m);
    }
    for m in &candidates {
        let Some(vals) = real_eigenvalues(m) else { continue };
        let simple = vals.windows(2).all(|w| (w[0] - w[1]).abs() > 1e-8);
        if simple {
            let id = DMatrix::<f64>::identity(n, n);
            return Ok(vals.iter().map(|&l| null_vector(&(m - &id * l))).collect());
        }
    }
    Err(Error::ComplexSpectrum)
}

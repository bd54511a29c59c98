//! Characteristic polynomials, rational spectra, generalized eigenspaces and
//! the additive Jordan–Chevalley decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::QMatrix;
use super::rational::{denominator_lcm, QVector, Rational};
use super::subspace::{kernel, Subspace};
use crate::error::{Error, Result};

/// Largest integer root bound we are willing to scan.
const ROOT_SCAN_LIMIT: u64 = 1 << 22;

/// Coefficients of `det(x I - A)` for an integer matrix, highest degree first.
///
/// Division-free Berkowitz recursion over the leading principal submatrices.
pub fn charpoly_integer(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut coeffs = vec![BigInt::one(), -a[0][0].clone()];
    for r in 1..n {
        // Toeplitz column: 1, -a_rr, -R C, -R M C, ..., -R M^{r-1} C.
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a[r][r].clone());
        let mut v: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            let rc: BigInt = (0..r).map(|j| &a[r][j] * &v[j]).sum();
            t.push(-rc);
            if k + 1 < r {
                v = (0..r)
                    .map(|i| (0..r).map(|j| &a[i][j] * &v[j]).sum())
                    .collect();
            }
        }
        let next: Vec<BigInt> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .filter(|&j| i - j < t.len())
                    .map(|j| &t[i - j] * &coeffs[j])
                    .sum()
            })
            .collect();
        coeffs = next;
    }
    coeffs
}

/// Characteristic polynomial of a rational matrix, highest degree first.
pub fn charpoly(m: &QMatrix) -> Vec<Rational> {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let d = denominator_lcm(m.entries());
    let ints = integer_rows(m, &d);
    let c = charpoly_integer(&ints);
    // det(xI - M) = d^{-n} det((dx) I - dM).
    let dq = Rational::from_integer(d);
    let mut scale = Rational::one();
    c.into_iter()
        .map(|ci| {
            let out = Rational::from_integer(ci) / &scale;
            scale = &scale * &dq;
            out
        })
        .collect()
}

fn integer_rows(m: &QMatrix, d: &BigInt) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| (x * d).to_integer()).collect())
        .collect()
}

fn horner(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().fold(BigInt::zero(), |acc, ci| acc * x + ci)
}

/// Synthetic division by `(x - r)`; returns the quotient if the remainder vanishes.
fn deflate(c: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let mut q = Vec::with_capacity(c.len() - 1);
    let mut acc = BigInt::zero();
    for ci in &c[..c.len() - 1] {
        acc = acc * r + ci;
        q.push(acc.clone());
    }
    let rem = acc * r + &c[c.len() - 1];
    rem.is_zero().then_some(q)
}

/// Fujiwara bound on root moduli of a monic polynomial.
fn root_bound(c: &[BigInt]) -> u64 {
    let n = c.len() - 1;
    let mut best = 0.0f64;
    for k in 1..=n {
        let a = &c[k];
        if a.is_zero() {
            continue;
        }
        let log = bigint_log2(a);
        let mut root = (log / k as f64).exp2();
        if k == n {
            root /= 2.0;
        }
        best = best.max(root);
    }
    let b = (2.0 * best).ceil() + 1.0;
    if b.is_finite() && b < u64::MAX as f64 {
        b as u64
    } else {
        u64::MAX
    }
}

fn bigint_log2(a: &BigInt) -> f64 {
    let bits = a.bits();
    if bits <= 60 {
        a.abs().to_f64().unwrap_or(1.0).log2()
    } else {
        let shifted: BigInt = a.abs() >> (bits - 53);
        shifted.to_f64().unwrap_or(1.0).log2() + (bits - 53) as f64
    }
}

/// Integer roots with multiplicity of a monic integer polynomial that splits
/// over the integers. Errors if a nonlinear factor remains.
fn integer_roots(mut c: Vec<BigInt>) -> Result<Vec<(BigInt, usize)>> {
    let mut out = Vec::new();
    let mut zero_mult = 0;
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((BigInt::zero(), zero_mult));
    }
    if c.len() == 1 {
        return Ok(out);
    }
    let bound = root_bound(&c);
    if bound > ROOT_SCAN_LIMIT {
        return Err(Error::RootBoundExceeded { bound });
    }
    let mut r: i64 = 1;
    while c.len() > 1 && (r as u64) <= bound {
        for cand in [BigInt::from(r), BigInt::from(-r)] {
            let constant = c.last().expect("nonempty");
            if !constant.is_multiple_of(&cand) {
                continue;
            }
            if !horner(&c, &cand).is_zero() {
                continue;
            }
            let mut mult = 0;
            while c.len() > 1 {
                match deflate(&c, &cand) {
                    Some(qd) => {
                        c = qd;
                        mult += 1;
                    }
                    None => break,
                }
            }
            out.push((cand, mult));
        }
        r += 1;
    }
    if c.len() > 1 {
        return Err(Error::RationalSpectrumRequired { degree: c.len() - 1 });
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Eigenvalues with algebraic multiplicities, sorted ascending.
///
/// Fails with [`Error::RationalSpectrumRequired`] when the characteristic
/// polynomial does not split over the rationals (for instance when the matrix
/// has a rotational part).
pub fn rational_spectrum(m: &QMatrix) -> Result<Vec<(Rational, usize)>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("spectrum of a non-square matrix".into()));
    }
    let d = denominator_lcm(m.entries());
    let roots = integer_roots(charpoly_integer(&integer_rows(m, &d)))?;
    Ok(roots
        .into_iter()
        .map(|(r, k)| (Rational::new(r, d.clone()), k))
        .collect())
}

/// `ker (M - lambda)^mult`, grown power by power.
pub fn generalized_eigenspace(m: &QMatrix, lambda: &Rational, mult: usize) -> Subspace {
    let n = m.rows();
    let shifted = m - &QMatrix::identity(n).scale(lambda);
    let mut power = shifted.clone();
    let mut k = kernel(&power);
    let mut steps = 1;
    while k.dim() < mult && steps < n {
        power = &power * &shifted;
        let next = kernel(&power);
        if next.dim() == k.dim() {
            break;
        }
        k = next;
        steps += 1;
    }
    k
}

pub fn generalized_eigenspaces(m: &QMatrix) -> Result<Vec<(Rational, Subspace)>> {
    rational_spectrum(m)?
        .into_iter()
        .map(|(l, k)| {
            let s = generalized_eigenspace(m, &l, k);
            debug_assert_eq!(s.dim(), k);
            Ok((l, s))
        })
        .collect()
}

/// One summand of a joint generalized eigenspace decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointEigenspace {
    /// Eigenvalue of each family member, in family order.
    pub eigenvalues: QVector,
    pub space: Subspace,
}

/// Joint generalized eigenspace decomposition of a commuting family.
///
/// The result is sorted lexicographically by eigenvalue vector. An empty
/// family yields the whole space with an empty eigenvalue vector.
pub fn joint_generalized_eigenspaces(family: &[QMatrix]) -> Result<Vec<JointEigenspace>> {
    let Some(first) = family.first() else {
        return Err(Error::InvalidInput("empty matrix family has no ambient dimension".into()));
    };
    let n = first.rows();
    for (i, a) in family.iter().enumerate() {
        if !a.is_square() || a.rows() != n {
            return Err(Error::DimensionMismatch(format!("family member {i} is not {n}x{n}")));
        }
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if !a.commutes_with(b) {
                return Err(Error::NotCommuting { first: i, second: j });
            }
        }
    }
    let mut parts = vec![JointEigenspace { eigenvalues: Vec::new(), space: Subspace::full(n) }];
    for m in family {
        let mut next = Vec::new();
        for part in parts {
            let restricted = part.space.restrict(m)?;
            for (lambda, inner) in generalized_eigenspaces(&restricted)? {
                let mut ev = part.eigenvalues.clone();
                ev.push(lambda);
                next.push(JointEigenspace { eigenvalues: ev, space: part.space.lift(&inner) });
            }
        }
        parts = next;
    }
    parts.sort_by(|a, b| a.eigenvalues.cmp(&b.eigenvalues));
    Ok(parts)
}

/// Additive Jordan–Chevalley decomposition `M = S + N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JCPair {
    pub semisimple: QMatrix,
    pub nilpotent: QMatrix,
}

impl JCPair {
    pub fn is_semisimple_input(&self) -> bool {
        self.nilpotent.is_zero()
    }
}

/// Splits a matrix with rational spectrum into commuting semisimple and
/// nilpotent parts. Both are polynomials in `m`.
pub fn jordan_chevalley(m: &QMatrix) -> Result<JCPair> {
    let n = m.rows();
    let spaces = generalized_eigenspaces(m)?;
    let mut cols = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for (lambda, s) in &spaces {
        for b in s.basis() {
            cols.push(b.clone());
            diag.push(lambda.clone());
        }
    }
    let change = QMatrix::from_columns(&cols, n);
    let inv = change.inverse()?;
    let semisimple = &(&change * &QMatrix::diagonal(&diag)) * &inv;
    let nilpotent = m - &semisimple;
    Ok(JCPair { semisimple, nilpotent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{q, qi, qvec};

    #[test]
    fn charpoly_two_by_two() {
        let m = QMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(charpoly(&m), vec![qi(1), qi(-5), qi(-2)]);
    }

    #[test]
    fn charpoly_with_denominators() {
        let m = QMatrix::diagonal(&[q(1, 2), q(1, 3)]);
        assert_eq!(charpoly(&m), vec![qi(1), q(-5, 6), q(1, 6)]);
    }

    #[test]
    fn spectrum_of_diagonal() {
        let m = QMatrix::diagonal(&qvec(&[1, 2, 2]));
        assert_eq!(rational_spectrum(&m).unwrap(), vec![(qi(1), 1), (qi(2), 2)]);
    }

    #[test]
    fn rotation_rejected() {
        let m = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(rational_spectrum(&m), Err(Error::RationalSpectrumRequired { degree: 2 }));
    }

    #[test]
    fn companion_of_repeated_root() {
        // (x-1)^2 (x+3) = x^3 + x^2 - 5x + 3
        let m = QMatrix::from_i64(&[&[0, 0, -3], &[1, 0, 5], &[0, 1, -1]]);
        assert_eq!(rational_spectrum(&m).unwrap(), vec![(qi(-3), 1), (qi(1), 2)]);
    }

    #[test]
    fn fractional_eigenvalues() {
        let m = QMatrix::from_rows(vec![vec![q(1, 2), qi(1)], vec![qi(0), q(-2, 3)]]).unwrap();
        assert_eq!(rational_spectrum(&m).unwrap(), vec![(q(-2, 3), 1), (q(1, 2), 1)]);
    }

    #[test]
    fn joint_diagonal_family() {
        let a = QMatrix::diagonal(&qvec(&[1, 2]));
        let b = QMatrix::diagonal(&qvec(&[3, 3]));
        let parts = joint_generalized_eigenspaces(&[a, b]).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].eigenvalues, qvec(&[1, 3]));
        assert_eq!(parts[0].space, Subspace::span(2, &[qvec(&[1, 0])]));
        assert_eq!(parts[1].eigenvalues, qvec(&[2, 3]));
    }

    #[test]
    fn non_commuting_family() {
        let a = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let b = QMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        assert_eq!(
            joint_generalized_eigenspaces(&[a, b]),
            Err(Error::NotCommuting { first: 0, second: 1 })
        );
    }

    #[test]
    fn jordan_block_split() {
        let m = QMatrix::from_i64(&[&[2, 1], &[0, 2]]);
        let jc = jordan_chevalley(&m).unwrap();
        assert_eq!(jc.semisimple, QMatrix::diagonal(&qvec(&[2, 2])));
        assert_eq!(jc.nilpotent, QMatrix::unit(2, 0, 1));
    }

    #[test]
    fn diagonalizable_has_no_nilpotent_part() {
        let m = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        let jc = jordan_chevalley(&m).unwrap();
        assert!(jc.nilpotent.is_zero());
        assert_eq!(jc.semisimple, m);
    }
}

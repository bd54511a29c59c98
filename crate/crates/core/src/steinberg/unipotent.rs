use crate::error::{Error, Result};
use crate::linalg::rational::q;
use crate::linalg::QMatrix;
use crate::roots::RayKey;

/// `exp(X)` for nilpotent `X`, as a finite sum.
pub fn exp_nilpotent(x: &QMatrix) -> Result<QMatrix> {
    if !x.is_nilpotent() {
        return Err(Error::InvalidInput("exp is only taken of nilpotent matrices".into()));
    }
    let n = x.rows();
    let mut acc = QMatrix::identity(n);
    let mut term = QMatrix::identity(n);
    for k in 1..=n {
        term = (&term * x).scale(&q(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `log(U)` for unipotent `U`, as a finite sum.
pub fn log_unipotent(u: &QMatrix) -> Result<QMatrix> {
    let n = u.rows();
    let y = u - &QMatrix::identity(n);
    if !u.is_square() || !y.is_nilpotent() {
        return Err(Error::NotUnipotent);
    }
    let mut acc = QMatrix::zeros(n, n);
    let mut pow = QMatrix::identity(n);
    for k in 1..=n {
        pow = &pow * &y;
        if pow.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = &acc + &pow.scale(&q(sign, k as i64));
    }
    Ok(acc)
}

/// Inverse of a unipotent matrix, `sum_k (I - U)^k`.
pub fn unipotent_inverse(u: &QMatrix) -> QMatrix {
    let n = u.rows();
    let y = &QMatrix::identity(n) - u;
    let mut acc = QMatrix::identity(n);
    let mut pow = QMatrix::identity(n);
    for _ in 1..=n {
        pow = &pow * &y;
        if pow.is_zero() {
            break;
        }
        acc = &acc + &pow;
    }
    acc
}

/// Unipotent matrix in the subgroup of one coarse class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentElement {
    pub(crate) label: RayKey,
    pub(crate) matrix: QMatrix,
}

impl UnipotentElement {
    pub fn label(&self) -> &RayKey {
        &self.label
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn inverse(&self) -> UnipotentElement {
        UnipotentElement { label: self.label.clone(), matrix: unipotent_inverse(&self.matrix) }
    }
}

/// Finite sequence of legs in the free product of the class subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    pub legs: Vec<UnipotentElement>,
}

impl Word {
    pub fn new(legs: Vec<UnipotentElement>) -> Self {
        Word { legs }
    }

    pub fn len(&self) -> usize {
        self.legs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }

    pub fn labels(&self) -> Vec<&RayKey> {
        self.legs.iter().map(|l| &l.label).collect()
    }

    /// Reversed word with inverted legs.
    pub fn inverse(&self) -> Word {
        Word { legs: self.legs.iter().rev().map(UnipotentElement::inverse).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        Word { legs }
    }
}

/// Product of the leg matrices; the identity of size `n` for the empty word.
pub fn evaluate_word(w: &Word, n: usize) -> QMatrix {
    w.legs.iter().fold(QMatrix::identity(n), |acc, l| &acc * &l.matrix)
}

pub fn is_cycle(w: &Word, n: usize) -> bool {
    evaluate_word(w, n).is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_round_trip() {
        let x = QMatrix::from_i64(&[&[0, 2, 3], &[0, 0, -1], &[0, 0, 0]]);
        let u = exp_nilpotent(&x).unwrap();
        assert_eq!(log_unipotent(&u).unwrap(), x);
        assert!((&u * &unipotent_inverse(&u)).is_identity());
    }

    #[test]
    fn log_rejects_non_unipotent() {
        assert_eq!(log_unipotent(&QMatrix::from_i64(&[&[2, 0], &[0, 1]])), Err(Error::NotUnipotent));
    }
}

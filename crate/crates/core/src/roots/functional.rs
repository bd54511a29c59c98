use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::rational::{
    dot, fmt_rational, is_zero_vec, primitive_integer_vector, proportionality, QVector, Rational,
};

/// Linear functional on an abelian subalgebra, stored by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional(pub QVector);

impl Functional {
    pub fn new(coords: QVector) -> Self {
        Functional(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Functional(vec![Rational::zero(); rank])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.0)
    }

    /// Value on the element `sum t_i X_i`.
    pub fn eval(&self, t: &[Rational]) -> Rational {
        dot(&self.0, t)
    }

    pub fn neg(&self) -> Functional {
        Functional(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Functional) -> Functional {
        Functional(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &Rational) -> Functional {
        Functional(self.0.iter().map(|a| a * k).collect())
    }

    /// Positive-ray class key. Sign is kept so that `mu` and `-mu` get different keys.
    pub fn ray_key(&self) -> RayKey {
        RayKey(primitive_integer_vector(&self.0))
    }

    /// Line key: the ray key with first nonzero entry made positive.
    pub fn line_key(&self) -> RayKey {
        let mut k = primitive_integer_vector(&self.0);
        if k.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in &mut k {
                *x = -&*x;
            }
        }
        RayKey(k)
    }

    /// `Some(k)` if `self = k * other`.
    pub fn ratio_to(&self, other: &Functional) -> Option<Rational> {
        proportionality(&self.0, &other.0)
    }

    pub fn positively_proportional(&self, other: &Functional) -> bool {
        !self.is_zero() && self.ratio_to(other).is_some_and(|k| k.is_positive())
    }

    pub fn negatively_proportional(&self, other: &Functional) -> bool {
        !self.is_zero() && self.ratio_to(other).is_some_and(|k| k.is_negative())
    }

    pub fn proportional(&self, other: &Functional) -> bool {
        self.positively_proportional(other) || self.negatively_proportional(other)
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Coprime integer vector identifying a ray (or a line) of functionals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayKey(pub Vec<BigInt>);

impl RayKey {
    pub fn to_functional(&self) -> Functional {
        Functional(self.0.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }
}

impl fmt::Display for RayKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{q, qvec};

    #[test]
    fn ray_keys() {
        let a = Functional::new(vec![q(2, 3), q(-4, 3)]);
        assert_eq!(a.ray_key().to_string(), "(1,-2)");
        assert_eq!(a.neg().ray_key().to_string(), "(-1,2)");
        assert_eq!(a.neg().line_key(), a.line_key());
    }

    #[test]
    fn proportionality_signs() {
        let a = Functional::new(qvec(&[1, 2]));
        let b = Functional::new(qvec(&[-2, -4]));
        assert!(a.negatively_proportional(&b));
        assert!(!a.positively_proportional(&b));
        assert!(a.positively_proportional(&a.scale(&q(1, 2))));
    }
}

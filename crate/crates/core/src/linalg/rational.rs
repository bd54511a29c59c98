//! Arbitrary-precision rationals and small helpers around them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational number; always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A dense vector of rationals.
pub type QVector = Vec<Rational>;

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qvec(entries: &[i64]) -> QVector {
    entries.iter().map(|&e| qi(e)).collect()
}

pub fn zero_vec(n: usize) -> QVector {
    vec![Rational::zero(); n]
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[Rational], s: &Rational) -> QVector {
    a.iter().map(|x| x * s).collect()
}

/// Least common multiple of all denominators (1 for an empty slice).
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rational>>(entries: I) -> BigInt {
    entries
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a nonzero vector by a positive rational so that its entries become
/// coprime integers. The sign pattern is preserved.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// If `a = k * b` for some rational `k`, returns `k`. Both must have equal length.
/// A zero `a` is proportional to everything with `k = 0`; a zero `b` is only
/// matched by a zero `a`.
pub fn proportionality(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    let pivot = b.iter().position(|x| !x.is_zero());
    let Some(p) = pivot else {
        return if is_zero_vec(a) { Some(Rational::zero()) } else { None };
    };
    let k = &a[p] / &b[p];
    a.iter()
        .zip(b)
        .all(|(x, y)| *x == &k * y)
        .then_some(k)
}

pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn abs_max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|x| x.abs().bits()).max().unwrap_or(0)
}

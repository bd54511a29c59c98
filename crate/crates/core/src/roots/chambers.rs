//! Weyl chambers: sign vectors on the hyperplane arrangement of the nonzero functionals.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::functional::Functional;
use super::system::RestrictedRootSystem;
use crate::linalg::rational::{dot, QVector, Rational};

/// One chamber, identified by its sign on each hyperplane normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub signs: Vec<i8>,
    /// Interior point, in coordinates on the subalgebra generators.
    pub witness: QVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberReport {
    /// One normal per distinct kernel hyperplane (line keys, in key order).
    pub hyperplanes: Vec<Functional>,
    pub chambers: Vec<Chamber>,
}

impl ChamberReport {
    pub fn count(&self) -> usize {
        self.chambers.len()
    }

    pub fn chamber_of(&self, t: &[Rational]) -> Option<&Chamber> {
        let s: Vec<i8> = self.hyperplanes.iter().map(|h| sign(&h.eval(t))).collect();
        self.chambers.iter().find(|c| c.signs == s)
    }
}

fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Constraint `a . t >= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Ineq {
    a: QVector,
    b: Rational,
}

impl Ineq {
    fn normalized(mut self) -> Self {
        // Scale so the leading nonzero coefficient has absolute value one.
        if let Some(p) = self.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in &mut self.a {
                *x /= &p;
            }
            self.b /= p;
        }
        self
    }
}

/// Fourier–Motzkin elimination of variable `k`.
fn eliminate(sys: &[Ineq], k: usize) -> Vec<Ineq> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for c in sys {
        if c.a[k].is_positive() {
            pos.push(c);
        } else if c.a[k].is_negative() {
            neg.push(c);
        } else {
            out.push(c.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let (fp, fn_) = (-&n.a[k], p.a[k].clone());
            let a: QVector = p.a.iter().zip(&n.a).map(|(x, y)| x * &fp + y * &fn_).collect();
            let b = &p.b * &fp + &n.b * &fn_;
            out.push(Ineq { a, b }.normalized());
        }
    }
    out.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    out.dedup();
    out
}

/// Point satisfying every constraint, or `None` if the system is infeasible.
fn solve(sys: &[Ineq], nvars: usize) -> Option<QVector> {
    let mut levels = vec![sys.to_vec()];
    for k in 0..nvars {
        let next = eliminate(levels.last().unwrap(), k);
        levels.push(next);
    }
    if levels[nvars].iter().any(|c| c.b.is_positive()) {
        return None;
    }
    let mut t = vec![Rational::zero(); nvars];
    for k in (0..nvars).rev() {
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for c in &levels[k] {
            // Variables after k are fixed; earlier ones have zero coefficient at this level.
            let rest: Rational = (k + 1..nvars).map(|j| &c.a[j] * &t[j]).sum();
            let rhs = &c.b - rest;
            if c.a[k].is_positive() {
                let v = rhs / &c.a[k];
                lo = Some(lo.map_or(v.clone(), |l| l.max(v)));
            } else if c.a[k].is_negative() {
                let v = rhs / &c.a[k];
                hi = Some(hi.map_or(v.clone(), |h| h.min(v)));
            }
        }
        t[k] = pick(lo, hi);
    }
    Some(t)
}

/// A simple value in `[lo, hi]`, preferring small integers.
fn pick(lo: Option<Rational>, hi: Option<Rational>) -> Rational {
    match (lo, hi) {
        (None, None) => Rational::zero(),
        (Some(l), None) => {
            if !l.is_positive() { Rational::zero() } else { l.ceil() }
        }
        (None, Some(h)) => {
            if !h.is_negative() { Rational::zero() } else { h.floor() }
        }
        (Some(l), Some(h)) => {
            if !l.is_positive() && !h.is_negative() {
                return Rational::zero();
            }
            let c = l.ceil();
            if c <= h {
                return c;
            }
            (l + h) / Rational::from_integer(2.into())
        }
    }
}

/// Enumerates every realizable sign vector on the kernels of the nonzero functionals,
/// with an interior rational witness for each.
pub fn weyl_chambers(sys: &RestrictedRootSystem) -> ChamberReport {
    chambers_of(sys.rank(), &sys.functionals())
}

pub fn chambers_of(rank: usize, functionals: &[Functional]) -> ChamberReport {
    let mut lines: Vec<_> = functionals.iter().filter(|f| !f.is_zero()).map(Functional::line_key).collect();
    lines.sort();
    lines.dedup();
    let hyperplanes: Vec<Functional> = lines.iter().map(|k| k.to_functional()).collect();
    let mut chambers = Vec::new();
    let mut signs = Vec::new();
    let mut sys = Vec::new();
    search(rank, &hyperplanes, &mut signs, &mut sys, &mut chambers);
    ChamberReport { hyperplanes, chambers }
}

fn search(rank: usize, hs: &[Functional], signs: &mut Vec<i8>, sys: &mut Vec<Ineq>, out: &mut Vec<Chamber>) {
    let Some(t) = solve(sys, rank) else {
        return;
    };
    if signs.len() == hs.len() {
        out.push(Chamber { signs: signs.clone(), witness: clear_denominators(t) });
        return;
    }
    let h = &hs[signs.len()];
    for s in [1i8, -1] {
        let a: QVector = h.coords().iter().map(|x| if s > 0 { x.clone() } else { -x }).collect();
        sys.push(Ineq { a, b: Rational::one() });
        signs.push(s);
        search(rank, hs, signs, sys, out);
        signs.pop();
        sys.pop();
    }
}

/// Positive rescaling to a primitive integer vector; stays in the same open chamber.
fn clear_denominators(t: QVector) -> QVector {
    let l = crate::linalg::rational::denominator_lcm(&t);
    let ints: Vec<_> = t.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return t;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// A point where every given functional is at least one, if one exists.
pub fn positive_point(rank: usize, functionals: &[Functional]) -> Option<QVector> {
    let sys: Vec<Ineq> = functionals
        .iter()
        .map(|f| Ineq { a: f.coords().to_vec(), b: Rational::one() })
        .collect();
    solve(&sys, rank).map(clear_denominators)
}

/// Whether `t` is regular, i.e. nonzero on every functional.
pub fn is_regular(functionals: &[Functional], t: &[Rational]) -> bool {
    functionals.iter().all(|f| f.is_zero() || !dot(f.coords(), t).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::qvec;

    fn f(v: &[i64]) -> Functional {
        Functional::new(qvec(v))
    }

    #[test]
    fn one_pair_two_chambers() {
        let r = chambers_of(2, &[f(&[1, 0]), f(&[-1, 0])]);
        assert_eq!(r.count(), 2);
    }

    #[test]
    fn three_lines_six_chambers() {
        let fs = [f(&[1, -1]), f(&[3, 1]), f(&[2, 2])];
        let r = chambers_of(2, &fs);
        assert_eq!(r.count(), 6);
        for c in &r.chambers {
            for (h, s) in r.hyperplanes.iter().zip(&c.signs) {
                assert_eq!(sign(&h.eval(&c.witness)), *s);
            }
        }
    }

    #[test]
    fn generic_arrangement_in_three_space() {
        // Four generic planes through the origin in R^3 give 14 regions.
        let fs = [f(&[1, 0, 0]), f(&[0, 1, 0]), f(&[0, 0, 1]), f(&[1, 1, 1])];
        assert_eq!(chambers_of(3, &fs).count(), 14);
    }
}

//! Cartan data, Killing-form reflections, detection and the `sl(n)` permutation model.

use num_traits::{Signed, Zero};

use super::chambers::chambers_of;
use super::functional::Functional;
use super::system::{restricted_roots, RestrictedRootSystem};
use crate::error::{Error, Result};
use crate::lie::{AbelianSubalgebra, LieAlgebra};
use crate::linalg::rational::{dot, qi, QVector, Rational};
use crate::linalg::{QMatrix, Subspace};

/// A split Cartan subalgebra together with its root system and Killing form.
#[derive(Clone, Debug)]
pub struct CartanData {
    system: RestrictedRootSystem,
    gram_inverse: QMatrix,
    regular: QVector,
    ordered: Vec<Functional>,
}

impl CartanData {
    pub fn new(alg: &LieAlgebra, cartan: AbelianSubalgebra) -> Result<Self> {
        let system = restricted_roots(alg, &cartan)?;
        let ads: Vec<QMatrix> = cartan.generators().iter().map(|h| alg.ad(h)).collect();
        let r = ads.len();
        let mut gram = QMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                gram.set(i, j, (&ads[i] * &ads[j]).trace());
            }
        }
        let gram_inverse = gram
            .inverse()
            .map_err(|_| Error::InvalidInput("Killing form is degenerate on the Cartan subalgebra".into()))?;
        let regular = regular_element(alg, &cartan, &system)?;
        let mut data = CartanData { system, gram_inverse, regular, ordered: Vec::new() };
        data.ordered = data.order_roots();
        Ok(data)
    }

    /// Diagonal Cartan of an algebra realized as `sl(n)`.
    pub fn diagonal(alg: &LieAlgebra) -> Result<Self> {
        let n = sl_size(alg)?;
        let gens = (0..n - 1)
            .map(|k| {
                let h = &QMatrix::unit(n, k, k) - &QMatrix::unit(n, k + 1, k + 1);
                alg.coordinates_of(&h)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alg, AbelianSubalgebra::new(alg, gens)?)
    }

    pub fn system(&self) -> &RestrictedRootSystem {
        &self.system
    }

    pub fn cartan(&self) -> &AbelianSubalgebra {
        self.system.subalgebra()
    }

    /// Roots ordered: positive ones by height then root-space position, then negatives likewise.
    pub fn ordered_roots(&self) -> &[Functional] {
        &self.ordered
    }

    pub fn height(&self, r: &Functional) -> Rational {
        r.eval(&self.regular)
    }

    fn order_roots(&self) -> Vec<Functional> {
        let key = |r: &Functional| {
            let h = self.height(r);
            let pos = self.system.root_space(r).and_then(|s| s.pivots().first().copied()).unwrap_or(0);
            (h.is_negative(), h.abs(), pos)
        };
        let mut roots: Vec<Functional> = self.system.roots().keys().cloned().collect();
        roots.sort_by_key(|r| key(r));
        roots
    }

    /// Dual Killing form on functionals.
    pub fn inner(&self, r: &Functional, s: &Functional) -> Rational {
        dot(r.coords(), &self.gram_inverse.mul_vec(s.coords()))
    }

    /// `w_s(r) = r - 2 <s,r>/<s,s> s`.
    pub fn reflect(&self, s: &Functional, r: &Functional) -> Result<Functional> {
        if !self.system.is_root(s) {
            return Err(Error::NotARoot);
        }
        let k = qi(2) * self.inner(s, r) / self.inner(s, s);
        Ok(r.add(&s.scale(&-k)))
    }

    /// Label of a root from its (one-dimensional) root space, e.g. `e1-e2` in `sl(n)`.
    pub fn root_label(&self, alg: &LieAlgebra, r: &Functional) -> String {
        let Some(p) = self.system.root_space(r).and_then(|s| s.pivots().first().copied()) else {
            return r.to_string();
        };
        let label = &alg.labels()[p];
        let digits: Vec<char> = label.chars().skip(1).collect();
        if label.starts_with('E') && digits.len() == 2 && digits.iter().all(char::is_ascii_digit) {
            format!("e{}-e{}", digits[0], digits[1])
        } else {
            label.clone()
        }
    }
}

fn sl_size(alg: &LieAlgebra) -> Result<usize> {
    let real = alg.realization().ok_or(Error::UnsupportedAmbient)?;
    let n = real.matrix_size();
    if n < 2 || alg.dim() != n * n - 1 || real.matrices().iter().any(|m| !m.trace().is_zero()) {
        return Err(Error::UnsupportedAmbient);
    }
    Ok(n)
}

/// For `sl(n)` with a diagonal Cartan, `diag(n-1, ..., 0)` made traceless, so heights of
/// positive roots `e_i - e_j` come out as `j - i`; otherwise the first chamber witness.
fn regular_element(alg: &LieAlgebra, cartan: &AbelianSubalgebra, sys: &RestrictedRootSystem) -> Result<QVector> {
    if let Ok(n) = sl_size(alg) {
        let mean = Rational::new(((n * (n - 1)) as i64 / 2).into(), (n as i64).into());
        let d: QVector = (0..n).map(|i| qi((n - 1 - i) as i64) - &mean).collect();
        if let Ok(x) = alg.coordinates_of(&QMatrix::diagonal(&d)) {
            if let Some(t) = in_span(cartan.generators(), &x) {
                return Ok(t);
            }
        }
    }
    chambers_of(sys.rank(), &sys.functionals())
        .chambers
        .first()
        .map(|c| c.witness.clone())
        .ok_or(Error::NoWitness)
}

/// Coefficients `c` with `sum c_i gens[i] = x`.
fn in_span(gens: &[QVector], x: &[Rational]) -> Option<QVector> {
    let m = QMatrix::from_columns(gens, x.len());
    m.solve(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionEntry {
    pub root: Functional,
    pub label: String,
    pub restriction: Functional,
    pub detected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionReport {
    pub entries: Vec<DetectionEntry>,
}

impl DetectionReport {
    pub fn all_detected(&self) -> bool {
        self.entries.iter().all(|e| e.detected)
    }

    pub fn undetected(&self) -> Vec<&DetectionEntry> {
        self.entries.iter().filter(|e| !e.detected).collect()
    }

    pub fn entry(&self, root: &Functional) -> Option<&DetectionEntry> {
        self.entries.iter().find(|e| &e.root == root)
    }

    pub fn entry_by_label(&self, label: &str) -> Option<&DetectionEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

/// Restricts every Cartan root to `a` by evaluating on the split parts of its generators.
pub fn detection(alg: &LieAlgebra, cartan: &CartanData, a: &AbelianSubalgebra) -> Result<DetectionReport> {
    let hs = cartan.cartan().generators();
    let coeffs = a
        .split_parts(alg)?
        .iter()
        .map(|s| in_span(hs, s).ok_or(Error::NotInCartan))
        .collect::<Result<Vec<_>>>()?;
    let entries = cartan
        .ordered_roots()
        .iter()
        .map(|r| {
            let restriction = Functional::new(coeffs.iter().map(|c| r.eval(c)).collect());
            DetectionEntry {
                root: r.clone(),
                label: cartan.root_label(alg, r),
                detected: !restriction.is_zero(),
                restriction,
            }
        })
        .collect();
    Ok(DetectionReport { entries })
}

/// Detected `r1`, not proportional to `r`, with `w_{r1}(r)` detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatorWitness {
    pub r1: Functional,
    pub image: Functional,
}

/// All detecting conjugators for `r`, in root order. A detected `r` gives an empty list.
pub fn find_detecting_conjugators(
    cartan: &CartanData,
    report: &DetectionReport,
    r: &Functional,
) -> Result<Vec<ConjugatorWitness>> {
    let entry = report.entry(r).ok_or(Error::NotARoot)?;
    if entry.detected {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for e in report.entries.iter().filter(|e| e.detected && !e.root.proportional(r)) {
        let image = cartan.reflect(&e.root, r)?;
        if report.entry(&image).is_some_and(|x| x.detected) {
            out.push(ConjugatorWitness { r1: e.root.clone(), image });
        }
    }
    if out.is_empty() {
        return Err(Error::NoWitness);
    }
    Ok(out)
}

/// Permutation of `{0..n-1}` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn moved_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, p)| i != *p).count()
    }

    /// Cycle notation with one-based points, `id` for the identity.
    pub fn cycle_notation(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push((i + 1).to_string());
                i = self.0[i];
            }
            let sep = if n > 9 { "," } else { "" };
            out.push_str(&format!("({})", cycle.join(sep)));
        }
        if out.is_empty() { "id".into() } else { out }
    }

    /// Conjugation by the permutation matrix: `diag(d) -> diag(d')` with `d'[sigma(i)] = d[i]`.
    pub fn act_on_diagonal(&self, d: &[Rational]) -> QVector {
        let mut out = vec![Rational::zero(); d.len()];
        for (i, x) in d.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation(cur.clone()));
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Permutations preserving the span of the split generators of `a`, modulo those fixing it
/// pointwise. Coset representatives move as few points as possible, then are least
/// lexicographically; the identity comes first.
pub fn normalizer_quotient(alg: &LieAlgebra, a: &AbelianSubalgebra) -> Result<Vec<Permutation>> {
    let n = sl_size(alg)?;
    let diags = a
        .split_parts(alg)?
        .iter()
        .map(|s| {
            let m = alg.matrix_of(s)?;
            if !m.is_diagonal() {
                return Err(Error::NotInCartan);
            }
            Ok((0..n).map(|i| m.get(i, i).clone()).collect::<QVector>())
        })
        .collect::<Result<Vec<_>>>()?;
    let span = Subspace::span(n, &diags);
    let mut reps: Vec<(Vec<QVector>, Permutation)> = Vec::new();
    for p in all_permutations(n) {
        let images: Vec<QVector> = diags.iter().map(|d| p.act_on_diagonal(d)).collect();
        if !images.iter().all(|v| span.contains(v)) {
            continue;
        }
        match reps.iter_mut().find(|(act, _)| *act == images) {
            Some((_, best)) => {
                if (p.moved_points(), &p) < (best.moved_points(), &*best) {
                    *best = p;
                }
            }
            None => reps.push((images, p)),
        }
    }
    let mut out: Vec<Permutation> = reps.into_iter().map(|(_, p)| p).collect();
    out.sort_by(|x, y| (x.moved_points(), x).cmp(&(y.moved_points(), y)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::qvec;

    #[test]
    fn reflections_in_sl3() {
        let g = LieAlgebra::sl(3).unwrap();
        let c = CartanData::diagonal(&g).unwrap();
        let e12 = Functional::new(qvec(&[2, -1]));
        let e23 = Functional::new(qvec(&[-1, 2]));
        let e13 = Functional::new(qvec(&[1, 1]));
        assert_eq!(c.reflect(&e23, &e12).unwrap(), e13);
        assert_eq!(c.reflect(&e12, &e12).unwrap(), e12.neg());
        assert_eq!(c.root_label(&g, &e13), "e1-e3");
        assert_eq!(c.reflect(&Functional::new(qvec(&[1, 0])), &e12), Err(Error::NotARoot));
    }

    #[test]
    fn ordering_by_height() {
        let g = LieAlgebra::sl(3).unwrap();
        let c = CartanData::diagonal(&g).unwrap();
        let labels: Vec<String> = c.ordered_roots().iter().map(|r| c.root_label(&g, r)).collect();
        assert_eq!(labels, ["e1-e2", "e2-e3", "e1-e3", "e2-e1", "e3-e2", "e3-e1"]);
    }

    #[test]
    fn cycle_strings() {
        assert_eq!(Permutation(vec![0, 1, 3, 2]).cycle_notation(), "(34)");
        assert_eq!(Permutation(vec![0, 1, 2]).cycle_notation(), "id");
        assert_eq!(Permutation(vec![1, 2, 0]).cycle_notation(), "(123)");
    }

    #[test]
    fn full_cartan_quotient_is_symmetric_group() {
        let g = LieAlgebra::sl(3).unwrap();
        let c = CartanData::diagonal(&g).unwrap();
        assert_eq!(normalizer_quotient(&g, c.cartan()).unwrap().len(), 6);
    }
}

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::unipotent::{evaluate_word, exp_nilpotent, log_unipotent, unipotent_inverse, UnipotentElement, Word};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::rational::{QVector, Rational};
use crate::linalg::{QMatrix, Subspace};
use crate::roots::{positive_point, weyl_chambers, CoarseClass, Functional, RayKey, RestrictedRootSystem};

/// Root system of a matrix Lie algebra, prepared for word computations.
pub struct WordContext<'a> {
    alg: &'a LieAlgebra,
    sys: &'a RestrictedRootSystem,
    classes: BTreeMap<RayKey, CoarseClass>,
    witness: QVector,
}

impl<'a> WordContext<'a> {
    pub fn new(alg: &'a LieAlgebra, sys: &'a RestrictedRootSystem) -> Result<Self> {
        if alg.realization().is_none() {
            return Err(Error::UnsupportedAmbient);
        }
        let classes = sys
            .coarse_classes()
            .into_iter()
            .filter(|c| !c.root_space.is_zero())
            .map(|c| (c.key.clone(), c))
            .collect();
        let witness = weyl_chambers(sys).chambers.first().map(|c| c.witness.clone()).ok_or(Error::NoWitness)?;
        Ok(WordContext { alg, sys, classes, witness })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.alg
    }

    pub fn system(&self) -> &RestrictedRootSystem {
        self.sys
    }

    pub fn matrix_size(&self) -> usize {
        self.alg.realization().map_or(0, |r| r.matrix_size())
    }

    /// The regular element used for default orderings.
    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    pub fn class(&self, key: &RayKey) -> Option<&CoarseClass> {
        self.classes.get(key)
    }

    pub fn class_keys(&self) -> Vec<RayKey> {
        self.classes.keys().cloned().collect()
    }

    pub fn height(&self, f: &Functional) -> Rational {
        f.eval(&self.witness)
    }

    /// Increasing height of the ray generator, ties broken by ray key.
    pub fn default_order<I: IntoIterator<Item = RayKey>>(&self, keys: I) -> Vec<RayKey> {
        let mut keys: Vec<RayKey> = keys.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        keys.sort_by(|a, b| {
            let (ha, hb) = (self.height(&a.to_functional()), self.height(&b.to_functional()));
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        keys
    }

    fn coords(&self, m: &QMatrix) -> Result<QVector> {
        self.alg.coordinates_of(m)
    }

    fn matrix(&self, coords: &[Rational]) -> QMatrix {
        self.alg.matrix_of(coords).expect("realization present")
    }

    /// Validates that `log(m)` lies in the class subspace.
    pub fn unipotent(&self, label: RayKey, m: QMatrix) -> Result<UnipotentElement> {
        let class = self.classes.get(&label).ok_or(Error::NotARoot)?;
        let x = self.coords(&log_unipotent(&m)?).map_err(|_| Error::NotInSpan)?;
        if !class.root_space.contains(&x) {
            return Err(Error::NotInSpan);
        }
        Ok(UnipotentElement { label, matrix: m })
    }

    /// `exp(sum c_i v_i)` over the canonical basis `v_i` of the class subspace.
    pub fn unipotent_from_coords(&self, label: &RayKey, c: &[Rational]) -> Result<UnipotentElement> {
        let class = self.classes.get(label).ok_or(Error::NotARoot)?;
        let x = self.matrix(&class.root_space.combine(c));
        Ok(UnipotentElement { label: label.clone(), matrix: exp_nilpotent(&x)? })
    }

    pub fn evaluate(&self, w: &Word) -> QMatrix {
        evaluate_word(w, self.matrix_size())
    }

    fn functional(&self, key: &RayKey) -> Result<Functional> {
        self.classes.get(key).map(|c| c.members[0].clone()).ok_or(Error::NotARoot)
    }
}

/// System functionals strictly inside the open cone `{t1 mu + t2 nu : t1, t2 > 0}`.
pub fn cone_generated(mu: &Functional, nu: &Functional, sys: &RestrictedRootSystem) -> Result<Vec<Functional>> {
    if mu.negatively_proportional(nu) {
        return Err(Error::NegativelyProportional);
    }
    let independent = Subspace::span(mu.rank(), &[mu.coords().to_vec(), nu.coords().to_vec()]).dim() == 2;
    let out = sys
        .functionals()
        .into_iter()
        .filter(|chi| {
            if !independent {
                return chi.positively_proportional(mu);
            }
            let m = QMatrix::from_columns(&[mu.coords().to_vec(), nu.coords().to_vec()], mu.rank());
            m.solve(chi.coords()).is_some_and(|t| t[0].is_positive() && t[1].is_positive())
        })
        .collect();
    Ok(out)
}

/// Closed under in-system sums, and no two members negatively proportional.
pub fn is_admissible(phi: &[Functional], sys: &RestrictedRootSystem) -> bool {
    let set: BTreeSet<&Functional> = phi.iter().collect();
    for (i, a) in phi.iter().enumerate() {
        for b in &phi[i..] {
            if a.negatively_proportional(b) {
                return false;
            }
            let s = a.add(b);
            if sys.contains_functional(&s) && !set.contains(&s) {
                return false;
            }
        }
    }
    true
}

/// Ray keys of the classes meeting `phi`, in default order.
pub fn classes_of(ctx: &WordContext<'_>, phi: &[Functional]) -> Vec<RayKey> {
    ctx.default_order(phi.iter().map(Functional::ray_key))
}

/// Factors `u` as an ordered product over the classes of `phi`, one leg per class,
/// dropping identity legs.
///
/// Uses successive correction along the grading by a functional positive on `phi`:
/// after the components of all lower heights vanish, the next height's component of
/// `log(P^{-1} u)` is added to the matching legs.
pub fn factor_unipotent(ctx: &WordContext<'_>, u: &QMatrix, phi: &[Functional], order: &[RayKey]) -> Result<Word> {
    let keys: BTreeSet<RayKey> = phi.iter().map(Functional::ray_key).collect();
    let given: BTreeSet<RayKey> = order.iter().cloned().collect();
    if given != keys || given.len() != order.len() {
        return Err(Error::OrderIncompatible("order must list each class of the support exactly once".into()));
    }
    for f in phi {
        if !ctx.sys.is_root(f) {
            return Err(Error::NotARoot);
        }
    }
    let ell = positive_point(ctx.sys.rank(), phi)
        .ok_or_else(|| Error::OrderIncompatible("support does not lie in an open half-space".into()))?;

    // Basis of the support, tagged with functional index.
    let mut basis: Vec<QVector> = Vec::new();
    let mut tag: Vec<usize> = Vec::new();
    for (i, f) in phi.iter().enumerate() {
        for v in ctx.sys.root_space(f).expect("checked").basis() {
            basis.push(v.clone());
            tag.push(i);
        }
    }
    let d = ctx.alg.dim();
    let frame = QMatrix::from_columns(&basis, d);
    let components = |m: &QMatrix| -> Result<QVector> {
        let x = ctx.coords(m).map_err(|_| Error::NotInSpan)?;
        frame.solve(&x).ok_or(Error::NotInSpan)
    };
    components(&log_unipotent(u)?)?;

    let mut heights: Vec<Rational> = phi.iter().map(|f| f.eval(&ell)).collect();
    let height_of: Vec<Rational> = heights.clone();
    heights.sort();
    heights.dedup();

    let slot: BTreeMap<RayKey, usize> = order.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut legs: Vec<QVector> = vec![vec![Rational::zero(); d]; order.len()];
    let product = |legs: &[QVector]| -> Result<QMatrix> {
        let n = ctx.matrix_size();
        let mut p = QMatrix::identity(n);
        for x in legs {
            p = &p * &exp_nilpotent(&ctx.matrix(x))?;
        }
        Ok(p)
    };
    for h in &heights {
        let p = product(&legs)?;
        let c = components(&log_unipotent(&(&unipotent_inverse(&p) * u))?)?;
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() || &height_of[tag[k]] != h {
                continue;
            }
            let s = slot[&phi[tag[k]].ray_key()];
            for (x, b) in legs[s].iter_mut().zip(&basis[k]) {
                *x += ck * b;
            }
        }
    }
    let word = Word::new(
        legs.iter()
            .zip(order)
            .filter(|(x, _)| !x.iter().all(Zero::is_zero))
            .map(|(x, k)| Ok(UnipotentElement { label: k.clone(), matrix: exp_nilpotent(&ctx.matrix(x))? }))
            .collect::<Result<Vec<_>>>()?,
    );
    if ctx.evaluate(&word) != *u {
        return Err(Error::NotInSpan);
    }
    Ok(word)
}

/// `x y x^-1 y^-1` written as a word over the classes of the cone, in default order.
pub fn commutator_relation(ctx: &WordContext<'_>, x: &UnipotentElement, y: &UnipotentElement) -> Result<Word> {
    let (mu, nu) = (ctx.functional(&x.label)?, ctx.functional(&y.label)?);
    let cone: Vec<Functional> = cone_generated(&mu, &nu, ctx.sys)?
        .into_iter()
        .filter(|f| ctx.sys.is_root(f))
        .collect();
    let c = &(&(x.matrix() * y.matrix()) * &unipotent_inverse(x.matrix())) * &unipotent_inverse(y.matrix());
    if c.is_identity() {
        return Ok(Word::default());
    }
    let order = classes_of(ctx, &cone);
    factor_unipotent(ctx, &c, &cone, &order)
}

/// Unique ordered factorization of the evaluation of `w` over the classes of `phi`.
pub fn collect_normal_form(ctx: &WordContext<'_>, w: &Word, phi: &[Functional]) -> Result<Word> {
    let keys: BTreeSet<RayKey> = phi.iter().map(Functional::ray_key).collect();
    for leg in &w.legs {
        if !keys.contains(leg.label()) {
            return Err(Error::NotSupported);
        }
        let x = ctx.coords(&log_unipotent(leg.matrix())?).map_err(|_| Error::NotSupported)?;
        let space = Subspace::sum_all(
            ctx.alg.dim(),
            phi.iter().filter(|f| f.ray_key() == leg.label).filter_map(|f| ctx.sys.root_space(f)),
        );
        if !space.contains(&x) {
            return Err(Error::NotSupported);
        }
    }
    let u = ctx.evaluate(w);
    factor_unipotent(ctx, &u, phi, &classes_of(ctx, phi))
}

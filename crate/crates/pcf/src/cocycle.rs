use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::action::{Element, ToralAbelianAction};
use crate::error::{Error, Result};
use crate::norm::{is_quasi_unipotent, spectral_norm};

/// Generator cocycle values `beta(s_g, x)` on the cover.
pub type Callback = Arc<dyn Fn(usize, &DVector<f64>) -> DVector<f64> + Send + Sync>;

/// Linear twist `psi` of the target vector space, one matrix per generator.
#[derive(Debug, Clone)]
pub struct TwistSpec {
    target_dim: usize,
    matrices: Vec<DMatrix<f64>>,
    inverses: Vec<DMatrix<f64>>,
}

impl TwistSpec {
    pub fn new(target_dim: usize, matrices: Vec<DMatrix<f64>>, modulus_tol: f64) -> Result<Self> {
        if matrices.iter().any(|m| m.nrows() != target_dim || m.ncols() != target_dim) {
            return Err(Error::DimensionMismatch("twist matrix size differs from target dimension".into()));
        }
        for (i, a) in matrices.iter().enumerate() {
            if !is_quasi_unipotent(a, modulus_tol) {
                return Err(Error::NotSlowFamily);
            }
            for b in &matrices[i + 1..] {
                if spectral_norm(&(a * b - b * a)) > 1e-10 * (1.0 + spectral_norm(a) * spectral_norm(b)) {
                    return Err(Error::InvalidInput("twist matrices do not commute".into()));
                }
            }
        }
        let inverses = matrices
            .iter()
            .map(|m| m.clone().try_inverse().ok_or(Error::NotSlowFamily))
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistSpec { target_dim, matrices, inverses })
    }

    pub fn trivial(rank: usize, target_dim: usize) -> Self {
        let id = DMatrix::identity(target_dim, target_dim);
        TwistSpec { target_dim, matrices: vec![id.clone(); rank], inverses: vec![id; rank] }
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn rank(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[DMatrix<f64>] {
        &self.matrices
    }

    pub fn letter(&self, g: usize, sign: i64) -> &DMatrix<f64> {
        if sign > 0 {
            &self.matrices[g]
        } else {
            &self.inverses[g]
        }
    }

    pub fn psi(&self, a: &Element) -> DMatrix<f64> {
        a.word()
            .into_iter()
            .fold(DMatrix::identity(self.target_dim, self.target_dim), |m, (g, s)| self.letter(g, s) * m)
    }

    /// The family `{psi_s, psi_s^{-1}}` over the generators.
    pub fn family(&self) -> Vec<DMatrix<f64>> {
        self.matrices.iter().chain(&self.inverses).cloned().collect()
    }
}

/// `amplitude * sin(2 pi (<frequency, x> + phase))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigTerm {
    pub amplitude: f64,
    pub frequency: Vec<i64>,
    pub phase: f64,
}

impl TrigTerm {
    pub fn eval(&self, x: &DVector<f64>) -> f64 {
        let arg: f64 = self.frequency.iter().zip(x.iter()).map(|(&m, &xi)| m as f64 * xi).sum::<f64>() + self.phase;
        self.amplitude * (TAU * arg).sin()
    }
}

/// Z^d-periodic map into R^q given by trigonometric sums, one per component.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigMap {
    pub components: Vec<Vec<TrigTerm>>,
}

impl TrigMap {
    /// Component `k` is `amplitude * sin(2 pi (x_{k mod d} + k/4))`.
    pub fn sine(dim: usize, target_dim: usize, amplitude: f64) -> Self {
        let components = (0..target_dim)
            .map(|k| {
                let mut frequency = vec![0; dim];
                frequency[k % dim] = 1;
                vec![TrigTerm { amplitude, frequency, phase: k as f64 / 4.0 }]
            })
            .collect();
        TrigMap { components }
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.components.len(), self.components.iter().map(|c| c.iter().map(|t| t.eval(x)).sum()))
    }

    pub fn sup_bound(&self) -> f64 {
        let s: f64 = self.components.iter().map(|c| c.iter().map(|t| t.amplitude.abs()).sum::<f64>().powi(2)).sum();
        s.sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CocycleKind {
    Constant { constants: Vec<DVector<f64>> },
    PlantedCoboundary { transfer: TrigMap, constants: Vec<DVector<f64>> },
    Trigonometric { generators: Vec<TrigMap> },
    Callback,
}

/// Twisted cocycle `beta(ab,x) = beta(a, b.x) + psi_a beta(b,x)` with values in R^q.
#[derive(Clone)]
pub struct HolderCocycle {
    twist: TwistSpec,
    kappa: f64,
    sup_bound: f64,
    kind: CocycleKind,
    callback: Callback,
}

impl fmt::Debug for HolderCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HolderCocycle")
            .field("kappa", &self.kappa)
            .field("sup_bound", &self.sup_bound)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

fn check_constants(twist: &TwistSpec, constants: &[DVector<f64>]) -> Result<()> {
    if constants.len() != twist.rank() || constants.iter().any(|c| c.len() != twist.target_dim()) {
        return Err(Error::DimensionMismatch("one constant per generator in the target dimension".into()));
    }
    let q = twist.target_dim();
    let id = DMatrix::<f64>::identity(q, q);
    for a in 0..constants.len() {
        for b in a + 1..constants.len() {
            let lhs = (&id - &twist.matrices[b]) * &constants[a];
            let rhs = (&id - &twist.matrices[a]) * &constants[b];
            if (lhs - rhs).norm() > 1e-12 * (1.0 + constants[a].norm() + constants[b].norm()) {
                return Err(Error::IncompatibleConstants);
            }
        }
    }
    Ok(())
}

fn check_kappa(kappa: f64) -> Result<()> {
    if kappa > 0.0 && kappa <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("Holder exponent {kappa} outside (0,1]")))
    }
}

impl HolderCocycle {
    pub fn from_callback(twist: TwistSpec, kappa: f64, sup_bound: f64, callback: Callback) -> Result<Self> {
        check_kappa(kappa)?;
        Ok(HolderCocycle { twist, kappa, sup_bound, kind: CocycleKind::Callback, callback })
    }

    /// `beta(s, x) = c(s)`; the constants must satisfy `c(ab) = c(a) + psi_a c(b)`.
    pub fn constant(twist: TwistSpec, constants: Vec<DVector<f64>>) -> Result<Self> {
        check_constants(&twist, &constants)?;
        let sup_bound = constants.iter().map(DVector::norm).fold(0.0, f64::max);
        let cs = constants.clone();
        let callback: Callback = Arc::new(move |g, _x| cs[g].clone());
        Ok(HolderCocycle { twist, kappa: 1.0, sup_bound, kind: CocycleKind::Constant { constants }, callback })
    }

    /// `beta(s, x) = T(s.x) + c(s) - psi_s T(x)`.
    pub fn planted_coboundary(
        action: &ToralAbelianAction,
        twist: TwistSpec,
        transfer: TrigMap,
        constants: Vec<DVector<f64>>,
    ) -> Result<Self> {
        if twist.rank() != action.rank() || transfer.target_dim() != twist.target_dim() {
            return Err(Error::DimensionMismatch("twist, transfer and action disagree".into()));
        }
        check_constants(&twist, &constants)?;
        let mats: Vec<DMatrix<f64>> = action.generators().iter().map(|g| g.to_f64()).collect();
        let (t, cs, psis) = (transfer.clone(), constants.clone(), twist.matrices.clone());
        let callback: Callback = Arc::new(move |g, x| t.eval(&(&mats[g] * x)) + &cs[g] - &psis[g] * t.eval(x));
        let sup_bound = transfer.sup_bound();
        Ok(HolderCocycle {
            twist,
            kappa: 1.0,
            sup_bound,
            kind: CocycleKind::PlantedCoboundary { transfer, constants },
            callback,
        })
    }

    /// Generator values given directly as trigonometric maps. Over Z^k with k > 1 this
    /// is generally not a cocycle.
    pub fn trigonometric(twist: TwistSpec, generators: Vec<TrigMap>) -> Result<Self> {
        if generators.len() != twist.rank() || generators.iter().any(|m| m.target_dim() != twist.target_dim()) {
            return Err(Error::DimensionMismatch("one map per generator in the target dimension".into()));
        }
        let sup_bound = generators.iter().map(TrigMap::sup_bound).fold(0.0, f64::max);
        let maps = generators.clone();
        let callback: Callback = Arc::new(move |g, x| maps[g].eval(x));
        Ok(HolderCocycle { twist, kappa: 1.0, sup_bound, kind: CocycleKind::Trigonometric { generators }, callback })
    }

    pub fn twist(&self) -> &TwistSpec {
        &self.twist
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Declares a smaller Hölder exponent; smooth cocycles are `kappa`-Hölder for every `kappa <= 1`.
    pub fn with_kappa(mut self, kappa: f64) -> Result<Self> {
        check_kappa(kappa)?;
        self.kappa = kappa;
        Ok(self)
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    pub fn generator_value(&self, g: usize, x: &DVector<f64>) -> DVector<f64> {
        (self.callback)(g, x)
    }

    fn letter_value(&self, action: &ToralAbelianAction, g: usize, sign: i64, x: &DVector<f64>) -> DVector<f64> {
        if sign > 0 {
            (self.callback)(g, x)
        } else {
            let back = action.apply_letter(g, -1, x);
            -(self.twist.letter(g, -1) * (self.callback)(g, &back))
        }
    }

    /// `beta(a, x)` extended from the generators along the canonical word of `a`.
    pub fn evaluate(&self, action: &ToralAbelianAction, a: &Element, x: &DVector<f64>) -> DVector<f64> {
        let mut value = DVector::zeros(self.twist.target_dim());
        let mut point = x.clone();
        for (g, s) in a.word().into_iter().rev() {
            value = self.letter_value(action, g, s, &point) + self.twist.letter(g, s) * value;
            point = action.apply_letter(g, s, &point);
        }
        value
    }

    /// Max of `|beta(ab,x) - beta(a,b.x) - psi_a beta(b,x)|` over the samples.
    pub fn cocycle_residual(&self, action: &ToralAbelianAction, samples: &[(Element, Element, DVector<f64>)]) -> f64 {
        samples
            .iter()
            .map(|(a, b, x)| {
                let lhs = self.evaluate(action, &a.add(b), x);
                let rhs = self.evaluate(action, a, &action.apply(b, x)) + self.twist.psi(a) * self.evaluate(action, b, x);
                (lhs - rhs).norm()
            })
            .fold(0.0, f64::max)
    }
}

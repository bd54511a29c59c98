use nalgebra::{DMatrix, DVector};

use crate::action::{Element, ToralAbelianAction};
use crate::cocycle::HolderCocycle;
use crate::error::{Error, Result};
use crate::norm::{adapted_norm, AdaptedNorm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfConfig {
    /// Target accuracy of a potential.
    pub tolerance: f64,
    /// Maximum number of terms of the defining sequence.
    pub budget: usize,
    /// Largest cycle functional accepted as zero.
    pub cycle_tolerance: f64,
    /// Relative size of off-leaf components treated as rounding noise.
    pub leaf_tolerance: f64,
    /// Allowed deviation of twist eigenvalue moduli from 1.
    pub modulus_tolerance: f64,
}

impl Default for PcfConfig {
    fn default() -> Self {
        PcfConfig { tolerance: 1e-12, budget: 200, cycle_tolerance: 1e-8, leaf_tolerance: 1e-9, modulus_tolerance: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leaf {
    Stable,
    Unstable,
}

#[derive(Debug, Clone)]
pub struct Potential {
    pub value: DVector<f64>,
    pub leaf: Leaf,
    pub iterations: usize,
    /// Norms of `gamma_{n+1} - gamma_n`.
    pub increments: Vec<f64>,
    /// Per-step ratio of the geometric estimate.
    pub ratio_bound: f64,
    /// Remaining tail after truncation, from `ratio_bound`.
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Smallness {
    pub epsilon: f64,
    /// `epsilon^(kappa/3)`.
    pub threshold: f64,
    /// Largest adapted operator norm of `psi_s^(+-1)` over the generators.
    pub twist_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    /// `exp` of the least-squares slope of `log mean |gamma_{n+1} - gamma_n|`.
    pub rate: f64,
    /// Per-step factor `lambda^kappa * |psi^{-1}|` of the estimate chain.
    pub chain_bound: f64,
    /// The coarser ratio `lambda^(kappa/3)`.
    pub coarse_bound: f64,
    pub window: (usize, usize),
    pub samples: usize,
}

impl DecayFit {
    pub fn relative_gap(&self) -> f64 {
        (self.rate - self.chain_bound).abs() / self.chain_bound
    }
}

/// Potentials and cycle functionals of a twisted cocycle over a toral action.
#[derive(Debug, Clone)]
pub struct Pcf<'a> {
    pub(crate) action: &'a ToralAbelianAction,
    pub(crate) cocycle: &'a HolderCocycle,
    pub(crate) cfg: PcfConfig,
    norm: AdaptedNorm,
    smallness: Smallness,
}

fn frac(x: &DVector<f64>) -> DVector<f64> {
    x.map(|v| v - v.floor())
}

impl<'a> Pcf<'a> {
    pub fn new(action: &'a ToralAbelianAction, cocycle: &'a HolderCocycle, cfg: PcfConfig) -> Result<Self> {
        if cocycle.twist().rank() != action.rank() {
            return Err(Error::DimensionMismatch("twist and action have different ranks".into()));
        }
        let epsilon = action.epsilon();
        let threshold = epsilon.powf(cocycle.kappa() / 3.0);
        let norm = adapted_norm(&cocycle.twist().family(), (threshold - 1.0) / 2.0, cfg.modulus_tolerance)?;
        let twist_norm = norm.max_operator_norm(&cocycle.twist().family());
        if twist_norm >= threshold {
            return Err(Error::SmallnessViolated { norm: twist_norm, threshold });
        }
        Ok(Pcf { action, cocycle, cfg, norm, smallness: Smallness { epsilon, threshold, twist_norm } })
    }

    pub fn action(&self) -> &ToralAbelianAction {
        self.action
    }

    pub fn cocycle(&self) -> &HolderCocycle {
        self.cocycle
    }

    pub fn config(&self) -> &PcfConfig {
        &self.cfg
    }

    pub fn smallness(&self) -> Smallness {
        self.smallness
    }

    pub fn adapted_norm(&self) -> &AdaptedNorm {
        &self.norm
    }

    pub fn beta(&self, a: &Element, x: &DVector<f64>) -> DVector<f64> {
        self.cocycle.evaluate(self.action, a, x)
    }

    fn check_element(&self, a: &Element) -> Result<()> {
        if a.0.len() != self.action.rank() {
            return Err(Error::DimensionMismatch("element has wrong number of exponents".into()));
        }
        Ok(())
    }

    /// Eigenline coordinates of `v`, with components below the leaf tolerance cleared.
    pub(crate) fn leaf_coordinates(&self, v: &DVector<f64>) -> DVector<f64> {
        let c = self.action.line_coordinates(v);
        let scale = c.amax();
        c.map(|t| if t.abs() <= self.cfg.leaf_tolerance * scale { 0.0 } else { t })
    }

    /// Contracting element for displacement coordinates `coords` and the leaf type for `a`.
    fn orient(&self, a: &Element, coords: &DVector<f64>) -> Result<(Element, Leaf)> {
        let mods: Vec<f64> = (0..coords.len())
            .filter(|&i| coords[i] != 0.0)
            .map(|i| self.action.element_eigenvalue(a, i).abs())
            .collect();
        if mods.iter().all(|&m| m < 1.0 - 1e-12) {
            Ok((a.clone(), Leaf::Stable))
        } else if mods.iter().all(|&m| m > 1.0 + 1e-12) {
            Ok((a.inverse(), Leaf::Unstable))
        } else {
            Err(Error::NotOnCommonLeaf)
        }
    }

    fn chain_ratio(&self, e: &Element, coords: &DVector<f64>) -> f64 {
        let lambda = (0..coords.len())
            .filter(|&i| coords[i] != 0.0)
            .map(|i| self.action.element_eigenvalue(e, i).abs())
            .fold(0.0, f64::max);
        let psi_inv = self.cocycle.twist().psi(&e.inverse());
        lambda.powf(self.cocycle.kappa()) * self.norm.operator_norm(&psi_inv)
    }

    /// Increments `psi_e^{-(n+1)} (beta(e, e^n y) - beta(e, e^n x))` for a contracting `e`,
    /// `y - x` given in eigenline coordinates. Stops after two consecutive increments
    /// below `stop` or after `terms` steps.
    fn series(&self, e: &Element, x: &DVector<f64>, coords: &DVector<f64>, terms: usize, stop: f64) -> (DVector<f64>, Vec<f64>, bool) {
        let m = self.action.element_matrix(e).expect("element within range").to_f64();
        let psi_inv: DMatrix<f64> = self.cocycle.twist().psi(&e.inverse());
        let lambdas: Vec<f64> = (0..coords.len()).map(|i| self.action.element_eigenvalue(e, i)).collect();
        let lines = self.action.lines();
        let q = self.cocycle.twist().target_dim();
        let mut sum = DVector::zeros(q);
        let mut p = psi_inv.clone();
        let mut z = frac(x);
        let mut scale: Vec<f64> = coords.iter().copied().collect();
        let mut increments = Vec::new();
        let mut below = 0;
        for _ in 0..terms {
            let mut disp = DVector::zeros(x.len());
            for (i, s) in scale.iter().enumerate() {
                if *s != 0.0 {
                    disp += &lines[i] * *s;
                }
            }
            let delta = self.beta(e, &(&z + disp)) - self.beta(e, &z);
            let inc = &p * delta;
            let size = inc.norm();
            sum += inc;
            increments.push(size);
            below = if size < stop { below + 1 } else { 0 };
            if below >= 2 {
                return (sum, increments, true);
            }
            p = &p * &psi_inv;
            z = frac(&(&m * z));
            for (s, l) in scale.iter_mut().zip(&lambdas) {
                *s *= l;
            }
        }
        (sum, increments, false)
    }

    pub(crate) fn potential_coords(&self, a: &Element, x: &DVector<f64>, coords: &DVector<f64>) -> Result<Potential> {
        self.check_element(a)?;
        let q = self.cocycle.twist().target_dim();
        if coords.iter().all(|&c| c == 0.0) {
            return Ok(Potential {
                value: DVector::zeros(q),
                leaf: Leaf::Stable,
                iterations: 0,
                increments: vec![],
                ratio_bound: 0.0,
                tail_bound: 0.0,
            });
        }
        let (e, leaf) = self.orient(a, coords)?;
        let (value, increments, converged) = self.series(&e, x, coords, self.cfg.budget, self.cfg.tolerance / 10.0);
        if !converged {
            return Err(Error::ConvergenceBudgetExceeded { budget: self.cfg.budget });
        }
        let ratio_bound = self.chain_ratio(&e, coords);
        let last = increments.last().copied().unwrap_or(0.0);
        let tail_bound = if ratio_bound < 1.0 { last * ratio_bound / (1.0 - ratio_bound) } else { f64::INFINITY };
        Ok(Potential { value, leaf, iterations: increments.len(), increments, ratio_bound, tail_bound })
    }

    /// `p_{beta,a}(x, y)` for `x, y` on a common stable or unstable leaf of `a`.
    pub fn potential(&self, a: &Element, x: &DVector<f64>, y: &DVector<f64>) -> Result<Potential> {
        if x.len() != self.action.dim() || y.len() != self.action.dim() {
            return Err(Error::DimensionMismatch("point dimension".into()));
        }
        let coords = self.leaf_coordinates(&(y - x));
        self.potential_coords(a, x, &coords)
    }

    /// `|p_{beta,a}(x,y) - p_{beta,b}(x,y)|`.
    pub fn independence(&self, a: &Element, b: &Element, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        Ok((self.potential(a, x, y)?.value - self.potential(b, x, y)?.value).norm())
    }

    /// Deviation from `p(a.x, a.y) = beta(a,x) + psi_a p(x,y) - beta(a,y)`, with `c`
    /// the element used for the potentials.
    pub fn equivariance(&self, a: &Element, c: &Element, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        let (ax, ay) = (self.action.apply(a, x), self.action.apply(a, y));
        let lhs = self.potential(c, &ax, &ay)?.value;
        let rhs = self.beta(a, x) + self.cocycle.twist().psi(a) * self.potential(c, x, y)?.value - self.beta(a, y);
        Ok((lhs - rhs).norm())
    }

    /// Log-linear fit of the mean increment sizes over the given leaf pairs.
    pub fn decay_fit(&self, a: &Element, pairs: &[(DVector<f64>, DVector<f64>)]) -> Result<DecayFit> {
        self.check_element(a)?;
        let mut sums: Vec<f64> = vec![0.0; self.cfg.budget];
        let mut chain_bound: f64 = 0.0;
        let mut coarse_bound: f64 = 0.0;
        for (x, y) in pairs {
            let coords = self.leaf_coordinates(&(y - x));
            if coords.iter().all(|&c| c == 0.0) {
                return Err(Error::InvalidInput("degenerate pair".into()));
            }
            let (e, _) = self.orient(a, &coords)?;
            chain_bound = chain_bound.max(self.chain_ratio(&e, &coords));
            let lambda = (0..coords.len())
                .filter(|&i| coords[i] != 0.0)
                .map(|i| self.action.element_eigenvalue(&e, i).abs())
                .fold(0.0, f64::max);
            coarse_bound = coarse_bound.max(lambda.powf(self.cocycle.kappa() / 3.0));
            let (_, incs, _) = self.series(&e, x, &coords, self.cfg.budget, 0.0);
            for (s, v) in sums.iter_mut().zip(incs) {
                *s += v;
            }
        }
        let n = pairs.len() as f64;
        let means: Vec<f64> = sums.iter().map(|s| s / n).collect();
        let floor = 1e-12 * means.iter().copied().fold(0.0, f64::max);
        let end = means.iter().skip(1).position(|&m| m <= floor).map_or(means.len(), |p| p + 1);
        let window = (1, end);
        if end < 6 {
            return Err(Error::InvalidInput("too few terms above the noise floor to fit".into()));
        }
        let pts: Vec<(f64, f64)> = (window.0..window.1).map(|k| (k as f64, means[k].ln())).collect();
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Ok(DecayFit { rate: (sxy / sxx).exp(), chain_bound, coarse_bound, window, samples: pairs.len() })
    }
}

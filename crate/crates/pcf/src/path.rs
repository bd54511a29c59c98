use nalgebra::DVector;

use crate::action::{Element, ToralAbelianAction};
use crate::error::{Error, Result};
use crate::potential::Pcf;

/// Path on the cover moving along one eigenline per leg.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovPath {
    pub base: DVector<f64>,
    /// `(eigenline index, signed displacement)`.
    pub legs: Vec<(usize, f64)>,
}

impl LyapunovPath {
    pub fn new(base: DVector<f64>, legs: Vec<(usize, f64)>) -> Self {
        LyapunovPath { base, legs }
    }

    /// Legs `i` by `t`, `j` by `r`, `i` by `-t`, `j` by `-r`.
    pub fn parallelogram(base: DVector<f64>, i: usize, t: f64, j: usize, r: f64) -> Self {
        LyapunovPath { base, legs: vec![(i, t), (j, r), (i, -t), (j, -r)] }
    }

    /// One leg per eigenline, in index order, from `from` to `to`.
    pub fn between(action: &ToralAbelianAction, from: &DVector<f64>, to: &DVector<f64>) -> Self {
        let c = action.line_coordinates(&(to - from));
        let legs = c.iter().enumerate().filter(|(_, &t)| t != 0.0).map(|(i, &t)| (i, t)).collect();
        LyapunovPath { base: from.clone(), legs }
    }

    pub fn points(&self, action: &ToralAbelianAction) -> Vec<DVector<f64>> {
        let mut pts = vec![self.base.clone()];
        for &(i, t) in &self.legs {
            let next = pts.last().expect("nonempty") + &action.lines()[i] * t;
            pts.push(next);
        }
        pts
    }

    pub fn end(&self, action: &ToralAbelianAction) -> DVector<f64> {
        self.points(action).pop().expect("nonempty")
    }

    /// `self` followed by `other`; the base of `other` is taken to be the end of `self`.
    pub fn concat(&self, other: &LyapunovPath) -> Self {
        LyapunovPath { base: self.base.clone(), legs: self.legs.iter().chain(&other.legs).copied().collect() }
    }

    pub fn reverse(&self, action: &ToralAbelianAction) -> Self {
        LyapunovPath { base: self.end(action), legs: self.legs.iter().rev().map(|&(i, t)| (i, -t)).collect() }
    }

    pub fn is_closed(&self, action: &ToralAbelianAction, tol: f64) -> bool {
        (self.end(action) - &self.base).norm() <= tol * (1.0 + self.base.norm())
    }
}

#[derive(Debug, Clone)]
pub struct Transfer {
    pub points: Vec<DVector<f64>>,
    /// Reconstructed transfer map at `points`.
    pub values: Vec<DVector<f64>>,
    /// `i(s)` per generator.
    pub constants: Vec<DVector<f64>>,
    /// Max of `|beta(s,x) - (T(s.x) + i(s) - psi_s T(x))|` over points and generators.
    pub residual: f64,
    /// Largest cycle functional on the spanning family.
    pub cycle_deviation: f64,
}

impl Pcf<'_> {
    /// Sum over legs of `p_{beta,a_k}(x_k, x_{k-1})`, with `a_k` the contracting generator
    /// of the leg's eigenline.
    pub fn path_functional(&self, path: &LyapunovPath) -> Result<DVector<f64>> {
        let action = self.action;
        if path.base.len() != action.dim() || path.legs.iter().any(|&(i, _)| i >= action.dim()) {
            return Err(Error::DimensionMismatch("path does not fit the action".into()));
        }
        let pts = path.points(action);
        let mut total = DVector::zeros(self.cocycle.twist().target_dim());
        for (k, &(i, t)) in path.legs.iter().enumerate() {
            let a = action.contracting_generator(i)?;
            let mut coords = DVector::zeros(action.dim());
            coords[i] = -t;
            total += self.potential_coords(&a, &pts[k + 1], &coords)?.value;
        }
        Ok(total)
    }

    /// Size of the functional on a closed path.
    pub fn cycle_test(&self, path: &LyapunovPath) -> Result<f64> {
        if !path.is_closed(self.action, 1e-9) {
            return Err(Error::NotClosed);
        }
        Ok(self.path_functional(path)?.norm())
    }

    /// Parallelograms over every pair of eigenlines at a few base points.
    pub fn spanning_cycles(&self, bases: &[DVector<f64>]) -> Vec<LyapunovPath> {
        let d = self.action.dim();
        let mut out = Vec::new();
        for (k, b) in bases.iter().take(4).enumerate() {
            let t = 0.31 + 0.17 * k as f64;
            let r = -0.53 + 0.11 * k as f64;
            for i in 0..d {
                for j in i + 1..d {
                    out.push(LyapunovPath::parallelogram(b.clone(), i, t, j, r));
                }
            }
        }
        out
    }

    /// `T(x) = F(tau_x)` for paths from `x0`, and `i(s) = beta(s, x0) - T(s.x0)`, so that
    /// `beta(s,x) = T(s.x) + i(s) - psi_s T(x)`.
    pub fn transfer(&self, x0: &DVector<f64>, grid: &[DVector<f64>]) -> Result<Transfer> {
        let action = self.action;
        let mut bases = vec![x0.clone()];
        bases.extend(grid.iter().take(3).cloned());
        let mut cycle_deviation: f64 = 0.0;
        for c in self.spanning_cycles(&bases) {
            cycle_deviation = cycle_deviation.max(self.cycle_test(&c)?);
        }
        if cycle_deviation > self.cfg.cycle_tolerance {
            return Err(Error::CycleObstruction { deviation: cycle_deviation });
        }
        let t = |x: &DVector<f64>| self.path_functional(&LyapunovPath::between(action, x0, x));
        let k = action.rank();
        let constants = (0..k)
            .map(|g| {
                let s = Element::generator(k, g);
                Ok(self.beta(&s, x0) - t(&action.apply(&s, x0))?)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut values = Vec::with_capacity(grid.len());
        let mut residual: f64 = 0.0;
        for x in grid {
            let tx = t(x)?;
            for (g, c) in constants.iter().enumerate() {
                let s = Element::generator(k, g);
                let model = t(&action.apply(&s, x))? + c - self.cocycle.twist().psi(&s) * &tx;
                residual = residual.max((self.beta(&s, x) - model).norm());
            }
            values.push(tx);
        }
        Ok(Transfer { points: grid.to_vec(), values, constants, residual, cycle_deviation })
    }
}

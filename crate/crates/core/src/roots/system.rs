use std::collections::BTreeMap;

use super::functional::{Functional, RayKey};
use crate::error::Result;
use crate::lie::{AbelianSubalgebra, LieAlgebra, Representation};
use crate::linalg::{joint_generalized_eigenspaces, QMatrix, Subspace};

/// Decomposition of a Lie algebra (and optionally a representation) under an
/// abelian subalgebra into joint generalized eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRootSystem {
    subalgebra: AbelianSubalgebra,
    algebra_dim: usize,
    zero_space: Subspace,
    roots: BTreeMap<Functional, Subspace>,
    weights: Option<WeightSystem>,
}

/// Restricted weights of a representation, including the zero weight when present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub target_dim: usize,
    pub spaces: BTreeMap<Functional, Subspace>,
}

impl WeightSystem {
    pub fn zero_weight_space(&self) -> Option<&Subspace> {
        self.spaces.iter().find(|(f, _)| f.is_zero()).map(|(_, s)| s)
    }
}

/// One coarse class: all functionals on a common open ray, with their summed spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseClass {
    pub key: RayKey,
    pub members: Vec<Functional>,
    /// Sum of the member root spaces, inside the Lie algebra.
    pub root_space: Subspace,
    /// Sum of the member weight spaces, inside the representation space.
    pub weight_space: Option<Subspace>,
}

fn decompose(family: &[QMatrix]) -> Result<BTreeMap<Functional, Subspace>> {
    Ok(joint_generalized_eigenspaces(family)?
        .into_iter()
        .map(|j| (Functional::new(j.eigenvalues), j.space))
        .collect())
}

/// Restricted roots of `a` on `alg`.
///
/// The joint generalized eigenspaces of `ad(X_i)` coincide with those of the
/// split parts `ad(S_i)`, with the same eigenvalues, so the generators are used directly.
pub fn restricted_roots(alg: &LieAlgebra, a: &AbelianSubalgebra) -> Result<RestrictedRootSystem> {
    let ads: Vec<QMatrix> = a.generators().iter().map(|x| alg.ad(x)).collect();
    let mut roots = decompose(&ads)?;
    let zero = Functional::zero(a.rank());
    let zero_space = roots.remove(&zero).unwrap_or_else(|| Subspace::zero(alg.dim()));
    Ok(RestrictedRootSystem {
        subalgebra: a.clone(),
        algebra_dim: alg.dim(),
        zero_space,
        roots,
        weights: None,
    })
}

/// Restricted weights of `rho` with respect to `a`.
pub fn restricted_weights(rho: &Representation, a: &AbelianSubalgebra) -> Result<WeightSystem> {
    let mats: Vec<QMatrix> = a.generators().iter().map(|x| rho.act(x)).collect();
    Ok(WeightSystem { target_dim: rho.target_dim(), spaces: decompose(&mats)? })
}

impl RestrictedRootSystem {
    pub fn with_weights(mut self, weights: WeightSystem) -> Self {
        self.weights = Some(weights);
        self
    }

    pub fn subalgebra(&self) -> &AbelianSubalgebra {
        &self.subalgebra
    }

    pub fn rank(&self) -> usize {
        self.subalgebra.rank()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn zero_space(&self) -> &Subspace {
        &self.zero_space
    }

    pub fn roots(&self) -> &BTreeMap<Functional, Subspace> {
        &self.roots
    }

    pub fn root_space(&self, mu: &Functional) -> Option<&Subspace> {
        self.roots.get(mu)
    }

    pub fn weights(&self) -> Option<&WeightSystem> {
        self.weights.as_ref()
    }

    pub fn is_root(&self, mu: &Functional) -> bool {
        self.roots.contains_key(mu)
    }

    /// Nonzero roots and weights, sorted and deduplicated.
    pub fn functionals(&self) -> Vec<Functional> {
        let mut all: Vec<Functional> = self.roots.keys().cloned().collect();
        if let Some(w) = &self.weights {
            all.extend(w.spaces.keys().filter(|f| !f.is_zero()).cloned());
        }
        all.sort();
        all.dedup();
        all
    }

    pub fn contains_functional(&self, f: &Functional) -> bool {
        self.roots.contains_key(f)
            || self.weights.as_ref().is_some_and(|w| !f.is_zero() && w.spaces.contains_key(f))
    }

    /// Coarse classes keyed by ray, in key order.
    pub fn coarse_classes(&self) -> Vec<CoarseClass> {
        let mut groups: BTreeMap<RayKey, Vec<Functional>> = BTreeMap::new();
        for f in self.functionals() {
            groups.entry(f.ray_key()).or_default().push(f);
        }
        groups
            .into_iter()
            .map(|(key, members)| {
                let root_space = Subspace::sum_all(
                    self.algebra_dim,
                    members.iter().filter_map(|m| self.roots.get(m)),
                );
                let weight_space = self.weights.as_ref().map(|w| {
                    Subspace::sum_all(w.target_dim, members.iter().filter_map(|m| w.spaces.get(m)))
                });
                CoarseClass { key, members, root_space, weight_space }
            })
            .collect()
    }

    pub fn class_of(&self, f: &Functional) -> Option<CoarseClass> {
        let key = f.ray_key();
        self.coarse_classes().into_iter().find(|c| c.key == key)
    }

    /// `dim g0 + sum dim g_mu` equals the algebra dimension.
    pub fn is_complete(&self) -> bool {
        let total: usize = self.zero_space.dim() + self.roots.values().map(Subspace::dim).sum::<usize>();
        let weights_ok = self
            .weights
            .as_ref()
            .is_none_or(|w| w.spaces.values().map(Subspace::dim).sum::<usize>() == w.target_dim);
        total == self.algebra_dim && weights_ok
    }

    /// Every root has a negative of equal dimension.
    pub fn is_symmetric(&self) -> bool {
        self.roots
            .iter()
            .all(|(mu, s)| self.roots.get(&mu.neg()).is_some_and(|t| t.dim() == s.dim()))
    }

    fn space_of(&self, f: &Functional) -> Option<&Subspace> {
        if f.is_zero() {
            Some(&self.zero_space)
        } else {
            self.roots.get(f)
        }
    }

    /// First pair `(mu, nu)` (zero allowed) with `[g_mu, g_nu]` not inside `g_{mu+nu}`.
    pub fn grading_violation(&self, alg: &LieAlgebra) -> Option<(Functional, Functional)> {
        let mut all: Vec<(Functional, &Subspace)> =
            vec![(Functional::zero(self.rank()), &self.zero_space)];
        all.extend(self.roots.iter().map(|(f, s)| (f.clone(), s)));
        for (mu, a) in &all {
            for (nu, b) in &all {
                let target = self.space_of(&mu.add(nu));
                for x in a.basis() {
                    for y in b.basis() {
                        let br = alg.bracket(x, y);
                        let ok = match target {
                            Some(t) => t.contains(&br),
                            None => br.iter().all(num_traits::Zero::is_zero),
                        };
                        if !ok {
                            return Some((mu.clone(), nu.clone()));
                        }
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::qvec;

    #[test]
    fn sl3_cartan_roots() {
        let g = LieAlgebra::sl(3).unwrap();
        let a = AbelianSubalgebra::new(&g, vec![g.basis_vector(0), g.basis_vector(1)]).unwrap();
        let sys = restricted_roots(&g, &a).unwrap();
        assert_eq!(sys.roots().len(), 6);
        assert!(sys.roots().values().all(|s| s.dim() == 1));
        assert_eq!(sys.zero_space().dim(), 2);
        assert!(sys.is_complete() && sys.is_symmetric());
        assert!(sys.grading_violation(&g).is_none());
        assert_eq!(sys.coarse_classes().len(), 6);
        // e1 - e2 evaluated on H1, H2
        assert!(sys.is_root(&Functional::new(qvec(&[2, -1]))));
    }
}

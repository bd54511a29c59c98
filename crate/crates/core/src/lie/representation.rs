use num_traits::Zero;

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::rational::{qi, Rational};
use crate::linalg::{QMatrix, Subspace};

/// Infinitesimal representation `d rho` of a Lie algebra on `Q^N`, one matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    target_dim: usize,
    action: Vec<QMatrix>,
    blocks: Vec<Subspace>,
}

impl Representation {
    /// Checks the homomorphism identity on all basis pairs and invariance of the declared blocks.
    pub fn new(alg: &LieAlgebra, action: Vec<QMatrix>, blocks: Vec<Subspace>) -> Result<Self> {
        if action.len() != alg.dim() {
            return Err(Error::NotARepresentation(format!(
                "expected {} action matrices, got {}",
                alg.dim(),
                action.len()
            )));
        }
        let n = action.first().map_or(0, QMatrix::rows);
        if action.iter().any(|m| !m.is_square() || m.rows() != n) {
            return Err(Error::NotARepresentation("action matrices must be square of equal size".into()));
        }
        let rep = Representation { target_dim: n, action, blocks };
        for i in 0..alg.dim() {
            for j in (i + 1)..alg.dim() {
                let lhs = rep.act(&alg.bracket_basis(i, j));
                if lhs != rep.action[i].commutator(&rep.action[j]) {
                    return Err(Error::NotARepresentation(format!(
                        "bracket not preserved on basis pair ({i},{j})"
                    )));
                }
            }
        }
        for (k, b) in rep.blocks.iter().enumerate() {
            if b.ambient_dim() != n || rep.action.iter().any(|m| !b.is_invariant_under(m)) {
                return Err(Error::NotARepresentation(format!("declared block {k} is not invariant")));
            }
        }
        Ok(rep)
    }

    /// The defining representation of a matrix Lie algebra.
    pub fn standard(alg: &LieAlgebra) -> Result<Self> {
        let real = alg
            .realization()
            .ok_or_else(|| Error::NotARepresentation("algebra has no matrix realization".into()))?;
        let n = real.matrix_size();
        Self::new(alg, real.matrices().to_vec(), vec![Subspace::full(n)])
    }

    pub fn trivial(alg: &LieAlgebra, n: usize) -> Self {
        Representation {
            target_dim: n,
            action: vec![QMatrix::zeros(n, n); alg.dim()],
            blocks: Vec::new(),
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Self> {
        if self.action.len() != other.action.len() {
            return Err(Error::NotARepresentation("summands act on different algebras".into()));
        }
        let n = self.target_dim;
        let m = other.target_dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| QMatrix::block_diagonal(&[a.clone(), b.clone()]))
            .collect();
        let pad = |s: &Subspace, offset: usize| {
            let vs: Vec<_> = s
                .basis()
                .iter()
                .map(|v| {
                    let mut w = vec![Rational::zero(); n + m];
                    for (k, x) in v.iter().enumerate() {
                        w[offset + k] = x.clone();
                    }
                    w
                })
                .collect();
            Subspace::span(n + m, &vs)
        };
        let mut blocks: Vec<Subspace> = self.blocks.iter().map(|b| pad(b, 0)).collect();
        blocks.extend(other.blocks.iter().map(|b| pad(b, n)));
        Ok(Representation { target_dim: n + m, action, blocks })
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn action_matrices(&self) -> &[QMatrix] {
        &self.action
    }

    pub fn blocks(&self) -> &[Subspace] {
        &self.blocks
    }

    /// `d rho(x)` for `x` in basis coordinates.
    pub fn act(&self, x: &[Rational]) -> QMatrix {
        let mut acc = QMatrix::zeros(self.target_dim, self.target_dim);
        for (c, m) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        acc
    }

    /// Whether some declared block is acted on by zero.
    pub fn has_trivial_block(&self) -> bool {
        self.blocks.iter().any(|b| {
            b.basis().iter().all(|v| self.action.iter().all(|m| m.mul_vec(v).iter().all(Zero::is_zero)))
        })
    }

    /// Vectors killed by every action matrix.
    pub fn invariant_vectors(&self) -> Subspace {
        if self.action.is_empty() {
            return Subspace::full(self.target_dim);
        }
        let stacked = QMatrix::vstack(&self.action).expect("equal widths");
        crate::linalg::kernel(&stacked)
    }
}

/// Abelian subalgebra of a [`LieAlgebra`], given by independent commuting generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSubalgebra {
    generators: Vec<Vec<Rational>>,
}

impl AbelianSubalgebra {
    pub fn new(alg: &LieAlgebra, generators: Vec<Vec<Rational>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != alg.dim()) {
            return Err(Error::DimensionMismatch("generator coordinates have wrong length".into()));
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if !alg.bracket(&generators[i], &generators[j]).iter().all(Zero::is_zero) {
                    return Err(Error::NotAbelian { first: i, second: j });
                }
            }
        }
        if Subspace::span(alg.dim(), &generators).dim() != generators.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(AbelianSubalgebra { generators })
    }

    /// Generators given as matrices in the algebra's realization.
    pub fn from_matrices(alg: &LieAlgebra, mats: &[QMatrix]) -> Result<Self> {
        for i in 0..mats.len() {
            for j in (i + 1)..mats.len() {
                if !mats[i].commutes_with(&mats[j]) {
                    return Err(Error::NotAbelian { first: i, second: j });
                }
            }
        }
        let coords = mats.iter().map(|m| alg.coordinates_of(m)).collect::<Result<Vec<_>>>()?;
        Self::new(alg, coords)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    /// Coordinates of the Jordan–Chevalley split (semisimple) parts of the generators.
    ///
    /// With a matrix realization the matrix semisimple part is used when it lies in
    /// the algebra; otherwise an element whose `ad` equals the semisimple part of
    /// `ad(X)` is solved for.
    pub fn split_parts(&self, alg: &LieAlgebra) -> Result<Vec<Vec<Rational>>> {
        self.generators.iter().map(|g| split_part(alg, g)).collect()
    }

    /// `ad` matrices of the split parts.
    pub fn split_ad_matrices(&self, alg: &LieAlgebra) -> Result<Vec<QMatrix>> {
        Ok(self.split_parts(alg)?.iter().map(|s| alg.ad(s)).collect())
    }
}

fn split_part(alg: &LieAlgebra, x: &[Rational]) -> Result<Vec<Rational>> {
    use crate::linalg::jordan_chevalley;
    if let Some(real) = alg.realization() {
        let m = real.matrix(x);
        let jc = jordan_chevalley(&m)?;
        if let Some(c) = real.coordinates(&jc.semisimple) {
            return Ok(c);
        }
    }
    let target = jordan_chevalley(&alg.ad(x))?.semisimple;
    let d = alg.dim();
    let cols: Vec<Vec<Rational>> = (0..d).map(|k| alg.ad(&alg.basis_vector(k)).vectorize()).collect();
    let sys = QMatrix::from_columns(&cols, d * d);
    sys.solve(&target.vectorize()).ok_or(Error::NotInAlgebra)
}

/// `g ⋉ Q^N`: basis of `g` followed by `v1..vN`; `[X, t] = d rho(X) t`, `[t, t'] = 0`.
pub fn semidirect(g: &LieAlgebra, rho: &Representation) -> Result<LieAlgebra> {
    if rho.action.len() != g.dim() {
        return Err(Error::NotARepresentation("representation acts on a different algebra".into()));
    }
    let (d, n) = (g.dim(), rho.target_dim);
    let total = d + n;
    let mut c = vec![vec![vec![Rational::zero(); total]; total]; total];
    for i in 0..d {
        for j in 0..d {
            for (k, v) in g.bracket_basis(i, j).into_iter().enumerate() {
                c[i][j][k] = v;
            }
        }
        for t in 0..n {
            for s in 0..n {
                let v = rho.action[i].get(s, t).clone();
                c[d + t][i][d + s] = -v.clone();
                c[i][d + t][d + s] = v;
            }
        }
    }
    let mut labels = g.labels().to_vec();
    labels.extend((1..=n).map(|k| format!("v{k}")));
    LieAlgebra::from_structure_constants(labels, c)
}

/// Elements commuting with every element of `s`.
pub fn centralizer(alg: &LieAlgebra, s: &[Vec<Rational>]) -> Subspace {
    if s.is_empty() {
        return Subspace::full(alg.dim());
    }
    let ads: Vec<QMatrix> = s.iter().map(|x| alg.ad(x)).collect();
    crate::linalg::kernel(&QMatrix::vstack(&ads).expect("equal widths"))
}

pub fn center(alg: &LieAlgebra) -> Subspace {
    let basis: Vec<_> = (0..alg.dim()).map(|i| alg.basis_vector(i)).collect();
    centralizer(alg, &basis)
}

/// Derived subalgebra `[L, L]` and whether it is all of `L`.
pub fn derived_and_perfect(alg: &LieAlgebra) -> (Subspace, bool) {
    let d = alg.dim();
    let mut vs = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let b = alg.bracket_basis(i, j);
            if !b.iter().all(Zero::is_zero) {
                vs.push(b);
            }
        }
    }
    let derived = Subspace::span(d, &vs);
    let perfect = derived.dim() == d;
    (derived, perfect)
}

/// Abelian algebra of dimension `n` with basis labels `a1..an`.
pub fn abelian(n: usize) -> LieAlgebra {
    let labels = (1..=n).map(|k| format!("a{k}")).collect();
    LieAlgebra::from_structure_constants(labels, vec![vec![vec![qi(0); n]; n]; n]).expect("abelian algebra")
}

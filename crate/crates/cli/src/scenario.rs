//! Scenario files: what to build and which analyses to run.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::json::Q;

pub type QRows = Vec<Vec<Q>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default)]
    pub abelian: Option<AbelianSpec>,
    #[serde(default)]
    pub representation: Option<RepresentationSpec>,
    #[serde(default)]
    pub cartan: Option<CartanSpec>,
    /// Each ideal is spanned by matrices of the algebra.
    #[serde(default)]
    pub ideals: Vec<Vec<QRows>>,
    #[serde(default)]
    pub steinberg: Option<SteinbergSpec>,
    #[serde(default)]
    pub pcf: Option<PcfSpec>,
    #[serde(default)]
    pub analyses: Vec<Analysis>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Sl { n: usize },
    /// Lie algebra generated by the given matrices under brackets.
    Matrix { basis: Vec<QRows> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianSpec {
    pub generators: Vec<QRows>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RepresentationSpec {
    Standard,
    Trivial { dim: usize },
    /// One action matrix per algebra basis element, plus declared irreducible blocks.
    Matrices { action: Vec<QRows>, blocks: Vec<Vec<Vec<Q>>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CartanSpec {
    Diagonal,
    Matrices { generators: Vec<QRows> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteinbergSpec {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_round_trips")]
    pub round_trips: usize,
    #[serde(default = "default_samples")]
    pub samples: Vec<Q>,
}

impl Default for SteinbergSpec {
    fn default() -> Self {
        SteinbergSpec { seed: default_seed(), round_trips: default_round_trips(), samples: default_samples() }
    }
}

fn default_seed() -> u64 {
    7
}

fn default_round_trips() -> usize {
    100
}

fn default_samples() -> Vec<Q> {
    use rigidkit_core::linalg::rational::q;
    vec![Q(q(1, 1)), Q(q(-3, 2)), Q(q(5, 7))]
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub amplitude: f64,
    pub frequency: Vec<i64>,
    #[serde(default)]
    pub phase: f64,
}

/// Trigonometric polynomial map: one list of terms per target component.
pub type TrigSpec = Vec<Vec<TermSpec>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CocycleSpec {
    /// `beta(s,x) = T(s.x) + c(s) - psi_s T(x)`; `T` defaults to the standard sine map.
    PlantedCoboundary {
        #[serde(default = "default_amplitude")]
        amplitude: f64,
        #[serde(default)]
        transfer: Option<TrigSpec>,
        #[serde(default)]
        constants: Option<Vec<Vec<f64>>>,
    },
    Constant { constants: Vec<Vec<f64>> },
    /// Generator values given directly.
    Trigonometric { generators: Vec<TrigSpec> },
}

fn default_amplitude() -> f64 {
    0.01
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcfSpec {
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default = "one")]
    pub target_dim: usize,
    /// One twist matrix per generator; identity when absent.
    #[serde(default)]
    pub twist: Option<Vec<Vec<Vec<f64>>>>,
    pub cocycle: CocycleSpec,
    #[serde(default = "one_f")]
    pub kappa: f64,
    #[serde(default = "tolerance")]
    pub tolerance: f64,
    #[serde(default = "budget")]
    pub budget: usize,
    #[serde(default = "cycle_tolerance")]
    pub cycle_tolerance: f64,
    #[serde(default = "leaf_tolerance")]
    pub leaf_tolerance: f64,
    #[serde(default = "modulus_tolerance")]
    pub modulus_tolerance: f64,
    #[serde(default = "pcf_seed")]
    pub seed: u64,
    #[serde(default = "fifty")]
    pub cycles: usize,
    #[serde(default = "twenty")]
    pub grid: usize,
    #[serde(default = "fifty")]
    pub decay_samples: usize,
    /// Negative control: a cycle obstruction is the expected outcome.
    #[serde(default)]
    pub expect_obstruction: bool,
}

fn one() -> usize {
    1
}
fn one_f() -> f64 {
    1.0
}
fn tolerance() -> f64 {
    1e-12
}
fn budget() -> usize {
    200
}
fn cycle_tolerance() -> f64 {
    1e-8
}
fn leaf_tolerance() -> f64 {
    1e-9
}
fn modulus_tolerance() -> f64 {
    1e-6
}
fn pcf_seed() -> u64 {
    1
}
fn fifty() -> usize {
    50
}
fn twenty() -> usize {
    20
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    Roots,
    Chambers,
    Detect,
    Rigidity,
    Extend,
    SteinbergVerify,
    Pcf,
}

impl Analysis {
    pub const ALL: [Analysis; 7] = [
        Analysis::Roots,
        Analysis::Chambers,
        Analysis::Detect,
        Analysis::Rigidity,
        Analysis::Extend,
        Analysis::SteinbergVerify,
        Analysis::Pcf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::Roots => "roots",
            Analysis::Chambers => "chambers",
            Analysis::Detect => "detect",
            Analysis::Rigidity => "rigidity",
            Analysis::Extend => "extend",
            Analysis::SteinbergVerify => "steinberg-verify",
            Analysis::Pcf => "pcf",
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Analysis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Analysis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown analysis `{s}`"))
    }
}

fn check_square(what: &str, m: &[Vec<Q>], n: Option<usize>) -> Result<usize, ParseError> {
    let size = m.len();
    if size == 0 || m.iter().any(|r| r.len() != size) {
        return Err(ParseError::Invalid(format!("{what} is not a nonempty square matrix")));
    }
    if let Some(n) = n {
        if size != n {
            return Err(ParseError::Invalid(format!("{what} has size {size}, expected {n}")));
        }
    }
    Ok(size)
}

fn check_square_f<T>(what: &str, m: &[Vec<T>], n: usize) -> Result<(), ParseError> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(ParseError::Invalid(format!("{what} must be {n}x{n}")));
    }
    Ok(())
}

fn check_trig(what: &str, t: &TrigSpec, d: usize, q: usize) -> Result<(), ParseError> {
    if t.len() != q {
        return Err(ParseError::Invalid(format!("{what} needs {q} components")));
    }
    if t.iter().flatten().any(|term| term.frequency.len() != d) {
        return Err(ParseError::Invalid(format!("{what} frequencies must have length {d}")));
    }
    Ok(())
}

fn check_vectors(what: &str, vs: &[Vec<f64>], count: usize, q: usize) -> Result<(), ParseError> {
    if vs.len() != count || vs.iter().any(|v| v.len() != q) {
        return Err(ParseError::Invalid(format!("{what} needs {count} vectors of length {q}")));
    }
    Ok(())
}

impl Scenario {
    pub fn from_slice(bytes: &[u8]) -> Result<Self, ParseError> {
        let s: Scenario = serde_json::from_slice(bytes)?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<(Self, Vec<u8>), ParseError> {
        let bytes = std::fs::read(path).map_err(|e| ParseError::Io(path.display().to_string(), e.to_string()))?;
        Ok((Self::from_slice(&bytes)?, bytes))
    }

    /// Matrix size of the algebra realization.
    pub fn matrix_size(&self) -> Result<Option<usize>, ParseError> {
        let Some(spec) = &self.algebra else { return Ok(None) };
        match spec {
            AlgebraSpec::Sl { n } if *n >= 2 => Ok(Some(*n)),
            AlgebraSpec::Sl { .. } => Err(ParseError::Invalid("sl(n) needs n >= 2".into())),
            AlgebraSpec::Matrix { basis } => {
                let first = basis.first().ok_or_else(|| ParseError::Invalid("empty algebra basis".into()))?;
                let n = check_square("algebra basis matrix", first, None)?;
                for m in basis {
                    check_square("algebra basis matrix", m, Some(n))?;
                }
                Ok(Some(n))
            }
        }
    }

    /// Shape checks that need no algebra: sizes, counts and lengths.
    pub fn validate(&self) -> Result<(), ParseError> {
        let n = self.matrix_size()?;
        let needs_algebra = self.abelian.is_some() || self.cartan.is_some() || self.representation.is_some() || !self.ideals.is_empty();
        if n.is_none() && needs_algebra {
            return Err(ParseError::Invalid("algebraic inputs given without an algebra".into()));
        }
        if let Some(a) = &self.abelian {
            for m in &a.generators {
                check_square("abelian generator", m, n)?;
            }
        }
        if let Some(CartanSpec::Matrices { generators }) = &self.cartan {
            for m in generators {
                check_square("cartan generator", m, n)?;
            }
        }
        for ideal in &self.ideals {
            for m in ideal {
                check_square("ideal spanning matrix", m, n)?;
            }
        }
        if let Some(RepresentationSpec::Matrices { action, blocks }) = &self.representation {
            let first = action.first().ok_or_else(|| ParseError::Invalid("empty representation".into()))?;
            let dim = check_square("representation matrix", first, None)?;
            for m in action {
                check_square("representation matrix", m, Some(dim))?;
            }
            if blocks.iter().flatten().any(|v| v.len() != dim) {
                return Err(ParseError::Invalid(format!("block vectors must have length {dim}")));
            }
        }
        if let Some(p) = &self.pcf {
            p.validate()?;
        }
        Ok(())
    }
}

impl PcfSpec {
    fn validate(&self) -> Result<(), ParseError> {
        let k = self.generators.len();
        let d = self.generators.first().map_or(0, Vec::len);
        if k == 0 || d == 0 {
            return Err(ParseError::Invalid("pcf needs at least one nonempty generator".into()));
        }
        for g in &self.generators {
            check_square_f("pcf generator", g, d)?;
        }
        let q = self.target_dim;
        if q == 0 {
            return Err(ParseError::Invalid("pcf target_dim must be positive".into()));
        }
        if let Some(tw) = &self.twist {
            if tw.len() != k {
                return Err(ParseError::Invalid(format!("pcf twist needs {k} matrices")));
            }
            for m in tw {
                check_square_f("pcf twist", m, q)?;
            }
        }
        match &self.cocycle {
            CocycleSpec::PlantedCoboundary { transfer, constants, .. } => {
                if let Some(t) = transfer {
                    check_trig("planted transfer", t, d, q)?;
                }
                if let Some(c) = constants {
                    check_vectors("planted constants", c, k, q)?;
                }
            }
            CocycleSpec::Constant { constants } => check_vectors("constants", constants, k, q)?,
            CocycleSpec::Trigonometric { generators } => {
                if generators.len() != k {
                    return Err(ParseError::Invalid(format!("trigonometric cocycle needs {k} maps")));
                }
                for t in generators {
                    check_trig("trigonometric generator", t, d, q)?;
                }
            }
        }
        let positive = [self.tolerance, self.cycle_tolerance, self.leaf_tolerance, self.modulus_tolerance];
        if positive.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(ParseError::Invalid("pcf tolerances must be positive".into()));
        }
        if self.cycles == 0 || self.grid == 0 || self.decay_samples < 2 {
            return Err(ParseError::Invalid("pcf sample counts too small".into()));
        }
        Ok(())
    }
}

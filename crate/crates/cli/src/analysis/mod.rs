//! One function per analysis, each returning a JSON result or a typed failure.

mod algebraic;
mod pcf;
mod steinberg;

use serde_json::Value;

use rigidkit_core::lie::{AbelianSubalgebra, LieAlgebra, Representation};
use rigidkit_core::linalg::{QMatrix, Subspace};
use rigidkit_core::roots::CartanData;

use crate::error::AnalysisError;
use crate::json::to_qvector;
use crate::scenario::{AlgebraSpec, Analysis, CartanSpec, QRows, RepresentationSpec, Scenario};

pub type Outcome = Result<Value, AnalysisError>;

pub(crate) fn to_matrix(rows: &QRows) -> QMatrix {
    QMatrix::from_rows(rows.iter().map(|r| to_qvector(r)).collect()).expect("validated shape")
}

/// Objects built from the scenario; each piece keeps its own construction error.
pub struct Inputs<'s> {
    pub scenario: &'s Scenario,
    pub algebra: Result<LieAlgebra, AnalysisError>,
    abelian: Option<Result<AbelianSubalgebra, AnalysisError>>,
    representation: Option<Result<Representation, AnalysisError>>,
    cartan: Option<Result<CartanData, AnalysisError>>,
    ideals: Result<Vec<Subspace>, AnalysisError>,
}

impl<'s> Inputs<'s> {
    pub fn build(scenario: &'s Scenario) -> Self {
        let algebra = match &scenario.algebra {
            None => Err(AnalysisError::MissingInput("algebra".into())),
            Some(AlgebraSpec::Sl { n }) => LieAlgebra::sl(*n).map_err(AnalysisError::from),
            Some(AlgebraSpec::Matrix { basis }) => {
                LieAlgebra::build_from_matrices(&basis.iter().map(to_matrix).collect::<Vec<_>>())
                    .map_err(AnalysisError::from)
            }
        };
        let Ok(g) = &algebra else {
            let e = algebra.as_ref().unwrap_err().clone();
            return Inputs {
                scenario,
                abelian: scenario.abelian.as_ref().map(|_| Err(e.clone())),
                representation: scenario.representation.as_ref().map(|_| Err(e.clone())),
                cartan: Some(Err(e.clone())),
                ideals: Err(e),
                algebra,
            };
        };
        let abelian = scenario.abelian.as_ref().map(|a| {
            let mats: Vec<QMatrix> = a.generators.iter().map(to_matrix).collect();
            AbelianSubalgebra::from_matrices(g, &mats).map_err(AnalysisError::from)
        });
        let representation = scenario.representation.as_ref().map(|r| {
            match r {
                RepresentationSpec::Standard => Representation::standard(g),
                RepresentationSpec::Trivial { dim } => Ok(Representation::trivial(g, *dim)),
                RepresentationSpec::Matrices { action, blocks } => {
                    let mats = action.iter().map(to_matrix).collect();
                    let dim = action[0].len();
                    let blocks = blocks
                        .iter()
                        .map(|b| Subspace::span(dim, &b.iter().map(|v| to_qvector(v)).collect::<Vec<_>>()))
                        .collect();
                    Representation::new(g, mats, blocks)
                }
            }
            .map_err(AnalysisError::from)
        });
        let cartan = match (&scenario.cartan, &scenario.algebra) {
            (Some(CartanSpec::Matrices { generators }), _) => {
                let mats: Vec<QMatrix> = generators.iter().map(to_matrix).collect();
                Some(AbelianSubalgebra::from_matrices(g, &mats).and_then(|h| CartanData::new(g, h)).map_err(AnalysisError::from))
            }
            (Some(CartanSpec::Diagonal), _) | (None, Some(AlgebraSpec::Sl { .. })) => {
                Some(CartanData::diagonal(g).map_err(AnalysisError::from))
            }
            (None, _) => None,
        };
        let ideals = scenario
            .ideals
            .iter()
            .map(|ideal| {
                let vs = ideal.iter().map(|m| g.coordinates_of(&to_matrix(m))).collect::<Result<Vec<_>, _>>()?;
                Ok(Subspace::span(g.dim(), &vs))
            })
            .collect::<Result<Vec<_>, rigidkit_core::Error>>()
            .map_err(AnalysisError::from);
        Inputs { scenario, algebra, abelian, representation, cartan, ideals }
    }

    pub fn algebra(&self) -> Result<&LieAlgebra, AnalysisError> {
        self.algebra.as_ref().map_err(Clone::clone)
    }

    pub fn abelian(&self) -> Result<&AbelianSubalgebra, AnalysisError> {
        match &self.abelian {
            None => Err(AnalysisError::MissingInput("abelian subalgebra".into())),
            Some(r) => r.as_ref().map_err(Clone::clone),
        }
    }

    pub fn representation(&self) -> Result<Option<&Representation>, AnalysisError> {
        self.representation.as_ref().map(|r| r.as_ref().map_err(Clone::clone)).transpose()
    }

    pub fn cartan(&self) -> Result<&CartanData, AnalysisError> {
        match &self.cartan {
            None => Err(AnalysisError::MissingInput("cartan subalgebra".into())),
            Some(r) => r.as_ref().map_err(Clone::clone),
        }
    }

    /// Cartan data if it could be built; absence is not an error for optional uses.
    pub fn cartan_opt(&self) -> Option<&CartanData> {
        self.cartan.as_ref().and_then(|r| r.as_ref().ok())
    }

    pub fn ideals(&self) -> Result<&[Subspace], AnalysisError> {
        self.ideals.as_deref().map_err(Clone::clone)
    }
}

/// Adds `checks` and `passed`; a report turns `passed: false` into a `CheckFailed` failure.
pub(crate) fn with_checks(mut v: Value, checks: &[(&str, bool)]) -> Value {
    let map: serde_json::Map<String, Value> = checks.iter().map(|(k, b)| (k.to_string(), Value::Bool(*b))).collect();
    v["passed"] = Value::Bool(checks.iter().all(|(_, b)| *b));
    v["checks"] = Value::Object(map);
    v
}

/// Names of the checks that did not pass.
pub fn failed_checks(v: &Value) -> Vec<String> {
    match v.get("checks").and_then(Value::as_object) {
        Some(m) => m.iter().filter(|(_, b)| **b == Value::Bool(false)).map(|(k, _)| k.clone()).collect(),
        None => Vec::new(),
    }
}

pub fn run(analysis: Analysis, inputs: &Inputs<'_>) -> Outcome {
    match analysis {
        Analysis::Roots => algebraic::roots(inputs),
        Analysis::Chambers => algebraic::chambers(inputs),
        Analysis::Detect => algebraic::detect(inputs),
        Analysis::Rigidity => algebraic::rigidity(inputs),
        Analysis::Extend => algebraic::extend(inputs),
        Analysis::SteinbergVerify => steinberg::verify(inputs),
        Analysis::Pcf => match &inputs.scenario.pcf {
            Some(spec) => pcf::run(spec),
            None => Err(AnalysisError::MissingInput("pcf block".into())),
        },
    }
}

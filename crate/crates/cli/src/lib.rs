//! Scenario-driven driver for the rigidity toolkit.
//!
//! A scenario names an algebra, an abelian subalgebra and optional extra data, and
//! lists analyses to run. The report holds one result object per analysis, a
//! provenance block and a list of typed failures.

pub mod analysis;
pub mod error;
pub mod json;
pub mod report;
pub mod scenario;

pub use error::{AnalysisError, ParseError};
pub use report::{run_scenario, Failure, Report};
pub use scenario::{Analysis, Scenario};

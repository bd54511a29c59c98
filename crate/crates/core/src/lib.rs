//! Exact algebra for rigidity computations on higher-rank abelian actions.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: rational matrices, subspaces, spectra, Jordan–Chevalley.
//! * [`lie`]: structure-constant Lie algebras, representations, semidirect products.
//! * [`roots`]: restricted roots and weights, coarse classes, chambers,
//!   detection, Weyl reflections and the rigidity report.
//! * [`central_ext`]: invariant two-forms and the universal Lie central extension.
//! * [`steinberg`]: words in coarse unipotent subgroups, admissible
//!   factorization, commutator relations and Weyl elements.

pub mod central_ext;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod roots;
pub mod steinberg;

pub use error::{Error, Result};

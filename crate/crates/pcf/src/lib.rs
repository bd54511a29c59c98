//! Periodic cycle functionals for twisted cocycles over Z^k actions on tori.
//!
//! Points live on the universal cover R^d; cocycles take values in R^q with a linear
//! twist. Potentials are limits along stable or unstable eigenline leaves, path
//! functionals sum them leg by leg, and a vanishing functional yields a transfer map.

pub mod action;
pub mod cocycle;
pub mod error;
pub mod norm;
pub mod path;
pub mod potential;

pub use action::{Element, IntMatrix, ToralAbelianAction};
pub use cocycle::{Callback, CocycleKind, HolderCocycle, TrigMap, TrigTerm, TwistSpec};
pub use error::{Error, Result};
pub use norm::{adapted_norm, AdaptedNorm};
pub use path::{LyapunovPath, Transfer};
pub use potential::{DecayFit, Leaf, Pcf, PcfConfig, Potential, Smallness};

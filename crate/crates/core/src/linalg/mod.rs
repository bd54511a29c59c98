//! Exact rational linear algebra.
//!
//! Only split (rational) spectra are supported: matrices whose characteristic
//! polynomial keeps an irreducible factor of degree two or more are rejected
//! with [`Error::RationalSpectrumRequired`](crate::Error::RationalSpectrumRequired).
//! In particular a compact (rotational) factor of a group element is never
//! approximated; inputs that need one are out of scope.

pub mod matrix;
pub mod rational;
pub mod spectrum;
pub mod subspace;

pub use matrix::QMatrix;
pub use rational::{q, qi, qvec, QVector, Rational};
pub use spectrum::{
    charpoly, generalized_eigenspaces, joint_generalized_eigenspaces, jordan_chevalley,
    rational_spectrum, JCPair, JointEigenspace,
};
pub use subspace::{is_direct_sum_decomposition, kernel, Subspace};

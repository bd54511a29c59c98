//! Lie algebras as exact structure-constant tables.

pub mod algebra;
pub mod representation;

pub use algebra::{LieAlgebra, Realization, DEFAULT_DIMENSION_CAP};
pub use representation::{
    abelian, center, centralizer, derived_and_perfect, semidirect, AbelianSubalgebra, Representation,
};

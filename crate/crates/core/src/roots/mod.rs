//! Restricted roots and weights of abelian subalgebras, and what is built on them.

pub mod chambers;
pub mod functional;
pub mod rigidity;
pub mod system;
pub mod weyl;

pub use chambers::{chambers_of, is_regular, positive_point, weyl_chambers, Chamber, ChamberReport};
pub use functional::{Functional, RayKey};
pub use rigidity::{rigidity_report, ActionType, ClassKind, ClassSemisimplicity, RigidityInput, RigidityReport};
pub use system::{restricted_roots, restricted_weights, CoarseClass, RestrictedRootSystem, WeightSystem};
pub use weyl::{
    detection, find_detecting_conjugators, normalizer_quotient, CartanData, ConjugatorWitness, DetectionEntry,
    DetectionReport, Permutation,
};

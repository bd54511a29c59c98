//! Words in the coarse unipotent subgroups of a matrix group and their relations.

pub mod calculus;
pub mod lemmas;
pub mod unipotent;
pub mod weyl_element;

pub use calculus::{
    classes_of, collect_normal_form, commutator_relation, cone_generated, factor_unipotent, is_admissible,
    WordContext,
};
pub use lemmas::{verify_conjugation_lemmas, ConjugationReport};
pub use unipotent::{evaluate_word, exp_nilpotent, is_cycle, log_unipotent, unipotent_inverse, UnipotentElement, Word};
pub use weyl_element::{weyl_element_from_root, WeylElement};

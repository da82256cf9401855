//! Supercharacter calculus: values, restriction, tensor products, induction.

mod basis;
mod combo;
mod induce;
mod restrict;
mod tensor;
mod values;

pub use basis::{kappa, kappa_to_chi, CycloCombo};
pub use combo::CharCombo;
pub use induce::{
    inner_product, permchar_hypothesis, sinf, sinf_combo, star_k, superinduce, superinduce_between, superinduce_combo,
    superinduce_trivial_twoblock, superinduce_via_permchar,
};
pub use restrict::{restrict, restrict_arc_interval, restrict_arc_subset, restrict_between, restrict_combo};
pub use tensor::{sinfres_identities_check, tensor, tensor_pair, tensor_pair_in};
pub use values::{char_value, chi_to_kappa, degree, degree_in, superclass_labels, value_in};

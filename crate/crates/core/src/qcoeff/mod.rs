//! Scalars: Laurent polynomials in `q`, prime-field residues, and `Q(ζ_p)`.

mod cyclotomic;
mod field;
mod laurent;

pub use cyclotomic::{theta, Cyclotomic};
pub use field::{field_units, is_prime, FieldElem};
pub use laurent::LaurentPoly;

//! Symmetric functions in non-commuting variables and the characteristic map.

mod charmap;
mod elem;
mod words;

pub use charmap::{characteristic_map_check, pbasis_multiplicativity_check, shape, CharMapReport, CHARMAP_Q};
pub use elem::{coarsenings, m_from_p, mobius, p_from_m, star_k_p, union_index, Basis, NCSymElem};
pub use words::{equal_positions, expand, m_expand, recognize, shuffle, star_k_product, WordExpansion};

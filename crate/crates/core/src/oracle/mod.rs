//! Brute-force ground truth on explicit pattern groups.

mod classes;
mod functions;
mod group;
mod permchar;
mod sg;

pub use classes::{SuperclassTable, TABLE_FORMAT_VERSION};
pub use functions::{
    brute_inner_product, brute_restrict, brute_superinduce, brute_superinduce_literal, combo_values, indicator,
    pointwise_product, supercharacter, supercharacter_at, supercharacter_of, tables_for, trivial, z_kappa, z_value,
    z_value_of, ClassFunction,
};
pub use group::{Budget, Key, PatternGroup};
pub use permchar::{permchar_hypothesis_check, PermcharReport};
pub(crate) use group::slot as group_slot;
pub use sg::{sg_matrices, sg_signed_sum_corrected, sg_signed_sum_literal, sg_sum, SgMatrix};

/// `u_μ - 1` style key with a single entry `a` at `(i, j)`.
pub fn single_entry_key(n: u32, i: u32, j: u32, a: u8) -> crate::Result<Key> {
    if !(1 <= i && i < j && j <= n) {
        return Err(crate::Error::Domain(format!("({i},{j}) is not strictly upper in 1..{n}")));
    }
    let mut k = vec![0u8; group::key_len(n)];
    k[group::slot(n, i, j)] = a;
    Ok(k)
}

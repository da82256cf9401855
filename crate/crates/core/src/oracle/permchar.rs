//! The permutation-character form of superinduction, tested by brute force.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{domain, Error, Result};

use super::classes::SuperclassTable;
use super::functions::{brute_superinduce, pointwise_product, supercharacter, trivial};
use super::group::{Budget, Key, PatternGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermcharReport {
    /// `χ^μ(1) Sinf(χ^μ)(h) = Sinf(χ^μ)(1) χ^μ(h)` for every `h ∈ H`.
    pub hypothesis: bool,
    /// `SInd(χ^μ) = ratio · Sinf(χ^μ) ⊗ SInd(𝟙)` on every class of `G`.
    pub conclusion: bool,
    /// `χ^μ(1) / Sinf(χ^μ)(1)`.
    pub ratio: String,
    /// Classes of `H` where the hypothesis fails, as `(χ^μ(h), Sinf(χ^μ)(h))`.
    pub witnesses: Vec<(String, String, String)>,
}

/// `Sinf_H^G(χ^μ)` is the supercharacter of `G` with the same functional `μ`.
pub fn permchar_hypothesis_check(h: &PatternGroup, g: &PatternGroup, mu: &Key, budget: &Budget) -> Result<PermcharReport> {
    if !h.is_subgroup_of(g) {
        return domain(format!("{h} is not a pattern subgroup of {g}"));
    }
    let th = SuperclassTable::build(h, budget)?;
    let tg = SuperclassTable::build(g, budget)?;
    let chi_h = supercharacter(&th, mu)?;
    let chi_g = supercharacter(&tg, mu)?;
    let id_h = th.identity_class();
    let id_g = tg.identity_class();

    let mut witnesses = Vec::new();
    for (c, x) in th.reps().iter().enumerate() {
        let d = tg.class_of(x).ok_or_else(|| Error::Internal("subgroup element missing".into()))?;
        let lhs = &chi_h[id_h] * &chi_g[d];
        let rhs = &chi_g[id_g] * &chi_h[c];
        if lhs != rhs {
            let rep: Vec<String> = x.iter().map(u8::to_string).collect();
            witnesses.push((rep.join(""), chi_h[c].to_string(), chi_g[d].to_string()));
        }
    }

    let deg_h = chi_h[id_h].as_rational().cloned().ok_or_else(|| Error::Internal("degree is not rational".into()))?;
    let deg_g = chi_g[id_g].as_rational().cloned().ok_or_else(|| Error::Internal("degree is not rational".into()))?;
    let ratio: BigRational = deg_h / deg_g;
    let induced = brute_superinduce(&chi_h, &th, &tg)?;
    let perm = brute_superinduce(&trivial(&th), &th, &tg)?;
    let product: Vec<_> = pointwise_product(&chi_g, &perm).into_iter().map(|v| v.scale(&ratio)).collect();
    Ok(PermcharReport {
        hypothesis: witnesses.is_empty(),
        conclusion: induced == product,
        ratio: ratio.to_string(),
        witnesses,
    })
}

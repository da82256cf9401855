//! Superinflation, superinduction and the `∗_K` product.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::qcoeff::LaurentPoly;
use crate::setpart::{enumerate_parts, LabeledSetPartition, PartitionIndex, TwoBlock};

use super::combo::CharCombo;
use super::restrict::restrict_between;
use super::tensor::tensor;
use super::values::{degree_in, value_in};

/// `Sinf_{U_K}^{U_L}(χ^λ) = χ^{⟨λ⟩_L}`: the same arcs seen in the larger group.
pub fn sinf(lambda: &LabeledSetPartition, k: &PartitionIndex, l: &PartitionIndex) -> Result<LabeledSetPartition> {
    lambda.check_fits(k)?;
    if !k.refines(l) {
        return domain(format!("{k} does not refine {l}"));
    }
    Ok(lambda.clone())
}

pub fn sinf_combo(x: &CharCombo, l: &PartitionIndex) -> Result<CharCombo> {
    if !x.ambient().refines(l) {
        return domain(format!("{} does not refine {l}", x.ambient()));
    }
    x.with_ambient(l.clone())
}

/// `⟨x, y⟩` in `U_K` from `⟨χ^λ, χ^μ⟩ = q^{|C_K(λ)|} δ_{λμ}`.
pub fn inner_product(x: &CharCombo, y: &CharCombo) -> Result<LaurentPoly> {
    if x.ambient() != y.ambient() || x.p() != y.p() {
        return domain("inner_product: ambient groups differ");
    }
    let mut acc = LaurentPoly::zero();
    for (lam, c) in x.terms() {
        let d = y.coeff(lam);
        if d.is_zero() {
            continue;
        }
        let cr = lam.crossing_count_within(x.ambient())?;
        acc += &(&(c * &d) * &LaurentPoly::q_pow(cr as i32));
    }
    Ok(acc)
}

/// Every arc of `mu` must sit inside the span of some arc of `nu`, or `χ^μ`
/// cannot occur in the restriction of `χ^ν`.
fn may_contain(nu: &LabeledSetPartition, mu: &LabeledSetPartition) -> bool {
    mu.arcs()
        .iter()
        .all(|m| nu.arcs().iter().any(|a| a.left <= m.left && m.right <= a.right))
}

/// `SInd_{U_K}^{U_L}(χ^μ)` by Frobenius reciprocity: the coefficient of `χ^ν`
/// is `q^{|C_K(μ)| - |C_L(ν)|}` times the multiplicity of `χ^μ` in `Res χ^ν`.
pub fn superinduce_between(mu: &LabeledSetPartition, k: &PartitionIndex, l: &PartitionIndex, p: u32) -> Result<CharCombo> {
    mu.check_fits(k)?;
    if !k.refines(l) {
        return domain(format!("{k} does not refine {l}"));
    }
    let ck = mu.crossing_count_within(k)? as i32;
    let candidates = enumerate_parts(l, p)?;
    let found: Vec<Result<Option<(LabeledSetPartition, LaurentPoly)>>> = candidates
        .into_par_iter()
        .filter(|nu| may_contain(nu, mu))
        .map(|nu| {
            let b = restrict_between(&nu, l, k, p)?.coeff(mu);
            if b.is_zero() {
                return Ok(None);
            }
            let cl = nu.crossing_count_within(l)? as i32;
            Ok(Some((nu, b.shift(ck - cl))))
        })
        .collect();
    let mut out = CharCombo::zero(l.clone(), p)?;
    for r in found {
        if let Some((nu, c)) = r? {
            out.add_term(nu, &c)?;
        }
    }
    Ok(out)
}

/// `SInd_{U_K}^{U_n}(χ^μ)`.
pub fn superinduce(mu: &LabeledSetPartition, k: &PartitionIndex, p: u32) -> Result<CharCombo> {
    superinduce_between(mu, k, &PartitionIndex::whole(k.n()), p)
}

/// Linear extension of [`superinduce_between`].
pub fn superinduce_combo(x: &CharCombo, l: &PartitionIndex) -> Result<CharCombo> {
    let mut acc = CharCombo::zero(l.clone(), x.p())?;
    for (mu, c) in x.terms() {
        let s = superinduce_between(mu, x.ambient(), l, x.p())?;
        acc = acc.add(&s.scale(c))?;
    }
    Ok(acc)
}

/// Closed form for `SInd(𝟙)` from `U_{[1,k]} × U_{[k+1,n]}`: every arc must
/// straddle `k`, weighted by `q^{-|C(λ)|}`.
pub fn superinduce_trivial_twoblock(k: u32, n: u32, p: u32) -> Result<CharCombo> {
    if !(1 <= k && k < n) {
        return domain(format!("need 1 <= k < n, got k={k}, n={n}"));
    }
    let whole = PartitionIndex::whole(n);
    let mut out = CharCombo::zero(whole, p)?;
    for lam in crate::setpart::enumerate_n(n, p)? {
        if lam.arcs().iter().all(|a| a.left <= k && k < a.right) {
            let c = LaurentPoly::q_pow(-(lam.crossings().len() as i32));
            out.add_term(lam, &c)?;
        }
    }
    Ok(out)
}

/// `SInd(𝟙)`, using the closed form when `K` is `{1..k|k+1..n}` inside `U_n`.
fn induced_trivial(k: &PartitionIndex, l: &PartitionIndex, p: u32) -> Result<CharCombo> {
    let parts = k.parts();
    if l.is_whole() && parts.len() == 2 {
        let cut = parts[0].len() as u32;
        if parts[0].iter().copied().eq(1..=cut) {
            return superinduce_trivial_twoblock(cut, k.n(), p);
        }
    }
    superinduce_between(&LabeledSetPartition::empty_n(k.n()), k, l, p)
}

/// Whether `χ^μ(1) Sinf(χ^μ)(h) = Sinf(χ^μ)(1) χ^μ(h)` on every superclass of
/// `U_K`. Fails once a part of `K` carrying an arc sits under an arc of `μ`.
pub fn permchar_hypothesis(mu: &LabeledSetPartition, k: &PartitionIndex, l: &PartitionIndex, p: u32) -> Result<bool> {
    let inflated = sinf(mu, k, l)?;
    let id = LabeledSetPartition::empty_n(k.n());
    let dk = value_in(mu, &id, k, p)?;
    let dl = value_in(&inflated, &id, l, p)?;
    for h in enumerate_parts(k, p)? {
        let lhs = &dk * &value_in(&inflated, &h, l, p)?;
        let rhs = &dl * &value_in(mu, &h, k, p)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `SInd_{U_K}^{U_L}(χ^μ)` as `q^{deg_K - deg_L} Sinf(χ^μ) ⊗ SInd(𝟙)`.
pub fn superinduce_via_permchar(mu: &LabeledSetPartition, k: &PartitionIndex, l: &PartitionIndex, p: u32) -> Result<CharCombo> {
    let inflated = sinf(mu, k, l)?;
    let dk = degree_in(mu, k)?.as_q_power().expect("degree is a q-power");
    let dl = degree_in(&inflated, l)?.as_q_power().expect("degree is a q-power");
    let chi = CharCombo::chi(inflated, l.clone(), p)?;
    let t = tensor(&chi, &induced_trivial(k, l, p)?)?;
    Ok(t.scale(&LaurentPoly::q_pow(dk - dl)))
}

/// `χ^λ ∗_K χ^μ = SInd_{U_K}^{U_{m+n}}(χ^{λ ∪_K μ})`.
pub fn star_k(lambda: &LabeledSetPartition, mu: &LabeledSetPartition, k: &TwoBlock, p: u32) -> Result<CharCombo> {
    let joined = LabeledSetPartition::union_k(lambda, mu, k)?;
    superinduce(&joined, &k.to_index(), p)
}

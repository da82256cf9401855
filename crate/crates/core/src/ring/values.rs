//! Degrees and pointwise values of supercharacters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::{domain, Result};
use crate::qcoeff::{theta, Cyclotomic, FieldElem, LaurentPoly};
use crate::setpart::{enumerate_parts, Arc, LabeledSetPartition, PartitionIndex, SuperclassLabel};

use super::combo::CharCombo;

/// Vertices of the part of `k` containing `i`, strictly between `i` and `l`.
pub(crate) fn between(k: &PartitionIndex, i: u32, l: u32) -> Vec<u32> {
    k.parts()[k.part_of(i)]
        .iter()
        .copied()
        .filter(|&v| i < v && v < l)
        .collect()
}

/// `χ^λ(1) = Π q^{#support vertices strictly inside each arc}`.
pub fn degree(lambda: &LabeledSetPartition) -> LaurentPoly {
    let e: usize = lambda
        .arcs()
        .iter()
        .map(|a| lambda.support().range(a.left + 1..a.right).count())
        .sum();
    LaurentPoly::q_pow(e as i32)
}

/// Degree of `χ^λ` as a character of `U_K`.
pub fn degree_in(lambda: &LabeledSetPartition, k: &PartitionIndex) -> Result<LaurentPoly> {
    lambda.check_fits(k)?;
    let e: usize = lambda
        .arcs()
        .iter()
        .map(|a| between(k, a.left, a.right).len())
        .sum();
    Ok(LaurentPoly::q_pow(e as i32))
}

/// Exponent and `ϑ`-argument of `χ^λ(u_μ)` inside `U_K`, or `None` when it vanishes.
fn value_parts(lambda: &LabeledSetPartition, mu: &SuperclassLabel, k: &PartitionIndex, p: u32) -> Option<(u32, FieldElem)> {
    let mut exp = 0u32;
    let mut arg = FieldElem::zero(p);
    for a in lambda.arcs() {
        let part = k.part_of(a.left);
        let local = |b: &&Arc| k.part_of(b.left) == part;
        let mut nested = 0u32;
        for b in mu.arcs().iter().filter(local) {
            let inside = a.left < b.right && b.right < a.right;
            if (b.left == a.left && inside) || (b.right == a.right && a.left < b.left && b.left < a.right) {
                return None;
            }
            if a.nests(b) {
                nested += 1;
            }
            if b.left == a.left && b.right == a.right {
                arg = arg + a.label * b.label;
            }
        }
        exp += between(k, a.left, a.right).len() as u32 - nested;
    }
    Some((exp, arg))
}

/// `χ^λ(u_μ)` for `λ, μ` both fitting `U_K`.
pub fn value_in(lambda: &LabeledSetPartition, mu: &SuperclassLabel, k: &PartitionIndex, p: u32) -> Result<Cyclotomic> {
    lambda.check_fits(k)?;
    mu.check_fits(k)?;
    Ok(value_unchecked(lambda, mu, k, p))
}

pub(crate) fn value_unchecked(lambda: &LabeledSetPartition, mu: &SuperclassLabel, k: &PartitionIndex, p: u32) -> Cyclotomic {
    match value_parts(lambda, mu, k, p) {
        None => Cyclotomic::zero(p),
        Some((exp, arg)) => {
            let scale = BigRational::from_integer(BigInt::from(p).pow(exp));
            theta(arg).scale(&scale)
        }
    }
}

/// `χ^λ(u_μ)` in `U_S ≅ U_{|S|}`, where `S` is the common support.
pub fn char_value(lambda: &LabeledSetPartition, mu: &SuperclassLabel, p: u32) -> Result<Cyclotomic> {
    if lambda.support() != mu.support() {
        return domain(format!("supports of {lambda} and {mu} differ"));
    }
    let (l, m) = (lambda.standardize(), mu.standardize());
    let k = PartitionIndex::whole(l.support().len() as u32);
    Ok(value_unchecked(&l, &m, &k, p))
}

impl CharCombo {
    /// Value at `u_μ` with `q = p` substituted in the coefficients.
    pub fn value_at(&self, mu: &SuperclassLabel) -> Result<Cyclotomic> {
        mu.check_fits(self.ambient())?;
        let p = self.p();
        let mut acc = Cyclotomic::zero(p);
        for (lam, c) in self.terms() {
            let v = value_unchecked(lam, mu, self.ambient(), p);
            if !v.is_zero() {
                acc += &v.scale(&c.eval_at(p));
            }
        }
        Ok(acc)
    }

    /// The value vector on every superclass of `U_K`.
    pub fn values(&self) -> Result<BTreeMap<SuperclassLabel, Cyclotomic>> {
        superclass_labels(self.ambient(), self.p())?
            .into_iter()
            .map(|mu| {
                let v = self.value_at(&mu)?;
                Ok((mu, v))
            })
            .collect()
    }
}

/// All `μ` fitting `U_K`: one labeled set partition per part, glued.
pub fn superclass_labels(k: &PartitionIndex, p: u32) -> Result<Vec<SuperclassLabel>> {
    enumerate_parts(k, p)
}

/// `x` in the superclass-indicator basis: `μ ↦ x(u_μ)`.
pub fn chi_to_kappa(x: &CharCombo) -> Result<BTreeMap<SuperclassLabel, Cyclotomic>> {
    x.values()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setpart::enumerate_n;

    fn f(a: i64, p: u32) -> FieldElem {
        FieldElem::new(a, p)
    }

    #[test]
    fn degrees() {
        assert!(degree(&LabeledSetPartition::empty_n(4)).is_one());
        let x = LabeledSetPartition::single_arc(7, 1, 7, f(1, 2)).unwrap();
        assert_eq!(degree(&x), LaurentPoly::q_pow(5));
        let ex = LabeledSetPartition::parse("n=9; 1-5:1, 5-7:1, 2-3:1, 6-8:1, 8-9:1", 2).unwrap();
        assert_eq!(degree(&ex), LaurentPoly::q_pow(5));
        let sub = LabeledSetPartition::parse("S={2,3,5,7}; 2-5:1, 5-7:1", 2).unwrap();
        assert_eq!(degree(&sub), LaurentPoly::q_pow(1));
        assert_eq!(degree(&sub.extend(1..=7).unwrap()), LaurentPoly::q_pow(3));
    }

    #[test]
    fn hand_values() {
        let p = 5;
        for a in 1..p as i64 {
            for b in 1..p as i64 {
                let lam = LabeledSetPartition::single_arc(3, 1, 3, f(a, p)).unwrap();
                let mu = LabeledSetPartition::single_arc(3, 1, 2, f(b, p)).unwrap();
                assert!(char_value(&lam, &mu, p).unwrap().is_zero());
                let mu = LabeledSetPartition::single_arc(3, 1, 3, f(b, p)).unwrap();
                let want = Cyclotomic::zeta_pow(p, a * b).scale(&BigRational::from_integer(p.into()));
                assert_eq!(char_value(&lam, &mu, p).unwrap(), want);
            }
        }
    }

    #[test]
    fn identity_value_is_degree() {
        for lam in enumerate_n(4, 3).unwrap() {
            let v = char_value(&lam, &LabeledSetPartition::empty_n(4), 3).unwrap();
            assert_eq!(v, Cyclotomic::from_rational(3, degree(&lam).eval_at(3)));
        }
    }

    #[test]
    fn linear_iff_all_arcs_adjacent() {
        for lam in enumerate_n(5, 2).unwrap() {
            let linear = lam.arcs().iter().all(|a| a.right == a.left + 1);
            assert_eq!(degree(&lam).is_one(), linear);
        }
    }

    #[test]
    fn parabolic_values_factor_over_parts() {
        let k = PartitionIndex::parse("{1,3,4|2,5}").unwrap();
        let lam = LabeledSetPartition::parse("n=5; 1-4:1, 2-5:1", 2).unwrap();
        let mu = LabeledSetPartition::parse("n=5; 1-3:1", 2).unwrap();
        // the 1-4 arc sees only vertex 3 inside its part; 1-3 in μ is forbidden
        assert!(value_in(&lam, &mu, &k, 2).unwrap().is_zero());
        let mu = LabeledSetPartition::parse("n=5; 2-5:1", 2).unwrap();
        assert_eq!(value_in(&lam, &mu, &k, 2).unwrap(), Cyclotomic::from_int(2, -2));
    }
}

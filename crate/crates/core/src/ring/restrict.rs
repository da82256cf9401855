//! Restriction of supercharacters to parabolic subgroups and to `U_S`.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::qcoeff::{field_units, FieldElem, LaurentPoly};
use crate::setpart::{Arc, LabeledSetPartition, PartitionIndex};

use super::combo::CharCombo;
use super::tensor::tensor;

/// Terms `(coefficient, arcs)` before they are assembled into a combination.
pub(crate) type Terms = Vec<(LaurentPoly, Vec<Arc>)>;

fn q_plus_count(count: usize) -> LaurentPoly {
    // count(q-1) + 1
    &LaurentPoly::q_minus_one().scale(&BigInt::from(count)) + &LaurentPoly::one()
}

fn assemble(terms: Terms, ambient: PartitionIndex, p: u32) -> Result<CharCombo> {
    let n = ambient.n();
    let mut out = CharCombo::zero(ambient, p)?;
    for (c, arcs) in terms {
        out.add_term(LabeledSetPartition::on_n(n, arcs)?, &c)?;
    }
    Ok(out)
}

fn check_arc(i: u32, l: u32, a: FieldElem, n: u32) -> Result<()> {
    if !(1 <= i && i < l && l <= n) {
        return domain(format!("arc {i}-{l} is not inside 1..{n}"));
    }
    if a.is_zero() {
        return domain("arc label must be nonzero");
    }
    Ok(())
}

/// Restriction of `χ^{⟨i ⌢a l⟩_n}` to the interval subgroup `U_{[j,k]}`, by the
/// five interval cases.
pub fn restrict_arc_interval(i: u32, l: u32, a: FieldElem, j: u32, k: u32, n: u32) -> Result<CharCombo> {
    check_arc(i, l, a, n)?;
    if !(1 <= j && j < k && k <= n) {
        return domain(format!("interval [{j},{k}] is not inside 1..{n}"));
    }
    let p = a.modulus();
    let units = field_units(p)?;
    let q = LaurentPoly::q_pow;
    let one = LaurentPoly::one();
    let mut terms: Terms = Vec::new();
    if j <= i && l <= k {
        terms.push((one, vec![Arc::new(i, l, a)]));
    } else if i < j && j < l && l <= k {
        let c = q((j - i - 1) as i32);
        terms.push((c.clone(), vec![]));
        for jp in j..l {
            for &b in &units {
                terms.push((c.clone(), vec![Arc::new(jp, l, b)]));
            }
        }
    } else if j <= i && i < k && k < l {
        let c = q((l - k - 1) as i32);
        terms.push((c.clone(), vec![]));
        for kp in i + 1..=k {
            for &b in &units {
                terms.push((c.clone(), vec![Arc::new(i, kp, b)]));
            }
        }
    } else if i < j && k < l {
        let pre = q((l - i - 1) as i32 - (k - j + 1) as i32);
        let unit = &LaurentPoly::q_minus_one().scale(&BigInt::from(k - j)) + &LaurentPoly::q();
        terms.push((&pre * &unit, vec![]));
        let c = &pre * &LaurentPoly::q_minus_one();
        for jp in j..k {
            for kp in jp + 1..=k {
                for &b in &units {
                    terms.push((c.clone(), vec![Arc::new(jp, kp, b)]));
                }
            }
        }
    } else {
        terms.push((q((l - i - 1) as i32), vec![]));
    }
    let s: BTreeSet<u32> = (j..=k).collect();
    assemble(terms, PartitionIndex::from_subset(&s, n)?, p)
}

/// The bracketed part of the subset rule, for an arc living in `universe`:
/// returns `(e, terms)` with the full restriction equal to `q^e · terms`.
pub(crate) fn subset_bracket(arc: &Arc, universe: &[u32], s: &BTreeSet<u32>, units: &[FieldElem]) -> (u32, Terms) {
    let (i, l, a) = (arc.left, arc.right, arc.label);
    let inner: Vec<u32> = universe.iter().copied().filter(|&v| i < v && v < l).collect();
    let e = inner.iter().filter(|v| !s.contains(v)).count() as u32;
    let s_inner: Vec<u32> = inner.iter().copied().filter(|v| s.contains(v)).collect();
    let one = LaurentPoly::one();
    let mut terms: Terms = Vec::new();
    match (s.contains(&i), s.contains(&l)) {
        (true, true) => terms.push((one, vec![Arc::new(i, l, a)])),
        (false, true) => {
            terms.push((one.clone(), vec![]));
            for &j in &s_inner {
                for &b in units {
                    terms.push((one.clone(), vec![Arc::new(j, l, b)]));
                }
            }
        }
        (true, false) => {
            terms.push((one.clone(), vec![]));
            for &k in &s_inner {
                for &b in units {
                    terms.push((one.clone(), vec![Arc::new(i, k, b)]));
                }
            }
        }
        (false, false) => {
            // S ∩ [i,l] = S ∩ (i,l) here
            terms.push((q_plus_count(s_inner.len()), vec![]));
            let c = LaurentPoly::q_minus_one();
            for (x, &jp) in s_inner.iter().enumerate() {
                for &kp in &s_inner[x + 1..] {
                    for &b in units {
                        terms.push((c.clone(), vec![Arc::new(jp, kp, b)]));
                    }
                }
            }
        }
    }
    (e, terms)
}

/// Restriction of `χ^{⟨i ⌢a l⟩_n}` to `U_S`, by the four membership cases.
/// `U_S` is represented as the parabolic subgroup with parts `S` and singletons.
pub fn restrict_arc_subset(i: u32, l: u32, a: FieldElem, s: &BTreeSet<u32>, n: u32) -> Result<CharCombo> {
    check_arc(i, l, a, n)?;
    if s.is_empty() || s.iter().any(|&v| v == 0 || v > n) {
        return domain(format!("subset must be a nonempty part of 1..{n}"));
    }
    let p = a.modulus();
    let units = field_units(p)?;
    let universe: Vec<u32> = (1..=n).collect();
    let (e, terms) = subset_bracket(&Arc::new(i, l, a), &universe, s, &units);
    let pre = LaurentPoly::q_pow(e as i32);
    let terms = terms.into_iter().map(|(c, arcs)| (&c * &pre, arcs)).collect();
    assemble(terms, PartitionIndex::from_subset(s, n)?, p)
}

/// External product over the parts of `k` inside the universe of one arc.
fn restrict_one_arc(arc: &Arc, from: &PartitionIndex, to: &PartitionIndex, units: &[FieldElem]) -> Terms {
    let universe = &from.parts()[from.part_of(arc.left)];
    let mut acc: Terms = vec![(LaurentPoly::one(), vec![])];
    for (idx, part) in to.parts().iter().enumerate() {
        // parts missing [i,l] entirely contribute 𝟙
        if !universe.contains(&part[0]) || !part.iter().any(|&v| arc.left <= v && v <= arc.right) {
            continue;
        }
        let (_, factor) = subset_bracket(arc, universe, &to.part_set(idx), units);
        let mut next = Vec::with_capacity(acc.len() * factor.len());
        for (c1, a1) in &acc {
            for (c2, a2) in &factor {
                let mut arcs = a1.clone();
                arcs.extend_from_slice(a2);
                next.push((c1 * c2, arcs));
            }
        }
        acc = next;
    }
    acc
}

/// `Res^{U_L}_{U_K}(χ^λ)` for `K` refining `L`.
pub fn restrict_between(lambda: &LabeledSetPartition, from: &PartitionIndex, to: &PartitionIndex, p: u32) -> Result<CharCombo> {
    lambda.check_fits(from)?;
    if !to.refines(from) {
        return domain(format!("{to} does not refine {from}"));
    }
    let units = field_units(p)?;
    let mut acc = CharCombo::trivial(to.clone(), p)?;
    for arc in lambda.arcs() {
        if arc.label.modulus() != p {
            return domain(format!("arc {arc} is not labeled mod {p}"));
        }
        let factor = assemble(restrict_one_arc(arc, from, to, &units), to.clone(), p)?;
        acc = tensor(&acc, &factor)?;
    }
    Ok(acc)
}

/// `Res^{U_n}_{U_K}(χ^λ)`.
pub fn restrict(lambda: &LabeledSetPartition, k: &PartitionIndex, p: u32) -> Result<CharCombo> {
    restrict_between(lambda, &PartitionIndex::whole(k.n()), k, p)
}

/// Linear extension of [`restrict_between`] to a combination on `U_L`.
pub fn restrict_combo(x: &CharCombo, to: &PartitionIndex) -> Result<CharCombo> {
    let mut acc = CharCombo::zero(to.clone(), x.p())?;
    for (lam, c) in x.terms() {
        let r = restrict_between(lam, x.ambient(), to, x.p())?;
        acc = acc.add(&r.scale(c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setpart::enumerate_n;

    fn f(a: i64, p: u32) -> FieldElem {
        FieldElem::new(a, p)
    }

    #[test]
    fn interval_and_subset_rules_agree() {
        for p in [2u32, 3] {
            for n in 2..=6u32 {
                for j in 1..n {
                    for k in j + 1..=n {
                        let s: BTreeSet<u32> = (j..=k).collect();
                        for i in 1..n {
                            for l in i + 1..=n {
                                for a in 1..p as i64 {
                                    let x = restrict_arc_interval(i, l, f(a, p), j, k, n).unwrap();
                                    let y = restrict_arc_subset(i, l, f(a, p), &s, n).unwrap();
                                    assert_eq!(x, y, "arc {i}-{l}, [{j},{k}], n={n}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subset_rule_corner_cases() {
        let s: BTreeSet<u32> = [1, 2, 3, 4, 5].into();
        let x = restrict_arc_subset(1, 5, f(1, 3), &s, 5).unwrap();
        assert_eq!(x.len(), 1);
        assert!(x.terms().next().unwrap().1.is_one());
        let s: BTreeSet<u32> = [6, 7].into();
        let x = restrict_arc_subset(1, 5, f(1, 3), &s, 7).unwrap();
        assert_eq!(x.len(), 1);
        let (lam, c) = x.terms().next().unwrap();
        assert!(lam.is_empty());
        assert_eq!(*c, LaurentPoly::q_pow(3));
    }

    #[test]
    fn restriction_to_the_whole_group_is_the_identity() {
        for lam in enumerate_n(4, 3).unwrap() {
            let r = restrict(&lam, &PartitionIndex::whole(4), 3).unwrap();
            assert_eq!(r, CharCombo::chi_n(lam, 3).unwrap());
        }
    }

    #[test]
    fn single_arc_to_interval_with_singletons() {
        for (i, l) in [(1u32, 5u32), (1, 7), (2, 5), (5, 7), (3, 6)] {
            let lam = LabeledSetPartition::single_arc(7, i, l, f(2, 3)).unwrap();
            let k = PartitionIndex::parse_with_n("{[2,5]}", Some(7)).unwrap();
            let via_parts = restrict(&lam, &k, 3).unwrap();
            let direct = restrict_arc_interval(i, l, f(2, 3), 2, 5, 7).unwrap();
            assert_eq!(via_parts, direct);
        }
    }

    #[test]
    fn restriction_matches_pointwise_values() {
        use crate::ring::values::{char_value, superclass_labels};
        use crate::setpart::set_partitions;
        for (n, p) in [(4u32, 2u32), (3, 3)] {
            for blocks in set_partitions(n as usize) {
                let k = PartitionIndex::new(n, blocks).unwrap();
                for lam in enumerate_n(n, p).unwrap() {
                    let r = restrict(&lam, &k, p).unwrap();
                    for mu in superclass_labels(&k, p).unwrap() {
                        assert_eq!(r.value_at(&mu).unwrap(), char_value(&lam, &mu, p).unwrap(), "{lam} to {k} at {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn straddling_arcs_give_unit_trivial_coefficient() {
        let k = PartitionIndex::parse("{1,2|3,4,5}").unwrap();
        for lam in enumerate_n(5, 2).unwrap() {
            if lam.arcs().iter().all(|a| a.left <= 2 && a.right > 2) {
                let r = restrict(&lam, &k, 2).unwrap();
                assert!(r.coeff(&LabeledSetPartition::empty_n(5)).is_one(), "{lam}");
            }
        }
    }
}

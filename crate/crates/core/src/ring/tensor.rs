//! Tensor products by straightening superimposed arc diagrams.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::qcoeff::{field_units, FieldElem, LaurentPoly};
use crate::setpart::{enumerate_n, Arc, LabeledSetPartition, PartitionIndex};

use super::combo::CharCombo;
use super::restrict::{restrict_arc_subset, Terms};
use super::values::between;

/// `(number of arcs, total length)`; every rewrite strictly lowers it.
fn measure(arcs: &[Arc]) -> (usize, u64) {
    (arcs.len(), arcs.iter().map(|a| (a.right - a.left) as u64).sum())
}

fn conflict(x: &Arc, y: &Arc) -> bool {
    x.left == y.left || x.right == y.right
}

/// Expansion of `χ^x ⊗ χ^y` for two conflicting arcs with `x ≤ y` in arc order.
fn pair_rule(x: &Arc, y: &Arc, ambient: &PartitionIndex, units: &[FieldElem]) -> Terms {
    let one = LaurentPoly::one();
    let mut out: Terms = Vec::new();
    if x.left == y.left && x.right == y.right {
        let (i, l) = (x.left, x.right);
        let inner = between(ambient, i, l);
        let s = x.label + y.label;
        if s.is_zero() {
            out.push((one.clone(), vec![]));
            for &j in &inner {
                for &c in units {
                    out.push((one.clone(), vec![Arc::new(i, j, c)]));
                }
            }
            for &k in &inner {
                for &c in units {
                    out.push((one.clone(), vec![Arc::new(k, l, c)]));
                }
            }
            for &j in &inner {
                for &k in &inner {
                    for &c in units {
                        for &d in units {
                            out.push((one.clone(), vec![Arc::new(i, j, c), Arc::new(k, l, d)]));
                        }
                    }
                }
            }
        } else {
            let lead = &LaurentPoly::q_minus_one().scale(&BigInt::from(inner.len())) + &one;
            out.push((lead, vec![Arc::new(i, l, s)]));
            let qm1 = LaurentPoly::q_minus_one();
            for (t, &j) in inner.iter().enumerate() {
                for &k in &inner[t + 1..] {
                    for &c in units {
                        out.push((qm1.clone(), vec![Arc::new(j, k, c), Arc::new(i, l, s)]));
                    }
                }
            }
        }
    } else if x.left == y.left {
        // i ⌢a k, i ⌢b l with k < l: the longer arc survives
        let (i, k, long) = (x.left, x.right, *y);
        out.push((one.clone(), vec![long]));
        for j in between(ambient, i, k) {
            for &c in units {
                out.push((one.clone(), vec![Arc::new(j, k, c), long]));
            }
        }
    } else {
        debug_assert_eq!(x.right, y.right);
        // i ⌢a l, j ⌢b l with i < j
        let (j, l, long) = (y.left, y.right, *x);
        out.push((one.clone(), vec![long]));
        for k in between(ambient, j, l) {
            for &c in units {
                out.push((one.clone(), vec![long, Arc::new(j, k, c)]));
            }
        }
    }
    out
}

/// Rewrites a multiset of arcs into a combination of valid diagrams.
fn straighten(arcs: Vec<Arc>, coeff: LaurentPoly, ambient: &PartitionIndex, units: &[FieldElem], out: &mut CharCombo) -> Result<()> {
    let n = ambient.n();
    let mut stack = vec![(coeff, arcs)];
    while let Some((c, mut arcs)) = stack.pop() {
        arcs.sort();
        let hit = (0..arcs.len()).find_map(|x| {
            (x + 1..arcs.len())
                .find(|&y| conflict(&arcs[x], &arcs[y]))
                .map(|y| (x, y))
        });
        let Some((x, y)) = hit else {
            out.add_term(LabeledSetPartition::on_n(n, arcs)?, &c)?;
            continue;
        };
        let before = measure(&arcs);
        let (ax, ay) = (arcs[x], arcs[y]);
        let rest: Vec<Arc> = arcs
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != x && t != y)
            .map(|(_, a)| *a)
            .collect();
        for (c2, new) in pair_rule(&ax, &ay, ambient, units) {
            let mut next = rest.clone();
            next.extend(new);
            assert!(measure(&next) < before, "straightening failed to shrink {arcs:?}");
            stack.push((&c * &c2, next));
        }
    }
    Ok(())
}

/// `χ^x ⊗ χ^y` for two labeled arcs in `U_K`.
pub fn tensor_pair_in(x: Arc, y: Arc, ambient: &PartitionIndex, p: u32) -> Result<CharCombo> {
    let units = field_units(p)?;
    for a in [x, y] {
        if a.left >= a.right || a.right > ambient.n() || !ambient.same_part(a.left, a.right) || a.label.is_zero() {
            return domain(format!("arc {a} does not fit {ambient}"));
        }
    }
    let mut out = CharCombo::zero(ambient.clone(), p)?;
    straighten(vec![x, y], LaurentPoly::one(), ambient, &units, &mut out)?;
    Ok(out)
}

/// `χ^{⟨x⟩_n} ⊗ χ^{⟨y⟩_n}` in `U_n`.
pub fn tensor_pair(x: Arc, y: Arc, n: u32, p: u32) -> Result<CharCombo> {
    tensor_pair_in(x, y, &PartitionIndex::whole(n), p)
}

/// Bilinear tensor product of two combinations over the same group.
pub fn tensor(x: &CharCombo, y: &CharCombo) -> Result<CharCombo> {
    if x.ambient() != y.ambient() || x.p() != y.p() {
        return domain("tensor: ambient groups differ");
    }
    let units = field_units(x.p())?;
    let mut out = CharCombo::zero(x.ambient().clone(), x.p())?;
    for (l1, c1) in x.terms() {
        for (l2, c2) in y.terms() {
            let arcs: Vec<Arc> = l1.arcs().iter().chain(l2.arcs()).copied().collect();
            straighten(arcs, c1 * c2, x.ambient(), &units, &mut out)?;
        }
    }
    Ok(out)
}

/// `Sinf ∘ Res` from `U_n` through `U_{[lo,hi]}` and back, for one arc.
fn sinf_res(arc: Arc, lo: u32, hi: u32, n: u32) -> Result<CharCombo> {
    let s: BTreeSet<u32> = (lo..=hi).collect();
    restrict_arc_subset(arc.left, arc.right, arc.label, &s, n)?.with_ambient(PartitionIndex::whole(n))
}

fn pointwise_equal(lhs: &[&CharCombo], rhs: &[&CharCombo], n: u32, p: u32) -> Result<bool> {
    for mu in enumerate_n(n, p)? {
        let mut l = crate::qcoeff::Cyclotomic::one(p);
        for x in lhs {
            l = &l * &x.value_at(&mu)?;
        }
        let mut r = crate::qcoeff::Cyclotomic::one(p);
        for x in rhs {
            r = &r * &x.value_at(&mu)?;
        }
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the four tensor/`SinfRes` identities for `i<j<k<l` pointwise on every
/// superclass of `U_n(p)`. The last identity is skipped when `b = -a`.
pub fn sinfres_identities_check(i: u32, j: u32, k: u32, l: u32, a: FieldElem, b: FieldElem, n: u32, p: u32) -> Result<bool> {
    if !(1 <= i && i < j && j < k && k < l && l <= n) {
        return domain(format!("need 1 <= i<j<k<l <= n, got {i},{j},{k},{l}, n={n}"));
    }
    let chi = |x: u32, y: u32, c: FieldElem| -> Result<CharCombo> {
        CharCombo::chi_n(LabeledSetPartition::single_arc(n, x, y, c)?, p)
    };
    let ik_a = chi(i, k, a)?;
    let il_b = chi(i, l, b)?;
    let il_a = chi(i, l, a)?;
    let jl_b = chi(j, l, b)?;
    let il_neg = chi(i, l, -a)?;

    let first = pointwise_equal(&[&ik_a, &il_b], &[&sinf_res(Arc::new(i, k, a), i + 1, l, n)?, &il_b], n, p)?;
    let second = pointwise_equal(&[&il_a, &jl_b], &[&il_a, &sinf_res(Arc::new(j, l, b), i, l - 1, n)?], n, p)?;
    let third = pointwise_equal(
        &[&il_a, &il_neg],
        &[&sinf_res(Arc::new(i, l, a), i + 1, l, n)?, &sinf_res(Arc::new(i, l, -a), i, l - 1, n)?],
        n,
        p,
    )?;
    let fourth = if (a + b).is_zero() {
        true
    } else {
        let il_s = chi(i, l, a + b)?;
        pointwise_equal(&[&il_a, &il_b], &[&il_s, &sinf_res(Arc::new(i, l, a + b), i + 1, l - 1, n)?], n, p)?
    };
    Ok(first && second && third && fourth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, p: u32) -> FieldElem {
        FieldElem::new(a, p)
    }

    fn combo(text: &str) -> CharCombo {
        CharCombo::parse(text).unwrap()
    }

    #[test]
    fn disjoint_and_chained_arcs_superimpose() {
        let x = tensor_pair(Arc::new(1, 4, f(1, 3)), Arc::new(2, 3, f(2, 3)), 4, 3).unwrap();
        assert_eq!(x, combo("ambient={1,2,3,4} p=3\n(1) [n=4; 1-4:1, 2-3:2]"));
        let x = tensor_pair(Arc::new(1, 2, f(1, 3)), Arc::new(2, 4, f(2, 3)), 4, 3).unwrap();
        assert_eq!(x, combo("ambient={1,2,3,4} p=3\n(1) [n=4; 1-2:1, 2-4:2]"));
    }

    #[test]
    fn opposite_labels_at_p2() {
        let x = tensor_pair(Arc::new(1, 3, f(1, 2)), Arc::new(1, 3, f(1, 2)), 3, 2).unwrap();
        let want = combo("ambient={1,2,3} p=2\n(1) [n=3]\n(1) [n=3; 1-2:1]\n(1) [n=3; 2-3:1]\n(1) [n=3; 1-2:1, 2-3:1]");
        assert_eq!(x, want);
    }

    #[test]
    fn equal_arcs_with_nonopposite_labels() {
        let x = tensor_pair(Arc::new(1, 4, f(1, 3)), Arc::new(1, 4, f(1, 3)), 4, 3).unwrap();
        let want = combo(
            "ambient={1,2,3,4} p=3\n(2*q - 1) [n=4; 1-4:2]\n(q - 1) [n=4; 1-4:2, 2-3:1]\n(q - 1) [n=4; 1-4:2, 2-3:2]",
        );
        assert_eq!(x, want);
    }

    #[test]
    fn trivial_is_the_unit() {
        let amb = PartitionIndex::whole(4);
        let one = CharCombo::trivial(amb.clone(), 3).unwrap();
        for lam in enumerate_n(4, 3).unwrap() {
            let x = CharCombo::chi(lam, amb.clone(), 3).unwrap();
            assert_eq!(tensor(&x, &one).unwrap(), x);
        }
    }

    #[test]
    fn lemma_identities_small() {
        for p in [2u32, 3] {
            for a in 1..p as i64 {
                for b in 1..p as i64 {
                    assert!(sinfres_identities_check(1, 2, 3, 4, f(a, p), f(b, p), 4, p).unwrap());
                }
            }
        }
    }
}

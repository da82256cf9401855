//! The characteristic map at q = 2, checked against the oracle.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{
    brute_inner_product, brute_superinduce, indicator, z_kappa, z_value, Budget, ClassFunction, Key, PatternGroup,
    SuperclassTable,
};
use crate::qcoeff::Cyclotomic;
use crate::setpart::{enumerate_n, LabeledSetPartition, PartitionIndex, TwoBlock};

use super::elem::{union_index, NCSymElem};
use super::words::star_k_product;

/// The only field size where the map is defined.
pub const CHARMAP_Q: u32 = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CharMapReport {
    /// `(μ, ν, K)` triples checked.
    pub cases: usize,
    /// Triples where `SInd((z_μκ_μ)⊗(z_νκ_ν)) ≠ z_{μ∪ν}κ_{μ∪ν}`.
    pub superinduction_failures: Vec<String>,
    /// Triples where `p_μ ∗_K p_ν ≠ p_{μ∪ν}` on word expansions.
    pub pbasis_failures: Vec<String>,
    /// Pairs where `⟨κ_μ, κ_ν⟩ ≠ δ_{μν}/z_μ`.
    pub isometry_failures: Vec<String>,
}

impl CharMapReport {
    pub fn ok(&self) -> bool {
        self.superinduction_failures.is_empty() && self.pbasis_failures.is_empty() && self.isometry_failures.is_empty()
    }
}

pub fn shape(mu: &LabeledSetPartition) -> PartitionIndex {
    PartitionIndex::new(mu.n(), mu.parts()).expect("parts of a labeled partition")
}

fn full_table(n: u32, budget: &Budget) -> Result<SuperclassTable> {
    SuperclassTable::build(&PatternGroup::full(n, CHARMAP_Q)?, budget)
}

/// Entries of `x` on the positions `block × block`, as a key of `U_{|block|}`.
fn project(x: &Key, total: u32, block: &[u32]) -> Key {
    let mut out = Vec::new();
    for (a, &i) in block.iter().enumerate() {
        for &j in &block[a + 1..] {
            out.push(x[crate::oracle::group_slot(total, i, j)]);
        }
    }
    out
}

/// `(z_μκ_μ) ⊗ (z_νκ_ν)` on `U_K ≅ U_m × U_n`, built factor by factor.
fn outer_product(
    h: &SuperclassTable,
    k: &TwoBlock,
    (tm, f): (&SuperclassTable, &ClassFunction),
    (tn, g): (&SuperclassTable, &ClassFunction),
) -> Result<ClassFunction> {
    let total = k.n();
    h.reps()
        .iter()
        .map(|x| {
            let a = tm
                .class_of(&project(x, total, k.first()))
                .ok_or_else(|| Error::Internal("projection left U_m".into()))?;
            let b = tn
                .class_of(&project(x, total, k.second()))
                .ok_or_else(|| Error::Internal("projection left U_n".into()))?;
            Ok(&f[a] * &g[b])
        })
        .collect()
}

/// Checks the content of the characteristic map for all `m+n ≤ max_total` with `m, n ≥ 1`:
/// superinduction of products of scaled class indicators, multiplicativity of `p`, and the
/// orthogonality of class indicators that makes the map isometric.
pub fn characteristic_map_check(max_total: u32, budget: &Budget) -> Result<CharMapReport> {
    let mut report = CharMapReport::default();
    let q = CHARMAP_Q;
    let tables: Vec<SuperclassTable> = (0..=max_total).map(|n| full_table(n, budget)).collect::<Result<_>>()?;

    for total in 1..=max_total {
        let g = &tables[total as usize];
        let labels: Vec<LabeledSetPartition> = enumerate_n(total, q)?.collect();
        for mu in &labels {
            let c = g.class_of_label(mu)?;
            let z = z_value(g, c);
            for nu in &labels {
                let d = g.class_of_label(nu)?;
                let got = brute_inner_product(g, &indicator(g, c), &indicator(g, d))?;
                let want = if c == d { BigRational::one() / z.clone() } else { BigRational::zero() };
                if got != Cyclotomic::from_rational(q, want) {
                    report.isometry_failures.push(format!("<κ_{mu}, κ_{nu}> = {got}"));
                }
            }
        }
    }

    for total in 2..=max_total {
        let g = &tables[total as usize];
        for m in 1..total {
            let n = total - m;
            let (tm, tn) = (&tables[m as usize], &tables[n as usize]);
            let mus: Vec<_> = enumerate_n(m, q)?.collect();
            let nus: Vec<_> = enumerate_n(n, q)?.collect();
            for k in TwoBlock::all(m, n) {
                let h = SuperclassTable::build(&PatternGroup::parabolic(&k.to_index(), q)?, budget)?;
                for mu in &mus {
                    let f = z_kappa(tm, mu)?;
                    for nu in &nus {
                        report.cases += 1;
                        let gfun = z_kappa(tn, nu)?;
                        let prod = outer_product(&h, &k, (tm, &f), (tn, &gfun))?;
                        let induced = brute_superinduce(&prod, &h, g)?;
                        let joined = LabeledSetPartition::union_k(mu, nu, &k)?;
                        if induced != z_kappa(g, &joined)? {
                            report.superinduction_failures.push(format!("{mu} ∪ {nu} along {k}"));
                        }
                        let (pm, pn) = (shape(mu), shape(nu));
                        let lhs = star_k_product(&NCSymElem::p(pm.clone()), &NCSymElem::p(pn.clone()), &k)?;
                        if lhs != NCSymElem::p(union_index(&pm, &pn, &k)?) {
                            report.pbasis_failures.push(format!("p{pm} * p{pn} along {k}"));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `p_λ ∗_K p_μ = p_{λ∪_Kμ}` on word expansions for all `m+n ≤ max_total`; returns the failures.
pub fn pbasis_multiplicativity_check(max_total: u32) -> Result<Vec<String>> {
    use rayon::prelude::*;
    let mut jobs = Vec::new();
    for total in 0..=max_total {
        for m in 0..=total {
            let n = total - m;
            let ls: Vec<PartitionIndex> = crate::setpart::set_partitions(m as usize)
                .map(|b| PartitionIndex::new(m, b))
                .collect::<Result<_>>()?;
            let us: Vec<PartitionIndex> = crate::setpart::set_partitions(n as usize)
                .map(|b| PartitionIndex::new(n, b))
                .collect::<Result<_>>()?;
            for k in TwoBlock::all(m, n) {
                for l in &ls {
                    for u in &us {
                        jobs.push((l.clone(), u.clone(), k.clone()));
                    }
                }
            }
        }
    }
    let failures: Vec<Option<String>> = jobs
        .par_iter()
        .map(|(l, u, k)| -> Result<Option<String>> {
            let got = star_k_product(&NCSymElem::p(l.clone()), &NCSymElem::p(u.clone()), k)?;
            let want = NCSymElem::p(union_index(l, u, k)?);
            Ok((got != want).then(|| format!("p{l} * p{u} along {k}")))
        })
        .collect::<Result<_>>()?;
    Ok(failures.into_iter().flatten().collect())
}

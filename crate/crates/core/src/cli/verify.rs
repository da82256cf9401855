//! Verification suites: every rule of the calculus against the oracle or an exhaustive sweep.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::ncsym::{characteristic_map_check, pbasis_multiplicativity_check, CHARMAP_Q};
use crate::oracle::{
    brute_inner_product, brute_superinduce, combo_values, permchar_hypothesis_check, sg_signed_sum_corrected, sg_sum,
    single_entry_key, supercharacter_of, tables_for, trivial, Budget, PatternGroup, SuperclassTable,
};
use crate::qcoeff::{Cyclotomic, FieldElem, LaurentPoly};
use crate::ring::{
    restrict, sinfres_identities_check, superinduce_between, superinduce_trivial_twoblock, tensor, value_in,
    CharCombo,
};
use crate::setpart::{count_sn, enumerate_n, enumerate_parts, set_partitions, PartitionIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Orthogonality,
    Restriction,
    Superinduction,
    Sg,
    Lemma,
    Charmap,
    Pbasis,
    Counting,
    Permchar,
    Tensor,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Counting,
        Suite::Orthogonality,
        Suite::Restriction,
        Suite::Tensor,
        Suite::Lemma,
        Suite::Superinduction,
        Suite::Sg,
        Suite::Permchar,
        Suite::Charmap,
        Suite::Pbasis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Restriction => "restriction",
            Suite::Superinduction => "superinduction",
            Suite::Sg => "sg",
            Suite::Lemma => "lemma",
            Suite::Charmap => "charmap",
            Suite::Pbasis => "pbasis",
            Suite::Counting => "counting",
            Suite::Permchar => "permchar",
            Suite::Tensor => "tensor",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one suite; `failures` holds at most a handful of examples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_n: u32,
    pub q: u32,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, max_n: u32, q: u32) -> Self {
        Self {
            suite,
            max_n,
            q,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAIL" };
        write!(
            f,
            "{}: {verdict} ({} checks, max-n {}, q {})",
            self.suite, self.checked, self.max_n, self.q
        )?;
        for x in &self.failures {
            write!(f, "\n  {x}")?;
        }
        Ok(())
    }
}

fn need_prime(q: u32) -> Result<()> {
    if !crate::qcoeff::is_prime(q) {
        return domain(format!("q={q} must be prime for this suite"));
    }
    Ok(())
}

pub fn partition_indices(n: u32) -> Vec<PartitionIndex> {
    set_partitions(n as usize)
        .map(|b| PartitionIndex::new(n, b).expect("set partition"))
        .collect()
}

/// Runs one suite. `seed` only matters for the randomized ones.
pub fn run_suite(suite: Suite, max_n: u32, q: u32, seed: u64, budget: &Budget) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(suite, max_n, q);
    match suite {
        Suite::Counting => counting(&mut r)?,
        Suite::Orthogonality => orthogonality(&mut r, budget)?,
        Suite::Restriction => restriction(&mut r)?,
        Suite::Tensor => tensor_random(&mut r, seed)?,
        Suite::Lemma => lemma(&mut r)?,
        Suite::Superinduction => superinduction(&mut r, budget)?,
        Suite::Sg => sg(&mut r),
        Suite::Permchar => permchar(&mut r, budget)?,
        Suite::Charmap => {
            if q != CHARMAP_Q {
                return domain(format!("the characteristic map is defined at q={CHARMAP_Q} only"));
            }
            let c = characteristic_map_check(max_n, budget)?;
            r.checked = c.cases;
            r.failures = c
                .superinduction_failures
                .into_iter()
                .chain(c.pbasis_failures)
                .chain(c.isometry_failures)
                .collect();
        }
        Suite::Pbasis => {
            r.failures = pbasis_multiplicativity_check(max_n)?;
            r.checked = 1;
        }
    }
    Ok(r)
}

fn counting(r: &mut SuiteReport) -> Result<()> {
    let q = BigInt::from(r.q);
    for n in 0..=r.max_n {
        let want = count_sn(n, &q);
        if crate::qcoeff::is_prime(r.q) {
            let got = enumerate_n(n, r.q)?.count();
            r.check(BigInt::from(got) == want, || format!("n={n}: enumerated {got}, formula {want}"));
        } else {
            let sym = crate::setpart::count_sn_symbolic(n).eval_at(r.q);
            r.check(sym == want.clone().into(), || format!("n={n}: symbolic {sym}, formula {want}"));
        }
    }
    Ok(())
}

fn orthogonality(r: &mut SuiteReport, budget: &Budget) -> Result<()> {
    need_prime(r.q)?;
    for n in 1..=r.max_n {
        let t = SuperclassTable::build(&PatternGroup::full(n, r.q)?, budget)?;
        let lams: Vec<_> = enumerate_n(n, r.q)?.collect();
        let chars: Vec<_> = lams.iter().map(|l| supercharacter_of(&t, l)).collect::<Result<_>>()?;
        for (a, la) in lams.iter().enumerate() {
            for (b, lb) in lams.iter().enumerate() {
                let got = brute_inner_product(&t, &chars[a], &chars[b])?;
                let want = if a == b {
                    Cyclotomic::from_rational(r.q, LaurentPoly::q_pow(la.crossings().len() as i32).eval_at(r.q))
                } else {
                    Cyclotomic::zero(r.q)
                };
                r.check(got == want, || format!("<χ^{la}, χ^{lb}> = {got}, expected {want}"));
            }
        }
    }
    Ok(())
}

/// Restriction output against direct evaluation at every superclass of `U_K`.
fn restriction(r: &mut SuiteReport) -> Result<()> {
    need_prime(r.q)?;
    let p = r.q;
    for n in 1..=r.max_n {
        let lams: Vec<_> = enumerate_n(n, p)?.collect();
        let whole = PartitionIndex::whole(n);
        for k in partition_indices(n) {
            let labels = enumerate_parts(&k, p)?;
            for lam in &lams {
                let res = restrict(lam, &k, p)?;
                for mu in &labels {
                    let got = res.value_at(mu)?;
                    let want = value_in(lam, mu, &whole, p)?;
                    r.check(got == want, || format!("Res_{k} χ^{lam} at {mu}: {got} vs {want}"));
                }
            }
        }
    }
    Ok(())
}

/// Random pairs: tensor products commute and agree with pointwise products of values.
fn tensor_random(r: &mut SuiteReport, seed: u64) -> Result<()> {
    need_prime(r.q)?;
    let p = r.q;
    let mut rng = StdRng::seed_from_u64(seed);
    let max_n = r.max_n.max(1);
    for _ in 0..64 {
        let n = rng.gen_range(1..=max_n);
        let lams: Vec<_> = enumerate_n(n, p)?.collect();
        let x = &lams[rng.gen_range(0..lams.len())];
        let y = &lams[rng.gen_range(0..lams.len())];
        let (cx, cy) = (CharCombo::chi_n(x.clone(), p)?, CharCombo::chi_n(y.clone(), p)?);
        let xy = tensor(&cx, &cy)?;
        let yx = tensor(&cy, &cx)?;
        r.check(xy.specialize() == yx.specialize(), || format!("χ^{x} ⊗ χ^{y} does not commute"));
        // pointwise at a few classes
        for _ in 0..4 {
            let mu = &lams[rng.gen_range(0..lams.len())];
            let got = xy.value_at(mu)?;
            let want = &cx.value_at(mu)? * &cy.value_at(mu)?;
            r.check(got == want, || format!("(χ^{x} ⊗ χ^{y})({mu}) = {got}, expected {want}"));
        }
    }
    Ok(())
}

fn lemma(r: &mut SuiteReport) -> Result<()> {
    need_prime(r.q)?;
    let p = r.q;
    for n in 4..=r.max_n {
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    for l in k + 1..=n {
                        for a in 1..p {
                            for b in 1..p {
                                let (fa, fb) = (FieldElem::new(a as i64, p), FieldElem::new(b as i64, p));
                                let ok = sinfres_identities_check(i, j, k, l, fa, fb, n, p)?;
                                r.check(ok, || format!("i,j,k,l={i},{j},{k},{l} a={a} b={b} n={n}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Frobenius-reciprocity induction against the definition, and the closed form for `SInd(𝟙)`.
fn superinduction(r: &mut SuiteReport, budget: &Budget) -> Result<()> {
    need_prime(r.q)?;
    let p = r.q;
    for n in 1..=r.max_n {
        let whole = PartitionIndex::whole(n);
        for k in partition_indices(n) {
            let (g, h) = tables_for(&k, p, budget)?;
            for mu in enumerate_parts(&k, p)? {
                let ring = combo_values(&g, &superinduce_between(&mu, &k, &whole, p)?)?;
                let brute = brute_superinduce(&supercharacter_of(&h, &mu)?, &h, &g)?;
                r.check(ring == brute, || format!("SInd from {k} of χ^{mu}"));
            }
            let parts = k.parts();
            let cut = parts[0].len() as u32;
            if parts.len() == 2 && parts[0].iter().copied().eq(1..=cut) {
                let closed = combo_values(&g, &superinduce_trivial_twoblock(cut, n, p)?)?;
                let brute = brute_superinduce(&trivial(&h), &h, &g)?;
                r.check(closed == brute, || format!("closed form for SInd(1) from {k}"));
            }
        }
    }
    Ok(())
}

fn sg(r: &mut SuiteReport) {
    let q = LaurentPoly::q();
    for m in 1..=r.max_n as usize {
        for n in 1..=r.max_n as usize {
            let total = q.pow((m * n) as u32);
            r.check(sg_sum(m, n) == total, || format!("{m}x{n}: weighted count differs from q^mn"));
            r.check(sg_signed_sum_corrected(m, n).is_zero(), || format!("{m}x{n}: signed sum nonzero"));
        }
    }
}

/// The non-parabolic subgroup of `U_3` supported on (1,2), (1,3).
fn permchar(r: &mut SuiteReport, budget: &Budget) -> Result<()> {
    need_prime(r.q)?;
    let p = r.q;
    let g = PatternGroup::full(3, p)?;
    let h = PatternGroup::new(3, p, [(1, 2), (1, 3)])?;
    for a in 1..p {
        let mu = single_entry_key(3, 1, 3, a as u8)?;
        let rep = permchar_hypothesis_check(&h, &g, &mu, budget)?;
        r.check(!rep.hypothesis, || format!("a={a}: hypothesis unexpectedly holds"));
        r.check(rep.conclusion, || format!("a={a}: conclusion fails"));
        r.check(rep.ratio == format!("1/{p}"), || format!("a={a}: ratio {}", rep.ratio));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let b = Budget::default();
        for s in Suite::ALL {
            let max_n = match s {
                Suite::Lemma => 4,
                Suite::Sg => 2,
                _ => 3,
            };
            let r = run_suite(s, max_n, 2, 7, &b).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0, "{r}");
        }
    }

    #[test]
    fn charmap_refuses_other_q() {
        assert!(run_suite(Suite::Charmap, 2, 3, 0, &Budget::default()).is_err());
    }

    #[test]
    fn counting_accepts_prime_powers() {
        let r = run_suite(Suite::Counting, 5, 4, 0, &Budget::default()).unwrap();
        assert!(r.passed(), "{r}");
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, parse_err, Error, Result};
use crate::setpart::{set_partitions, PartitionIndex, TwoBlock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    P,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::M => "m",
            Basis::P => "p",
        })
    }
}

/// A degree-`n` element of NCSym in the `m` or the chosen `p` basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCSymElem {
    basis: Basis,
    degree: u32,
    terms: BTreeMap<PartitionIndex, BigRational>,
}

impl NCSymElem {
    pub fn zero(basis: Basis, degree: u32) -> Self {
        Self {
            basis,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, k: PartitionIndex) -> Self {
        let mut x = Self::zero(basis, k.n());
        x.terms.insert(k, BigRational::one());
        x
    }

    pub fn m(k: PartitionIndex) -> Self {
        Self::basis_element(Basis::M, k)
    }

    pub fn p(k: PartitionIndex) -> Self {
        Self::basis_element(Basis::P, k)
    }

    pub fn from_terms(
        basis: Basis,
        degree: u32,
        terms: impl IntoIterator<Item = (PartitionIndex, BigRational)>,
    ) -> Result<Self> {
        let mut x = Self::zero(basis, degree);
        for (k, c) in terms {
            x.add_term(k, c)?;
        }
        Ok(x)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<PartitionIndex, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: &PartitionIndex) -> BigRational {
        self.terms.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, k: PartitionIndex, c: BigRational) -> Result<()> {
        if k.n() != self.degree {
            return domain(format!("{k} has degree {}, expected {}", k.n(), self.degree));
        }
        let slot = self.terms.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return domain("adding elements of different degree");
        }
        let other = other.to_basis(self.basis);
        let mut out = self.clone();
        for (k, c) in other.terms {
            out.add_term(k, c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = Self::zero(self.basis, self.degree);
        if !r.is_zero() {
            out.terms = self.terms.iter().map(|(k, c)| (k.clone(), c * r)).collect();
        }
        out
    }

    pub fn to_basis(&self, basis: Basis) -> Self {
        match (self.basis, basis) {
            (a, b) if a == b => self.clone(),
            (Basis::M, Basis::P) => p_from_m(self),
            _ => m_from_p(self),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(k, c)| serde_json::json!({"partition": k.to_string(), "coeff": c.to_string()}))
            .collect();
        serde_json::json!({"basis": self.basis, "degree": self.degree, "terms": terms})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Term {
            partition: String,
            coeff: String,
        }
        #[derive(Deserialize)]
        struct Raw {
            basis: Basis,
            degree: u32,
            terms: Vec<Term>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut x = Self::zero(raw.basis, raw.degree);
        for t in raw.terms {
            let k = PartitionIndex::parse_with_n(&t.partition, Some(raw.degree))?;
            let c = BigRational::from_str(t.coeff.trim())
                .map_err(|e| Error::Parse(format!("coefficient {:?}: {e}", t.coeff)))?;
            x.add_term(k, c)?;
        }
        Ok(x)
    }

    /// Parses `m{1,2}` or `p{1|2} - 1/2 p{1,2}` style sums; the basis of every term must agree.
    pub fn parse(s: &str, degree: u32) -> Result<Self> {
        let mut basis = None;
        let mut terms = Vec::new();
        let mut rest = s.trim();
        let mut sign = 1i32;
        if rest.is_empty() || rest == "0" {
            return Ok(Self::zero(Basis::M, degree));
        }
        loop {
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r.trim_start();
                continue;
            }
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
                continue;
            }
            let pos = rest
                .find(['m', 'p'])
                .ok_or_else(|| Error::Parse(format!("expected m{{..}} or p{{..}} in {rest:?}")))?;
            let coeff_txt = rest[..pos].trim().trim_end_matches('*').trim();
            let mut c = if coeff_txt.is_empty() {
                BigRational::one()
            } else {
                BigRational::from_str(coeff_txt).map_err(|e| Error::Parse(format!("coefficient {coeff_txt:?}: {e}")))?
            };
            if sign < 0 {
                c = -c;
            }
            sign = 1;
            let b = if rest.as_bytes()[pos] == b'm' { Basis::M } else { Basis::P };
            if basis.is_some_and(|x| x != b) {
                return parse_err("mixed bases in one expression");
            }
            basis = Some(b);
            let after = &rest[pos + 1..];
            let close = after.find('}').ok_or_else(|| Error::Parse(format!("unclosed partition in {after:?}")))?;
            terms.push((PartitionIndex::parse_with_n(&after[..=close], Some(degree))?, c));
            rest = after[close + 1..].trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with(['+', '-']) {
                return parse_err(format!("expected + or - before {rest:?}"));
            }
        }
        Self::from_terms(basis.unwrap_or(Basis::M), degree, terms)
    }
}

impl fmt::Display for NCSymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a} ")?;
            }
            write!(f, "{}{k}", self.basis)?;
        }
        Ok(())
    }
}

impl fmt::Debug for NCSymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCSym[{}]({self})", self.degree)
    }
}

/// Every coarsening of `k` with, for each block of the coarsening, the number of `k`-blocks merged into it.
pub fn coarsenings(k: &PartitionIndex) -> Vec<(PartitionIndex, Vec<usize>)> {
    let blocks = k.parts();
    set_partitions(blocks.len())
        .map(|merge| {
            let counts = merge.iter().map(Vec::len).collect();
            let parts = merge
                .iter()
                .map(|group| group.iter().flat_map(|&b| blocks[b as usize - 1].iter().copied()).collect());
            (PartitionIndex::new(k.n(), parts).expect("coarsening is a partition"), counts)
        })
        .collect()
}

/// Möbius function of the partition lattice on an interval `[fine, coarse]`, from the merge counts.
fn mobius_from_counts(counts: &[usize]) -> BigInt {
    let mut out = BigInt::one();
    for &b in counts {
        let mut f = BigInt::one();
        for i in 1..b {
            f *= i;
        }
        if b % 2 == 0 {
            f = -f;
        }
        out *= f;
    }
    out
}

/// `μ(fine, coarse)`; zero unless `fine` refines `coarse`.
pub fn mobius(fine: &PartitionIndex, coarse: &PartitionIndex) -> BigInt {
    if !fine.refines(coarse) {
        return BigInt::zero();
    }
    let counts: Vec<usize> = coarse
        .parts()
        .iter()
        .map(|c| fine.parts().iter().filter(|f| c.contains(&f[0])).count())
        .collect();
    mobius_from_counts(&counts)
}

/// `p_λ = Σ_{μ ≥ λ} m_μ`, summing over coarsenings.
pub fn m_from_p(x: &NCSymElem) -> NCSymElem {
    if x.basis == Basis::M {
        return x.clone();
    }
    let mut out = NCSymElem::zero(Basis::M, x.degree);
    for (lam, c) in &x.terms {
        for (mu, _) in coarsenings(lam) {
            out.add_term(mu, c.clone()).expect("same degree");
        }
    }
    out
}

/// Inverse of [`m_from_p`] by Möbius inversion: `m_ν = Σ_{λ ≥ ν} μ(ν, λ) p_λ`.
pub fn p_from_m(x: &NCSymElem) -> NCSymElem {
    if x.basis == Basis::P {
        return x.clone();
    }
    let mut out = NCSymElem::zero(Basis::P, x.degree);
    for (nu, c) in &x.terms {
        for (lam, counts) in coarsenings(nu) {
            let w = mobius_from_counts(&counts);
            out.add_term(lam, c * BigRational::from_integer(w)).expect("same degree");
        }
    }
    out
}

/// Unlabeled `λ ∪_K μ`.
pub fn union_index(lambda: &PartitionIndex, mu: &PartitionIndex, k: &TwoBlock) -> Result<PartitionIndex> {
    let (b1, b2) = (k.first(), k.second());
    if lambda.n() as usize != b1.len() || mu.n() as usize != b2.len() {
        return domain(format!("degrees {}+{} do not match {k}", lambda.n(), mu.n()));
    }
    let send = |part: &Vec<u32>, block: &[u32]| part.iter().map(|&v| block[v as usize - 1]).collect::<Vec<u32>>();
    let parts = lambda
        .parts()
        .iter()
        .map(|p| send(p, b1))
        .chain(mu.parts().iter().map(|p| send(p, b2)));
    PartitionIndex::new(k.n(), parts)
}

/// `x ∗_K y` through the multiplicativity of the `p` basis; result in `p`.
pub fn star_k_p(x: &NCSymElem, y: &NCSymElem, k: &TwoBlock) -> Result<NCSymElem> {
    let (xp, yp) = (p_from_m(x), p_from_m(y));
    let mut out = NCSymElem::zero(Basis::P, k.n());
    for (l, a) in &xp.terms {
        for (m, b) in &yp.terms {
            out.add_term(union_index(l, m, k)?, a * b)?;
        }
    }
    Ok(out)
}

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, parse_err, Error, Result};
use crate::qcoeff::{is_prime, LaurentPoly};
use crate::setpart::{LabeledSetPartition, PartitionIndex};

/// A finite combination `Σ c_λ χ^λ` of supercharacters of `U_K`, with
/// coefficients in `Z[q, q^{-1}]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharCombo {
    ambient: PartitionIndex,
    p: u32,
    terms: BTreeMap<LabeledSetPartition, LaurentPoly>,
}

impl CharCombo {
    pub fn zero(ambient: PartitionIndex, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(Self {
            ambient,
            p,
            terms: BTreeMap::new(),
        })
    }

    /// The trivial character `𝟙`.
    pub fn trivial(ambient: PartitionIndex, p: u32) -> Result<Self> {
        let n = ambient.n();
        let mut out = Self::zero(ambient, p)?;
        out.terms.insert(LabeledSetPartition::empty_n(n), LaurentPoly::one());
        Ok(out)
    }

    /// The single supercharacter `χ^λ` of `U_K`.
    pub fn chi(lambda: LabeledSetPartition, ambient: PartitionIndex, p: u32) -> Result<Self> {
        let mut out = Self::zero(ambient, p)?;
        out.add_term(lambda, &LaurentPoly::one())?;
        Ok(out)
    }

    /// `χ^λ` in `U_n`.
    pub fn chi_n(lambda: LabeledSetPartition, p: u32) -> Result<Self> {
        let n = lambda.n().max(lambda.support().len() as u32);
        Self::chi(lambda, PartitionIndex::whole(n), p)
    }

    pub fn ambient(&self) -> &PartitionIndex {
        &self.ambient
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.ambient.n()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LabeledSetPartition, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &LabeledSetPartition) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn check_term(&self, lambda: &LabeledSetPartition) -> Result<()> {
        lambda.check_fits(&self.ambient)?;
        match lambda.prime() {
            Some(p) if p != self.p => domain(format!("{lambda} carries labels mod {p}, expected mod {}", self.p)),
            _ => Ok(()),
        }
    }

    pub fn add_term(&mut self, lambda: LabeledSetPartition, c: &LaurentPoly) -> Result<()> {
        self.check_term(&lambda)?;
        self.add_term_unchecked(lambda, c);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, lambda: LabeledSetPartition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.check_term(&lambda).is_ok(), "{lambda} does not fit {}", self.ambient);
        match self.terms.entry(lambda) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient || self.p != other.p {
            return domain(format!(
                "combination over {} (p={}) mixed with {} (p={})",
                self.ambient, self.p, other.ambient, other.p
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term_unchecked(k.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self {
            ambient: self.ambient.clone(),
            p: self.p,
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    /// Coefficients with `q = p` substituted, zeros dropped. Label sums are
    /// expanded over the concrete field, so two routes to the same character
    /// may only agree after this.
    pub fn specialize(&self) -> BTreeMap<LabeledSetPartition, BigRational> {
        self.terms
            .iter()
            .map(|(k, v)| (k.clone(), v.eval_at(self.p)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Same terms viewed in another ambient; every term must fit it.
    pub fn with_ambient(&self, ambient: PartitionIndex) -> Result<Self> {
        let mut out = Self::zero(ambient, self.p)?;
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComboRepr::from(self)).expect("combination serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let repr: ComboRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        repr.try_into()
    }

    /// Parses the text rendering produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty combination".into()))?;
        let (amb, p) = header
            .strip_prefix("ambient=")
            .and_then(|h| h.rsplit_once(" p="))
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        let p: u32 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in {header:?}")))?;
        let ambient = PartitionIndex::parse(amb)?;
        let mut out = Self::zero(ambient.clone(), p).map_err(|e| Error::Parse(e.to_string()))?;
        for line in lines {
            if line == "0" {
                continue;
            }
            let rest = line
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("term {line:?} must start with `(`")))?;
            let (coeff, part) = rest
                .split_once(") [")
                .ok_or_else(|| Error::Parse(format!("bad term {line:?}")))?;
            let part = part
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("bad term {line:?}")))?;
            let c: LaurentPoly = coeff.parse()?;
            let lambda = LabeledSetPartition::parse(part, p)?;
            if out.terms.contains_key(&lambda) {
                return parse_err(format!("repeated term {lambda}"));
            }
            out.add_term(lambda, &c).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(out)
    }
}

impl fmt::Display for CharCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ambient={} p={}", self.ambient, self.p)?;
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (k, v) in &self.terms {
            writeln!(f, "({v}) [{k}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CharCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    partition: String,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct ComboRepr {
    ambient: String,
    q: u32,
    terms: Vec<TermRepr>,
}

impl From<&CharCombo> for ComboRepr {
    fn from(c: &CharCombo) -> Self {
        Self {
            ambient: c.ambient.to_string(),
            q: c.p,
            terms: c
                .terms
                .iter()
                .map(|(k, v)| TermRepr {
                    partition: k.to_string(),
                    coeff: v.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ComboRepr> for CharCombo {
    type Error = Error;
    fn try_from(r: ComboRepr) -> Result<Self> {
        let ambient = PartitionIndex::parse(&r.ambient)?;
        let mut out = CharCombo::zero(ambient, r.q).map_err(|e| Error::Parse(e.to_string()))?;
        for t in r.terms {
            let lambda = LabeledSetPartition::parse(&t.partition, r.q)?;
            out.add_term(lambda, &t.coeff).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CharCombo {
        let amb = PartitionIndex::parse("{1,2,3|4,5}").unwrap();
        let mut x = CharCombo::trivial(amb.clone(), 3).unwrap();
        let lam = LabeledSetPartition::parse("n=5; 1-3:2, 4-5:1", 3).unwrap();
        x.add_term(lam, &"q^2 - q^-1".parse().unwrap()).unwrap();
        x
    }

    #[test]
    fn text_round_trip() {
        let x = sample();
        let text = x.to_string();
        assert_eq!(
            text,
            "ambient={1,2,3|4,5} p=3\n(1) [n=5]\n(q^2 - q^-1) [n=5; 1-3:2, 4-5:1]\n"
        );
        assert_eq!(CharCombo::parse(&text).unwrap(), x);
    }

    #[test]
    fn json_round_trip() {
        let x = sample();
        let v = x.to_json();
        assert_eq!(v["ambient"], "{1,2,3|4,5}");
        assert_eq!(v["terms"][0]["partition"], "n=5");
        assert_eq!(CharCombo::from_json(&v).unwrap(), x);
    }

    #[test]
    fn terms_must_fit_the_ambient() {
        let amb = PartitionIndex::parse("{1,2|3}").unwrap();
        let mut x = CharCombo::zero(amb, 2).unwrap();
        let bad = LabeledSetPartition::parse("n=3; 2-3", 2).unwrap();
        assert!(x.add_term(bad, &LaurentPoly::one()).is_err());
        let wrong_p = LabeledSetPartition::parse("n=3; 1-2:2", 3).unwrap();
        assert!(x.add_term(wrong_p, &LaurentPoly::one()).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = sample();
        assert!(x.sub(&x).unwrap().is_empty());
        assert_eq!(x.sub(&x).unwrap().to_string(), "ambient={1,2,3|4,5} p=3\n0\n");
    }
}

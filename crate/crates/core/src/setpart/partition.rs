use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{domain, parse_err, Error, Result};
use crate::qcoeff::{is_prime, FieldElem};

use super::index::{PartitionIndex, TwoBlock};
use super::parse::{parse_subset, split_top_level};

/// A labeled arc `left ⌢ right`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub left: u32,
    pub right: u32,
    pub label: FieldElem,
}

impl Arc {
    pub fn new(left: u32, right: u32, label: FieldElem) -> Self {
        Self { left, right, label }
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.left, self.right)
    }

    /// `self` and `other` cross when `i < j < k < l` for `i⌢k`, `j⌢l`.
    pub fn crosses(&self, other: &Arc) -> bool {
        let (a, b) = if self.left <= other.left {
            (self, other)
        } else {
            (other, self)
        };
        a.left < b.left && b.left < a.right && a.right < b.right
    }

    /// `other` lies strictly inside the span of `self`.
    pub fn nests(&self, other: &Arc) -> bool {
        self.left < other.left && other.right < self.right
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}:{}", self.left, self.right, self.label)
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An `F_p`-labeled set partition: a finite support together with labeled arcs
/// joining consecutive elements of each part.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledSetPartition {
    support: BTreeSet<u32>,
    arcs: Vec<Arc>,
}

/// Superclass representatives `u_μ` are indexed by the same objects.
pub type SuperclassLabel = LabeledSetPartition;

impl LabeledSetPartition {
    pub fn new(support: impl IntoIterator<Item = u32>, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let support: BTreeSet<u32> = support.into_iter().collect();
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort();
        validate(&support, &arcs)?;
        Ok(Self { support, arcs })
    }

    /// Support `{1..n}`.
    pub fn on_n(n: u32, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        Self::new(1..=n, arcs)
    }

    pub fn empty(support: impl IntoIterator<Item = u32>) -> Self {
        Self {
            support: support.into_iter().collect(),
            arcs: Vec::new(),
        }
    }

    pub fn empty_n(n: u32) -> Self {
        Self::empty(1..=n)
    }

    /// The one-arc partition `⟨i ⌢a l⟩_n`.
    pub fn single_arc(n: u32, i: u32, l: u32, a: FieldElem) -> Result<Self> {
        Self::on_n(n, [Arc::new(i, l, a)])
    }

    /// Caller guarantees validity; checked in debug builds.
    pub(crate) fn from_parts_unchecked(support: BTreeSet<u32>, mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        debug_assert!(validate(&support, &arcs).is_ok(), "invalid arcs {arcs:?}");
        Self { support, arcs }
    }

    pub fn support(&self) -> &BTreeSet<u32> {
        &self.support
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Largest support vertex, or 0 for the empty support.
    pub fn n(&self) -> u32 {
        self.support.iter().next_back().copied().unwrap_or(0)
    }

    /// Support is exactly `{1..n}`.
    pub fn is_standard(&self) -> bool {
        self.support.iter().copied().eq(1..=self.support.len() as u32)
    }

    pub fn arc_from(&self, left: u32) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.left == left)
    }

    pub fn arc_into(&self, right: u32) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.right == right)
    }

    pub fn arc_between(&self, left: u32, right: u32) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.left == left && a.right == right)
    }

    /// Parts as increasing chains, ordered by least element; singletons included.
    pub fn parts(&self) -> Vec<Vec<u32>> {
        let next: BTreeMap<u32, u32> = self.arcs.iter().map(|a| (a.left, a.right)).collect();
        let heads = self
            .support
            .iter()
            .copied()
            .filter(|&v| self.arc_into(v).is_none());
        heads
            .map(|h| {
                let mut part = vec![h];
                let mut cur = h;
                while let Some(&nx) = next.get(&cur) {
                    part.push(nx);
                    cur = nx;
                }
                part
            })
            .collect()
    }

    pub fn crossings(&self) -> Vec<(Arc, Arc)> {
        let mut out = Vec::new();
        for (x, a) in self.arcs.iter().enumerate() {
            for b in &self.arcs[x + 1..] {
                if a.crosses(b) {
                    out.push((*a, *b));
                }
            }
        }
        out
    }

    /// Crossings between arcs lying in the same part of `k`.
    pub fn crossings_within(&self, k: &PartitionIndex) -> Result<Vec<(Arc, Arc)>> {
        self.check_fits(k)?;
        Ok(self
            .crossings()
            .into_iter()
            .filter(|(a, b)| k.part_of(a.left) == k.part_of(b.left))
            .collect())
    }

    pub fn crossing_count_within(&self, k: &PartitionIndex) -> Result<usize> {
        self.crossings_within(k).map(|c| c.len())
    }

    /// Every arc has both endpoints inside one part of `k`, and the support is `{1..k.n()}`.
    pub fn fits(&self, k: &PartitionIndex) -> bool {
        self.check_fits(k).is_ok()
    }

    pub fn check_fits(&self, k: &PartitionIndex) -> Result<()> {
        if !self.support.iter().copied().eq(1..=k.n()) {
            return domain(format!("partition {self} is not supported on {{1..{}}}", k.n()));
        }
        match self.arcs.iter().find(|a| !k.same_part(a.left, a.right)) {
            Some(a) => domain(format!("arc {a} straddles two parts of {k}")),
            None => Ok(()),
        }
    }

    /// `⟨λ⟩_T`: same arcs on the larger support `T`.
    pub fn extend(&self, t: impl IntoIterator<Item = u32>) -> Result<Self> {
        let t: BTreeSet<u32> = t.into_iter().collect();
        if !self.support.is_subset(&t) {
            return domain(format!("{self}: extension set does not contain the support"));
        }
        Ok(Self {
            support: t,
            arcs: self.arcs.clone(),
        })
    }

    /// Relabels the support by the increasing bijection onto `{1..|S|}`.
    pub fn standardize(&self) -> Self {
        let pos: BTreeMap<u32, u32> = self
            .support
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32 + 1))
            .collect();
        self.relabel(|v| pos[&v], (1..=self.support.len() as u32).collect())
    }

    /// Transports a partition on `{1..|S|}` onto `S` by the increasing bijection.
    pub fn transport_onto(&self, s: &BTreeSet<u32>) -> Result<Self> {
        if !self.is_standard() || self.support.len() != s.len() {
            return domain(format!("cannot transport {self} onto a set of size {}", s.len()));
        }
        let target: Vec<u32> = s.iter().copied().collect();
        Ok(self.relabel(|v| target[v as usize - 1], s.clone()))
    }

    fn relabel(&self, f: impl Fn(u32) -> u32, support: BTreeSet<u32>) -> Self {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc::new(f(a.left), f(a.right), a.label))
            .collect();
        Self::from_parts_unchecked(support, arcs)
    }

    /// Mirror image `v ↦ n+1-v`; requires support `{1..n}`.
    pub fn reflect(&self) -> Result<Self> {
        if !self.is_standard() {
            return domain(format!("reflect needs support {{1..n}}, got {self}"));
        }
        let n = self.n();
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc::new(n + 1 - a.right, n + 1 - a.left, a.label))
            .collect();
        Ok(Self::from_parts_unchecked(self.support.clone(), arcs))
    }

    /// `λ ∪_K μ`: `λ` transported onto the first block and `μ` onto the second.
    pub fn union_k(lambda: &Self, mu: &Self, k: &TwoBlock) -> Result<Self> {
        let (b1, b2) = (k.first(), k.second());
        if lambda.support.len() != b1.len() || mu.support.len() != b2.len() {
            return domain(format!(
                "union_K: sizes {}+{} do not match blocks {}+{}",
                lambda.support.len(),
                mu.support.len(),
                b1.len(),
                b2.len()
            ));
        }
        let l = lambda.standardize().transport_onto(&b1.iter().copied().collect())?;
        let m = mu.standardize().transport_onto(&b2.iter().copied().collect())?;
        let arcs: Vec<Arc> = l.arcs.iter().chain(&m.arcs).copied().collect();
        Self::new(1..=k.n(), arcs)
    }

    /// Union of arc sets on a common support.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.support != other.support {
            return domain("merge: supports differ");
        }
        Self::new(
            self.support.iter().copied(),
            self.arcs.iter().chain(&other.arcs).copied(),
        )
    }

    /// Field size carried by the labels, if any arc exists.
    pub fn prime(&self) -> Option<u32> {
        self.arcs.first().map(|a| a.label.modulus())
    }

    /// Parses `n=9; 1-5:1, 5-7:2` or `S={2,3,5,7}; 2-5:1`. A missing label means 1.
    pub fn parse(s: &str, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        let s = s.trim();
        let (head, rest) = match s.split_once(';') {
            Some((h, r)) => (h.trim(), r.trim()),
            None => (s, ""),
        };
        let support: BTreeSet<u32> = if let Some(n) = head.strip_prefix("n=") {
            let n: u32 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad size in {head:?}")))?;
            (1..=n).collect()
        } else if let Some(set) = head.strip_prefix("S=") {
            parse_subset(set)?
        } else {
            return parse_err(format!("expected `n=..` or `S=..`, got {head:?}"));
        };
        let mut arcs = Vec::new();
        for tok in split_top_level(rest) {
            arcs.push(parse_arc(tok, p)?);
        }
        Self::new(support, arcs).map_err(|e| match e {
            Error::Domain(m) => Error::Parse(m),
            e => e,
        })
    }
}

pub(crate) fn parse_arc(tok: &str, p: u32) -> Result<Arc> {
    let tok = tok.trim();
    let (ends, label) = match tok.split_once(':') {
        Some((e, l)) => (e, Some(l)),
        None => (tok, None),
    };
    let (i, l) = ends
        .split_once('-')
        .ok_or_else(|| Error::Parse(format!("arc {tok:?} is not of the form i-l:a")))?;
    let num = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad number {x:?} in arc {tok:?}")))
    };
    let (i, l) = (num(i)?, num(l)?);
    if i < 1 || l < 1 {
        return parse_err(format!("arc {tok:?} has a non-positive endpoint"));
    }
    let a = match label {
        Some(x) => num(x)?,
        None => 1,
    };
    Ok(Arc::new(i as u32, l as u32, FieldElem::new(a, p)))
}

fn validate(support: &BTreeSet<u32>, arcs: &[Arc]) -> Result<()> {
    if support.contains(&0) {
        return domain("vertices are 1-based");
    }
    let mut outs = BTreeSet::new();
    let mut ins = BTreeSet::new();
    let mut prime = None;
    for a in arcs {
        if a.left >= a.right {
            return domain(format!("arc {a}: left endpoint must be smaller"));
        }
        if !support.contains(&a.left) || !support.contains(&a.right) {
            return domain(format!("arc {a} leaves the support"));
        }
        if a.label.is_zero() {
            return domain(format!("arc {a} has zero label"));
        }
        if *prime.get_or_insert(a.label.modulus()) != a.label.modulus() {
            return domain("arcs carry labels from different fields");
        }
        if !outs.insert(a.left) {
            return domain(format!("vertex {} starts two arcs", a.left));
        }
        if !ins.insert(a.right) {
            return domain(format!("vertex {} ends two arcs", a.right));
        }
    }
    Ok(())
}

impl fmt::Display for LabeledSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_standard() {
            write!(f, "n={}", self.support.len())?;
        } else {
            let s: Vec<String> = self.support.iter().map(u32::to_string).collect();
            write!(f, "S={{{}}}", s.join(","))?;
        }
        if !self.arcs.is_empty() {
            let arcs: Vec<String> = self.arcs.iter().map(Arc::to_string).collect();
            write!(f, "; {}", arcs.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LabeledSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

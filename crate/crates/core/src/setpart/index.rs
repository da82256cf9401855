use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, parse_err, Error, Result};

use super::parse::parse_elements;

/// An unlabeled set partition `K` of `{1..n}`; designates the parabolic subgroup `U_K`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionIndex {
    n: u32,
    parts: Vec<Vec<u32>>,
    owner: Vec<usize>,
}

impl PartitionIndex {
    pub fn new(n: u32, parts: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let mut parts: Vec<Vec<u32>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        if parts.iter().any(Vec::is_empty) {
            return domain("partition index has an empty part");
        }
        parts.sort();
        let mut owner = vec![usize::MAX; n as usize];
        for (idx, part) in parts.iter().enumerate() {
            for w in part.windows(2) {
                if w[0] == w[1] {
                    return domain(format!("vertex {} repeated", w[0]));
                }
            }
            for &v in part {
                if v == 0 || v > n {
                    return domain(format!("vertex {v} outside 1..{n}"));
                }
                if owner[v as usize - 1] != usize::MAX {
                    return domain(format!("vertex {v} lies in two parts"));
                }
                owner[v as usize - 1] = idx;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return domain(format!("vertex {} is not covered", v + 1));
        }
        Ok(Self { n, parts, owner })
    }

    /// The single part `{1..n}`, i.e. `U_n` itself.
    pub fn whole(n: u32) -> Self {
        Self::new(n, (n > 0).then(|| (1..=n).collect())).expect("valid")
    }

    pub fn singletons(n: u32) -> Self {
        Self::new(n, (1..=n).map(|v| vec![v])).expect("valid")
    }

    /// `S` as one part, every other vertex of `{1..n}` a singleton.
    pub fn from_subset(s: &BTreeSet<u32>, n: u32) -> Result<Self> {
        let mut parts = Vec::new();
        if !s.is_empty() {
            parts.push(s.iter().copied().collect());
        }
        parts.extend((1..=n).filter(|v| !s.contains(v)).map(|v| vec![v]));
        Self::new(n, parts)
    }

    /// Parses `{1,5,7|2,3|4|6,8,9}`; vertices up to the largest mentioned that
    /// are missing become singletons.
    pub fn parse(s: &str) -> Result<Self> {
        Self::parse_with_n(s, None)
    }

    /// As [`PartitionIndex::parse`], padding with singletons up to `n`.
    pub fn parse_with_n(s: &str, n: Option<u32>) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{..|..}}, got {s:?}")))?;
        let mut parts = Vec::new();
        for chunk in body.split('|') {
            let elems = parse_elements(chunk)?;
            if elems.is_empty() {
                if body.trim().is_empty() {
                    continue;
                }
                return parse_err(format!("empty part in {s:?}"));
            }
            parts.push(elems);
        }
        let seen: BTreeSet<u32> = parts.iter().flatten().copied().collect();
        let max = seen.iter().next_back().copied().unwrap_or(0);
        let n = match n {
            Some(n) if n < max => return parse_err(format!("{s:?} mentions vertex {max} > n={n}")),
            Some(n) => n,
            None => max,
        };
        parts.extend((1..=n).filter(|v| !seen.contains(v)).map(|v| vec![v]));
        Self::new(n, parts).map_err(|e| match e {
            Error::Domain(m) => Error::Parse(m),
            e => e,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    pub fn part_set(&self, idx: usize) -> BTreeSet<u32> {
        self.parts[idx].iter().copied().collect()
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: u32) -> usize {
        self.owner[v as usize - 1]
    }

    pub fn same_part(&self, a: u32, b: u32) -> bool {
        self.part_of(a) == self.part_of(b)
    }

    pub fn is_whole(&self) -> bool {
        self.parts.len() <= 1
    }

    /// Every part of `self` lies inside a part of `other`.
    pub fn refines(&self, other: &PartitionIndex) -> bool {
        self.n == other.n
            && self
                .parts
                .iter()
                .all(|p| p.iter().all(|&v| other.same_part(p[0], v)))
    }

    pub fn reflect(&self) -> Self {
        let n = self.n;
        Self::new(n, self.parts.iter().map(|p| p.iter().map(|v| n + 1 - v).collect()))
            .expect("reflection of a valid index")
    }

    /// `Σ |K_i|(|K_i|-1)/2`, the number of free entries of `U_K`.
    pub fn dimension(&self) -> u32 {
        self.parts
            .iter()
            .map(|p| {
                let m = p.len() as u32;
                m * m.saturating_sub(1) / 2
            })
            .sum()
    }
}

impl fmt::Display for PartitionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| p.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

impl fmt::Debug for PartitionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartitionIndex({self})")
    }
}

impl FromStr for PartitionIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for PartitionIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PartitionIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A two-block partition `K = K₁ ∪ K₂` of `{1..m+n}` with the blocks kept in order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoBlock {
    first: Vec<u32>,
    second: Vec<u32>,
}

impl TwoBlock {
    pub fn new(mut first: Vec<u32>, mut second: Vec<u32>) -> Result<Self> {
        first.sort_unstable();
        second.sort_unstable();
        let total = (first.len() + second.len()) as u32;
        let all: BTreeSet<u32> = first.iter().chain(&second).copied().collect();
        if all.len() as u32 != total || !all.iter().copied().eq(1..=total) {
            return domain(format!("blocks {first:?}, {second:?} do not partition 1..{total}"));
        }
        Ok(Self { first, second })
    }

    /// `{1..m} ∪ {m+1..m+n}`.
    pub fn concat(m: u32, n: u32) -> Self {
        Self {
            first: (1..=m).collect(),
            second: (m + 1..=m + n).collect(),
        }
    }

    /// All two-block `K` with `|K₁| = m`, `|K₂| = n`, first blocks in lexicographic order.
    pub fn all(m: u32, n: u32) -> Vec<Self> {
        let total = m + n;
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << total) {
            if mask.count_ones() != m {
                continue;
            }
            let first: Vec<u32> = (1..=total).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            let second: Vec<u32> = (1..=total).filter(|v| mask >> (v - 1) & 1 == 0).collect();
            out.push(Self { first, second });
        }
        out.sort_by(|a, b| a.first.cmp(&b.first));
        out
    }

    /// Parses `{2,3,7|1,4,5,6}`; block order is kept.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{K1|K2}}, got {s:?}")))?;
        let (a, b) = body
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("two-block index needs one `|`: {s:?}")))?;
        Self::new(parse_elements(a)?, parse_elements(b)?).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn first(&self) -> &[u32] {
        &self.first
    }

    pub fn second(&self) -> &[u32] {
        &self.second
    }

    pub fn n(&self) -> u32 {
        (self.first.len() + self.second.len()) as u32
    }

    pub fn to_index(&self) -> PartitionIndex {
        let parts = [self.first.clone(), self.second.clone()]
            .into_iter()
            .filter(|p| !p.is_empty());
        PartitionIndex::new(self.n(), parts).expect("valid two-block index")
    }
}

impl fmt::Display for TwoBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |p: &[u32]| p.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{}|{}}}", j(&self.first), j(&self.second))
    }
}

impl fmt::Debug for TwoBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoBlock({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let k = PartitionIndex::parse("{1,5,7|2,3|4|6,8,9}").unwrap();
        assert_eq!(k.to_string(), "{1,5,7|2,3|4|6,8,9}");
        assert_eq!(k.parts().len(), 4);
        let pad = PartitionIndex::parse("{6,8,9|1,5,7|2,3}").unwrap();
        assert_eq!(pad, k);
        let iv = PartitionIndex::parse_with_n("{[2,5]}", Some(7)).unwrap();
        assert_eq!(iv.to_string(), "{1|2,3,4,5|6|7}");
        assert!(PartitionIndex::parse("{1,2|2,3}").is_err());
        assert!(PartitionIndex::parse("1,2").is_err());
        assert_eq!(PartitionIndex::parse("{}").unwrap().n(), 0);
    }

    #[test]
    fn refinement() {
        let fine = PartitionIndex::parse("{1,3|2|4}").unwrap();
        let coarse = PartitionIndex::parse("{1,3,4|2}").unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(fine.refines(&PartitionIndex::whole(4)));
        assert!(PartitionIndex::singletons(4).refines(&fine));
    }

    #[test]
    fn reflection_and_dimension() {
        let k = PartitionIndex::parse("{1,3,5|2,4}").unwrap();
        assert_eq!(k.reflect().to_string(), "{1,3,5|2,4}");
        assert_eq!(k.dimension(), 4);
        let k = PartitionIndex::parse("{1,2|3}").unwrap();
        assert_eq!(k.reflect().to_string(), "{1|2,3}");
    }

    #[test]
    fn two_blocks() {
        let k = TwoBlock::parse("{2,3,7|1,4,5,6}").unwrap();
        assert_eq!(k.first(), &[2, 3, 7]);
        assert_eq!(k.to_index().to_string(), "{1,4,5,6|2,3,7}");
        assert_eq!(TwoBlock::all(2, 2).len(), 6);
        assert_eq!(TwoBlock::all(1, 2)[0], TwoBlock::concat(1, 2));
        assert!(TwoBlock::new(vec![1], vec![3]).is_err());
    }
}

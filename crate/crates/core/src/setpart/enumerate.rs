use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::qcoeff::{field_units, FieldElem, LaurentPoly};

use super::index::PartitionIndex;
use super::partition::{Arc, LabeledSetPartition};

/// Restricted growth strings of length `n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    word: Vec<u32>,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        Self {
            word: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) {
        let n = self.word.len();
        // prefix maxima
        let mut maxes = vec![0u32; n];
        for i in 1..n {
            maxes[i] = maxes[i - 1].max(self.word[i - 1]);
        }
        for i in (1..n).rev() {
            if self.word[i] <= maxes[i] {
                self.word[i] += 1;
                for w in &mut self.word[i + 1..] {
                    *w = 0;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.word.clone();
        self.advance();
        Some(out)
    }
}

/// Blocks of an RGS word over positions `1..=n`, ordered by least element.
pub fn rgs_blocks(word: &[u32]) -> Vec<Vec<u32>> {
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for (i, &b) in word.iter().enumerate() {
        if b as usize == blocks.len() {
            blocks.push(Vec::new());
        }
        blocks[b as usize].push(i as u32 + 1);
    }
    blocks
}

/// All unlabeled set partitions of `{1..n}`, in RGS order.
pub fn set_partitions(n: usize) -> impl Iterator<Item = Vec<Vec<u32>>> {
    RestrictedGrowth::new(n).map(|w| rgs_blocks(&w))
}

/// Every `F_p`-labeled set partition of `S` exactly once: shapes in RGS order,
/// then labels as an odometer over `1..p-1` with the last arc fastest.
pub struct LabeledPartitions {
    support: Vec<u32>,
    shapes: RestrictedGrowth,
    units: Vec<FieldElem>,
    current: Option<(Vec<(u32, u32)>, Vec<usize>)>,
}

impl Iterator for LabeledPartitions {
    type Item = LabeledSetPartition;
    fn next(&mut self) -> Option<LabeledSetPartition> {
        loop {
            if self.current.is_none() {
                let word = self.shapes.next()?;
                let mut ends = Vec::new();
                for block in rgs_blocks(&word) {
                    for w in block.windows(2) {
                        ends.push((self.support[w[0] as usize - 1], self.support[w[1] as usize - 1]));
                    }
                }
                ends.sort_unstable();
                let k = ends.len();
                self.current = Some((ends, vec![0; k]));
            }
            let (ends, odo) = self.current.as_mut().expect("set above");
            let arcs = ends
                .iter()
                .zip(odo.iter())
                .map(|(&(l, r), &i)| Arc::new(l, r, self.units[i]))
                .collect();
            let out = LabeledSetPartition::from_parts_unchecked(self.support.iter().copied().collect(), arcs);
            // advance the odometer
            let mut pos = odo.len();
            loop {
                if pos == 0 {
                    self.current = None;
                    break;
                }
                pos -= 1;
                odo[pos] += 1;
                if odo[pos] < self.units.len() {
                    break;
                }
                odo[pos] = 0;
            }
            return Some(out);
        }
    }
}

pub fn enumerate(s: &BTreeSet<u32>, p: u32) -> Result<LabeledPartitions> {
    Ok(LabeledPartitions {
        support: s.iter().copied().collect(),
        shapes: RestrictedGrowth::new(s.len()),
        units: field_units(p)?,
        current: None,
    })
}

/// `S_n(p)` for the support `{1..n}`.
pub fn enumerate_n(n: u32, p: u32) -> Result<LabeledPartitions> {
    enumerate(&(1..=n).collect(), p)
}

/// Every labeled set partition of `{1..n}` whose arcs stay inside the parts of
/// `k`; these index the supercharacters and superclasses of `U_K`.
pub fn enumerate_parts(k: &PartitionIndex, p: u32) -> Result<Vec<LabeledSetPartition>> {
    let mut acc: Vec<Vec<Arc>> = vec![Vec::new()];
    for part in k.parts() {
        let local: Vec<LabeledSetPartition> = enumerate(&part.iter().copied().collect(), p)?.collect();
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for prefix in &acc {
            for l in &local {
                let mut arcs = prefix.clone();
                arcs.extend_from_slice(l.arcs());
                next.push(arcs);
            }
        }
        acc = next;
    }
    let support: BTreeSet<u32> = (1..=k.n()).collect();
    Ok(acc
        .into_iter()
        .map(|arcs| LabeledSetPartition::from_parts_unchecked(support.clone(), arcs))
        .collect())
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// `s_n(q)`, the number of `F_q`-labeled set partitions of `{1..n}`, via
/// `s_{n+1} = Σ_k C(n,k) (q-1)^k s_{n-k}`.
pub fn count_sn(n: u32, q: &BigInt) -> BigInt {
    let qm1 = q - BigInt::one();
    let binom = binomials(n as usize);
    let mut s: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..n as usize {
        let mut next = BigInt::zero();
        let mut pw = BigInt::one();
        for k in 0..=m {
            next += &binom[m][k] * &pw * &s[m - k];
            pw *= &qm1;
        }
        s.push(next);
    }
    s.pop().expect("nonempty")
}

/// `s_n(q)` as a polynomial in `q`.
pub fn count_sn_symbolic(n: u32) -> LaurentPoly {
    let qm1 = LaurentPoly::q_minus_one();
    let binom = binomials(n as usize);
    let mut s = vec![LaurentPoly::one()];
    for m in 0..n as usize {
        let mut next = LaurentPoly::zero();
        let mut pw = LaurentPoly::one();
        for k in 0..=m {
            next += &(&pw * &s[m - k]).scale(&binom[m][k]);
            pw = &pw * &qm1;
        }
        s.push(next);
    }
    s.pop().expect("nonempty")
}

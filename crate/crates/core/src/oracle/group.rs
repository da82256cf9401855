//! Pattern groups as explicit finite sets of matrices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::qcoeff::is_prime;
use crate::setpart::{LabeledSetPartition, PartitionIndex};

/// Hard limits for brute-force work. Exceeding one is a refusal, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest group order that may be enumerated.
    pub group_order: u128,
    /// Largest `|G|^3` for the literal double-coset average.
    pub literal_work: u128,
}

impl Default for Budget {
    fn default() -> Self {
        // 3^6 = |U_4(3)|; 64^3 = |U_4(2)|^3
        Self {
            group_order: 729,
            literal_work: 262_144,
        }
    }
}

impl Budget {
    pub fn with_group_order(limit: u128) -> Self {
        Self {
            group_order: limit,
            literal_work: limit.saturating_pow(3).max(Self::default().literal_work),
        }
    }
}

/// Strictly upper-triangular entries in row-major order; shared key format
/// for `g - 1` and for functionals on the pattern algebra.
pub type Key = Vec<u8>;

pub(crate) fn slot(n: u32, i: u32, j: u32) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    let (n, i, j) = (n as usize, i as usize, j as usize);
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

pub(crate) fn key_len(n: u32) -> usize {
    (n as usize) * (n as usize).saturating_sub(1) / 2
}

/// `U_P(p)` for a poset `P` on `{1..n}` given by its strict order relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternGroup {
    n: u32,
    p: u32,
    mask: Vec<(u32, u32)>,
}

impl PatternGroup {
    pub fn new(n: u32, p: u32, mask: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if !is_prime(p) || p > 251 {
            return domain(format!("oracle needs a prime p <= 251, got {p}"));
        }
        let mask: BTreeSet<(u32, u32)> = mask.into_iter().collect();
        for &(i, j) in &mask {
            if !(1 <= i && i < j && j <= n) {
                return domain(format!("mask position ({i},{j}) is not strictly upper in 1..{n}"));
            }
        }
        for &(i, j) in &mask {
            for &(j2, k) in mask.range((j, 0)..(j + 1, 0)) {
                debug_assert_eq!(j2, j);
                if !mask.contains(&(i, k)) {
                    return domain(format!("mask is not transitive: ({i},{j}),({j},{k}) without ({i},{k})"));
                }
            }
        }
        Ok(Self {
            n,
            p,
            mask: mask.into_iter().collect(),
        })
    }

    /// The full group `U_n(p)`.
    pub fn full(n: u32, p: u32) -> Result<Self> {
        Self::new(n, p, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
    }

    /// The parabolic subgroup `U_K(p)`.
    pub fn parabolic(k: &PartitionIndex, p: u32) -> Result<Self> {
        let mut mask = Vec::new();
        for part in k.parts() {
            for (x, &i) in part.iter().enumerate() {
                for &j in &part[x + 1..] {
                    mask.push((i, j));
                }
            }
        }
        Self::new(k.n(), p, mask)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn mask(&self) -> &[(u32, u32)] {
        &self.mask
    }

    pub fn contains_position(&self, i: u32, j: u32) -> bool {
        self.mask.binary_search(&(i, j)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.n == other.n && self.p == other.p && self.mask.iter().all(|&(i, j)| other.contains_position(i, j))
    }

    /// `p^{|mask|}`, saturating.
    pub fn order(&self) -> u128 {
        (self.p as u128).saturating_pow(self.mask.len() as u32)
    }

    pub fn check_budget(&self, budget: &Budget) -> Result<()> {
        let order = self.order();
        if order > budget.group_order {
            return Err(Error::Budget {
                what: format!("enumerating {self}"),
                required: order,
                limit: budget.group_order,
            });
        }
        Ok(())
    }

    /// Whether a key is supported on the mask.
    pub fn supports(&self, key: &[u8]) -> bool {
        let mut allowed = vec![false; key.len()];
        for &(i, j) in &self.mask {
            allowed[slot(self.n, i, j)] = true;
        }
        key.iter().zip(&allowed).all(|(&v, &ok)| v == 0 || ok)
    }

    /// Every `g - 1`, odometer order over the mask with the last position fastest.
    pub fn elements(&self, budget: &Budget) -> Result<Vec<Key>> {
        self.check_budget(budget)?;
        let slots: Vec<usize> = self.mask.iter().map(|&(i, j)| slot(self.n, i, j)).collect();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u8; key_len(self.n)];
        loop {
            out.push(cur.clone());
            let mut pos = slots.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                let s = slots[pos];
                cur[s] += 1;
                if (cur[s] as u32) < self.p {
                    break;
                }
                cur[s] = 0;
            }
        }
    }

    /// `(1 + e_ij) X`: row `j` added to row `i`.
    pub(crate) fn left_gen(&self, x: &[u8], i: u32, j: u32) -> Key {
        let mut y = x.to_vec();
        for b in j + 1..=self.n {
            let v = x[slot(self.n, j, b)];
            if v != 0 {
                let s = slot(self.n, i, b);
                y[s] = ((y[s] as u32 + v as u32) % self.p) as u8;
            }
        }
        y
    }

    /// `X (1 + e_ij)`: column `i` added to column `j`.
    pub(crate) fn right_gen(&self, x: &[u8], i: u32, j: u32) -> Key {
        let mut y = x.to_vec();
        for a in 1..i {
            let v = x[slot(self.n, a, i)];
            if v != 0 {
                let s = slot(self.n, a, j);
                y[s] = ((y[s] as u32 + v as u32) % self.p) as u8;
            }
        }
        y
    }

    /// `λ ↦ λ(g ·)` for `g = 1 + e_ij`: row `i` of `Λ` added to row `j`, then
    /// cut back to the mask.
    pub(crate) fn functional_left(&self, lam: &[u8], i: u32, j: u32) -> Key {
        let mut y = lam.to_vec();
        for b in j + 1..=self.n {
            if !self.contains_position(j, b) {
                continue;
            }
            let v = lam[slot(self.n, i, b)];
            if v != 0 {
                let s = slot(self.n, j, b);
                y[s] = ((y[s] as u32 + v as u32) % self.p) as u8;
            }
        }
        y
    }

    /// `λ ↦ λ(· g)` for `g = 1 + e_ij`: column `j` of `Λ` added to column `i`,
    /// then cut back to the mask.
    pub(crate) fn functional_right(&self, lam: &[u8], i: u32, j: u32) -> Key {
        let mut y = lam.to_vec();
        for a in 1..i {
            if !self.contains_position(a, i) {
                continue;
            }
            let v = lam[slot(self.n, a, j)];
            if v != 0 {
                let s = slot(self.n, a, i);
                y[s] = ((y[s] as u32 + v as u32) % self.p) as u8;
            }
        }
        y
    }

    /// `λ(X) = Σ Λ_ij X_ij`.
    pub(crate) fn pair(&self, lam: &[u8], x: &[u8]) -> u32 {
        let s: u32 = lam.iter().zip(x).map(|(&a, &b)| a as u32 * b as u32).sum();
        s % self.p
    }

    /// Matrix product of two unipotent elements given as `g - 1`, `h - 1`:
    /// returns `gh - 1`.
    pub fn mul(&self, x: &[u8], y: &[u8]) -> Key {
        let n = self.n;
        let mut out = vec![0u8; key_len(n)];
        for i in 1..=n {
            for j in i + 1..=n {
                let mut v = x[slot(n, i, j)] as u32 + y[slot(n, i, j)] as u32;
                for k in i + 1..j {
                    v += x[slot(n, i, k)] as u32 * y[slot(n, k, j)] as u32;
                }
                out[slot(n, i, j)] = (v % self.p) as u8;
            }
        }
        out
    }

    /// `X ↦ A X B` on strictly upper parts, with `A = a + 1`, `B = b + 1`.
    pub fn sandwich(&self, a: &[u8], x: &[u8], b: &[u8]) -> Key {
        // (1+a) X (1+b) = X + aX + Xb + aXb; all strictly upper
        let n = self.n;
        let full = |m: &[u8], i: u32, j: u32| if i < j { m[slot(n, i, j)] as u32 } else { 0 };
        let mut ax = vec![0u32; (n * n) as usize];
        for i in 1..=n {
            for j in 1..=n {
                let mut v = full(x, i, j);
                for k in 1..=n {
                    v += full(a, i, k) * full(x, k, j);
                }
                ax[((i - 1) * n + (j - 1)) as usize] = v % self.p;
            }
        }
        let mut out = vec![0u8; key_len(n)];
        for i in 1..=n {
            for j in i + 1..=n {
                let mut v = ax[((i - 1) * n + (j - 1)) as usize];
                for k in 1..=n {
                    v += ax[((i - 1) * n + (k - 1)) as usize] * full(b, k, j);
                }
                out[slot(n, i, j)] = (v % self.p) as u8;
            }
        }
        out
    }

    /// `u_μ - 1`: the arc labels placed at the arc positions.
    pub fn rep_key(&self, mu: &LabeledSetPartition) -> Result<Key> {
        let mut key = vec![0u8; key_len(self.n)];
        for a in mu.arcs() {
            if a.right > self.n || !self.contains_position(a.left, a.right) {
                return domain(format!("arc {a} is not a position of {self}"));
            }
            if a.label.modulus() != self.p {
                return domain(format!("arc {a} is not labeled mod {}", self.p));
            }
            key[slot(self.n, a.left, a.right)] = a.label.residue() as u8;
        }
        Ok(key)
    }
}

impl fmt::Display for PatternGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U(n={}, p={}, mask=[", self.n, self.p)?;
        for (x, (i, j)) in self.mask.iter().enumerate() {
            if x > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}{j}")?;
        }
        write!(f, "])")
    }
}

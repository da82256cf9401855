//! Partial permutation matrices `SG_{m×n}` and their `ones`/`sow` statistics.

use std::fmt;

use crate::qcoeff::LaurentPoly;

/// An `m × n` 0-1 matrix with at most one 1 per row and per column, stored as
/// the column of the 1 in each row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SgMatrix {
    cols: usize,
    rows: Vec<Option<usize>>,
}

impl SgMatrix {
    /// From rows of 0/1 entries; `None` if some row or column has two 1s or
    /// the rows are ragged.
    pub fn from_rows(rows: &[Vec<u8>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut used = vec![false; cols];
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return None;
            }
            let ones: Vec<usize> = (0..cols).filter(|&c| r[c] == 1).collect();
            if r.iter().any(|&v| v > 1) || ones.len() > 1 {
                return None;
            }
            if let Some(&c) = ones.first() {
                if used[c] {
                    return None;
                }
                used[c] = true;
            }
            out.push(ones.first().copied());
        }
        Some(Self { cols, rows: out })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        u8::from(self.rows[i - 1] == Some(j - 1))
    }

    pub fn ones(&self) -> u32 {
        self.rows.iter().filter(|r| r.is_some()).count() as u32
    }

    /// Zero entries with a 1 above them in their column or to their right in
    /// their row.
    pub fn sow(&self) -> u32 {
        let mut count = 0;
        for (j, row) in self.rows.iter().enumerate() {
            for k in 0..self.cols {
                if *row == Some(k) {
                    continue;
                }
                let above = self.rows[..j].iter().any(|r| *r == Some(k));
                let right = matches!(row, Some(l) if *l > k);
                if above || right {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w_{1n}`.
    pub fn corner(&self) -> u8 {
        if self.rows.is_empty() || self.cols == 0 {
            0
        } else {
            self.entry(1, self.cols)
        }
    }
}

impl fmt::Display for SgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, r) in self.rows.iter().enumerate() {
            if x > 0 {
                write!(f, "/")?;
            }
            for k in 0..self.cols {
                write!(f, "{}", u8::from(*r == Some(k)))?;
            }
        }
        Ok(())
    }
}

/// Every matrix of `SG_{m×n}`, rows as an odometer over "empty, then column 1..n".
pub fn sg_matrices(m: usize, n: usize) -> Vec<SgMatrix> {
    fn go(row: usize, m: usize, n: usize, used: &mut Vec<bool>, cur: &mut Vec<Option<usize>>, out: &mut Vec<SgMatrix>) {
        if row == m {
            out.push(SgMatrix { cols: n, rows: cur.clone() });
            return;
        }
        cur.push(None);
        go(row + 1, m, n, used, cur, out);
        cur.pop();
        for c in 0..n {
            if !used[c] {
                used[c] = true;
                cur.push(Some(c));
                go(row + 1, m, n, used, cur, out);
                cur.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, m, n, &mut vec![false; n], &mut Vec::with_capacity(m), &mut out);
    out
}

/// `Σ_w (q-1)^{ones(w)} q^{sow(w)}`; equals `q^{mn}`.
pub fn sg_sum(m: usize, n: usize) -> LaurentPoly {
    let qm1 = LaurentPoly::q_minus_one();
    let mut acc = LaurentPoly::zero();
    for w in sg_matrices(m, n) {
        acc += &(&qm1.pow(w.ones()) * &LaurentPoly::q_pow(w.sow() as i32));
    }
    acc
}

/// `Σ_w (-1)^{w_{1n}} (q-1)^{ones(w)} q^{sow(w)}` exactly as printed.
pub fn sg_signed_sum_literal(m: usize, n: usize) -> LaurentPoly {
    let qm1 = LaurentPoly::q_minus_one();
    let mut acc = LaurentPoly::zero();
    for w in sg_matrices(m, n) {
        let t = &qm1.pow(w.ones()) * &LaurentPoly::q_pow(w.sow() as i32);
        if w.corner() == 1 {
            acc = &acc - &t;
        } else {
            acc += &t;
        }
    }
    acc
}

/// The central-class evaluation: summing `ϑ` over the corner label gives `-1`
/// instead of `q-1`, so the corner arc drops one factor of `q-1`.
pub fn sg_signed_sum_corrected(m: usize, n: usize) -> LaurentPoly {
    let qm1 = LaurentPoly::q_minus_one();
    let mut acc = LaurentPoly::zero();
    for w in sg_matrices(m, n) {
        let c = w.corner() as u32;
        let t = &qm1.pow(w.ones() - c) * &LaurentPoly::q_pow(w.sow() as i32);
        if c == 1 {
            acc = &acc - &t;
        } else {
            acc += &t;
        }
    }
    acc
}

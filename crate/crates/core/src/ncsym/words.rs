use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::setpart::{PartitionIndex, TwoBlock};

use super::elem::{Basis, NCSymElem};

/// An NCSym element written out as a polynomial in non-commuting letters `x_1..x_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordExpansion {
    alphabet: u32,
    length: u32,
    coeffs: BTreeMap<Vec<u32>, BigRational>,
}

/// The set partition of positions `1..=len` recording which letters are equal.
pub fn equal_positions(word: &[u32]) -> PartitionIndex {
    let mut by_letter: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (i, &a) in word.iter().enumerate() {
        by_letter.entry(a).or_default().push(i as u32 + 1);
    }
    PartitionIndex::new(word.len() as u32, by_letter.into_values()).expect("positions cover the word")
}

fn falling(n: u32, k: usize) -> usize {
    (0..k).map(|i| n as usize - i).product()
}

impl WordExpansion {
    pub fn zero(alphabet: u32, length: u32) -> Self {
        Self {
            alphabet,
            length,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, word: &[u32]) -> BigRational {
        self.coeffs.get(word).cloned().unwrap_or_else(BigRational::zero)
    }

    fn from_accumulator(alphabet: u32, length: u32, acc: HashMap<Vec<u32>, BigRational>) -> Self {
        Self {
            alphabet,
            length,
            coeffs: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Coefficients per equal-positions class, or `None` when they are not constant on a class.
    fn class_coefficients(&self) -> Option<BTreeMap<PartitionIndex, BigRational>> {
        let mut seen: BTreeMap<PartitionIndex, (BigRational, usize)> = BTreeMap::new();
        for (w, c) in &self.coeffs {
            let e = seen.entry(equal_positions(w)).or_insert_with(|| (c.clone(), 0));
            if &e.0 != c {
                return None;
            }
            e.1 += 1;
        }
        // a class only partly present has zeros elsewhere
        seen.into_iter()
            .map(|(k, (c, hits))| (hits == falling(self.alphabet, k.parts().len())).then_some((k, c)))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.class_coefficients().is_some()
    }
}

/// `m_K` over the letters `1..=N`: coefficient 1 on every word whose equal-positions partition is `K`.
pub fn m_expand(k: &PartitionIndex, alphabet: u32) -> WordExpansion {
    let n = k.n();
    let parts = k.parts();
    let mut out = WordExpansion::zero(alphabet, n);
    if (alphabet as usize) < parts.len() {
        log::warn!("alphabet of {alphabet} letters cannot separate the {} parts of {k}", parts.len());
        return out;
    }
    let mut letters = vec![0u32; parts.len()];
    let mut used = vec![false; alphabet as usize + 1];
    fn place(
        depth: usize,
        parts: &[Vec<u32>],
        letters: &mut Vec<u32>,
        used: &mut Vec<bool>,
        n: u32,
        out: &mut BTreeMap<Vec<u32>, BigRational>,
    ) {
        if depth == parts.len() {
            let mut w = vec![0u32; n as usize];
            for (part, &a) in parts.iter().zip(letters.iter()) {
                for &v in part {
                    w[v as usize - 1] = a;
                }
            }
            out.insert(w, BigRational::one());
            return;
        }
        for a in 1..used.len() {
            if !used[a] {
                used[a] = true;
                letters[depth] = a as u32;
                place(depth + 1, parts, letters, used, n, out);
                used[a] = false;
            }
        }
    }
    place(0, parts, &mut letters, &mut used, n, &mut out.coeffs);
    assert!(out.is_symmetric(), "m_expand produced a non-symmetric expansion for {k}");
    out
}

/// Writes `x` out over `N` letters.
pub fn expand(x: &NCSymElem, alphabet: u32) -> WordExpansion {
    let m = x.to_basis(Basis::M);
    let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::new();
    for (k, c) in m.terms() {
        for (w, _) in m_expand(k, alphabet).coeffs {
            *acc.entry(w).or_insert_with(BigRational::zero) += c;
        }
    }
    WordExpansion::from_accumulator(alphabet, m.degree(), acc)
}

/// Reads a symmetric word expansion back into the `m` basis.
pub fn recognize(w: &WordExpansion) -> Result<NCSymElem> {
    if w.alphabet < w.length {
        return domain(format!(
            "{} letters cannot separate every partition of {} positions",
            w.alphabet, w.length
        ));
    }
    let classes = w
        .class_coefficients()
        .ok_or_else(|| Error::Internal("word expansion is not symmetric".into()))?;
    NCSymElem::from_terms(Basis::M, w.length, classes)
}

/// Places the positions of `x` on `K₁` and those of `y` on `K₂`.
pub fn shuffle(x: &WordExpansion, y: &WordExpansion, k: &TwoBlock) -> Result<WordExpansion> {
    let (b1, b2) = (k.first(), k.second());
    if x.alphabet != y.alphabet {
        return domain("shuffling expansions over different alphabets");
    }
    if x.length as usize != b1.len() || y.length as usize != b2.len() {
        return domain(format!("degrees {}+{} do not match {k}", x.length, y.length));
    }
    let xs: Vec<_> = x.coeffs.iter().collect();
    let acc = xs
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Vec<u32>, BigRational>, (u, a)| {
            let mut w = vec![0u32; k.n() as usize];
            for (i, &pos) in b1.iter().enumerate() {
                w[pos as usize - 1] = u[i];
            }
            for (v, b) in &y.coeffs {
                for (j, &pos) in b2.iter().enumerate() {
                    w[pos as usize - 1] = v[j];
                }
                *acc.entry(w.clone()).or_insert_with(BigRational::zero) += *a * b;
            }
            acc
        })
        .reduce(HashMap::new, |mut l, r| {
            for (w, c) in r {
                *l.entry(w).or_insert_with(BigRational::zero) += c;
            }
            l
        });
    Ok(WordExpansion::from_accumulator(x.alphabet, k.n(), acc))
}

/// `x ∗_K y` computed on word expansions over `m+n` letters; the result is in the basis of `x`.
pub fn star_k_product(x: &NCSymElem, y: &NCSymElem, k: &TwoBlock) -> Result<NCSymElem> {
    if x.degree() as usize != k.first().len() || y.degree() as usize != k.second().len() {
        return domain(format!("degrees {}+{} do not match {k}", x.degree(), y.degree()));
    }
    let alphabet = k.n().max(1);
    let w = shuffle(&expand(x, alphabet), &expand(y, alphabet), k)?;
    Ok(recognize(&w)?.to_basis(x.basis()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncsym::elem::{star_k_p, union_index};
    use crate::setpart::set_partitions;

    fn idx(s: &str) -> PartitionIndex {
        PartitionIndex::parse(s).unwrap()
    }

    fn all(n: usize) -> Vec<PartitionIndex> {
        set_partitions(n).map(|b| PartitionIndex::new(n as u32, b).unwrap()).collect()
    }

    fn words(w: &WordExpansion) -> Vec<Vec<u32>> {
        w.coeffs().keys().cloned().collect()
    }

    #[test]
    fn monomial_expansions() {
        assert_eq!(words(&m_expand(&idx("{1|2}"), 2)), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(words(&m_expand(&idx("{1,2}"), 2)), vec![vec![1, 1], vec![2, 2]]);
        let empty = m_expand(&PartitionIndex::whole(0), 3);
        assert_eq!(words(&empty), vec![Vec::<u32>::new()]);
        assert!(m_expand(&idx("{1|2|3}"), 2).coeffs().is_empty());
    }

    #[test]
    fn expansion_sizes_are_falling_factorials() {
        for n in 0..=5usize {
            for k in all(n) {
                let got = m_expand(&k, 5).coeffs().len();
                assert_eq!(got, falling(5, k.parts().len()), "{k}");
            }
        }
    }

    #[test]
    fn recognition_inverts_expansion() {
        for n in 0..=4usize {
            for k in all(n) {
                let x = NCSymElem::p(k.clone());
                let back = recognize(&expand(&x, n as u32)).unwrap();
                assert_eq!(back.to_basis(Basis::P), x, "{k}");
            }
        }
    }

    #[test]
    fn asymmetric_words_are_rejected() {
        let mut w = WordExpansion::zero(2, 2);
        w.coeffs.insert(vec![1, 2], BigRational::one());
        assert!(!w.is_symmetric());
        assert!(matches!(recognize(&w), Err(Error::Internal(_))));
        let short = m_expand(&idx("{1|2}"), 1);
        assert!(recognize(&short).is_err());
    }

    #[test]
    fn single_letter_square() {
        // x1x1 + x2x2 + x1x2 + x2x1 over two letters
        let one = NCSymElem::m(idx("{1}"));
        let k = TwoBlock::concat(1, 1);
        let w = shuffle(&expand(&one, 2), &expand(&one, 2), &k).unwrap();
        assert_eq!(w.coeffs().len(), 4);
        assert!(w.coeffs().values().all(|c| c.is_one()));
        let prod = star_k_product(&one, &one, &k).unwrap();
        assert!(prod.coeff(&idx("{1,2}")).is_one());
        assert!(prod.coeff(&idx("{1|2}")).is_one());
        assert_eq!(prod.len(), 2);
    }

    #[test]
    fn p_basis_is_multiplicative() {
        for total in 0..=5u32 {
            for m in 0..=total {
                let n = total - m;
                for k in TwoBlock::all(m, n) {
                    for l in all(m as usize) {
                        for u in all(n as usize) {
                            let got = star_k_product(&NCSymElem::p(l.clone()), &NCSymElem::p(u.clone()), &k).unwrap();
                            let want = NCSymElem::p(union_index(&l, &u, &k).unwrap());
                            assert_eq!(got, want, "{l} * {u} along {k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fast_route_matches_words_on_m_basis() {
        for (m, n) in [(1u32, 2u32), (2, 2), (2, 1)] {
            for k in TwoBlock::all(m, n) {
                for l in all(m as usize) {
                    for u in all(n as usize) {
                        let (x, y) = (NCSymElem::m(l.clone()), NCSymElem::m(u.clone()));
                        let slow = star_k_product(&x, &y, &k).unwrap().to_basis(Basis::P);
                        assert_eq!(slow, star_k_p(&x, &y, &k).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn concatenation_is_associative() {
        let shapes: Vec<Vec<PartitionIndex>> = (1..=2).map(all).collect();
        for a in shapes.iter().flatten() {
            for b in shapes.iter().flatten() {
                for c in shapes.iter().flatten() {
                    let (x, y, z) = (NCSymElem::m(a.clone()), NCSymElem::m(b.clone()), NCSymElem::m(c.clone()));
                    let (da, db, dc) = (a.n(), b.n(), c.n());
                    let xy = star_k_product(&x, &y, &TwoBlock::concat(da, db)).unwrap();
                    let left = star_k_product(&xy, &z, &TwoBlock::concat(da + db, dc)).unwrap();
                    let yz = star_k_product(&y, &z, &TwoBlock::concat(db, dc)).unwrap();
                    let right = star_k_product(&x, &yz, &TwoBlock::concat(da, db + dc)).unwrap();
                    assert_eq!(left, right, "{a} {b} {c}");
                }
            }
        }
    }
}

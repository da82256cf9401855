//! Exact arithmetic in `Q(ζ_p)` for a prime `p`.
//!
//! Elements are stored on the power basis `ζ^0, …, ζ^{p-2}`; any `ζ^{p-1}`
//! arising from a product is rewritten as `-(1 + ζ + … + ζ^{p-2})`. The
//! representation is therefore canonical and equality is coordinate equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::FieldElem;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    p: u32,
    coords: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 2, "cyclotomic field needs p >= 2");
        Self {
            p,
            coords: vec![BigRational::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, r: BigRational) -> Self {
        let mut out = Self::zero(p);
        out.coords[0] = r;
        out
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(n.into()))
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut wide = vec![BigRational::zero(); p as usize];
        wide[k.rem_euclid(p as i64) as usize] = BigRational::one();
        Self::reduce(p, wide)
    }

    /// Builds an element from integer multiplicities of `ζ^0, …, ζ^{p-1}`.
    pub fn from_power_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let wide = counts
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Self::reduce(p, wide)
    }

    fn reduce(p: u32, mut wide: Vec<BigRational>) -> Self {
        debug_assert_eq!(wide.len(), p as usize);
        let top = wide.pop().expect("p >= 2");
        if !top.is_zero() {
            for c in wide.iter_mut() {
                *c -= &top;
            }
        }
        Self { p, coords: wide }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            p: self.p,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// The automorphism `ζ ↦ ζ^k`, `k` coprime to `p`.
    pub fn galois(&self, k: u32) -> Self {
        assert!(k % self.p != 0, "galois exponent must be a unit mod p");
        let p = self.p as usize;
        let mut wide = vec![BigRational::zero(); p];
        for (i, c) in self.coords.iter().enumerate() {
            wide[(i * k as usize) % p] += c;
        }
        Self::reduce(self.p, wide)
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        if self.p == 2 {
            return self.clone();
        }
        self.galois(self.p - 1)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for k in 2..self.p {
            acc = &acc * &self.galois(k);
        }
        acc.as_rational()
            .cloned()
            .expect("norm of a cyclotomic element is rational")
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut others = Self::one(self.p);
        for k in 2..self.p {
            others = &others * &self.galois(k);
        }
        let n = (self * &others)
            .as_rational()
            .cloned()
            .expect("norm of a cyclotomic element is rational");
        Some(others.scale(&n.recip()))
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Q(ζ_{}) and Q(ζ_{})", self.p, other.p);
    }
}

/// The additive character `a ↦ ζ^a` of `F_p`.
pub fn theta(a: FieldElem) -> Cyclotomic {
    Cyclotomic::zeta_pow(a.modulus(), a.residue() as i64)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{abs}*z")?,
                (k, true) => write!(f, "z^{k}")?,
                (k, false) => write!(f, "{abs}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic<{}>({self})", self.p)
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check_same(rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        let p = self.p as usize;
        let mut wide = vec![BigRational::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    wide[(i + j) % p] += a * b;
                }
            }
        }
        Cyclotomic::reduce(self.p, wide)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::field::field_units;

    #[test]
    fn theta_examples() {
        for p in [2, 3, 5, 7] {
            assert_eq!(theta(FieldElem::zero(p)), Cyclotomic::one(p));
            let total = (0..p as i64)
                .map(|a| theta(FieldElem::new(a, p)))
                .fold(Cyclotomic::zero(p), |acc, x| &acc + &x);
            assert!(total.is_zero(), "full character sum vanishes for p={p}");
        }
        let prod = &theta(FieldElem::new(1, 3)) * &theta(FieldElem::new(2, 3));
        assert_eq!(prod, Cyclotomic::one(3));
    }

    #[test]
    fn zeta_products_match_exponent_addition() {
        for p in [2u32, 3, 5, 7] {
            for i in 0..p as i64 {
                for j in 0..p as i64 {
                    let lhs = &Cyclotomic::zeta_pow(p, i) * &Cyclotomic::zeta_pow(p, j);
                    assert_eq!(lhs, Cyclotomic::zeta_pow(p, i + j));
                }
            }
        }
    }

    #[test]
    fn conjugation_is_an_involution_and_inverts_theta() {
        for p in [2, 3, 5, 7] {
            for a in 0..p as i64 {
                let t = theta(FieldElem::new(a, p));
                assert_eq!(t.conj(), theta(FieldElem::new(-a, p)));
                assert_eq!(t.conj().conj(), t);
            }
        }
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7] {
            // 1 + 2ζ + 3ζ^2 ... is a unit in the field unless it is zero.
            let counts: Vec<i64> = (0..p as i64).map(|k| k * k + 1).collect();
            let x = Cyclotomic::from_power_counts(p, &counts);
            let y = x.inv().unwrap();
            assert_eq!(&x * &y, Cyclotomic::one(p));
            for u in field_units(p).unwrap() {
                let t = theta(u);
                assert_eq!(t.inv().unwrap(), t.conj());
            }
        }
        assert!(Cyclotomic::zero(5).inv().is_none());
    }

    #[test]
    fn norm_of_one_minus_zeta_is_p() {
        for p in [3u32, 5, 7] {
            let x = &Cyclotomic::one(p) - &Cyclotomic::zeta_pow(p, 1);
            assert_eq!(x.norm(), BigRational::from_integer(p.into()));
        }
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElem {
    residue: u32,
    modulus: u32,
}

impl FieldElem {
    /// Reduces `value` modulo `p`. The caller is responsible for `p` being prime;
    /// see [`FieldElem::checked`] for the validating constructor.
    pub fn new(value: i64, p: u32) -> Self {
        debug_assert!(p >= 2);
        Self {
            residue: value.rem_euclid(p as i64) as u32,
            modulus: p,
        }
    }

    pub fn checked(value: i64, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(Self::new(value, p))
    }

    pub fn zero(p: u32) -> Self {
        Self::new(0, p)
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.modulus as u64;
        let (mut base, mut exp, mut acc) = (self.residue as u64, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(Self::new(acc as i64, self.modulus))
    }

    fn check_same(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixing elements of F_{} and F_{}",
            self.modulus, other.modulus
        );
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(mod {})", self.residue, self.modulus)
    }
}

impl Add for FieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check_same(rhs);
        Self::new(self.residue as i64 + rhs.residue as i64, self.modulus)
    }
}

impl Sub for FieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check_same(rhs);
        Self::new(self.residue as i64 - rhs.residue as i64, self.modulus)
    }
}

impl Mul for FieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check_same(rhs);
        Self::new(self.residue as i64 * rhs.residue as i64, self.modulus)
    }
}

impl Neg for FieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-(self.residue as i64), self.modulus)
    }
}

/// The nonzero residues of `F_p` in increasing order.
pub fn field_units(p: u32) -> Result<Vec<FieldElem>> {
    if !is_prime(p) {
        return domain(format!("field_units: {p} is not prime"));
    }
    Ok((1..p).map(|r| FieldElem::new(r as i64, p)).collect())
}

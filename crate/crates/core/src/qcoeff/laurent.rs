//! Integer Laurent polynomials in the formal parameter `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{domain, parse_err, Error, Result};

/// Sparse element of `Z[q, q^-1]`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The formal parameter `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q - 1`, which shows up in every label sum.
    pub fn q_minus_one() -> Self {
        Self::from_terms([(1, 1), (0, -1)])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Returns `Some(k)` when the polynomial is exactly `q^k`.
    pub fn as_q_power(&self) -> Option<i32> {
        match self.coeffs.iter().next() {
            Some((e, c)) if self.coeffs.len() == 1 && c.is_one() => Some(*e),
            _ => None,
        }
    }

    /// Multiplies by `q^k`; `k` may be negative.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() && self.min_exponent().is_some_and(|e| e < 0) {
            return domain("evaluating a Laurent polynomial with negative exponents at 0");
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let power = if *e >= 0 {
                Pow::pow(x, e.unsigned_abs())
            } else {
                Pow::pow(x.recip(), e.unsigned_abs())
            };
            acc += power * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Evaluates at the integer `q`, which must be nonzero.
    pub fn eval_at(&self, q: u32) -> BigRational {
        self.eval(&BigRational::from_integer(q.into()))
            .expect("q is a positive integer")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{abs}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the sparse text form, e.g. `3*q^2 - q^-1 + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return parse_err("empty Laurent polynomial");
        }
        // Split into signed terms; a '-' directly after '^' or '(' belongs to an exponent.
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('(')) {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        terms.push(current);

        let mut out = Self::zero();
        for term in terms {
            let (exp, c) = parse_term(&term)?;
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(i32, BigInt)> {
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return parse_err(format!("dangling sign in term '{term}'"));
    }
    let (coeff_txt, q_part) = match body.find('q') {
        Some(pos) => (&body[..pos], Some(&body[pos + 1..])),
        None => (body, None),
    };
    let coeff_txt = coeff_txt.strip_suffix('*').unwrap_or(coeff_txt);
    let coeff: BigInt = if coeff_txt.is_empty() {
        if q_part.is_none() {
            return parse_err(format!("empty term '{term}'"));
        }
        BigInt::one()
    } else {
        coeff_txt
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient '{coeff_txt}'")))?
    };
    let exp = match q_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let rest = rest
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("expected '^' in term '{term}'")))?;
            let rest = rest.trim_start_matches('(').trim_end_matches(')');
            rest.parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad exponent '{rest}'")))?
        }
    };
    Ok((exp, coeff * sign))
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            match c.to_i64() {
                Some(small) => map.serialize_entry(&e.to_string(), &small)?,
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct LaurentVisitor;

        impl<'de> Visitor<'de> for LaurentVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent to integer coefficient")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = LaurentPoly::zero();
                while let Some((key, value)) = access.next_entry::<String, serde_json::Value>()? {
                    let exp: i32 = key
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent key '{key}'")))?;
                    let coeff: BigInt = match &value {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| de::Error::custom("coefficient must be an integer"))?,
                        serde_json::Value::String(s) => s
                            .parse()
                            .map_err(|_| de::Error::custom(format!("bad coefficient '{s}'")))?,
                        _ => return Err(de::Error::custom("coefficient must be an integer")),
                    };
                    out.add_term(exp, coeff);
                }
                Ok(out)
            }
        }

        deserializer.deserialize_map(LaurentVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(LaurentPoly::one().eval(&rat(7, 1)).unwrap(), rat(1, 1));
        let f = LaurentPoly::q_pow(-1) + LaurentPoly::one();
        assert_eq!(f.eval(&rat(2, 1)).unwrap(), rat(3, 2));
        // q^5 / q^4 * (3(q-1) + q) = q(4q - 3)
        let inner = &LaurentPoly::q_minus_one().scale(&3.into()) + &LaurentPoly::q();
        let f = (&LaurentPoly::q_pow(5) * &inner).shift(-4);
        assert_eq!(f, LaurentPoly::from_terms([(2, 4), (1, -3)]));
        assert_eq!(f.eval(&rat(2, 1)).unwrap(), rat(10, 1));
    }

    #[test]
    fn eval_at_zero_with_negative_exponent_is_domain_error() {
        let f = LaurentPoly::q_pow(-2);
        assert!(matches!(f.eval(&rat(0, 1)), Err(Error::Domain(_))));
        assert_eq!(LaurentPoly::q().eval(&rat(0, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn text_round_trip() {
        let f: LaurentPoly = "3*q^2 - q^-1 + 1".parse().unwrap();
        assert_eq!(f, LaurentPoly::from_terms([(2, 3), (-1, -1), (0, 1)]));
        assert_eq!(f.to_string(), "3*q^2 + 1 - q^-1");
        assert_eq!(f.to_string().parse::<LaurentPoly>().unwrap(), f);
        assert_eq!("-q".parse::<LaurentPoly>().unwrap(), -LaurentPoly::q());
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert_eq!("2q^(-3)".parse::<LaurentPoly>().unwrap(), LaurentPoly::monomial(2, -3));
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let f: LaurentPoly = "3*q^2 - q^-1 + 1".parse().unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"-1":-1,"0":1,"2":3}"#);
        let back: LaurentPoly = serde_json::from_str(r#"{"2":3, "-1":-1, "0":1}"#).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let f = LaurentPoly::q() - LaurentPoly::q();
        assert!(f.is_zero());
        assert_eq!(f.terms().count(), 0);
    }
}

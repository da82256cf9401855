//! Change of basis between supercharacters and superclass indicators.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::qcoeff::Cyclotomic;
use crate::setpart::{LabeledSetPartition, PartitionIndex, SuperclassLabel};

use super::values::{superclass_labels, value_unchecked};

/// `Σ c_λ χ^λ` with coefficients in `Q(ζ_p)`; what comes back from inverting
/// the character table.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloCombo {
    ambient: PartitionIndex,
    p: u32,
    terms: BTreeMap<LabeledSetPartition, Cyclotomic>,
}

impl CycloCombo {
    pub fn ambient(&self) -> &PartitionIndex {
        &self.ambient
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LabeledSetPartition, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &LabeledSetPartition) -> Cyclotomic {
        self.terms.get(lambda).cloned().unwrap_or_else(|| Cyclotomic::zero(self.p))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `u_μ`.
    pub fn value_at(&self, mu: &SuperclassLabel) -> Result<Cyclotomic> {
        mu.check_fits(&self.ambient)?;
        let mut acc = Cyclotomic::zero(self.p);
        for (lam, c) in &self.terms {
            acc += &(c * &value_unchecked(lam, mu, &self.ambient, self.p));
        }
        Ok(acc)
    }
}

impl fmt::Display for CycloCombo {
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

impl fmt::Debug for CycloCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The superclass indicator `κ_μ` of `U_K` as a value map.
pub fn kappa(mu: &SuperclassLabel, k: &PartitionIndex, p: u32) -> Result<BTreeMap<SuperclassLabel, Cyclotomic>> {
    mu.check_fits(k)?;
    Ok(superclass_labels(k, p)?
        .into_iter()
        .map(|nu| {
            let v = if &nu == mu { Cyclotomic::one(p) } else { Cyclotomic::zero(p) };
            (nu, v)
        })
        .collect())
}

/// Solves `A x = b` in place by exact elimination; `None` when singular.
fn solve(mut a: Vec<Vec<Cyclotomic>>, mut b: Vec<Cyclotomic>) -> Option<Vec<Cyclotomic>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            let t = &f * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    Some(b)
}

/// Expands a superclass function given by its values on every `u_μ` of `U_K`
/// in the supercharacter basis.
pub fn kappa_to_chi(values: &BTreeMap<SuperclassLabel, Cyclotomic>, k: &PartitionIndex, p: u32) -> Result<CycloCombo> {
    let labels = superclass_labels(k, p)?;
    if values.len() != labels.len() || labels.iter().any(|mu| !values.contains_key(mu)) {
        return domain(format!("values must cover exactly the {} superclasses of U_{k}", labels.len()));
    }
    // rows are superclasses, columns supercharacters
    let a: Vec<Vec<Cyclotomic>> = labels
        .iter()
        .map(|mu| labels.iter().map(|lam| value_unchecked(lam, mu, k, p)).collect())
        .collect();
    let b: Vec<Cyclotomic> = labels.iter().map(|mu| values[mu].clone()).collect();
    let x = solve(a, b).ok_or_else(|| Error::Internal("character table is singular".into()))?;
    let terms = labels
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(CycloCombo {
        ambient: k.clone(),
        p,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    use super::*;
    use crate::ring::combo::CharCombo;

    #[test]
    fn trivial_round_trip() {
        let k = PartitionIndex::whole(3);
        let one = CharCombo::trivial(k.clone(), 3).unwrap();
        let back = kappa_to_chi(&one.values().unwrap(), &k, 3).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back.coeff(&LabeledSetPartition::empty_n(3)), Cyclotomic::one(3));
    }

    #[test]
    fn corner_indicator_at_n2() {
        let k = PartitionIndex::whole(2);
        let mu = LabeledSetPartition::parse("n=2; 1-2:1", 2).unwrap();
        let x = kappa_to_chi(&kappa(&mu, &k, 2).unwrap(), &k, 2).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(x.coeff(&LabeledSetPartition::empty_n(2)), Cyclotomic::from_rational(2, half.clone()));
        assert_eq!(x.coeff(&mu), Cyclotomic::from_rational(2, -half));
    }

    #[test]
    fn every_indicator_round_trips() {
        for (n, p) in [(3u32, 2u32), (3, 3), (4, 2)] {
            let k = PartitionIndex::whole(n);
            for mu in superclass_labels(&k, p).unwrap() {
                let vals = kappa(&mu, &k, p).unwrap();
                let x = kappa_to_chi(&vals, &k, p).unwrap();
                for (nu, v) in &vals {
                    assert_eq!(&x.value_at(nu).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn parabolic_round_trip() {
        let k = PartitionIndex::parse("{1,3|2,4}").unwrap();
        for lam in superclass_labels(&k, 3).unwrap() {
            let x = CharCombo::chi(lam.clone(), k.clone(), 3).unwrap();
            let back = kappa_to_chi(&x.values().unwrap(), &k, 3).unwrap();
            assert_eq!(back.len(), 1);
            assert_eq!(back.coeff(&lam), Cyclotomic::one(3));
        }
    }
}

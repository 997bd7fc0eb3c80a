use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// An element of the additive monoid generated by `(2/3)^k`, `k ∈ ℤ`.
///
/// The value decides equality; the witness records one way of writing the
/// value as a sum of atoms, `Σ mult·(2/3)^k`.
#[derive(Debug, Clone)]
pub struct TwoThirds {
    value: BigRational,
    witness: BTreeMap<i64, BigUint>,
}

/// `(2/3)^k` as an exact rational.
pub fn atom_value(k: i64) -> BigRational {
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let e = k.unsigned_abs();
    if k >= 0 {
        BigRational::new(Pow::pow(&two, e), Pow::pow(&three, e))
    } else {
        BigRational::new(Pow::pow(&three, e), Pow::pow(&two, e))
    }
}

impl TwoThirds {
    pub fn zero() -> Self {
        TwoThirds {
            value: BigRational::zero(),
            witness: BTreeMap::new(),
        }
    }

    pub fn atom(k: i64) -> Self {
        TwoThirds::from_witness([(k, BigUint::one())])
    }

    pub fn from_u64(n: u64) -> Self {
        TwoThirds::from_witness([(0, BigUint::from(n))])
    }

    pub fn from_witness(items: impl IntoIterator<Item = (i64, BigUint)>) -> Self {
        let mut witness: BTreeMap<i64, BigUint> = BTreeMap::new();
        for (k, m) in items {
            if !m.is_zero() {
                *witness.entry(k).or_default() += m;
            }
        }
        let value = evaluate(&witness);
        TwoThirds { value, witness }
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn witness(&self) -> &BTreeMap<i64, BigUint> {
        &self.witness
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut witness = self.witness.clone();
        for (k, m) in &o.witness {
            *witness.entry(*k).or_default() += m;
        }
        TwoThirds {
            value: &self.value + &o.value,
            witness,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut witness: BTreeMap<i64, BigUint> = BTreeMap::new();
        for (k1, m1) in &self.witness {
            for (k2, m2) in &o.witness {
                *witness.entry(k1 + k2).or_default() += m1 * m2;
            }
        }
        TwoThirds {
            value: &self.value * &o.value,
            witness,
        }
    }

    /// `Some(k)` when the value is exactly `(2/3)^k`.
    pub fn unit_exponent(&self) -> Option<i64> {
        unit_exponent(&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.unit_exponent().is_some()
    }

    /// Removes one atom of exponent `k` from the witness.
    pub fn remove_atom(&self, k: i64) -> Option<Self> {
        let m = self.witness.get(&k)?;
        let mut witness = self.witness.clone();
        if m.is_one() {
            witness.remove(&k);
        } else {
            witness.insert(k, m - 1u32);
        }
        Some(TwoThirds {
            value: &self.value - atom_value(k),
            witness,
        })
    }

    /// Rewrites `2·(2/3)^k` as `3·(2/3)^(k+1)` once; `None` if fewer than two
    /// atoms sit at level `k`.
    pub fn rewrite_down(&self, k: i64) -> Option<Self> {
        let m = self.witness.get(&k)?;
        if *m < BigUint::from(2u32) {
            return None;
        }
        let mut witness = self.witness.clone();
        let rest = m - 2u32;
        if rest.is_zero() {
            witness.remove(&k);
        } else {
            witness.insert(k, rest);
        }
        *witness.entry(k + 1).or_default() += 3u32;
        Some(TwoThirds {
            value: self.value.clone(),
            witness,
        })
    }

    /// Inverse rewrite: `3·(2/3)^(k+1)` becomes `2·(2/3)^k`.
    pub fn rewrite_up(&self, k: i64) -> Option<Self> {
        let m = self.witness.get(&(k + 1))?;
        if *m < BigUint::from(3u32) {
            return None;
        }
        let mut witness = self.witness.clone();
        let rest = m - 3u32;
        if rest.is_zero() {
            witness.remove(&(k + 1));
        } else {
            witness.insert(k + 1, rest);
        }
        *witness.entry(k).or_default() += 2u32;
        Some(TwoThirds {
            value: self.value.clone(),
            witness,
        })
    }

    /// Rewrites the witness until it contains an atom at level `n`, pushing
    /// atoms downward from the deepest level below `n` that holds two or more.
    pub fn expose_atom(&self, n: i64, window: i64) -> Result<Self> {
        let mut cur = self.clone();
        let mut steps = 0i64;
        while !cur.witness.contains_key(&n) {
            let level = cur
                .witness
                .iter()
                .rev()
                .find(|(k, m)| **k < n && **m >= BigUint::from(2u32))
                .map(|(k, _)| *k);
            match level {
                Some(k) if k < window => cur = cur.rewrite_down(k).expect("multiplicity checked"),
                _ => {
                    return Err(Error::RewriteWindowExhausted(format!(
                        "cannot expose (2/3)^{n} in {}",
                        self
                    )))
                }
            }
            steps += 1;
            if steps > 64 * window.max(1) {
                return Err(Error::RewriteWindowExhausted(format!("level {n}")));
            }
        }
        Ok(cur)
    }

    /// Smallest `k ≤ cap` such that the value is a sum of `k` units.
    ///
    /// Exact within the exponent window: the largest of `k` summands lies in
    /// `[v/k, v)`, so only finitely many exponents are candidates.
    pub fn min_unit_summands(&self, cap: u32, window: i64) -> Result<Option<u32>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        for k in 1..=cap {
            if sum_of_units(&self.value, k, window)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

fn sum_of_units(v: &BigRational, k: u32, window: i64) -> Result<bool> {
    if k == 0 {
        return Ok(v.is_zero());
    }
    if v.is_zero() {
        return Ok(false);
    }
    if k == 1 {
        return Ok(unit_exponent(v).is_some());
    }
    let lo = v / BigRational::from_integer(BigInt::from(k));
    let in_range = |e: i64| {
        let t = atom_value(e);
        t >= lo && &t < v
    };
    if in_range(-window - 1) || in_range(window + 1) {
        return Err(Error::Inconclusive(format!(
            "unit-sum search for {v} leaves the exponent window ±{window}"
        )));
    }
    for e in -window..=window {
        if in_range(e) {
            let rest = v - atom_value(e);
            if sum_of_units(&rest, k - 1, window)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn evaluate(witness: &BTreeMap<i64, BigUint>) -> BigRational {
    witness.iter().fold(BigRational::zero(), |acc, (k, m)| {
        acc + atom_value(*k) * BigRational::from_integer(BigInt::from(m.clone()))
    })
}

pub(crate) fn unit_exponent(v: &BigRational) -> Option<i64> {
    if v.is_zero() {
        return None;
    }
    let (num, den) = (v.numer().clone(), v.denom().clone());
    let pow_of = |mut n: BigInt, base: u32| -> Option<u64> {
        let b = BigInt::from(base);
        let mut e = 0u64;
        while n > BigInt::one() {
            if (&n % &b).is_zero() {
                n /= &b;
                e += 1;
            } else {
                return None;
            }
        }
        if n.is_one() {
            Some(e)
        } else {
            None
        }
    };
    if let (Some(a), Some(b)) = (pow_of(num.clone(), 2), pow_of(den.clone(), 3)) {
        if a == b {
            return Some(a as i64);
        }
    }
    if let (Some(a), Some(b)) = (pow_of(num, 3), pow_of(den, 2)) {
        if a == b {
            return Some(-(a as i64));
        }
    }
    None
}

impl PartialEq for TwoThirds {
    fn eq(&self, o: &Self) -> bool {
        self.value == o.value
    }
}

impl Eq for TwoThirds {}

impl PartialOrd for TwoThirds {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for TwoThirds {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.value.cmp(&o.value)
    }
}

impl fmt::Display for TwoThirds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.witness.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .witness
            .iter()
            .map(|(k, m)| match (*k, m.is_one()) {
                (0, _) => m.to_string(),
                (k, true) => format!("(2/3)^{k}"),
                (k, false) => format!("{m}*(2/3)^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_merges_witnesses() {
        let s = TwoThirds::atom(1).add(&TwoThirds::atom(1));
        assert_eq!(s.value(), &rat(4, 3));
        assert_eq!(s.witness().get(&1), Some(&BigUint::from(2u32)));
    }

    #[test]
    fn mul_convolves_exponents() {
        let p = TwoThirds::atom(1).mul(&TwoThirds::atom(-1));
        assert_eq!(p.value(), &rat(1, 1));
        assert_eq!(p.witness().len(), 1);
        assert_eq!(p.witness().get(&0), Some(&BigUint::one()));
    }

    #[test]
    fn units() {
        assert_eq!(
            TwoThirds::from_witness([(2, BigUint::one())]).unit_exponent(),
            Some(2)
        );
        assert_eq!(TwoThirds::atom(-3).unit_exponent(), Some(-3));
        assert!(TwoThirds::from_u64(1).is_unit());
        assert!(!TwoThirds::from_u64(2).is_unit());
        assert!(!TwoThirds::atom(1).add(&TwoThirds::atom(1)).is_unit());
    }

    #[test]
    fn rewrites_preserve_value() {
        let s = TwoThirds::from_witness([(1, BigUint::from(2u32))]);
        let t = s.rewrite_down(1).unwrap();
        assert_eq!(t.witness().get(&2), Some(&BigUint::from(3u32)));
        assert_eq!(t, s);
        assert_eq!(t.rewrite_up(1).unwrap().witness(), s.witness());
    }

    #[test]
    fn expose_and_peel() {
        // 4/3 = 3·(2/3)^2, then = (2/3)^2 + 3·(2/3)^3
        let s = TwoThirds::from_witness([(1, BigUint::from(2u32))]);
        let e2 = s.expose_atom(2, 32).unwrap();
        let s2 = e2.remove_atom(2).unwrap();
        assert_eq!(s2.value(), &rat(8, 9));
        assert_eq!(s2.witness().get(&2), Some(&BigUint::from(2u32)));
        let e3 = s.expose_atom(3, 32).unwrap();
        let s3 = e3.remove_atom(3).unwrap();
        assert_eq!(s3.value(), &rat(28, 27));
        assert_eq!(s3.witness().get(&2), Some(&BigUint::one()));
        assert_eq!(s3.witness().get(&3), Some(&BigUint::from(2u32)));
    }

    #[test]
    fn unit_sums() {
        let four_thirds = TwoThirds::atom(1).add(&TwoThirds::atom(1));
        assert_eq!(four_thirds.min_unit_summands(3, 32).unwrap(), Some(2));
        assert_eq!(
            TwoThirds::from_u64(1).min_unit_summands(3, 32).unwrap(),
            Some(1)
        );
        // 2 = 1 + 1
        assert_eq!(
            TwoThirds::from_u64(2).min_unit_summands(3, 32).unwrap(),
            Some(2)
        );
        // 3 = (3/2) + (3/2)
        assert_eq!(
            TwoThirds::from_u64(3).min_unit_summands(3, 32).unwrap(),
            Some(2)
        );
    }
}

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::config::SearchConfig;
use crate::error::{Error, Result};

/// `a + b√2` with `a, b ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticNat {
    pub a: BigUint,
    pub b: BigUint,
}

impl QuadraticNat {
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Self {
        QuadraticNat {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        QuadraticNat::new(0u32, 0u32)
    }

    pub fn one() -> Self {
        QuadraticNat::new(1u32, 0u32)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadraticNat {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let two = BigUint::from(2u32);
        QuadraticNat {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    /// Only `1` is invertible: `(a + b√2)(c + d√2) = 1` with nonnegative parts
    /// forces `b = d = 0`.
    pub fn is_unit(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// `self - o` when `o ≤ self` componentwise.
    pub fn checked_sub(&self, o: &Self) -> Option<Self> {
        if o.a <= self.a && o.b <= self.b {
            Some(QuadraticNat {
                a: &self.a - &o.a,
                b: &self.b - &o.b,
            })
        } else {
            None
        }
    }

    /// Exact quotient `self / d` inside `ℕ₀[√2]`, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = div_signed(
            &(BigInt::from(self.a.clone()), BigInt::from(self.b.clone())),
            &(BigInt::from(d.a.clone()), BigInt::from(d.b.clone())),
        )?;
        let q = (q, r);
        if q.0.is_negative() || q.1.is_negative() {
            return None;
        }
        Some(QuadraticNat {
            a: q.0.to_biguint()?,
            b: q.1.to_biguint()?,
        })
    }

    /// A nonunit common divisor of `set`, found by exhaustive search over
    /// candidates whose components are bounded by the largest component of
    /// the first element (every divisor satisfies that bound).
    pub fn common_nonunit_divisor(
        set: &[QuadraticNat],
        cfg: &SearchConfig,
    ) -> Result<Option<QuadraticNat>> {
        let first = match set.first() {
            Some(f) => f,
            None => return Ok(None),
        };
        if set.iter().any(|s| s.is_unit()) {
            return Ok(None);
        }
        let bound = first
            .a
            .clone()
            .max(first.b.clone())
            .to_u64()
            .ok_or_else(|| Error::SearchExhausted("component too large".into()))?;
        let side = bound + 1;
        if side.saturating_mul(side) > cfg.candidate_budget {
            return Err(Error::SearchExhausted(format!(
                "divisor search over {side}x{side} candidates"
            )));
        }
        for total in 1..=2 * bound {
            for c in 0..=total.min(bound) {
                let e = total - c;
                if e > bound {
                    continue;
                }
                let d = QuadraticNat::new(c, e);
                if d.is_unit() {
                    continue;
                }
                if set.iter().all(|s| s.div_exact(&d).is_some()) {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }

    /// Every `g` with `g ≤ self` componentwise.
    pub fn below(&self) -> Option<Vec<QuadraticNat>> {
        let a = self.a.to_u64()?;
        let b = self.b.to_u64()?;
        let mut out = Vec::with_capacity(((a + 1) * (b + 1)) as usize);
        for i in 0..=a {
            for j in 0..=b {
                out.push(QuadraticNat::new(i, j));
            }
        }
        Some(out)
    }

    /// Whether `self` is irreducible (a nonunit with only trivial factorizations).
    pub fn is_atom(&self, cfg: &SearchConfig) -> Result<bool> {
        if self.is_zero() || self.is_unit() {
            return Ok(false);
        }
        // a proper divisor d (nonunit, non-associate) would have a nonunit cofactor
        let bound = self
            .a
            .clone()
            .max(self.b.clone())
            .to_u64()
            .unwrap_or(u64::MAX);
        let side = bound.saturating_add(1);
        if side.saturating_mul(side) > cfg.candidate_budget {
            return Err(Error::SearchExhausted("atom test".into()));
        }
        for c in 0..=bound {
            for e in 0..=bound {
                let d = QuadraticNat::new(c, e);
                if d.is_zero() || d.is_unit() {
                    continue;
                }
                if let Some(q) = self.div_exact(&d) {
                    if !q.is_unit() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Exact division in `ℤ[√2]`; `None` unless the quotient is integral.
pub(crate) fn div_signed(s: &(BigInt, BigInt), d: &(BigInt, BigInt)) -> Option<(BigInt, BigInt)> {
    let two = BigInt::from(2);
    let norm = &d.0 * &d.0 - &two * &d.1 * &d.1;
    if norm.is_zero() {
        return None;
    }
    let qa = &s.0 * &d.0 - &two * &s.1 * &d.1;
    let qb = &s.1 * &d.0 - &s.0 * &d.1;
    let (qa, ra) = qa.div_rem(&norm);
    let (qb, rb) = qb.div_rem(&norm);
    if !ra.is_zero() || !rb.is_zero() {
        return None;
    }
    Some((qa, qb))
}

impl fmt::Display for QuadraticNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rad = |b: &BigUint| {
            if b.is_one() {
                "r2".to_string()
            } else {
                format!("{b}r2")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => f.write_str(&rad(&self.b)),
            (false, false) => write!(f, "{}+{}", self.a, rad(&self.b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: u32, b: u32) -> QuadraticNat {
        QuadraticNat::new(a, b)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 0).add(&q(0, 1)), q(1, 1));
        assert_eq!(q(0, 1).mul(&q(0, 1)), q(2, 0));
        assert_eq!(q(1, 1).mul(&q(1, 1)), q(3, 2));
    }

    #[test]
    fn one_plus_root_two_is_not_a_unit() {
        // brute force: no (c, d) with small nonnegative parts inverts 1 + √2
        let x = q(1, 1);
        for c in 0..20u32 {
            for d in 0..20u32 {
                assert_ne!(x.mul(&q(c, d)), q(1, 0));
            }
        }
        assert!(!x.is_unit());
        assert!(q(1, 0).is_unit());
    }

    #[test]
    fn root_two_divides_itself() {
        let cfg = SearchConfig::default();
        let d = QuadraticNat::common_nonunit_divisor(&[q(0, 1)], &cfg).unwrap();
        assert_eq!(d, Some(q(0, 1)));
        let d = QuadraticNat::common_nonunit_divisor(&[q(0, 1), q(1, 0)], &cfg).unwrap();
        assert_eq!(d, None);
        // 2 = √2·√2, 2√2 = √2·2
        let d = QuadraticNat::common_nonunit_divisor(&[q(2, 0), q(0, 2)], &cfg).unwrap();
        assert!(d.is_some());
    }

    #[test]
    fn exact_division() {
        assert_eq!(q(3, 2).div_exact(&q(1, 1)), Some(q(1, 1)));
        assert_eq!(q(1, 0).div_exact(&q(1, 1)), None);
        assert_eq!(q(2, 0).div_exact(&q(0, 1)), Some(q(0, 1)));
    }

    #[test]
    fn atoms() {
        let cfg = SearchConfig::default();
        assert!(q(0, 1).is_atom(&cfg).unwrap());
        assert!(q(1, 1).is_atom(&cfg).unwrap());
        assert!(!q(2, 0).is_atom(&cfg).unwrap());
        assert!(!q(1, 0).is_atom(&cfg).unwrap());
    }

    #[test]
    fn display() {
        assert_eq!(q(1, 2).to_string(), "1+2r2");
        assert_eq!(q(0, 1).to_string(), "r2");
        assert_eq!(q(3, 0).to_string(), "3");
    }
}

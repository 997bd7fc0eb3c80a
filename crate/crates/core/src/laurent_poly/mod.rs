//! Sparse exact Laurent polynomials over the shipped instances.
//!
//! Multivariate polynomials are nested: a polynomial in `x, y` is a Laurent
//! polynomial in `y` whose coefficients are Laurent polynomials in `x`.

mod format;
mod parse;

pub use format::{var_name, FlatTerm};
pub use parse::{default_vars, parse_poly, parse_poly_with};

use std::collections::BTreeMap;

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::semidomain::{Element, Ring};

/// `Σ s_i x^{k_i}` with nonzero coefficients in `ring`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<i64, Element>,
}

impl LaurentPoly {
    pub fn zero(ring: Ring) -> Self {
        LaurentPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    /// `c·x^e`; zero when `c = 0`.
    pub fn monomial(c: Element, e: i64) -> Self {
        let mut p = LaurentPoly::zero(c.ring());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn constant(c: Element) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms(ring: Ring, items: impl IntoIterator<Item = (i64, Element)>) -> Result<Self> {
        let mut p = LaurentPoly::zero(ring);
        for (e, c) in items {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    /// Shorthand for polynomials over `ℕ₀`.
    pub fn nat(items: &[(i64, u64)]) -> Self {
        LaurentPoly::from_terms(
            Ring::Natural,
            items.iter().map(|&(e, c)| (e, Element::nat(c))),
        )
        .expect("natural coefficients")
    }

    pub fn add_term(&mut self, e: i64, c: Element) -> Result<()> {
        if c.ring() != self.ring {
            return Err(Error::InstanceMismatch {
                left: self.ring.name(),
                right: c.ring().name(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.get(&e) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    /// The coefficient instance.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (i64, &Element)> + ExactSizeIterator + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Option<&Element> {
        self.terms.get(&e)
    }

    pub fn coeffs(&self) -> Vec<Element> {
        self.terms.values().cloned().collect()
    }

    /// Strictly increasing list of exponents.
    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max - min` of the support.
    pub fn degree_span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.is_unit())
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::InstanceMismatch {
                left: self.ring.name(),
                right: o.ring.name(),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut out = LaurentPoly::zero(self.ring.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.checked_add(*e2).ok_or(Error::ExponentOverflow)?;
                out.add_term(e, c1.mul(c2)?)?;
            }
        }
        Ok(out)
    }

    /// Coefficientwise `self - o`, when every coefficient of `o` lies below
    /// the matching one of `self`.
    pub fn checked_sub(&self, o: &Self) -> Option<Self> {
        if self.ring != o.ring {
            return None;
        }
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let cur = out.terms.get(e)?;
            let d = cur.checked_sub(c)?;
            if d.is_zero() {
                out.terms.remove(e);
            } else {
                out.terms.insert(*e, d);
            }
        }
        Some(out)
    }

    /// `self · x^k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.checked_add(k).ok_or(Error::ExponentOverflow)?, c.clone());
        }
        Ok(LaurentPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `(self · x^{-k_min}, k_min)`.
    pub fn normalize_shift(&self) -> Result<(Self, i64)> {
        let k = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let neg = k.checked_neg().ok_or(Error::ExponentOverflow)?;
        Ok((self.shift(neg)?, k))
    }

    /// `f(x^{-1})`.
    pub fn mirror(&self) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.checked_neg().ok_or(Error::ExponentOverflow)?, c.clone());
        }
        Ok(LaurentPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Sum of all coefficients over the base instance (evaluation at all-ones).
    pub fn mass(&self) -> Element {
        let base = self.ring.base().clone();
        self.terms
            .values()
            .map(|c| c.mass())
            .fold(Element::zero(&base), |acc, m| {
                acc.add(&m).expect("same base")
            })
    }

    /// Every `g ≤ self` coefficientwise (including zero and `self`).
    pub fn below(&self, cfg: &SearchConfig) -> Result<Vec<Self>> {
        let mut out = vec![LaurentPoly::zero(self.ring.clone())];
        for (e, c) in &self.terms {
            let opts = c.below(cfg)?;
            if (out.len() as u64).saturating_mul(opts.len() as u64) > cfg.candidate_budget {
                return Err(Error::SearchExhausted("coefficientwise splits".into()));
            }
            let mut next = Vec::with_capacity(out.len() * opts.len());
            for p in &out {
                for o in &opts {
                    let mut q = p.clone();
                    q.add_term(*e, o.clone())?;
                    next.push(q);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Number of variables in the nested view.
    pub fn vars(&self) -> usize {
        self.ring.depth() + 1
    }
}

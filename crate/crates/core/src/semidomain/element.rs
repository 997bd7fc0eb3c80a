use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{QuadraticNat, Ring, TwoThirds};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::irreducibility::flat;
use crate::laurent_poly::LaurentPoly;

/// An exact element of one of the shipped instances.
#[derive(Debug, Clone)]
pub enum Element {
    Natural(BigUint),
    /// Nonnegative, kept in lowest terms by `BigRational`.
    Rational(BigRational),
    Quadratic(QuadraticNat),
    TwoThirds(TwoThirds),
    Laurent(LaurentPoly),
}

/// `s = u + v` with `u` a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSplit {
    pub u: Element,
    pub v: Element,
}

impl Element {
    pub fn zero(ring: &Ring) -> Element {
        match ring {
            Ring::Natural => Element::Natural(BigUint::zero()),
            Ring::NonnegRational => Element::Rational(BigRational::zero()),
            Ring::QuadraticNat => Element::Quadratic(QuadraticNat::zero()),
            Ring::TwoThirds => Element::TwoThirds(TwoThirds::zero()),
            Ring::Laurent(inner) => Element::Laurent(LaurentPoly::zero((**inner).clone())),
        }
    }

    pub fn one(ring: &Ring) -> Element {
        Element::from_u64(ring, 1)
    }

    pub fn from_u64(ring: &Ring, n: u64) -> Element {
        match ring {
            Ring::Natural => Element::Natural(BigUint::from(n)),
            Ring::NonnegRational => Element::Rational(BigRational::from_integer(BigInt::from(n))),
            Ring::QuadraticNat => Element::Quadratic(QuadraticNat::new(n, 0u32)),
            Ring::TwoThirds => Element::TwoThirds(TwoThirds::from_u64(n)),
            Ring::Laurent(inner) => {
                Element::Laurent(LaurentPoly::constant(Element::from_u64(inner, n)))
            }
        }
    }

    pub fn nat(n: u64) -> Element {
        Element::Natural(BigUint::from(n))
    }

    /// A nonnegative rational `n/d`; panics on `d = 0`.
    pub fn rational(n: u64, d: u64) -> Element {
        Element::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn quadratic(a: u64, b: u64) -> Element {
        Element::Quadratic(QuadraticNat::new(a, b))
    }

    pub fn ring(&self) -> Ring {
        match self {
            Element::Natural(_) => Ring::Natural,
            Element::Rational(_) => Ring::NonnegRational,
            Element::Quadratic(_) => Ring::QuadraticNat,
            Element::TwoThirds(_) => Ring::TwoThirds,
            Element::Laurent(p) => Ring::laurent(p.ring().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Natural(n) => n.is_zero(),
            Element::Rational(q) => q.is_zero(),
            Element::Quadratic(q) => q.is_zero(),
            Element::TwoThirds(t) => t.is_zero(),
            Element::Laurent(p) => p.is_zero(),
        }
    }

    fn mismatch(&self, o: &Element) -> Error {
        Error::InstanceMismatch {
            left: self.ring().name(),
            right: o.ring().name(),
        }
    }

    pub fn add(&self, o: &Element) -> Result<Element> {
        Ok(match (self, o) {
            (Element::Natural(a), Element::Natural(b)) => Element::Natural(a + b),
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a + b),
            (Element::Quadratic(a), Element::Quadratic(b)) => Element::Quadratic(a.add(b)),
            (Element::TwoThirds(a), Element::TwoThirds(b)) => Element::TwoThirds(a.add(b)),
            (Element::Laurent(a), Element::Laurent(b)) if a.ring() == b.ring() => {
                Element::Laurent(a.add(b)?)
            }
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn mul(&self, o: &Element) -> Result<Element> {
        Ok(match (self, o) {
            (Element::Natural(a), Element::Natural(b)) => Element::Natural(a * b),
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a * b),
            (Element::Quadratic(a), Element::Quadratic(b)) => Element::Quadratic(a.mul(b)),
            (Element::TwoThirds(a), Element::TwoThirds(b)) => Element::TwoThirds(a.mul(b)),
            (Element::Laurent(a), Element::Laurent(b)) if a.ring() == b.ring() => {
                Element::Laurent(a.mul(b)?)
            }
            _ => return Err(self.mismatch(o)),
        })
    }

    /// `self - o` when `o` lies below `self` in the additive order (for
    /// `⟨(2/3)^k⟩`: when `o`'s witness is contained in `self`'s).
    pub fn checked_sub(&self, o: &Element) -> Option<Element> {
        match (self, o) {
            (Element::Natural(a), Element::Natural(b)) if b <= a => Some(Element::Natural(a - b)),
            (Element::Rational(a), Element::Rational(b)) if b <= a => {
                Some(Element::Rational(a - b))
            }
            (Element::Quadratic(a), Element::Quadratic(b)) => {
                a.checked_sub(b).map(Element::Quadratic)
            }
            (Element::TwoThirds(a), Element::TwoThirds(b)) => {
                let mut cur = a.clone();
                for (k, m) in b.witness() {
                    let mut left = m.clone();
                    while !left.is_zero() {
                        cur = cur.remove_atom(*k)?;
                        left -= 1u32;
                    }
                }
                Some(Element::TwoThirds(cur))
            }
            (Element::Laurent(a), Element::Laurent(b)) => a.checked_sub(b).map(Element::Laurent),
            _ => None,
        }
    }

    /// Whether `s` is multiplicatively invertible inside its instance.
    pub fn is_unit(&self) -> bool {
        match self {
            Element::Natural(n) => n.is_one(),
            Element::Rational(q) => !q.is_zero(),
            Element::Quadratic(q) => q.is_unit(),
            Element::TwoThirds(t) => t.is_unit(),
            Element::Laurent(p) => p.is_unit(),
        }
    }

    /// Canonical split `s = u + v` with `u` a unit.
    ///
    /// `ℕ₀`: `u = 1`. `⟨(2/3)^k⟩`: the witness atom of least exponent.
    /// Laurent: the lowest-exponent term with its coefficient split recursively.
    pub fn unit_decompose(&self) -> Result<UnitSplit> {
        let ring = self.ring();
        if !ring.descriptor().atoms_are_units {
            return Err(Error::NotApplicable {
                ring: ring.name(),
                reason: "additive atoms are not the units".into(),
            });
        }
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        match self {
            Element::Natural(n) => Ok(UnitSplit {
                u: Element::nat(1),
                v: Element::Natural(n - 1u32),
            }),
            Element::TwoThirds(t) => {
                let k = *t.witness().keys().next().ok_or(Error::ZeroInput)?;
                Ok(UnitSplit {
                    u: Element::TwoThirds(TwoThirds::atom(k)),
                    v: Element::TwoThirds(t.remove_atom(k).expect("atom present")),
                })
            }
            Element::Laurent(p) => {
                let (e, c) = p.terms().next().ok_or(Error::ZeroInput)?;
                let inner = c.unit_decompose()?;
                let u = LaurentPoly::monomial(inner.u, e);
                let v = p
                    .checked_sub(&u)
                    .ok_or_else(|| Error::Defect("unit split of a Laurent coefficient".into()))?;
                Ok(UnitSplit {
                    u: Element::Laurent(u),
                    v: Element::Laurent(v),
                })
            }
            _ => unreachable!("flag checked above"),
        }
    }

    /// Sum of all coefficients, flattening nested Laurent layers.
    pub fn mass(&self) -> Element {
        match self {
            Element::Laurent(p) => p.mass(),
            e => e.clone(),
        }
    }

    /// Every element `g` with `g ≤ self` additively, for instances whose
    /// splits are finitely enumerable.
    pub fn below(&self, cfg: &SearchConfig) -> Result<Vec<Element>> {
        match self {
            Element::Natural(n) => {
                let n = n
                    .to_u64()
                    .filter(|n| *n < cfg.candidate_budget)
                    .ok_or_else(|| Error::SearchExhausted(format!("splits of {n}")))?;
                Ok((0..=n).map(Element::nat).collect())
            }
            Element::Quadratic(q) => q
                .below()
                .map(|v| v.into_iter().map(Element::Quadratic).collect())
                .ok_or_else(|| Error::SearchExhausted(format!("splits of {q}"))),
            Element::Laurent(p) => Ok(p.below(cfg)?.into_iter().map(Element::Laurent).collect()),
            e => Err(Error::UnsupportedInstance(e.ring().name())),
        }
    }

    /// Exact quotient `self / d`, when it exists in the instance.
    ///
    /// For `⟨(2/3)^k⟩` only associate quotients are recognised.
    pub fn div_exact(&self, d: &Element) -> Option<Element> {
        if d.is_zero() {
            return None;
        }
        match (self, d) {
            (Element::Natural(a), Element::Natural(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(Element::Natural(q))
            }
            (Element::Rational(a), Element::Rational(b)) => Some(Element::Rational(a / b)),
            (Element::Quadratic(a), Element::Quadratic(b)) => {
                a.div_exact(b).map(Element::Quadratic)
            }
            (Element::TwoThirds(a), Element::TwoThirds(b)) => {
                let k = super::two_thirds::unit_exponent(&(a.value() / b.value()))?;
                Some(Element::TwoThirds(TwoThirds::atom(k)))
            }
            (Element::Laurent(a), Element::Laurent(b)) => {
                flat::poly_div_exact(a, b).map(Element::Laurent)
            }
            _ => None,
        }
    }

    /// A nonunit common divisor of `set`, or `None` when `1` is a greatest
    /// common divisor (every common divisor is a unit).
    pub fn common_nonunit_divisor(set: &[Element], cfg: &SearchConfig) -> Result<Option<Element>> {
        let first = match set.first() {
            Some(f) => f.clone(),
            None => return Ok(None),
        };
        let ring = first.ring();
        if let Some(bad) = set.iter().find(|e| e.ring() != ring) {
            return Err(first.mismatch(bad));
        }
        if set.iter().any(|e| e.is_zero()) {
            return Err(Error::ZeroInput);
        }
        if set.iter().any(|e| e.is_unit()) {
            return Ok(None);
        }
        match ring {
            Ring::Natural => {
                let g = set.iter().fold(BigUint::zero(), |acc, e| match e {
                    Element::Natural(n) => acc.gcd(n),
                    _ => unreachable!(),
                });
                Ok((!g.is_one()).then_some(Element::Natural(g)))
            }
            Ring::NonnegRational => Ok(None),
            Ring::QuadraticNat => {
                let qs: Vec<QuadraticNat> = set
                    .iter()
                    .map(|e| match e {
                        Element::Quadratic(q) => q.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                Ok(QuadraticNat::common_nonunit_divisor(&qs, cfg)?.map(Element::Quadratic))
            }
            Ring::TwoThirds => {
                // no unit present: any associate class shared by all is a divisor
                if set.iter().all(|e| e.div_exact(&first).is_some()) {
                    return Ok(Some(first));
                }
                Err(Error::SearchExhausted(
                    "common divisors in ⟨(2/3)^k⟩ without a unit member".into(),
                ))
            }
            Ring::Laurent(_) => {
                let ps: Vec<LaurentPoly> = set
                    .iter()
                    .map(|e| match e {
                        Element::Laurent(p) => p.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                Ok(flat::common_nonunit_divisor(&ps, cfg)?.map(Element::Laurent))
            }
        }
    }

    /// Whether `1 ∈ gcd(set)`.
    pub fn gcd_contains_one(set: &[Element], cfg: &SearchConfig) -> Result<bool> {
        Ok(Element::common_nonunit_divisor(set, cfg)?.is_none())
    }

    /// Smallest `k ≤ cap` such that `self` is a sum of `k` units.
    pub fn min_unit_summands(&self, cap: u32, cfg: &SearchConfig) -> Result<Option<u32>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        match self {
            Element::Natural(n) => Ok(n.to_u32().filter(|n| *n <= cap)),
            Element::TwoThirds(t) => t.min_unit_summands(cap, cfg.exponent_window),
            Element::Laurent(p) => {
                // terms live at distinct exponents, so counts add up
                let mut total = 0u32;
                let n = p.len() as u32;
                for (i, (_, c)) in p.terms().enumerate() {
                    let remaining_terms = n - i as u32 - 1;
                    if total + remaining_terms > cap {
                        return Ok(None);
                    }
                    match c.min_unit_summands(cap - total - remaining_terms, cfg)? {
                        Some(m) => total += m,
                        None => return Ok(None),
                    }
                }
                Ok(Some(total))
            }
            e => Err(Error::NotApplicable {
                ring: e.ring().name(),
                reason: "additive atoms are not the units".into(),
            }),
        }
    }

    /// Whether `self` is a multiplicative atom of its instance.
    pub fn is_atom(&self, cfg: &SearchConfig) -> Result<bool> {
        match self {
            Element::Natural(n) => Ok(is_prime(n)),
            Element::Rational(_) => Ok(false),
            Element::Quadratic(q) => q.is_atom(cfg),
            Element::TwoThirds(_) => {
                Err(Error::UnsupportedInstance("atom test in ⟨(2/3)^k⟩".into()))
            }
            Element::Laurent(p) => crate::irreducibility::is_irreducible(p, cfg),
        }
    }

    /// Text form; wrapped in parentheses when it is a sum.
    pub fn to_coeff_string(&self) -> String {
        let s = self.to_string();
        if s.contains('+') {
            format!("({s})")
        } else {
            s
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Element::Natural(_) => 0,
            Element::Rational(_) => 1,
            Element::Quadratic(_) => 2,
            Element::TwoThirds(_) => 3,
            Element::Laurent(_) => 4,
        }
    }
}

fn is_prime(n: &BigUint) -> bool {
    let n = match n.to_u64() {
        Some(n) => n,
        None => return false,
    };
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PartialEq for Element {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Element {}

impl PartialOrd for Element {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Element {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Element::Natural(a), Element::Natural(b)) => a.cmp(b),
            (Element::Rational(a), Element::Rational(b)) => a.cmp(b),
            (Element::Quadratic(a), Element::Quadratic(b)) => a.cmp(b),
            (Element::TwoThirds(a), Element::TwoThirds(b)) => a.cmp(b),
            (Element::Laurent(a), Element::Laurent(b)) => a.cmp(b),
            _ => self.rank().cmp(&o.rank()),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Natural(n) => write!(f, "{n}"),
            Element::Rational(q) => write!(f, "{q}"),
            Element::Quadratic(q) => write!(f, "{q}"),
            Element::TwoThirds(t) => write!(f, "{t}"),
            Element::Laurent(p) => write!(f, "{p}"),
        }
    }
}

//! Exhaustive divisor search on the flat multi-index view.
//!
//! Coefficients are lifted to a signed ring (`ℤ`, `ℤ[√2]` or `ℚ`) so that
//! long division can run with negative intermediates; a quotient only counts
//! when all of its coefficients land back in the semiring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::laurent_poly::{FlatTerm, LaurentPoly};
use crate::semidomain::{Element, QuadraticNat, Ring, TwoThirds};

pub(crate) type Flat<C> = BTreeMap<Vec<i64>, C>;

pub(crate) trait Coeff: Clone + Ord + Debug {
    fn from_elem(e: &Element) -> Option<Self>;
    fn to_elem(&self) -> Option<Element>;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Exact quotient in the signed ring.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    fn is_nonneg(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Nonnegative values a divisor's coefficient can take when its shifted
    /// product lands on a coefficient `self`.
    fn candidates(&self) -> Option<Vec<Self>>;
    /// Size of `candidates` without building it.
    fn candidate_count(&self) -> Option<u64>;
    /// Nonnegative divisors of `self` (used at the corners of the support).
    fn divisors(&self) -> Option<Vec<Self>> {
        Some(
            self.candidates()?
                .into_iter()
                .filter(|c| !c.is_zero() && self.div_exact(c).is_some_and(|q| q.is_nonneg()))
                .collect(),
        )
    }
    fn weight(&self) -> Option<u64>;
}

impl Coeff for BigInt {
    fn from_elem(e: &Element) -> Option<Self> {
        match e {
            Element::Natural(n) => Some(BigInt::from(n.clone())),
            _ => None,
        }
    }
    fn to_elem(&self) -> Option<Element> {
        self.to_biguint().map(Element::Natural)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }
    fn is_unit(&self) -> bool {
        One::is_one(self)
    }
    fn candidates(&self) -> Option<Vec<Self>> {
        let n = self.to_u64()?;
        Some((0..=n).map(BigInt::from).collect())
    }
    fn candidate_count(&self) -> Option<u64> {
        self.to_u64().map(|n| n + 1)
    }
    fn divisors(&self) -> Option<Vec<Self>> {
        let n = self.to_u64()?;
        Some((1..=n).filter(|d| n % d == 0).map(BigInt::from).collect())
    }
    fn weight(&self) -> Option<u64> {
        self.to_u64()
    }
}

/// `a + b√2` with signed parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Z2(BigInt, BigInt);

impl Coeff for Z2 {
    fn from_elem(e: &Element) -> Option<Self> {
        match e {
            Element::Quadratic(q) => Some(Z2(BigInt::from(q.a.clone()), BigInt::from(q.b.clone()))),
            _ => None,
        }
    }
    fn to_elem(&self) -> Option<Element> {
        Some(Element::Quadratic(QuadraticNat::new(
            self.0.to_biguint()?,
            self.1.to_biguint()?,
        )))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.0) && Zero::is_zero(&self.1)
    }
    fn add(&self, o: &Self) -> Self {
        Z2(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn sub(&self, o: &Self) -> Self {
        Z2(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn mul(&self, o: &Self) -> Self {
        Z2(
            &self.0 * &o.0 + BigInt::from(2) * &self.1 * &o.1,
            &self.0 * &o.1 + &self.1 * &o.0,
        )
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        crate::semidomain::quadratic_div_signed(
            &(self.0.clone(), self.1.clone()),
            &(d.0.clone(), d.1.clone()),
        )
        .map(|(a, b)| Z2(a, b))
    }
    fn is_nonneg(&self) -> bool {
        !self.0.is_negative() && !self.1.is_negative()
    }
    fn is_unit(&self) -> bool {
        One::is_one(&self.0) && Zero::is_zero(&self.1)
    }
    fn candidates(&self) -> Option<Vec<Self>> {
        let m = self.0.clone().max(self.1.clone()).to_u64()?;
        let mut out = Vec::new();
        for a in 0..=m {
            for b in 0..=m {
                out.push(Z2(BigInt::from(a), BigInt::from(b)));
            }
        }
        Some(out)
    }
    fn candidate_count(&self) -> Option<u64> {
        let m = self.0.clone().max(self.1.clone()).to_u64()?;
        (m + 1).checked_mul(m + 1)
    }
    fn weight(&self) -> Option<u64> {
        (&self.0 + &self.1).to_u64()
    }
}

impl Coeff for BigRational {
    fn from_elem(e: &Element) -> Option<Self> {
        match e {
            Element::Rational(q) => Some(q.clone()),
            _ => None,
        }
    }
    fn to_elem(&self) -> Option<Element> {
        (!self.is_negative()).then(|| Element::Rational(self.clone()))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!Zero::is_zero(d)).then(|| self / d)
    }
    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn candidates(&self) -> Option<Vec<Self>> {
        None
    }
    fn candidate_count(&self) -> Option<u64> {
        None
    }
    fn weight(&self) -> Option<u64> {
        None
    }
}

pub(crate) fn to_flat<C: Coeff>(p: &LaurentPoly) -> Option<Flat<C>> {
    p.flat_terms()
        .into_iter()
        .map(|t| Some((t.exp, C::from_elem(&t.coeff)?)))
        .collect()
}

pub(crate) fn from_flat<C: Coeff>(base: &Ring, vars: usize, f: &Flat<C>) -> Option<LaurentPoly> {
    let terms = f
        .iter()
        .map(|(e, c)| {
            Some(FlatTerm {
                exp: e.clone(),
                coeff: c.to_elem()?,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    LaurentPoly::from_flat(base, vars, terms).ok()
}

fn add_assign<C: Coeff>(f: &mut Flat<C>, e: Vec<i64>, c: C, negate: bool) {
    let next = match (f.remove(&e), negate) {
        (Some(old), true) => old.sub(&c),
        (Some(old), false) => old.add(&c),
        (None, true) => c.sub(&c).sub(&c),
        (None, false) => c,
    };
    if !next.is_zero() {
        f.insert(e, next);
    }
}

fn min_max(f: &Flat<impl Coeff>, n: usize) -> (Vec<i64>, Vec<i64>) {
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for e in f.keys() {
        for i in 0..n {
            lo[i] = lo[i].min(e[i]);
            hi[i] = hi[i].max(e[i]);
        }
    }
    (lo, hi)
}

/// Exact quotient `a / b` with nonnegative coefficients, by lexicographic
/// long division confined to the Newton box of the quotient.
pub(crate) fn div_flat<C: Coeff>(a: &Flat<C>, b: &Flat<C>, n: usize) -> Option<Flat<C>> {
    let (lb_e, lb_c) = b.last_key_value()?;
    if a.is_empty() {
        return Some(Flat::new());
    }
    let (alo, ahi) = min_max(a, n);
    let (blo, bhi) = min_max(b, n);
    let lo: Vec<i64> = (0..n).map(|i| alo[i] - blo[i]).collect();
    let hi: Vec<i64> = (0..n).map(|i| ahi[i] - bhi[i]).collect();
    if (0..n).any(|i| lo[i] > hi[i]) {
        return None;
    }
    let mut r = a.clone();
    let mut q = Flat::new();
    while let Some((re, rc)) = r.last_key_value() {
        let e: Vec<i64> = (0..n).map(|i| re[i] - lb_e[i]).collect();
        if (0..n).any(|i| e[i] < lo[i] || e[i] > hi[i]) {
            return None;
        }
        let c = rc.div_exact(lb_c)?;
        if !c.is_nonneg() {
            return None;
        }
        for (be, bc) in b {
            let key: Vec<i64> = (0..n).map(|i| be[i] + e[i]).collect();
            add_assign(&mut r, key, c.mul(bc), true);
        }
        q.insert(e, c);
    }
    Some(q)
}

fn mul_flat<C: Coeff>(a: &Flat<C>, b: &Flat<C>, n: usize) -> Flat<C> {
    let mut out = Flat::new();
    for (ae, ac) in a {
        for (be, bc) in b {
            let key: Vec<i64> = (0..n).map(|i| ae[i] + be[i]).collect();
            add_assign(&mut out, key, ac.mul(bc), false);
        }
    }
    out
}

/// Shifts so each variable has minimum exponent 0; returns the shift.
fn normalize<C: Coeff>(f: &Flat<C>, n: usize) -> (Flat<C>, Vec<i64>) {
    let (lo, _) = min_max(f, n);
    let g = f
        .iter()
        .map(|(e, c)| ((0..n).map(|i| e[i] - lo[i]).collect(), c.clone()))
        .collect();
    (g, lo)
}

fn is_unit_flat<C: Coeff>(f: &Flat<C>) -> bool {
    f.len() == 1 && f.values().all(|c| c.is_unit())
}

fn degree(f: &Flat<impl Coeff>, n: usize) -> i64 {
    let (lo, hi) = min_max(f, n);
    (0..n).map(|i| hi[i] - lo[i]).sum()
}

/// Normalized candidate divisors of a normalized `f`, sorted by degree and
/// then lexicographically. With `half`, univariate candidates stop at half
/// the degree (a cofactor of the same or smaller degree always exists).
fn divisor_candidates<C: Coeff>(
    f: &Flat<C>,
    n: usize,
    half: bool,
    cfg: &SearchConfig,
) -> Result<Vec<Flat<C>>> {
    let exhausted = || Error::SearchExhausted(format!("divisor candidates over {} terms", f.len()));
    let mut out: Vec<Flat<C>> = Vec::new();
    if n == 1 {
        let dense: BTreeMap<i64, &C> = f.iter().map(|(e, c)| (e[0], c)).collect();
        let deg = *dense.keys().next_back().unwrap_or(&0);
        let top_k = if half { deg / 2 } else { deg };
        let f0 = dense.get(&0).ok_or_else(exhausted)?;
        let fd = dense.get(&deg).ok_or_else(exhausted)?;
        let lows = f0.divisors().ok_or_else(exhausted)?;
        let highs = fd.divisors().ok_or_else(exhausted)?;
        let mut visited = 0u64;
        for k in 0..=top_k {
            if k == 0 {
                for c in &lows {
                    out.push(Flat::from([(vec![0], c.clone())]));
                }
                continue;
            }
            // positions 1..k-1 may carry any candidate bounded by f_i
            let mut slots: Vec<Vec<C>> = Vec::new();
            for i in 1..k {
                let opts = match dense.get(&i) {
                    Some(c) => c.candidates().ok_or_else(exhausted)?,
                    None => {
                        // g_i·h_0 would land on a zero coefficient of f
                        vec![f0.sub(f0)]
                    }
                };
                slots.push(opts);
            }
            let mut count = (lows.len() * highs.len()) as u64;
            for s in &slots {
                count = count.saturating_mul(s.len() as u64);
            }
            visited = visited.saturating_add(count);
            if visited > cfg.candidate_budget {
                return Err(Error::BudgetExhausted(cfg.candidate_budget));
            }
            let mut partial: Vec<Vec<C>> = vec![Vec::new()];
            for s in &slots {
                let mut next = Vec::with_capacity(partial.len() * s.len());
                for p in &partial {
                    for c in s {
                        let mut q = p.clone();
                        q.push(c.clone());
                        next.push(q);
                    }
                }
                partial = next;
            }
            for g0 in &lows {
                for mid in &partial {
                    for gk in &highs {
                        let mut g = Flat::new();
                        g.insert(vec![0], g0.clone());
                        for (i, c) in mid.iter().enumerate() {
                            if !c.is_zero() {
                                g.insert(vec![i as i64 + 1], c.clone());
                            }
                        }
                        g.insert(vec![k], gk.clone());
                        out.push(g);
                    }
                }
            }
        }
    } else {
        let mut count = 1u64;
        for c in f.values() {
            count = count.saturating_mul(c.candidate_count().ok_or_else(exhausted)?);
        }
        if count > cfg.candidate_budget {
            return Err(Error::BudgetExhausted(cfg.candidate_budget));
        }
        let mut partial: Vec<Flat<C>> = vec![Flat::new()];
        for (e, c) in f {
            let opts = c.candidates().ok_or_else(exhausted)?;
            let mut next = Vec::with_capacity(partial.len() * opts.len());
            for p in &partial {
                for o in &opts {
                    let mut q = p.clone();
                    if !o.is_zero() {
                        q.insert(e.clone(), o.clone());
                    }
                    next.push(q);
                }
            }
            partial = next;
        }
        let (_, fhi) = min_max(f, n);
        let mut seen = BTreeSet::new();
        for p in partial {
            if p.is_empty() {
                continue;
            }
            let (g, _) = normalize(&p, n);
            let (_, ghi) = min_max(&g, n);
            if half && 2 * ghi[n - 1] > fhi[n - 1] {
                continue;
            }
            if seen.insert(g.clone()) {
                out.push(g);
            }
        }
    }
    out.sort_by_cached_key(|g| {
        (
            degree(g, n),
            g.iter()
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect::<Vec<_>>(),
        )
    });
    out.dedup();
    Ok(out)
}

fn check_bounds<C: Coeff>(f: &Flat<C>, n: usize, cfg: &SearchConfig) -> Result<()> {
    let (lo, hi) = min_max(f, n);
    let deg = (0..n).map(|i| hi[i] - lo[i]).max().unwrap_or(0);
    if deg > cfg.max_degree {
        return Err(Error::DegreeBoundExceeded {
            degree: deg,
            bound: cfg.max_degree,
        });
    }
    let mut mass = 0u64;
    for c in f.values() {
        mass = mass.saturating_add(c.weight().unwrap_or(u64::MAX));
    }
    if mass > cfg.max_mass {
        return Err(Error::MassBoundExceeded {
            mass: mass.to_string(),
            bound: cfg.max_mass,
        });
    }
    Ok(())
}

/// `(g, h)` with `g·h = f` and neither a unit, first in search order.
fn factor_generic<C: Coeff>(
    f: &Flat<C>,
    n: usize,
    cfg: &SearchConfig,
) -> Result<Option<(Flat<C>, Flat<C>)>> {
    check_bounds(f, n, cfg)?;
    if is_unit_flat(f) {
        return Ok(None);
    }
    let (g0, shift) = normalize(f, n);
    for d in divisor_candidates(&g0, n, true, cfg)? {
        if is_unit_flat(&d) {
            continue;
        }
        if let Some(q) = div_flat(&g0, &d, n) {
            if is_unit_flat(&q) {
                continue;
            }
            let q = q
                .into_iter()
                .map(|(e, c)| ((0..n).map(|i| e[i] + shift[i]).collect(), c))
                .collect();
            debug_assert_eq!(mul_flat(&d, &q, n), *f);
            return Ok(Some((d, q)));
        }
    }
    Ok(None)
}

/// Nontrivial factorization of `f` over `ℕ₀` or `ℕ₀[√2]` (nested allowed).
pub(crate) fn factor(
    f: &LaurentPoly,
    cfg: &SearchConfig,
) -> Result<Option<(LaurentPoly, LaurentPoly)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let base = f.ring().base().clone();
    let n = f.vars();
    macro_rules! run {
        ($t:ty) => {{
            let flat = to_flat::<$t>(f).ok_or_else(|| Error::Defect("flat view".into()))?;
            Ok(factor_generic(&flat, n, cfg)?.map(|(g, h)| {
                (
                    from_flat(&base, n, &g).expect("nonnegative factor"),
                    from_flat(&base, n, &h).expect("nonnegative factor"),
                )
            }))
        }};
    }
    match base {
        Ring::Natural => run!(BigInt),
        Ring::QuadraticNat => run!(Z2),
        r => Err(Error::UnsupportedInstance(r.name())),
    }
}

/// Exact quotient `a / b` inside the nested semiring, when it exists.
pub fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if a.ring() != b.ring() || b.is_zero() {
        return None;
    }
    let base = a.ring().base().clone();
    let n = a.vars();
    macro_rules! run {
        ($t:ty) => {{
            let fa = to_flat::<$t>(a)?;
            let fb = to_flat::<$t>(b)?;
            from_flat(&base, n, &div_flat(&fa, &fb, n)?)
        }};
    }
    match base {
        Ring::Natural => run!(BigInt),
        Ring::QuadraticNat => run!(Z2),
        Ring::NonnegRational => run!(BigRational),
        Ring::TwoThirds => {
            // only unit divisors
            let t = b.flat_terms();
            if t.len() != 1 {
                return None;
            }
            let k = match &t[0].coeff {
                Element::TwoThirds(c) => c.unit_exponent()?,
                _ => return None,
            };
            let inv: Vec<FlatTerm> = vec![FlatTerm {
                exp: t[0].exp.iter().map(|e| -e).collect(),
                coeff: Element::TwoThirds(TwoThirds::atom(-k)),
            }];
            let inv = LaurentPoly::from_flat(&base, n, inv).ok()?;
            a.mul(&inv).ok()
        }
        Ring::Laurent(_) => None,
    }
}

/// A nonunit common divisor of all of `set` (polynomials over one instance).
pub fn common_nonunit_divisor(
    set: &[LaurentPoly],
    cfg: &SearchConfig,
) -> Result<Option<LaurentPoly>> {
    let first = match set.iter().min_by_key(|p| p.len()) {
        Some(p) => p,
        None => return Ok(None),
    };
    if set.iter().any(|p| p.is_unit()) {
        return Ok(None);
    }
    let base = first.ring().base().clone();
    let n = first.vars();
    macro_rules! run {
        ($t:ty) => {{
            let flats = set
                .iter()
                .map(|p| to_flat::<$t>(p).ok_or_else(|| Error::Defect("flat view".into())))
                .collect::<Result<Vec<_>>>()?;
            let f0 = to_flat::<$t>(first).ok_or_else(|| Error::Defect("flat view".into()))?;
            let (g0, _) = normalize(&f0, n);
            for d in divisor_candidates(&g0, n, false, cfg)? {
                if is_unit_flat(&d) {
                    continue;
                }
                if flats
                    .iter()
                    .all(|f| div_flat(&normalize(f, n).0, &d, n).is_some())
                {
                    return Ok(from_flat(&base, n, &d));
                }
            }
            Ok(None)
        }};
    }
    match base {
        Ring::Natural => run!(BigInt),
        Ring::QuadraticNat => run!(Z2),
        r => Err(Error::SearchExhausted(format!(
            "common divisors over {}",
            r.name()
        ))),
    }
}

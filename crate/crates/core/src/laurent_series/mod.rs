//! Laurent series with finitely many negative terms, given as a finite head
//! followed by a structured tail, so that gap questions are decidable.

mod certify;
mod decompose;
mod family;
mod index;
mod parse;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent_poly::LaurentPoly;
use crate::semidomain::{Element, Ring};

pub use certify::{
    certify_irreducible_series, gap_profile, recheck_series, GapProfile, SeriesCertification,
};
pub use decompose::{
    decompose_series, decompose_series_two, SeriesCase, SeriesDecomposition, SeriesSummand,
};
pub use family::{conjecture_probe, decomposition_family, ProbeOutcome};
pub use index::{Growth, IndexSet, SubsetSpec};
pub use parse::{parse_series, series_from_json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailSpec {
    /// The series is a polynomial.
    None,
    /// Exponents `start + gap·j`, coefficient `coeffs[j mod len]`.
    ConstantGap {
        start: i64,
        gap: u64,
        coeffs: Vec<Element>,
    },
    /// The `j`-th gap is `first_gap + increment·j`.
    AffineGap {
        start: i64,
        first_gap: u64,
        increment: u64,
        coeffs: Vec<Element>,
    },
    /// The terms of `source` whose ranks lie in `set` and are at least `from`.
    Derived {
        source: Arc<StructuredSeries>,
        set: IndexSet,
        from: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredSeries {
    ring: Ring,
    head: Vec<(i64, Element)>,
    tail: TailSpec,
}

fn cycle_ok(ring: &Ring, coeffs: &[Element]) -> Result<()> {
    if coeffs.is_empty() {
        return Err(Error::InvalidSeries("empty coefficient cycle".into()));
    }
    for c in coeffs {
        if c.is_zero() {
            return Err(Error::InvalidSeries("zero coefficient in cycle".into()));
        }
        if c.ring() != *ring {
            return Err(Error::InstanceMismatch {
                left: ring.name(),
                right: c.ring().name(),
            });
        }
    }
    Ok(())
}

/// Shortest cycle reproducing `c` when repeated.
fn compress_cycle(c: Vec<Element>) -> Vec<Element> {
    let n = c.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (p..n).all(|i| c[i] == c[i - p]) {
            return c[..p].to_vec();
        }
    }
    c
}

fn affine_exp(start: i64, g0: u64, a: u64, j: u64) -> Option<i64> {
    let j = j as i128;
    let e = start as i128 + g0 as i128 * j + a as i128 * (j * (j - 1) / 2);
    i64::try_from(e).ok()
}

impl StructuredSeries {
    pub fn new(ring: Ring, head: Vec<(i64, Element)>, tail: TailSpec) -> Result<StructuredSeries> {
        if matches!(ring, Ring::Laurent(_)) {
            return Err(Error::UnsupportedInstance(format!("series over {ring}")));
        }
        for w in head.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidSeries(
                    "head exponents must strictly increase".into(),
                ));
            }
        }
        for (_, c) in &head {
            if c.is_zero() {
                return Err(Error::InvalidSeries("zero coefficient in head".into()));
            }
            if c.ring() != ring {
                return Err(Error::InstanceMismatch {
                    left: ring.name(),
                    right: c.ring().name(),
                });
            }
        }
        match &tail {
            TailSpec::None => {}
            TailSpec::ConstantGap { gap, coeffs, .. } => {
                if *gap == 0 {
                    return Err(Error::InvalidSeries("gap must be at least 1".into()));
                }
                cycle_ok(&ring, coeffs)?;
            }
            TailSpec::AffineGap {
                first_gap,
                increment,
                coeffs,
                ..
            } => {
                if *first_gap == 0 || *increment == 0 {
                    return Err(Error::InvalidSeries(
                        "affine gaps need g0 >= 1 and a >= 1".into(),
                    ));
                }
                cycle_ok(&ring, coeffs)?;
            }
            TailSpec::Derived { source, .. } => {
                if !source.is_basic() || source.is_polynomial() {
                    return Err(Error::InvalidSeries(
                        "derived tails need a structured source".into(),
                    ));
                }
                if source.ring != ring {
                    return Err(Error::InstanceMismatch {
                        left: ring.name(),
                        right: source.ring.name(),
                    });
                }
            }
        }
        let s = StructuredSeries { ring, head, tail };
        if let (Some((last, _)), Some(first)) = (s.head.last(), s.tail_start()) {
            if *last >= first {
                return Err(Error::InvalidSeries(
                    "head exponents must lie below the tail".into(),
                ));
            }
        }
        if s.tail_start().is_none() && !s.is_polynomial() {
            return Err(Error::InvalidSeries("derived tail has no terms".into()));
        }
        Ok(s)
    }

    pub fn from_poly(p: &LaurentPoly) -> Result<StructuredSeries> {
        let head = p.terms().map(|(e, c)| (e, c.clone())).collect();
        StructuredSeries::new(p.ring().clone(), head, TailSpec::None)
    }

    pub fn constant_gap(
        ring: Ring,
        head: Vec<(i64, Element)>,
        start: i64,
        gap: u64,
        coeffs: Vec<Element>,
    ) -> Result<Self> {
        StructuredSeries::new(ring, head, TailSpec::ConstantGap { start, gap, coeffs })
    }

    pub fn affine_gap(
        ring: Ring,
        head: Vec<(i64, Element)>,
        start: i64,
        first_gap: u64,
        increment: u64,
        coeffs: Vec<Element>,
    ) -> Result<Self> {
        StructuredSeries::new(
            ring,
            head,
            TailSpec::AffineGap {
                start,
                first_gap,
                increment,
                coeffs,
            },
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn head(&self) -> &[(i64, Element)] {
        &self.head
    }

    pub fn tail(&self) -> &TailSpec {
        &self.tail
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.tail, TailSpec::None)
    }

    /// Head plus a constant- or affine-gap tail (or none).
    pub fn is_basic(&self) -> bool {
        !matches!(self.tail, TailSpec::Derived { .. })
    }

    /// The `j`-th tail term of a constant- or affine-gap tail.
    fn basic_tail_term(&self, j: u64) -> Option<(i64, Element)> {
        match &self.tail {
            TailSpec::ConstantGap { start, gap, coeffs } => {
                let e = i64::try_from(*start as i128 + *gap as i128 * j as i128).ok()?;
                Some((e, coeffs[(j % coeffs.len() as u64) as usize].clone()))
            }
            TailSpec::AffineGap {
                start,
                first_gap,
                increment,
                coeffs,
            } => {
                let e = affine_exp(*start, *first_gap, *increment, j)?;
                Some((e, coeffs[(j % coeffs.len() as u64) as usize].clone()))
            }
            _ => None,
        }
    }

    /// Term of rank `r` of a basic series.
    pub fn term(&self, r: u64) -> Option<(i64, Element)> {
        let h = self.head.len() as u64;
        if r < h {
            return Some(self.head[r as usize].clone());
        }
        match &self.tail {
            TailSpec::Derived { source, set, from } => {
                self.tail_members(source, set, *from).nth((r - h) as usize)
            }
            _ => self.basic_tail_term(r - h),
        }
    }

    fn tail_members<'a>(
        &'a self,
        source: &'a StructuredSeries,
        set: &IndexSet,
        from: u64,
    ) -> impl Iterator<Item = (i64, Element)> + 'a {
        set.iter()
            .skip_while(move |&r| r < from)
            .map_while(move |r| source.term(r))
    }

    /// Tail terms in increasing exponent order.
    pub fn tail_terms(&self) -> Box<dyn Iterator<Item = (i64, Element)> + '_> {
        match &self.tail {
            TailSpec::None => Box::new(std::iter::empty()),
            TailSpec::Derived { source, set, from } => {
                Box::new(self.tail_members(source, set, *from))
            }
            _ => Box::new((0u64..).map_while(move |j| self.basic_tail_term(j))),
        }
    }

    /// All terms in increasing exponent order (infinite unless a polynomial).
    pub fn terms(&self) -> Box<dyn Iterator<Item = (i64, Element)> + '_> {
        Box::new(self.head.iter().cloned().chain(self.tail_terms()))
    }

    /// Ranks of `source` feeding a derived tail, in order.
    pub fn tail_source_ranks(&self) -> Option<Box<dyn Iterator<Item = u64>>> {
        match &self.tail {
            TailSpec::Derived { set, from, .. } => {
                let from = *from;
                Some(Box::new(set.iter().skip_while(move |&r| r < from)))
            }
            _ => None,
        }
    }

    pub fn tail_start(&self) -> Option<i64> {
        self.tail_terms().next().map(|(e, _)| e)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms().next().map(|(e, _)| e)
    }

    /// All terms with exponent at most `order`.
    pub fn truncate(&self, order: i64) -> LaurentPoly {
        let terms = self.terms().take_while(|(e, _)| *e <= order);
        LaurentPoly::from_terms(self.ring.clone(), terms).expect("distinct exponents of one ring")
    }

    /// Lower bound on every gap between consecutive terms of rank at least
    /// `r` (a basic, non-polynomial series).
    pub(crate) fn gap_floor_from(&self, r: u64) -> u64 {
        let h = self.head.len() as u64;
        let mut floor = u64::MAX;
        let tail0 = self.basic_tail_term(0).map(|(e, _)| e);
        for i in r..h {
            let next = if i + 1 < h {
                Some(self.head[(i + 1) as usize].0)
            } else {
                tail0
            };
            if let Some(n) = next {
                floor = floor.min((n - self.head[i as usize].0) as u64);
            }
        }
        let j = r.saturating_sub(h);
        let t = match &self.tail {
            TailSpec::ConstantGap { gap, .. } => *gap,
            TailSpec::AffineGap {
                first_gap,
                increment,
                ..
            } => first_gap.saturating_add(increment.saturating_mul(j)),
            _ => u64::MAX,
        };
        floor.min(t)
    }

    /// Growth of the gaps inside the tail of a basic series.
    pub(crate) fn tail_growth(&self) -> Growth {
        match &self.tail {
            TailSpec::ConstantGap { .. } => Growth::Constant,
            TailSpec::AffineGap { .. } => Growth::Increasing,
            _ => Growth::Unknown,
        }
    }

    /// Rewrites a derived tail as a constant- or affine-gap tail when the
    /// selection is a progression inside the source's tail.
    pub fn simplify(self) -> StructuredSeries {
        let TailSpec::Derived { source, set, from } = &self.tail else {
            return self;
        };
        let h = source.head.len() as u64;
        let Some(m0) = set.iter().find(|&r| r >= *from) else {
            return self;
        };
        if m0 < h {
            return self;
        }
        let j0 = m0 - h;
        let stride = match set {
            IndexSet::All => Some(1),
            IndexSet::Stride { step, .. } => Some(*step),
            _ => None,
        };
        let tail = match (stride, &source.tail, set) {
            (Some(s), TailSpec::ConstantGap { start, gap, coeffs }, _) => {
                let l = coeffs.len() as u64;
                let c = (0..l)
                    .map(|n| coeffs[((j0 + s * n) % l) as usize].clone())
                    .collect();
                Some(TailSpec::ConstantGap {
                    start: start + (*gap * j0) as i64,
                    gap: gap * s,
                    coeffs: compress_cycle(c),
                })
            }
            (
                Some(s),
                TailSpec::AffineGap {
                    start,
                    first_gap,
                    increment,
                    coeffs,
                },
                _,
            ) => {
                let l = coeffs.len() as u64;
                let c = (0..l)
                    .map(|n| coeffs[((j0 + s * n) % l) as usize].clone())
                    .collect();
                affine_exp(*start, *first_gap, *increment, j0).map(|st| TailSpec::AffineGap {
                    start: st,
                    first_gap: s * first_gap + increment * s * (2 * j0 + s - 1) / 2,
                    increment: increment * s * s,
                    coeffs: compress_cycle(c),
                })
            }
            (
                None,
                TailSpec::ConstantGap { start, gap, coeffs },
                IndexSet::Quadratic {
                    first_diff,
                    increment,
                    ..
                },
            ) if *increment > 0 => {
                let n0 = set.iter().position(|r| r == m0).unwrap_or(0) as u64;
                let l = coeffs.len() as u64;
                let c = set
                    .iter()
                    .skip(n0 as usize)
                    .take(2 * l as usize)
                    .map(|q| coeffs[((q - h) % l) as usize].clone())
                    .collect();
                Some(TailSpec::AffineGap {
                    start: start + (*gap * j0) as i64,
                    first_gap: gap * (first_diff + increment * n0),
                    increment: gap * increment,
                    coeffs: compress_cycle(c),
                })
            }
            _ => None,
        };
        match tail {
            Some(t) => StructuredSeries {
                ring: self.ring.clone(),
                head: self.head.clone(),
                tail: t,
            },
            None => self,
        }
    }

    pub fn head_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.ring.clone(), self.head.iter().cloned()).expect("valid head")
    }

    pub fn to_json(&self) -> Value {
        let head: Vec<Value> = self
            .head
            .iter()
            .map(|(e, c)| json!({"exp": e, "coeff": c.to_string()}))
            .collect();
        let coeffs = |c: &[Element]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let tail = match &self.tail {
            TailSpec::None => json!({"kind": "none"}),
            TailSpec::ConstantGap {
                start,
                gap,
                coeffs: c,
            } => {
                json!({"kind": "const", "start": start, "d": gap, "coeffs": coeffs(c)})
            }
            TailSpec::AffineGap {
                start,
                first_gap,
                increment,
                coeffs: c,
            } => {
                json!({"kind": "affine", "start": start, "g0": first_gap, "a": increment, "coeffs": coeffs(c)})
            }
            TailSpec::Derived { source, set, from } => {
                json!({"kind": "derived", "from": from, "set": set.to_json(), "source": source.to_json()})
            }
        };
        json!({"ring": self.ring.name(), "head": head, "tail": tail})
    }
}

fn fmt_cycle(c: &[Element]) -> String {
    c.iter()
        .map(|x| x.to_coeff_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for StructuredSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.head.is_empty() || self.is_polynomial() {
            write!(f, "head: {}; ", self.head_poly())?;
        }
        match &self.tail {
            TailSpec::None => write!(f, "tail: none"),
            TailSpec::ConstantGap { start, gap, coeffs } => {
                write!(
                    f,
                    "tail: const(start={start}, d={gap}, coeffs=[{}])",
                    fmt_cycle(coeffs)
                )
            }
            TailSpec::AffineGap {
                start,
                first_gap,
                increment,
                coeffs,
            } => write!(
                f,
                "tail: affine(start={start}, g0={first_gap}, a={increment}, coeffs=[{}])",
                fmt_cycle(coeffs)
            ),
            TailSpec::Derived { source, set, from } => {
                write!(
                    f,
                    "tail: derived(from={from}, set={set}, source=[{source}])"
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent_poly::parse_poly;

    fn ones() -> StructuredSeries {
        StructuredSeries::constant_gap(Ring::Natural, vec![], 0, 1, vec![Element::nat(1)]).unwrap()
    }

    fn triangular() -> StructuredSeries {
        StructuredSeries::affine_gap(Ring::Natural, vec![], 0, 1, 1, vec![Element::nat(1)]).unwrap()
    }

    fn nat(s: &str) -> LaurentPoly {
        parse_poly(s, &Ring::Natural, &["x"]).unwrap()
    }

    #[test]
    fn truncation() {
        assert_eq!(ones().truncate(3), nat("1 + x + x^2 + x^3"));
        assert_eq!(triangular().truncate(6), nat("1 + x + x^3 + x^6"));
        let p = StructuredSeries::from_poly(&nat("x^2 + 3")).unwrap();
        assert_eq!(p.truncate(10), nat("x^2 + 3"));
        assert!(ones().truncate(-1).is_zero());
    }

    #[test]
    fn validation() {
        let two = Element::nat(2);
        assert!(StructuredSeries::constant_gap(
            Ring::Natural,
            vec![(5, two.clone())],
            3,
            1,
            vec![two.clone()]
        )
        .is_err());
        assert!(
            StructuredSeries::constant_gap(Ring::Natural, vec![], 0, 0, vec![two.clone()]).is_err()
        );
        assert!(StructuredSeries::affine_gap(Ring::Natural, vec![], 0, 1, 0, vec![two]).is_err());
        assert!(
            StructuredSeries::constant_gap(Ring::Natural, vec![], 0, 1, vec![Element::nat(0)])
                .is_err()
        );
    }

    #[test]
    fn derived_tails_simplify() {
        let f = Arc::new(ones());
        let s = StructuredSeries::new(
            Ring::Natural,
            vec![(0, Element::nat(1)), (1, Element::nat(1))],
            TailSpec::Derived {
                source: f.clone(),
                set: IndexSet::Stride { first: 0, step: 2 },
                from: 4,
            },
        )
        .unwrap();
        assert_eq!(s.truncate(10), nat("1 + x + x^4 + x^6 + x^8 + x^10"));
        let t = s.clone().simplify();
        assert!(t.is_basic());
        assert_eq!(t.truncate(60), s.truncate(60));

        let tri = Arc::new(triangular());
        let s = StructuredSeries::new(
            Ring::Natural,
            vec![],
            TailSpec::Derived {
                source: tri,
                set: IndexSet::Stride { first: 1, step: 3 },
                from: 2,
            },
        )
        .unwrap();
        assert_eq!(s.clone().simplify().truncate(500), s.truncate(500));

        let q = IndexSet::Quadratic {
            first: 1,
            first_diff: 2,
            increment: 1,
        };
        let s = StructuredSeries::new(
            Ring::Natural,
            vec![],
            TailSpec::Derived {
                source: f,
                set: q,
                from: 3,
            },
        )
        .unwrap();
        let t = s.clone().simplify();
        assert!(t.is_basic());
        assert_eq!(t.truncate(300), s.truncate(300));
    }

    #[test]
    fn display_forms() {
        let f = StructuredSeries::affine_gap(
            Ring::Natural,
            vec![(0, Element::nat(2)), (1, Element::nat(2))],
            3,
            2,
            1,
            vec![Element::nat(2)],
        )
        .unwrap();
        assert_eq!(
            f.to_string(),
            "head: 2x + 2; tail: affine(start=3, g0=2, a=1, coeffs=[2])"
        );
        assert_eq!(ones().to_string(), "tail: const(start=0, d=1, coeffs=[1])");
        assert_eq!(f.to_json()["tail"]["g0"], 2);
    }
}

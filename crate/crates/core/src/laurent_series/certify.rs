use serde_json::{json, Value};

use super::{Growth, StructuredSeries, TailSpec};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::irreducibility::{
    self, CertKind, Certification, FactorWitness, IrreducibilityCertificate,
};
use crate::semidomain::Element;

/// Gap statistics of the support `k_0 < k_1 < …`; gap `i` is `k_{i+1} - k_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapProfile {
    /// Minimum gap.
    pub delta: u64,
    /// Whether only finitely many gaps equal `delta`.
    pub j_finite: bool,
    /// First gap index attaining `delta`.
    pub alpha: u64,
    /// Last such index, when there are finitely many.
    pub beta: Option<u64>,
    /// Smallest `n` with gaps `n, n+1, …` strictly increasing, when that holds.
    pub regularity_index: Option<u64>,
}

impl GapProfile {
    pub fn to_json(&self) -> Value {
        json!({
            "delta": self.delta,
            "j_finite": self.j_finite,
            "alpha": self.alpha,
            "beta": self.beta,
            "regularity_index": self.regularity_index,
        })
    }
}

fn gaps(exps: &[i64]) -> Vec<u64> {
    exps.windows(2).map(|w| (w[1] - w[0]) as u64).collect()
}

/// Exact profile, computed from the head and the tail parameters.
pub fn gap_profile(f: &StructuredSeries) -> Result<GapProfile> {
    let h = f.head.len();
    let mut exps: Vec<i64> = f.head.iter().map(|(e, _)| *e).collect();
    let (tail_min, infinite_min, increasing) = match &f.tail {
        TailSpec::None => (None, false, false),
        TailSpec::ConstantGap { start, gap, .. } => {
            exps.push(*start);
            (Some(*gap), true, false)
        }
        TailSpec::AffineGap {
            start, first_gap, ..
        } => {
            exps.push(*start);
            (Some(*first_gap), false, true)
        }
        TailSpec::Derived { .. } => {
            return Err(Error::UnsupportedInstance(
                "gap profile of a derived tail".into(),
            ));
        }
    };
    if exps.len() < 2 && tail_min.is_none() {
        return Err(Error::FewerThanTwoTerms(exps.len()));
    }
    // explicit gaps end at the link into the tail; tail gap j has index h + j
    let explicit = gaps(&exps);
    let delta = explicit
        .iter()
        .copied()
        .chain(tail_min)
        .min()
        .expect("at least one gap");
    let mut hits: Vec<u64> = (0..explicit.len() as u64)
        .filter(|&i| explicit[i as usize] == delta)
        .collect();
    if tail_min == Some(delta) {
        hits.push(h as u64);
    }
    let j_finite = !(infinite_min && tail_min == Some(delta));
    let gap_at = |i: usize| {
        if i < h {
            explicit[i]
        } else {
            tail_min.expect("tail")
        }
    };
    let regularity_index = increasing.then(|| {
        let mut n = h;
        while n > 0 && gap_at(n - 1) < gap_at(n) {
            n -= 1;
        }
        n as u64
    });
    Ok(GapProfile {
        delta,
        j_finite,
        alpha: hits[0],
        beta: j_finite.then(|| *hits.last().expect("hit")),
        regularity_index,
    })
}

/// Why a series is (certainly) not irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonIrreducibility {
    /// A nonunit dividing every coefficient.
    CommonDivisor(Element),
    Factor(FactorWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesCertification {
    Irreducible(IrreducibilityCertificate),
    NotIrreducible(NonIrreducibility),
    Unknown(String),
}

impl SeriesCertification {
    pub fn certificate(&self) -> Option<&IrreducibilityCertificate> {
        match self {
            SeriesCertification::Irreducible(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SeriesCertification::Irreducible(c) => {
                json!({"verdict": "Irreducible", "certificate": c.to_json()})
            }
            SeriesCertification::NotIrreducible(NonIrreducibility::CommonDivisor(d)) => {
                json!({"verdict": "NotIrreducible", "common_divisor": d.to_string()})
            }
            SeriesCertification::NotIrreducible(NonIrreducibility::Factor(w)) => {
                json!({"verdict": "NotIrreducible", "factor": w.to_json()})
            }
            SeriesCertification::Unknown(r) => json!({"verdict": "Unknown", "reason": r}),
        }
    }
}

/// What the structure says about the support and the coefficients.
struct Shape {
    head_len: usize,
    /// Head exponents followed by the first two tail exponents.
    exps: Vec<i64>,
    /// Lower bound on tail gaps beyond those visible in `exps`.
    floor: u64,
    growth: Growth,
    gcd: Gcd,
}

enum Gcd {
    One,
    Divisor(Element),
    Unknown,
}

fn exponent_growth(region: Growth, index: Growth) -> Growth {
    match (region, index) {
        (Growth::Constant, g) => g,
        (Growth::Increasing, Growth::SuperIncreasing) => Growth::SuperIncreasing,
        (Growth::Increasing, g) if g != Growth::Unknown => Growth::Increasing,
        _ => Growth::Unknown,
    }
}

fn shape(s: &StructuredSeries, cfg: &SearchConfig) -> Result<Shape> {
    let head_len = s.head.len();
    let first_tail: Vec<(i64, Element)> = s.tail_terms().take(2).collect();
    let mut exps: Vec<i64> = s.head.iter().map(|(e, _)| *e).collect();
    exps.extend(first_tail.iter().map(|(e, _)| *e));
    let mut seen: Vec<Element> = s.head.iter().map(|(_, c)| c.clone()).collect();
    seen.extend(first_tail.iter().map(|(_, c)| c.clone()));
    let (floor, growth, gcd) = match &s.tail {
        TailSpec::None => unreachable!("polynomials are certified elsewhere"),
        TailSpec::ConstantGap { gap, coeffs, .. } => {
            seen.extend(coeffs.iter().cloned());
            (*gap, Growth::Constant, exact_gcd(&seen, cfg)?)
        }
        TailSpec::AffineGap {
            first_gap,
            increment,
            coeffs,
            ..
        } => {
            seen.extend(coeffs.iter().cloned());
            (
                first_gap + increment,
                Growth::Increasing,
                exact_gcd(&seen, cfg)?,
            )
        }
        TailSpec::Derived { source, set, .. } => {
            let ranks: Vec<u64> = s.tail_source_ranks().expect("derived").take(1).collect();
            let m0 = ranks[0];
            let in_tail = m0 >= source.head.len() as u64;
            let floor = source.gap_floor_from(m0).saturating_mul(set.min_step());
            let region = if in_tail {
                source.tail_growth()
            } else {
                Growth::Unknown
            };
            let growth = exponent_growth(region, set.growth());
            let cycle = match &source.tail {
                TailSpec::ConstantGap { coeffs, .. } | TailSpec::AffineGap { coeffs, .. } => {
                    coeffs.len()
                }
                _ => 1,
            };
            // a visible subset with gcd 1 settles it; a divisor of every
            // coefficient the tail can draw from settles the converse
            let mut subset = seen.clone();
            subset.extend(s.tail_terms().take(2 * cycle + 2).map(|(_, c)| c));
            let gcd = if Element::gcd_contains_one(&subset, cfg)? {
                Gcd::One
            } else if in_tail {
                let mut sup = s.head.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>();
                match &source.tail {
                    TailSpec::ConstantGap { coeffs, .. } | TailSpec::AffineGap { coeffs, .. } => {
                        sup.extend(coeffs.iter().cloned())
                    }
                    _ => {}
                }
                match Element::common_nonunit_divisor(&sup, cfg)? {
                    Some(d) => Gcd::Divisor(d),
                    None => Gcd::Unknown,
                }
            } else {
                Gcd::Unknown
            };
            (floor, growth, gcd)
        }
    };
    Ok(Shape {
        head_len,
        exps,
        floor,
        growth,
        gcd,
    })
}

fn exact_gcd(set: &[Element], cfg: &SearchConfig) -> Result<Gcd> {
    Ok(match Element::common_nonunit_divisor(set, cfg)? {
        Some(d) => Gcd::Divisor(d),
        None => Gcd::One,
    })
}

fn hyper(sh: &Shape) -> bool {
    let g = gaps(&sh.exps);
    let first = g[0];
    g[1..].iter().all(|&x| first < x) && first < sh.floor
}

/// Smallest explicit starting index for strictly increasing gaps.
fn regularity(sh: &Shape) -> Option<u64> {
    if !matches!(sh.growth, Growth::Increasing | Growth::SuperIncreasing) {
        return None;
    }
    let g = gaps(&sh.exps);
    // gaps from index head_len on lie inside the tail and increase
    let mut n = sh.head_len.min(g.len() - 1);
    while n > 0 && g[n - 1] < g[n] {
        n -= 1;
    }
    Some(n as u64)
}

fn series_cert(kind: CertKind, regularity_index: Option<u64>) -> IrreducibilityCertificate {
    IrreducibilityCertificate {
        kind,
        gcd: true,
        bounds: None,
        regularity_index,
        inner: None,
    }
}

/// Sufficient criteria: first gap below every later gap, or eventually
/// strictly increasing gaps, together with `1 ∈ gcd` over the head and one
/// tail cycle. Polynomials go through the polynomial certifier.
pub fn certify_irreducible_series(
    f: &StructuredSeries,
    cfg: &SearchConfig,
) -> Result<SeriesCertification> {
    if f.is_polynomial() {
        let p = f.head_poly();
        if p.len() < 2 {
            return Err(Error::FewerThanTwoTerms(p.len()));
        }
        return Ok(match irreducibility::certify_irreducible(&p, cfg)? {
            Certification::Irreducible(c) => SeriesCertification::Irreducible(c),
            Certification::NotIrreducible(w) => {
                SeriesCertification::NotIrreducible(NonIrreducibility::Factor(w))
            }
            Certification::Unknown(r) => SeriesCertification::Unknown(r),
        });
    }
    let sh = shape(f, cfg)?;
    match sh.gcd {
        Gcd::Divisor(d) => {
            return Ok(SeriesCertification::NotIrreducible(
                NonIrreducibility::CommonDivisor(d),
            ))
        }
        Gcd::Unknown => {
            return Ok(SeriesCertification::Unknown(
                "gcd of the coefficients undecided".into(),
            ))
        }
        Gcd::One => {}
    }
    if hyper(&sh) {
        return Ok(SeriesCertification::Irreducible(series_cert(
            CertKind::HyperMonolithic,
            None,
        )));
    }
    if let Some(n) = regularity(&sh) {
        return Ok(SeriesCertification::Irreducible(series_cert(
            CertKind::EventuallyIncreasingGaps,
            Some(n),
        )));
    }
    Ok(SeriesCertification::Unknown(
        "neither gap criterion applies".into(),
    ))
}

/// Re-derives the certificate's claims from the structure, then checks them
/// on the truncation at `cfg.check_order`.
pub fn recheck_series(
    f: &StructuredSeries,
    cert: &IrreducibilityCertificate,
    cfg: &SearchConfig,
) -> Result<bool> {
    if f.is_polynomial() {
        return irreducibility::recheck(&f.head_poly(), cert, cfg);
    }
    let sh = shape(f, cfg)?;
    if !matches!(sh.gcd, Gcd::One) {
        return Ok(false);
    }
    let t: Vec<i64> = f
        .terms()
        .take_while(|(e, _)| *e <= cfg.check_order)
        .map(|(e, _)| e)
        .collect();
    let g = gaps(&t);
    match cert.kind {
        CertKind::HyperMonolithic => Ok(hyper(&sh)
            && g.iter()
                .skip(1)
                .all(|&x| x > g.first().copied().unwrap_or(0))),
        CertKind::EventuallyIncreasingGaps => {
            let (Some(n), Some(claimed)) = (regularity(&sh), cert.regularity_index) else {
                return Ok(false);
            };
            let c = claimed as usize;
            Ok(claimed >= n
                && g.iter()
                    .skip(c)
                    .zip(g.iter().skip(c + 1))
                    .all(|(a, b)| a < b))
        }
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semidomain::Ring;

    fn one() -> Element {
        Element::nat(1)
    }

    fn ones() -> StructuredSeries {
        StructuredSeries::constant_gap(Ring::Natural, vec![], 0, 1, vec![one()]).unwrap()
    }

    fn triangular() -> StructuredSeries {
        StructuredSeries::affine_gap(Ring::Natural, vec![], 0, 1, 1, vec![one()]).unwrap()
    }

    fn twos() -> StructuredSeries {
        let two = Element::nat(2);
        StructuredSeries::affine_gap(
            Ring::Natural,
            vec![(0, two.clone()), (1, two.clone())],
            3,
            2,
            1,
            vec![two],
        )
        .unwrap()
    }

    #[test]
    fn profiles() {
        let p = gap_profile(&ones()).unwrap();
        assert_eq!((p.delta, p.j_finite, p.alpha, p.beta), (1, false, 0, None));
        let p = gap_profile(&triangular()).unwrap();
        assert_eq!(
            (p.delta, p.j_finite, p.alpha, p.beta),
            (1, true, 0, Some(0))
        );
        assert_eq!(p.regularity_index, Some(0));
        let p = gap_profile(&twos()).unwrap();
        assert_eq!(
            (p.delta, p.j_finite, p.alpha, p.beta),
            (1, true, 0, Some(0))
        );
        // head gap 1, link 2, tail gaps 2, 3, …: increasing from gap 2 only
        assert_eq!(p.regularity_index, Some(2));
    }

    #[test]
    fn certificates() {
        let cfg = SearchConfig::default();
        let c = certify_irreducible_series(&triangular(), &cfg).unwrap();
        let cert = c.certificate().unwrap().clone();
        assert_eq!(cert.kind, CertKind::HyperMonolithic);
        assert!(recheck_series(&triangular(), &cert, &cfg).unwrap());
        assert!(!recheck_series(&ones(), &cert, &cfg).unwrap());
        assert!(matches!(
            certify_irreducible_series(&ones(), &cfg).unwrap(),
            SeriesCertification::Unknown(_)
        ));
        assert_eq!(
            certify_irreducible_series(&twos(), &cfg).unwrap(),
            SeriesCertification::NotIrreducible(NonIrreducibility::CommonDivisor(Element::nat(2)))
        );
    }

    #[test]
    fn eventual_criterion() {
        let cfg = SearchConfig::default();
        // gaps 1, 1, then 3, 4, 5, …
        let f = StructuredSeries::affine_gap(
            Ring::Natural,
            vec![(0, one()), (1, one())],
            2,
            3,
            1,
            vec![one()],
        )
        .unwrap();
        let c = certify_irreducible_series(&f, &cfg).unwrap();
        let cert = c.certificate().unwrap();
        assert_eq!(cert.kind, CertKind::EventuallyIncreasingGaps);
        assert_eq!(cert.regularity_index, Some(1));
        assert!(recheck_series(&f, cert, &cfg).unwrap());
    }
}

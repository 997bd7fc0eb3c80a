use std::sync::Arc;

use serde_json::{json, Value};

use super::certify::{certify_irreducible_series, gap_profile, GapProfile, SeriesCertification};
use super::{IndexSet, StructuredSeries, SubsetSpec, TailSpec};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::goldbach_poly::{goldbach, VerdictKind};
use crate::irreducibility::IrreducibilityCertificate;
use crate::laurent_poly::LaurentPoly;
use crate::semidomain::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesCase {
    /// The input is a polynomial; handled by the polynomial engine.
    Polynomial,
    /// The input is itself certified irreducible.
    Itself,
    /// First two gaps equal the minimum gap: two parity summands.
    EqualGaps,
    /// Finitely many gaps attain the minimum: two summands.
    FiniteMinimalGaps,
    /// Infinitely many gaps attain the minimum: three summands.
    InfiniteMinimalGaps,
}

impl SeriesCase {
    pub fn name(self) -> &'static str {
        match self {
            SeriesCase::Polynomial => "Polynomial",
            SeriesCase::Itself => "Itself",
            SeriesCase::EqualGaps => "EqualGaps",
            SeriesCase::FiniteMinimalGaps => "FiniteMinimalGaps",
            SeriesCase::InfiniteMinimalGaps => "InfiniteMinimalGaps",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSummand {
    pub series: StructuredSeries,
    pub certificate: IrreducibilityCertificate,
}

impl SeriesSummand {
    pub fn to_json(&self, order: i64) -> Value {
        json!({
            "series": self.series.to_json(),
            "text": self.series.to_string(),
            "truncation": self.series.truncate(order).to_string(),
            "certificate": self.certificate.to_json(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesDecomposition {
    pub case: SeriesCase,
    pub summands: Vec<SeriesSummand>,
    pub profile: Option<GapProfile>,
}

impl SeriesDecomposition {
    /// Sum of the summands' truncations at `order`.
    pub fn truncated_sum(&self, order: i64) -> Result<LaurentPoly> {
        let ring = self.summands[0].series.ring().clone();
        self.summands
            .iter()
            .try_fold(LaurentPoly::zero(ring), |acc, s| {
                acc.add(&s.series.truncate(order))
            })
    }

    /// Truncations of the summands, sorted, as an unordered-tuple key.
    pub fn truncation_key(&self, order: i64) -> Vec<LaurentPoly> {
        let mut k: Vec<LaurentPoly> = self
            .summands
            .iter()
            .map(|s| s.series.truncate(order))
            .collect();
        k.sort();
        k
    }

    pub fn to_json(&self, order: i64) -> Value {
        json!({
            "case": self.case.name(),
            "summands": self.summands.iter().map(|s| s.to_json(order)).collect::<Vec<_>>(),
            "profile": self.profile.as_ref().map(GapProfile::to_json),
        })
    }
}

pub(crate) fn check_engine_preconditions(f: &StructuredSeries) -> Result<()> {
    let d = f.ring().descriptor();
    if !(d.additively_reduced && d.additively_atomic && d.atoms_are_units) {
        return Err(Error::NotApplicable {
            ring: f.ring().name(),
            reason: "needs an additively reduced, additively atomic instance whose additive atoms are units".into(),
        });
    }
    Ok(())
}

pub(crate) fn term(f: &StructuredSeries, r: u64) -> Result<(i64, Element)> {
    f.term(r).ok_or(Error::ExponentOverflow)
}

fn split(c: &Element) -> Result<(Element, Option<Element>)> {
    let s = c.unit_decompose()?;
    Ok((s.u, (!s.v.is_zero()).then_some(s.v)))
}

/// Explicit terms followed by the ranks of `f` in `set` from `from` on.
pub(crate) fn assemble(
    f: &Arc<StructuredSeries>,
    mut explicit: Vec<(i64, Element)>,
    set: IndexSet,
    from: u64,
) -> Result<StructuredSeries> {
    explicit.sort_by_key(|(e, _)| *e);
    if explicit.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Defect(
            "a summand received two terms at one exponent".into(),
        ));
    }
    let tail = TailSpec::Derived {
        source: f.clone(),
        set,
        from,
    };
    StructuredSeries::new(f.ring().clone(), explicit, tail)
        .map(StructuredSeries::simplify)
        .map_err(|e| Error::UnrepresentableSplit(e.to_string()))
}

pub(crate) fn certified(s: StructuredSeries, cfg: &SearchConfig) -> Result<SeriesSummand> {
    match certify_irreducible_series(&s, cfg)? {
        SeriesCertification::Irreducible(certificate) => Ok(SeriesSummand {
            series: s,
            certificate,
        }),
        other => Err(Error::Defect(format!(
            "constructed summand {s} is not certified: {:?}",
            other.to_json()
        ))),
    }
}

pub(crate) fn check_sum(f: &StructuredSeries, d: &SeriesDecomposition, order: i64) -> Result<()> {
    if d.truncated_sum(order)? != f.truncate(order) {
        return Err(Error::Defect(format!(
            "summands do not add up to {f} at order {order}"
        )));
    }
    Ok(())
}

/// The parity split: ranks `0, 1` with the even ranks from 4, and ranks
/// `2, 3` with the odd ranks from 5. Requires the first two gaps to equal the
/// minimum gap; both halves must certify.
pub fn decompose_series_two(
    f: &StructuredSeries,
    cfg: &SearchConfig,
) -> Result<(SeriesSummand, SeriesSummand)> {
    check_engine_preconditions(f)?;
    if f.is_polynomial() || !f.is_basic() {
        return Err(Error::ConditionNotMet(
            "needs a structured, non-polynomial series".into(),
        ));
    }
    let p = gap_profile(f)?;
    let k: Vec<i64> = (0..3)
        .map(|r| term(f, r).map(|t| t.0))
        .collect::<Result<_>>()?;
    let (g0, g1) = ((k[1] - k[0]) as u64, (k[2] - k[1]) as u64);
    if g0 != g1 || g0 != p.delta {
        return Err(Error::ConditionNotMet(format!(
            "spacing needs k1-k0 = k2-k1 = min gap, got {g0}, {g1}, min {}",
            p.delta
        )));
    }
    let f = Arc::new(f.clone());
    let cut = (f.head().len() as u64).max(6);
    let half = |pair: u64, parity: u64| -> Result<StructuredSeries> {
        let mut explicit = vec![term(&f, pair)?, term(&f, pair + 1)?];
        for r in (4 + parity..cut).step_by(2) {
            explicit.push(term(&f, r)?);
        }
        assemble(
            &f,
            explicit,
            IndexSet::Stride {
                first: 4 + parity,
                step: 2,
            },
            cut,
        )
    };
    let (a, b) = (half(0, 0)?, half(2, 1)?);
    let (ca, cb) = (
        certify_irreducible_series(&a, cfg)?,
        certify_irreducible_series(&b, cfg)?,
    );
    match (ca, cb) {
        (SeriesCertification::Irreducible(x), SeriesCertification::Irreducible(y)) => Ok((
            SeriesSummand {
                series: a,
                certificate: x,
            },
            SeriesSummand {
                series: b,
                certificate: y,
            },
        )),
        _ => Err(Error::ConditionNotMet(
            "a parity half is not certified irreducible".into(),
        )),
    }
}

/// How the sparse summand picks its ranks: quadratic spacing, or doubling
/// spacing when an arbitrary subset must keep its gaps increasing.
fn sparse_set(first: u64, affine: bool, family: Option<&SubsetSpec>) -> IndexSet {
    match family {
        Some(SubsetSpec::BitStream { .. }) => IndexSet::Doubling { first, unit: 2 },
        _ if affine => IndexSet::Stride { first, step: 2 },
        _ => IndexSet::Quadratic {
            first,
            first_diff: 2,
            increment: 1,
        },
    }
}

/// The sparse summand after re-routing by `K`: its ranks after the `n`-th
/// stay only at `n + i` for `i ∈ K`.
struct Sparse {
    explicit: Vec<(i64, Element)>,
    set: IndexSet,
    from: u64,
}

/// Keeps finitely many sparse ranks explicit and routes the rest through `K`.
/// `explicit` holds `c` terms preceding `base`; `bound` is the exponent
/// every re-routed term must exceed.
fn route(
    f: &StructuredSeries,
    explicit: Vec<(i64, Element)>,
    base: IndexSet,
    from: u64,
    bound: i64,
    k: Option<&SubsetSpec>,
) -> Result<Sparse> {
    let base = base.above(from);
    let Some(k) = k else {
        return Ok(Sparse {
            explicit,
            set: base,
            from,
        });
    };
    k.validate()?;
    let c = explicit.len() as u64;
    let ranks: Vec<u64> = base.iter().take(4096).collect();
    // smallest N >= 1 whose next term lies in the structured part beyond `bound`
    let mut n = c.max(1);
    loop {
        let idx = (n + 1 - c) as usize;
        let r = *ranks.get(idx).ok_or(Error::ExponentOverflow)?;
        if term(f, r)?.0 > bound {
            break;
        }
        n += 1;
    }
    let keep = (n - c) as usize;
    let mut explicit = explicit;
    for &r in &ranks[..=keep] {
        explicit.push(term(f, r)?);
    }
    let cut = ranks[keep] + 1;
    let set = base.pick(IndexSet::Members {
        subset: k.clone(),
        shift: n - c,
    });
    Ok(Sparse {
        explicit,
        set,
        from: cut,
    })
}

/// Two summands when finitely many gaps attain the minimum.
pub(crate) fn finite_case(
    f: &StructuredSeries,
    p: &GapProfile,
    k: Option<&SubsetSpec>,
    cfg: &SearchConfig,
) -> Result<SeriesDecomposition> {
    let fa = Arc::new(f.clone());
    let h_len = f.head().len() as u64;
    let alpha = p.alpha;
    let beta = p.beta.expect("finite case");
    let affine = matches!(f.tail(), TailSpec::AffineGap { .. });
    let start = (alpha + 3).max(beta + 1).max(h_len);
    let h_set = sparse_set(start + 1, affine, k);
    let g_set = match h_set {
        IndexSet::Stride { .. } => IndexSet::Stride {
            first: start,
            step: 2,
        },
        ref s => s.clone().complement().above(start),
    };
    let mut gi = g_set.iter();
    let (t2, t3) = (gi.next().expect("infinite"), gi.next().expect("infinite"));
    let ((k2, d2), (k3, d3)) = (term(f, t2)?, term(f, t3)?);
    let ((u2, v2), (u3, v3)) = (split(&d2)?, split(&d3)?);

    let mut g = vec![term(f, alpha)?, term(f, alpha + 1)?, (k2, u2)];
    g.extend(v3.map(|v| (k3, v)));
    let mut h: Vec<(i64, Element)> = Vec::new();
    for r in (0..start).filter(|&r| r != alpha && r != alpha + 1) {
        h.push(term(f, r)?);
    }
    for r in h_set.iter().take_while(|&r| r <= t3) {
        h.push(term(f, r)?);
    }
    h.extend(v2.map(|v| (k2, v)));
    h.push((k3, u3));
    h.sort_by_key(|(e, _)| *e);

    let bound = k3.max(term(f, beta + 1)?.0);
    let sparse = route(f, h, h_set, t3 + 1, bound, k)?;
    let cut = sparse.from.max(t3 + 1);
    for r in g_set
        .iter()
        .skip_while(|&r| r <= t3)
        .take_while(|&r| r < cut)
    {
        g.push(term(f, r)?);
    }
    let g_tail = match (&sparse.set, &g_set) {
        (IndexSet::Above { set, .. }, IndexSet::Stride { .. })
            if matches!(**set, IndexSet::Stride { .. }) =>
        {
            g_set
        }
        (s, _) => s.clone().complement(),
    };
    let g = assemble(&fa, g, g_tail, cut)?;
    let h = assemble(&fa, sparse.explicit, sparse.set, sparse.from)?;
    let summands = vec![certified(g, cfg)?, certified(h, cfg)?];
    Ok(SeriesDecomposition {
        case: SeriesCase::FiniteMinimalGaps,
        summands,
        profile: Some(p.clone()),
    })
}

/// Three summands when infinitely many gaps attain the minimum.
pub(crate) fn infinite_case(
    f: &StructuredSeries,
    p: &GapProfile,
    k: Option<&SubsetSpec>,
    cfg: &SearchConfig,
) -> Result<SeriesDecomposition> {
    let fa = Arc::new(f.clone());
    let h_len = f.head().len() as u64;
    let gap = |r: u64| -> Result<u64> { Ok((term(f, r + 1)?.0 - term(f, r)?.0) as u64) };
    let i0 = p.alpha;
    let mut i2 = i0 + 2;
    while gap(i2)? != p.delta {
        i2 += 1;
    }
    let (k0, s0) = term(f, i0)?;
    let (k2, s2) = term(f, i2)?;
    let ((u0, v0), (u2, v2)) = (split(&s0)?, split(&s2)?);
    let mut g = vec![(k0, u0), term(f, i0 + 1)?, (k2, u2), term(f, i2 + 1)?];
    let t3 = g[3].0;
    let mut h: Vec<(i64, Element)> = Vec::new();
    for r in (0..i2 + 2).filter(|r| ![i0, i0 + 1, i2, i2 + 1].contains(r)) {
        h.push(term(f, r)?);
    }
    h.extend(v0.map(|v| (k0, v)));
    h.extend(v2.map(|v| (k2, v)));

    let start = (i2 + 2).max(h_len);
    let q = sparse_set(start, false, k);
    let mut h_from = start;
    if !h.iter().any(|(_, c)| c.is_unit()) {
        // give the sparse summand a unit by splitting its first coefficient
        let (e, c) = term(f, start)?;
        let (u, v) = split(&c)?;
        h.push((e, u));
        g.extend(v.map(|v| (e, v)));
        h_from = start + 1;
    }
    h.sort_by_key(|(e, _)| *e);
    let unit_exp = h
        .iter()
        .find(|(_, c)| c.is_unit())
        .map(|(e, _)| *e)
        .expect("unit present");
    let sparse = route(f, h, q.clone(), h_from, t3.max(unit_exp), k)?;
    let cut = sparse.from;
    for r in (start..cut).filter(|&r| !q.contains(r)) {
        g.push(term(f, r)?);
    }
    g.sort_by_key(|(e, _)| *e);
    let g_tail = sparse.set.clone().complement().above(cut);
    let c_g = g.len() as u64;
    let half = |take: &dyn Fn(u64) -> bool, parity: u64| -> Result<StructuredSeries> {
        let explicit: Vec<(i64, Element)> = g
            .iter()
            .enumerate()
            .filter(|(i, _)| take(*i as u64))
            .map(|(_, t)| t.clone())
            .collect();
        let first = (parity + c_g) % 2;
        assemble(
            &fa,
            explicit,
            g_tail.clone().pick(IndexSet::Stride { first, step: 2 }),
            0,
        )
    };
    let a = half(&|i| i < 2 || (i >= 4 && i % 2 == 0), 0)?;
    let b = half(&|i| i == 2 || i == 3 || (i >= 4 && i % 2 == 1), 1)?;
    let h = assemble(&fa, sparse.explicit, sparse.set, sparse.from)?;
    let summands = vec![certified(a, cfg)?, certified(b, cfg)?, certified(h, cfg)?];
    Ok(SeriesDecomposition {
        case: SeriesCase::InfiniteMinimalGaps,
        summands,
        profile: Some(p.clone()),
    })
}

/// Decomposition into at most three certified irreducibles.
pub fn decompose_series(f: &StructuredSeries, cfg: &SearchConfig) -> Result<SeriesDecomposition> {
    check_engine_preconditions(f)?;
    if f.is_polynomial() {
        return polynomial_case(f, cfg);
    }
    if !f.is_basic() {
        return Err(Error::UnsupportedInstance(
            "decomposition of a derived series".into(),
        ));
    }
    if let SeriesCertification::Irreducible(certificate) = certify_irreducible_series(f, cfg)? {
        let summands = vec![SeriesSummand {
            series: f.clone(),
            certificate,
        }];
        return Ok(SeriesDecomposition {
            case: SeriesCase::Itself,
            summands,
            profile: Some(gap_profile(f)?),
        });
    }
    let p = gap_profile(f)?;
    let d = match decompose_series_two(f, cfg) {
        Ok((a, b)) => SeriesDecomposition {
            case: SeriesCase::EqualGaps,
            summands: vec![a, b],
            profile: Some(p),
        },
        Err(Error::ConditionNotMet(_)) if p.j_finite => finite_case(f, &p, None, cfg)?,
        Err(Error::ConditionNotMet(_)) => infinite_case(f, &p, None, cfg)?,
        Err(e) => return Err(e),
    };
    check_sum(f, &d, cfg.check_order)?;
    Ok(d)
}

fn polynomial_case(f: &StructuredSeries, cfg: &SearchConfig) -> Result<SeriesDecomposition> {
    let p = f.head_poly();
    let v = goldbach(&p, cfg)?;
    match v.kind {
        VerdictKind::OutOfScopeMonomial => return Err(Error::FewerThanTwoTerms(p.len())),
        VerdictKind::NotApplicableInstance => {
            return Err(Error::NotApplicable {
                ring: p.ring().name(),
                reason: "polynomial engine".into(),
            })
        }
        _ => {}
    }
    let summands = v
        .summands
        .into_iter()
        .map(|s| {
            Ok(SeriesSummand {
                series: StructuredSeries::from_poly(&s.poly)?,
                certificate: s.certificate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesDecomposition {
        case: SeriesCase::Polynomial,
        summands,
        profile: gap_profile(f).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent_poly::parse_poly;
    use crate::laurent_series::parse_series;
    use crate::semidomain::Ring;

    fn series(s: &str) -> StructuredSeries {
        parse_series(s, &Ring::Natural).unwrap()
    }

    fn nat(s: &str) -> LaurentPoly {
        parse_poly(s, &Ring::Natural, &["x"]).unwrap()
    }

    fn sums_up(
        f: &StructuredSeries,
        d: &SeriesDecomposition,
        orders: impl IntoIterator<Item = i64>,
    ) {
        for n in orders {
            assert_eq!(d.truncated_sum(n).unwrap(), f.truncate(n), "order {n}");
        }
    }

    #[test]
    fn geometric_parity_split() {
        let f = series("tail: const(start=0, d=1, coeffs=[1])");
        let (a, b) = decompose_series_two(&f, &SearchConfig::default()).unwrap();
        assert_eq!(a.series.truncate(10), nat("1 + x + x^4 + x^6 + x^8 + x^10"));
        assert_eq!(
            b.series.truncate(11),
            nat("x^2 + x^3 + x^5 + x^7 + x^9 + x^11")
        );
        let d = decompose_series(&f, &SearchConfig::default()).unwrap();
        assert_eq!(d.case, SeriesCase::EqualGaps);
        sums_up(&f, &d, 0..=300);
    }

    #[test]
    fn doubled_gaps_split() {
        let f = series("tail: const(start=0, d=2, coeffs=[1])");
        let (a, b) = decompose_series_two(&f, &SearchConfig::default()).unwrap();
        assert_eq!(a.series.truncate(12), nat("1 + x^2 + x^8 + x^12"));
        assert_eq!(b.series.truncate(14), nat("x^4 + x^6 + x^10 + x^14"));
    }

    #[test]
    fn spacing_condition() {
        let f = series("tail: affine(start=0, g0=1, a=1, coeffs=[1])");
        assert!(matches!(
            decompose_series_two(&f, &SearchConfig::default()),
            Err(Error::ConditionNotMet(_))
        ));
        let d = decompose_series(&f, &SearchConfig::default()).unwrap();
        assert_eq!(d.case, SeriesCase::Itself);
        assert_eq!(d.summands.len(), 1);
    }

    #[test]
    fn twos_need_unit_transfers() {
        let f = series("head: 2 + 2x; tail: affine(start=3, g0=2, a=1, coeffs=[2])");
        let d = decompose_series(&f, &SearchConfig::default()).unwrap();
        assert_eq!(d.case, SeriesCase::FiniteMinimalGaps);
        assert_eq!(d.summands.len(), 2);
        sums_up(&f, &d, [60, 200, 500]);
        for s in &d.summands {
            assert!(crate::laurent_series::recheck_series(
                &s.series,
                &s.certificate,
                &SearchConfig::default()
            )
            .unwrap());
        }
    }

    #[test]
    fn three_summands_when_minimum_recurs() {
        let cfg = SearchConfig::default();
        for s in [
            "head: 2 + 2x^2; tail: const(start=3, d=1, coeffs=[2])",
            "tail: const(start=0, d=1, coeffs=[2])",
            "head: 3x^-2 + x^3; tail: const(start=4, d=1, coeffs=[1, 2])",
        ] {
            let f = series(s);
            let d = decompose_series(&f, &cfg).unwrap();
            assert_eq!(d.case, SeriesCase::InfiniteMinimalGaps, "{s}");
            assert_eq!(d.summands.len(), 3);
            sums_up(&f, &d, [50, 200, 500]);
        }
    }

    #[test]
    fn polynomials_delegate() {
        let cfg = SearchConfig::default();
        for s in ["1 + x + x^2", "2 + 3x^3", "1 + x"] {
            let p = nat(s);
            let d = decompose_series(&StructuredSeries::from_poly(&p).unwrap(), &cfg).unwrap();
            let v = goldbach(&p, &cfg).unwrap();
            let a: Vec<LaurentPoly> = d.summands.iter().map(|s| s.series.head_poly()).collect();
            let b: Vec<LaurentPoly> = v.summands.iter().map(|s| s.poly.clone()).collect();
            assert_eq!(a, b, "{s}");
        }
    }
}

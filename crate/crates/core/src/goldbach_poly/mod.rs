//! Decomposing Laurent polynomials into sums of two irreducibles.

mod family;
mod multi;
mod rational;

pub use family::{two_thirds_family, two_thirds_target, DecompositionFamilyItem};
pub use multi::goldbach_multi;
pub use rational::goldbach_rational;

use serde_json::{json, Value};

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::irreducibility::{
    certify_lemmas_only, certify_summand, Certification, IrreducibilityCertificate,
};
use crate::laurent_poly::LaurentPoly;
use crate::semidomain::{Element, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    IrreducibleItself,
    SumOfTwo,
    /// A binomial with a unit coefficient (irreducible).
    ExceptionalFormA,
    /// A trinomial of three units (irreducible).
    ExceptionalFormB,
    OutOfScopeMonomial,
    NotApplicableInstance,
}

impl VerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::IrreducibleItself => "IrreducibleItself",
            VerdictKind::SumOfTwo => "SumOfTwo",
            VerdictKind::ExceptionalFormA => "ExceptionalFormA",
            VerdictKind::ExceptionalFormB => "ExceptionalFormB",
            VerdictKind::OutOfScopeMonomial => "OutOfScopeMonomial",
            VerdictKind::NotApplicableInstance => "NotApplicableInstance",
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(
            self,
            VerdictKind::ExceptionalFormA | VerdictKind::ExceptionalFormB
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub poly: LaurentPoly,
    pub certificate: IrreducibilityCertificate,
}

impl Summand {
    pub fn to_json(&self) -> Value {
        self.to_json_named(&[])
    }

    /// JSON form with the given variable names (defaults fill the rest).
    pub fn to_json_named(&self, names: &[String]) -> Value {
        json!({
            "poly": self.poly.to_json(names),
            "text": self.poly.display_with(names),
            "certificate": self.certificate.to_json(),
        })
    }
}

/// Outcome of a decomposition request. Exceptional and irreducible verdicts
/// carry the input itself as their single summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldbachVerdict {
    pub kind: VerdictKind,
    pub summands: Vec<Summand>,
    pub input: LaurentPoly,
}

impl GoldbachVerdict {
    fn bare(kind: VerdictKind, input: &LaurentPoly) -> Self {
        GoldbachVerdict {
            kind,
            summands: Vec::new(),
            input: input.clone(),
        }
    }

    fn itself(kind: VerdictKind, input: &LaurentPoly, cert: IrreducibilityCertificate) -> Self {
        GoldbachVerdict {
            kind,
            summands: vec![Summand {
                poly: input.clone(),
                certificate: cert,
            }],
            input: input.clone(),
        }
    }

    fn pair(input: &LaurentPoly, mut summands: Vec<Summand>) -> Self {
        summands.sort_by_key(|s| {
            s.poly
                .flat_terms()
                .into_iter()
                .map(|t| t.exp)
                .collect::<Vec<_>>()
        });
        GoldbachVerdict {
            kind: VerdictKind::SumOfTwo,
            summands,
            input: input.clone(),
        }
    }

    /// Sum of the summands (the input for two-part verdicts).
    pub fn total(&self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.input.ring().clone());
        for s in &self.summands {
            acc = acc.add(&s.poly)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        self.to_json_named(&[])
    }

    pub fn to_json_named(&self, names: &[String]) -> Value {
        json!({
            "kind": self.kind.name(),
            "summands": self.summands.iter().map(|s| s.to_json_named(names)).collect::<Vec<_>>(),
            "input": self.input.to_json(names),
        })
    }
}

/// Routes `f` to the entry point for its instance: nested instances to
/// [`goldbach_multi`], `ℚ≥0` to [`goldbach_rational`], the rest to [`goldbach`].
pub fn goldbach_auto(f: &LaurentPoly, cfg: &SearchConfig) -> Result<GoldbachVerdict> {
    match f.ring() {
        Ring::Laurent(_) => goldbach_multi(f, cfg),
        Ring::NonnegRational => goldbach_rational(f, cfg),
        _ => goldbach(f, cfg),
    }
}

/// Certificate for a constructed summand: the structural criteria first,
/// then the full search.
pub(crate) fn certify_part(
    p: &LaurentPoly,
    cfg: &SearchConfig,
) -> Result<IrreducibilityCertificate> {
    if let Some(c) = certify_lemmas_only(p, cfg)? {
        return Ok(c);
    }
    match certify_summand(p, cfg)? {
        Certification::Irreducible(c) => Ok(c),
        Certification::NotIrreducible(w) => Err(Error::Defect(format!(
            "constructed summand {p} factors as ({}) * ({})",
            w.g, w.h
        ))),
        Certification::Unknown(r) => Err(Error::Inconclusive(format!("summand {p}: {r}"))),
    }
}

fn summands(parts: Vec<LaurentPoly>, cfg: &SearchConfig) -> Result<Vec<Summand>> {
    parts
        .into_iter()
        .map(|p| {
            let certificate = certify_part(&p, cfg)?;
            Ok(Summand {
                poly: p,
                certificate,
            })
        })
        .collect()
}

fn poly(ring: &crate::semidomain::Ring, items: Vec<(i64, Element)>) -> Result<LaurentPoly> {
    LaurentPoly::from_terms(ring.clone(), items)
}

/// Whether the instance meets the hypotheses of the decomposition theorem.
pub fn applicable(f: &LaurentPoly) -> bool {
    let d = f.ring().descriptor();
    d.additively_reduced && d.additively_atomic && d.atoms_are_units
}

/// Sum of at most two irreducibles, or the exceptional verdict.
pub fn goldbach(f: &LaurentPoly, cfg: &SearchConfig) -> Result<GoldbachVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !applicable(f) {
        return Ok(GoldbachVerdict::bare(VerdictKind::NotApplicableInstance, f));
    }
    match f.len() {
        1 => Ok(GoldbachVerdict::bare(VerdictKind::OutOfScopeMonomial, f)),
        2 => binomial(f, cfg),
        3 => trinomial(f, cfg),
        _ => general(f, cfg),
    }
}

fn top_down(f: &LaurentPoly) -> Vec<(i64, Element)> {
    f.terms().rev().map(|(e, c)| (e, c.clone())).collect()
}

fn binomial(f: &LaurentPoly, cfg: &SearchConfig) -> Result<GoldbachVerdict> {
    let t = top_down(f);
    let ((k0, a), (k1, b)) = (t[0].clone(), t[1].clone());
    if a.is_unit() || b.is_unit() {
        return Ok(GoldbachVerdict::itself(
            VerdictKind::ExceptionalFormA,
            f,
            certify_part(f, cfg)?,
        ));
    }
    let sa = a.unit_decompose()?;
    let sb = b.unit_decompose()?;
    let r = f.ring();
    let g = poly(r, vec![(k0, sa.u), (k1, sb.v)])?;
    let h = poly(r, vec![(k0, sa.v), (k1, sb.u)])?;
    Ok(GoldbachVerdict::pair(f, summands(vec![g, h], cfg)?))
}

fn trinomial(f: &LaurentPoly, cfg: &SearchConfig) -> Result<GoldbachVerdict> {
    let t = top_down(f);
    let ((k0, a), (k1, b), (k2, c)) = (t[0].clone(), t[1].clone(), t[2].clone());
    if a.is_unit() && b.is_unit() && c.is_unit() {
        return Ok(GoldbachVerdict::itself(
            VerdictKind::ExceptionalFormB,
            f,
            certify_part(f, cfg)?,
        ));
    }
    let r = f.ring();
    let parts = if b.is_unit() {
        if !a.is_unit() {
            let sa = a.unit_decompose()?;
            vec![
                poly(r, vec![(k0, sa.u), (k2, c)])?,
                poly(r, vec![(k0, sa.v), (k1, b)])?,
            ]
        } else {
            let sc = c.unit_decompose()?;
            vec![
                poly(r, vec![(k2, sc.u), (k0, a)])?,
                poly(r, vec![(k2, sc.v), (k1, b)])?,
            ]
        }
    } else {
        let sb = b.unit_decompose()?;
        let sa = a.unit_decompose()?;
        vec![
            poly(r, vec![(k0, sa.u), (k1, sb.v)])?,
            poly(r, vec![(k0, sa.v), (k1, sb.u), (k2, c)])?,
        ]
    };
    Ok(GoldbachVerdict::pair(f, summands(parts, cfg)?))
}

/// The construction for four or more terms.
fn general(f: &LaurentPoly, cfg: &SearchConfig) -> Result<GoldbachVerdict> {
    let (g, shift) = f.normalize_shift()?;
    let parts = general_parts(&g, cfg, true)?;
    let parts = parts
        .into_iter()
        .map(|p| p.shift(shift))
        .collect::<Result<Vec<_>>>()?;
    Ok(GoldbachVerdict::pair(f, summands(parts, cfg)?))
}

/// `f` normalized to minimum exponent 0 with at least four terms.
fn general_parts(
    f: &LaurentPoly,
    cfg: &SearchConfig,
    allow_mirror: bool,
) -> Result<Vec<LaurentPoly>> {
    let r = f.ring();
    let t = top_down(f);
    let n = t.len() - 1;
    let top = t[0].0;
    let s0 = t[0].1.unit_decompose()?;
    let sn = t[n].1.unit_decompose()?;
    // 2·k compared with the top exponent decides the half
    let upper: Vec<(i64, Element)> = t[1..n]
        .iter()
        .filter(|(k, _)| 2 * k > top)
        .cloned()
        .collect();
    let lower: Vec<(i64, Element)> = t[1..n]
        .iter()
        .filter(|(k, _)| 2 * k < top)
        .cloned()
        .collect();
    let mid: Option<(i64, Element)> = t[1..n].iter().find(|(k, _)| 2 * k == top).cloned();

    let mut star = upper.clone();
    star.push((top, s0.v.clone()));
    star.push((0, sn.u.clone()));
    let star = poly(r, star)?;
    let mut low = lower.clone();
    low.push((top, s0.u.clone()));
    low.push((0, sn.v.clone()));
    let low = poly(r, low)?;

    if star.is_unit() {
        // s0 is a unit and nothing lies strictly above the middle
        let (k1, s1) = t[1].clone();
        let first = poly(r, vec![(k1, s1), (0, sn.u)])?;
        let mut rest = vec![(top, t[0].1.clone()), (0, sn.v)];
        rest.extend(t[2..n].iter().cloned());
        return Ok(vec![first, poly(r, rest)?]);
    }
    if low.is_unit() {
        if !allow_mirror {
            return Err(Error::Defect("both halves are units".into()));
        }
        let m = f.mirror()?;
        let (m, s) = m.normalize_shift()?;
        let parts = general_parts(&m, cfg, false)?;
        return parts
            .into_iter()
            .map(|p| p.shift(s)?.mirror())
            .collect::<Result<Vec<_>>>();
    }
    match mid {
        None => Ok(vec![star, low]),
        Some((kj, sj)) => {
            let mono = LaurentPoly::monomial(sj, kj);
            let star_j = star.add(&mono)?;
            if certify_lemmas_only(&star_j, cfg)?.is_some() {
                return Ok(vec![star_j, low]);
            }
            let low_j = low.add(&mono)?;
            if certify_lemmas_only(&low_j, cfg)?.is_some() {
                return Ok(vec![star, low_j]);
            }
            Err(Error::Defect(format!(
                "no certified attachment of the middle term of {f}"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent_poly::parse_poly;
    use crate::semidomain::Ring;

    fn nat(s: &str) -> LaurentPoly {
        parse_poly(s, &Ring::Natural, &["x"]).unwrap()
    }

    fn pair(v: &GoldbachVerdict) -> Vec<LaurentPoly> {
        let mut p: Vec<LaurentPoly> = v.summands.iter().map(|s| s.poly.clone()).collect();
        p.sort();
        p
    }

    fn expect_pair(f: &str, a: &str, b: &str) {
        let cfg = SearchConfig::default();
        let v = goldbach(&nat(f), &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::SumOfTwo, "{f}");
        let mut want = vec![nat(a), nat(b)];
        want.sort();
        assert_eq!(pair(&v), want, "{f}");
        assert_eq!(v.total().unwrap(), nat(f));
    }

    #[test]
    fn spec_examples() {
        let cfg = SearchConfig::default();
        assert_eq!(
            goldbach(&nat("x + 1"), &cfg).unwrap().kind,
            VerdictKind::ExceptionalFormA
        );
        assert_eq!(
            goldbach(&nat("x^2 + x + 1"), &cfg).unwrap().kind,
            VerdictKind::ExceptionalFormB
        );
        assert_eq!(
            goldbach(&nat("x^3"), &cfg).unwrap().kind,
            VerdictKind::OutOfScopeMonomial
        );
        expect_pair("2x + 3", "x + 2", "x + 1");
        expect_pair("x^3 + x^2 + x + 1", "x^2 + 1", "x^3 + x");
        expect_pair("x^4 + x^3 + x^2 + x + 1", "x^3 + x^2 + 1", "x^4 + x");
    }

    #[test]
    fn trinomial_cases() {
        // b unit, a not: [u_a x^2 + c] + [v_a x^2 + b x]
        expect_pair("2x^2 + x + 1", "x^2 + 1", "x^2 + x");
        // b unit, a unit, c not
        expect_pair("x^2 + x + 2", "1 + x^2", "1 + x");
        // b not a unit
        expect_pair("x^2 + 2x + 1", "x^2 + x", "x + 1");
        expect_pair("2x^2 + 2x + 2", "x^2 + x", "x^2 + x + 2");
    }

    #[test]
    fn general_mirror_case() {
        let cfg = SearchConfig::default();
        for s in [
            "x^5 + x^4 + x + 1",
            "x^6 + x^5 + x^4 + 1",
            "x^6 + x^2 + x + 1",
            "3x^4 + x^2 + 2",
        ] {
            let f = nat(s);
            let v = goldbach(&f, &cfg).unwrap();
            assert_eq!(v.kind, VerdictKind::SumOfTwo, "{s}");
            assert_eq!(v.total().unwrap(), f);
        }
    }

    #[test]
    fn rational_not_applicable() {
        let cfg = SearchConfig::default();
        let f = parse_poly("x + 1/2", &Ring::NonnegRational, &["x"]).unwrap();
        assert_eq!(
            goldbach(&f, &cfg).unwrap().kind,
            VerdictKind::NotApplicableInstance
        );
    }
}

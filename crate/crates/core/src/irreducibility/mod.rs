//! Irreducibility certificates and brute-force oracles.

mod cert;
mod enumerate;
pub(crate) mod flat;

pub use cert::{CertKind, Certification, FactorWitness, IrreducibilityCertificate, SearchBounds};
pub use enumerate::{enumerate_goldbach_bruteforce, find_goldbach_bruteforce, IrreducibleCache};

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::laurent_poly::LaurentPoly;
use crate::semidomain::Element;

/// First structural criterion guaranteeing that every factorization of `f`
/// has a monomial factor, if any applies.
pub fn monolithic_sufficient(f: &LaurentPoly) -> Result<Option<CertKind>> {
    let e = f.support();
    let n = e.len();
    if n < 2 {
        return Err(Error::FewerThanTwoTerms(n));
    }
    if n == 2 {
        return Ok(Some(CertKind::BinomialMonolithic));
    }
    let (lo, hi) = (e[0] as i128, e[n - 1] as i128);
    let second_top = e[n - 2] as i128;
    let second_low = e[1] as i128;
    let lower = 2 * second_top < lo + hi || (n > 3 && 2 * second_top == lo + hi);
    if lower {
        return Ok(Some(CertKind::MonolithicLowerHalf));
    }
    let upper = 2 * second_low > lo + hi || (n > 3 && 2 * second_low == lo + hi);
    if upper {
        return Ok(Some(CertKind::MonolithicUpperHalf));
    }
    Ok(None)
}

/// The coefficient factor `d` and cofactor `f / d` when the coefficients
/// share a nonunit divisor.
fn content_witness(f: &LaurentPoly, cfg: &SearchConfig) -> Result<Option<FactorWitness>> {
    let coeffs = f.coeffs();
    match Element::common_nonunit_divisor(&coeffs, cfg)? {
        None => Ok(None),
        Some(d) => {
            let mut h = LaurentPoly::zero(f.ring().clone());
            for (e, c) in f.terms() {
                let q = c
                    .div_exact(&d)
                    .ok_or_else(|| Error::Defect(format!("{d} does not divide {c}")))?;
                h.add_term(e, q)?;
            }
            Ok(Some(FactorWitness {
                g: LaurentPoly::constant(d),
                h,
            }))
        }
    }
}

fn trinomial_unit_middle(f: &LaurentPoly) -> bool {
    f.len() == 3
        && f.ring().descriptor().atoms_are_units
        && f.terms().nth(1).is_some_and(|(_, c)| c.is_unit())
}

/// Certificate from the structural criteria alone (no brute force).
///
/// `Ok(None)` means no criterion applied; a failing gcd is reported as
/// [`Certification::NotIrreducible`] by [`certify_irreducible`] instead.
pub fn certify_lemmas_only(
    f: &LaurentPoly,
    cfg: &SearchConfig,
) -> Result<Option<IrreducibilityCertificate>> {
    if f.len() == 1 {
        return certify_monomial(f, cfg, false).map(Certification::into_certificate);
    }
    let kind = match monolithic_sufficient(f)? {
        Some(k) => k,
        None if trinomial_unit_middle(f) => CertKind::TrinomialUnitMiddle,
        None => return Ok(None),
    };
    if kind != CertKind::TrinomialUnitMiddle && !Element::gcd_contains_one(&f.coeffs(), cfg)? {
        return Ok(None);
    }
    Ok(Some(IrreducibilityCertificate::lemma(kind)))
}

/// Irreducibility of a polynomial with at least two terms.
///
/// Structural criteria come first; when none applies and the instance has
/// finitely enumerable splits, the brute-force factor search decides.
pub fn certify_irreducible(f: &LaurentPoly, cfg: &SearchConfig) -> Result<Certification> {
    if f.len() < 2 {
        return Err(Error::FewerThanTwoTerms(f.len()));
    }
    if let Some(w) = content_witness(f, cfg)? {
        return Ok(Certification::NotIrreducible(w));
    }
    let kind = match monolithic_sufficient(f)? {
        Some(k) => Some(k),
        None if trinomial_unit_middle(f) => Some(CertKind::TrinomialUnitMiddle),
        None => None,
    };
    if let Some(kind) = kind {
        return Ok(Certification::Irreducible(
            IrreducibilityCertificate::lemma(kind),
        ));
    }
    brute_force(f, cfg)
}

fn brute_force(f: &LaurentPoly, cfg: &SearchConfig) -> Result<Certification> {
    if !f.ring().descriptor().supports_exhaustive_split {
        return Ok(Certification::Unknown(format!(
            "no criterion applies and splits over {} are not enumerable",
            f.ring().name()
        )));
    }
    match flat::factor(f, cfg) {
        Ok(Some((g, h))) => Ok(Certification::NotIrreducible(FactorWitness { g, h })),
        Ok(None) => Ok(Certification::Irreducible(IrreducibilityCertificate {
            kind: CertKind::BruteForceNoFactor,
            gcd: true,
            bounds: Some(SearchBounds::from(cfg)),
            regularity_index: None,
            inner: None,
        })),
        Err(
            e @ (Error::DegreeBoundExceeded { .. }
            | Error::MassBoundExceeded { .. }
            | Error::BudgetExhausted(_)
            | Error::SearchExhausted(_)),
        ) => Ok(Certification::Unknown(e.to_string())),
        Err(e) => Err(e),
    }
}

fn certify_monomial(f: &LaurentPoly, cfg: &SearchConfig, full: bool) -> Result<Certification> {
    let (e, c) = f.terms().next().ok_or(Error::ZeroPolynomial)?;
    match c {
        Element::Laurent(p) => {
            let inner = if full {
                certify_summand(p, cfg)?
            } else {
                match certify_lemmas_only(p, cfg)? {
                    Some(c) => Certification::Irreducible(c),
                    None => Certification::Unknown("coefficient not certified".into()),
                }
            };
            Ok(match inner {
                Certification::Irreducible(ic) => {
                    Certification::Irreducible(IrreducibilityCertificate {
                        kind: CertKind::MonomialAtomCoefficient,
                        gcd: true,
                        bounds: None,
                        regularity_index: None,
                        inner: Some(Box::new(ic)),
                    })
                }
                Certification::NotIrreducible(w) => Certification::NotIrreducible(FactorWitness {
                    g: LaurentPoly::monomial(Element::Laurent(w.g), e),
                    h: LaurentPoly::constant(Element::Laurent(w.h)),
                }),
                u => u,
            })
        }
        c => match c.is_atom(cfg) {
            Ok(true) => Ok(Certification::Irreducible(IrreducibilityCertificate {
                kind: CertKind::PrimeCoefficient,
                gcd: false,
                bounds: None,
                regularity_index: None,
                inner: None,
            })),
            Ok(false) if c.is_unit() => {
                Ok(Certification::Unknown("a unit is not irreducible".into()))
            }
            Ok(false) => match flat::factor(f, cfg) {
                Ok(Some((g, h))) => Ok(Certification::NotIrreducible(FactorWitness { g, h })),
                Ok(None) => Err(Error::Defect(format!(
                    "reducible coefficient {c} without a factor"
                ))),
                Err(e) => Ok(Certification::Unknown(e.to_string())),
            },
            Err(e) if e.is_inconclusive() || e.code() == "UnsupportedInstance" => {
                Ok(Certification::Unknown(e.to_string()))
            }
            Err(e) => Err(e),
        },
    }
}

/// Like [`certify_irreducible`], but monomials are accepted as well (a
/// monomial is irreducible exactly when its coefficient is).
pub fn certify_summand(f: &LaurentPoly, cfg: &SearchConfig) -> Result<Certification> {
    match f.len() {
        0 => Err(Error::ZeroPolynomial),
        1 => certify_monomial(f, cfg, true),
        _ => certify_irreducible(f, cfg),
    }
}

/// Nontrivial factorization over `ℕ₀` or `ℕ₀[√2]` (nested allowed), if one
/// exists within the configured degree and mass bounds.
pub fn factor_bruteforce(f: &LaurentPoly, cfg: &SearchConfig) -> Result<Option<FactorWitness>> {
    if !f.ring().descriptor().supports_exhaustive_split {
        return Err(Error::UnsupportedInstance(f.ring().base().name()));
    }
    Ok(flat::factor(f, cfg)?.map(|(g, h)| FactorWitness { g, h }))
}

/// Decides irreducibility, failing with `Inconclusive` when it cannot.
pub fn is_irreducible(f: &LaurentPoly, cfg: &SearchConfig) -> Result<bool> {
    if f.is_unit() {
        return Ok(false);
    }
    match certify_summand(f, cfg)? {
        Certification::Irreducible(_) => Ok(true),
        Certification::NotIrreducible(_) => Ok(false),
        Certification::Unknown(r) => Err(Error::Inconclusive(r)),
    }
}

/// Irreducibility decided by the brute-force oracle alone (plus the
/// coefficient gcd), independent of the structural criteria.
pub fn oracle_irreducible(f: &LaurentPoly, cfg: &SearchConfig) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Ok(false);
    }
    Ok(factor_bruteforce(f, cfg)?.is_none())
}

/// Re-validates `cert` against `f` from scratch.
pub fn recheck(
    f: &LaurentPoly,
    cert: &IrreducibilityCertificate,
    cfg: &SearchConfig,
) -> Result<bool> {
    let gcd_ok = || -> Result<bool> { Element::gcd_contains_one(&f.coeffs(), cfg) };
    Ok(match cert.kind {
        CertKind::BinomialMonolithic
        | CertKind::MonolithicLowerHalf
        | CertKind::MonolithicUpperHalf => {
            f.len() >= 2 && support_inequality(f, cert.kind) && gcd_ok()?
        }
        CertKind::TrinomialUnitMiddle => trinomial_unit_middle(f),
        CertKind::BruteForceNoFactor => {
            let c = cert
                .bounds
                .as_ref()
                .map(|b| b.config())
                .unwrap_or_else(|| cfg.clone());
            f.len() >= 2 && gcd_ok()? && factor_bruteforce(f, &c)?.is_none()
        }
        CertKind::PrimeCoefficient => {
            f.len() == 1
                && f.terms().all(|(_, c)| {
                    !matches!(c, Element::Laurent(_)) && c.is_atom(cfg).unwrap_or(false)
                })
        }
        CertKind::MonomialAtomCoefficient => match (f.len(), f.terms().next(), &cert.inner) {
            (1, Some((_, Element::Laurent(p))), Some(inner)) => recheck(p, inner, cfg)?,
            _ => false,
        },
        CertKind::HyperMonolithic | CertKind::EventuallyIncreasingGaps => false,
    })
}

/// The support inequality of the named criterion, verbatim.
fn support_inequality(f: &LaurentPoly, kind: CertKind) -> bool {
    let e = f.support();
    let n = e.len();
    if n < 2 {
        return false;
    }
    let (lo, hi) = (e[0] as i128, e[n - 1] as i128);
    match kind {
        CertKind::BinomialMonolithic => n == 2,
        CertKind::MonolithicLowerHalf => {
            let s = e[n - 2] as i128;
            2 * s < lo + hi || (n > 3 && 2 * s == lo + hi)
        }
        CertKind::MonolithicUpperHalf => {
            let s = e[1] as i128;
            2 * s > lo + hi || (n > 3 && 2 * s == lo + hi)
        }
        _ => false,
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

    #[test]
    fn criteria() {
        assert_eq!(
            monolithic_sufficient(&nat("x^3 + x")).unwrap(),
            Some(CertKind::BinomialMonolithic)
        );
        assert_eq!(
            monolithic_sufficient(&nat("x^4 + x + 1")).unwrap(),
            Some(CertKind::MonolithicLowerHalf)
        );
        assert_eq!(
            monolithic_sufficient(&nat("x^4 + x^3 + 1")).unwrap(),
            Some(CertKind::MonolithicUpperHalf)
        );
        assert_eq!(monolithic_sufficient(&nat("x^2 + x + 1")).unwrap(), None);
        assert_eq!(
            monolithic_sufficient(&nat("x")).unwrap_err().code(),
            "FewerThanTwoTerms"
        );
    }

    #[test]
    fn certify_examples() {
        let cfg = SearchConfig::default();
        let c = certify_irreducible(&nat("x + 1"), &cfg).unwrap();
        assert_eq!(c.certificate().unwrap().kind, CertKind::BinomialMonolithic);
        match certify_irreducible(&nat("2x + 4"), &cfg).unwrap() {
            Certification::NotIrreducible(w) => {
                assert_eq!(w.g, nat("2"));
                assert_eq!(w.h, nat("x + 2"));
            }
            other => panic!("{other:?}"),
        }
        let c = certify_irreducible(&nat("x^2 + x + 1"), &cfg).unwrap();
        assert!(c.certificate().is_some());
        assert!(matches!(
            certify_irreducible(&nat("x^2 + 2x + 1"), &cfg).unwrap(),
            Certification::NotIrreducible(_)
        ));
    }

    #[test]
    fn rechecks() {
        let cfg = SearchConfig::default();
        for s in [
            "x + 1",
            "x^4 + x + 1",
            "x^4 + x^3 + 1",
            "x^2 + x + 1",
            "x^2 + 2x + 2",
            "3x^2",
        ] {
            let f = nat(s);
            let c = certify_summand(&f, &cfg)
                .unwrap()
                .into_certificate()
                .unwrap();
            assert!(recheck(&f, &c, &cfg).unwrap(), "{s}");
        }
        let c = IrreducibilityCertificate::lemma(CertKind::MonolithicLowerHalf);
        assert!(!recheck(&nat("x^4 + x^3 + 1"), &c, &cfg).unwrap());
    }

    #[test]
    fn monomials() {
        let cfg = SearchConfig::default();
        assert!(is_irreducible(&nat("2x"), &cfg).unwrap());
        assert!(!is_irreducible(&nat("4x"), &cfg).unwrap());
        assert!(!is_irreducible(&nat("x"), &cfg).unwrap());
        let f = parse_poly("(x + 1)y", &Ring::Natural, &["x", "y"]).unwrap();
        let c = certify_summand(&f, &cfg)
            .unwrap()
            .into_certificate()
            .unwrap();
        assert_eq!(c.kind, CertKind::MonomialAtomCoefficient);
        assert!(recheck(&f, &c, &cfg).unwrap());
    }

    #[test]
    fn quadratic_content() {
        let cfg = SearchConfig::default();
        let f = parse_poly("r2x^2 + r2x + r2", &Ring::QuadraticNat, &["x"]).unwrap();
        assert!(matches!(
            certify_irreducible(&f, &cfg).unwrap(),
            Certification::NotIrreducible(_)
        ));
    }

    #[test]
    fn json_shape() {
        let c = IrreducibilityCertificate::lemma(CertKind::BinomialMonolithic);
        assert_eq!(
            c.to_json(),
            serde_json::json!({"kind": "BinomialMonolithic", "gcd": true})
        );
    }
}

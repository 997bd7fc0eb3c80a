use super::{applicable, certify_part, goldbach, poly, GoldbachVerdict, Summand, VerdictKind};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::irreducibility::{CertKind, IrreducibilityCertificate};
use crate::laurent_poly::LaurentPoly;
use crate::semidomain::Element;

fn mass_at_most(f: &LaurentPoly, bound: u64) -> bool {
    match f.mass() {
        Element::Natural(n) => n <= bound.into(),
        m => m
            .min_unit_summands(bound as u32, &SearchConfig::default())
            .ok()
            .flatten()
            .is_some(),
    }
}

/// Decomposition over a nested instance, where the outermost variable is
/// handled by [`goldbach`] and a binomial with a unit coefficient whose
/// other coefficient holds three or more units is split off as a monomial.
///
/// With one variable over `ℕ₀` this realizes the statement that every `f`
/// with `f(1) > 3` and two or more terms is a sum of two irreducibles.
pub fn goldbach_multi(f: &LaurentPoly, cfg: &SearchConfig) -> Result<GoldbachVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !applicable(f) {
        return Ok(GoldbachVerdict::bare(VerdictKind::NotApplicableInstance, f));
    }
    if f.flat_terms().len() <= 1 {
        return Ok(GoldbachVerdict::bare(VerdictKind::OutOfScopeMonomial, f));
    }
    if f.len() == 1 {
        let (t, c) = f
            .terms()
            .next()
            .map(|(e, c)| (e, c.clone()))
            .expect("one term");
        let inner = match c {
            Element::Laurent(p) => p,
            _ => unreachable!("a single flat term was handled above"),
        };
        let v = goldbach_multi(&inner, cfg)?;
        let lift = |s: Summand| Summand {
            poly: LaurentPoly::monomial(Element::Laurent(s.poly), t),
            certificate: IrreducibilityCertificate {
                kind: CertKind::MonomialAtomCoefficient,
                gcd: true,
                bounds: None,
                regularity_index: None,
                inner: Some(Box::new(s.certificate)),
            },
        };
        return Ok(GoldbachVerdict {
            kind: v.kind,
            summands: v.summands.into_iter().map(lift).collect(),
            input: f.clone(),
        });
    }
    if mass_at_most(f, 3) || f.len() != 2 {
        return goldbach(f, cfg);
    }
    let mut t: Vec<(i64, Element)> = f.terms().map(|(e, c)| (e, c.clone())).collect();
    if !t[0].1.is_unit() && !t[1].1.is_unit() {
        return goldbach(f, cfg);
    }
    if !t[0].1.is_unit() {
        t.swap(0, 1);
    }
    // t[0] carries the unit, t[1] three or more units
    let ((t0, a), (t1, b)) = (t[0].clone(), t[1].clone());
    let s1 = b.unit_decompose()?;
    let s2 = s1.v.unit_decompose()?;
    let r = f.ring();
    let g = poly(r, vec![(t0, a), (t1, s2.v)])?;
    let h = poly(r, vec![(t1, s1.u.add(&s2.u)?)])?;
    let parts = vec![g, h];
    let summands = parts
        .into_iter()
        .map(|p| {
            let certificate = certify_part(&p, cfg)?;
            Ok(Summand {
                poly: p,
                certificate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GoldbachVerdict::pair(f, summands))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent_poly::parse_poly;
    use crate::semidomain::Ring;

    fn nat2(s: &str) -> LaurentPoly {
        parse_poly(s, &Ring::Natural, &["x", "y"]).unwrap()
    }

    fn sorted(v: &GoldbachVerdict) -> Vec<LaurentPoly> {
        let mut p: Vec<LaurentPoly> = v.summands.iter().map(|s| s.poly.clone()).collect();
        p.sort();
        p
    }

    #[test]
    fn bivariate_examples() {
        let cfg = SearchConfig::default();
        let v = goldbach_multi(&nat2("x*y + x + y + 1"), &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::SumOfTwo);
        let mut want = vec![nat2("x*y + 1"), nat2("y + x")];
        want.sort();
        assert_eq!(sorted(&v), want);
        assert_eq!(
            goldbach_multi(&nat2("x + y"), &cfg).unwrap().kind,
            VerdictKind::ExceptionalFormA
        );
        assert!(goldbach_multi(&nat2("2x*y + x"), &cfg)
            .unwrap()
            .kind
            .is_exceptional());
        assert_eq!(
            goldbach_multi(&nat2("3x*y"), &cfg).unwrap().kind,
            VerdictKind::OutOfScopeMonomial
        );
    }

    #[test]
    fn unit_plus_heavy_coefficient() {
        let cfg = SearchConfig::default();
        let f = parse_poly("x + 3", &Ring::Natural, &["x"]).unwrap();
        assert_eq!(
            goldbach(&f, &cfg).unwrap().kind,
            VerdictKind::ExceptionalFormA
        );
        let v = goldbach_multi(&f, &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::SumOfTwo);
        assert_eq!(v.total().unwrap(), f);
        let f = nat2("y + 3x + 2");
        let v = goldbach_multi(&f, &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::SumOfTwo);
        assert_eq!(v.total().unwrap(), f);
    }

    #[test]
    fn outer_monomial_recurses() {
        let cfg = SearchConfig::default();
        let f = nat2("(2x + 3)y^2");
        let v = goldbach_multi(&f, &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::SumOfTwo);
        assert_eq!(v.total().unwrap(), f);
        assert!(v
            .summands
            .iter()
            .all(|s| s.certificate.kind == CertKind::MonomialAtomCoefficient));
    }
}

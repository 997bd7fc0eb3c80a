use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{goldbach, GoldbachVerdict, Summand, VerdictKind};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::irreducibility::{certify_lemmas_only, monolithic_sufficient};
use crate::laurent_poly::LaurentPoly;
use crate::semidomain::{Element, Ring};

fn rational_terms(f: &LaurentPoly) -> Result<Vec<(i64, BigRational)>> {
    f.terms()
        .map(|(e, c)| match c {
            Element::Rational(q) => Ok((e, q.clone())),
            _ => Err(Error::UnsupportedInstance(f.ring().name())),
        })
        .collect()
}

fn lemma_summand(p: LaurentPoly, cfg: &SearchConfig) -> Result<Summand> {
    let certificate = certify_lemmas_only(&p, cfg)?
        .ok_or_else(|| Error::Defect(format!("summand {p} has no structural certificate")))?;
    Ok(Summand {
        poly: p,
        certificate,
    })
}

/// Decomposition over `ℚ≥0`: clear denominators, decompose over `ℕ₀`, and
/// scale back; binomials and trinomials are handled directly. Summands are
/// certified by the structural criteria only.
pub fn goldbach_rational(f: &LaurentPoly, cfg: &SearchConfig) -> Result<GoldbachVerdict> {
    if *f.ring() != Ring::NonnegRational {
        return Ok(GoldbachVerdict::bare(VerdictKind::NotApplicableInstance, f));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let terms = rational_terms(f)?;
    match terms.len() {
        1 => return Ok(GoldbachVerdict::bare(VerdictKind::OutOfScopeMonomial, f)),
        2 => {
            let s = lemma_summand(f.clone(), cfg)?;
            return Ok(GoldbachVerdict::itself(
                VerdictKind::IrreducibleItself,
                f,
                s.certificate,
            ));
        }
        3 => {
            if monolithic_sufficient(f)?.is_some() {
                let s = lemma_summand(f.clone(), cfg)?;
                return Ok(GoldbachVerdict::itself(
                    VerdictKind::IrreducibleItself,
                    f,
                    s.certificate,
                ));
            }
            // halve the middle coefficient into two binomials
            let half = &terms[1].1 / BigRational::from_integer(BigInt::from(2));
            let g = LaurentPoly::from_terms(
                Ring::NonnegRational,
                [
                    (terms[2].0, Element::Rational(terms[2].1.clone())),
                    (terms[1].0, Element::Rational(half.clone())),
                ],
            )?;
            let h = LaurentPoly::from_terms(
                Ring::NonnegRational,
                [
                    (terms[1].0, Element::Rational(half)),
                    (terms[0].0, Element::Rational(terms[0].1.clone())),
                ],
            )?;
            let parts = vec![lemma_summand(g, cfg)?, lemma_summand(h, cfg)?];
            return Ok(GoldbachVerdict::pair(f, parts));
        }
        _ => {}
    }
    let n = terms
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let scale = BigRational::from_integer(n.clone());
    let scaled = LaurentPoly::from_terms(
        Ring::Natural,
        terms.iter().map(|(e, q)| {
            let v = (q * &scale).to_integer().to_biguint().expect("nonnegative");
            (*e, Element::Natural(v))
        }),
    )?;
    let v = goldbach(&scaled, cfg)?;
    if v.kind != VerdictKind::SumOfTwo {
        return Err(Error::Defect(format!(
            "{scaled} did not split: {}",
            v.kind.name()
        )));
    }
    let mut parts = Vec::with_capacity(2);
    for s in v.summands {
        let back = LaurentPoly::from_terms(
            Ring::NonnegRational,
            s.poly.terms().map(|(e, c)| {
                let c = match c {
                    Element::Natural(c) => BigRational::new(BigInt::from(c.clone()), n.clone()),
                    _ => unreachable!("natural summand"),
                };
                (e, Element::Rational(c))
            }),
        )?;
        parts.push(lemma_summand(back, cfg)?);
    }
    Ok(GoldbachVerdict::pair(f, parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent_poly::parse_poly;

    fn q(s: &str) -> LaurentPoly {
        parse_poly(s, &Ring::NonnegRational, &["x"]).unwrap()
    }

    #[test]
    fn spec_examples() {
        let cfg = SearchConfig::default();
        assert_eq!(
            goldbach_rational(&q("1/2x + 3/2"), &cfg).unwrap().kind,
            VerdictKind::IrreducibleItself
        );
        assert_eq!(
            goldbach_rational(&q("4/3x + 2"), &cfg).unwrap().kind,
            VerdictKind::IrreducibleItself
        );
        let f = q("1/3x^4 + x^3 + x^2 + x + 1/3");
        let v = goldbach_rational(&f, &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::SumOfTwo);
        assert_eq!(v.total().unwrap(), f);
        assert!(v.summands.iter().all(|s| s.certificate.is_lemma_based()));
    }

    #[test]
    fn trinomials() {
        let cfg = SearchConfig::default();
        let f = q("x^2 + 2x + 1");
        let v = goldbach_rational(&f, &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::SumOfTwo);
        assert_eq!(v.total().unwrap(), f);
        assert_eq!(
            goldbach_rational(&q("x^3 + x + 1"), &cfg).unwrap().kind,
            VerdictKind::IrreducibleItself
        );
    }
}

//! Text to polynomial.
//!
//! The accepted language is sums of products of factors, where a factor is a
//! number, a fraction `p/q`, `r2` (over `ℕ₀[√2]`), a declared variable, or a
//! parenthesised expression, optionally raised to a signed integer power.
//! Juxtaposition multiplies, so `2x^2y` and `(x + 1)y` both work.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FlatTerm, LaurentPoly};
use crate::error::{Error, Result};
use crate::semidomain::{two_thirds_unit_exponent, Element, QuadraticNat, Ring, TwoThirds};

/// `["x", "y", ...]` for `n` variables.
pub fn default_vars(n: usize) -> Vec<String> {
    (0..n).map(super::var_name).collect()
}

/// Parses `text` over `base` in the variables `vars` (innermost first; the
/// last one becomes the outermost nesting level).
pub fn parse_poly(text: &str, base: &Ring, vars: &[&str]) -> Result<LaurentPoly> {
    let owned: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    parse_poly_with(text, base, &owned)
}

pub fn parse_poly_with(text: &str, base: &Ring, vars: &[String]) -> Result<LaurentPoly> {
    if vars.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "no variables declared".into(),
        });
    }
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        base,
        vars,
    };
    p.skip_ws();
    if p.pos == p.s.len() {
        return Err(p.err("empty input"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected character"));
    }
    LaurentPoly::from_flat(
        base,
        vars.len(),
        v.into_iter().map(|(exp, coeff)| FlatTerm { exp, coeff }),
    )
}

type Flat = BTreeMap<Vec<i64>, Element>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    base: &'a Ring,
    vars: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Flat> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => return Err(Error::NegativeCoefficient(self.pos)),
                _ => break,
            }
            let t = self.product()?;
            acc = add(acc, t)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Flat> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {}
                _ => return Ok(acc),
            }
            let f = self.power()?;
            acc = mul(&acc, &f)?;
        }
    }

    fn power(&mut self) -> Result<Flat> {
        let f = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.signed_int()?;
            return self.pow(f, k);
        }
        Ok(f)
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("expected an integer exponent"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::ExponentOverflow)
    }

    fn number(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .expect("digits"))
    }

    fn atom(&mut self) -> Result<Flat> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.number()?;
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.number()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    let c = self.fraction(num, den, start)?;
                    return Ok(constant(n, c));
                }
                self.pos = save;
                let c = self.integer(num, start)?;
                Ok(constant(n, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let rest = std::str::from_utf8(&self.s[self.pos..]).unwrap_or("");
                let mut best: Option<(usize, Option<usize>)> = None;
                for (i, v) in self.vars.iter().enumerate() {
                    if rest.starts_with(v.as_str()) && best.is_none_or(|(l, _)| v.len() > l) {
                        best = Some((v.len(), Some(i)));
                    }
                }
                if *self.base == Ring::QuadraticNat
                    && rest.starts_with("r2")
                    && best.is_none_or(|(l, _)| l < 2)
                {
                    best = Some((2, None));
                }
                match best {
                    Some((len, Some(i))) => {
                        self.pos += len;
                        let mut exp = vec![0; n];
                        exp[i] = 1;
                        Ok(BTreeMap::from([(exp, Element::one(self.base))]))
                    }
                    Some((len, None)) => {
                        self.pos += len;
                        Ok(constant(
                            n,
                            Element::Quadratic(QuadraticNat::new(0u32, 1u32)),
                        ))
                    }
                    None => {
                        let name: String = rest
                            .chars()
                            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                            .collect();
                        Err(Error::UnknownVariable { name, pos: start })
                    }
                }
            }
            Some(b'-') => Err(Error::NegativeCoefficient(self.pos)),
            _ => Err(self.err("expected a term")),
        }
    }

    fn integer(&self, num: BigUint, pos: usize) -> Result<Element> {
        Ok(match self.base {
            Ring::Natural => Element::Natural(num),
            Ring::NonnegRational => Element::Rational(BigRational::from_integer(BigInt::from(num))),
            Ring::QuadraticNat => Element::Quadratic(QuadraticNat::new(num, 0u32)),
            Ring::TwoThirds => Element::TwoThirds(TwoThirds::from_witness([(0, num)])),
            Ring::Laurent(_) => {
                return Err(Error::Parse {
                    pos,
                    msg: "nested base instance".into(),
                })
            }
        })
    }

    fn fraction(&self, num: BigUint, den: BigUint, pos: usize) -> Result<Element> {
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        match self.base {
            Ring::NonnegRational => Ok(Element::Rational(q)),
            Ring::TwoThirds => {
                let k = two_thirds_unit_exponent(&q).ok_or(Error::Parse {
                    pos,
                    msg: "fractions over two-thirds must be powers of 2/3".into(),
                })?;
                Ok(Element::TwoThirds(TwoThirds::atom(k)))
            }
            _ if q.is_integer() => self.integer(q.to_integer().to_biguint().expect("nonneg"), pos),
            _ => Err(Error::Parse {
                pos,
                msg: format!("fraction not allowed over {}", self.base.name()),
            }),
        }
    }

    fn pow(&self, f: Flat, k: i64) -> Result<Flat> {
        let n = self.vars.len();
        let (base, e) = if k < 0 {
            (
                invert(&f).ok_or_else(|| self.err("negative power of a non-unit"))?,
                k.unsigned_abs(),
            )
        } else {
            (f, k as u64)
        };
        if e > u32::MAX as u64 && base.len() > 1 {
            return Err(Error::ExponentOverflow);
        }
        let mut acc = constant(n, Element::one(self.base));
        let mut sq = base;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(&acc, &sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }
}

fn constant(n: usize, c: Element) -> Flat {
    let mut m = BTreeMap::new();
    if !c.is_zero() {
        m.insert(vec![0; n], c);
    }
    m
}

fn add(mut a: Flat, b: Flat) -> Result<Flat> {
    for (e, c) in b {
        let s = match a.remove(&e) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if !s.is_zero() {
            a.insert(e, s);
        }
    }
    Ok(a)
}

fn mul(a: &Flat, b: &Flat) -> Result<Flat> {
    let mut out = Flat::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e = e1
                .iter()
                .zip(e2)
                .map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow))
                .collect::<Result<Vec<i64>>>()?;
            let c = c1.mul(c2)?;
            out = add(out, BTreeMap::from([(e, c)]))?;
        }
    }
    Ok(out)
}

/// Inverse of a monomial with unit coefficient.
fn invert(f: &Flat) -> Option<Flat> {
    if f.len() != 1 {
        return None;
    }
    let (e, c) = f.iter().next()?;
    let inv = match c {
        Element::Natural(n) if n.is_one() => c.clone(),
        Element::Rational(q) if !q.is_zero() => Element::Rational(q.recip()),
        Element::Quadratic(q) if q.is_unit() => c.clone(),
        Element::TwoThirds(t) => Element::TwoThirds(TwoThirds::atom(-t.unit_exponent()?)),
        _ => return None,
    };
    let e = e
        .iter()
        .map(|x| x.checked_neg())
        .collect::<Option<Vec<i64>>>()?;
    Some(BTreeMap::from([(e, inv)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(text: &str) -> Result<LaurentPoly> {
        parse_poly(text, &Ring::Natural, &["x"])
    }

    #[test]
    fn univariate() {
        assert_eq!(
            nat("2x^2 + x + 1").unwrap(),
            LaurentPoly::nat(&[(2, 2), (1, 1), (0, 1)])
        );
        assert_eq!(
            nat("x^-1 + 3").unwrap(),
            LaurentPoly::nat(&[(-1, 1), (0, 3)])
        );
        assert_eq!(
            nat("2*x*x + x^1").unwrap(),
            LaurentPoly::nat(&[(2, 2), (1, 1)])
        );
        assert_eq!(
            nat("(x+1)^2").unwrap(),
            LaurentPoly::nat(&[(2, 1), (1, 2), (0, 1)])
        );
    }

    #[test]
    fn nested() {
        let f = parse_poly("x*y + x + y + 1", &Ring::Natural, &["x", "y"]).unwrap();
        let x1 = Element::Laurent(LaurentPoly::nat(&[(1, 1), (0, 1)]));
        assert_eq!(f.support(), vec![0, 1]);
        assert_eq!(f.coeff(0), Some(&x1));
        assert_eq!(f.coeff(1), Some(&x1));
    }

    #[test]
    fn errors() {
        assert_eq!(nat("x - 1").unwrap_err().code(), "NegativeCoefficient");
        assert_eq!(nat("x + q").unwrap_err().code(), "UnknownVariable");
        assert_eq!(nat("x + ").unwrap_err().code(), "Parse");
        assert_eq!(nat("").unwrap_err().code(), "Parse");
        assert_eq!(nat("(x + 1").unwrap_err().code(), "Parse");
        assert_eq!(nat("1/2x").unwrap_err().code(), "Parse");
    }

    #[test]
    fn instance_literals() {
        let q = parse_poly("3/4x + 1/2", &Ring::NonnegRational, &["x"]).unwrap();
        assert_eq!(q.coeff(1), Some(&Element::rational(3, 4)));
        let r = parse_poly("(1+2r2)x + r2", &Ring::QuadraticNat, &["x"]).unwrap();
        assert_eq!(r.coeff(1), Some(&Element::quadratic(1, 2)));
        assert_eq!(r.coeff(0), Some(&Element::quadratic(0, 1)));
        let t = parse_poly("(2*(2/3)^1 + (2/3)^-2)x + 1", &Ring::TwoThirds, &["x"]).unwrap();
        let c = match t.coeff(1).unwrap() {
            Element::TwoThirds(c) => c.clone(),
            _ => unreachable!(),
        };
        assert_eq!(c.witness().get(&1), Some(&BigUint::from(2u32)));
        assert_eq!(c.witness().get(&-2), Some(&BigUint::from(1u32)));
        assert_eq!(
            c.value(),
            &BigRational::new(BigInt::from(4 * 4 + 27), BigInt::from(12))
        );
        assert_eq!(
            parse_poly("(4/9)x", &Ring::TwoThirds, &["x"])
                .unwrap()
                .coeff(1),
            Some(&Element::TwoThirds(TwoThirds::atom(2)))
        );
        assert!(parse_poly("(1/2)x", &Ring::TwoThirds, &["x"]).is_err());
    }

    #[test]
    fn round_trip_examples() {
        for s in ["2x^2 + x + 1", "3 + x^-1", "x^5"] {
            let f = nat(s).unwrap();
            assert_eq!(nat(&f.to_string()).unwrap(), f);
        }
        let f = parse_poly("x*y + x + y + 1", &Ring::Natural, &["x", "y"]).unwrap();
        assert_eq!(
            parse_poly(&f.to_string(), &Ring::Natural, &["x", "y"]).unwrap(),
            f
        );
    }
}

//! Text and JSON forms of structured series, as printed by `Display` and
//! `to_json`: `head: 2 + 2x; tail: affine(start=3, g0=2, a=1, coeffs=[2])`.

use serde_json::Value;

use super::{StructuredSeries, TailSpec};
use crate::error::{Error, Result};
use crate::laurent_poly::parse_poly;
use crate::semidomain::{Element, Ring};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidSeries(msg.into())
}

fn constant(text: &str, ring: &Ring) -> Result<Element> {
    let p = parse_poly(text, ring, &["x"])?;
    match (p.len(), p.coeff(0)) {
        (1, Some(c)) => Ok(c.clone()),
        _ => Err(bad(format!(
            "coefficient `{text}` is not a nonzero constant"
        ))),
    }
}

/// Splits on commas outside brackets and parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let (mut depth, mut last, mut out) = (0i32, 0, Vec::new());
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[last..i].trim());
                last = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[last..].trim());
    out
}

fn parse_tail(text: &str, ring: &Ring) -> Result<TailSpec> {
    let text = text.trim();
    if text == "none" {
        return Ok(TailSpec::None);
    }
    let open = text
        .find('(')
        .ok_or_else(|| bad(format!("malformed tail `{text}`")))?;
    let inner = text[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| bad("tail is missing `)`"))?;
    let kind = text[..open].trim();
    let (mut start, mut gap, mut g0, mut a, mut coeffs) = (None, None, None, None, None);
    for field in split_top(inner).into_iter().filter(|f| !f.is_empty()) {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got `{field}`")))?;
        let v = v.trim();
        let int = |v: &str| {
            v.parse::<i64>()
                .map_err(|_| bad(format!("`{v}` is not an integer")))
        };
        let nat = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| bad(format!("`{v}` is not a natural number")))
        };
        match k.trim() {
            "start" => start = Some(int(v)?),
            "d" => gap = Some(nat(v)?),
            "g0" => g0 = Some(nat(v)?),
            "a" => a = Some(nat(v)?),
            "coeffs" => {
                let list = v
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| bad("coeffs must be a bracketed list"))?;
                coeffs = Some(
                    split_top(list)
                        .into_iter()
                        .map(|c| constant(c, ring))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            other => return Err(bad(format!("unknown tail field `{other}`"))),
        }
    }
    let need = |name: &str| bad(format!("tail field `{name}` is missing"));
    let start = start.ok_or_else(|| need("start"))?;
    let coeffs = coeffs.ok_or_else(|| need("coeffs"))?;
    match kind {
        "const" => Ok(TailSpec::ConstantGap {
            start,
            gap: gap.ok_or_else(|| need("d"))?,
            coeffs,
        }),
        "affine" => Ok(TailSpec::AffineGap {
            start,
            first_gap: g0.ok_or_else(|| need("g0"))?,
            increment: a.ok_or_else(|| need("a"))?,
            coeffs,
        }),
        other => Err(bad(format!("unknown tail kind `{other}`"))),
    }
}

/// Parses `head: <poly>; tail: none|const(...)|affine(...)` over `ring`, in
/// the variable `x`. Either part may be omitted; a missing tail means none.
pub fn parse_series(text: &str, ring: &Ring) -> Result<StructuredSeries> {
    let (mut head, mut tail) = (Vec::new(), TailSpec::None);
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some(h) = part.strip_prefix("head:") {
            let p = parse_poly(h.trim(), ring, &["x"])?;
            head = p.terms().map(|(e, c)| (e, c.clone())).collect();
        } else if let Some(t) = part.strip_prefix("tail:") {
            tail = parse_tail(t, ring)?;
        } else {
            return Err(bad(format!("expected `head:` or `tail:`, got `{part}`")));
        }
    }
    StructuredSeries::new(ring.clone(), head, tail)
}

/// Inverse of `StructuredSeries::to_json` for basic series.
pub fn series_from_json(v: &Value) -> Result<StructuredSeries> {
    let ring_name = v.get("ring").and_then(Value::as_str).unwrap_or("n0");
    let (ring, vars) = Ring::from_name(ring_name)?;
    if vars != 1 {
        return Err(Error::NotApplicable {
            ring: ring_name.into(),
            reason: "series need a single variable".into(),
        });
    }
    let coeff = |c: &Value| -> Result<Element> {
        match c {
            Value::String(s) => constant(s, &ring),
            Value::Number(n) => constant(&n.to_string(), &ring),
            _ => Err(bad("coefficients must be strings or numbers")),
        }
    };
    let mut head = Vec::new();
    for t in v
        .get("head")
        .and_then(Value::as_array)
        .into_iter()
        .flatten()
    {
        let e = t
            .get("exp")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("head term needs an integer `exp`"))?;
        head.push((
            e,
            coeff(
                t.get("coeff")
                    .ok_or_else(|| bad("head term needs `coeff`"))?,
            )?,
        ));
    }
    let tail = match v.get("tail") {
        None | Some(Value::Null) => TailSpec::None,
        Some(t) => {
            let kind = t.get("kind").and_then(Value::as_str).unwrap_or("none");
            let int = |k: &str| {
                t.get(k)
                    .and_then(Value::as_i64)
                    .ok_or_else(|| bad(format!("tail needs integer `{k}`")))
            };
            let nat = |k: &str| {
                t.get(k)
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad(format!("tail needs natural `{k}`")))
            };
            let cycle = || -> Result<Vec<Element>> {
                t.get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("tail needs `coeffs`"))?
                    .iter()
                    .map(coeff)
                    .collect()
            };
            match kind {
                "none" => TailSpec::None,
                "const" => TailSpec::ConstantGap {
                    start: int("start")?,
                    gap: nat("d")?,
                    coeffs: cycle()?,
                },
                "affine" => TailSpec::AffineGap {
                    start: int("start")?,
                    first_gap: nat("g0")?,
                    increment: nat("a")?,
                    coeffs: cycle()?,
                },
                other => return Err(bad(format!("tail kind `{other}` cannot be given as input"))),
            }
        }
    };
    StructuredSeries::new(ring, head, tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in [
            "head: 2 + 2x; tail: affine(start=3, g0=2, a=1, coeffs=[2])",
            "tail: const(start=0, d=1, coeffs=[1])",
            "head: x^-2 + 3; tail: const(start=4, d=3, coeffs=[1, 2])",
            "head: 1 + x; tail: none",
        ] {
            let f = parse_series(s, &Ring::Natural).unwrap();
            assert_eq!(
                parse_series(&f.to_string(), &Ring::Natural).unwrap(),
                f,
                "{s}"
            );
            assert_eq!(series_from_json(&f.to_json()).unwrap(), f, "{s}");
        }
    }

    #[test]
    fn rejects() {
        let r = Ring::Natural;
        assert!(parse_series("tail: const(start=0, coeffs=[1])", &r).is_err());
        assert!(parse_series("tail: wavy(start=0)", &r).is_err());
        assert!(parse_series("tail: const(start=0, d=1, coeffs=[x])", &r).is_err());
        assert!(parse_series("body: 1", &r).is_err());
    }
}

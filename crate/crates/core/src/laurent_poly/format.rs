use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::LaurentPoly;
use crate::error::Result;
use crate::semidomain::{Element, Ring};

/// Default name of the variable at nesting level `i` (innermost is 0).
pub fn var_name(i: usize) -> String {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        n => format!("x{n}"),
    }
}

/// One term of the flat multi-index view; `exp[i]` belongs to variable `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTerm {
    pub exp: Vec<i64>,
    pub coeff: Element,
}

impl LaurentPoly {
    /// Read-only flat view, sorted by exponent vector.
    pub fn flat_terms(&self) -> Vec<FlatTerm> {
        let mut out = Vec::new();
        for (e, c) in self.terms() {
            match c {
                Element::Laurent(inner) => {
                    for mut t in inner.flat_terms() {
                        t.exp.push(e);
                        out.push(t);
                    }
                }
                c => out.push(FlatTerm {
                    exp: vec![e],
                    coeff: c.clone(),
                }),
            }
        }
        out.sort_by(|a, b| a.exp.cmp(&b.exp));
        out
    }

    /// Inverse of [`LaurentPoly::flat_terms`]; repeated exponents are summed.
    pub fn from_flat(
        base: &Ring,
        vars: usize,
        terms: impl IntoIterator<Item = FlatTerm>,
    ) -> Result<Self> {
        assert!(vars >= 1, "at least one variable");
        let ring = Ring::nested(base.clone(), vars);
        if vars == 1 {
            return LaurentPoly::from_terms(ring, terms.into_iter().map(|t| (t.exp[0], t.coeff)));
        }
        let mut groups: BTreeMap<i64, Vec<FlatTerm>> = BTreeMap::new();
        for mut t in terms {
            let e = t.exp.pop().expect("exponent vector length");
            groups.entry(e).or_default().push(t);
        }
        let mut p = LaurentPoly::zero(ring);
        for (e, ts) in groups {
            let inner = LaurentPoly::from_flat(base, vars - 1, ts)?;
            p.add_term(e, Element::Laurent(inner))?;
        }
        Ok(p)
    }

    /// Text form with the given variable names (innermost first).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let level = self.ring().depth();
        let v = names.get(level).cloned().unwrap_or_else(|| var_name(level));
        let mut parts = Vec::with_capacity(self.len());
        for (e, c) in self.terms().rev() {
            let cs = match c {
                Element::Laurent(inner) => {
                    let s = inner.display_with(names);
                    if inner.len() > 1 && e != 0 {
                        format!("({s})")
                    } else {
                        s
                    }
                }
                c => c.to_coeff_string(),
            };
            let vs = match e {
                0 => String::new(),
                1 => v.clone(),
                e => format!("{v}^{e}"),
            };
            parts.push(match (cs.as_str(), vs.is_empty()) {
                (_, true) => cs,
                ("1", false) => vs,
                (_, false) => format!("{cs}{vs}"),
            });
        }
        parts.join(" + ")
    }

    /// `{"ring", "vars", "terms": [{"exp", "coeff"}]}` export.
    pub fn to_json(&self, names: &[String]) -> Value {
        let n = self.vars();
        let vars: Vec<String> = (0..n)
            .map(|i| names.get(i).cloned().unwrap_or_else(|| var_name(i)))
            .collect();
        let terms: Vec<Value> = self
            .flat_terms()
            .into_iter()
            .map(|t| json!({"exp": t.exp, "coeff": t.coeff.to_string()}))
            .collect();
        json!({"ring": self.ring().base().name(), "vars": vars, "terms": terms})
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use super::{certify_irreducible, Certification};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::laurent_poly::LaurentPoly;

/// Memoised irreducibility answers, keyed up to a unit shift.
#[derive(Debug, Default)]
pub struct IrreducibleCache {
    map: Mutex<BTreeMap<LaurentPoly, bool>>,
}

impl IrreducibleCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Whether `f` (two or more terms) is irreducible; `Inconclusive` when
    /// neither the criteria nor the oracle can tell.
    pub fn is_irreducible(&self, f: &LaurentPoly, cfg: &SearchConfig) -> Result<bool> {
        let key = f.normalize_shift()?.0;
        if let Some(b) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(*b);
        }
        let ans = match certify_irreducible(&key, cfg)? {
            Certification::Irreducible(_) => true,
            Certification::NotIrreducible(_) => false,
            Certification::Unknown(r) => return Err(Error::Inconclusive(r)),
        };
        self.map.lock().expect("cache lock").insert(key, ans);
        Ok(ans)
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_instance(f: &LaurentPoly) -> Result<()> {
    if !f.ring().descriptor().supports_exhaustive_split {
        return Err(Error::UnsupportedInstance(f.ring().name()));
    }
    Ok(())
}

fn good(p: &LaurentPoly, cache: &IrreducibleCache, cfg: &SearchConfig) -> Result<bool> {
    Ok(p.len() >= 2 && cache.is_irreducible(p, cfg)?)
}

/// Every way of writing `f` as a sum of `parts` irreducible polynomials with
/// at least two terms each, as sorted tuples.
pub fn enumerate_goldbach_bruteforce(
    f: &LaurentPoly,
    parts: usize,
    cfg: &SearchConfig,
) -> Result<Vec<Vec<LaurentPoly>>> {
    check_instance(f)?;
    let cache = IrreducibleCache::new();
    let mut out = BTreeSet::new();
    match parts {
        2 => {
            for g in f.below(cfg)? {
                let h = f
                    .checked_sub(&g)
                    .ok_or_else(|| Error::Defect("split".into()))?;
                if g > h || !good(&g, &cache, cfg)? || !good(&h, &cache, cfg)? {
                    continue;
                }
                out.insert(vec![g, h]);
            }
        }
        3 => {
            for a in f.below(cfg)? {
                if !good(&a, &cache, cfg)? {
                    continue;
                }
                let rest = f
                    .checked_sub(&a)
                    .ok_or_else(|| Error::Defect("split".into()))?;
                for b in rest.below(cfg)? {
                    let c = rest
                        .checked_sub(&b)
                        .ok_or_else(|| Error::Defect("split".into()))?;
                    if a > b || b > c || !good(&b, &cache, cfg)? || !good(&c, &cache, cfg)? {
                        continue;
                    }
                    out.insert(vec![a.clone(), b, c]);
                }
            }
        }
        n => {
            return Err(Error::ConditionNotMet(format!(
                "parts must be 2 or 3, got {n}"
            )))
        }
    }
    Ok(out.into_iter().collect())
}

/// First two-part decomposition found by the split enumeration, if any.
pub fn find_goldbach_bruteforce(
    f: &LaurentPoly,
    cfg: &SearchConfig,
    cache: &IrreducibleCache,
) -> Result<Option<(LaurentPoly, LaurentPoly)>> {
    check_instance(f)?;
    for g in f.below(cfg)? {
        let h = f
            .checked_sub(&g)
            .ok_or_else(|| Error::Defect("split".into()))?;
        if g <= h && good(&g, cache, cfg)? && good(&h, cache, cfg)? {
            return Ok(Some((g, h)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent_poly::parse_poly;
    use crate::semidomain::Ring;

    #[test]
    fn small_enumerations() {
        let cfg = SearchConfig::default();
        let nat = |s: &str| parse_poly(s, &Ring::Natural, &["x"]).unwrap();
        let r = enumerate_goldbach_bruteforce(&nat("2x + 2"), 2, &cfg).unwrap();
        assert_eq!(r, vec![vec![nat("x + 1"), nat("x + 1")]]);
        assert!(enumerate_goldbach_bruteforce(&nat("x + 1"), 2, &cfg)
            .unwrap()
            .is_empty());
        let q = parse_poly("r2x^2 + r2x + r2", &Ring::QuadraticNat, &["x"]).unwrap();
        assert!(enumerate_goldbach_bruteforce(&q, 2, &cfg)
            .unwrap()
            .is_empty());
        let t = parse_poly("x + 1", &Ring::TwoThirds, &["x"]).unwrap();
        assert_eq!(
            enumerate_goldbach_bruteforce(&t, 2, &cfg)
                .unwrap_err()
                .code(),
            "UnsupportedInstance"
        );
        for tuple in enumerate_goldbach_bruteforce(&nat("3x^2 + 3x + 3"), 3, &cfg).unwrap() {
            let s = tuple
                .iter()
                .skip(1)
                .fold(tuple[0].clone(), |a, b| a.add(b).unwrap());
            assert_eq!(s, nat("3x^2 + 3x + 3"));
        }
    }
}

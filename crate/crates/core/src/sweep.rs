//! Exhaustive engine-versus-oracle sweeps.

use std::collections::BTreeMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::goldbach_poly::{goldbach, goldbach_multi, GoldbachVerdict, VerdictKind};
use crate::irreducibility::{
    find_goldbach_bruteforce, oracle_irreducible, recheck, IrreducibleCache,
};
use crate::laurent_poly::LaurentPoly;
use crate::semidomain::Element;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub total: usize,
    pub histogram: BTreeMap<String, usize>,
    pub mismatches: Vec<String>,
    /// Inputs with mass above three, each checked against the two-summand statement.
    pub corollary_checked: usize,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn merge(&mut self, o: SweepReport) {
        self.total += o.total;
        for (k, v) in o.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.mismatches.extend(o.mismatches);
        self.corollary_checked += o.corollary_checked;
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total,
            "histogram": self.histogram,
            "corollary_checked": self.corollary_checked,
            "mismatches": self.mismatches,
            "passed": self.passed(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("total: {}\n", self.total);
        for (k, v) in &self.histogram {
            s.push_str(&format!("  {k}: {v}\n"));
        }
        s.push_str(&format!("mass above three: {}\n", self.corollary_checked));
        s.push_str(&format!("mismatches: {}\n", self.mismatches.len()));
        for m in &self.mismatches {
            s.push_str(&format!("  {m}\n"));
        }
        s
    }
}

/// Irreducibility answers from the brute-force oracle, memoised up to shift.
#[derive(Debug, Default)]
pub struct OracleCache {
    map: Mutex<BTreeMap<LaurentPoly, bool>>,
}

impl OracleCache {
    pub fn is_irreducible(&self, f: &LaurentPoly, cfg: &SearchConfig) -> Result<bool> {
        let key = f.normalize_shift()?.0;
        if let Some(b) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(*b);
        }
        let b = oracle_irreducible(&key, cfg)?;
        self.map.lock().expect("cache lock").insert(key, b);
        Ok(b)
    }
}

/// All `f ∈ ℕ₀[x]` with `f(0) ≠ 0`, degree at most `max_deg`, coefficients
/// at most `max_coeff` and two or more terms, in a fixed order.
pub fn polys_up_to(max_deg: usize, max_coeff: u64) -> Vec<LaurentPoly> {
    let base = max_coeff + 1;
    let len = max_deg + 1;
    let count = base.pow(len as u32);
    let mut out = Vec::new();
    for code in 0..count {
        let mut c = code;
        let mut items = Vec::with_capacity(len);
        for i in 0..len {
            items.push((i as i64, c % base));
            c /= base;
        }
        if items[0].1 == 0 {
            continue;
        }
        let f = LaurentPoly::nat(&items);
        if f.len() >= 2 {
            out.push(f);
        }
    }
    out
}

/// Form (a): a binomial with a unit coefficient; form (b): a trinomial of units.
pub fn exceptional_form(f: &LaurentPoly) -> Option<VerdictKind> {
    let units = f.terms().filter(|(_, c)| c.is_unit()).count();
    match f.len() {
        2 if units >= 1 => Some(VerdictKind::ExceptionalFormA),
        3 if units == 3 => Some(VerdictKind::ExceptionalFormB),
        _ => None,
    }
}

fn check_summands(
    f: &LaurentPoly,
    v: &GoldbachVerdict,
    label: &str,
    oracle: &OracleCache,
    cfg: &SearchConfig,
    out: &mut Vec<String>,
) -> Result<()> {
    if v.summands.len() != 2 {
        out.push(format!("{label} {f}: {} summands", v.summands.len()));
        return Ok(());
    }
    if v.total()? != *f {
        out.push(format!("{label} {f}: summands do not add up"));
    }
    for s in &v.summands {
        if !oracle.is_irreducible(&s.poly, cfg)? {
            out.push(format!("{label} {f}: summand {} is reducible", s.poly));
        }
        if !recheck(&s.poly, &s.certificate, cfg)? {
            out.push(format!(
                "{label} {f}: certificate of {} fails its re-check",
                s.poly
            ));
        }
    }
    Ok(())
}

/// Checks one polynomial; returns the histogram key and any mismatches.
fn check_one(
    f: &LaurentPoly,
    oracle: &OracleCache,
    split_oracle: Option<&IrreducibleCache>,
    cfg: &SearchConfig,
) -> Result<(String, Vec<String>, bool)> {
    let mut bad = Vec::new();
    let v = goldbach(f, cfg)?;
    let expected = exceptional_form(f);
    match expected {
        Some(k) if v.kind != k => {
            bad.push(format!("{f}: expected {}, got {}", k.name(), v.kind.name()))
        }
        None if v.kind != VerdictKind::SumOfTwo => {
            bad.push(format!("{f}: expected SumOfTwo, got {}", v.kind.name()))
        }
        _ => {}
    }
    if v.kind == VerdictKind::SumOfTwo {
        check_summands(f, &v, "engine", oracle, cfg, &mut bad)?;
    } else if expected.is_some() && !oracle.is_irreducible(f, cfg)? {
        bad.push(format!("{f}: exceptional form is reducible"));
    }
    let big = match f.mass() {
        Element::Natural(m) => m > 3u32.into(),
        _ => false,
    };
    if big {
        let m = goldbach_multi(f, cfg)?;
        if m.kind != VerdictKind::SumOfTwo {
            bad.push(format!("corollary {f}: mass > 3 but {}", m.kind.name()));
        } else {
            check_summands(f, &m, "corollary", oracle, cfg, &mut bad)?;
        }
    }
    if let Some(cache) = split_oracle {
        let found = find_goldbach_bruteforce(f, cfg, cache)?.is_some();
        if found != (v.kind == VerdictKind::SumOfTwo) {
            bad.push(format!(
                "{f}: split enumeration found={found}, engine {}",
                v.kind.name()
            ));
        }
    }
    Ok((v.kind.name().to_string(), bad, big))
}

/// The exhaustive sweep over `ℕ₀[x]`: engine verdicts against the
/// exceptional-form classification, every summand confirmed by the
/// brute-force oracle, and the mass-above-three statement. With
/// `with_splits`, the split enumeration is also compared with the engine.
pub fn verify_natural(
    max_deg: usize,
    max_coeff: u64,
    with_splits: bool,
    jobs: usize,
    cfg: &SearchConfig,
) -> Result<SweepReport> {
    let polys = polys_up_to(max_deg, max_coeff);
    let oracle = OracleCache::default();
    let splits = IrreducibleCache::new();
    let split_oracle = with_splits.then_some(&splits);
    let run = || -> Vec<Result<(String, Vec<String>, bool)>> {
        polys
            .par_iter()
            .map(|f| check_one(f, &oracle, split_oracle, cfg))
            .collect()
    };
    let results = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Defect(e.to_string()))?
        .install(run);
    let mut report = SweepReport::default();
    for r in results {
        let (k, bad, big) = r?;
        report.total += 1;
        report.corollary_checked += usize::from(big);
        *report.histogram.entry(k).or_default() += 1;
        report.mismatches.extend(bad);
    }
    Ok(report)
}

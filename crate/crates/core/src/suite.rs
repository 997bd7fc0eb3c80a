//! The desk-scale verification suite: one check per headline statement,
//! shared by `semigold verify --all` and the acceptance test target.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::SearchConfig;
use crate::error::Result;
use crate::goldbach_poly::{
    goldbach, goldbach_multi, goldbach_rational, two_thirds_family, two_thirds_target, VerdictKind,
};
use crate::irreducibility::{enumerate_goldbach_bruteforce, oracle_irreducible, recheck};
use crate::laurent_poly::{parse_poly, FlatTerm, LaurentPoly};
use crate::laurent_series::{
    decompose_series, decompose_series_two, decomposition_family, parse_series, recheck_series,
    SeriesCase, StructuredSeries, SubsetSpec,
};
use crate::semidomain::{Element, Ring};
use crate::sweep::{verify_natural, SweepReport};

/// Default bounds of the exhaustive sweep.
pub const SWEEP_BOUNDS: (usize, u64) = (5, 3);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "[{mark}] {}. {}: {}",
            self.id,
            self.title,
            self.detail.trim_end()
        )
    }

    pub fn to_json(&self) -> Value {
        json!({"id": self.id, "title": self.title, "passed": self.passed, "detail": self.detail.trim_end()})
    }
}

pub const TITLES: [&str; 9] = [
    "two-summand verdict iff not exceptional, degree <= 5, coefficients <= 3",
    "mass above three always splits in two",
    "r2 x^2 + r2 x + r2 has no two-summand split over N0[sqrt2]",
    "50 random bivariate inputs split into oracle-confirmed irreducibles",
    "parity split of the geometric series",
    "30 structured series decompose into at most three certified summands",
    "geometric-series family over multiples of m = 2..11 is injective",
    "(4/3)x + 2 has ten distinct decompositions over <(2/3)^k>",
    "q+ is rejected by the main engine and handled by the rational one",
];

fn outcome(id: u32, start: Instant, r: Result<(bool, String)>) -> CriterionOutcome {
    let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        title: TITLES[id as usize - 1],
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn first_lines(v: &[String]) -> String {
    v.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn sweep_checks(report: &SweepReport) -> [(bool, String); 2] {
    let (cor, main): (Vec<String>, Vec<String>) = report
        .mismatches
        .iter()
        .cloned()
        .partition(|m| m.starts_with("corollary"));
    [
        (
            main.is_empty(),
            format!(
                "{} inputs, {} mismatches {}",
                report.total,
                main.len(),
                first_lines(&main)
            ),
        ),
        (
            cor.is_empty(),
            format!(
                "{} inputs with mass > 3, {} mismatches {}",
                report.corollary_checked,
                cor.len(),
                first_lines(&cor)
            ),
        ),
    ]
}

fn criterion_3(cfg: &SearchConfig) -> Result<(bool, String)> {
    let f = parse_poly("r2 x^2 + r2 x + r2", &Ring::QuadraticNat, &["x"])?;
    let found = enumerate_goldbach_bruteforce(&f, 2, cfg)?;
    Ok((found.is_empty(), format!("{} splits found", found.len())))
}

/// Random `f` in two variables with exponents in `[-2, 2]`, mass in
/// `[4, 8]` and at most six terms.
pub fn random_bivariate(rng: &mut ChaCha8Rng) -> Result<LaurentPoly> {
    let mass: u64 = rng.gen_range(4..=8);
    let n = rng.gen_range(2..=mass.min(6)) as usize;
    let mut exps = BTreeSet::new();
    while exps.len() < n {
        exps.insert(vec![rng.gen_range(-2..=2i64), rng.gen_range(-2..=2i64)]);
    }
    let mut coeffs = vec![1u64; n];
    for _ in n as u64..mass {
        coeffs[rng.gen_range(0..n)] += 1;
    }
    let terms = exps.into_iter().zip(coeffs).map(|(exp, c)| FlatTerm {
        exp,
        coeff: Element::nat(c),
    });
    LaurentPoly::from_flat(&Ring::Natural, 2, terms)
}

fn criterion_4(cfg: &SearchConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let f = random_bivariate(&mut rng)?;
        let v = goldbach_multi(&f, cfg)?;
        if v.kind != VerdictKind::SumOfTwo {
            bad.push(format!("{f}: {}", v.kind.name()));
            continue;
        }
        if v.total()? != f {
            bad.push(format!("{f}: summands do not add up"));
        }
        for s in &v.summands {
            if !oracle_irreducible(&s.poly, cfg)? || !recheck(&s.poly, &s.certificate, cfg)? {
                bad.push(format!("{f}: summand {} not confirmed", s.poly));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("50 inputs, {} failures {}", bad.len(), first_lines(&bad)),
    ))
}

fn criterion_5(cfg: &SearchConfig) -> Result<(bool, String)> {
    let f = parse_series("tail: const(start=0, d=1, coeffs=[1])", &Ring::Natural)?;
    let (a, b) = decompose_series_two(&f, cfg)?;
    let mut bad = Vec::new();
    for n in [10i64, 50, 200] {
        let even = (0..=n)
            .filter(|&e| e < 2 || (e >= 4 && e % 2 == 0))
            .map(|e| (e, Element::nat(1)));
        let odd = (0..=n)
            .filter(|&e| e == 2 || e == 3 || (e >= 5 && e % 2 == 1))
            .map(|e| (e, Element::nat(1)));
        let (ea, eb) = (
            LaurentPoly::from_terms(Ring::Natural, even)?,
            LaurentPoly::from_terms(Ring::Natural, odd)?,
        );
        if a.series.truncate(n) != ea || b.series.truncate(n) != eb {
            bad.push(format!("split differs at order {n}"));
        }
        if a.series.truncate(n).add(&b.series.truncate(n))? != f.truncate(n) {
            bad.push(format!("sum differs at order {n}"));
        }
    }
    for s in [&a, &b] {
        if !recheck_series(&s.series, &s.certificate, cfg)? {
            bad.push(format!("certificate of {} fails", s.series));
        }
    }
    Ok((
        bad.is_empty(),
        format!("orders 10, 50, 200 {}", first_lines(&bad)),
    ))
}

/// A non-polynomial series over `ℕ₀` with an irregular head; affine tails
/// give finitely many minimal gaps, constant tails infinitely many.
pub fn random_series(rng: &mut ChaCha8Rng, affine: bool) -> Result<StructuredSeries> {
    let mut head = Vec::new();
    let mut e = rng.gen_range(-3..=0i64);
    for _ in 0..rng.gen_range(1..=4) {
        head.push((e, Element::nat(rng.gen_range(1..=3))));
        e += rng.gen_range(1..=3);
    }
    let start = e + rng.gen_range(0..=2);
    let cycle = (0..rng.gen_range(1..=2))
        .map(|_| Element::nat(rng.gen_range(1..=3)))
        .collect();
    if affine {
        StructuredSeries::affine_gap(
            Ring::Natural,
            head,
            start,
            rng.gen_range(1..=3),
            rng.gen_range(1..=2),
            cycle,
        )
    } else {
        StructuredSeries::constant_gap(Ring::Natural, head, start, rng.gen_range(1..=3), cycle)
    }
}

fn criterion_6(cfg: &SearchConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    let mut cases = std::collections::BTreeMap::<&str, usize>::new();
    for i in 0..30 {
        let f = random_series(&mut rng, i % 2 == 0)?;
        let d = match decompose_series(&f, cfg) {
            Ok(d) => d,
            Err(e) => {
                bad.push(format!("{f}: {e}"));
                continue;
            }
        };
        *cases.entry(d.case.name()).or_default() += 1;
        if d.summands.is_empty() || d.summands.len() > 3 {
            bad.push(format!("{f}: {} summands", d.summands.len()));
        }
        if d.truncated_sum(200)? != f.truncate(200) {
            bad.push(format!("{f}: truncations do not add up"));
        }
        for s in &d.summands {
            if !recheck_series(&s.series, &s.certificate, cfg)? {
                bad.push(format!("{f}: certificate of {} fails", s.series));
            }
        }
    }
    let both = cases.contains_key(SeriesCase::FiniteMinimalGaps.name())
        && cases.contains_key(SeriesCase::InfiniteMinimalGaps.name());
    if !both {
        bad.push("both gap cases must occur".into());
    }
    let hist = cases
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join(", ");
    Ok((
        bad.is_empty(),
        format!("{hist}; {} failures {}", bad.len(), first_lines(&bad)),
    ))
}

fn criterion_7(cfg: &SearchConfig) -> Result<(bool, String)> {
    let f = parse_series("tail: const(start=0, d=1, coeffs=[1])", &Ring::Natural)?;
    let mut keys = Vec::new();
    let mut bad = Vec::new();
    for m in 2..=11 {
        let d = decomposition_family(
            &f,
            &SubsetSpec::ArithmeticProgression { first: m, step: m },
            cfg,
        )?;
        if d.truncated_sum(200)? != f.truncate(200) {
            bad.push(format!("m = {m}: truncations do not add up"));
        }
        for s in &d.summands {
            if !recheck_series(&s.series, &s.certificate, cfg)? {
                bad.push(format!("m = {m}: certificate fails"));
            }
        }
        keys.push(d.truncation_key(200));
    }
    let distinct = keys.iter().collect::<BTreeSet<_>>().len();
    if distinct != keys.len() {
        bad.push(format!("only {distinct} distinct tuples"));
    }
    Ok((
        bad.is_empty(),
        format!(
            "{distinct} distinct tuples of {} {}",
            keys.len(),
            first_lines(&bad)
        ),
    ))
}

fn criterion_8(cfg: &SearchConfig) -> Result<(bool, String)> {
    let target = two_thirds_target();
    let mut pairs = BTreeSet::new();
    let mut bad = Vec::new();
    for n in 1..=10 {
        let item = two_thirds_family(n, cfg)?;
        let [a, b] = &item.summands;
        if a.poly.add(&b.poly)? != target {
            bad.push(format!("n = {n}: sum differs"));
        }
        for s in [a, b] {
            if !recheck(&s.poly, &s.certificate, cfg)? {
                bad.push(format!("n = {n}: certificate of {} fails", s.poly));
            }
        }
        let mut key = [a.poly.clone(), b.poly.clone()];
        key.sort();
        pairs.insert(key);
    }
    if pairs.len() != 10 {
        bad.push(format!("{} distinct pairs", pairs.len()));
    }
    Ok((
        bad.is_empty(),
        format!("{} distinct pairs {}", pairs.len(), first_lines(&bad)),
    ))
}

/// Random `f` over `ℚ≥0` with two to five terms in degrees `0..=5`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Result<LaurentPoly> {
    let n = rng.gen_range(2..=5);
    let mut exps = BTreeSet::new();
    while exps.len() < n {
        exps.insert(rng.gen_range(0..=5i64));
    }
    let terms = exps.into_iter().map(|e| {
        (
            e,
            Element::rational(rng.gen_range(1..=9), rng.gen_range(1..=6)),
        )
    });
    LaurentPoly::from_terms(Ring::NonnegRational, terms)
}

fn criterion_9(cfg: &SearchConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let mut split = 0;
    for _ in 0..20 {
        let f = random_rational(&mut rng)?;
        let main = goldbach(&f, cfg)?;
        if main.kind != VerdictKind::NotApplicableInstance {
            bad.push(format!("{f}: main engine gave {}", main.kind.name()));
        }
        let v = goldbach_rational(&f, cfg)?;
        if !matches!(
            v.kind,
            VerdictKind::SumOfTwo | VerdictKind::IrreducibleItself
        ) || v.total()? != f
        {
            bad.push(format!("{f}: rational engine gave {}", v.kind.name()));
        }
        split += usize::from(v.kind == VerdictKind::SumOfTwo);
        for s in &v.summands {
            if !s.certificate.is_lemma_based() || !recheck(&s.poly, &s.certificate, cfg)? {
                bad.push(format!("{f}: summand {} not lemma-certified", s.poly));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "20 inputs, {split} split in two, {} failures {}",
            bad.len(),
            first_lines(&bad)
        ),
    ))
}

/// Runs the criteria in `ids` (all nine when empty) in order; `sweep`
/// bounds the degree and coefficients of the exhaustive part.
pub fn run_suite(
    ids: &[u32],
    sweep: (usize, u64),
    jobs: usize,
    cfg: &SearchConfig,
) -> Vec<CriterionOutcome> {
    let want = |i: u32| ids.is_empty() || ids.contains(&i);
    let mut out = Vec::new();
    if want(1) || want(2) {
        let start = Instant::now();
        match verify_natural(sweep.0, sweep.1, false, jobs, cfg) {
            Ok(report) => {
                for (i, r) in sweep_checks(&report).into_iter().enumerate() {
                    let id = i as u32 + 1;
                    if want(id) {
                        out.push(outcome(id, start, Ok(r)));
                    }
                }
            }
            Err(e) => {
                for id in [1, 2].into_iter().filter(|&i| want(i)) {
                    out.push(outcome(id, start, Err(e.clone())));
                }
            }
        }
    }
    type Check = fn(&SearchConfig) -> Result<(bool, String)>;
    let rest: [(u32, Check); 7] = [
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    for (id, check) in rest {
        if want(id) {
            let start = Instant::now();
            out.push(outcome(id, start, check(cfg)));
        }
    }
    out
}

//! The `semigold` command line.
//!
//! Every subcommand prints a text report by default and a single JSON
//! document with `--json`. Exit codes: 0 when a verdict was produced, 1 when
//! a verification check failed, 2 for usage and input errors, 3 when a
//! bounded search could not decide.

use std::ffi::OsString;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::goldbach_poly::{goldbach_auto, goldbach_multi, GoldbachVerdict};
use crate::irreducibility::{
    certify_irreducible, enumerate_goldbach_bruteforce, factor_bruteforce, Certification,
};
use crate::laurent_poly::{default_vars, parse_poly_with, LaurentPoly};
use crate::laurent_series::{
    conjecture_probe, decompose_series, decomposition_family, parse_series, ProbeOutcome,
    SeriesDecomposition, StructuredSeries, SubsetSpec,
};
use crate::semidomain::Ring;
use crate::suite::{run_suite, SWEEP_BOUNDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

const DEFAULT_PROBE_BUDGET: u64 = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "semigold",
    version,
    about = "Sums of two irreducibles in Laurent polynomial and series semirings"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Coefficient instance: n0, q+, n0sqrt2, two-thirds or multi:<k>.
    #[arg(long, global = true, default_value = "n0")]
    ring: String,
    /// Comma-separated variable names, innermost first.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Vec<String>,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Candidate budget for bounded searches (overrides SEMIGOLD_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Truncation order for series output and checks.
    #[arg(long, global = true, default_value_t = 200)]
    order: i64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a polynomial as a sum of two certified irreducibles.
    Decompose {
        /// Polynomial text, `@file`, or `-` for stdin.
        input: String,
        /// Allow a monomial summand (the mass-above-three statement).
        #[arg(long)]
        monomials: bool,
    },
    /// Certify irreducibility of a polynomial.
    Certify { input: String },
    /// Search for a nontrivial factorization.
    Factor { input: String },
    /// List every split into irreducibles by exhaustive search.
    Enumerate {
        input: String,
        #[arg(long, default_value_t = 2)]
        parts: usize,
    },
    /// Decompose a structured series into at most three irreducibles.
    SeriesDecompose { input: String },
    /// The decomposition of a series indexed by an infinite subset.
    SeriesFamily {
        input: String,
        /// `ap:<first>:<step>` or `bits:<seed>`.
        #[arg(long)]
        subset: String,
    },
    /// Heuristic search for a two-summand series decomposition.
    Probe { input: String },
    /// Run the verification suite.
    Verify {
        /// Degree bound of the exhaustive sweep.
        #[arg(long, default_value_t = SWEEP_BOUNDS.0)]
        max_deg: usize,
        /// Coefficient bound of the exhaustive sweep.
        #[arg(long, default_value_t = SWEEP_BOUNDS.1)]
        max_coeff: u64,
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            code: EXIT_OK,
            text,
            json,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        e if e.is_inconclusive() => EXIT_INCONCLUSIVE,
        Error::DegreeBoundExceeded { .. } | Error::MassBoundExceeded { .. } => EXIT_INCONCLUSIVE,
        Error::Defect(_) | Error::UnrepresentableSplit(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn error_json(code: &str, message: &str) -> Value {
    json!({"error": {"code": code, "message": message}})
}

fn read_input(input: &str) -> Result<String> {
    let io = |e: std::io::Error| Error::Parse {
        pos: 0,
        msg: format!("cannot read input: {e}"),
    };
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        return Ok(s.trim().to_string());
    }
    match input.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)
            .map_err(io)?
            .trim()
            .to_string()),
        None => Ok(input.to_string()),
    }
}

struct Context {
    base: Ring,
    ring_name: String,
    vars: Vec<String>,
    cfg: SearchConfig,
    order: i64,
}

impl Context {
    fn new(c: &Common) -> Result<Context> {
        let (ring, n) = Ring::from_name(&c.ring)?;
        let base = ring.base().clone();
        let vars = if c.vars.is_empty() {
            default_vars(n)
        } else {
            c.vars.clone()
        };
        if c.ring.starts_with("multi:") && vars.len() != n {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("{} needs {n} variables, got {}", c.ring, vars.len()),
            });
        }
        let mut cfg = SearchConfig::from_env();
        if let Some(b) = c.budget {
            cfg.candidate_budget = b;
        }
        cfg.check_order = c.order;
        Ok(Context {
            base,
            ring_name: c.ring.clone(),
            vars,
            cfg,
            order: c.order,
        })
    }

    fn poly(&self, input: &str) -> Result<LaurentPoly> {
        parse_poly_with(&read_input(input)?, &self.base, &self.vars)
    }

    fn series(&self, input: &str) -> Result<StructuredSeries> {
        if self.vars != ["x"] {
            return Err(Error::Parse {
                pos: 0,
                msg: "series are written in the single variable x".into(),
            });
        }
        parse_series(&read_input(input)?, &self.base)
    }

    fn show(&self, p: &LaurentPoly) -> String {
        p.display_with(&self.vars)
    }
}

fn verdict_report(ctx: &Context, v: &GoldbachVerdict) -> Report {
    let mut text = format!("{}\n", v.kind.name());
    for s in &v.summands {
        text.push_str(&format!(
            "  {}  [{}]\n",
            ctx.show(&s.poly),
            s.certificate.kind.name()
        ));
    }
    Report::ok(text, v.to_json_named(&ctx.vars))
}

fn decompose(ctx: &Context, input: &str, monomials: bool) -> Result<Report> {
    let f = ctx.poly(input)?;
    let v = if monomials {
        goldbach_multi(&f, &ctx.cfg)?
    } else {
        goldbach_auto(&f, &ctx.cfg)?
    };
    Ok(verdict_report(ctx, &v))
}

fn certify(ctx: &Context, input: &str) -> Result<Report> {
    let f = ctx.poly(input)?;
    let c = certify_irreducible(&f, &ctx.cfg)?;
    let text = match &c {
        Certification::Irreducible(cert) => format!("Irreducible [{}]\n", cert.kind.name()),
        Certification::NotIrreducible(w) => format!(
            "NotIrreducible\n  ({}) * ({})\n",
            ctx.show(&w.g),
            ctx.show(&w.h)
        ),
        Certification::Unknown(r) => format!("Unknown\n  {r}\n"),
    };
    let json = match &c {
        Certification::NotIrreducible(w) => {
            json!({"verdict": "NotIrreducible", "witness": w.to_json_named(&ctx.vars)})
        }
        c => c.to_json(),
    };
    let code = if matches!(c, Certification::Unknown(_)) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok(Report { code, text, json })
}

fn factor(ctx: &Context, input: &str) -> Result<Report> {
    let f = ctx.poly(input)?;
    Ok(match factor_bruteforce(&f, &ctx.cfg)? {
        Some(w) => Report::ok(
            format!("Factored\n  ({}) * ({})\n", ctx.show(&w.g), ctx.show(&w.h)),
            json!({"verdict": "Factored", "witness": w.to_json_named(&ctx.vars)}),
        ),
        None => Report::ok("NoFactor\n".into(), json!({"verdict": "NoFactor"})),
    })
}

fn enumerate(ctx: &Context, input: &str, parts: usize) -> Result<Report> {
    let f = ctx.poly(input)?;
    let found = enumerate_goldbach_bruteforce(&f, parts, &ctx.cfg)?;
    let mut text = format!("{} decompositions into {parts}\n", found.len());
    for t in &found {
        text.push_str(&format!(
            "  {}\n",
            t.iter()
                .map(|p| ctx.show(p))
                .collect::<Vec<_>>()
                .join("  |  ")
        ));
    }
    let json = json!({
        "parts": parts,
        "count": found.len(),
        "decompositions": found.iter().map(|t| t.iter().map(|p| p.to_json(&ctx.vars)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Report::ok(text, json))
}

fn series_report(ctx: &Context, d: &SeriesDecomposition) -> Report {
    let mut text = format!("{}\n", d.case.name());
    for s in &d.summands {
        text.push_str(&format!(
            "  {}  [{}]\n",
            s.series,
            s.certificate.kind.name()
        ));
        text.push_str(&format!(
            "    to order {}: {}\n",
            ctx.order,
            ctx.show(&s.series.truncate(ctx.order))
        ));
    }
    let mut json = d.to_json(ctx.order);
    json["order"] = json!(ctx.order);
    Report::ok(text, json)
}

fn probe(ctx: &Context, input: &str, budget: u64) -> Result<Report> {
    let f = ctx.series(input)?;
    let r = conjecture_probe(&f, budget, &ctx.cfg)?;
    let text = match &r {
        ProbeOutcome::Found(a, b) => format!(
            "Found\n  {}  [{}]\n  {}  [{}]\n",
            a.series,
            a.certificate.kind.name(),
            b.series,
            b.certificate.kind.name()
        ),
        ProbeOutcome::AlreadyIrreducible(c) => {
            format!(
                "AlreadyIrreducible [{}]\n  the input is irreducible; nothing to probe\n",
                c.kind.name()
            )
        }
        ProbeOutcome::NotFound { candidates } => {
            format!("NotFound\n  {candidates} candidates; this is not evidence against a two-summand split\n")
        }
    };
    Ok(Report::ok(text, r.to_json(ctx.order)))
}

fn verify(ctx: &Context, jobs: usize, bounds: (usize, u64), only: &[u32]) -> Result<Report> {
    if ctx.ring_name != "n0" {
        return Err(Error::Parse {
            pos: 0,
            msg: "verify runs over n0 and its own fixed instances".into(),
        });
    }
    if let Some(bad) = only.iter().find(|&&i| !(1..=9).contains(&i)) {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("no criterion {bad}"),
        });
    }
    let results = run_suite(only, bounds, jobs, &ctx.cfg);
    let passed = results.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &results {
        text.push_str(&r.line());
        text.push('\n');
    }
    text.push_str(if passed {
        "all checks passed\n"
    } else {
        "some checks FAILED\n"
    });
    let json = json!({
        "sweep": {"max_deg": bounds.0, "max_coeff": bounds.1},
        "criteria": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "passed": passed,
    });
    Ok(Report {
        code: if passed { EXIT_OK } else { EXIT_MISMATCH },
        text,
        json,
    })
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let ctx = Context::new(&cli.common)?;
    match &cli.command {
        Command::Decompose { input, monomials } => decompose(&ctx, input, *monomials),
        Command::Certify { input } => certify(&ctx, input),
        Command::Factor { input } => factor(&ctx, input),
        Command::Enumerate { input, parts } => enumerate(&ctx, input, *parts),
        Command::SeriesDecompose { input } => Ok(series_report(
            &ctx,
            &decompose_series(&ctx.series(input)?, &ctx.cfg)?,
        )),
        Command::SeriesFamily { input, subset } => {
            let k = SubsetSpec::parse(subset)?;
            let d = decomposition_family(&ctx.series(input)?, &k, &ctx.cfg)?;
            let mut r = series_report(&ctx, &d);
            r.json["subset"] = k.to_json();
            Ok(r)
        }
        Command::Probe { input } => probe(
            &ctx,
            input,
            cli.common.budget.unwrap_or(DEFAULT_PROBE_BUDGET),
        ),
        Command::Verify {
            max_deg,
            max_coeff,
            only,
        } => verify(&ctx, cli.common.jobs, (*max_deg, *max_coeff), only),
    }
}

fn render(json_mode: bool, code: i32, text: String, json: Value) -> CliOutput {
    let stdout = if json_mode {
        format!("{}\n", serde_json::to_string_pretty(&json).expect("json"))
    } else {
        text
    };
    CliOutput {
        code,
        stdout,
        stderr: String::new(),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_mode = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CliOutput {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let msg = e.to_string();
            if json_mode {
                let first = msg
                    .lines()
                    .next()
                    .unwrap_or("")
                    .trim_start_matches("error: ");
                return render(true, EXIT_USAGE, String::new(), error_json("Usage", first));
            }
            return CliOutput {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: msg,
            };
        }
    };
    let start = Instant::now();
    let mut out = match dispatch(&cli) {
        Ok(r) => render(cli.common.json, r.code, r.text, r.json),
        Err(e) => {
            let code = exit_code(&e);
            if cli.common.json {
                render(
                    true,
                    code,
                    String::new(),
                    error_json(e.code(), &e.to_string()),
                )
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                }
            }
        }
    };
    out.stderr.push_str(&format!(
        "elapsed: {:.3} s\n",
        start.elapsed().as_secs_f64()
    ));
    out
}

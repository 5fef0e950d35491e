//! Command-line front end: iteration tables, threshold certificates, lemma
//! verification reports, fixture suite runs.
//!
//! Subcommands: `iterate`, `threshold`, `verify`, `fixtures`. Exit codes:
//! 0 when every expected outcome holds, 1 on any violation, 2 on usage or
//! domain errors. Reports emit as fixed-width text, machine JSON (exact
//! `num/den` strings plus correctly rounded decimals), or CSV; `--out`
//! writes to a file, with `EXPCALC_OUT_DIR` supplying the directory for
//! relative paths.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use expcalc_core::coulomb::{self, ThresholdResult};
use expcalc_core::expr::parse_sym_exponent;
use expcalc_core::fixtures;
use expcalc_core::interval::ClosedInterval;
use expcalc_core::lorenz;
use expcalc_core::product_laws::{afs_check, AfsExponentSextuple};
use expcalc_core::rational::{exact_string, parse_rational, Rational};
use expcalc_core::report::{
    ConditionRecord, IterationRecord, Num, Payload, ReportDocument, RootRecord, ThresholdRecord,
    TraceRowRecord, VerificationRecord, VerificationSection, DEFAULT_PRECISION,
};
use expcalc_core::sym::SDomain;
use expcalc_core::Error as CoreError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const OUT_DIR_ENV: &str = "EXPCALC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "expcalc",
    version,
    about = "Exact exponent calculus for dispersive regularity bootstraps",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to this file instead of stdout (relative paths go
    /// under $EXPCALC_OUT_DIR when set).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Significant digits for decimal renderings.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gauge {
    Coulomb,
    Lorenz,
}

impl Gauge {
    fn name(self) -> &'static str {
        match self {
            Gauge::Coulomb => "coulomb",
            Gauge::Lorenz => "lorenz",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a bootstrap iteration and print the exponent table.
    Iterate {
        #[arg(long, value_enum)]
        gauge: Gauge,
        /// Regularity parameter, `p/q` or decimal (exact either way).
        #[arg(long)]
        s: Option<String>,
        /// Number of iteration rows.
        #[arg(long, default_value_t = coulomb::DEFAULT_MAX_STEPS)]
        k: u32,
        /// Grid `a:b:n` of n+1 evenly spaced values of s (one table each).
        #[arg(long)]
        grid: Option<String>,
    },
    /// Derive, certify and refine a gauge's regularity threshold.
    Threshold {
        #[arg(long, value_enum)]
        gauge: Gauge,
        /// Root refinement tolerance (default 10^-12 Coulomb, 10^-10 Lorenz).
        #[arg(long)]
        tol: Option<String>,
    },
    /// Verify a lemma suite, the fixture catalog, or an ad hoc bilinear
    /// instance: target is one of appendix51 | appendix52 | fixtures |
    /// afs | all.
    Verify {
        target: String,
        /// Override the verification interval, `lo:hi`.
        #[arg(long)]
        interval: Option<String>,
        /// Verify at a single rational point instead of an interval.
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        s0: Option<String>,
        #[arg(long)]
        s1: Option<String>,
        #[arg(long)]
        s2: Option<String>,
        #[arg(long)]
        b0: Option<String>,
        #[arg(long)]
        b1: Option<String>,
        #[arg(long)]
        b2: Option<String>,
        /// Run the fixture suite once per grid point, `a:b:n` (fixtures
        /// target only).
        #[arg(long)]
        grid: Option<String>,
    },
    /// Run the fixture suite.
    Fixtures {
        /// Optional sample point (fixtures containing it run pointwise).
        #[arg(long)]
        s: Option<String>,
        /// Run the suite once per grid point, `a:b:n`.
        #[arg(long)]
        grid: Option<String>,
    },
}

/// Entry point shared by the binary and the tests: parse, run, render.
/// Returns the rendered output and the process exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return (e.to_string(), EXIT_USAGE),
    };
    match execute(&cli) {
        Ok(outputs) => {
            let code = if outputs.iter().all(|d| d.ok()) {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            let rendered = render_documents(&outputs, cli.format);
            match write_out(&cli.out, &rendered) {
                Ok(Some(path)) => (format!("report written to {}\n", path.display()), code),
                Ok(None) => (rendered, code),
                Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
            }
        }
        Err(e) => {
            let code = match e {
                CoreError::Inconsistency(_) => EXIT_VIOLATION,
                _ => EXIT_USAGE,
            };
            (format!("error: {e}\n"), code)
        }
    }
}

fn execute(cli: &Cli) -> expcalc_core::Result<Vec<ReportDocument>> {
    match &cli.command {
        Command::Iterate { gauge, s, k, grid } => {
            let points: Vec<Rational> = match (s, grid) {
                (Some(text), None) => vec![parse_rational(text)?],
                (None, Some(spec)) => parse_grid(spec)?,
                _ => {
                    return Err(CoreError::Parse(
                        "iterate needs exactly one of --s or --grid".into(),
                    ))
                }
            };
            points
                .iter()
                .map(|s| cmd_iterate(*gauge, s, *k, cli.precision))
                .collect()
        }
        Command::Threshold { gauge, tol } => {
            let tol = match tol {
                Some(text) => parse_rational(text)?,
                None => default_tolerance(*gauge),
            };
            Ok(vec![cmd_threshold(*gauge, &tol, cli.precision)?])
        }
        Command::Verify {
            target,
            interval,
            s,
            s0,
            s1,
            s2,
            b0,
            b1,
            b2,
            grid,
        } => {
            if let Some(spec) = grid {
                if target != "fixtures" {
                    return Err(CoreError::Parse(
                        "--grid applies to the fixtures target only".into(),
                    ));
                }
                return fixtures_over_grid(spec, "verify fixtures");
            }
            let doc = match target.as_str() {
                "appendix51" => cmd_verify_appendix51(interval.as_deref())?,
                "appendix52" => cmd_verify_appendix52(interval.as_deref())?,
                "fixtures" => cmd_fixtures(s.as_deref(), "verify fixtures")?,
                "afs" => {
                    let sextuple = [s0, s1, s2, b0, b1, b2];
                    let names = ["--s0", "--s1", "--s2", "--b0", "--b1", "--b2"];
                    let mut parsed = Vec::with_capacity(6);
                    for (slot, name) in sextuple.iter().zip(names) {
                        let text = slot.as_deref().ok_or_else(|| {
                            CoreError::Parse(format!("verify afs requires {name}"))
                        })?;
                        parsed.push(parse_sym_exponent(text)?);
                    }
                    cmd_verify_afs(
                        AfsExponentSextuple::new(
                            parsed[0].clone(),
                            parsed[1].clone(),
                            parsed[2].clone(),
                            parsed[3].clone(),
                            parsed[4].clone(),
                            parsed[5].clone(),
                        ),
                        s.as_deref(),
                        interval.as_deref(),
                    )?
                }
                "all" => cmd_verify_all()?,
                other => {
                    return Err(CoreError::Parse(format!(
                        "unknown verify target `{other}` (expected appendix51 | appendix52 | fixtures | afs | all)"
                    )))
                }
            };
            Ok(vec![doc])
        }
        Command::Fixtures { s, grid } => match (s, grid) {
            (_, Some(spec)) => fixtures_over_grid(spec, "fixtures"),
            (s, None) => Ok(vec![cmd_fixtures(s.as_deref(), "fixtures")?]),
        },
    }
}

fn fixtures_over_grid(spec: &str, command: &str) -> expcalc_core::Result<Vec<ReportDocument>> {
    parse_grid(spec)?
        .iter()
        .map(|s| cmd_fixtures(Some(&exact_string(s)), command))
        .collect()
}

pub fn default_tolerance(gauge: Gauge) -> Rational {
    let exp = match gauge {
        Gauge::Coulomb => 12,
        Gauge::Lorenz => 10,
    };
    Rational::new(1.into(), num_bigint::BigInt::from(10u8).pow(exp))
}

/// `a:b:n` into n+1 evenly spaced rationals from a to b inclusive.
pub fn parse_grid(spec: &str) -> expcalc_core::Result<Vec<Rational>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CoreError::Parse(format!(
            "grid must be a:b:n, got `{spec}`"
        )));
    }
    let a = parse_rational(parts[0])?;
    let b = parse_rational(parts[1])?;
    let n: u32 = parts[2].parse().map_err(|_| {
        CoreError::Parse(format!("grid count must be an integer, got `{}`", parts[2]))
    })?;
    if n == 0 {
        return Ok(vec![a]);
    }
    let step = (&b - &a) / Rational::from_integer(n.into());
    Ok((0..=n)
        .map(|i| &a + &step * Rational::from_integer(i.into()))
        .collect())
}

fn parse_interval(spec: &str) -> expcalc_core::Result<ClosedInterval> {
    let (lo, hi) = spec
        .split_once(':')
        .ok_or_else(|| CoreError::Parse(format!("interval must be lo:hi, got `{spec}`")))?;
    ClosedInterval::new(parse_rational(lo)?, parse_rational(hi)?)
}

fn num(x: &Rational, precision: usize) -> Num {
    Num::from_rational(x, precision)
}

/// Build the iteration document for one gauge at one exact s.
pub fn cmd_iterate(
    gauge: Gauge,
    s: &Rational,
    k: u32,
    precision: usize,
) -> expcalc_core::Result<ReportDocument> {
    let record = match gauge {
        Gauge::Coulomb => {
            let tr = coulomb::trace(s, k)?;
            let rows = tr
                .rows
                .iter()
                .map(|r| TraceRowRecord {
                    k: r.k,
                    inv_r: num(&r.inv_r, precision),
                    inv_q: num(&r.inv_q, precision),
                    inv_rtilde: None,
                    inv_qtilde: None,
                    sobolev_index: num(&r.sobolev_index, precision),
                    modulation_index: num(&r.modulation_index, precision),
                    gap: num(&r.gap, precision),
                })
                .collect();
            let mut limits = BTreeMap::new();
            limits.insert("inv_r_inf".to_string(), num(&tr.inv_r_inf, precision));
            limits.insert("inv_q_inf".to_string(), num(&tr.inv_q_inf, precision));
            IterationRecord {
                gauge: "coulomb".into(),
                s: num(s, precision),
                rows,
                limits,
                contraction_factor: num(&tr.contraction_factor, precision),
                converged: tr.converged,
                notes: tr.notes,
            }
        }
        Gauge::Lorenz => {
            let tr = lorenz::trace(s, k)?;
            let two = Rational::from_integer(2.into());
            let rows = tr
                .rows
                .iter()
                .map(|r| TraceRowRecord {
                    k: r.k,
                    inv_r: num(&r.inv_r, precision),
                    inv_q: num(&r.inv_q, precision),
                    inv_rtilde: Some(num(&r.inv_rtilde, precision)),
                    inv_qtilde: Some(num(&r.inv_qtilde, precision)),
                    sobolev_index: num(&(&two - s - &two * &r.inv_r), precision),
                    modulation_index: num(
                        &(expcalc_core::rational::rat(1, 2) - &r.inv_r),
                        precision,
                    ),
                    gap: num(&tr.gap(r), precision),
                })
                .collect();
            let mut limits = BTreeMap::new();
            limits.insert("inv_r_inf".to_string(), num(&tr.inv_r_inf, precision));
            limits.insert("inv_q_inf".to_string(), num(&tr.inv_q_inf, precision));
            limits.insert(
                "inv_rtilde_inf".to_string(),
                num(&tr.inv_rtilde_inf, precision),
            );
            limits.insert(
                "inv_qtilde_inf".to_string(),
                num(&tr.inv_qtilde_inf, precision),
            );
            IterationRecord {
                gauge: "lorenz".into(),
                s: num(s, precision),
                rows,
                limits,
                contraction_factor: num(&tr.contraction_factor, precision),
                converged: tr.converged,
                notes: tr.notes,
            }
        }
    };
    let mut inputs = BTreeMap::new();
    inputs.insert("gauge".into(), gauge.name().to_string());
    inputs.insert("s".into(), exact_string(s));
    inputs.insert("k".into(), k.to_string());
    Ok(ReportDocument::new(
        "iterate",
        inputs,
        Payload::Iteration(record),
    ))
}

fn root_record(r: &expcalc_core::roots::RootBracket, precision: usize) -> RootRecord {
    RootRecord {
        bracket_lo: num(r.bracket.lo(), precision),
        bracket_hi: num(r.bracket.hi(), precision),
        approx: num(&r.approx, precision),
        exact: r.exact,
    }
}

fn threshold_record(th: &ThresholdResult, precision: usize) -> ThresholdRecord {
    ThresholdRecord {
        gauge: th.gauge.to_string(),
        defining_polynomial: th.defining_polynomial.to_string(),
        reference_polynomial: th.reference_polynomial.to_string(),
        proportionality_factor: exact_string(&th.proportionality_factor),
        threshold_root: RootRecord {
            bracket_lo: num(th.certified_bracket.lo(), precision),
            bracket_hi: num(th.certified_bracket.hi(), precision),
            approx: num(&th.approx, precision),
            exact: false,
        },
        all_roots: th
            .all_roots
            .iter()
            .map(|r| root_record(r, precision))
            .collect(),
        closed_form: th.closed_form.clone(),
        direction: th.direction.clone(),
        direction_checks: th.direction_checks.conditions.clone(),
        flags: th.flags.clone(),
    }
}

pub fn cmd_threshold(
    gauge: Gauge,
    tol: &Rational,
    precision: usize,
) -> expcalc_core::Result<ReportDocument> {
    let th = match gauge {
        Gauge::Coulomb => coulomb::threshold(tol)?,
        Gauge::Lorenz => lorenz::threshold(tol)?,
    };
    let mut inputs = BTreeMap::new();
    inputs.insert("gauge".into(), gauge.name().to_string());
    inputs.insert("tol".into(), exact_string(tol));
    Ok(ReportDocument::new(
        "threshold",
        inputs,
        Payload::Threshold(threshold_record(&th, precision)),
    ))
}

pub fn cmd_verify_appendix51(interval: Option<&str>) -> expcalc_core::Result<ReportDocument> {
    let i = match interval {
        Some(spec) => parse_interval(spec)?,
        None => ClosedInterval::new(
            expcalc_core::rational::rat(3, 4),
            expcalc_core::rational::rat(1, 1),
        )?,
    };
    let section = coulomb::verify_appendix_51(&i)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("target".into(), "appendix51".into());
    inputs.insert("interval".into(), format!("{i}"));
    Ok(ReportDocument::new(
        "verify",
        inputs,
        Payload::Verification(VerificationRecord {
            target: "appendix51".into(),
            sections: vec![section],
        }),
    ))
}

pub fn cmd_verify_appendix52(interval: Option<&str>) -> expcalc_core::Result<ReportDocument> {
    let mut sections = lorenz::verify_appendix_52()?;
    if let Some(spec) = interval {
        // Override the base-case interval: re-run that section there.
        let i = parse_interval(spec)?;
        sections[0] = lorenz::verify_appendix_52_base_on(&i)?;
    }
    let mut inputs = BTreeMap::new();
    inputs.insert("target".into(), "appendix52".into());
    if let Some(spec) = interval {
        inputs.insert("interval".into(), spec.to_string());
    }
    Ok(ReportDocument::new(
        "verify",
        inputs,
        Payload::Verification(VerificationRecord {
            target: "appendix52".into(),
            sections,
        }),
    ))
}

pub fn cmd_verify_afs(
    x: AfsExponentSextuple,
    s: Option<&str>,
    interval: Option<&str>,
) -> expcalc_core::Result<ReportDocument> {
    let domain = match (s, interval) {
        (Some(point), None) => SDomain::Point(parse_rational(point)?),
        (None, Some(spec)) => SDomain::Interval(parse_interval(spec)?),
        (None, None) => expcalc_core::product_laws::standard_domain(),
        _ => {
            return Err(CoreError::Parse(
                "verify afs takes at most one of --s or --interval".into(),
            ))
        }
    };
    let report = afs_check(&x, &domain)?;
    let section = VerificationSection::from_report("bilinear estimate conditions", &domain, report);
    let mut inputs = BTreeMap::new();
    inputs.insert("target".into(), "afs".into());
    inputs.insert(
        "exponents".into(),
        format!(
            "s0={}, s1={}, s2={}, b0={}, b1={}, b2={}",
            x.s0, x.s1, x.s2, x.b0, x.b1, x.b2
        ),
    );
    Ok(ReportDocument::new(
        "verify",
        inputs,
        Payload::Verification(VerificationRecord {
            target: "afs".into(),
            sections: vec![section],
        }),
    ))
}

pub fn cmd_fixtures(s: Option<&str>, command: &str) -> expcalc_core::Result<ReportDocument> {
    let point = match s {
        Some(text) => Some(parse_rational(text)?),
        None => None,
    };
    let suite = fixtures::run_suite(point.as_ref())?;
    let mut inputs = BTreeMap::new();
    if let Some(p) = &point {
        inputs.insert("s".into(), exact_string(p));
    }
    Ok(ReportDocument::new(
        command,
        inputs,
        Payload::Fixtures(suite),
    ))
}

pub fn cmd_verify_all() -> expcalc_core::Result<ReportDocument> {
    let mut sections = Vec::new();
    sections.push(coulomb::verify_appendix_51(&ClosedInterval::new(
        expcalc_core::rational::rat(3, 4),
        expcalc_core::rational::rat(1, 1),
    )?)?);
    sections.extend(lorenz::verify_appendix_52()?);

    for gauge in [Gauge::Coulomb, Gauge::Lorenz] {
        let th = match gauge {
            Gauge::Coulomb => coulomb::threshold(&default_tolerance(gauge))?,
            Gauge::Lorenz => lorenz::threshold(&default_tolerance(gauge))?,
        };
        let pass = th.direction_checks.pass();
        let mut section = VerificationSection {
            title: format!("threshold certificate ({})", gauge.name()),
            domain: "s ∈ [3/4, 1]".into(),
            pass,
            conditions: th.direction_checks.conditions,
            probes: Vec::new(),
            notes: th.flags,
        };
        section.notes.push(format!(
            "defining polynomial {} with root ≈ {} in {}",
            th.defining_polynomial,
            expcalc_core::rational::decimal_string(&th.approx, 12),
            th.certified_bracket
        ));
        sections.push(section);
    }

    let suite = fixtures::run_suite(None)?;
    let conditions = suite
        .outcomes
        .iter()
        .map(|o| {
            ConditionRecord::identity(
                o.id.clone(),
                format!("fixture expected {} and got {}", o.expected, o.actual),
                o.matched,
            )
        })
        .collect();
    sections.push(VerificationSection {
        title: "fixture suite".into(),
        domain: "per-fixture domains".into(),
        pass: suite.mismatched == 0,
        conditions,
        probes: Vec::new(),
        notes: Vec::new(),
    });

    let mut inputs = BTreeMap::new();
    inputs.insert("target".into(), "all".into());
    Ok(ReportDocument::new(
        "verify",
        inputs,
        Payload::Verification(VerificationRecord {
            target: "all".into(),
            sections,
        }),
    ))
}

fn render_documents(docs: &[ReportDocument], format: Format) -> String {
    match format {
        Format::Json => {
            if docs.len() == 1 {
                docs[0].to_json()
            } else {
                let mut s = serde_json::to_string_pretty(docs).expect("report serialization");
                s.push('\n');
                s
            }
        }
        Format::Text => docs.iter().map(|d| d.to_text()).collect(),
        Format::Csv => docs.iter().map(|d| d.to_csv()).collect(),
    }
}

fn write_out(out: &Option<PathBuf>, rendered: &str) -> std::io::Result<Option<PathBuf>> {
    let Some(path) = out else { return Ok(None) };
    let full = if path.is_relative() {
        match std::env::var_os(OUT_DIR_ENV) {
            Some(dir) => PathBuf::from(dir).join(path),
            None => path.clone(),
        }
    } else {
        path.clone()
    };
    if let Some(parent) = full.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(&full, rendered)?;
    Ok(Some(full))
}

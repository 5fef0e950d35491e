//! The curated fixture suite: every explicitly printed exponent
//! instantiation, bound to the checker that must accept (or reject) it.
//!
//! Fixtures ship as a versioned JSON data file embedded in the crate; each
//! record names its source context, the checker kind, the exact exponent
//! payload, the s-domain, and the expected outcome. Expected-fail probes are
//! part of the suite so that regressions are caught in both directions. The
//! suite is deterministic: fixtures run in id order and two runs produce
//! byte-identical reports.

use serde::{Deserialize, Serialize};

use crate::expr::{parse_constant, parse_ratfn, parse_sym_exponent};
use crate::interval::ClosedInterval;
use crate::product_laws::{
    afs_check, sobolev_product_check, AfsExponentSextuple, ProductLawVariant,
};
use crate::rational::{exact_string, rat, Rational};
use crate::report::{ConditionRecord, ConditionReport, FixtureOutcomeRecord, FixtureSuiteRecord};
use crate::roots::isolate_and_refine_roots;
use crate::spaces::{
    sobolev_embed, strichartz_admissible, strichartz_dual_shift, SpaceMembership, StrichartzPair,
};
use crate::sym::{check_sign, SDomain, Strictness, SymExponent};
use crate::{Error, Result};

const FIXTURE_DATA: &str = include_str!("../data/fixtures.json");
pub const FIXTURE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FixtureFile {
    schema_version: u32,
    fixtures: Vec<Fixture>,
}

/// One catalogued instantiation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub citation: String,
    pub checker: CheckerDef,
    pub domain: DomainDef,
    /// "pass" or "fail".
    pub expected: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckerDef {
    Afs {
        s0: String,
        s1: String,
        s2: String,
        b0: String,
        b1: String,
        b2: String,
    },
    Product {
        s0: String,
        s1: String,
        s2: String,
        variant: String,
    },
    DualShift {
        input_sobolev: String,
        input_inv_r_prime: String,
        expect_sobolev: String,
        expect_modulation: String,
    },
    Embedding {
        sobolev: String,
        inv_r: String,
        inv_p: String,
        homogeneous: bool,
    },
    Conditions {
        items: Vec<ConditionDef>,
    },
}

impl CheckerDef {
    pub fn kind(&self) -> &'static str {
        match self {
            CheckerDef::Afs { .. } => "afs",
            CheckerDef::Product { .. } => "product",
            CheckerDef::DualShift { .. } => "dual-shift",
            CheckerDef::Embedding { .. } => "embedding",
            CheckerDef::Conditions { .. } => "conditions",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionDef {
    pub id: String,
    #[serde(flatten)]
    pub check: CheckKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Sign {
        expr: String,
        strict: bool,
        expect: String,
    },
    Identity {
        lhs: String,
        rhs: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo_from_root: Option<RootEndpoint>,
    pub hi: String,
    #[serde(default)]
    pub open_lo: bool,
}

/// Left endpoint taken from the certified upper end of a root bracket, for
/// claims whose natural endpoint is irrational.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootEndpoint {
    pub poly: String,
    pub window_lo: String,
    pub window_hi: String,
    pub tol: String,
}

/// Load the embedded catalog, sorted by fixture id.
pub fn catalog() -> Result<Vec<Fixture>> {
    let file: FixtureFile = serde_json::from_str(FIXTURE_DATA)
        .map_err(|e| Error::FixtureDefinition(format!("bad fixture data file: {e}")))?;
    if file.schema_version != FIXTURE_SCHEMA_VERSION {
        return Err(Error::FixtureDefinition(format!(
            "fixture schema version {} unsupported (expected {FIXTURE_SCHEMA_VERSION})",
            file.schema_version
        )));
    }
    let mut fixtures = file.fixtures;
    fixtures.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(fixtures)
}

/// Resolve a fixture's stored domain to the closed interval actually
/// verified (open left endpoints are nudged by 10^-6).
pub fn resolve_domain(def: &DomainDef) -> Result<(ClosedInterval, Option<Rational>)> {
    let hi = parse_constant(&def.hi)?;
    let lo = match (&def.lo, &def.lo_from_root) {
        (Some(text), None) => parse_constant(text)?,
        (None, Some(root)) => {
            let p = parse_ratfn(&root.poly)?.as_polynomial().ok_or_else(|| {
                Error::FixtureDefinition("endpoint poly must be polynomial".into())
            })?;
            let window = ClosedInterval::new(
                parse_constant(&root.window_lo)?,
                parse_constant(&root.window_hi)?,
            )?;
            let tol = parse_constant(&root.tol)?;
            let roots = isolate_and_refine_roots(&p, &window, &tol)?;
            if roots.len() != 1 {
                return Err(Error::FixtureDefinition(format!(
                    "endpoint polynomial has {} roots in {window}, need exactly 1",
                    roots.len()
                )));
            }
            roots[0].bracket.hi().clone()
        }
        _ => {
            return Err(Error::FixtureDefinition(
                "domain needs exactly one of `lo` or `lo_from_root`".into(),
            ))
        }
    };
    let open_endpoint = if def.open_lo { Some(lo.clone()) } else { None };
    let lo = if def.open_lo {
        lo + rat(1, 1_000_000)
    } else {
        lo
    };
    Ok((ClosedInterval::new(lo, hi)?, open_endpoint))
}

fn run_checker(checker: &CheckerDef, domain: &SDomain) -> Result<ConditionReport> {
    match checker {
        CheckerDef::Afs {
            s0,
            s1,
            s2,
            b0,
            b1,
            b2,
        } => {
            let x = AfsExponentSextuple::new(
                parse_sym_exponent(s0)?,
                parse_sym_exponent(s1)?,
                parse_sym_exponent(s2)?,
                parse_sym_exponent(b0)?,
                parse_sym_exponent(b1)?,
                parse_sym_exponent(b2)?,
            );
            afs_check(&x, domain)
        }
        CheckerDef::Product {
            s0,
            s1,
            s2,
            variant,
        } => {
            let v = match variant.as_str() {
                "inhomogeneous_a" => ProductLawVariant::InhomogeneousA,
                "homogeneous_b" => ProductLawVariant::HomogeneousB,
                other => {
                    return Err(Error::FixtureDefinition(format!(
                        "unknown product-law variant `{other}`"
                    )))
                }
            };
            sobolev_product_check(
                &parse_sym_exponent(s0)?,
                &parse_sym_exponent(s1)?,
                &parse_sym_exponent(s2)?,
                v,
                domain,
            )
        }
        CheckerDef::DualShift {
            input_sobolev,
            input_inv_r_prime,
            expect_sobolev,
            expect_modulation,
        } => {
            let inv_r_prime = parse_sym_exponent(input_inv_r_prime)?;
            let input = SpaceMembership::mixed_norm(
                parse_sym_exponent(input_sobolev)?,
                SymExponent::from_rational(rat(1, 2)),
                inv_r_prime.clone(),
            );
            let mut report = ConditionReport::new();
            let out = strichartz_dual_shift(&input, domain)?;
            let want_sobolev = parse_sym_exponent(expect_sobolev)?;
            let want_modulation = parse_sym_exponent(expect_modulation)?;
            report.push(ConditionRecord::identity(
                "target-sobolev",
                format!(
                    "shift lands at sigma = {} (expected {})",
                    out.sobolev, want_sobolev
                ),
                out.sobolev.identical_to(&want_sobolev),
            ));
            let got_mod = out.modulation.expect("wave-Sobolev target");
            report.push(ConditionRecord::identity(
                "target-modulation",
                format!("shift lands at b = {got_mod} (expected {want_modulation})"),
                got_mod.identical_to(&want_modulation),
            ));
            // Conjugate bookkeeping is involutive.
            let twice = crate::spaces::conjugate_inv(&crate::spaces::conjugate_inv(&inv_r_prime));
            report.push(ConditionRecord::identity(
                "conjugate-involution",
                "conjugating 1/r' twice returns it exactly",
                twice.identical_to(&inv_r_prime),
            ));
            // The implied (q = 2, r) pair is admissible under the endpoint
            // convention.
            let pair = StrichartzPair::from_inverses(
                SymExponent::from_rational(rat(1, 2)),
                crate::spaces::conjugate_inv(&inv_r_prime),
            );
            let (ok, sub) = strichartz_admissible(&pair, domain, true)?;
            report.push(
                ConditionRecord::identity(
                    "pair-admissible",
                    "the implied (q=2, r) pair satisfies the admissibility conditions",
                    ok,
                )
                .with_note(format!(
                    "sub-conditions: {}",
                    sub.conditions
                        .iter()
                        .map(|c| format!("{}={}", c.id, c.satisfied))
                        .collect::<Vec<_>>()
                        .join(", ")
                )),
            );
            Ok(report)
        }
        CheckerDef::Embedding {
            sobolev,
            inv_r,
            inv_p,
            homogeneous,
        } => {
            let mut from =
                SpaceMembership::spatial(parse_sym_exponent(sobolev)?, parse_sym_exponent(inv_r)?);
            if *homogeneous {
                from = from.homogeneous();
            }
            let (_, report) = sobolev_embed(&from, &parse_sym_exponent(inv_p)?, domain)?;
            Ok(report)
        }
        CheckerDef::Conditions { items } => {
            let mut report = ConditionReport::new();
            for item in items {
                match &item.check {
                    CheckKind::Sign {
                        expr,
                        strict,
                        expect,
                    } => {
                        let margin = parse_sym_exponent(expr)?;
                        let oriented = match expect.as_str() {
                            "positive" => margin,
                            "negative" => -&margin,
                            other => {
                                return Err(Error::FixtureDefinition(format!(
                                    "sign expectation must be positive|negative, got `{other}`"
                                )))
                            }
                        };
                        let strictness = if *strict {
                            Strictness::Strict
                        } else {
                            Strictness::NonStrict
                        };
                        let chk = check_sign(&oriented, domain, strictness)?;
                        report.push(ConditionRecord::from_check(
                            item.id.clone(),
                            format!("{expr} {} 0", sign_symbol(expect, *strict)),
                            strictness,
                            &chk,
                        ));
                    }
                    CheckKind::Identity { lhs, rhs } => {
                        let l = parse_sym_exponent(lhs)?;
                        let r = parse_sym_exponent(rhs)?;
                        report.push(ConditionRecord::identity(
                            item.id.clone(),
                            format!("{lhs} = {rhs} identically"),
                            l.identical_to(&r),
                        ));
                    }
                }
            }
            Ok(report)
        }
    }
}

fn sign_symbol(expect: &str, strict: bool) -> &'static str {
    match (expect, strict) {
        ("positive", true) => ">",
        ("positive", false) => ">=",
        ("negative", true) => "<",
        _ => "<=",
    }
}

/// Run one fixture: on its own interval, or at a sample point when one is
/// supplied and lies inside the fixture's domain.
pub fn run_fixture(fixture: &Fixture, s_point: Option<&Rational>) -> Result<FixtureOutcomeRecord> {
    let (interval, open_endpoint) = resolve_domain(&fixture.domain)?;
    let mut notes = fixture.notes.clone();
    let domain = match s_point {
        Some(s) if interval.contains(s) => SDomain::Point(s.clone()),
        Some(s) => {
            notes.push(format!(
                "sample point s = {} outside the fixture domain; ran interval-symbolically instead",
                exact_string(s)
            ));
            SDomain::Interval(interval.clone())
        }
        None => SDomain::Interval(interval.clone()),
    };
    let report = run_checker(&fixture.checker, &domain)?;
    let actual = if report.pass() { "pass" } else { "fail" };

    // Open endpoints are additionally reported (never asserted) at the
    // excluded point itself.
    if let Some(endpoint) = open_endpoint {
        let at = SDomain::Point(endpoint.clone());
        let outcome = match run_checker(&fixture.checker, &at) {
            Ok(r) => {
                if r.pass() {
                    "pass".to_string()
                } else {
                    let first = r
                        .failed()
                        .next()
                        .map(|c| c.id.clone())
                        .unwrap_or_else(|| "?".into());
                    format!("fail ({first})")
                }
            }
            Err(e) => format!("not applicable ({e})"),
        };
        notes.push(format!(
            "at the open endpoint s = {}: {} (reported, not asserted)",
            exact_string(&endpoint),
            outcome
        ));
    }

    Ok(FixtureOutcomeRecord {
        id: fixture.id.clone(),
        citation: fixture.citation.clone(),
        checker: fixture.checker.kind().to_string(),
        domain: domain.to_string(),
        expected: fixture.expected.clone(),
        actual: actual.to_string(),
        matched: actual == fixture.expected,
        conditions: report.conditions,
        notes,
    })
}

/// Run the whole catalog (optionally at one sample point); deterministic,
/// ordered by fixture id.
pub fn run_suite(s_point: Option<&Rational>) -> Result<FixtureSuiteRecord> {
    let fixtures = catalog()?;
    let mut outcomes = Vec::with_capacity(fixtures.len());
    for f in &fixtures {
        outcomes.push(run_fixture(f, s_point)?);
    }
    let matched = outcomes.iter().filter(|o| o.matched).count() as u32;
    Ok(FixtureSuiteRecord {
        total: outcomes.len() as u32,
        matched,
        mismatched: outcomes.len() as u32 - matched,
        outcomes,
    })
}

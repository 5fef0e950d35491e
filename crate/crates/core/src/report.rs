//! Structured condition reports and report documents.
//!
//! Every checker in the crate reports through [`ConditionRecord`]s so that a
//! verdict is always accompanied by the inequality it decided, the exact
//! margin (or sign verdict with witness), and whether ε was load-bearing.
//! [`ReportDocument`] is the emission unit: it serializes losslessly to a
//! machine form (JSON, exact `num/den` strings plus decimal renderings) and
//! renders to fixed-width text or CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::eps::EpsExponent;
use crate::interval::SignVerdict;
use crate::rational::{decimal_string, exact_string, Rational};
use crate::sym::{MarginCheck, SDomain, Strictness};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PRECISION: usize = 12;

/// Exact value with its decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Num {
    pub exact: String,
    pub dec: String,
}

impl Num {
    pub fn from_rational(x: &Rational, precision: usize) -> Self {
        Self {
            exact: exact_string(x),
            dec: decimal_string(x, precision),
        }
    }
}

/// One decided inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionRecord {
    pub id: String,
    pub inequality: String,
    pub satisfied: bool,
    pub strictness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin_num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin_den: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConditionRecord {
    pub fn from_check(
        id: impl Into<String>,
        inequality: impl Into<String>,
        strictness: Strictness,
        check: &MarginCheck,
    ) -> Self {
        let (margin_num, margin_den, eps_order) = match &check.point_margin {
            Some(EpsExponent { base, eps }) => (
                Some(base.numer().to_string()),
                Some(base.denom().to_string()),
                Some(exact_string(eps)),
            ),
            None => (None, None, None),
        };
        let mut note = None;
        if check.eps_decided {
            note = Some("decided by ε".to_string());
        }
        Self {
            id: id.into(),
            inequality: inequality.into(),
            satisfied: check.satisfied,
            strictness: strictness.label().to_string(),
            margin_num,
            margin_den,
            eps_order,
            verdict: check.verdict.as_ref().map(|v| v.label().to_string()),
            witness: check.witness.as_ref().map(exact_string),
            note,
        }
    }

    pub fn from_verdict(
        id: impl Into<String>,
        inequality: impl Into<String>,
        strictness: Strictness,
        verdict: &SignVerdict,
        satisfied: bool,
    ) -> Self {
        Self {
            id: id.into(),
            inequality: inequality.into(),
            satisfied,
            strictness: strictness.label().to_string(),
            margin_num: None,
            margin_den: None,
            eps_order: None,
            verdict: Some(verdict.label().to_string()),
            witness: match verdict {
                SignVerdict::Mixed { witness } => Some(exact_string(witness)),
                _ => None,
            },
            note: None,
        }
    }

    pub fn identity(id: impl Into<String>, inequality: impl Into<String>, holds: bool) -> Self {
        Self {
            id: id.into(),
            inequality: inequality.into(),
            satisfied: holds,
            strictness: "identity".to_string(),
            margin_num: None,
            margin_den: None,
            eps_order: None,
            verdict: None,
            witness: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let extra = note.into();
        self.note = Some(match self.note.take() {
            Some(prev) => format!("{prev}; {extra}"),
            None => extra,
        });
        self
    }
}

/// A list of decided conditions; passes iff every condition does.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub conditions: Vec<ConditionRecord>,
}

impl ConditionReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: ConditionRecord) {
        self.conditions.push(record);
    }

    pub fn pass(&self) -> bool {
        self.conditions.iter().all(|c| c.satisfied)
    }

    pub fn failed(&self) -> impl Iterator<Item = &ConditionRecord> {
        self.conditions.iter().filter(|c| !c.satisfied)
    }

    pub fn extend(&mut self, other: ConditionReport) {
        self.conditions.extend(other.conditions);
    }
}

/// Iteration table row. Lorenz traces carry the tilde pair, Coulomb rows
/// leave it empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRowRecord {
    pub k: u32,
    pub inv_r: Num,
    pub inv_q: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inv_rtilde: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inv_qtilde: Option<Num>,
    pub sobolev_index: Num,
    pub modulation_index: Num,
    pub gap: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub gauge: String,
    pub s: Num,
    pub rows: Vec<TraceRowRecord>,
    pub limits: BTreeMap<String, Num>,
    pub contraction_factor: Num,
    pub converged: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub bracket_lo: Num,
    pub bracket_hi: Num,
    pub approx: Num,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRecord {
    pub gauge: String,
    pub defining_polynomial: String,
    pub reference_polynomial: String,
    pub proportionality_factor: String,
    pub threshold_root: RootRecord,
    pub all_roots: Vec<RootRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
    pub direction: String,
    pub direction_checks: Vec<ConditionRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
}

/// Non-asserted numeric observation (reported, never load-bearing).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub id: String,
    pub description: String,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSection {
    pub title: String,
    pub domain: String,
    pub pass: bool,
    pub conditions: Vec<ConditionRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub probes: Vec<ProbeRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl VerificationSection {
    pub fn from_report(
        title: impl Into<String>,
        domain: &SDomain,
        report: ConditionReport,
    ) -> Self {
        Self {
            title: title.into(),
            domain: domain.to_string(),
            pass: report.pass(),
            conditions: report.conditions,
            probes: Vec::new(),
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub target: String,
    pub sections: Vec<VerificationSection>,
}

impl VerificationRecord {
    pub fn pass(&self) -> bool {
        self.sections.iter().all(|s| s.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcomeRecord {
    pub id: String,
    pub citation: String,
    pub checker: String,
    pub domain: String,
    pub expected: String,
    pub actual: String,
    pub matched: bool,
    pub conditions: Vec<ConditionRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSuiteRecord {
    pub total: u32,
    pub matched: u32,
    pub mismatched: u32,
    pub outcomes: Vec<FixtureOutcomeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Iteration(IterationRecord),
    Threshold(ThresholdRecord),
    Verification(VerificationRecord),
    Fixtures(FixtureSuiteRecord),
}

/// The emission unit: command echo, inputs, payload, overall status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub inputs: BTreeMap<String, String>,
    pub payload: Payload,
    pub status: String,
}

impl ReportDocument {
    pub fn new(
        command: impl Into<String>,
        inputs: BTreeMap<String, String>,
        payload: Payload,
    ) -> Self {
        let status = match &payload {
            Payload::Iteration(_) => "ok".to_string(),
            Payload::Threshold(t) => {
                if t.direction_checks.iter().all(|c| c.satisfied) {
                    "ok".to_string()
                } else {
                    "violation".to_string()
                }
            }
            Payload::Verification(v) => {
                if v.pass() {
                    "ok".to_string()
                } else {
                    "violation".to_string()
                }
            }
            Payload::Fixtures(f) => {
                if f.mismatched == 0 {
                    "ok".to_string()
                } else {
                    "violation".to_string()
                }
            }
        };
        Self {
            schema_version: SCHEMA_VERSION,
            tool: "expcalc".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            generated_at: None,
            inputs,
            payload,
            status,
        }
    }

    pub fn ok(&self) -> bool {
        self.status == "ok"
    }

    /// Machine form: pretty JSON, byte-stable across parse/re-emit cycles.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad report document: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "expcalc {} — {}", self.version, self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let _ = writeln!(out);
        match &self.payload {
            Payload::Iteration(rec) => render_iteration_text(rec, &mut out),
            Payload::Threshold(rec) => render_threshold_text(rec, &mut out),
            Payload::Verification(rec) => render_verification_text(rec, &mut out),
            Payload::Fixtures(rec) => render_fixtures_text(rec, &mut out),
        }
        let _ = writeln!(out, "status: {}", self.status);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Iteration(rec) => {
                out.push_str(
                    "k,inv_r,inv_q,inv_rtilde,inv_qtilde,sobolev_index,modulation_index,gap\n",
                );
                for r in &rec.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        r.k,
                        r.inv_r.dec,
                        r.inv_q.dec,
                        r.inv_rtilde
                            .as_ref()
                            .map(|n| n.dec.clone())
                            .unwrap_or_default(),
                        r.inv_qtilde
                            .as_ref()
                            .map(|n| n.dec.clone())
                            .unwrap_or_default(),
                        r.sobolev_index.dec,
                        r.modulation_index.dec,
                        r.gap.dec
                    );
                }
            }
            Payload::Threshold(rec) => {
                out.push_str("gauge,polynomial,bracket_lo,bracket_hi,approx\n");
                let _ = writeln!(
                    out,
                    "{},\"{}\",{},{},{}",
                    rec.gauge,
                    rec.defining_polynomial,
                    rec.threshold_root.bracket_lo.dec,
                    rec.threshold_root.bracket_hi.dec,
                    rec.threshold_root.approx.dec
                );
            }
            Payload::Verification(rec) => {
                out.push_str("section,condition,inequality,satisfied,verdict,witness\n");
                for s in &rec.sections {
                    for c in &s.conditions {
                        let _ = writeln!(
                            out,
                            "{},{},\"{}\",{},{},{}",
                            s.title,
                            c.id,
                            c.inequality,
                            c.satisfied,
                            c.verdict.clone().unwrap_or_default(),
                            c.witness.clone().unwrap_or_default()
                        );
                    }
                }
            }
            Payload::Fixtures(rec) => {
                out.push_str("id,checker,expected,actual,matched\n");
                for f in &rec.outcomes {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        f.id, f.checker, f.expected, f.actual, f.matched
                    );
                }
            }
        }
        out
    }
}

fn render_iteration_text(rec: &IterationRecord, out: &mut String) {
    let has_tilde = rec.rows.iter().any(|r| r.inv_rtilde.is_some());
    if has_tilde {
        let _ = writeln!(
            out,
            "{:>4} {:>22} {:>22} {:>22} {:>22} {:>22} {:>22} {:>12}",
            "k", "1/r_k", "1/q_k", "1/r~_k", "1/q~_k", "sobolev", "modulation", "gap"
        );
    } else {
        let _ = writeln!(
            out,
            "{:>4} {:>22} {:>22} {:>22} {:>22} {:>12}",
            "k", "1/r_k", "1/q_k", "sobolev", "modulation", "gap"
        );
    }
    for r in &rec.rows {
        if has_tilde {
            let _ = writeln!(
                out,
                "{:>4} {:>22} {:>22} {:>22} {:>22} {:>22} {:>22} {:>12}",
                r.k,
                r.inv_r.dec,
                r.inv_q.dec,
                r.inv_rtilde
                    .as_ref()
                    .map(|n| n.dec.clone())
                    .unwrap_or_default(),
                r.inv_qtilde
                    .as_ref()
                    .map(|n| n.dec.clone())
                    .unwrap_or_default(),
                r.sobolev_index.dec,
                r.modulation_index.dec,
                r.gap.dec
            );
        } else {
            let _ = writeln!(
                out,
                "{:>4} {:>22} {:>22} {:>22} {:>22} {:>12}",
                r.k,
                r.inv_r.dec,
                r.inv_q.dec,
                r.sobolev_index.dec,
                r.modulation_index.dec,
                r.gap.dec
            );
        }
    }
    let _ = writeln!(out);
    for (name, v) in &rec.limits {
        let _ = writeln!(out, "  {name} = {} ({})", v.exact, v.dec);
    }
    let _ = writeln!(
        out,
        "  contraction factor = {} ({})",
        rec.contraction_factor.exact, rec.contraction_factor.dec
    );
    let _ = writeln!(out, "  converged: {}", rec.converged);
    for n in &rec.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    let _ = writeln!(out);
}

fn render_threshold_text(rec: &ThresholdRecord, out: &mut String) {
    let _ = writeln!(out, "gauge: {}", rec.gauge);
    let _ = writeln!(out, "defining polynomial: {}", rec.defining_polynomial);
    let _ = writeln!(
        out,
        "  = {} × ({})",
        rec.proportionality_factor, rec.reference_polynomial
    );
    if let Some(cf) = &rec.closed_form {
        let _ = writeln!(out, "closed form: {cf}");
    }
    let _ = writeln!(
        out,
        "threshold root: {} in [{}, {}]",
        rec.threshold_root.approx.dec,
        rec.threshold_root.bracket_lo.dec,
        rec.threshold_root.bracket_hi.dec
    );
    let _ = writeln!(out, "direction: {}", rec.direction);
    if !rec.all_roots.is_empty() {
        let _ = writeln!(out, "all real roots:");
        for r in &rec.all_roots {
            let _ = writeln!(
                out,
                "  ≈ {} in [{}, {}]{}",
                r.approx.dec,
                r.bracket_lo.dec,
                r.bracket_hi.dec,
                if r.exact { " (exact)" } else { "" }
            );
        }
    }
    render_conditions_text(&rec.direction_checks, out);
    for f in &rec.flags {
        let _ = writeln!(out, "flag: {f}");
    }
    let _ = writeln!(out);
}

fn render_conditions_text(conditions: &[ConditionRecord], out: &mut String) {
    for c in conditions {
        let mark = if c.satisfied { "PASS" } else { "FAIL" };
        let mut extra = String::new();
        if let (Some(n), Some(d)) = (&c.margin_num, &c.margin_den) {
            let _ = write!(extra, " margin={n}/{d}");
            if let Some(e) = &c.eps_order {
                if e != "0" {
                    let _ = write!(extra, " ε-order={e}");
                }
            }
        }
        if let Some(v) = &c.verdict {
            let _ = write!(extra, " verdict={v}");
        }
        if let Some(w) = &c.witness {
            let _ = write!(extra, " witness={w}");
        }
        if let Some(n) = &c.note {
            let _ = write!(extra, " [{n}]");
        }
        let _ = writeln!(out, "  [{mark}] {:<28} {}{}", c.id, c.inequality, extra);
    }
}

fn render_verification_text(rec: &VerificationRecord, out: &mut String) {
    let _ = writeln!(out, "target: {}", rec.target);
    for s in &rec.sections {
        let mark = if s.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "[{mark}] {} on {}", s.title, s.domain);
        render_conditions_text(&s.conditions, out);
        for p in &s.probes {
            let _ = writeln!(out, "  (probe) {}: {} — {}", p.id, p.description, p.outcome);
        }
        for n in &s.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    let _ = writeln!(out);
}

fn render_fixtures_text(rec: &FixtureSuiteRecord, out: &mut String) {
    let _ = writeln!(
        out,
        "fixtures: {} total, {} matched, {} mismatched",
        rec.total, rec.matched, rec.mismatched
    );
    for f in &rec.outcomes {
        let mark = if f.matched { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "[{mark}] {:<24} {:<18} expected {:<5} got {:<5} ({})",
            f.id, f.checker, f.expected, f.actual, f.domain
        );
        if !f.matched {
            render_conditions_text(&f.conditions, out);
        }
        for n in &f.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    let _ = writeln!(out);
}

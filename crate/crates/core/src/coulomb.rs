//! The Coulomb-gauge regularity bootstrap.
//!
//! One affine recurrence in t = 1/r drives the whole section: starting from
//! the seed t₁ = 3/4 - s/3 - s²/3, each pass applies
//!
//!   t ↦ a(s)·t + b(s),   a = s - 1/2,   b = (1-s)(7-2s)/6,
//!
//! so the iterates converge geometrically to t∞ = b/(1-a) =
//! (7/3 - 2s/3)(1-s)/(3-2s). The time exponent rides along via
//! 1/q = 1/r + 1/2 - (1-s)/3, interpolation turns the limit into
//! s∞ = s - 6(1-s)/(5-2s), and the unconditional-uniqueness threshold is the
//! root of s∞(s) = 3/4 in (3/4, 1). Every recurrence here carries a trailing
//! `+` in its source form; the trace stores exact base rationals and reports
//! that annotation once, since all verified margins are strictly positive at
//! ε = 0 or explicitly ε-decided.

use num_traits::Signed;

use crate::interval::{sign_on_interval, ClosedInterval, SignVerdict};
use crate::poly::PolynomialInS;
use crate::ratfn::{affine_fixed_point, ratfn_equal, RationalFnInS};
use crate::rational::{exact_string, rat, Rational};
use crate::report::{ConditionRecord, ConditionReport, ProbeRecord, VerificationSection};
use crate::roots::{isolate_and_refine_roots, RootBracket};
use crate::sym::{check_sign, SDomain, Strictness, SymExponent};
use crate::{Error, Result};

/// Trailing-ε note shared by every trace row.
pub const EPS_ANNOTATION: &str =
    "every 1/r_k and 1/q_k carries a trailing + (one shared ε); rows store the exact base values";

/// Default iteration cutoff; the contraction factor is at most 1/2 on the
/// working interval, so 60 steps are far beyond any printed use.
pub const DEFAULT_MAX_STEPS: u32 = 60;

fn poly(pairs: &[(i64, i64)]) -> PolynomialInS {
    PolynomialInS::from_pairs(pairs)
}

fn rf(p: PolynomialInS) -> RationalFnInS {
    RationalFnInS::from_poly(p)
}

/// Admissible input check: the recurrences are used on (3/4, 1], and are
/// meaningful down to s > 1/2; outside (1/2, 1] the request is rejected.
pub fn require_admissible_s(s: &Rational) -> Result<()> {
    if *s <= rat(1, 2) || *s > rat(1, 1) {
        return Err(Error::Domain(format!(
            "s = {} outside the admissible interval (1/2, 1]",
            exact_string(s)
        )));
    }
    Ok(())
}

/// Seed of the iteration: 1/r₁ = 3/4 - s/3 - s²/3.
pub fn seed_fn() -> RationalFnInS {
    rf(poly(&[(3, 4), (-1, 3), (-1, 3)]))
}

pub fn seed(s: &Rational) -> Result<Rational> {
    require_admissible_s(s)?;
    Ok(seed_fn().eval(s).expect("polynomial"))
}

/// Coefficients of the recurrence t ↦ a·t + b.
pub fn step_coefficients() -> (RationalFnInS, RationalFnInS) {
    let a = rf(poly(&[(-1, 2), (1, 1)]));
    // (1-s)(7-2s)/6.
    let b = rf(&poly(&[(1, 1), (-1, 1)]) * &poly(&[(7, 6), (-1, 3)]));
    (a, b)
}

/// One iteration step in t = 1/r, exact.
pub fn step_value(t: &Rational, s: &Rational) -> Rational {
    let (a, b) = step_coefficients();
    a.eval(s).expect("polynomial") * t + b.eval(s).expect("polynomial")
}

/// Symbolic step on a rational function of s.
pub fn step_fn(t: &RationalFnInS) -> RationalFnInS {
    let (a, b) = step_coefficients();
    &(&a * t) + &b
}

/// The recurrence in its source fractional form,
/// 2t' = 2-2s + (1/2 - t')·(2t - 2(1-s)/3)/(1 - t + (1-s)/3),
/// solved exactly for t'. Used as a cross-check of the affine form.
pub fn step_value_fractional_form(t: &Rational, s: &Rational) -> Rational {
    let one_minus_s = rat(1, 1) - s;
    let d = rat(1, 1) - t + &one_minus_s / rat(3, 1);
    let n = rat(2, 1) * t - rat(2, 3) * &one_minus_s;
    // t'(2d + n) = (2-2s)d + n/2.
    (rat(2, 1) * &one_minus_s * &d + &n / rat(2, 1)) / (rat(2, 1) * &d + &n)
}

/// The shift from a spatial Lebesgue index to the time index:
/// 1/q = 1/r + 1/2 - (1-s)/3. Shared by the Coulomb and Lorenz recurrences.
pub fn inv_q_shift() -> RationalFnInS {
    rf(poly(&[(1, 6), (1, 3)]))
}

/// Symbolic limits: (1/r_∞, 1/q_∞) as rational functions of s. The r-limit
/// is computed as the affine fixed point, and certified to equal the printed
/// closed form (7/3 - 2s/3)(1-s)/(3-2s).
pub fn limit_fn() -> Result<(RationalFnInS, RationalFnInS)> {
    let (a, b) = step_coefficients();
    let inv_r_inf = affine_fixed_point(&a, &b)?;
    let printed = RationalFnInS::new(
        &poly(&[(7, 3), (-2, 3)]) * &poly(&[(1, 1), (-1, 1)]),
        poly(&[(3, 1), (-2, 1)]),
    )?;
    if !ratfn_equal(&inv_r_inf, &printed) {
        return Err(Error::Inconsistency(
            "affine fixed point disagrees with the printed r-limit".into(),
        ));
    }
    let inv_q_inf = &inv_r_inf + &inv_q_shift();
    Ok((inv_r_inf, inv_q_inf))
}

pub fn limit(s: &Rational) -> Result<(Rational, Rational)> {
    require_admissible_s(s)?;
    let (r, q) = limit_fn()?;
    Ok((
        r.eval(s).expect("no pole on (1/2,1]"),
        q.eval(s).expect("no pole on (1/2,1]"),
    ))
}

/// s∞ as a rational function of s, computed two independent ways and
/// certified equal:
/// (i) the interpolation form s - (3/4)(2/q∞ - 1)/(3/2 - 1/q∞);
/// (ii) the printed closed form s - 6(1-s)/(3(3-2s) - 4(1-s)).
pub fn s_infinity_fn() -> Result<RationalFnInS> {
    let (_, inv_q_inf) = limit_fn()?;
    let s = RationalFnInS::var();
    let one = RationalFnInS::one();
    let two = RationalFnInS::constant(rat(2, 1));
    let num = &(&two * &inv_q_inf) - &one;
    let den = &RationalFnInS::constant(rat(3, 2)) - &inv_q_inf;
    let via_interpolation = &s - &(&(&RationalFnInS::constant(rat(3, 4)) * &num) / &den);

    // 3(3-2s) - 4(1-s) = 5 - 2s.
    let closed = &s - &RationalFnInS::new(poly(&[(6, 1), (-6, 1)]), poly(&[(5, 1), (-2, 1)]))?;
    if !ratfn_equal(&via_interpolation, &closed) {
        return Err(Error::Inconsistency(
            "interpolation-derived s∞ disagrees with its closed form".into(),
        ));
    }
    Ok(closed)
}

/// One row of the iteration table.
#[derive(Debug, Clone)]
pub struct TraceRow {
    pub k: u32,
    pub inv_r: Rational,
    pub inv_q: Rational,
    /// 2 - s - 2/r_k.
    pub sobolev_index: Rational,
    /// 1/2 - 1/r_k.
    pub modulation_index: Rational,
    /// 1/r_k - 1/r_∞ (non-negative on the admissible interval).
    pub gap: Rational,
}

/// Exact iterate table for one value of s, with limits and diagnostics.
#[derive(Debug, Clone)]
pub struct BootstrapTrace {
    pub gauge: &'static str,
    pub s: Rational,
    pub rows: Vec<TraceRow>,
    pub inv_r_inf: Rational,
    pub inv_q_inf: Rational,
    pub contraction_factor: Rational,
    pub converged: bool,
    pub notes: Vec<String>,
}

/// Gap threshold for the early "converged" flag: 10^-15.
fn convergence_gap() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(10u8).pow(15))
}

/// Run the iteration for `k_max` steps (early stop once the gap drops below
/// 10^-15, flagged as converged).
pub fn trace(s: &Rational, k_max: u32) -> Result<BootstrapTrace> {
    require_admissible_s(s)?;
    if k_max == 0 {
        return Err(Error::Domain("iteration count must be at least 1".into()));
    }
    let (inv_r_inf, inv_q_inf) = limit(s)?;
    let shift = inv_q_shift().eval(s).expect("polynomial");
    let (a, _) = step_coefficients();
    let contraction = a.eval(s).expect("polynomial");

    let mut rows = Vec::new();
    let mut t = seed(s)?;
    let mut converged = false;
    for k in 1..=k_max {
        let gap = (&t - &inv_r_inf).abs();
        rows.push(TraceRow {
            k,
            inv_r: t.clone(),
            inv_q: &t + &shift,
            sobolev_index: rat(2, 1) - s - rat(2, 1) * &t,
            modulation_index: rat(1, 2) - &t,
            gap: gap.clone(),
        });
        if gap < convergence_gap() {
            converged = true;
            break;
        }
        t = step_value(&t, s);
    }
    Ok(BootstrapTrace {
        gauge: "coulomb",
        s: s.clone(),
        rows,
        inv_r_inf,
        inv_q_inf,
        contraction_factor: contraction,
        converged,
        notes: vec![EPS_ANNOTATION.to_string()],
    })
}

/// A certified regularity threshold.
#[derive(Debug, Clone)]
pub struct ThresholdResult {
    pub gauge: &'static str,
    /// Margin numerator oriented so that its sign equals sign(s∞ - 3/4) on
    /// the working interval.
    pub oriented_margin: PolynomialInS,
    /// Integer-normalized defining polynomial (positive leading coefficient).
    pub defining_polynomial: PolynomialInS,
    /// The printed reference polynomial it must be proportional to.
    pub reference_polynomial: PolynomialInS,
    /// oriented_margin = factor × reference_polynomial.
    pub proportionality_factor: Rational,
    pub certified_bracket: ClosedInterval,
    pub approx: Rational,
    pub closed_form: Option<String>,
    pub all_roots: Vec<RootBracket>,
    pub direction: String,
    pub direction_checks: ConditionReport,
    pub flags: Vec<String>,
}

/// Shared machinery: orient the margin s∞ - 3/4 = N/D by certifying the
/// denominator's sign on [3/4, 1], derive the defining polynomial, isolate
/// and refine its roots, and certify the satisfied side by exact evaluation
/// at rational probe points.
pub(crate) fn threshold_from_margin(
    gauge: &'static str,
    s_inf: &RationalFnInS,
    reference: PolynomialInS,
    root_window: ClosedInterval,
    tol: &Rational,
    closed_form: Option<String>,
    extra_flags: Vec<String>,
) -> Result<ThresholdResult> {
    let margin = s_inf - &RationalFnInS::constant(rat(3, 4));
    let work = ClosedInterval::new(rat(3, 4), rat(1, 1))?;
    let mut checks = ConditionReport::new();

    let den = margin.denominator().clone();
    let den_verdict = sign_on_interval(&den, &work, true);
    let den_sign = match den_verdict {
        SignVerdict::Positive => 1,
        SignVerdict::Negative => -1,
        _ => {
            return Err(Error::Inconsistency(format!(
                "margin denominator {den} not of constant sign on {work}"
            )))
        }
    };
    checks.push(ConditionRecord::from_verdict(
        "denominator-sign",
        format!("cleared denominator {den} keeps one strict sign on {work}"),
        Strictness::Strict,
        &den_verdict,
        true,
    ));

    let oriented = if den_sign > 0 {
        margin.numerator().clone()
    } else {
        -margin.numerator()
    };
    let defining = oriented.integer_normalized();
    let factor = oriented.proportionality_factor(&reference).ok_or_else(|| {
        Error::Inconsistency(format!(
            "derived polynomial {oriented} is not proportional to the reference {reference}"
        ))
    })?;
    checks.push(ConditionRecord::identity(
        "proportional-to-reference",
        format!(
            "derived margin numerator = ({}) × ({reference})",
            exact_string(&factor)
        ),
        true,
    ));

    // All real roots over the Cauchy bound, then the one in the window.
    let bound = defining.cauchy_root_bound();
    let all_roots =
        isolate_and_refine_roots(&defining, &ClosedInterval::new(-bound.clone(), bound)?, tol)?;
    let in_window: Vec<&RootBracket> = all_roots
        .iter()
        .filter(|r| r.bracket.is_subset_of(&root_window))
        .collect();
    if in_window.len() != 1 {
        return Err(Error::Inconsistency(format!(
            "expected exactly one threshold root in {root_window}, found {}",
            in_window.len()
        )));
    }
    let root = in_window[0].clone();
    checks.push(ConditionRecord::identity(
        "unique-root-in-window",
        format!(
            "exactly one real root in {root_window}, bracket {} (width ≤ {})",
            root.bracket,
            exact_string(tol)
        ),
        true,
    ));

    // Bracket certification by sign change.
    let change = defining.sign_at(root.bracket.lo()) * defining.sign_at(root.bracket.hi());
    checks.push(ConditionRecord::identity(
        "bracket-sign-change",
        format!(
            "defining polynomial changes sign across {}: sign({}) · sign({}) = {change}",
            root.bracket,
            exact_string(root.bracket.lo()),
            exact_string(root.bracket.hi()),
        ),
        change == -1,
    ));

    // Which side satisfies s∞ > 3/4: exact evaluation at 19/20 and 9/10.
    let above = rat(19, 20);
    let below = rat(9, 10);
    let s_above = s_inf.eval(&above).expect("no pole");
    let s_below = s_inf.eval(&below).expect("no pole");
    checks.push(ConditionRecord::identity(
        "satisfied-above",
        format!(
            "s∞(19/20) = {} > 3/4 (side containing 0.95)",
            exact_string(&s_above)
        ),
        s_above > rat(3, 4),
    ));
    checks.push(ConditionRecord::identity(
        "violated-below",
        format!(
            "s∞(9/10) = {} < 3/4 (side containing 0.9)",
            exact_string(&s_below)
        ),
        s_below < rat(3, 4),
    ));

    // Strict sign of the oriented margin just above the certified root.
    let above_window = ClosedInterval::new(&root.approx + rat(1, 10_000), rat(1, 1))?;
    let above_verdict = sign_on_interval(&oriented, &above_window, true);
    checks.push(ConditionRecord::from_verdict(
        "positive-above-root",
        format!("s∞ - 3/4 > 0 on {above_window} (uniqueness regime)"),
        Strictness::Strict,
        &above_verdict,
        above_verdict.is_positive(),
    ));

    let direction = if factor.is_positive() {
        format!("s∞ > 3/4 exactly where {defining} > 0; within (3/4, 1] that is s above the root")
    } else {
        format!("s∞ > 3/4 exactly where {defining} < 0; within (3/4, 1] that is s above the root")
    };

    Ok(ThresholdResult {
        gauge,
        oriented_margin: oriented,
        defining_polynomial: defining,
        reference_polynomial: reference,
        proportionality_factor: factor,
        certified_bracket: root.bracket.clone(),
        approx: root.approx.clone(),
        closed_form,
        all_roots,
        direction,
        direction_checks: checks,
        flags: extra_flags,
    })
}

/// The Coulomb threshold: s∞(s) = 3/4 cleared to 8s² - 50s + 39 = 0 (up to a
/// unit factor), with the root in (3/4, 1) certified and refined.
pub fn threshold(tol: &Rational) -> Result<ThresholdResult> {
    let s_inf = s_infinity_fn()?;
    threshold_from_margin(
        "coulomb",
        &s_inf,
        poly(&[(39, 1), (-50, 1), (8, 1)]),
        ClosedInterval::new(rat(3, 4), rat(1, 1))?,
        tol,
        Some("(25 - √313)/8".to_string()),
        vec![
            "the source states this threshold three ways: ≈ 0.91254 (theorem), ≈ 0.91352 (section end), ≈ 0.914 (abstract); exact evaluation gives 0.9135242…, so 0.91254 appears to be a typo"
                .to_string(),
        ],
    )
}

fn sign_condition(
    id: &str,
    text: String,
    p: &PolynomialInS,
    i: &ClosedInterval,
    strict: bool,
    expect_positive: bool,
) -> ConditionRecord {
    let verdict = sign_on_interval(p, i, strict);
    let ok = if expect_positive {
        verdict.is_positive()
    } else {
        verdict.is_negative()
    };
    ConditionRecord::from_verdict(
        id,
        text,
        if strict {
            Strictness::Strict
        } else {
            Strictness::NonStrict
        },
        &verdict,
        ok,
    )
}

/// Verify the monotonicity lemmas behind the Coulomb iteration on
/// I = [3/4, 1]: the base case t₁ > t∞ via the printed cubic reduction, the
/// linearized step (order preservation and contraction), the monotone
/// decrease reduction, and the standing bounds on t₁ and t∞.
pub fn verify_appendix_51(i: &ClosedInterval) -> Result<VerificationSection> {
    let mut report = ConditionReport::new();
    let (a, b) = step_coefficients();
    let (t_inf, _) = limit_fn()?;

    // Base case t1 > t∞, reduced by clearing 3 - 2s > 0 to the printed cubic.
    let cleared = rf(poly(&[(3, 1), (-2, 1)]));
    let reduction =
        &(&cleared * &seed_fn()) - (&rf(&poly(&[(7, 3), (-2, 3)]) * &poly(&[(1, 1), (-1, 1)])));
    let cubic = poly(&[(-1, 12), (1, 2), (-1, 1), (2, 3)]);
    report.push(ConditionRecord::identity(
        "base-reduction",
        "(3-2s)·t₁ - (7/3-2s/3)(1-s) = s(2/3 s² - s + 1/2) - 1/12 identically",
        ratfn_equal(&reduction, &rf(cubic.clone())),
    ));
    report.push(sign_condition(
        "base-multiplier",
        "3 - 2s > 0".into(),
        &poly(&[(3, 1), (-2, 1)]),
        i,
        true,
        true,
    ));
    report.push(sign_condition(
        "base-cubic",
        "s(2/3 s² - s + 1/2) - 1/12 > 0".into(),
        &cubic,
        i,
        true,
        true,
    ));
    // Supporting quadratics from the printed completion of squares.
    let shifted = poly(&[(-3, 4), (1, 1)]);
    let sq = &shifted * &shifted;
    report.push(sign_condition(
        "base-square-3-16",
        "(s-3/4)² + 3/16 > 0".into(),
        &(&sq + &poly(&[(3, 16)])),
        i,
        true,
        true,
    ));
    report.push(sign_condition(
        "base-square-1-48",
        "(s-3/4)² + 1/48 > 0".into(),
        &(&sq + &poly(&[(1, 48)])),
        i,
        true,
        true,
    ));

    // Linearization: b = (1-a)·t∞, so step(t) - t∞ = a·(t - t∞) for every t;
    // order preservation and monotone decrease both reduce to this identity
    // plus the sign of a and 1 - a.
    let one_minus_a = &RationalFnInS::one() - &a;
    report.push(ConditionRecord::identity(
        "step-linearization",
        "b = (1-a)·t∞, hence step(t) - t∞ = a·(t - t∞) and t - step(t) = (1-a)·(t - t∞)",
        ratfn_equal(&b, &(&one_minus_a * &t_inf)),
    ));
    report.push(sign_condition(
        "contraction-positive",
        "a = s - 1/2 > 0 (order preservation)".into(),
        &poly(&[(-1, 2), (1, 1)]),
        i,
        true,
        true,
    ));
    report.push(sign_condition(
        "contraction-below-half",
        "1/2 - a = 1 - s ≥ 0 (contraction factor at most 1/2)".into(),
        &poly(&[(1, 1), (-1, 1)]),
        i,
        false,
        true,
    ));
    report.push(sign_condition(
        "one-minus-a-positive",
        "1 - a = 3/2 - s > 0 (monotone-decrease reduction is an equivalence)".into(),
        &poly(&[(3, 2), (-1, 1)]),
        i,
        true,
        true,
    ));

    // Bounds: t₁ ≤ 1/2 and t∞ ≥ (1-s)/3 and t∞ > 1-s (the last ε-decided at
    // s = 1 through the trailing + on the limit).
    let half_minus_seed = &RationalFnInS::constant(rat(1, 2)) - &seed_fn();
    report.push(ConditionRecord::identity(
        "bound-t1-reduction",
        "1/2 - t₁ = (s² + s - 3/4)/3 identically",
        ratfn_equal(
            &half_minus_seed,
            &RationalFnInS::new(poly(&[(-3, 4), (1, 1), (1, 1)]), poly(&[(3, 1)]))?,
        ),
    ));
    report.push(sign_condition(
        "bound-t1-half",
        "s² + s - 3/4 ≥ 0 (t₁ ≤ 1/2)".into(),
        &poly(&[(-3, 4), (1, 1), (1, 1)]),
        i,
        false,
        true,
    ));
    let third = RationalFnInS::new(poly(&[(1, 3), (-1, 3)]), PolynomialInS::one())?;
    let margin_low = &t_inf - &third;
    report.push(ConditionRecord::identity(
        "bound-tinf-low-reduction",
        "t∞ - (1-s)/3 = 4(1-s)/(3(3-2s)) identically",
        ratfn_equal(
            &margin_low,
            &RationalFnInS::new(poly(&[(4, 1), (-4, 1)]), poly(&[(9, 1), (-6, 1)]))?,
        ),
    ));
    report.push(sign_condition(
        "bound-tinf-low",
        "4(1-s) ≥ 0 over 3(3-2s) > 0 (t∞ ≥ (1-s)/3)".into(),
        &poly(&[(4, 1), (-4, 1)]),
        i,
        false,
        true,
    ));
    let margin_strict = SymExponent::with_order(&t_inf - &rf(poly(&[(1, 1), (-1, 1)])), 1);
    let strict_check = check_sign(
        &margin_strict,
        &SDomain::Interval(i.clone()),
        Strictness::Strict,
    )?;
    report.push(ConditionRecord::from_check(
        "bound-tinf-above-1ms",
        "t∞ + ε > 1 - s (margin (1-s)(4s-2)/(3(3-2s)), ε-decided at s = 1)".to_string(),
        Strictness::Strict,
        &strict_check,
    ));

    let domain = SDomain::Interval(i.clone());
    Ok(VerificationSection::from_report(
        "appendix: Coulomb iteration lemmas",
        &domain,
        report,
    ))
}

/// Numeric probe used by reports: gap ratios along a trace are exactly the
/// contraction factor.
pub fn gap_ratio_probe(s: &Rational, k_max: u32) -> Result<ProbeRecord> {
    let tr = trace(s, k_max)?;
    let a = tr.contraction_factor.clone();
    let mut exact = true;
    for w in tr.rows.windows(2) {
        if w[0].gap.is_zero() {
            continue;
        }
        if &w[1].gap / &w[0].gap != a {
            exact = false;
        }
    }
    Ok(ProbeRecord {
        id: format!("gap-ratio-s-{}", exact_string(s)),
        description: format!(
            "gap_(k+1)/gap_k = s - 1/2 = {} exactly along {} rows",
            exact_string(&a),
            tr.rows.len()
        ),
        outcome: if exact {
            "exact".into()
        } else {
            "violated".into()
        },
    })
}

use num_traits::Zero;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn seed_values() {
        assert_eq!(seed(&int(1)).unwrap(), rat(1, 12));
        assert_eq!(seed(&rat(3, 4)).unwrap(), rat(5, 16));
        assert!(seed(&rat(1, 2)).is_err());
        assert!(seed(&rat(11, 10)).is_err());
    }

    #[test]
    fn step_matches_fractional_form() {
        // At s = 19/20 the affine form and the source fractional form agree.
        let s = rat(19, 20);
        let t = seed(&s).unwrap();
        let affine = step_value(&t, &s);
        let fractional = step_value_fractional_form(&t, &s);
        assert_eq!(affine, fractional);
        // a = 0.45, b = (1/20)(7 - 19/10)/6 = (1/20)(51/10)/6.
        let expected = rat(9, 20) * &t + rat(1, 20) * rat(51, 10) / rat(6, 1);
        assert_eq!(affine, expected);
    }

    #[test]
    fn step_at_s_equal_one_is_halving() {
        let s = int(1);
        let t = rat(1, 12);
        assert_eq!(step_value(&t, &s), rat(1, 24));
    }

    #[test]
    fn limits() {
        let (r, q) = limit(&int(1)).unwrap();
        assert_eq!(r, rat(0, 1));
        assert_eq!(q, rat(1, 2));
        let (r, _) = limit(&rat(3, 4)).unwrap();
        assert_eq!(r, rat(11, 36));
    }

    #[test]
    fn fixed_point_is_symbolic() {
        let (t_inf, _) = limit_fn().unwrap();
        assert!(ratfn_equal(&step_fn(&t_inf), &t_inf));
    }

    #[test]
    fn s_infinity_values() {
        let f = s_infinity_fn().unwrap();
        assert_eq!(f.eval(&int(1)).unwrap(), int(1));
        // s = 0.95: 0.95 - 0.3/3.1 = 0.95 - 3/31.
        assert_eq!(f.eval(&rat(19, 20)).unwrap(), rat(19, 20) - rat(3, 31));
    }

    #[test]
    fn trace_is_geometric_and_monotone() {
        let s = rat(19, 20);
        let tr = trace(&s, 40).unwrap();
        assert_eq!(tr.rows[0].inv_r, seed(&s).unwrap());
        let a = tr.contraction_factor.clone();
        for w in tr.rows.windows(2) {
            assert_eq!(&w[1].gap / &w[0].gap, a, "exact geometric decay");
            assert!(w[1].inv_r < w[0].inv_r, "monotone decrease");
        }
        // Final gap after 40 rows is below 1e-12.
        let last = tr.rows.last().unwrap();
        assert!(last.gap < Rational::new(1.into(), num_bigint::BigInt::from(10u8).pow(12)));
    }

    #[test]
    fn trace_row_indices() {
        let s = int(1);
        let tr = trace(&s, 3).unwrap();
        // Sobolev 2 - s - 2/r, modulation 1/2 - 1/r at the seed 1/12.
        assert_eq!(tr.rows[0].sobolev_index, rat(5, 6));
        assert_eq!(tr.rows[0].modulation_index, rat(5, 12));
        assert_eq!(tr.rows[1].inv_r, rat(1, 24));
    }

    #[test]
    fn threshold_certificate() {
        let tol = Rational::new(1.into(), num_bigint::BigInt::from(10u8).pow(12));
        let th = threshold(&tol).unwrap();
        assert!(th
            .defining_polynomial
            .proportional_to(&poly(&[(39, 1), (-50, 1), (8, 1)])));
        assert!(th.direction_checks.pass());
        assert!(th.certified_bracket.width() <= tol);
        // Exact endpoint signs quoted in the certificate: p(3/4) = 6, p(1) = -3.
        let p = poly(&[(39, 1), (-50, 1), (8, 1)]);
        assert_eq!(p.eval(&rat(3, 4)), rat(6, 1));
        assert_eq!(p.eval(&int(1)), int(-3));
    }

    #[test]
    fn appendix_51_all_pass() {
        let i = ClosedInterval::new(rat(3, 4), int(1)).unwrap();
        let section = verify_appendix_51(&i).unwrap();
        assert!(
            section.pass,
            "failed: {:?}",
            section
                .conditions
                .iter()
                .filter(|c| !c.satisfied)
                .collect::<Vec<_>>()
        );
        // The t∞ > 1-s bound is ε-decided.
        let eps_cond = section
            .conditions
            .iter()
            .find(|c| c.id == "bound-tinf-above-1ms")
            .unwrap();
        assert!(eps_cond.note.as_deref().unwrap_or("").contains("ε"));
    }
}

//! Calculus of function-space memberships.
//!
//! Strichartz admissibility and the two exponent shifts it induces, Sobolev
//! embeddings in three spatial dimensions, and two-space interpolation with a
//! chosen parameter θ. Lebesgue exponents are stored as their inverses
//! (`1/q`, `1/r`) so that conjugation, the `q = 2` endpoint, and `q = ∞` stay
//! exact; ε decorations ride along through every operation.
//!
//! Time-slab restrictions play no role in any exponent computation and are
//! not modeled.

use std::fmt;

use crate::rational::rat;
use crate::report::{ConditionRecord, ConditionReport};
use crate::sym::{check_sign, SDomain, Strictness, SymExponent};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceFamily {
    /// H^{σ,b} with weight ⟨|τ|-|ξ|⟩^b.
    WaveSobolev,
    /// X^{σ,b}_+ with weight ⟨τ+|ξ|⟩^b.
    KleinGordonPlus,
    /// X^{σ,b}_- with weight ⟨τ-|ξ|⟩^b.
    KleinGordonMinus,
    /// L^q_t H^{σ,r}_x.
    MixedNorm,
    /// H^{σ,r}_x, purely spatial.
    SpatialSobolev,
}

impl SpaceFamily {
    pub fn has_modulation(self) -> bool {
        matches!(
            self,
            SpaceFamily::WaveSobolev | SpaceFamily::KleinGordonPlus | SpaceFamily::KleinGordonMinus
        )
    }
}

/// A point in exponent space: "the function lies in this space".
#[derive(Debug, Clone)]
pub struct SpaceMembership {
    pub family: SpaceFamily,
    /// Sobolev index σ.
    pub sobolev: SymExponent,
    /// Modulation index b; wave-Sobolev and Klein-Gordon families only.
    pub modulation: Option<SymExponent>,
    /// 1/q; mixed-norm family only.
    pub inv_time: Option<SymExponent>,
    /// 1/r; mixed-norm and spatial families.
    pub inv_space: Option<SymExponent>,
    pub homogeneous: bool,
}

impl SpaceMembership {
    pub fn wave_sobolev(sobolev: SymExponent, modulation: SymExponent) -> Self {
        Self {
            family: SpaceFamily::WaveSobolev,
            sobolev,
            modulation: Some(modulation),
            inv_time: None,
            inv_space: None,
            homogeneous: false,
        }
    }

    pub fn klein_gordon(plus: bool, sobolev: SymExponent, modulation: SymExponent) -> Self {
        Self {
            family: if plus {
                SpaceFamily::KleinGordonPlus
            } else {
                SpaceFamily::KleinGordonMinus
            },
            sobolev,
            modulation: Some(modulation),
            inv_time: None,
            inv_space: None,
            homogeneous: false,
        }
    }

    pub fn mixed_norm(sobolev: SymExponent, inv_time: SymExponent, inv_space: SymExponent) -> Self {
        Self {
            family: SpaceFamily::MixedNorm,
            sobolev,
            modulation: None,
            inv_time: Some(inv_time),
            inv_space: Some(inv_space),
            homogeneous: false,
        }
    }

    pub fn spatial(sobolev: SymExponent, inv_space: SymExponent) -> Self {
        Self {
            family: SpaceFamily::SpatialSobolev,
            sobolev,
            modulation: None,
            inv_time: None,
            inv_space: Some(inv_space),
            homogeneous: false,
        }
    }

    pub fn homogeneous(mut self) -> Self {
        self.homogeneous = true;
        self
    }
}

impl fmt::Display for SpaceMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dot = if self.homogeneous { "·" } else { "" };
        match self.family {
            SpaceFamily::WaveSobolev => write!(
                f,
                "H{dot}^{{{}, {}}}",
                self.sobolev,
                self.modulation.as_ref().expect("wave-Sobolev has b")
            ),
            SpaceFamily::KleinGordonPlus => write!(
                f,
                "X{dot}^{{{}, {}}}_+",
                self.sobolev,
                self.modulation.as_ref().expect("X has b")
            ),
            SpaceFamily::KleinGordonMinus => write!(
                f,
                "X{dot}^{{{}, {}}}_-",
                self.sobolev,
                self.modulation.as_ref().expect("X has b")
            ),
            SpaceFamily::MixedNorm => write!(
                f,
                "L^{{1/q={}}}_t H{dot}^{{{}, 1/r={}}}_x",
                self.inv_time.as_ref().expect("mixed norm has q"),
                self.sobolev,
                self.inv_space.as_ref().expect("mixed norm has r")
            ),
            SpaceFamily::SpatialSobolev => write!(
                f,
                "H{dot}^{{{}, 1/r={}}}_x",
                self.sobolev,
                self.inv_space.as_ref().expect("spatial space has r")
            ),
        }
    }
}

/// A candidate Strichartz pair, stored as (1/q, 1/r). `1/q = 0` encodes
/// `q = ∞`. Validity is an operation, not an invariant.
#[derive(Debug, Clone)]
pub struct StrichartzPair {
    pub inv_q: SymExponent,
    pub inv_r: SymExponent,
}

impl StrichartzPair {
    pub fn from_inverses(inv_q: SymExponent, inv_r: SymExponent) -> Self {
        Self { inv_q, inv_r }
    }

    /// From the exponents themselves; both must be nonzero (use
    /// [`StrichartzPair::from_inverses`] with `1/q = 0` for `q = ∞`).
    pub fn from_exponents(q: &SymExponent, r: &SymExponent) -> Result<Self> {
        Ok(Self {
            inv_q: q.recip()?,
            inv_r: r.recip()?,
        })
    }
}

/// Conjugate exponent on the inverse scale: 1/r' = 1 - 1/r. Involutive.
pub fn conjugate_inv(inv: &SymExponent) -> SymExponent {
    &SymExponent::from_rational(rat(1, 1)) - inv
}

fn half() -> SymExponent {
    SymExponent::from_rational(rat(1, 2))
}

fn one() -> SymExponent {
    SymExponent::from_rational(rat(1, 1))
}

fn push_check(
    report: &mut ConditionReport,
    id: &str,
    inequality: String,
    margin: &SymExponent,
    domain: &SDomain,
    strict: Strictness,
) -> Result<bool> {
    let c = check_sign(margin, domain, strict)?;
    let ok = c.satisfied;
    report.push(ConditionRecord::from_check(id, inequality, strict, &c));
    Ok(ok)
}

/// Strichartz admissibility: 2 < q ≤ ∞, 2 ≤ r < ∞, 1/2 ≤ 1/q + 1/r ≤ 1.
///
/// With `paper_endpoint_convention` the endpoint `q = 2` is accepted and the
/// report marks that condition as "endpoint (paper convention)"; the
/// surrounding arguments apply the estimate at `q = 2` throughout even though
/// the stated hypothesis is strict.
pub fn strichartz_admissible(
    pair: &StrichartzPair,
    domain: &SDomain,
    paper_endpoint_convention: bool,
) -> Result<(bool, ConditionReport)> {
    let mut report = ConditionReport::new();
    let mut ok = true;

    // 2 < q: 1/q < 1/2. Endpoint convention relaxes to 1/q <= 1/2.
    let m = &half() - &pair.inv_q;
    let strict_check = check_sign(&m, domain, Strictness::Strict)?;
    if strict_check.satisfied {
        report.push(ConditionRecord::from_check(
            "q-above-2",
            format!("1/q = {} < 1/2", pair.inv_q),
            Strictness::Strict,
            &strict_check,
        ));
    } else if paper_endpoint_convention {
        let relaxed = check_sign(&m, domain, Strictness::NonStrict)?;
        ok &= relaxed.satisfied;
        report.push(
            ConditionRecord::from_check(
                "q-above-2",
                format!("1/q = {} ≤ 1/2", pair.inv_q),
                Strictness::NonStrict,
                &relaxed,
            )
            .with_note("endpoint (paper convention)"),
        );
    } else {
        ok = false;
        report.push(ConditionRecord::from_check(
            "q-above-2",
            format!("1/q = {} < 1/2", pair.inv_q),
            Strictness::Strict,
            &strict_check,
        ));
    }

    // q ≤ ∞: 1/q >= 0.
    ok &= push_check(
        &mut report,
        "q-at-most-inf",
        format!("1/q = {} ≥ 0", pair.inv_q),
        &pair.inv_q,
        domain,
        Strictness::NonStrict,
    )?;
    // 2 ≤ r: 1/r <= 1/2.
    ok &= push_check(
        &mut report,
        "r-at-least-2",
        format!("1/r = {} ≤ 1/2", pair.inv_r),
        &(&half() - &pair.inv_r),
        domain,
        Strictness::NonStrict,
    )?;
    // r < ∞: 1/r > 0.
    ok &= push_check(
        &mut report,
        "r-finite",
        format!("1/r = {} > 0", pair.inv_r),
        &pair.inv_r,
        domain,
        Strictness::Strict,
    )?;
    let sum = &pair.inv_q + &pair.inv_r;
    ok &= push_check(
        &mut report,
        "scaling-lower",
        format!("1/q + 1/r = {sum} ≥ 1/2"),
        &(&sum - &half()),
        domain,
        Strictness::NonStrict,
    )?;
    ok &= push_check(
        &mut report,
        "scaling-upper",
        format!("1/q + 1/r = {sum} ≤ 1"),
        &(&one() - &sum),
        domain,
        Strictness::NonStrict,
    )?;

    Ok((ok, report))
}

/// Forward Strichartz shift at `q = 2`: a wave-Sobolev (or X^{s,b})
/// membership with modulation index at least `1/2 - 1/r +` maps into
/// `L²_t H^{σ - (1 - 2/r), r}_x`.
pub fn strichartz_forward_shift(
    m: &SpaceMembership,
    inv_r: &SymExponent,
    domain: &SDomain,
) -> Result<SpaceMembership> {
    if !m.family.has_modulation() {
        return Err(Error::NotApplicable(format!(
            "forward shift needs a modulation index; {m} has none"
        )));
    }
    let b = m.modulation.as_ref().expect("checked above");
    let required = &half() - inv_r;
    let margin = b - &required;
    let check = check_sign(&margin, domain, Strictness::Strict)?;
    if !check.satisfied {
        return Err(Error::NotApplicable(format!(
            "modulation index {b} does not exceed 1/2 - 1/r = {required} (margin {margin})"
        )));
    }
    let pair = StrichartzPair::from_inverses(half(), inv_r.clone());
    let (ok, report) = strichartz_admissible(&pair, domain, true)?;
    if !ok {
        let failed: Vec<String> = report.failed().map(|c| c.inequality.clone()).collect();
        return Err(Error::NotApplicable(format!(
            "(q=2, r) pair not admissible: {}",
            failed.join("; ")
        )));
    }
    // Sobolev level drop 1 - 2/r.
    let two = SymExponent::from_rational(rat(2, 1));
    let drop = &one() - &(&two * inv_r);
    let sobolev = &m.sobolev - &drop;
    Ok(SpaceMembership::mixed_norm(sobolev, half(), inv_r.clone()))
}

/// Dual Strichartz shift at `q = 2`: `L²_t H^{σ, r'}_x` maps into
/// `H^{σ + 2/r - 1, 1/r - 1/2 -}` where r is the conjugate of r'.
pub fn strichartz_dual_shift(m: &SpaceMembership, domain: &SDomain) -> Result<SpaceMembership> {
    if m.family != SpaceFamily::MixedNorm {
        return Err(Error::NotApplicable(format!(
            "dual shift expects a mixed norm, got {m}"
        )));
    }
    let inv_time = m.inv_time.as_ref().expect("mixed norm has q");
    if !inv_time.identical_to(&half()) {
        return Err(Error::NotApplicable(format!(
            "dual shift expects L²_t (1/q = 1/2), got 1/q = {inv_time}"
        )));
    }
    let inv_rp = m.inv_space.as_ref().expect("mixed norm has r");
    let inv_r = conjugate_inv(inv_rp);
    // r' > 1 ⟺ 1/r > 0.
    let positive = check_sign(&inv_r, domain, Strictness::Strict)?;
    if !positive.satisfied {
        return Err(Error::InvalidConjugate(format!(
            "r' with 1/r' = {inv_rp} has no conjugate above 1 (1/r = {inv_r} not positive)"
        )));
    }
    let two = SymExponent::from_rational(rat(2, 1));
    let sobolev = &(&m.sobolev + &(&two * &inv_r)) - &one();
    let eps_unit = SymExponent::new(
        crate::ratfn::RationalFnInS::zero(),
        crate::ratfn::RationalFnInS::one(),
    );
    let modulation = &(&inv_r - &half()) - &eps_unit;
    Ok(SpaceMembership::wave_sobolev(sobolev, modulation))
}

/// Sobolev embedding H^{σ,r}_x ↪ L^p_x in three dimensions, subcritical
/// usage. Inhomogeneous spaces embed when r ≤ p and 1/p ≥ 1/r - σ/3;
/// homogeneous spaces only at scaling equality.
pub fn sobolev_embed(
    from: &SpaceMembership,
    inv_p: &SymExponent,
    domain: &SDomain,
) -> Result<(bool, ConditionReport)> {
    if from.family != SpaceFamily::SpatialSobolev {
        return Err(Error::NotApplicable(format!(
            "embedding expects a spatial space, got {from}"
        )));
    }
    let sigma = &from.sobolev;
    let inv_r = from.inv_space.as_ref().expect("spatial space has r");
    let mut report = ConditionReport::new();
    let mut ok = true;

    ok &= push_check(
        &mut report,
        "sigma-nonneg",
        format!("σ = {sigma} ≥ 0"),
        sigma,
        domain,
        Strictness::NonStrict,
    )?;
    ok &= push_check(
        &mut report,
        "r-above-1",
        format!("1/r = {inv_r} < 1"),
        &(&one() - inv_r),
        domain,
        Strictness::Strict,
    )?;
    ok &= push_check(
        &mut report,
        "p-finite",
        format!("1/p = {inv_p} > 0"),
        inv_p,
        domain,
        Strictness::Strict,
    )?;

    let third = SymExponent::from_rational(rat(1, 3));
    let scaling = &(inv_r.clone()) - &(&third * sigma);
    if from.homogeneous {
        let holds = inv_p.identical_to(&scaling);
        report.push(ConditionRecord::identity(
            "scaling-exact",
            format!("1/p = 1/r - σ/3 exactly ({inv_p} = {scaling})"),
            holds,
        ));
        ok &= holds;
    } else {
        ok &= push_check(
            &mut report,
            "p-at-least-r",
            format!("1/p = {inv_p} ≤ 1/r = {inv_r}"),
            &(inv_r - inv_p),
            domain,
            Strictness::NonStrict,
        )?;
        ok &= push_check(
            &mut report,
            "scaling",
            format!("1/p = {inv_p} ≥ 1/r - σ/3 = {scaling}"),
            &(inv_p - &scaling),
            domain,
            Strictness::NonStrict,
        )?;
    }
    Ok((ok, report))
}

/// One interpolation step between two memberships of the same family.
#[derive(Debug, Clone)]
pub struct InterpolationStep {
    pub endpoint_a: SpaceMembership,
    pub endpoint_b: SpaceMembership,
    pub theta: SymExponent,
    pub result: SpaceMembership,
}

fn combine(theta: &SymExponent, a: &SymExponent, b: &SymExponent) -> SymExponent {
    // (1-θ)a + θb = a + θ(b - a).
    a + &(theta * &(b - a))
}

/// Componentwise θ-convex combination; θ must lie in [0,1] on the domain.
pub fn interpolate(
    a: &SpaceMembership,
    b: &SpaceMembership,
    theta: &SymExponent,
    domain: &SDomain,
) -> Result<InterpolationStep> {
    if a.family != b.family {
        return Err(Error::NotApplicable(format!(
            "cannot interpolate across families ({a} vs {b})"
        )));
    }
    for (label, margin) in [("θ ≥ 0", theta.clone()), ("θ ≤ 1", &one() - theta)] {
        let c = check_sign(&margin, domain, Strictness::NonStrict)?;
        if !c.satisfied {
            let w = c
                .witness
                .map(|w| crate::rational::exact_string(&w))
                .unwrap_or_else(|| "?".into());
            return Err(Error::ThetaOutOfRange(format!(
                "{label} fails on {domain} (witness s = {w}, θ = {theta})"
            )));
        }
    }
    let sobolev = combine(theta, &a.sobolev, &b.sobolev);
    let result = match a.family {
        SpaceFamily::WaveSobolev | SpaceFamily::KleinGordonPlus | SpaceFamily::KleinGordonMinus => {
            let ba = a.modulation.as_ref().expect("modulation");
            let bb = b.modulation.as_ref().expect("modulation");
            let mut m = SpaceMembership::wave_sobolev(sobolev, combine(theta, ba, bb));
            m.family = a.family;
            m
        }
        SpaceFamily::MixedNorm => SpaceMembership::mixed_norm(
            sobolev,
            combine(
                theta,
                a.inv_time.as_ref().unwrap(),
                b.inv_time.as_ref().unwrap(),
            ),
            combine(
                theta,
                a.inv_space.as_ref().unwrap(),
                b.inv_space.as_ref().unwrap(),
            ),
        ),
        SpaceFamily::SpatialSobolev => SpaceMembership::spatial(
            sobolev,
            combine(
                theta,
                a.inv_space.as_ref().unwrap(),
                b.inv_space.as_ref().unwrap(),
            ),
        ),
    };
    Ok(InterpolationStep {
        endpoint_a: a.clone(),
        endpoint_b: b.clone(),
        theta: theta.clone(),
        result,
    })
}

/// Solve for θ with (1-θ)·b_a + θ·b_b = target on the modulation indices.
/// Composing with [`interpolate`] reproduces the target exactly.
pub fn solve_theta(
    a: &SpaceMembership,
    b: &SpaceMembership,
    target: &SymExponent,
    domain: &SDomain,
) -> Result<SymExponent> {
    let ba = a
        .modulation
        .as_ref()
        .ok_or_else(|| Error::NotApplicable(format!("{a} has no modulation index")))?;
    let bb = b
        .modulation
        .as_ref()
        .ok_or_else(|| Error::NotApplicable(format!("{b} has no modulation index")))?;
    let span = bb - ba;
    if span.is_zero() {
        return Err(Error::NotApplicable(
            "modulation indices of the two endpoints coincide".into(),
        ));
    }
    let theta = (target - ba).div(&span)?;
    for (label, margin) in [("θ ≥ 0", theta.clone()), ("θ ≤ 1", &one() - &theta)] {
        let c = check_sign(&margin, domain, Strictness::NonStrict)?;
        if !c.satisfied {
            let w = c
                .witness
                .map(|w| crate::rational::exact_string(&w))
                .unwrap_or_else(|| "?".into());
            return Err(Error::Infeasible(format!(
                "no admissible θ: {label} fails on {domain} (witness s = {w}, θ = {theta})"
            )));
        }
    }
    Ok(theta)
}

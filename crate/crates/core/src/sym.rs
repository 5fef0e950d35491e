//! Exponents that depend on `s` and carry an ε perturbation.
//!
//! A `SymExponent` is `base(s) + eps(s)·ε`, a first-order element of the
//! ordered algebra of rational functions extended by one positive formal
//! infinitesimal. Evaluating at a rational `s` yields an [`EpsExponent`];
//! products and quotients track the ε coefficient exactly to first order,
//! which is what conjugate exponents, interpolation parameters and Hölder
//! splits need.
//!
//! [`check_sign`] is the single decision procedure behind every inequality
//! in the artifact: a margin is positive on a domain iff its base is, or the
//! base is non-negative and the ε coefficient decides at the base's zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::eps::EpsExponent;
use crate::interval::{sign_profile, ClosedInterval, SignVerdict};
use crate::ratfn::{ratfn_equal, RationalFnInS};
use crate::rational::{exact_string, int, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymExponent {
    pub base: RationalFnInS,
    pub eps: RationalFnInS,
}

impl SymExponent {
    pub fn new(base: RationalFnInS, eps: RationalFnInS) -> Self {
        Self { base, eps }
    }

    pub fn from_ratfn(base: RationalFnInS) -> Self {
        Self {
            base,
            eps: RationalFnInS::zero(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_ratfn(RationalFnInS::constant(c))
    }

    pub fn with_order(base: RationalFnInS, order: i64) -> Self {
        Self {
            base,
            eps: RationalFnInS::constant(int(order)),
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::from_integer(0.into()))
    }

    pub fn var() -> Self {
        Self::from_ratfn(RationalFnInS::var())
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.eps.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.base.as_constant().is_some() && self.eps.as_constant().is_some()
    }

    pub fn as_eps_exponent(&self) -> Option<EpsExponent> {
        Some(EpsExponent::new(
            self.base.as_constant()?,
            self.eps.as_constant()?,
        ))
    }

    /// Exact evaluation at a rational `s`; None at a pole of either part.
    pub fn eval(&self, s: &Rational) -> Option<EpsExponent> {
        Some(EpsExponent::new(self.base.eval(s)?, self.eps.eval(s)?))
    }

    pub fn scale(&self, c: &RationalFnInS) -> Self {
        Self {
            base: &self.base * c,
            eps: &self.eps * c,
        }
    }

    /// First-order reciprocal; errors when the base vanishes identically.
    pub fn recip(&self) -> Result<Self> {
        if self.base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = self.base.recip()?;
        Ok(Self {
            base: inv.clone(),
            eps: &(&(-&self.eps) * &inv) * &inv,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Structural identity: both parts agree as rational functions.
    pub fn identical_to(&self, other: &Self) -> bool {
        ratfn_equal(&self.base, &other.base) && ratfn_equal(&self.eps, &other.eps)
    }
}

impl From<EpsExponent> for SymExponent {
    fn from(e: EpsExponent) -> Self {
        Self {
            base: RationalFnInS::constant(e.base),
            eps: RationalFnInS::constant(e.eps),
        }
    }
}

impl Add for &SymExponent {
    type Output = SymExponent;
    fn add(self, rhs: &SymExponent) -> SymExponent {
        SymExponent {
            base: &self.base + &rhs.base,
            eps: &self.eps + &rhs.eps,
        }
    }
}

impl Sub for &SymExponent {
    type Output = SymExponent;
    fn sub(self, rhs: &SymExponent) -> SymExponent {
        SymExponent {
            base: &self.base - &rhs.base,
            eps: &self.eps - &rhs.eps,
        }
    }
}

impl Neg for &SymExponent {
    type Output = SymExponent;
    fn neg(self) -> SymExponent {
        SymExponent {
            base: -&self.base,
            eps: -&self.eps,
        }
    }
}

impl Mul for &SymExponent {
    type Output = SymExponent;
    fn mul(self, rhs: &SymExponent) -> SymExponent {
        SymExponent {
            base: &self.base * &rhs.base,
            eps: &(&self.base * &rhs.eps) + &(&rhs.base * &self.eps),
        }
    }
}

impl fmt::Display for SymExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(e) = self.as_eps_exponent() {
            return write!(f, "{e}");
        }
        if self.eps.is_zero() {
            return write!(f, "{}", self.base);
        }
        if let Some(k) = self.eps.as_constant() {
            if k == int(1) {
                return write!(f, "{}+", self.base);
            }
            if k == int(-1) {
                return write!(f, "{}-", self.base);
            }
            if k.is_positive() {
                return write!(f, "{}+{}ε", self.base, exact_string(&k));
            }
            return write!(f, "{}-{}ε", self.base, exact_string(&k.abs()));
        }
        write!(f, "({}) + ({})·ε", self.base, self.eps)
    }
}

/// Where a claim is to be verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SDomain {
    Point(Rational),
    Interval(ClosedInterval),
}

impl SDomain {
    pub fn point(s: Rational) -> Self {
        SDomain::Point(s)
    }

    pub fn interval(lo: Rational, hi: Rational) -> Result<Self> {
        Ok(SDomain::Interval(ClosedInterval::new(lo, hi)?))
    }
}

impl fmt::Display for SDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SDomain::Point(s) => write!(f, "s = {}", exact_string(s)),
            SDomain::Interval(i) => write!(f, "s ∈ {i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    NonStrict,
}

impl Strictness {
    pub fn label(self) -> &'static str {
        match self {
            Strictness::Strict => "strict",
            Strictness::NonStrict => "non-strict",
        }
    }
}

/// Result of deciding `margin > 0` (or `>= 0`) on a domain.
#[derive(Debug, Clone)]
pub struct MarginCheck {
    pub satisfied: bool,
    /// Exact margin at a point domain.
    pub point_margin: Option<EpsExponent>,
    /// Sign verdict of the cleared margin numerator on an interval domain,
    /// oriented so that Positive means the margin is.
    pub verdict: Option<SignVerdict>,
    /// A rational `s` at which the claim fails, when it does.
    pub witness: Option<Rational>,
    /// Set when the ε coefficient was load-bearing (zero base margin).
    pub eps_decided: bool,
}

/// Decide `m > 0` (strict) or `m >= 0` (non-strict) on `domain`.
///
/// On an interval the margin's denominator must keep a single strict sign
/// there (certified via [`sign_profile`]); the claim is then decided on the
/// numerator. Where the base margin vanishes, the ε coefficient decides,
/// which requires those zeros to be rational points unless the ε coefficient
/// itself keeps a strict sign on the whole interval.
pub fn check_sign(m: &SymExponent, domain: &SDomain, strict: Strictness) -> Result<MarginCheck> {
    match domain {
        SDomain::Point(s) => {
            let v = m.eval(s).ok_or_else(|| {
                Error::Domain(format!("margin has a pole at s = {}", exact_string(s)))
            })?;
            let ok = match strict {
                Strictness::Strict => v.is_positive(),
                Strictness::NonStrict => !v.is_negative(),
            };
            Ok(MarginCheck {
                satisfied: ok,
                eps_decided: v.base.is_zero() && !v.eps.is_zero(),
                point_margin: Some(v),
                verdict: None,
                witness: if ok { None } else { Some(s.clone()) },
            })
        }
        SDomain::Interval(i) => check_sign_on_interval(m, i, strict),
    }
}

fn check_sign_on_interval(
    m: &SymExponent,
    i: &ClosedInterval,
    strict: Strictness,
) -> Result<MarginCheck> {
    // Orient by the denominator's certified sign.
    let den_prof = sign_profile(m.base.denominator(), i);
    let den_sign = if den_prof.is_strictly_positive() {
        1
    } else if den_prof.is_strictly_negative() {
        -1
    } else {
        return Err(Error::UnsupportedShape(format!(
            "margin denominator {} is not of constant sign on {i}",
            m.base.denominator()
        )));
    };
    let num = if den_sign > 0 {
        m.base.numerator().clone()
    } else {
        -m.base.numerator()
    };
    let prof = sign_profile(&num, i);

    if prof.is_strictly_positive() {
        return Ok(MarginCheck {
            satisfied: true,
            point_margin: None,
            verdict: Some(SignVerdict::Positive),
            witness: None,
            eps_decided: false,
        });
    }

    if let Some(w) = prof.negative_witness() {
        return Ok(MarginCheck {
            satisfied: false,
            point_margin: None,
            verdict: Some(SignVerdict::Mixed { witness: w.clone() }),
            witness: Some(w),
            eps_decided: false,
        });
    }

    // Base margin is >= 0 with zeros (possibly identically zero): ε decides
    // wherever the base vanishes.
    let eps_ok_at = |s: &Rational| -> Result<bool> {
        let v = m.eps.eval(s).ok_or_else(|| {
            Error::Domain(format!(
                "ε coefficient has a pole at s = {}",
                exact_string(s)
            ))
        })?;
        Ok(match strict {
            Strictness::Strict => v.is_positive(),
            Strictness::NonStrict => !v.is_negative(),
        })
    };
    // ε holds the required sign on the whole interval; dominates any zero
    // set of the base.
    let eps_everywhere = |strictness: Strictness| -> bool {
        let num_prof = sign_profile(m.eps.numerator(), i);
        let den_prof = sign_profile(m.eps.denominator(), i);
        let positive = (num_prof.is_strictly_positive() && den_prof.is_strictly_positive())
            || (num_prof.is_strictly_negative() && den_prof.is_strictly_negative());
        match strictness {
            Strictness::Strict => positive,
            Strictness::NonStrict => {
                positive
                    || m.eps.is_zero()
                    || (num_prof.is_nonnegative() && den_prof.is_strictly_positive())
                    || (num_prof.is_nonpositive() && den_prof.is_strictly_negative())
            }
        }
    };

    let decided = if prof.identically_zero {
        // The base vanishes on the whole interval, so ε must carry the sign
        // everywhere, not just at sampled points.
        let ok = eps_everywhere(strict);
        (ok, if ok { None } else { Some(i.lo().clone()) })
    } else if prof.zeros_exact {
        let mut ok = true;
        let mut bad = None;
        for z in &prof.zeros {
            if !eps_ok_at(z)? {
                ok = false;
                bad = Some(z.clone());
                break;
            }
        }
        (ok, bad)
    } else {
        // Irrational zero location: require the ε coefficient to hold a
        // strict sign on the whole interval.
        let ok = eps_everywhere(Strictness::Strict);
        (ok, if ok { None } else { prof.zeros.first().cloned() })
    };

    let (satisfied, bad_zero) = decided;
    Ok(MarginCheck {
        satisfied,
        point_margin: None,
        verdict: Some(if prof.identically_zero {
            SignVerdict::Zero
        } else if satisfied {
            SignVerdict::Positive
        } else {
            SignVerdict::Mixed {
                witness: bad_zero.clone().unwrap_or_else(|| i.lo().clone()),
            }
        }),
        witness: if satisfied {
            None
        } else {
            bad_zero.or_else(|| Some(i.lo().clone()))
        },
        eps_decided: satisfied && !prof.is_strictly_positive() && !m.eps.is_zero(),
    })
}

//! Closed rational intervals and exact sign determination on them.
//!
//! `sign_on_interval` decides the sign of a polynomial on a closed interval
//! by root isolation, never by sampling alone: the interval is partitioned at
//! the (certified) real roots, and the polynomial is evaluated exactly once
//! per root-free segment. A claim is therefore decided, not estimated.

use crate::poly::PolynomialInS;
use crate::rational::{exact_string, Rational};
use crate::roots;
use crate::{Error, Result};

/// `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedInterval {
    lo: Rational,
    hi: Rational,
}

impl ClosedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!(
                "interval bounds out of order: [{}, {}]",
                exact_string(&lo),
                exact_string(&hi)
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl std::fmt::Display for ClosedInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}]",
            exact_string(&self.lo),
            exact_string(&self.hi)
        )
    }
}

/// Outcome of a sign determination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignVerdict {
    Positive,
    Negative,
    Zero,
    /// The claimed sign fails somewhere; the witness is a rational point at
    /// which it fails (a point of opposite sign, or a zero under a strict
    /// claim).
    Mixed {
        witness: Rational,
    },
}

impl SignVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, SignVerdict::Positive)
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, SignVerdict::Negative)
    }

    pub fn label(&self) -> &'static str {
        match self {
            SignVerdict::Positive => "positive",
            SignVerdict::Negative => "negative",
            SignVerdict::Zero => "zero",
            SignVerdict::Mixed { .. } => "mixed",
        }
    }
}

impl std::fmt::Display for SignVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SignVerdict::Mixed { witness } => {
                write!(f, "mixed (witness s = {})", exact_string(witness))
            }
            other => write!(f, "{}", other.label()),
        }
    }
}

/// Exact sign data for a polynomial on a closed interval.
#[derive(Debug, Clone)]
pub struct SignProfile {
    /// p takes a strictly positive value somewhere on the interval.
    pub has_positive: bool,
    /// p takes a strictly negative value somewhere on the interval.
    pub has_negative: bool,
    /// One representative rational point per root-free segment, with p's sign
    /// there; endpoints always included.
    pub samples: Vec<(Rational, i32)>,
    /// Locations of the distinct real roots inside the interval. Rational
    /// roots carry their exact location; irrational ones the bracket midpoint.
    pub zeros: Vec<Rational>,
    /// Whether every zero location in `zeros` is exact.
    pub zeros_exact: bool,
    /// p is the zero polynomial.
    pub identically_zero: bool,
}

impl SignProfile {
    pub fn is_strictly_positive(&self) -> bool {
        !self.identically_zero && !self.has_negative && self.zeros.is_empty() && self.has_positive
    }

    pub fn is_strictly_negative(&self) -> bool {
        !self.identically_zero && !self.has_positive && self.zeros.is_empty() && self.has_negative
    }

    /// p >= 0 everywhere (zeros allowed).
    pub fn is_nonnegative(&self) -> bool {
        self.identically_zero || !self.has_negative
    }

    pub fn is_nonpositive(&self) -> bool {
        self.identically_zero || !self.has_positive
    }

    /// A rational point where p < 0, when one exists among the samples.
    pub fn negative_witness(&self) -> Option<Rational> {
        self.samples
            .iter()
            .find(|(_, s)| *s < 0)
            .map(|(x, _)| x.clone())
    }

    pub fn positive_witness(&self) -> Option<Rational> {
        self.samples
            .iter()
            .find(|(_, s)| *s > 0)
            .map(|(x, _)| x.clone())
    }

    /// A point at (or marking) a zero of p, when p has one on the interval.
    pub fn zero_witness(&self) -> Option<Rational> {
        self.zeros.first().cloned()
    }
}

/// Compute the exact sign profile of `p` on `i`.
pub fn sign_profile(p: &PolynomialInS, i: &ClosedInterval) -> SignProfile {
    if p.is_zero() {
        return SignProfile {
            has_positive: false,
            has_negative: false,
            samples: vec![(i.lo().clone(), 0), (i.hi().clone(), 0)],
            zeros: vec![i.lo().clone()],
            zeros_exact: true,
            identically_zero: true,
        };
    }
    if i.is_point() {
        let s = p.sign_at(i.lo());
        return SignProfile {
            has_positive: s > 0,
            has_negative: s < 0,
            samples: vec![(i.lo().clone(), s)],
            zeros: if s == 0 { vec![i.lo().clone()] } else { vec![] },
            zeros_exact: true,
            identically_zero: false,
        };
    }

    let brackets = roots::isolate_roots(p, i);
    let mut samples: Vec<(Rational, i32)> = Vec::new();
    let mut zeros: Vec<Rational> = Vec::new();
    let mut zeros_exact = true;

    let push_sample = |x: Rational, p: &PolynomialInS, samples: &mut Vec<(Rational, i32)>| {
        let s = p.sign_at(&x);
        samples.push((x, s));
    };

    // Endpoints first, then one interior point per gap between brackets.
    push_sample(i.lo().clone(), p, &mut samples);
    let mut prev_hi = i.lo().clone();
    for b in &brackets {
        if b.bracket.lo() > &prev_hi {
            let mid = (&prev_hi + b.bracket.lo()) / Rational::from_integer(2.into());
            push_sample(mid, p, &mut samples);
        }
        if b.exact {
            zeros.push(b.approx.clone());
        } else {
            zeros.push(b.bracket.midpoint());
            zeros_exact = false;
        }
        prev_hi = b.bracket.hi().clone();
    }
    if &prev_hi < i.hi() {
        let mid = (&prev_hi + i.hi()) / Rational::from_integer(2.into());
        push_sample(mid, p, &mut samples);
    }
    push_sample(i.hi().clone(), p, &mut samples);

    let has_positive = samples.iter().any(|(_, s)| *s > 0);
    let has_negative = samples.iter().any(|(_, s)| *s < 0);
    SignProfile {
        has_positive,
        has_negative,
        samples,
        zeros,
        zeros_exact,
        identically_zero: false,
    }
}

/// Decide the sign of `p` on the closed interval `i`.
///
/// With `strict = true` the verdict `Positive` (resp. `Negative`) asserts the
/// strict sign at every point of the interval, endpoints included; any zero
/// defeats it. With `strict = false` the verdict asserts the non-strict sign
/// (zeros allowed, endpoint zeros in particular). The zero polynomial yields
/// `Zero` either way.
pub fn sign_on_interval(p: &PolynomialInS, i: &ClosedInterval, strict: bool) -> SignVerdict {
    let prof = sign_profile(p, i);
    if prof.identically_zero {
        return SignVerdict::Zero;
    }
    if strict {
        if prof.is_strictly_positive() {
            return SignVerdict::Positive;
        }
        if prof.is_strictly_negative() {
            return SignVerdict::Negative;
        }
    } else {
        if prof.is_nonnegative() && prof.has_positive {
            return SignVerdict::Positive;
        }
        if prof.is_nonpositive() && prof.has_negative {
            return SignVerdict::Negative;
        }
    }
    // Mixed: prefer a witness of the minority sign, else a zero location.
    let witness = if prof.has_positive && prof.has_negative {
        let lead = prof
            .samples
            .iter()
            .find(|(_, s)| *s != 0)
            .map(|(_, s)| *s)
            .unwrap_or(0);
        if lead >= 0 {
            prof.negative_witness().or_else(|| prof.positive_witness())
        } else {
            prof.positive_witness().or_else(|| prof.negative_witness())
        }
    } else {
        prof.zero_witness()
    };
    SignVerdict::Mixed {
        witness: witness.unwrap_or_else(|| i.lo().clone()),
    }
}

/// Interval endpoint convention for claims quoted with a strict hypothesis on
/// `s` (e.g. an open left endpoint): verification runs on
/// `[lo + margin, hi]` with `margin = 10^-6`.
pub fn nudged_left(i: &ClosedInterval) -> Result<ClosedInterval> {
    let margin = Rational::new(1.into(), 1_000_000.into());
    let lo = i.lo() + &margin;
    if &lo > i.hi() {
        return Err(Error::Domain(format!("interval {i} too narrow to nudge")));
    }
    ClosedInterval::new(lo, i.hi().clone())
}

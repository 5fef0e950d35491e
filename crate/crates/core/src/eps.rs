//! Epsilon-perturbed exponents.
//!
//! An `EpsExponent` models `a±`, i.e. `a ± ε` for one formal, arbitrarily
//! small `ε > 0` shared across an inequality system. The ε coefficient is a
//! rational, so integer multiples such as `1/4 - 2ε` and `1/4 + 3ε` combine
//! exactly, and so do the coefficients produced by conjugating or scaling a
//! perturbed exponent. The total order is lexicographic: compare bases first,
//! then ε coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{exact_string, int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsExponent {
    pub base: Rational,
    pub eps: Rational,
}

impl EpsExponent {
    pub fn new(base: Rational, eps: Rational) -> Self {
        Self { base, eps }
    }

    /// Exact value, no perturbation.
    pub fn exact(base: Rational) -> Self {
        Self {
            base,
            eps: Rational::zero(),
        }
    }

    /// Base plus an integer multiple of ε (`order` = +1 for `a+`, -1 for `a-`).
    pub fn with_order(base: Rational, order: i64) -> Self {
        Self {
            base,
            eps: int(order),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::exact(int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::exact(rat(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.eps.is_zero()
    }

    /// Strictly positive in the ordered ring (base > 0, or base = 0 and ε
    /// coefficient > 0).
    pub fn is_positive(&self) -> bool {
        self.base.is_positive() || (self.base.is_zero() && self.eps.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.base.is_negative() || (self.base.is_zero() && self.eps.is_negative())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            base: &self.base * c,
            eps: &self.eps * c,
        }
    }

    /// Reciprocal to first order in ε: 1/(a + kε) = 1/a - (k/a²)ε.
    pub fn recip(&self) -> Option<Self> {
        if self.base.is_zero() {
            return None;
        }
        let inv = self.base.recip();
        Some(Self {
            base: inv.clone(),
            eps: -&self.eps * &inv * &inv,
        })
    }
}

impl Add for &EpsExponent {
    type Output = EpsExponent;
    fn add(self, rhs: &EpsExponent) -> EpsExponent {
        EpsExponent {
            base: &self.base + &rhs.base,
            eps: &self.eps + &rhs.eps,
        }
    }
}

impl Sub for &EpsExponent {
    type Output = EpsExponent;
    fn sub(self, rhs: &EpsExponent) -> EpsExponent {
        EpsExponent {
            base: &self.base - &rhs.base,
            eps: &self.eps - &rhs.eps,
        }
    }
}

impl Neg for &EpsExponent {
    type Output = EpsExponent;
    fn neg(self) -> EpsExponent {
        EpsExponent {
            base: -&self.base,
            eps: -&self.eps,
        }
    }
}

/// Product truncated at first order: (a + kε)(b + mε) = ab + (am + bk)ε.
impl Mul for &EpsExponent {
    type Output = EpsExponent;
    fn mul(self, rhs: &EpsExponent) -> EpsExponent {
        EpsExponent {
            base: &self.base * &rhs.base,
            eps: &self.base * &rhs.eps + &rhs.base * &self.eps,
        }
    }
}

impl PartialOrd for EpsExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EpsExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.eps.cmp(&other.eps))
    }
}

/// Lexicographic comparison; named form of the `Ord` impl.
pub fn eps_compare(a: &EpsExponent, b: &EpsExponent) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for EpsExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_zero() {
            return write!(f, "{}", exact_string(&self.base));
        }
        if self.base.is_zero() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", exact_string(&self.base))?;
        }
        let one = int(1);
        if self.eps == one {
            write!(f, "+")
        } else if self.eps == -&one {
            write!(f, "-")
        } else if self.eps.is_positive() {
            write!(f, "+{}ε", exact_string(&self.eps))
        } else {
            write!(f, "-{}ε", exact_string(&self.eps.abs()))
        }
    }
}

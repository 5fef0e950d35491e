//! Rational functions of the regularity parameter `s`.
//!
//! Always kept normalized: numerator and denominator coprime, denominator
//! monic. Equality is decided by cross-multiplication of normalized forms,
//! so two different spellings of the same function compare equal.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::One;

use crate::poly::PolynomialInS;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFnInS {
    num: PolynomialInS,
    den: PolynomialInS,
}

impl RationalFnInS {
    /// Build `num/den`, normalizing. Errors when `den` is identically zero.
    pub fn new(num: PolynomialInS, den: PolynomialInS) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: PolynomialInS, den: PolynomialInS) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: PolynomialInS::one(),
            };
        }
        // Constant denominators need no gcd pass.
        if let Some(c) = den.as_constant() {
            return Self {
                num: num.scale(&c.recip()),
                den: PolynomialInS::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        let lead = den.leading().expect("nonzero denominator").clone();
        Self {
            num: num.scale(&lead.recip()),
            den: den.scale(&lead.recip()),
        }
    }

    pub fn from_poly(p: PolynomialInS) -> Self {
        Self {
            num: p,
            den: PolynomialInS::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(PolynomialInS::constant(c))
    }

    pub fn zero() -> Self {
        Self::constant(Rational::from_integer(0.into()))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The variable `s`.
    pub fn var() -> Self {
        Self::from_poly(PolynomialInS::var())
    }

    pub fn numerator(&self) -> &PolynomialInS {
        &self.num
    }

    pub fn denominator(&self) -> &PolynomialInS {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    /// The underlying polynomial when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<PolynomialInS> {
        self.den.as_constant().map(|c| self.num.scale(&c.recip()))
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_polynomial().and_then(|p| p.as_constant())
    }

    /// Exact evaluation; None when s is a pole.
    pub fn eval(&self, s: &Rational) -> Option<Rational> {
        let d = self.den.eval(s);
        if d == Rational::from_integer(0.into()) {
            return None;
        }
        Some(self.num.eval(s) / d)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }
}

/// True iff f and g agree as rational functions: f·den(g) − g·den(f) is the
/// zero polynomial after normalization.
pub fn ratfn_equal(f: &RationalFnInS, g: &RationalFnInS) -> bool {
    (&(&f.num * &g.den) - &(&g.num * &f.den)).is_zero()
}

/// Fixed point `b / (1 - a)` of the affine map `t -> a·t + b`.
///
/// Applying the map to the result reproduces it, which callers can certify
/// with [`ratfn_equal`]. Errors when `1 - a` vanishes identically.
pub fn affine_fixed_point(a: &RationalFnInS, b: &RationalFnInS) -> Result<RationalFnInS> {
    let one_minus_a = &RationalFnInS::one() - a;
    if one_minus_a.is_zero() {
        return Err(Error::DegenerateMap);
    }
    Ok(b / &one_minus_a)
}

impl Add for &RationalFnInS {
    type Output = RationalFnInS;
    fn add(self, rhs: &RationalFnInS) -> RationalFnInS {
        if self.den == rhs.den {
            return RationalFnInS::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFnInS::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFnInS {
    type Output = RationalFnInS;
    fn sub(self, rhs: &RationalFnInS) -> RationalFnInS {
        self + &(-rhs)
    }
}

impl Neg for &RationalFnInS {
    type Output = RationalFnInS;
    fn neg(self) -> RationalFnInS {
        RationalFnInS {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFnInS {
    type Output = RationalFnInS;
    fn mul(self, rhs: &RationalFnInS) -> RationalFnInS {
        RationalFnInS::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFnInS {
    type Output = RationalFnInS;
    fn div(self, rhs: &RationalFnInS) -> RationalFnInS {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFnInS::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for RationalFnInS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

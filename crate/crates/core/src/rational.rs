//! Arbitrary-precision rationals and their exact decimal rendering.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, denominator
//! positive, arithmetic exact. This module adds the conversions the rest of
//! the crate needs — parsing `p/q` and decimal literals into exact rationals,
//! and correctly rounded decimal rendering of exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `p/q`, an integer, or a decimal literal into an exact rational.
///
/// Decimals convert exactly: `0.95` becomes `19/20`, never a float.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = parse_decimal(num)?;
        let d = parse_decimal(den)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        return Ok(n / d);
    }
    parse_decimal(t)
}

fn parse_decimal(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (sign, digits) = match t.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    if digits.is_empty() {
        return Err(Error::Parse(format!("bad numeric literal `{text}`")));
    }
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("bad numeric literal `{text}`")));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("bad numeric literal `{text}`")));
    }
    let mut num: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer `{int_part}`")))?
    };
    let mut den = BigInt::one();
    for c in frac_part.chars() {
        num = num * 10 + (c as u8 - b'0');
        den *= 10;
    }
    Ok(Rational::new(num * sign, den))
}

/// Render as `num/den` (or plain integer when the denominator is one).
pub fn exact_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Correctly rounded decimal rendering with `sig` significant digits.
///
/// Rounding is to nearest, ties to even. Values whose decimal expansion
/// terminates within `sig` digits render exactly, without padding zeros.
pub fn decimal_string(x: &Rational, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let ax = x.abs();

    // Decimal exponent e with 10^e <= ax < 10^(e+1).
    let mut e = magnitude_exponent(&ax);

    // Scale so that round(ax * 10^(sig-1-e)) has exactly `sig` digits.
    let mut digits = round_scaled(&ax, sig as i64 - 1 - e);
    // Rounding can carry into one extra digit (e.g. 0.999... -> 1.00).
    if count_digits(&digits) > sig as u64 {
        digits /= 10;
        e += 1;
    }

    let digit_str = digits.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= 0 && (e as usize) < sig {
        // Plain notation with the point inside or at the end of the digits.
        let point = e as usize + 1;
        out.push_str(&digit_str[..point]);
        let frac = digit_str[point..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else if (-6..0).contains(&e) {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(digit_str.trim_end_matches('0'));
    } else if e >= 0 && (e as usize) < sig + 6 {
        // Integral value wider than the significand: pad with zeros.
        out.push_str(&digit_str);
        for _ in 0..(e as usize + 1 - digit_str.len()) {
            out.push('0');
        }
    } else {
        // Scientific notation.
        out.push_str(&digit_str[..1]);
        let frac = digit_str[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push('e');
        out.push_str(&e.to_string());
    }
    out
}

/// Largest e with 10^e <= x (x > 0).
fn magnitude_exponent(x: &Rational) -> i64 {
    let num_digits = count_digits(x.numer()) as i64;
    let den_digits = count_digits(x.denom()) as i64;
    let mut e = num_digits - den_digits;
    // |e' - e| <= 1 from the digit-count estimate; fix up exactly.
    while pow10(e + 1) <= *x {
        e += 1;
    }
    while pow10(e) > *x {
        e -= 1;
    }
    e
}

fn pow10(e: i64) -> Rational {
    let p = BigInt::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn count_digits(n: &BigInt) -> u64 {
    if n.is_zero() {
        return 1;
    }
    let (_, digits) = n.abs().to_radix_be(10);
    digits.len() as u64
}

/// round(x * 10^shift) to nearest, ties to even; x > 0.
fn round_scaled(x: &Rational, shift: i64) -> BigInt {
    let scaled = x * pow10(shift);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = &r * 2;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Convenience: approximate `f64` view for diagnostics only (never used in a
/// verification path).
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

//! Helpers around `BigRational`: text form and perfect-power detection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn render(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Parses a decimal literal such as `0.25`, `-1.5e-3` or `2E4` exactly.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = Rational::from_integer(n);
    if scale >= 0 {
        r *= Rational::from_integer(Pow::pow(&ten, scale as u32));
    } else {
        r /= Rational::from_integer(Pow::pow(&ten, (-scale) as u32));
    }
    Some(if neg { -r } else { r })
}

fn exact_root(n: &BigInt, e: u32) -> Option<BigInt> {
    let r = n.nth_root(e);
    if Pow::pow(&r, e) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `e`-th root of a positive rational, if one exists.
pub fn exact_rational_root(r: &Rational, e: u32) -> Option<Rational> {
    debug_assert!(r.is_positive());
    let n = exact_root(r.numer(), e)?;
    let d = exact_root(r.denom(), e)?;
    Some(Rational::new(n, d))
}

/// Writes a positive rational `r != 1` as `base^e` with `e` maximal, so
/// `base` is not a perfect power of any exponent >= 2.
pub fn perfect_power(r: &Rational) -> (Rational, u32) {
    debug_assert!(r.is_positive() && !r.is_one());
    let bits = r.numer().bits().max(r.denom().bits()) as u32;
    for e in (2..=bits.max(2)).rev() {
        if let Some(base) = exact_rational_root(r, e) {
            return (base, e);
        }
    }
    (r.clone(), 1)
}

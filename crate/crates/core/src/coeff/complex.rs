//! Arbitrary-precision complex floats on top of `astro-float`.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rational::Rational;

/// Smallest precision the numeric mode accepts.
pub const MIN_PRECISION: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

pub(crate) fn bigint_to_float(n: &BigInt, p: usize) -> BigFloat {
    let digits = n.magnitude().to_u64_digits();
    let exact = p.max(64 * (digits.len() + 1));
    let base = BigFloat::from_u128(1u128 << 64, 128);
    let mut acc = BigFloat::from_u8(0, exact);
    for d in digits.iter().rev() {
        acc = acc.mul(&base, exact, RM).add(&BigFloat::from_u64(*d, 64), exact, RM);
    }
    if n.is_negative() {
        acc = acc.neg();
    }
    acc
}

pub(crate) fn rational_to_float(r: &Rational, p: usize) -> BigFloat {
    let n = bigint_to_float(r.numer(), p);
    let d = bigint_to_float(r.denom(), p);
    n.div(&d, p, RM)
}

pub(crate) fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return if x.is_nan() {
            f64::NAN
        } else if x.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
    };
    // normalized mantissa 0.1b… in the most significant word
    let top = *words.last().expect("nonzero mantissa");
    let bits = 8 * std::mem::size_of_val(&top) as i32;
    let mag = top as f64 * 2f64.powi(e - bits);
    if sign.is_negative() {
        -mag
    } else {
        mag
    }
}

fn pi(p: usize) -> BigFloat {
    with_consts(|cc| cc.pi(p, RM))
}

fn atan2(y: &BigFloat, x: &BigFloat, p: usize) -> BigFloat {
    let zero = BigFloat::from_u8(0, p);
    if x.is_zero() {
        let half_pi = pi(p).div(&BigFloat::from_u8(2, p), p, RM);
        return match y.cmp(&zero) {
            Some(c) if c > 0 => half_pi,
            Some(c) if c < 0 => half_pi.neg(),
            _ => zero,
        };
    }
    let base = with_consts(|cc| y.div(x, p, RM).atan(p, RM, cc));
    if x.is_positive() {
        base
    } else if y.is_negative() {
        base.sub(&pi(p), p, RM)
    } else {
        base.add(&pi(p), p, RM)
    }
}

/// A complex number with real and imaginary parts carried at `precision` bits.
#[derive(Clone, Debug)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    precision: usize,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, precision: usize) -> Self {
        BigComplex { re, im, precision }
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_rational(&Rational::zero(), precision)
    }

    pub fn from_rational(r: &Rational, precision: usize) -> Self {
        BigComplex {
            re: rational_to_float(r, precision),
            im: BigFloat::from_u8(0, precision),
            precision,
        }
    }

    pub fn from_f64(re: f64, im: f64, precision: usize) -> Self {
        BigComplex {
            re: BigFloat::from_f64(re, precision),
            im: BigFloat::from_f64(im, precision),
            precision,
        }
    }

    /// e^{iπr}.
    pub fn unit_angle(r: &Rational, precision: usize) -> Self {
        let theta = pi(precision).mul(&rational_to_float(r, precision), precision, RM);
        let (c, s) = with_consts(|cc| (theta.cos(precision, RM, cc), theta.sin(precision, RM, cc)));
        BigComplex { re: c, im: s, precision }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn p(&self, other: &Self) -> usize {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p(other);
        BigComplex {
            re: self.re.add(&other.re, p, RM),
            im: self.im.add(&other.im, p, RM),
            precision: p,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p(other);
        BigComplex {
            re: self.re.sub(&other.re, p, RM),
            im: self.im.sub(&other.im, p, RM),
            precision: p,
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
            precision: self.precision,
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.p(other);
        let rr = self.re.mul(&other.re, p, RM);
        let ii = self.im.mul(&other.im, p, RM);
        let ri = self.re.mul(&other.im, p, RM);
        let ir = self.im.mul(&other.re, p, RM);
        BigComplex {
            re: rr.sub(&ii, p, RM),
            im: ri.add(&ir, p, RM),
            precision: p,
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let f = rational_to_float(r, self.precision);
        BigComplex {
            re: self.re.mul(&f, self.precision, RM),
            im: self.im.mul(&f, self.precision, RM),
            precision: self.precision,
        }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.precision;
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.precision, RM)
    }

    pub fn abs_f64(&self) -> f64 {
        float_to_f64(&self.re).hypot(float_to_f64(&self.im))
    }

    /// `None` when dividing by an exact zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let p = self.p(other);
        let den = other.norm_sqr();
        let num = self.mul(&other.conj());
        Some(BigComplex {
            re: num.re.div(&den, p, RM),
            im: num.im.div(&den, p, RM),
            precision: p,
        })
    }

    pub fn exp(&self) -> Self {
        let p = self.precision;
        let (m, c, s) = with_consts(|cc| {
            (
                self.re.exp(p, RM, cc),
                self.im.cos(p, RM, cc),
                self.im.sin(p, RM, cc),
            )
        });
        BigComplex {
            re: m.mul(&c, p, RM),
            im: m.mul(&s, p, RM),
            precision: p,
        }
    }

    /// Principal logarithm, argument in (-π, π]. `None` at zero.
    pub fn ln(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.precision;
        let modulus = with_consts(|cc| self.norm_sqr().ln(p, RM, cc))
            .div(&BigFloat::from_u8(2, p), p, RM);
        Some(BigComplex {
            re: modulus,
            im: atan2(&self.im, &self.re, p),
            precision: p,
        })
    }

    /// Principal power `exp(t · Log self)`; zero to a nonzero power is zero.
    pub fn powc(&self, t: &Self) -> Self {
        match self.ln() {
            Some(l) => l.mul(t).exp(),
            None => BigComplex::zero(self.precision),
        }
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.sub(other).abs_f64() <= tolerance
    }

    /// Parses `(re,im)` with decimal components.
    pub fn parse(s: &str, precision: usize) -> Option<Self> {
        let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let (re, im) = inner.split_once(',')?;
        let parse = |x: &str| {
            let v = with_consts(|cc| BigFloat::parse(x.trim(), Radix::Dec, precision, RM, cc));
            if v.is_nan() {
                None
            } else {
                Some(v)
            }
        };
        Some(BigComplex {
            re: parse(re)?,
            im: parse(im)?,
            precision,
        })
    }

    fn fmt_part(x: &BigFloat) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let s = with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "nan".into());
        if x.sign() == Some(Sign::Neg) && !s.starts_with('-') {
            format!("-{s}")
        } else {
            s
        }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", Self::fmt_part(&self.re), Self::fmt_part(&self.im))
    }
}

/// Bitwise equality of the parts; use [`BigComplex::approx_eq`] for values.
impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.re.cmp(&other.re) == Some(0) && self.im.cmp(&other.im) == Some(0)
    }
}

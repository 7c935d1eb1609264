//! Scalar coefficients: exact rationals, cyclotomic and real-radical number
//! fields, and arbitrary-precision complex floats.
//!
//! Exact and approximate values never mix: an operation that would combine a
//! [`Coefficient::Complex`] with an exact value fails with
//! [`CoeffError::MixedMode`] instead of promoting silently. Algorithms that
//! need constants (`1`, `1/k!`, …) create them through [`Mode`] so they match
//! the mode of their inputs.

mod complex;
mod cyclotomic;
pub mod poly;
mod radical;
pub mod rational;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use complex::{BigComplex, MIN_PRECISION};
pub use cyclotomic::Cyclotomic;
pub use poly::{cyclotomic_polynomial, totient};
pub use radical::{Radical, RationalPower};
pub use rational::Rational;

/// Precision used when an exact value has to be compared numerically.
pub const DECISION_PRECISION: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot mix exact and approximate coefficients")]
    MixedMode,
    #[error("no common exact field for {0} and {1}")]
    IncompatibleFields(String, String),
    #[error("{0} is not exactly representable; use float mode")]
    NotRepresentable(String),
}

pub type Result<T, E = CoeffError> = std::result::Result<T, E>;

/// Arithmetic regime of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float { precision: usize },
}

impl Mode {
    pub fn is_exact(&self) -> bool {
        matches!(self, Mode::Exact)
    }

    pub fn rational(&self, r: Rational) -> Coefficient {
        match *self {
            Mode::Exact => Coefficient::Rational(r),
            Mode::Float { precision } => {
                Coefficient::Complex(BigComplex::from_rational(&r, precision))
            }
        }
    }

    pub fn int(&self, n: i64) -> Coefficient {
        self.rational(rational::int(n))
    }

    pub fn zero(&self) -> Coefficient {
        self.int(0)
    }

    pub fn one(&self) -> Coefficient {
        self.int(1)
    }

    /// Moves an exact coefficient into this mode.
    pub fn adopt(&self, c: &Coefficient) -> Result<Coefficient> {
        match (*self, c) {
            (Mode::Exact, Coefficient::Complex(_)) => Err(CoeffError::MixedMode),
            (Mode::Exact, _) => Ok(c.clone()),
            (Mode::Float { precision }, _) => Ok(Coefficient::Complex(c.embed(precision))),
        }
    }

    /// Numeric threshold below which a float value counts as zero.
    pub fn tolerance(&self) -> f64 {
        match *self {
            Mode::Exact => 0.0,
            Mode::Float { precision } => 2f64.powi(-(precision as i32 - 8).min(1000)),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Coefficient {
    Rational(Rational),
    Cyclotomic(Cyclotomic),
    Radical(Radical),
    Complex(BigComplex),
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// e^{2πij/k} as an exact cyclotomic value.
pub fn root_of_unity(k: u32, j: i64) -> Coefficient {
    Coefficient::Cyclotomic(Cyclotomic::root_of_unity(k, j)).normalized()
}

/// Embeds any coefficient into the complex numbers at `precision` bits.
pub fn embed_complex(a: &Coefficient, precision: usize) -> BigComplex {
    a.embed(precision)
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Coefficient::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Coefficient::Rational(rational::int(n))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Coefficient::Rational(rational::rat(n, d))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Coefficient::Complex(c) => Mode::Float {
                precision: c.precision(),
            },
            _ => Mode::Exact,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Coefficient::Complex(_))
    }

    fn normalized(self) -> Self {
        match &self {
            Coefficient::Cyclotomic(c) => match c.as_rational() {
                Some(r) => Coefficient::Rational(r),
                None => self,
            },
            Coefficient::Radical(r) => match r.as_rational() {
                Some(q) => Coefficient::Rational(q),
                None => self,
            },
            _ => self,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Cyclotomic(c) => c.is_zero(),
            Coefficient::Radical(r) => r.is_zero(),
            Coefficient::Complex(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_one())
    }

    fn describe(&self) -> String {
        self.to_string()
    }

    fn binary(&self, other: &Self, op: Op) -> Result<Self> {
        use Coefficient as C;
        let out = match (self, other) {
            (C::Rational(a), C::Rational(b)) => C::Rational(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
                Op::Div => {
                    if b.is_zero() {
                        return Err(CoeffError::DivisionByZero);
                    }
                    a / b
                }
            }),
            (C::Complex(a), C::Complex(b)) => C::Complex(match op {
                Op::Add => a.add(b),
                Op::Sub => a.sub(b),
                Op::Mul => a.mul(b),
                Op::Div => a.div(b).ok_or(CoeffError::DivisionByZero)?,
            }),
            (C::Complex(_), _) | (_, C::Complex(_)) => return Err(CoeffError::MixedMode),
            (C::Cyclotomic(a), C::Cyclotomic(b)) => C::Cyclotomic(cyc_op(a, b, op)?),
            (C::Cyclotomic(a), C::Rational(b)) => {
                C::Cyclotomic(cyc_op(a, &Cyclotomic::from_rational(a.conductor(), b.clone()), op)?)
            }
            (C::Rational(a), C::Cyclotomic(b)) => {
                C::Cyclotomic(cyc_op(&Cyclotomic::from_rational(b.conductor(), a.clone()), b, op)?)
            }
            (C::Radical(a), C::Radical(b)) if a.compatible(b) => C::Radical(rad_op(a, b, op)?),
            (C::Radical(a), C::Rational(b)) => {
                C::Radical(rad_op(a, &a.from_rational_like(b.clone()), op)?)
            }
            (C::Rational(a), C::Radical(b)) => {
                C::Radical(rad_op(&b.from_rational_like(a.clone()), b, op)?)
            }
            _ => {
                return Err(CoeffError::IncompatibleFields(
                    self.describe(),
                    other.describe(),
                ))
            }
        };
        Ok(out.normalized())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, Op::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, Op::Sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, Op::Mul)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.binary(other, Op::Div)
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(-r),
            Coefficient::Cyclotomic(c) => Coefficient::Cyclotomic(c.neg()),
            Coefficient::Radical(r) => Coefficient::Radical(r.neg()),
            Coefficient::Complex(c) => Coefficient::Complex(c.neg()),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        self.mode().one().try_div(self)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut result = self.mode().one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Complex conjugate. Exact real radicals are fixed.
    pub fn conj(&self) -> Self {
        match self {
            Coefficient::Cyclotomic(c) => Coefficient::Cyclotomic(c.conj()),
            Coefficient::Complex(c) => Coefficient::Complex(c.conj()),
            _ => self.clone(),
        }
    }

    pub fn embed(&self, precision: usize) -> BigComplex {
        match self {
            Coefficient::Rational(r) => BigComplex::from_rational(r, precision),
            Coefficient::Cyclotomic(c) => c.embed(precision),
            Coefficient::Radical(r) => r.embed(precision),
            Coefficient::Complex(c) if c.precision() >= precision => c.clone(),
            Coefficient::Complex(c) => {
                BigComplex::new(c.re().clone(), c.im().clone(), precision)
            }
        }
    }

    /// Exact value equality; exact fields without a common representation
    /// are reported rather than guessed.
    pub fn exact_eq(&self, other: &Self) -> Result<bool> {
        if !self.is_exact() || !other.is_exact() {
            return Err(CoeffError::MixedMode);
        }
        Ok(self.try_sub(other)?.is_zero())
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        let p = match (self.mode(), other.mode()) {
            (Mode::Float { precision: a }, Mode::Float { precision: b }) => a.max(b),
            (Mode::Float { precision }, _) | (_, Mode::Float { precision }) => precision,
            _ => DECISION_PRECISION,
        };
        self.embed(p).approx_eq(&other.embed(p), tolerance)
    }

    pub fn abs_f64(&self) -> f64 {
        self.embed(DECISION_PRECISION).abs_f64()
    }

    /// Compares |self| with 1. Exact values decide equality exactly
    /// (|λ|² = λ·conj(λ)); strict inequalities are settled numerically.
    /// Float values within `tolerance` of the unit circle count as equal.
    pub fn cmp_modulus_one(&self, tolerance: f64) -> Ordering {
        if self.is_exact() {
            let norm = self.try_mul(&self.conj()).expect("conjugate shares the field");
            if norm.is_one() {
                return Ordering::Equal;
            }
            let v = norm.embed(DECISION_PRECISION).re_f64();
            return v.partial_cmp(&1.0).unwrap_or(Ordering::Equal);
        }
        let a = self.abs_f64();
        if (a - 1.0).abs() <= tolerance {
            Ordering::Equal
        } else {
            a.partial_cmp(&1.0).unwrap_or(Ordering::Equal)
        }
    }

    /// If the value is an exact root of unity, `(n, a)` with value ζ_n^a.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        match self {
            Coefficient::Rational(r) if r.is_one() => Some((1, 0)),
            Coefficient::Rational(r) if *r == -Rational::one() => Some((2, 1)),
            Coefficient::Cyclotomic(c) => c.as_root_of_unity(),
            _ => None,
        }
    }

    /// `self^t` on the principal branch (argument in (-π, π]).
    ///
    /// Exact results exist for integer `t`, for positive rationals (possibly
    /// landing in a radical field), for negative rationals whose `|λ|^t` is
    /// rational, and for roots of unity.
    pub fn pow_rational(&self, t: &Rational) -> Result<Self> {
        if t.is_integer() {
            let e: i64 = t.numer().try_into().map_err(|_| {
                CoeffError::NotRepresentable(format!("exponent {t}"))
            })?;
            return self.pow(e);
        }
        let unrepresentable = || {
            CoeffError::NotRepresentable(format!("({})^({})", self, rational::render(t)))
        };
        match self {
            Coefficient::Complex(c) => {
                let tc = BigComplex::from_rational(t, c.precision());
                Ok(Coefficient::Complex(c.powc(&tc)))
            }
            Coefficient::Rational(r) if r.is_positive() => {
                Ok(match Radical::rational_power(r, t) {
                    RationalPower::Rational(q) => Coefficient::Rational(q),
                    RationalPower::Radical(x) => Coefficient::Radical(x),
                })
            }
            Coefficient::Rational(r) if r.is_negative() => {
                match Radical::rational_power(&-r, t) {
                    RationalPower::Rational(q) => {
                        // |λ|^t · e^{iπt}
                        let phase = unit_phase(t);
                        Coefficient::Rational(q).try_mul(&phase)
                    }
                    RationalPower::Radical(_) => Err(unrepresentable()),
                }
            }
            _ => {
                let (n, a) = self.as_root_of_unity().ok_or_else(unrepresentable)?;
                // principal angle 2πa/n taken in (-π, π]
                let a = if 2 * a > n { a as i64 - n as i64 } else { a as i64 };
                let angle = Rational::new(BigInt::from(2 * a), BigInt::from(n)) * t;
                Ok(unit_phase(&angle))
            }
        }
    }

    /// `self^t` for an exponent that may itself be a float.
    pub fn pow_coeff(&self, t: &Coefficient) -> Result<Self> {
        match (self, t) {
            (_, Coefficient::Rational(q)) => self.pow_rational(q),
            (Coefficient::Complex(c), Coefficient::Complex(tc)) => {
                Ok(Coefficient::Complex(c.powc(tc)))
            }
            (Coefficient::Complex(_), _) | (_, Coefficient::Complex(_)) => {
                Err(CoeffError::MixedMode)
            }
            _ => Err(CoeffError::NotRepresentable(format!("({self})^({t})"))),
        }
    }

    /// The `k` roots of `x^k = self`, ordered as `principal · ζ_k^j`.
    ///
    /// Exact roots that would need both a radical and a non-real root of
    /// unity are reported as not representable.
    pub fn kth_roots(&self, k: u32) -> Result<Vec<Self>> {
        let principal = self.pow_rational(&Rational::new(BigInt::one(), BigInt::from(k)))?;
        (0..k as i64)
            .map(|j| match self.mode() {
                Mode::Float { precision } => {
                    let z = BigComplex::unit_angle(
                        &Rational::new(BigInt::from(2 * j), BigInt::from(k)),
                        precision,
                    );
                    principal.try_mul(&Coefficient::Complex(z))
                }
                Mode::Exact => principal.try_mul(&root_of_unity(k, j)),
            })
            .collect()
    }

    /// Text form: `p/q`, a polynomial in `zeta(k)` or `rad(b,μ)`, or `(re,im)`.
    pub fn render(&self) -> String {
        match self {
            Coefficient::Rational(r) => rational::render(r),
            Coefficient::Cyclotomic(c) => c.render(),
            Coefficient::Radical(r) => r.render(),
            Coefficient::Complex(c) => c.to_string(),
        }
    }

    /// Whether the text form is a sum that needs parentheses as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        match self {
            Coefficient::Cyclotomic(c) => c.support() > 1,
            Coefficient::Radical(r) => r.coeffs().iter().filter(|c| !c.is_zero()).count() > 1,
            _ => false,
        }
    }

    /// Sign of a leading minus in the text form, used for `a - b` rendering.
    pub(crate) fn is_negative_literal(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_negative(),
            Coefficient::Cyclotomic(_) | Coefficient::Radical(_) => {
                !self.is_compound() && self.render().starts_with('-')
            }
            Coefficient::Complex(_) => false,
        }
    }
}

/// e^{iπr} exactly.
fn unit_phase(r: &Rational) -> Coefficient {
    // e^{iπ p/q} = ζ_{2q}^p
    let q: u32 = r.denom().try_into().expect("phase denominator overflow");
    let p: i64 = (r.numer() % BigInt::from(2 * q as i64))
        .try_into()
        .expect("phase numerator");
    root_of_unity(2 * q, p)
}

fn cyc_op(a: &Cyclotomic, b: &Cyclotomic, op: Op) -> Result<Cyclotomic> {
    Ok(match op {
        Op::Add => a.add(b),
        Op::Sub => a.sub(b),
        Op::Mul => a.mul(b),
        Op::Div => a.mul(&b.inv().ok_or(CoeffError::DivisionByZero)?),
    })
}

fn rad_op(a: &Radical, b: &Radical, op: Op) -> Result<Radical> {
    Ok(match op {
        Op::Add => a.add(b),
        Op::Sub => a.sub(b),
        Op::Mul => a.mul(b),
        Op::Div => a.mul(&b.inv().ok_or(CoeffError::DivisionByZero)?),
    })
}

impl PartialEq for Coefficient {
    /// Value equality for exact coefficients, bitwise equality for floats.
    /// Mixed or incompatible operands compare unequal.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coefficient::Complex(a), Coefficient::Complex(b)) => a == b,
            _ => self.exact_eq(other).unwrap_or(false),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<Rational> for Coefficient {
    fn from(r: Rational) -> Self {
        Coefficient::Rational(r)
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_rational_arithmetic() {
        let a = Coefficient::rational(1, 2);
        let b = Coefficient::rational(1, 3);
        assert_eq!(a.try_add(&b).unwrap(), Coefficient::rational(5, 6));
        assert_eq!(a.try_div(&Coefficient::zero()), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(root_of_unity(2, 1), Coefficient::int(-1));
        let i = root_of_unity(4, 1);
        assert_eq!(i.try_mul(&i).unwrap(), Coefficient::int(-1));
        assert_eq!(root_of_unity(8, 1).try_mul(&root_of_unity(8, 7)).unwrap(), Coefficient::one());
    }

    #[test]
    fn zeta_2m_to_the_m_is_minus_one() {
        for m in 1..=6 {
            let z = root_of_unity(2 * m, 1);
            assert_eq!(z.pow(m as i64).unwrap(), Coefficient::int(-1), "m = {m}");
        }
    }

    #[test]
    fn resonance_identity_lambda_pow_2m_plus_1() {
        for m in 1..=8u32 {
            let z = root_of_unity(2 * m, 1);
            assert_eq!(z.pow(2 * m as i64 + 1).unwrap(), z);
        }
    }

    #[test]
    fn mixing_modes_is_an_error() {
        let x = Coefficient::Complex(BigComplex::from_f64(1.0, 0.0, 64));
        assert_eq!(x.try_add(&Coefficient::one()), Err(CoeffError::MixedMode));
    }

    #[test]
    fn incompatible_exact_fields() {
        let r = Coefficient::rational(1, 2).pow_rational(&rational::rat(1, 2)).unwrap();
        let z = root_of_unity(3, 1);
        assert!(matches!(r.try_mul(&z), Err(CoeffError::IncompatibleFields(..))));
    }

    #[test]
    fn embeddings() {
        let i = root_of_unity(4, 1).embed(128);
        assert!(i.re_f64().abs() < 1e-30 && (i.im_f64() - 1.0).abs() < 1e-30);
        let z8 = root_of_unity(8, 1).embed(128);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z8.re_f64() - h).abs() < 1e-15 && (z8.im_f64() - h).abs() < 1e-15);
    }

    #[test]
    fn fractional_powers() {
        assert_eq!(
            Coefficient::rational(1, 4).pow_rational(&rational::rat(1, 2)).unwrap(),
            Coefficient::rational(1, 2)
        );
        // (-1/4)^(1/2) = i/2 on the principal branch
        let r = Coefficient::rational(-1, 4).pow_rational(&rational::rat(1, 2)).unwrap();
        assert_eq!(r, root_of_unity(4, 1).try_mul(&Coefficient::rational(1, 2)).unwrap());
        // ζ_6^(1/2) = ζ_12
        assert_eq!(root_of_unity(6, 1).pow_rational(&rational::rat(1, 2)).unwrap(), root_of_unity(12, 1));
        // principal branch of ζ_6^5 = ζ_6^{-1}: square root is ζ_12^{-1}
        assert_eq!(root_of_unity(6, 5).pow_rational(&rational::rat(1, 2)).unwrap(), root_of_unity(12, -1));
    }

    #[test]
    fn kth_roots_of_zeta() {
        let roots = root_of_unity(4, 1).kth_roots(2).unwrap();
        assert_eq!(roots[0], root_of_unity(8, 1));
        assert_eq!(roots[1], root_of_unity(8, 5));
        for r in &roots {
            assert_eq!(r.pow(2).unwrap(), root_of_unity(4, 1));
        }
    }

    #[test]
    fn modulus_comparison() {
        assert_eq!(root_of_unity(7, 2).cmp_modulus_one(0.0), Ordering::Equal);
        assert_eq!(Coefficient::rational(1, 2).cmp_modulus_one(0.0), Ordering::Less);
        let z = root_of_unity(3, 1).try_mul(&Coefficient::int(2)).unwrap();
        assert_eq!(z.cmp_modulus_one(0.0), Ordering::Greater);
    }

    #[test]
    fn render_forms() {
        assert_eq!(Coefficient::rational(5, 6).render(), "5/6");
        assert_eq!(root_of_unity(6, 1).render(), "zeta(6)");
        assert_eq!(root_of_unity(4, 2).render(), "-1");
    }
}

//! Real radical extensions ℚ(θ), θ = μ^{1/b} the positive real root.
//!
//! `μ` is a positive rational that is not a perfect power, so `x^b - μ` is
//! irreducible over ℚ and the basis `1, θ, …, θ^{b-1}` gives a canonical form.
//! These fields carry exact fractional powers `λ^t` of positive rationals.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::complex::BigComplex;
use super::poly;
use super::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    base: Rational,
    index: u32,
    coeffs: Vec<Rational>,
}

/// Result of raising a positive rational to a rational power.
pub enum RationalPower {
    Rational(Rational),
    Radical(Radical),
}

impl Radical {
    /// θ^e for any integer `e`, as an element of ℚ(μ^{1/b}).
    fn theta_power(base: &Rational, index: u32, e: i64) -> Self {
        let b = index as i64;
        let (q, r) = e.div_mod_floor(&b);
        let scale = num_traits::Pow::pow(base, q as i32);
        let mut coeffs = vec![Rational::zero(); index as usize];
        coeffs[r as usize] = scale;
        Radical {
            base: base.clone(),
            index,
            coeffs,
        }
    }

    /// The positive real value of `lambda^t` for `lambda > 0`, exactly.
    pub fn rational_power(lambda: &Rational, t: &Rational) -> RationalPower {
        assert!(lambda.is_positive(), "rational_power needs a positive base");
        if lambda.is_one() || t.is_zero() {
            return RationalPower::Rational(Rational::one());
        }
        let (mu, e) = rational::perfect_power(lambda);
        let exponent = t * Rational::from_integer(e.into());
        let a: i64 = exponent.numer().try_into().expect("exponent numerator overflow");
        let b: i64 = exponent.denom().try_into().expect("exponent denominator overflow");
        if b == 1 {
            return RationalPower::Rational(num_traits::Pow::pow(&mu, a as i32));
        }
        RationalPower::Radical(Self::theta_power(&mu, b as u32, a))
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn from_rational_like(&self, r: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); self.index as usize];
        coeffs[0] = r;
        Radical {
            base: self.base.clone(),
            index: self.index,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Whether both elements live in a common field of this family.
    pub fn compatible(&self, other: &Self) -> bool {
        self.base == other.base
    }

    pub fn lift(&self, l: u32) -> Self {
        assert!(l % self.index == 0);
        let step = (l / self.index) as usize;
        let mut coeffs = vec![Rational::zero(); l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Radical {
            base: self.base.clone(),
            index: l,
            coeffs,
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        debug_assert!(a.compatible(b));
        if a.index == b.index {
            return (a.clone(), b.clone());
        }
        let l = a.index.lcm(&b.index);
        (a.lift(l), b.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Radical { coeffs, ..a }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Radical { coeffs, ..a }
    }

    pub fn neg(&self) -> Self {
        Radical {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let n = a.index as usize;
        let mut coeffs = vec![Rational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                if i + j < n {
                    coeffs[i + j] += p;
                } else {
                    coeffs[i + j - n] += p * &a.base;
                }
            }
        }
        Radical { coeffs, ..a }
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.index as usize;
        let mut modulus = vec![Rational::zero(); n + 1];
        modulus[0] = -self.base.clone();
        modulus[n] = Rational::one();
        let mut inv = poly::inverse_mod(&self.coeffs, &modulus)?;
        inv.resize(n, Rational::zero());
        Some(Radical {
            coeffs: inv,
            ..self.clone()
        })
    }

    pub fn embed(&self, precision: usize) -> BigComplex {
        // θ = exp(ln μ / b)
        let mu = BigComplex::from_rational(&self.base, precision);
        let theta = mu.powc(&BigComplex::from_rational(
            &Rational::new(1.into(), (self.index as i64).into()),
            precision,
        ));
        let mut acc = BigComplex::zero(precision);
        let mut power = BigComplex::from_rational(&Rational::one(), precision);
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc.add(&power.scale_rational(c));
            }
            power = power.mul(&theta);
        }
        acc
    }

    /// Text form: a polynomial in `rad(b,μ)`, the positive real b-th root of μ.
    pub fn render(&self) -> String {
        let theta = format!("rad({},{})", self.index, rational::render(&self.base));
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let t = match i {
                0 => String::new(),
                1 => theta.clone(),
                _ => format!("{theta}^{i}"),
            };
            let body = if i == 0 {
                rational::render(&mag)
            } else if mag.is_one() {
                t
            } else {
                format!("{}*{}", rational::render(&mag), t)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational::{int, rat};

    fn radical(p: RationalPower) -> Radical {
        match p {
            RationalPower::Radical(r) => r,
            RationalPower::Rational(q) => panic!("expected radical, got {q}"),
        }
    }

    #[test]
    fn square_root_of_a_half_squares_back() {
        let r = radical(Radical::rational_power(&rat(1, 2), &rat(1, 2)));
        assert_eq!(r.mul(&r).as_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn perfect_squares_stay_rational() {
        match Radical::rational_power(&rat(1, 4), &rat(1, 2)) {
            RationalPower::Rational(q) => assert_eq!(q, rat(1, 2)),
            RationalPower::Radical(_) => panic!("1/4^(1/2) is rational"),
        }
        // 4^(1/4) = 2^(1/2)
        let r = radical(Radical::rational_power(&int(4), &rat(1, 4)));
        assert_eq!(r.base(), &int(2));
        assert_eq!(r.index(), 2);
    }

    #[test]
    fn three_halves_power() {
        let half = radical(Radical::rational_power(&rat(1, 3), &rat(1, 2)));
        let three_halves = radical(Radical::rational_power(&rat(1, 3), &rat(3, 2)));
        assert_eq!(half.mul(&half).mul(&half), three_halves);
        let inv = three_halves.inv().unwrap();
        assert_eq!(inv.mul(&three_halves).as_rational(), Some(int(1)));
    }

    #[test]
    fn embedding_is_positive_root() {
        let r = radical(Radical::rational_power(&int(2), &rat(1, 3)));
        let z = r.embed(128);
        assert!((z.re_f64() - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
    }
}

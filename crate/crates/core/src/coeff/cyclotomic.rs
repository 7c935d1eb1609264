//! Elements of the cyclotomic field ℚ(ζ_k), ζ_k = e^{2πi/k}.
//!
//! Values are stored in the power basis `1, ζ, …, ζ^{φ(k)-1}` fully reduced
//! modulo Φ_k, so two elements of the same conductor are equal exactly when
//! their coefficient vectors are.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::complex::BigComplex;
use super::poly::{self, table};
use super::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn from_rational(k: u32, r: Rational) -> Self {
        let deg = table(k).degree();
        let mut coeffs = vec![Rational::zero(); deg];
        coeffs[0] = r;
        Cyclotomic { conductor: k, coeffs }
    }

    /// ζ_k^j, reduced.
    pub fn root_of_unity(k: u32, j: i64) -> Self {
        assert!(k >= 1);
        let e = j.rem_euclid(k as i64) as usize;
        Cyclotomic {
            conductor: k,
            coeffs: table(k).powers[e].clone(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in ℚ(ζ_L) for a multiple `L` of the conductor.
    pub fn lift(&self, l: u32) -> Self {
        assert!(l % self.conductor == 0, "lift target must be a multiple");
        if l == self.conductor {
            return self.clone();
        }
        let step = (l / self.conductor) as usize;
        let t = table(l);
        let mut coeffs = vec![Rational::zero(); t.degree()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in coeffs.iter_mut().zip(&t.powers[i * step]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Cyclotomic { conductor: l, coeffs }
    }

    pub(crate) fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let l = a.conductor.lcm(&b.conductor);
        (a.lift(l), b.lift(l))
    }

    fn zip_with(a: &Self, b: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let (a, b) = Self::common(a, b);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect();
        Cyclotomic { conductor: a.conductor, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::zip_with(self, other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::zip_with(self, other, |x, y| x - y)
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let k = a.conductor as usize;
        let t = table(a.conductor);
        let n = t.degree();
        // accumulate by exponent mod k, then map through the power table
        let mut by_exp = vec![Rational::zero(); k];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    by_exp[(i + j) % k] += x * y;
                }
            }
        }
        let mut coeffs = vec![Rational::zero(); n];
        for (e, c) in by_exp.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < n {
                coeffs[e] += c;
            } else {
                for (o, p) in coeffs.iter_mut().zip(&t.powers[e]) {
                    if !p.is_zero() {
                        *o += c * p;
                    }
                }
            }
        }
        Cyclotomic { conductor: a.conductor, coeffs }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let phi: Vec<Rational> = table(self.conductor)
            .phi
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect();
        let mut inv = poly::inverse_mod(&self.coeffs, &phi)?;
        inv.resize(phi.len() - 1, Rational::zero());
        Some(Cyclotomic {
            conductor: self.conductor,
            coeffs: inv,
        })
    }

    /// The Galois automorphism ζ ↦ ζ^j (j coprime to the conductor).
    pub fn galois(&self, j: i64) -> Self {
        let k = self.conductor as i64;
        let t = table(self.conductor);
        let mut coeffs = vec![Rational::zero(); t.degree()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * j).rem_euclid(k) as usize;
            for (o, p) in coeffs.iter_mut().zip(&t.powers[e]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs,
        }
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// If the element is a root of unity, returns `(n, a)` with the element
    /// equal to ζ_n^a, `n` the element's order and `0 <= a < n`.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        // roots of unity in ℚ(ζ_k) are the ±ζ_k^j, all of them lcm(k, 2)-th roots
        let big = self.conductor.lcm(&2);
        let lifted = self.lift(big);
        for a in 0..big {
            if Cyclotomic::root_of_unity(big, a as i64) == lifted {
                let g = a.gcd(&big);
                return Some((big / g, a / g));
            }
        }
        None
    }

    pub fn embed(&self, precision: usize) -> BigComplex {
        let mut acc = BigComplex::zero(precision);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = BigComplex::unit_angle(&Rational::new((2 * i as i64).into(), (self.conductor as i64).into()), precision);
            acc = acc.add(&z.scale_rational(c));
        }
        acc
    }

    /// Text form: a polynomial in `zeta(k)` with ascending powers.
    pub fn render(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            let zeta = match i {
                0 => String::new(),
                1 => format!("zeta({})", self.conductor),
                _ => format!("zeta({})^{}", self.conductor, i),
            };
            let body = if i == 0 {
                rational::render(&mag)
            } else if mag.is_one() {
                zeta
            } else {
                format!("{}*{}", rational::render(&mag), zeta)
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (neg, body)) in parts.into_iter().enumerate() {
            match (idx, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    /// Number of nonzero basis coefficients.
    pub(crate) fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational::int;

    #[test]
    fn minus_one_and_i() {
        assert_eq!(Cyclotomic::root_of_unity(2, 1).as_rational(), Some(int(-1)));
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i.mul(&i).as_rational(), Some(int(-1)));
    }

    #[test]
    fn zeta8_times_zeta8_7_is_one() {
        let a = Cyclotomic::root_of_unity(8, 1);
        let b = Cyclotomic::root_of_unity(8, 7);
        assert_eq!(a.mul(&b).as_rational(), Some(int(1)));
    }

    #[test]
    fn lifting_preserves_value() {
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i.lift(12), Cyclotomic::root_of_unity(12, 3));
        assert_eq!(i.lift(8), Cyclotomic::root_of_unity(8, 2));
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = Cyclotomic::root_of_unity(12, 1);
        let x = z.add(&Cyclotomic::from_rational(12, int(3)));
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv).as_rational(), Some(int(1)));
        assert_eq!(z.conj(), Cyclotomic::root_of_unity(12, 11));
        assert!(Cyclotomic::from_rational(5, int(0)).inv().is_none());
    }

    #[test]
    fn roots_of_unity_are_recognised() {
        assert_eq!(Cyclotomic::root_of_unity(6, 1).as_root_of_unity(), Some((6, 1)));
        assert_eq!(Cyclotomic::root_of_unity(3, 1).neg().as_root_of_unity(), Some((6, 5)));
        assert_eq!(Cyclotomic::root_of_unity(12, 4).as_root_of_unity(), Some((3, 1)));
        let two = Cyclotomic::root_of_unity(12, 1).scale(&int(2));
        assert_eq!(two.as_root_of_unity(), None);
    }

    #[test]
    fn render_forms() {
        assert_eq!(Cyclotomic::root_of_unity(6, 1).render(), "zeta(6)");
        let x = Cyclotomic::root_of_unity(8, 3)
            .scale(&crate::coeff::rational::rat(-1, 2))
            .add(&Cyclotomic::from_rational(8, int(2)));
        assert_eq!(x.render(), "2 - 1/2*zeta(8)^3");
    }
}

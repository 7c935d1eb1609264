use std::fmt;

use num_traits::One;

use crate::coeff::{self, Coefficient, Mode, Rational, DECISION_PRECISION};

use super::{LinearizeError, Result};

/// Most terms summed by the log / exp series before giving up.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// Float log and exp rescale their argument to this Frobenius radius
/// before summing a series.
const SCALING_RADIUS: f64 = 0.125;

/// Dense n×n matrix of coefficients, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Coefficient>,
}

/// Outcome of testing ‖J − E‖_F < 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Closeness {
    pub norm: f64,
    pub is_close: bool,
}

impl SquareMatrix {
    pub fn zeros(n: usize, mode: Mode) -> Self {
        SquareMatrix {
            n,
            entries: vec![mode.zero(); n * n],
        }
    }

    pub fn identity(n: usize, mode: Mode) -> Self {
        let mut m = Self::zeros(n, mode);
        for i in 0..n {
            m.entries[i * n + i] = mode.one();
        }
        m
    }

    pub fn diagonal(diag: &[Coefficient]) -> Self {
        let n = diag.len();
        let mode = diag.first().map(Coefficient::mode).unwrap_or(Mode::Exact);
        let mut m = Self::zeros(n, mode);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    /// `None` unless the rows form a square array.
    pub fn from_rows(rows: Vec<Vec<Coefficient>>) -> Option<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Coefficient {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Coefficient) {
        self.entries[i * self.n + j] = c;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Coefficient]> {
        self.entries.chunks(self.n)
    }

    pub fn mode(&self) -> Mode {
        self.entries
            .iter()
            .find(|c| !c.is_exact())
            .map(Coefficient::mode)
            .unwrap_or(Mode::Exact)
    }

    pub fn to_mode(&self, mode: Mode) -> coeff::Result<Self> {
        Ok(SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|c| mode.adopt(c))
                .collect::<coeff::Result<_>>()?,
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Coefficient> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coefficient::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Coefficient, &Coefficient) -> coeff::Result<Coefficient>) -> coeff::Result<Self> {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        Ok(SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect::<coeff::Result<_>>()?,
        })
    }

    pub fn add(&self, other: &Self) -> coeff::Result<Self> {
        self.zip(other, Coefficient::try_add)
    }

    pub fn sub(&self, other: &Self) -> coeff::Result<Self> {
        self.zip(other, Coefficient::try_sub)
    }

    pub fn scale(&self, c: &Coefficient) -> coeff::Result<Self> {
        Ok(SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|x| x.try_mul(c))
                .collect::<coeff::Result<_>>()?,
        })
    }

    pub fn mul(&self, other: &Self) -> coeff::Result<Self> {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n, self.mode());
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.mode().zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.try_add(&a.try_mul(b)?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> coeff::Result<Self> {
        let mut out = Self::identity(self.n, self.mode());
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Gauss–Jordan inverse; `None` when singular. Float mode pivots on the
    /// largest modulus and treats entries below tolerance as zero.
    pub fn inverse(&self) -> coeff::Result<Option<Self>> {
        let n = self.n;
        let mode = self.mode();
        let tol = match mode {
            Mode::Exact => 0.0,
            Mode::Float { .. } => mode.tolerance(),
        };
        let mut a = self.clone();
        let mut inv = Self::identity(n, mode);
        for col in 0..n {
            let pivot = match mode {
                Mode::Exact => (col..n).find(|&r| !a.get(r, col).is_zero()),
                Mode::Float { .. } => (col..n)
                    .map(|r| (r, a.get(r, col).abs_f64()))
                    .filter(|&(_, v)| v > tol)
                    .max_by(|x, y| x.1.total_cmp(&y.1))
                    .map(|(r, _)| r),
            };
            let Some(p) = pivot else { return Ok(None) };
            if p != col {
                for j in 0..n {
                    a.entries.swap(p * n + j, col * n + j);
                    inv.entries.swap(p * n + j, col * n + j);
                }
            }
            let pinv = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).try_mul(&pinv)?);
                inv.set(col, j, inv.get(col, j).try_mul(&pinv)?);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    a.set(r, j, a.get(r, j).try_sub(&f.try_mul(a.get(col, j))?)?);
                    inv.set(r, j, inv.get(r, j).try_sub(&f.try_mul(inv.get(col, j))?)?);
                }
            }
        }
        Ok(Some(inv))
    }

    /// Σ |a_ij|², exactly when the entries are exact.
    pub fn frobenius_sq(&self) -> coeff::Result<Coefficient> {
        let mode = self.mode();
        let mut acc = mode.zero();
        for c in &self.entries {
            acc = acc.try_add(&c.try_mul(&c.conj())?)?;
        }
        Ok(acc)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|c| c.abs_f64().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| match a.try_sub(b) {
                Ok(d) => d.abs_f64(),
                Err(_) => a.embed(DECISION_PRECISION).sub(&b.embed(DECISION_PRECISION)).abs_f64(),
            })
            .fold(0.0, f64::max)
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(Coefficient::render).collect())
            .collect()
    }

    /// Smallest k with X^k = 0, if X is exact and nilpotent.
    fn nilpotency_index(&self) -> coeff::Result<Option<u32>> {
        if self.mode() != Mode::Exact {
            return Ok(None);
        }
        let mut p = Self::identity(self.n, Mode::Exact);
        for k in 1..=self.n as u32 {
            p = p.mul(self)?;
            if p.is_zero() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .render_rows()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// The degree-one coefficient matrix J(0) of a germ.
pub fn multiplier(u: &crate::series::GermMap) -> SquareMatrix {
    u.linear_part()
}

/// ‖J − E‖_F and whether it is below one.
///
/// The comparison is exact whenever the squared norm is rational.
pub fn closeness_check(j: &SquareMatrix) -> Result<Closeness> {
    let x = j.sub(&SquareMatrix::identity(j.n(), j.mode()))?;
    let sq = x.frobenius_sq()?;
    let norm = x.frobenius_norm();
    let is_close = match sq.as_rational() {
        Some(r) => r < &Rational::one(),
        None => sq.embed(DECISION_PRECISION).re_f64() < 1.0,
    };
    Ok(Closeness { norm, is_close })
}

fn require_close(j: &SquareMatrix) -> Result<SquareMatrix> {
    let c = closeness_check(j)?;
    if !c.is_close {
        return Err(LinearizeError::NotClose(c.norm));
    }
    Ok(j.sub(&SquareMatrix::identity(j.n(), j.mode()))?)
}

/// Principal logarithm of `J` close to the identity.
///
/// Exact input is accepted when X = J − E is nilpotent, where the Mercator
/// series log(E + X) terminates; otherwise convert `J` to float mode first.
pub fn matrix_log(j: &SquareMatrix) -> Result<SquareMatrix> {
    let x = require_close(j)?;
    let mode = j.mode();
    if let Mode::Exact = mode {
        let k = x.nilpotency_index()?.ok_or(LinearizeError::RequiresFloat("matrix_log"))?;
        return mercator_terms(&x, (k - 1) as usize);
    }
    // log J = 2^s log J^{1/2^s}, then log R = 2 atanh((R − E)(R + E)⁻¹)
    let id = SquareMatrix::identity(j.n(), mode);
    let mut r = j.clone();
    let mut x = x;
    let mut s = 0u32;
    while x.frobenius_norm() > SCALING_RADIUS && s < 64 {
        r = sqrt_denman_beavers(&r)?;
        x = r.sub(&id)?;
        s += 1;
    }
    let y = x.mul(&r.add(&id)?.inverse()?.ok_or(LinearizeError::NonConvergent(0))?)?;
    let y2 = y.mul(&y)?;
    let tol = mode.tolerance();
    let mut acc = SquareMatrix::zeros(j.n(), mode);
    let mut power = y;
    for k in 0..MAX_SERIES_TERMS {
        let term = power.scale(&mode.rational(Rational::new(1.into(), (2 * k as i64 + 1).into())))?;
        if term.frobenius_norm() < tol {
            return Ok(acc.scale(&mode.int(2i64 << s))?);
        }
        acc = acc.add(&term)?;
        power = power.mul(&y2)?;
    }
    Err(LinearizeError::NonConvergent(MAX_SERIES_TERMS))
}

/// Principal square root by the Denman–Beavers iteration (float mode).
fn sqrt_denman_beavers(j: &SquareMatrix) -> Result<SquareMatrix> {
    let mode = j.mode();
    let half = mode.rational(Rational::new(1.into(), 2.into()));
    let singular = || LinearizeError::NonConvergent(0);
    let mut y = j.clone();
    let mut z = SquareMatrix::identity(j.n(), mode);
    for _ in 0..100 {
        let y_inv = y.inverse()?.ok_or_else(singular)?;
        let z_inv = z.inverse()?.ok_or_else(singular)?;
        let next = y.add(&z_inv)?.scale(&half)?;
        z = z.add(&y_inv)?.scale(&half)?;
        let step = next.max_abs_diff(&y);
        y = next;
        if step < mode.tolerance() {
            return Ok(y);
        }
    }
    Err(LinearizeError::NonConvergent(100))
}

fn mercator_terms(x: &SquareMatrix, last: usize) -> Result<SquareMatrix> {
    let mode = x.mode();
    let mut acc = SquareMatrix::zeros(x.n(), mode);
    let mut power = x.clone();
    for k in 1..=last {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale(&mode.rational(Rational::new(sign.into(), (k as i64).into())))?)?;
        power = power.mul(x)?;
    }
    Ok(acc)
}

/// exp(L) by its Taylor series; exact only for nilpotent `L`.
pub fn matrix_exp(l: &SquareMatrix) -> Result<SquareMatrix> {
    let mode = l.mode();
    let n = l.n();
    if let Mode::Exact = mode {
        let k = l.nilpotency_index()?.ok_or(LinearizeError::RequiresFloat("matrix_exp"))?;
        let mut acc = SquareMatrix::identity(n, mode);
        let mut term = SquareMatrix::identity(n, mode);
        for i in 1..k {
            term = term.mul(l)?.scale(&mode.rational(Rational::new(1.into(), (i as i64).into())))?;
            acc = acc.add(&term)?;
        }
        return Ok(acc);
    }
    // exp(L) = exp(L / 2^s)^{2^s}
    let mut s = 0u32;
    let mut norm = l.frobenius_norm();
    while norm > SCALING_RADIUS && s < 64 {
        norm /= 2.0;
        s += 1;
    }
    let l = l.scale(&mode.rational(Rational::new(1.into(), (1i64 << s).into())))?;
    let tol = mode.tolerance();
    let mut acc = SquareMatrix::identity(n, mode);
    let mut term = SquareMatrix::identity(n, mode);
    for i in 1..=MAX_SERIES_TERMS {
        term = term.mul(&l)?.scale(&mode.rational(Rational::new(1.into(), (i as i64).into())))?;
        if term.frobenius_norm() < tol {
            for _ in 0..s {
                acc = acc.mul(&acc)?;
            }
            return Ok(acc);
        }
        acc = acc.add(&term)?;
    }
    Err(LinearizeError::NonConvergent(MAX_SERIES_TERMS))
}

/// J^t = exp(t · log J).
///
/// Exact results are produced for diagonal `J` whose entries admit exact
/// powers, and for unipotent `J` with rational `t` (a finite binomial sum).
pub fn matrix_power_t(j: &SquareMatrix, t: &Coefficient) -> Result<SquareMatrix> {
    let mode = j.mode();
    if t.is_zero() {
        require_close(j)?;
        return Ok(SquareMatrix::identity(j.n(), mode));
    }
    if let Mode::Exact = mode {
        let x = require_close(j)?;
        if j.is_diagonal() {
            let diag = j
                .diagonal_entries()
                .iter()
                .map(|d| d.pow_coeff(t))
                .collect::<coeff::Result<Vec<_>>>()?;
            return Ok(SquareMatrix::diagonal(&diag));
        }
        let t = t.as_rational().ok_or(LinearizeError::RequiresFloat("matrix_power_t"))?.clone();
        let k = x.nilpotency_index()?.ok_or(LinearizeError::RequiresFloat("matrix_power_t"))?;
        // (E + X)^t = Σ binom(t, i) X^i
        let mut acc = SquareMatrix::identity(j.n(), mode);
        let mut power = SquareMatrix::identity(j.n(), mode);
        let mut binom = Rational::one();
        for i in 0..(k as i64 - 1) {
            binom = binom * (&t - Rational::from_integer(i.into())) / Rational::from_integer((i + 1).into());
            power = power.mul(&x)?;
            acc = acc.add(&power.scale(&Coefficient::from(binom.clone()))?)?;
        }
        return Ok(acc);
    }
    let t = mode.adopt(t)?;
    matrix_exp(&matrix_log(j)?.scale(&t)?)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::root_of_unity;

    fn exact(rows: &[&[i64]]) -> SquareMatrix {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Coefficient::int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    const F256: Mode = Mode::Float { precision: 256 };

    #[test]
    fn closeness_examples() {
        let e = SquareMatrix::identity(2, Mode::Exact);
        assert_eq!(closeness_check(&e).unwrap(), Closeness { norm: 0.0, is_close: true });
        let two = exact(&[&[2]]);
        let c = closeness_check(&two).unwrap();
        assert_eq!(c.norm, 1.0);
        assert!(!c.is_close);
        let z12 = SquareMatrix::diagonal(&[root_of_unity(12, 1)]);
        let c = closeness_check(&z12).unwrap();
        let expected = (2.0 - 3f64.sqrt()).sqrt();
        assert!((c.norm - expected).abs() < 1e-15);
        assert!(c.is_close);
    }

    #[test]
    fn exact_inverse() {
        let m = exact(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), SquareMatrix::identity(2, Mode::Exact));
        assert!(exact(&[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
    }

    #[test]
    fn log_of_unipotent_is_nilpotent_part() {
        let x = exact(&[&[0, 1], &[0, 0]]).scale(&Coefficient::rational(1, 2)).unwrap();
        let j = SquareMatrix::identity(2, Mode::Exact).add(&x).unwrap();
        assert_eq!(matrix_log(&j).unwrap(), x);
        assert_eq!(matrix_log(&SquareMatrix::identity(3, Mode::Exact)).unwrap(), SquareMatrix::zeros(3, Mode::Exact));
    }

    #[test]
    fn log_of_diagonal_matches_scalar_log() {
        let j = SquareMatrix::diagonal(&[Coefficient::rational(1, 2), Coefficient::rational(3, 4)])
            .to_mode(F256)
            .unwrap();
        let l = matrix_log(&j).unwrap();
        assert!((l.get(0, 0).embed(256).re_f64() - 0.5f64.ln()).abs() < 1e-15);
        let ln34 = crate::coeff::BigComplex::from_rational(&crate::coeff::rational::rat(3, 4), 256).ln().unwrap();
        assert!(l.get(1, 1).embed(256).approx_eq(&ln34, 1e-20));
        assert!(l.get(0, 1).is_zero() || l.get(0, 1).abs_f64() < 1e-60);
    }

    #[test]
    fn powers() {
        let j = SquareMatrix::diagonal(&[Coefficient::rational(1, 4)]);
        assert_eq!(
            matrix_power_t(&j, &Coefficient::rational(1, 2)).unwrap(),
            SquareMatrix::diagonal(&[Coefficient::rational(1, 2)])
        );
        let jf = j.to_mode(F256).unwrap();
        let h = matrix_power_t(&jf, &Coefficient::rational(1, 2)).unwrap();
        assert!((h.get(0, 0).abs_f64() - 0.5).abs() < 1e-30);
        let one = matrix_power_t(&jf, &Coefficient::one()).unwrap();
        assert!(one.max_abs_diff(&jf) < 1e-20);
        let u = exact(&[&[1, 1], &[0, 1]]).scale(&Coefficient::rational(1, 2)).unwrap();
        let u = u.add(&SquareMatrix::diagonal(&[Coefficient::rational(1, 2), Coefficient::rational(1, 2)])).unwrap();
        let half = matrix_power_t(&u, &Coefficient::rational(1, 2)).unwrap();
        assert_eq!(half.mul(&half).unwrap(), u);
    }
}

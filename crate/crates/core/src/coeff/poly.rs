//! Dense univariate polynomial helpers backing the exact number fields.
//!
//! Polynomials are coefficient vectors in ascending order of degree.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

/// The `k`-th cyclotomic polynomial, monic with integer coefficients.
///
/// Computed as `x^k - 1` divided by `Φ_d` for every proper divisor `d | k`.
pub fn cyclotomic_polynomial(k: u32) -> Vec<BigInt> {
    assert!(k >= 1, "cyclotomic polynomial needs k >= 1");
    table(k).phi.clone()
}

/// Euler's totient.
pub fn totient(k: u32) -> usize {
    (1..=k).filter(|j| j.gcd(&k) == 1).count()
}

pub(crate) struct CyclotomicTable {
    pub phi: Vec<BigInt>,
    /// `powers[e]` is ζ^e in the basis 1, ζ, …, ζ^{φ(k)-1}, for 0 <= e < k.
    pub powers: Vec<Vec<Rational>>,
}

impl CyclotomicTable {
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<CyclotomicTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn table(k: u32) -> Arc<CyclotomicTable> {
    if let Some(t) = cache().read().expect("cyclotomic cache poisoned").get(&k) {
        return t.clone();
    }
    let t = Arc::new(build_table(k));
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(k)
        .or_insert(t)
        .clone()
}

fn build_table(k: u32) -> CyclotomicTable {
    // x^k - 1
    let mut p = vec![BigInt::zero(); k as usize + 1];
    p[0] = BigInt::from(-1);
    p[k as usize] = BigInt::one();
    for d in (1..k).filter(|d| k % d == 0) {
        let divisor = table(d).phi.clone();
        p = exact_div_monic(&p, &divisor);
    }
    let deg = p.len() - 1;
    let monic: Vec<Rational> = p.iter().cloned().map(Rational::from_integer).collect();
    let mut powers = Vec::with_capacity(k as usize);
    let mut cur = vec![Rational::zero(); deg];
    cur[0] = Rational::one();
    for _ in 0..k {
        powers.push(cur.clone());
        cur = times_x_mod(&cur, &monic);
    }
    CyclotomicTable { phi: p, powers }
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    q
}

/// Multiplies a reduced element by x modulo the monic `modulus`.
fn times_x_mod(a: &[Rational], modulus: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let top = a[n - 1].clone();
    let mut out = vec![Rational::zero(); n];
    for i in (1..n).rev() {
        out[i] = a[i - 1].clone();
    }
    if !top.is_zero() {
        for (i, o) in out.iter_mut().enumerate() {
            *o -= &top * &modulus[i];
        }
    }
    out
}

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut q = vec![Rational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    (q, rem)
}

/// Inverse of `a` modulo an irreducible `modulus`; `None` when `a ≡ 0`.
pub(crate) fn inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while r1.len() > 1 {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        if r1.is_empty() {
            // gcd has positive degree: modulus was not irreducible
            return None;
        }
    }
    let c = r1[0].clone();
    let mut inv: Vec<Rational> = s1.into_iter().map(|x| x / &c).collect();
    let (_, rem) = divrem(&inv, modulus);
    inv = rem;
    Some(inv)
}

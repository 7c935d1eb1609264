//! Generators and independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's composition, inverse, Lie-series or
//! resonance code; the oracles are deliberately naive so they can be used to
//! check those routines.

#![allow(dead_code)]

use std::collections::BTreeMap;

use germflow::coeff::{Coefficient, Mode};
use germflow::linearize::ResonanceWitness;
use germflow::series::{FormalSeries, GermMap, MultiIndex};
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> Coefficient {
    Coefficient::rational(n, d)
}

/// All exponent vectors of total degree `d` in `n` variables, by recursion.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn monomial_count(n: usize, lo: u32, hi: u32) -> usize {
    (lo..=hi).map(|d| monomials(n, d).len()).sum()
}

pub fn small_rational() -> impl Strategy<Value = Coefficient> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

/// Mostly-zero rationals, so random germs stay sparse.
pub fn sparse_rational() -> impl Strategy<Value = Coefficient> {
    prop_oneof![3 => Just(Coefficient::zero()), 2 => small_rational()]
}

pub fn nonzero_rational() -> impl Strategy<Value = Coefficient> {
    (1i64..=4, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

/// Builds a germ from a linear part (row-major, n×n) and a flat list of
/// higher-order coefficients in the order of [`monomials`], degrees 2..=order.
pub fn germ_from(n: usize, order: u32, linear: &[Coefficient], higher: &[Coefficient]) -> GermMap {
    assert_eq!(linear.len(), n * n);
    let per_component = monomial_count(n, 2, order);
    let comps = (0..n)
        .map(|s| {
            let mut terms = Vec::new();
            for j in 0..n {
                let mut e = vec![0; n];
                e[j] = 1;
                terms.push((MultiIndex::new(e), linear[s * n + j].clone()));
            }
            let mut idx = s * per_component;
            for d in 2..=order {
                for e in monomials(n, d) {
                    terms.push((MultiIndex::new(e), higher[idx].clone()));
                    idx += 1;
                }
            }
            FormalSeries::from_terms(n, order, terms).expect("terms")
        })
        .collect();
    GermMap::new(comps).expect("germ")
}

/// Higher-order coefficients for `n` components of an order-`order` germ.
pub fn higher_terms(n: usize, order: u32) -> impl Strategy<Value = Vec<Coefficient>> {
    prop::collection::vec(sparse_rational(), n * monomial_count(n, 2, order))
}

/// An invertible rational linear part.
pub fn invertible_linear(n: usize) -> BoxedStrategy<Vec<Coefficient>> {
    match n {
        1 => nonzero_rational().prop_map(|c| vec![c]).boxed(),
        2 => prop::collection::vec(small_rational(), 4)
            .prop_filter("singular", |m| {
                let det = m[0].try_mul(&m[3]).unwrap().try_sub(&m[1].try_mul(&m[2]).unwrap()).unwrap();
                !det.is_zero()
            })
            .boxed(),
        _ => unimplemented!("generators cover n ≤ 2"),
    }
}

/// Random germ with invertible linear part: (n, order) are fixed.
pub fn germ(n: usize, order: u32) -> impl Strategy<Value = GermMap> {
    (invertible_linear(n), higher_terms(n, order)).prop_map(move |(l, h)| germ_from(n, order, &l, &h))
}

/// Random germ tangent to the identity.
pub fn parabolic_germ(n: usize, order: u32) -> impl Strategy<Value = GermMap> {
    higher_terms(n, order).prop_map(move |h| germ_from(n, order, &identity_rows(n), &h))
}

pub fn identity_rows(n: usize) -> Vec<Coefficient> {
    (0..n * n)
        .map(|i| if i / n == i % n { Coefficient::one() } else { Coefficient::zero() })
        .collect()
}

fn one_series(n: usize, order: u32, mode: Mode) -> FormalSeries {
    FormalSeries::constant(n, order, mode.one())
}

/// outer ∘ inner by expanding every monomial of `outer` as a product of
/// powers of the inner components.
pub fn naive_compose(outer: &GermMap, inner: &GermMap) -> GermMap {
    let n = inner.nvars();
    let order = outer.order().min(inner.order());
    let mode = inner.mode();
    let comps = outer
        .components()
        .iter()
        .map(|c| {
            let mut acc = FormalSeries::zero(n, order);
            for (m, coef) in c.terms() {
                let mut prod = one_series(n, order, mode);
                for (i, &e) in m.exponents().iter().enumerate() {
                    for _ in 0..e {
                        prod = prod.mul(&inner.component(i).truncate(order)).unwrap().truncate(order);
                    }
                }
                acc = acc.add(&prod.scale(coef).unwrap()).unwrap();
            }
            acc
        })
        .collect();
    GermMap::new(comps).unwrap()
}

pub fn naive_iterate(g: &GermMap, k: u32) -> GermMap {
    let mut acc = g.clone();
    for _ in 1..k {
        acc = naive_compose(g, &acc);
    }
    acc
}

/// The generator of a tangent-to-identity germ from the Newton series
/// log U = Σ (−1)^{k−1}/k (U − I)^k applied to the coordinate functions,
/// where U φ = φ ∘ u.
pub fn newton_log(u: &GermMap, order: u32) -> Vec<FormalSeries> {
    let n = u.nvars();
    let u = u.truncate(order);
    let mode = u.mode();
    let mut phi = GermMap::identity(n, order, mode);
    let mut acc: Vec<FormalSeries> = (0..n).map(|_| FormalSeries::zero(n, order)).collect();
    for k in 1..order as i64 {
        phi = naive_compose(&phi, &u).sub(&phi).unwrap();
        let w = mode.rational(germflow::coeff::Rational::new(
            (if k % 2 == 1 { 1 } else { -1 }).into(),
            k.into(),
        ));
        for (a, p) in acc.iter_mut().zip(phi.components()) {
            *a = a.add(&p.scale(&w).unwrap()).unwrap();
        }
    }
    acc
}

/// Every (s, m) with λ_s = Π λ_i^{m_i}, 2 ≤ |m| ≤ max_degree, found by
/// looping over exponent boxes and multiplying from scratch.
pub fn brute_force_resonances(lams: &[Coefficient], max_degree: u32) -> Vec<ResonanceWitness> {
    let n = lams.len();
    let mut out = Vec::new();
    let total = (max_degree as usize + 1).pow(n as u32);
    for code in 0..total {
        let mut e = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            e.push((c % (max_degree as usize + 1)) as u32);
            c /= max_degree as usize + 1;
        }
        let deg: u32 = e.iter().sum();
        if deg < 2 || deg > max_degree {
            continue;
        }
        let mut value = Coefficient::one();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                value = value.try_mul(&lams[i]).unwrap();
            }
        }
        for (s, lam) in lams.iter().enumerate() {
            if lam.exact_eq(&value).unwrap() {
                out.push(ResonanceWitness { s, m: MultiIndex::new(e.clone()) });
            }
        }
    }
    out
}

/// Number a + bε with ε² = 0, used to carry one unknown coefficient through
/// a composition symbolically.
#[derive(Clone, Debug)]
pub struct Dual {
    pub re: Coefficient,
    pub eps: Coefficient,
}

impl Dual {
    fn real(c: Coefficient) -> Self {
        Dual { re: c, eps: Coefficient::zero() }
    }

    fn add(&self, o: &Self) -> Self {
        Dual {
            re: self.re.try_add(&o.re).unwrap(),
            eps: self.eps.try_add(&o.eps).unwrap(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Dual {
            re: self.re.try_mul(&o.re).unwrap(),
            eps: self.re.try_mul(&o.eps).unwrap().try_add(&self.eps.try_mul(&o.re).unwrap()).unwrap(),
        }
    }
}

/// Dense polynomial truncated at a fixed degree, keyed by exponent vector.
pub type DualPoly = BTreeMap<Vec<u32>, Dual>;

fn poly_mul(a: &DualPoly, b: &DualPoly, deg: u32) -> DualPoly {
    let mut out = DualPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<u32>() > deg {
                continue;
            }
            let p = ca.mul(cb);
            out.entry(e).and_modify(|c| *c = c.add(&p)).or_insert(p);
        }
    }
    out
}

fn poly_compose(outer: &[DualPoly], inner: &[DualPoly], deg: u32) -> Vec<DualPoly> {
    let n = inner.len();
    outer
        .iter()
        .map(|c| {
            let mut acc = DualPoly::new();
            for (e, coef) in c {
                let mut prod: DualPoly = [(vec![0; n], Dual::real(Coefficient::one()))].into_iter().collect();
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        prod = poly_mul(&prod, &inner[i], deg);
                    }
                }
                for (pe, pc) in prod {
                    let t = coef.mul(&pc);
                    acc.entry(pe).and_modify(|x| *x = x.add(&t)).or_insert(t);
                }
            }
            acc
        })
        .collect()
}

/// Expands g^{∘k} where g is `prefix` plus an unknown ε at
/// (`component`, `exponents`), truncated at the unknown's degree. Returns
/// the real and ε parts of every coefficient.
pub fn symbolic_iterate(prefix: &GermMap, k: u32, component: usize, exponents: &[u32]) -> Vec<DualPoly> {
    let deg: u32 = exponents.iter().sum();
    let mut g: Vec<DualPoly> = prefix
        .components()
        .iter()
        .map(|c| c.terms().map(|(m, v)| (m.exponents().to_vec(), Dual::real(v.clone()))).collect())
        .collect();
    g[component].insert(
        exponents.to_vec(),
        Dual { re: Coefficient::zero(), eps: Coefficient::one() },
    );
    let mut acc = g.clone();
    for _ in 1..k {
        acc = poly_compose(&g, &acc, deg);
    }
    acc
}

pub fn dual_at(p: &DualPoly, e: &[u32]) -> Dual {
    p.get(e).cloned().unwrap_or(Dual { re: Coefficient::zero(), eps: Coefficient::zero() })
}

/// Checks an obstruction certificate against `u` with the dual-number
/// expansion: the prefix must solve g^{∘k} = u below the blocked degree,
/// and the unknown must enter the blocked coefficient as alpha·c with
/// u − (known part) = beta.
pub fn check_certificate(
    u: &GermMap,
    cert: &germflow::flow::ObstructionCertificate,
) -> Result<(), String> {
    if !cert.alpha.is_zero() {
        return Err(format!("alpha = {} is not zero", cert.alpha));
    }
    if cert.beta.is_zero() {
        return Err("beta is zero".into());
    }
    let e = cert.exponents.exponents();
    let expanded = symbolic_iterate(&cert.forced_prefix, cert.root_order, cert.component, e);
    let at = dual_at(&expanded[cert.component], e);
    if !at.eps.exact_eq(&cert.alpha).map_err(|x| x.to_string())? {
        return Err(format!("expansion gives alpha = {}, certificate says {}", at.eps, cert.alpha));
    }
    let target = u.component(cert.component).get(&cert.exponents).cloned().unwrap_or_else(Coefficient::zero);
    let beta = target.try_sub(&at.re).map_err(|x| x.to_string())?;
    if !beta.exact_eq(&cert.beta).map_err(|x| x.to_string())? {
        return Err(format!("expansion gives beta = {beta}, certificate says {}", cert.beta));
    }
    for (s, comp) in expanded.iter().enumerate() {
        for d in 1..cert.degree {
            for m in monomials(u.nvars(), d) {
                let want = u.component(s).coeff(&m).cloned().unwrap_or_else(Coefficient::zero);
                let got = dual_at(comp, &m).re;
                if !want.exact_eq(&got).map_err(|x| x.to_string())? {
                    return Err(format!("prefix fails at component {s}, exponents {m:?}"));
                }
            }
        }
    }
    Ok(())
}

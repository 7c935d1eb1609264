use std::cmp::Ordering;

use crate::coeff::Coefficient;
use crate::series::{compose, compositional_inverse, FormalSeries, GermMap, MultiIndex};

use super::resonance::{resonance_check, ResonanceWitness};
use super::{LinearizeError, Result};

/// A normalizing map `f` (linear part E) with f ∘ u = Λ f, Λ = diag(multipliers).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearizationResult {
    pub f: GermMap,
    pub multipliers: Vec<Coefficient>,
}

impl LinearizationResult {
    pub fn order(&self) -> u32 {
        self.f.order()
    }

    /// f⁻¹ ∘ Λ ∘ f, which equals the source germ up to order.
    pub fn reconstruct(&self) -> Result<GermMap> {
        let lam = GermMap::diagonal(&self.multipliers, self.order());
        let f_inv = compositional_inverse(&self.f)?;
        Ok(compose(&f_inv, &compose(&lam, &self.f)?)?)
    }

    /// f ∘ u − Λ f; identically zero in exact mode.
    pub fn conjugacy_residual(&self, u: &GermMap) -> Result<GermMap> {
        let lhs = compose(&self.f, u)?;
        let rhs = self.f.scale_components(&self.multipliers)?;
        Ok(lhs.sub(&rhs)?)
    }
}

/// Koenigs linearization of a one-variable germ with |λ| ∉ {0, 1}.
///
/// The coefficients solve c_k (λ − λ^k) = R_k directly for both |λ| < 1 and
/// |λ| > 1; the divisor never vanishes off the unit circle.
pub fn koenigs(u: &GermMap, order: u32) -> Result<LinearizationResult> {
    if u.nvars() != 1 {
        return Err(LinearizeError::NotOneDimensional(u.nvars()));
    }
    let lam = u.linear_part().get(0, 0).clone();
    let tol = u.mode().tolerance();
    if lam.is_zero() || lam.abs_f64() <= tol {
        return Err(LinearizeError::ZeroMultiplier);
    }
    if lam.cmp_modulus_one(tol) == Ordering::Equal {
        return Err(LinearizeError::UnitModulus(lam.render()));
    }
    homological_solve(u, &[lam], order)
}

/// Poincaré linearization for a diagonal linear part with all multipliers
/// inside the unit disc and no resonance up to `order`.
pub fn poincare_linearize(u: &GermMap, order: u32) -> Result<LinearizationResult> {
    let j = u.linear_part();
    if !j.is_diagonal() {
        return Err(LinearizeError::NotDiagonal);
    }
    let mults = j.diagonal_entries();
    let tol = u.mode().tolerance();
    for (i, lam) in mults.iter().enumerate() {
        if lam.cmp_modulus_one(tol) != Ordering::Less {
            return Err(LinearizeError::NotContracting(i));
        }
        if lam.is_zero() {
            return Err(LinearizeError::ZeroMultiplier);
        }
    }
    let order = order.min(u.order());
    let witnesses = resonance_check(&mults, order)?;
    if !witnesses.is_empty() {
        return Err(LinearizeError::Resonant(witnesses));
    }
    homological_solve(u, &mults, order)
}

/// Degree-by-degree solve of f ∘ u = Λ f with f = x + O(|x|²):
/// f_{s,m} = R_{s,m} / (λ_s − λ^m) where R = f_{<d} ∘ u − Λ f_{<d} at degree d.
fn homological_solve(u: &GermMap, mults: &[Coefficient], order: u32) -> Result<LinearizationResult> {
    let n = u.nvars();
    let mode = u.mode();
    let order = order.min(u.order());
    let u = u.truncate(order);
    let tol = mode.tolerance();
    let mut f = GermMap::identity(n, order, mode).into_components();
    let mut monomials: Vec<(MultiIndex, Coefficient)> = Vec::new();
    for d in 2..=order {
        monomials.clear();
        for m in MultiIndex::of_degree(n, d) {
            let mut p = mode.one();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    p = p.try_mul(&mults[i].pow(e as i64)?)?;
                }
            }
            monomials.push((m, p));
        }
        let current = GermMap::new(f.iter().map(|c| c.truncate(d)).collect())?;
        let fu = compose(&current, &u.truncate(d))?;
        for s in 0..n {
            let r = fu.component(s).homogeneous(d);
            for (m, lam_m) in &monomials {
                let Some(rhs) = r.get(m) else { continue };
                let divisor = mults[s].try_sub(lam_m)?;
                if divisor.is_zero() || (!mode.is_exact() && divisor.abs_f64() <= tol) {
                    return Err(LinearizeError::Resonant(vec![ResonanceWitness { s, m: m.clone() }]));
                }
                f[s].set(m.clone(), rhs.try_div(&divisor)?);
            }
        }
    }
    let f = GermMap::new(f.into_iter().map(|c: FormalSeries| c.truncate(order)).collect())?;
    Ok(LinearizationResult {
        f,
        multipliers: mults.to_vec(),
    })
}

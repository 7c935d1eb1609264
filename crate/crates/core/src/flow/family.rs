use std::cmp::Ordering;

use crate::coeff::{Coefficient, Mode};
use crate::linearize::{koenigs, poincare_linearize, SquareMatrix};
use crate::series::{compose, compositional_inverse, GermMap, VectorFieldGerm};

use super::lie::{exp_flow, formal_log};
use super::{FlowError, Result};

/// A one-parameter family φ^t, stored by the data that generates it.
#[derive(Clone, Debug, PartialEq)]
pub enum FlowFamily {
    /// φ^t = f⁻¹ ∘ Λ^t ∘ f with Λ = diag(multipliers).
    Hyperbolic {
        f: GermMap,
        f_inv: GermMap,
        multipliers: Vec<Coefficient>,
    },
    /// φ^t = exp(t·v).
    Parabolic { v: VectorFieldGerm },
}

impl FlowFamily {
    pub fn order(&self) -> u32 {
        match self {
            FlowFamily::Hyperbolic { f, .. } => f.order(),
            FlowFamily::Parabolic { v } => v.order(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            FlowFamily::Hyperbolic { f, .. } => f.nvars(),
            FlowFamily::Parabolic { v } => v.nvars(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            FlowFamily::Hyperbolic { f, .. } => f.mode(),
            FlowFamily::Parabolic { v } => v.mode(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FlowFamily::Hyperbolic { .. } => "hyperbolic",
            FlowFamily::Parabolic { .. } => "parabolic",
        }
    }

    /// The same family with every coefficient moved into `mode`.
    pub fn to_mode(&self, mode: Mode) -> Result<Self> {
        Ok(match self {
            FlowFamily::Hyperbolic { f, f_inv, multipliers } => FlowFamily::Hyperbolic {
                f: f.to_mode(mode)?,
                f_inv: f_inv.to_mode(mode)?,
                multipliers: multipliers
                    .iter()
                    .map(|c| mode.adopt(c))
                    .collect::<crate::coeff::Result<_>>()?,
            },
            FlowFamily::Parabolic { v } => FlowFamily::Parabolic { v: v.to_mode(mode)? },
        })
    }
}

/// Embeds `u` in a flow: parabolic when J(0) = E, hyperbolic through Koenigs
/// (one variable) or Poincaré (diagonal, contracting, non-resonant).
pub fn flow_family(u: &GermMap, order: u32) -> Result<FlowFamily> {
    let n = u.nvars();
    let mode = u.mode();
    let order = order.min(u.order());
    let j = u.linear_part();
    if j.max_abs_diff(&SquareMatrix::identity(n, mode)) <= mode.tolerance() {
        return Ok(FlowFamily::Parabolic {
            v: formal_log(u, order)?,
        });
    }
    if !j.is_diagonal() {
        return Err(FlowError::NotDiagonal);
    }
    let lin = if n == 1 {
        let lam = j.get(0, 0);
        if !lam.is_zero() && lam.cmp_modulus_one(mode.tolerance()) == Ordering::Equal {
            return Err(FlowError::UnitMultiplier(lam.render()));
        }
        koenigs(u, order)?
    } else {
        poincare_linearize(u, order)?
    };
    let f_inv = compositional_inverse(&lin.f)?;
    Ok(FlowFamily::Hyperbolic {
        f: lin.f,
        f_inv,
        multipliers: lin.multipliers,
    })
}

/// φ^t truncated at `order`.
///
/// A float `t` moves an exact family into float mode; an exact `t` whose
/// power λ^t has no exact form fails with [`FlowError::NeedsFloat`].
pub fn evaluate_flow(family: &FlowFamily, t: &Coefficient, order: u32) -> Result<GermMap> {
    let order = order.min(family.order());
    if !t.is_exact() && family.mode().is_exact() {
        return evaluate_flow(&family.to_mode(t.mode())?, t, order);
    }
    match family {
        FlowFamily::Parabolic { v } => exp_flow(v, t, order),
        FlowFamily::Hyperbolic { f, f_inv, multipliers } => {
            let n = f.nvars();
            if t.is_zero() {
                return Ok(GermMap::identity(n, order, family.mode()));
            }
            let powers = multipliers
                .iter()
                .map(|lam| lam.pow_coeff(t))
                .collect::<crate::coeff::Result<Vec<_>>>()
                .map_err(|e| match e {
                    crate::coeff::CoeffError::NotRepresentable(what) => FlowError::NeedsFloat(what),
                    other => other.into(),
                })?;
            let f = f.truncate(order);
            let lam_t_f = f.scale_components(&powers)?;
            Ok(compose(&f_inv.truncate(order), &lam_t_f)?)
        }
    }
}

/// φ^s ∘ φ^t − φ^{s+t}; identically zero in exact mode.
pub fn verify_group_law(family: &FlowFamily, s: &Coefficient, t: &Coefficient, order: u32) -> Result<GermMap> {
    let phi_s = evaluate_flow(family, s, order)?;
    let phi_t = evaluate_flow(family, t, order)?;
    let phi_st = evaluate_flow(family, &s.try_add(t)?, order)?;
    Ok(compose(&phi_s, &phi_t)?.sub(&phi_st)?)
}

use crate::coeff::{Coefficient, Mode};
use crate::linearize::SquareMatrix;
use crate::series::{FormalSeries, GermMap, MultiIndex, VectorFieldGerm};

use super::{FlowError, Result};

/// Hard cap on Lie-series terms.
pub const MAX_LIE_TERMS: usize = 10_000;

/// D_v(s) = Σ v_i ∂s/∂x_i, known to the order of `s` because v(0) = 0.
pub(crate) fn lie_derivative(v: &VectorFieldGerm, s: &FormalSeries, cap: u32) -> Result<FormalSeries> {
    let mut out = FormalSeries::zero(s.nvars(), cap);
    for (i, vi) in v.components().iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let ds = s.derive_keep_order(i)?;
        if ds.is_zero() {
            continue;
        }
        out = out.add(&ds.mul_capped(vi, cap)?)?;
    }
    Ok(out)
}

fn nilpotent(a: &SquareMatrix) -> bool {
    a.mode().is_exact() && a.pow(a.n() as u32).map(|p| p.is_zero()).unwrap_or(false)
}

/// The time-`t` flow of `v` as the Lie series Σ t^k/k! D_v^k(x), truncated
/// at `order`.
///
/// Exact mode needs a nilpotent linear part (the series then terminates
/// degreewise) unless `t = 0`; otherwise use float mode.
pub fn exp_flow(v: &VectorFieldGerm, t: &Coefficient, order: u32) -> Result<GermMap> {
    let n = v.nvars();
    let order = order.min(v.order());
    let mode = if t.is_exact() { v.mode() } else { t.mode() };
    if t.is_zero() {
        return Ok(GermMap::identity(n, order, mode));
    }
    let v = v.truncate(order).to_mode(mode)?;
    let t = mode.adopt(t)?;
    if mode.is_exact() && !nilpotent(&v.linear_part()) {
        return Err(FlowError::NeedsFloat(
            "exact flow of a vector field with non-nilpotent linear part".into(),
        ));
    }
    let tol = mode.tolerance();
    let mut components = Vec::with_capacity(n);
    for j in 0..n {
        let mut term = FormalSeries::variable(n, order, j, mode);
        let mut acc = term.clone();
        let mut small_run = 0;
        let mut k = 0usize;
        loop {
            k += 1;
            if k > MAX_LIE_TERMS {
                return Err(FlowError::NonConvergent(MAX_LIE_TERMS));
            }
            // term_k = t^k/k! D_v^k(x_j)
            let scale = t.try_mul(&mode.rational(crate::coeff::Rational::new(1.into(), (k as i64).into())))?;
            term = lie_derivative(&v, &term, order)?.scale(&scale)?;
            if term.is_zero() {
                break;
            }
            if !mode.is_exact() {
                if term.max_abs() < tol {
                    small_run += 1;
                    if small_run >= 2 {
                        break;
                    }
                } else {
                    small_run = 0;
                }
            }
            acc = acc.add(&term)?;
        }
        components.push(acc);
    }
    Ok(GermMap::new(components)?)
}

/// The time-one map of `v`.
pub fn exp_map(v: &VectorFieldGerm, order: u32) -> Result<GermMap> {
    exp_flow(v, &v.mode().one(), order)
}

/// The formal infinitesimal generator of a germ tangent to the identity.
///
/// Writing v = v_2 + v_3 + … by degree, the degree-d part of exp(v) is
/// v_d plus terms built only from v_2, …, v_{d-1}; hence
/// v_d = u_d − [exp(v_{<d})]_d, with no division.
pub fn formal_log(u: &GermMap, order: u32) -> Result<VectorFieldGerm> {
    let n = u.nvars();
    let mode = u.mode();
    let order = order.min(u.order());
    if u.linear_part().max_abs_diff(&SquareMatrix::identity(n, mode)) > mode.tolerance() {
        return Err(FlowError::NotParabolic);
    }
    let mut v: Vec<FormalSeries> = (0..n).map(|_| FormalSeries::zero(n, order)).collect();
    for d in 2..=order {
        let partial = VectorFieldGerm::new(v.iter().map(|c| c.truncate(d)).collect())?;
        let e = exp_map(&partial, d)?;
        for (s, vs) in v.iter_mut().enumerate() {
            let target = u.component(s).homogeneous(d);
            let known = e.component(s).homogeneous(d);
            for m in MultiIndex::of_degree(n, d) {
                let a = target.get(&m).cloned().unwrap_or_else(|| mode.zero());
                let b = known.get(&m).cloned().unwrap_or_else(|| mode.zero());
                vs.set(m, a.try_sub(&b)?);
            }
        }
    }
    Ok(VectorFieldGerm::new(v)?)
}

/// Runs [`formal_log`] after moving an exact germ into `mode`.
pub fn formal_log_in(u: &GermMap, order: u32, mode: Mode) -> Result<VectorFieldGerm> {
    formal_log(&u.to_mode(mode)?, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(order: u32, terms: &[(u32, Coefficient)]) -> Vec<FormalSeries> {
        vec![FormalSeries::from_terms(
            1,
            order,
            terms.iter().map(|(e, c)| (MultiIndex::new(vec![*e]), c.clone())),
        )
        .unwrap()]
    }

    fn x_squared(order: u32) -> VectorFieldGerm {
        VectorFieldGerm::new(one_var(order, &[(2, Coefficient::one())])).unwrap()
    }

    #[test]
    fn zero_field_gives_identity() {
        let v = VectorFieldGerm::zero(2, 6);
        let phi = exp_flow(&v, &Coefficient::rational(3, 7), 6).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn flow_of_x_squared_is_geometric() {
        let t = Coefficient::rational(2, 3);
        let phi = exp_flow(&x_squared(5), &t, 5).unwrap();
        let expected: Vec<_> = (1..=5u32).map(|k| (k, t.pow(k as i64 - 1).unwrap())).collect();
        assert_eq!(phi.components(), one_var(5, &expected).as_slice());
    }

    #[test]
    fn log_of_geometric_series_is_x_squared() {
        let terms: Vec<_> = (1..=10u32).map(|k| (k, Coefficient::one())).collect();
        let u = GermMap::new(one_var(10, &terms)).unwrap();
        assert_eq!(formal_log(&u, 10).unwrap(), x_squared(10));
    }

    #[test]
    fn exact_linear_flow_needs_float() {
        let v = VectorFieldGerm::new(one_var(4, &[(1, Coefficient::rational(1, 2))])).unwrap();
        assert!(matches!(exp_flow(&v, &Coefficient::one(), 4), Err(FlowError::NeedsFloat(_))));
        let f = Mode::Float { precision: 128 };
        let phi = exp_flow(&v.to_mode(f).unwrap(), &Coefficient::one(), 4).unwrap();
        let c = phi.component(0).coeff(&[1]).unwrap();
        assert!((c.abs_f64() - 0.5f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn non_parabolic_log_is_refused() {
        let u = GermMap::new(one_var(4, &[(1, Coefficient::int(2))])).unwrap();
        assert_eq!(formal_log(&u, 4), Err(FlowError::NotParabolic));
    }
}

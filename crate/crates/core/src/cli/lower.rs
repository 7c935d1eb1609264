use std::collections::BTreeSet;

use crate::coeff::{root_of_unity, Coefficient, Mode, Rational};
use crate::linearize::SquareMatrix;
use crate::series::{FormalSeries, GermMap, MultiIndex, VectorFieldGerm};

use super::expr::Expr;
use super::CliError;

/// How the variables of an input map to series variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub names: Vec<String>,
    /// Input was one expression in (z, z̄); the second component is derived.
    pub pair: bool,
}

impl Layout {
    pub fn name_refs(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }
}

fn collect_vars(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Var(v) => {
            out.insert(v.clone());
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect_vars(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        Expr::Tuple(items) => items.iter().for_each(|i| collect_vars(i, out)),
        _ => {}
    }
}

fn components(e: &Expr) -> Vec<&Expr> {
    match e {
        Expr::Tuple(items) => items.iter().collect(),
        other => vec![other],
    }
}

/// Decides the variable layout for a germ-valued input.
pub fn layout(e: &Expr) -> Result<Layout, CliError> {
    let comps = components(e);
    let n = comps.len();
    let mut vars = BTreeSet::new();
    collect_vars(e, &mut vars);
    let named = |names: &[&str]| Layout {
        names: names.iter().map(|s| s.to_string()).collect(),
        pair: false,
    };
    if vars.contains("zbar") {
        if n != 1 {
            return Err(CliError::Input(
                "zbar is only allowed in a single expression; the conjugate component is derived".into(),
            ));
        }
        if vars.iter().any(|v| v != "z" && v != "zbar") {
            return Err(CliError::Input("a (z, zbar) germ may only use z and zbar".into()));
        }
        return Ok(Layout {
            names: vec!["z".into(), "zbar".into()],
            pair: true,
        });
    }
    if n == 1 {
        return match vars.len() {
            0 => Ok(named(&["z"])),
            1 => Ok(named(&[vars.first().expect("one var").as_str()])),
            _ => Err(CliError::Input(format!(
                "a single expression must use one variable, found {}",
                vars.iter().cloned().collect::<Vec<_>>().join(", ")
            ))),
        };
    }
    let indexed: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    if vars.iter().all(|v| indexed.contains(v)) {
        return Ok(Layout {
            names: indexed,
            pair: false,
        });
    }
    let letters = ["x", "y", "z", "w"];
    if n <= letters.len() && vars.iter().all(|v| letters[..n].contains(&v.as_str())) {
        return Ok(named(&letters[..n]));
    }
    Err(CliError::Input(format!(
        "variables of a {n}-component germ must be x1..x{n} or {}",
        letters[..n.min(4)].join(", ")
    )))
}

fn constant(e: &Expr) -> Result<Option<Coefficient>, CliError> {
    Ok(match e {
        Expr::Int(n) => Some(Coefficient::from(Rational::from_integer(n.clone()))),
        Expr::I => Some(root_of_unity(4, 1)),
        Expr::Zeta(k) => Some(root_of_unity(*k, 1)),
        Expr::ExpIPi(r) => {
            let q: u32 = r
                .denom()
                .try_into()
                .map_err(|_| CliError::Input("root-of-unity denominator too large".into()))?;
            let p: i64 = (r.numer() % (2 * i64::from(q)))
                .try_into()
                .expect("reduced numerator fits");
            Some(root_of_unity(2 * q, p))
        }
        Expr::Rad(b, mu) => Some(
            Coefficient::from(mu.clone())
                .pow_rational(&Rational::new(1.into(), i64::from(*b).into()))
                .map_err(|e| CliError::Input(e.to_string()))?,
        ),
        _ => None,
    })
}

/// Evaluates an expression to a series in the variables of `layout`.
pub fn eval_series(e: &Expr, layout: &Layout, order: u32, mode: Mode) -> Result<FormalSeries, CliError> {
    let n = layout.names.len();
    if let Some(c) = constant(e)? {
        return Ok(FormalSeries::constant(n, order, mode.adopt(&c)?));
    }
    let rec = |x: &Expr| eval_series(x, layout, order, mode);
    Ok(match e {
        Expr::Var(v) => {
            let i = layout
                .names
                .iter()
                .position(|name| name == v)
                .ok_or_else(|| CliError::Input(format!("variable '{v}' is not part of this germ")))?;
            FormalSeries::variable(n, order, i, mode)
        }
        Expr::Neg(a) => rec(a)?.neg(),
        Expr::Add(a, b) => rec(a)?.add(&rec(b)?)?,
        Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?)?,
        Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?)?,
        Expr::Div(a, b) => {
            let den = rec(b)?;
            let c = match (den.len(), den.constant_term()) {
                (1, Some(c)) => c.clone(),
                (0, _) => return Err(CliError::Input("division by zero".into())),
                _ => return Err(CliError::Input("division is only allowed by nonzero constants".into())),
            };
            rec(a)?.scale(&c.inv()?)?
        }
        Expr::Pow(a, k) => rec(a)?.pow(*k, mode)?,
        Expr::Tuple(_) => return Err(CliError::Input("tuples may only appear at the top level".into())),
        _ => unreachable!("constants handled above"),
    })
}

fn lower_components(e: &Expr, order: u32, mode: Mode) -> Result<(Vec<FormalSeries>, Layout), CliError> {
    let layout = layout(e)?;
    let mut comps = components(e)
        .into_iter()
        .map(|c| eval_series(c, &layout, order, mode))
        .collect::<Result<Vec<_>, _>>()?;
    if layout.pair {
        let first = comps.pop().expect("one component");
        comps = vec![first.clone(), first.involution()];
    }
    for (i, c) in comps.iter().enumerate() {
        if c.constant_term().is_some() {
            return Err(CliError::Input(format!(
                "nonzero constant term in component {}; a germ must fix the origin",
                i + 1
            )));
        }
    }
    Ok((comps, layout))
}

pub fn lower_germ(e: &Expr, order: u32, mode: Mode) -> Result<(GermMap, Layout), CliError> {
    let (comps, layout) = lower_components(e, order, mode)?;
    Ok((GermMap::new(comps)?, layout))
}

pub fn lower_vector_field(e: &Expr, order: u32, mode: Mode) -> Result<(VectorFieldGerm, Layout), CliError> {
    let (comps, layout) = lower_components(e, order, mode)?;
    Ok((VectorFieldGerm::new(comps)?, layout))
}

/// A constant expression as a coefficient.
pub fn lower_scalar(e: &Expr, mode: Mode) -> Result<Coefficient, CliError> {
    let mut vars = BTreeSet::new();
    collect_vars(e, &mut vars);
    if !vars.is_empty() || matches!(e, Expr::Tuple(_)) {
        return Err(CliError::Input(format!("expected a constant, got '{e}'")));
    }
    let layout = Layout {
        names: vec!["z".into()],
        pair: false,
    };
    let s = eval_series(e, &layout, 0, mode)?;
    Ok(s.get(&MultiIndex::zero(1)).cloned().unwrap_or_else(|| mode.zero()))
}

fn is_constant(e: &Expr) -> bool {
    let mut vars = BTreeSet::new();
    collect_vars(e, &mut vars);
    vars.is_empty()
}

/// Multipliers from a constant tuple, or the diagonal of a germ's linear part.
pub fn lower_multipliers(e: &Expr, order: u32, mode: Mode) -> Result<Vec<Coefficient>, CliError> {
    if is_constant(e) {
        return components(e).into_iter().map(|c| lower_scalar(c, mode)).collect();
    }
    let (u, _) = lower_germ(e, order, mode)?;
    let j = u.linear_part();
    if !j.is_diagonal() {
        return Err(CliError::Input("linear part is not diagonal; give the multipliers explicitly".into()));
    }
    Ok(j.diagonal_entries())
}

/// A matrix from rows `((a, b), (c, d))`, a scalar (1×1), or a germ's
/// linear part.
pub fn lower_matrix(e: &Expr, order: u32, mode: Mode) -> Result<SquareMatrix, CliError> {
    if let Expr::Tuple(rows) = e {
        if rows.iter().all(|r| matches!(r, Expr::Tuple(_))) {
            let rows = rows
                .iter()
                .map(|r| components(r).into_iter().map(|c| lower_scalar(c, mode)).collect())
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            return SquareMatrix::from_rows(rows).ok_or_else(|| CliError::Input("matrix must be square".into()));
        }
    }
    if is_constant(e) && !matches!(e, Expr::Tuple(_)) {
        return Ok(SquareMatrix::from_rows(vec![vec![lower_scalar(e, mode)?]]).expect("1x1"));
    }
    Ok(lower_germ(e, order.max(1), mode)?.0.linear_part())
}

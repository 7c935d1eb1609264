use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Coefficient, Mode};

use super::multi_index::MultiIndex;
use super::{Result, SeriesError};

/// A multivariate power series known up to total degree `order`.
///
/// Terms of degree above `order` are unknown and never stored, and no stored
/// coefficient is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries {
    nvars: usize,
    order: u32,
    terms: BTreeMap<MultiIndex, Coefficient>,
}

impl FormalSeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        FormalSeries {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, order: u32, c: Coefficient) -> Self {
        let mut s = Self::zero(nvars, order);
        s.set(MultiIndex::zero(nvars), c);
        s
    }

    /// The coordinate function `x_var` with unit coefficient in `mode`.
    pub fn variable(nvars: usize, order: u32, var: usize, mode: Mode) -> Self {
        Self::monomial(nvars, order, MultiIndex::unit(nvars, var), mode.one())
    }

    pub fn monomial(nvars: usize, order: u32, idx: MultiIndex, c: Coefficient) -> Self {
        let mut s = Self::zero(nvars, order);
        s.set(idx, c);
        s
    }

    /// Builds a series from terms; repeated indices are summed.
    pub fn from_terms(
        nvars: usize,
        order: u32,
        terms: impl IntoIterator<Item = (MultiIndex, Coefficient)>,
    ) -> Result<Self> {
        let mut s = Self::zero(nvars, order);
        for (idx, c) in terms {
            if idx.nvars() != nvars {
                return Err(SeriesError::ArityMismatch(nvars, idx.nvars()));
            }
            s.add_term(idx, &c)?;
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Coefficient)> {
        self.terms.iter()
    }

    pub fn get(&self, idx: &MultiIndex) -> Option<&Coefficient> {
        self.terms.get(idx)
    }

    /// Coefficient of `x^exps`, or `None` when it is zero.
    pub fn coeff(&self, exps: &[u32]) -> Option<&Coefficient> {
        self.terms.get(&MultiIndex::new(exps.to_vec()))
    }

    /// Mode of the stored coefficients; `None` for the zero series.
    pub fn mode(&self) -> Option<Mode> {
        self.terms.values().next().map(Coefficient::mode)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::degree)
    }

    pub fn constant_term(&self) -> Option<&Coefficient> {
        self.terms.get(&MultiIndex::zero(self.nvars))
    }

    /// Stores `c` at `idx`, removing the entry for zero and ignoring indices
    /// beyond the truncation order.
    pub fn set(&mut self, idx: MultiIndex, c: Coefficient) {
        debug_assert_eq!(idx.nvars(), self.nvars);
        if idx.degree() > self.order {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, c);
        }
    }

    pub(crate) fn add_term(&mut self, idx: MultiIndex, c: &Coefficient) -> Result<()> {
        if idx.degree() > self.order || c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&idx) {
            Some(existing) => {
                let sum = existing.try_add(c)?;
                if sum.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(idx, c.clone());
            }
        }
        Ok(())
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            Err(SeriesError::ArityMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.truncate(self.order.min(other.order));
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FormalSeries {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Self> {
        let mut out = Self::zero(self.nvars, self.order);
        for (idx, x) in &self.terms {
            out.set(idx.clone(), x.try_mul(c)?);
        }
        Ok(out)
    }

    /// Truncated product; the result is known to the smaller of both orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        self.mul_capped(other, self.order.min(other.order))
    }

    /// Product keeping only degrees `<= cap`, labelled with order `cap`.
    ///
    /// The caller vouches that the product is known to degree `cap`, which
    /// can exceed both operand orders when an operand has no low-degree part
    /// (e.g. multiplying by a series without constant term).
    pub(crate) fn mul_capped(&self, other: &Self, cap: u32) -> Result<Self> {
        let mut out = Self::zero(self.nvars, cap);
        let (a, b) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let b_terms: Vec<_> = b.terms.iter().collect();
        for (ia, ca) in &a.terms {
            if ia.degree() > cap {
                break;
            }
            for (ib, cb) in &b_terms {
                if ia.degree() + ib.degree() > cap {
                    break;
                }
                out.add_term(ia.add(ib), &ca.try_mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32, mode: Mode) -> Result<Self> {
        let mut out = Self::constant(self.nvars, self.order, mode.one());
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Drops terms above `order`. Requesting a larger order keeps the series.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        FormalSeries {
            nvars: self.nvars,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() <= order)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Relabels the series as known to `order` without touching terms.
    pub(crate) fn with_order(mut self, order: u32) -> Self {
        self.terms.retain(|k, _| k.degree() <= order);
        self.order = order;
        self
    }

    /// Termwise partial derivative in `var`; the order drops by one.
    pub fn derive(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(SeriesError::VariableOutOfRange(var, self.nvars));
        }
        let mut out = self.derive_keep_order(var)?;
        out.order = self.order.saturating_sub(1);
        Ok(out.with_order(self.order.saturating_sub(1)))
    }

    pub(crate) fn derive_keep_order(&self, var: usize) -> Result<Self> {
        let mut out = Self::zero(self.nvars, self.order);
        for (idx, c) in &self.terms {
            let e = idx.get(var);
            if let Some(lower) = idx.decrement(var) {
                let factor = c.mode().int(e as i64);
                out.set(lower, c.try_mul(&factor)?);
            }
        }
        Ok(out)
    }

    /// The homogeneous part of degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        FormalSeries {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == d)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coefficients(
        &self,
        mut f: impl FnMut(&Coefficient) -> crate::coeff::Result<Coefficient>,
    ) -> Result<Self> {
        let mut out = Self::zero(self.nvars, self.order);
        for (idx, c) in &self.terms {
            out.set(idx.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Moves every coefficient into `mode` (exact to float embedding).
    pub fn to_mode(&self, mode: Mode) -> Result<Self> {
        self.map_coefficients(|c| mode.adopt(c))
    }

    /// Conjugates coefficients and reverses the variable order; for two
    /// variables (z, z̄) this is the formal complex conjugation.
    pub fn involution(&self) -> Self {
        FormalSeries {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.reversed(), c.conj()))
                .collect(),
        }
    }

    /// Exact equality of the known prefixes up to `order`.
    pub fn agrees_to(&self, other: &Self, order: u32) -> bool {
        self.nvars == other.nvars && self.truncate(order).terms == other.truncate(order).terms
    }

    /// Largest coefficient modulus, for float-mode residual checks.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Coefficient::abs_f64).fold(0.0, f64::max)
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, c) in &self.terms {
            let mono = render_monomial(idx, names);
            let neg = c.is_negative_literal();
            let mag = if neg { c.neg() } else { c.clone() };
            let coeff = if mag.is_compound() {
                format!("({})", mag.render())
            } else {
                mag.render()
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
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
        out
    }
}

pub(crate) fn default_names(nvars: usize) -> Vec<String> {
    match nvars {
        1 => vec!["z".to_string()],
        _ => (1..=nvars).map(|i| format!("x{i}")).collect(),
    }
}

fn render_monomial(idx: &MultiIndex, names: &[&str]) -> String {
    idx.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            let name = names.get(v).copied().unwrap_or("?");
            if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

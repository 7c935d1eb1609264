use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Coefficient, Mode};
use crate::linearize::SquareMatrix;

use super::formal::{default_names, FormalSeries};
use super::multi_index::MultiIndex;
use super::{Result, SeriesError};

fn check_components(components: &[FormalSeries]) -> Result<u32> {
    let n = components.len();
    if n == 0 {
        return Err(SeriesError::Empty);
    }
    for (i, c) in components.iter().enumerate() {
        if c.nvars() != n {
            return Err(SeriesError::ArityMismatch(n, c.nvars()));
        }
        if c.constant_term().is_some() {
            return Err(SeriesError::NonzeroConstant(i));
        }
    }
    let mut modes = components.iter().filter_map(FormalSeries::mode);
    if let Some(first) = modes.next() {
        if modes.any(|m| m.is_exact() != first.is_exact()) {
            return Err(SeriesError::Coeff(crate::coeff::CoeffError::MixedMode));
        }
    }
    Ok(components.iter().map(FormalSeries::order).min().unwrap())
}

fn linear_part_of(components: &[FormalSeries], mode: Mode) -> SquareMatrix {
    let n = components.len();
    let mut m = SquareMatrix::zeros(n, mode);
    for (i, c) in components.iter().enumerate() {
        for j in 0..n {
            if let Some(a) = c.get(&MultiIndex::unit(n, j)) {
                m.set(i, j, a.clone());
            }
        }
    }
    m
}

fn mode_of(components: &[FormalSeries]) -> Mode {
    components
        .iter()
        .filter_map(FormalSeries::mode)
        .find(|m| !m.is_exact())
        .unwrap_or(Mode::Exact)
}

fn render_components(components: &[FormalSeries], names: Option<&[&str]>) -> Vec<String> {
    let owned = default_names(components.len());
    let defaults: Vec<&str> = owned.iter().map(String::as_str).collect();
    let names = names.unwrap_or(&defaults);
    components.iter().map(|c| c.render(names)).collect()
}

/// A formal diffeomorphism germ fixing the origin: n series in n variables
/// with zero constant terms and a common truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct GermMap {
    components: Vec<FormalSeries>,
}

/// A formal vector field vanishing at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldGerm {
    components: Vec<FormalSeries>,
}

macro_rules! germ_common {
    ($t:ty) => {
        impl $t {
            /// Validates the tuple and truncates every component to the
            /// smallest order among them.
            pub fn new(components: Vec<FormalSeries>) -> Result<Self> {
                let order = check_components(&components)?;
                Ok(Self {
                    components: components.into_iter().map(|c| c.truncate(order)).collect(),
                })
            }

            pub fn zero(n: usize, order: u32) -> Self {
                Self {
                    components: (0..n).map(|_| FormalSeries::zero(n, order)).collect(),
                }
            }

            pub fn nvars(&self) -> usize {
                self.components.len()
            }

            pub fn order(&self) -> u32 {
                self.components[0].order()
            }

            pub fn components(&self) -> &[FormalSeries] {
                &self.components
            }

            pub fn component(&self, i: usize) -> &FormalSeries {
                &self.components[i]
            }

            pub fn into_components(self) -> Vec<FormalSeries> {
                self.components
            }

            /// Float when any coefficient is approximate, else exact.
            pub fn mode(&self) -> Mode {
                mode_of(&self.components)
            }

            /// The Jacobian at the origin (degree-one coefficients).
            pub fn linear_part(&self) -> SquareMatrix {
                linear_part_of(&self.components, self.mode())
            }

            pub fn truncate(&self, order: u32) -> Self {
                Self {
                    components: self.components.iter().map(|c| c.truncate(order)).collect(),
                }
            }

            pub fn is_zero(&self) -> bool {
                self.components.iter().all(FormalSeries::is_zero)
            }

            pub fn to_mode(&self, mode: Mode) -> Result<Self> {
                Ok(Self {
                    components: self
                        .components
                        .iter()
                        .map(|c| c.to_mode(mode))
                        .collect::<Result<_>>()?,
                })
            }

            /// Equality of known prefixes through `order`.
            pub fn agrees_to(&self, other: &Self, order: u32) -> bool {
                self.nvars() == other.nvars()
                    && self
                        .components
                        .iter()
                        .zip(&other.components)
                        .all(|(a, b)| a.agrees_to(b, order))
            }

            /// Largest coefficient modulus across components.
            pub fn max_abs(&self) -> f64 {
                self.components.iter().map(FormalSeries::max_abs).fold(0.0, f64::max)
            }

            /// Rendered components with the given (or default) variable names.
            pub fn render(&self, names: Option<&[&str]>) -> Vec<String> {
                render_components(&self.components, names)
            }

            /// The formal conjugate in the (z, z̄) chart: swap components and
            /// apply the involution to each.
            pub fn involution(&self) -> Self {
                Self {
                    components: self.components.iter().rev().map(FormalSeries::involution).collect(),
                }
            }

            /// Builds the pair (s, s̄) in the (z, z̄) chart.
            pub fn conjugate_pair(first: FormalSeries) -> Result<Self> {
                if first.nvars() != 2 {
                    return Err(SeriesError::ArityMismatch(2, first.nvars()));
                }
                let second = first.involution();
                Self::new(vec![first, second])
            }

            /// Whether the second component is the involution image of the first.
            pub fn is_conjugate_pair(&self) -> bool {
                self.nvars() == 2 && self.components[1] == self.components[0].involution()
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts = self.render(None);
                if parts.len() == 1 {
                    f.write_str(&parts[0])
                } else {
                    write!(f, "({})", parts.join(", "))
                }
            }
        }
    };
}

germ_common!(GermMap);
germ_common!(VectorFieldGerm);

impl GermMap {
    pub fn identity(n: usize, order: u32, mode: Mode) -> Self {
        GermMap {
            components: (0..n).map(|i| FormalSeries::variable(n, order, i, mode)).collect(),
        }
    }

    /// The linear germ x ↦ A x.
    pub fn linear(a: &SquareMatrix, order: u32) -> Self {
        let n = a.n();
        let components = (0..n)
            .map(|i| {
                let mut s = FormalSeries::zero(n, order);
                for j in 0..n {
                    s.set(MultiIndex::unit(n, j), a.get(i, j).clone());
                }
                s
            })
            .collect();
        GermMap { components }
    }

    pub fn diagonal(multipliers: &[Coefficient], order: u32) -> Self {
        Self::linear(&SquareMatrix::diagonal(multipliers), order)
    }

    /// Componentwise difference, as a (not necessarily invertible) germ.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(SeriesError::ArityMismatch(self.nvars(), other.nvars()));
        }
        Ok(GermMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect::<Result<_>>()?,
        })
    }

    /// x ↦ D·u(x) for a diagonal D given by its entries.
    pub fn scale_components(&self, diag: &[Coefficient]) -> Result<Self> {
        Ok(GermMap {
            components: self
                .components
                .iter()
                .zip(diag)
                .map(|(c, d)| c.scale(d))
                .collect::<Result<_>>()?,
        })
    }

    /// x ↦ A·u(x).
    pub fn left_mul(&self, a: &SquareMatrix) -> Result<Self> {
        let n = self.nvars();
        let mut components = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = FormalSeries::zero(n, self.order());
            for j in 0..n {
                if !a.get(i, j).is_zero() {
                    acc = acc.add(&self.components[j].scale(a.get(i, j))?)?;
                }
            }
            components.push(acc);
        }
        Ok(GermMap { components })
    }

    pub fn is_identity(&self) -> bool {
        let id = GermMap::identity(self.nvars(), self.order(), self.mode());
        self.components == id.components
    }

    pub fn into_vector_field(self) -> VectorFieldGerm {
        VectorFieldGerm {
            components: self.components,
        }
    }
}

impl VectorFieldGerm {
    pub fn into_germ_unchecked(self) -> GermMap {
        GermMap {
            components: self.components,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Self> {
        Ok(VectorFieldGerm {
            components: self
                .components
                .iter()
                .map(|s| s.scale(c))
                .collect::<Result<_>>()?,
        })
    }
}

/// `outer ∘ inner`, truncated to the smaller order.
pub fn compose(outer: &GermMap, inner: &GermMap) -> Result<GermMap> {
    if outer.nvars() != inner.nvars() {
        return Err(SeriesError::ArityMismatch(outer.nvars(), inner.nvars()));
    }
    let cap = outer.order().min(inner.order());
    let components = outer
        .components()
        .iter()
        .map(|c| substitute(c, inner.components(), cap))
        .collect::<Result<_>>()?;
    Ok(GermMap { components })
}

/// Evaluates `outer` at the series tuple `inner`, keeping degrees ≤ `cap`.
///
/// Every inner series must have zero constant term and be known to `cap`.
pub fn substitute(outer: &FormalSeries, inner: &[FormalSeries], cap: u32) -> Result<FormalSeries> {
    let n = inner.len();
    if outer.nvars() != n {
        return Err(SeriesError::ArityMismatch(outer.nvars(), n));
    }
    let inner_vars = inner.first().map(FormalSeries::nvars).unwrap_or(0);
    if let Some(i) = inner.iter().position(|s| s.constant_term().is_some()) {
        return Err(SeriesError::NonzeroConstant(i));
    }
    let cap = cap.min(outer.order());
    let terms: Vec<(&[u32], &Coefficient)> = outer
        .terms()
        .filter(|(k, _)| k.degree() <= cap)
        .map(|(k, c)| (k.exponents(), c))
        .collect();
    horner(&terms, 0, cap, inner, inner_vars)
}

fn horner(
    terms: &[(&[u32], &Coefficient)],
    var: usize,
    cap: u32,
    inner: &[FormalSeries],
    inner_vars: usize,
) -> Result<FormalSeries> {
    if var == inner.len() {
        let mut out = FormalSeries::zero(inner_vars, cap);
        for (_, c) in terms {
            out.add_term(MultiIndex::zero(inner_vars), c)?;
        }
        return Ok(out);
    }
    let mut groups: BTreeMap<u32, Vec<(&[u32], &Coefficient)>> = BTreeMap::new();
    for &(e, c) in terms {
        let rest: u32 = e[var..].iter().sum();
        if rest <= cap {
            groups.entry(e[var]).or_default().push((e, c));
        }
    }
    let Some((&top, _)) = groups.last_key_value() else {
        return Ok(FormalSeries::zero(inner_vars, cap));
    };
    let mut acc = horner(&groups[&top], var + 1, cap - top, inner, inner_vars)?;
    for e in (0..top).rev() {
        acc = acc.mul_capped(&inner[var], cap - e)?;
        if let Some(g) = groups.get(&e) {
            acc = acc.add(&horner(g, var + 1, cap - e, inner, inner_vars)?)?;
        }
    }
    Ok(acc)
}

/// The inverse germ, by the fixed point w = A⁻¹(x − û(w)) where û is the
/// nonlinear part of `u`. Each sweep fixes one more degree.
pub fn compositional_inverse(u: &GermMap) -> Result<GermMap> {
    let n = u.nvars();
    let order = u.order();
    let mode = u.mode();
    let a = u.linear_part();
    let a_inv = a.inverse()?.ok_or(SeriesError::SingularLinearPart)?;
    let nonlinear: Vec<FormalSeries> = u
        .components()
        .iter()
        .map(|c| {
            let mut s = c.clone();
            for j in 0..n {
                s.set(MultiIndex::unit(n, j), mode.zero());
            }
            s
        })
        .collect();
    let mut w = GermMap::linear(&a_inv, order);
    for d in 2..=order {
        let correction: Vec<FormalSeries> = nonlinear
            .iter()
            .map(|s| substitute(s, w.components(), d))
            .collect::<Result<_>>()?;
        let x_minus = GermMap::identity(n, d, mode)
            .components()
            .iter()
            .zip(&correction)
            .map(|(x, c)| x.sub(c))
            .collect::<Result<Vec<_>>>()?;
        let next = GermMap { components: x_minus }.left_mul(&a_inv)?;
        w = GermMap {
            components: next
                .into_components()
                .into_iter()
                .map(|c| {
                    let mut full = FormalSeries::zero(n, order);
                    for (k, v) in c.terms() {
                        full.set(k.clone(), v.clone());
                    }
                    full
                })
                .collect(),
        };
    }
    Ok(w)
}

/// `g` composed with itself `k` times (k ≥ 1).
pub fn iterate(g: &GermMap, k: u32) -> Result<GermMap> {
    let mut out = g.clone();
    for _ in 1..k {
        out = compose(g, &out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::root_of_unity;

    fn one_var(order: u32, terms: &[(u32, Coefficient)]) -> GermMap {
        let s = FormalSeries::from_terms(
            1,
            order,
            terms.iter().map(|(e, c)| (MultiIndex::new(vec![*e]), c.clone())),
        )
        .unwrap();
        GermMap::new(vec![s]).unwrap()
    }

    fn ints(order: u32, terms: &[(u32, i64)]) -> GermMap {
        one_var(order, &terms.iter().map(|&(e, c)| (e, Coefficient::int(c))).collect::<Vec<_>>())
    }

    #[test]
    fn identity_is_neutral() {
        let u = ints(6, &[(1, 3), (2, -1), (5, 2)]);
        let id = GermMap::identity(1, 6, Mode::Exact);
        assert_eq!(compose(&u, &id).unwrap(), u);
        assert_eq!(compose(&id, &u).unwrap(), u);
    }

    #[test]
    fn self_composition_of_quadratic() {
        let lam = root_of_unity(5, 1);
        let u = one_var(2, &[(1, lam.clone()), (2, Coefficient::one())]);
        let uu = compose(&u, &u).unwrap();
        let l2 = lam.try_mul(&lam).unwrap();
        let expected = one_var(2, &[(1, l2.clone()), (2, lam.try_add(&l2).unwrap())]);
        assert_eq!(uu, expected);
    }

    #[test]
    fn inverse_of_z_plus_z_squared() {
        let u = ints(4, &[(1, 1), (2, 1)]);
        let inv = compositional_inverse(&u).unwrap();
        assert_eq!(inv, ints(4, &[(1, 1), (2, -1), (3, 2), (4, -5)]));
        assert!(compose(&u, &inv).unwrap().is_identity());
        assert!(compose(&inv, &u).unwrap().is_identity());
    }

    #[test]
    fn linear_inverse() {
        let u = one_var(5, &[(1, Coefficient::int(3))]);
        assert_eq!(
            compositional_inverse(&u).unwrap(),
            one_var(5, &[(1, Coefficient::rational(1, 3))])
        );
        let zero = GermMap::zero(1, 4);
        assert_eq!(compositional_inverse(&zero), Err(SeriesError::SingularLinearPart));
    }

    #[test]
    fn nonzero_constant_rejected() {
        let s = FormalSeries::from_terms(
            1,
            3,
            vec![(MultiIndex::new(vec![0]), Coefficient::one()), (MultiIndex::new(vec![1]), Coefficient::one())],
        )
        .unwrap();
        assert_eq!(GermMap::new(vec![s]), Err(SeriesError::NonzeroConstant(0)));
    }

    #[test]
    fn two_variable_inverse_round_trip() {
        let x = |a: u32, b: u32| MultiIndex::new(vec![a, b]);
        let c0 = FormalSeries::from_terms(
            2,
            6,
            vec![(x(1, 0), Coefficient::int(2)), (x(0, 1), Coefficient::one()), (x(0, 2), Coefficient::int(3))],
        )
        .unwrap();
        let c1 = FormalSeries::from_terms(
            2,
            6,
            vec![(x(0, 1), Coefficient::one()), (x(2, 1), Coefficient::rational(-1, 2))],
        )
        .unwrap();
        let u = GermMap::new(vec![c0, c1]).unwrap();
        let inv = compositional_inverse(&u).unwrap();
        assert!(compose(&u, &inv).unwrap().is_identity());
        assert!(compose(&inv, &u).unwrap().is_identity());
    }

    #[test]
    fn conjugate_pair_involution() {
        let x = |a: u32, b: u32| MultiIndex::new(vec![a, b]);
        let first = FormalSeries::from_terms(
            2,
            4,
            vec![(x(1, 0), root_of_unity(6, 1)), (x(1, 2), root_of_unity(4, 1))],
        )
        .unwrap();
        let g = GermMap::conjugate_pair(first).unwrap();
        assert!(g.is_conjugate_pair());
        assert_eq!(g.component(1).get(&x(0, 1)), Some(&root_of_unity(6, -1)));
        assert_eq!(g.component(1).get(&x(2, 1)), Some(&root_of_unity(4, -1)));
        assert_eq!(g.involution(), g);
    }
}

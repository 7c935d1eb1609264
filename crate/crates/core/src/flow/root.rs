use crate::coeff::Coefficient;
use crate::series::{iterate, FormalSeries, GermMap, MultiIndex};

use super::{FlowError, Result};

/// Proof that no k-th iterative root exists for the chosen linear branch:
/// at `degree` the coefficient of `x^exponents` in component `component`
/// obeys `alpha · c = beta` with `alpha = 0` and `beta ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionCertificate {
    pub degree: u32,
    pub component: usize,
    pub exponents: MultiIndex,
    pub alpha: Coefficient,
    pub beta: Coefficient,
    /// The root coefficients below `degree`, all uniquely forced except for
    /// the entries listed in `free_choices` (set to zero).
    pub forced_prefix: GermMap,
    pub branch: usize,
    pub root_order: u32,
    pub linear_root: Vec<Coefficient>,
    pub free_choices: Vec<(usize, MultiIndex)>,
}

impl ObstructionCertificate {
    /// Recomputes (alpha, beta) from `u` and the forced prefix by
    /// composition alone: the degree-d coefficient of g^{∘k} is affine in
    /// the unknown, so probing it with 0 and 1 recovers both.
    pub fn replay(&self, u: &GermMap) -> Result<(Coefficient, Coefficient)> {
        let d = self.degree;
        let mode = u.mode();
        let base = extend(&self.forced_prefix, d);
        let mut probe = base.clone().into_components();
        probe[self.component].set(self.exponents.clone(), mode.one());
        let probe = GermMap::new(probe)?;
        let at = |g: &GermMap| -> Result<Coefficient> {
            let gk = iterate(g, self.root_order)?;
            Ok(gk
                .component(self.component)
                .get(&self.exponents)
                .cloned()
                .unwrap_or_else(|| mode.zero()))
        };
        let c0 = at(&base)?;
        let c1 = at(&probe)?;
        let target = u
            .component(self.component)
            .get(&self.exponents)
            .cloned()
            .unwrap_or_else(|| mode.zero());
        Ok((c1.try_sub(&c0)?, target.try_sub(&c0)?))
    }
}

/// Result of an iterative-root search.
#[derive(Clone, Debug, PartialEq)]
pub enum RootOutcome {
    Root(GermMap),
    Obstruction(Box<ObstructionCertificate>),
}

fn extend(g: &GermMap, order: u32) -> GermMap {
    let comps = g
        .components()
        .iter()
        .map(|c| {
            let mut s = FormalSeries::zero(c.nvars(), order);
            for (k, v) in c.terms() {
                s.set(k.clone(), v.clone());
            }
            s
        })
        .collect();
    GermMap::new(comps).expect("extension keeps germ invariants")
}

/// Number of admissible branches of the linear root for `u`.
pub fn branch_count(u: &GermMap, k: u32) -> usize {
    if u.is_conjugate_pair() {
        k as usize
    } else {
        (k as usize).pow(u.nvars() as u32)
    }
}

/// The branch-th choice of diagonal k-th root of J(0).
///
/// In the (z, z̄) chart the second root is the conjugate of the first, so
/// branches index the k roots of the first multiplier. Otherwise branches
/// are read in base k, digit i selecting the root of multiplier i.
pub fn linear_root(u: &GermMap, k: u32, branch: usize) -> Result<Vec<Coefficient>> {
    let j = u.linear_part();
    if !j.is_diagonal() {
        return Err(FlowError::NotDiagonal);
    }
    let count = branch_count(u, k);
    if branch >= count {
        return Err(FlowError::BranchOutOfRange { branch, count });
    }
    let mults = j.diagonal_entries();
    if u.is_conjugate_pair() {
        let a = mults[0].kth_roots(k)?.swap_remove(branch);
        let b = a.conj();
        return Ok(vec![a, b]);
    }
    let mut digits = branch;
    let mut out = Vec::with_capacity(mults.len());
    for lam in &mults {
        out.push(lam.kth_roots(k)?.swap_remove(digits % k as usize));
        digits /= k as usize;
    }
    Ok(out)
}

/// Solves g^{∘k} = u degree by degree for `g` with the branch-th linear root.
///
/// At degree d the unknown coefficient g_{s,m} enters the degree-d part of
/// g^{∘k} as α·g_{s,m} with α = Σ_{j<k} a_s^{k-1-j} (a^m)^j, where a is the
/// linear root. α = 0 with a nonzero right-hand side yields a certificate
/// (exact mode only); α = 0 with a zero right-hand side is a free choice,
/// taken as zero.
pub fn iterative_root(u: &GermMap, k: u32, order: u32, branch: usize) -> Result<RootOutcome> {
    if k < 2 {
        return Err(FlowError::InvalidRootOrder(k));
    }
    let n = u.nvars();
    let mode = u.mode();
    let tol = mode.tolerance();
    let order = order.min(u.order());
    let a = linear_root(u, k, branch)?;
    let mut g: Vec<FormalSeries> = (0..n)
        .map(|i| {
            let mut s = FormalSeries::zero(n, order);
            s.set(MultiIndex::unit(n, i), a[i].clone());
            s
        })
        .collect();
    let mut free_choices = Vec::new();
    for d in 2..=order {
        let current = GermMap::new(g.iter().map(|c| c.truncate(d)).collect())?;
        let gk = iterate(&current, k)?;
        for s in 0..n {
            for m in MultiIndex::of_degree(n, d) {
                let mut am = mode.one();
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        am = am.try_mul(&a[i].pow(e as i64)?)?;
                    }
                }
                let mut alpha = mode.zero();
                for j in 0..k {
                    let term = a[s].pow((k - 1 - j) as i64)?.try_mul(&am.pow(j as i64)?)?;
                    alpha = alpha.try_add(&term)?;
                }
                let target = u.component(s).get(&m).cloned().unwrap_or_else(|| mode.zero());
                let known = gk.component(s).get(&m).cloned().unwrap_or_else(|| mode.zero());
                let beta = target.try_sub(&known)?;
                let alpha_vanishes = if mode.is_exact() {
                    alpha.is_zero()
                } else {
                    alpha.abs_f64() <= tol
                };
                if !alpha_vanishes {
                    g[s].set(m, beta.try_div(&alpha)?);
                    continue;
                }
                let beta_vanishes = if mode.is_exact() {
                    beta.is_zero()
                } else {
                    beta.abs_f64() <= tol
                };
                if beta_vanishes {
                    free_choices.push((s, m));
                    continue;
                }
                if !mode.is_exact() {
                    return Err(FlowError::NumericResonance {
                        degree: d,
                        component: s,
                        exponents: m,
                    });
                }
                let prefix = GermMap::new(g.iter().map(|c| c.truncate(d - 1)).collect())?;
                return Ok(RootOutcome::Obstruction(Box::new(ObstructionCertificate {
                    degree: d,
                    component: s,
                    exponents: m,
                    alpha,
                    beta,
                    forced_prefix: prefix,
                    branch,
                    root_order: k,
                    linear_root: a,
                    free_choices,
                })));
            }
        }
    }
    Ok(RootOutcome::Root(GermMap::new(g)?))
}

/// Runs [`iterative_root`] on every branch concurrently; results are
/// returned in branch order.
pub fn iterative_root_all_branches(u: &GermMap, k: u32, order: u32) -> Vec<Result<RootOutcome>> {
    let count = branch_count(u, k);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..count)
            .map(|b| scope.spawn(move || iterative_root(u, k, order, b)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("root search thread panicked"))
            .collect()
    })
}

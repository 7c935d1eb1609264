use std::collections::HashMap;
use std::fmt;

use crate::coeff::{Coefficient, Mode};
use crate::series::MultiIndex;

use super::Result;

/// A multiplicative relation λ_s = Π λ_i^{m_i} with |m| ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceWitness {
    pub s: usize,
    pub m: MultiIndex,
}

impl fmt::Display for ResonanceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda_{} = lambda^{}", self.s + 1, self.m)
    }
}

/// Every resonance of total degree 2..=`max_degree`, ordered by degree, then
/// multi-index, then `s`. Float multipliers are compared within the mode's
/// tolerance.
pub fn resonance_check(multipliers: &[Coefficient], max_degree: u32) -> Result<Vec<ResonanceWitness>> {
    let tol = multipliers
        .iter()
        .find(|c| !c.is_exact())
        .map(|c| c.mode().tolerance())
        .unwrap_or(0.0);
    resonance_check_with_tolerance(multipliers, max_degree, tol)
}

pub fn resonance_check_with_tolerance(
    multipliers: &[Coefficient],
    max_degree: u32,
    tolerance: f64,
) -> Result<Vec<ResonanceWitness>> {
    let n = multipliers.len();
    let mode = multipliers.iter().map(Coefficient::mode).find(|m| !m.is_exact()).unwrap_or(Mode::Exact);
    let mut out = Vec::new();
    let mut prev: HashMap<MultiIndex, Coefficient> = (0..n)
        .map(|i| (MultiIndex::unit(n, i), multipliers[i].clone()))
        .collect();
    for d in 2..=max_degree {
        let mut cur = HashMap::with_capacity(prev.len() * n);
        for m in MultiIndex::of_degree(n, d) {
            let j = m.exponents().iter().position(|&e| e > 0).expect("degree ≥ 2");
            let lower = m.decrement(j).expect("positive exponent");
            let value = prev[&lower].try_mul(&multipliers[j])?;
            for (s, lam) in multipliers.iter().enumerate() {
                let hit = if mode.is_exact() {
                    lam == &value
                } else {
                    lam.approx_eq(&value, tolerance)
                };
                if hit {
                    out.push(ResonanceWitness { s, m: m.clone() });
                }
            }
            cur.insert(m, value);
        }
        prev = cur;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::root_of_unity;

    #[test]
    fn contracting_real_multiplier_has_no_resonance() {
        assert!(resonance_check(&[Coefficient::rational(1, 2)], 10).unwrap().is_empty());
    }

    #[test]
    fn root_of_unity_resonates_at_2m_plus_1() {
        for m in 1..=6u32 {
            let w = resonance_check(&[root_of_unity(2 * m, 1)], 2 * m + 1).unwrap();
            assert_eq!(w.last().unwrap().m, MultiIndex::new(vec![2 * m + 1]));
            assert_eq!(w.len(), 1);
        }
    }

    #[test]
    fn square_relation() {
        let w = resonance_check(&[Coefficient::int(2), Coefficient::int(4)], 3).unwrap();
        assert_eq!(w, vec![ResonanceWitness { s: 1, m: MultiIndex::new(vec![2, 0]) }]);
    }
}

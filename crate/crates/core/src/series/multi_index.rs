use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial.
///
/// Ordered by total degree first, then lexicographically with larger
/// leading exponents first, so `x^2 < x*y < y^2` within degree two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    degree: u32,
    exps: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        MultiIndex { degree, exps }
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex {
            degree: 0,
            exps: vec![0; nvars],
        }
    }

    /// The index of the variable `x_var`.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        MultiIndex { degree: 1, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Lowers the exponent of `var` by one; `None` when it is already zero.
    pub fn decrement(&self, var: usize) -> Option<Self> {
        if self.exps[var] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[var] -= 1;
        Some(MultiIndex {
            degree: self.degree - 1,
            exps,
        })
    }

    /// Reverses the variable order (the index part of the (z, z̄) involution).
    pub fn reversed(&self) -> Self {
        let mut exps = self.exps.clone();
        exps.reverse();
        MultiIndex {
            degree: self.degree,
            exps,
        }
    }

    /// All indices in `nvars` variables of total degree exactly `d`, ascending.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == nvars {
                prefix.push(left);
                out.push(MultiIndex::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(nvars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            return out;
        }
        rec(nvars, d, &mut Vec::new(), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

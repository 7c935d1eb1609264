//! Constructors for germs that recur in examples and tests.

use crate::coeff::{root_of_unity, Coefficient, Mode, Rational};
use crate::series::{FormalSeries, GermMap, MultiIndex};

/// ζ_{2m} z + z^{2m+1}: a rotation by π/m with a resonant perturbation.
pub fn resonant_rotation_germ(m: u32, order: u32) -> GermMap {
    assert!(m >= 1);
    let s = FormalSeries::from_terms(
        1,
        order,
        vec![
            (MultiIndex::new(vec![1]), root_of_unity(2 * m, 1)),
            (MultiIndex::new(vec![2 * m + 1]), Coefficient::one()),
        ],
    )
    .expect("one-variable terms");
    GermMap::new(vec![s]).expect("germ invariants")
}

/// ζ_{2m}(z + y^{2m+1}) with y = (z − z̄)/(2i), paired with its conjugate in
/// the (z, z̄) chart. In real coordinates this is the rotation by π/m
/// composed with the shear (x, y) ↦ (x + y^{2m+1}, y).
pub fn rotated_shear_germ(m: u32, order: u32) -> GermMap {
    assert!(m >= 1);
    let var = |i| FormalSeries::variable(2, order, i, Mode::Exact);
    let (z, zbar) = (var(0), var(1));
    // 1/(2i) = -i/2
    let half_over_i = root_of_unity(4, 1).neg().try_mul(&Coefficient::rational(1, 2)).expect("exact");
    let y = z.sub(&zbar).and_then(|d| d.scale(&half_over_i)).expect("exact");
    let shear = y.pow(2 * m + 1, Mode::Exact).expect("exact");
    let first = z
        .add(&shear)
        .and_then(|s| s.scale(&root_of_unity(2 * m, 1)))
        .expect("exact");
    GermMap::conjugate_pair(first).expect("pair invariants")
}

/// e^x − 1 = Σ_{k≥1} x^k / k!.
pub fn exp_minus_one_germ(order: u32) -> GermMap {
    let mut fact = Rational::from_integer(1.into());
    let terms = (1..=order).map(|k| {
        fact *= Rational::from_integer((k as i64).into());
        (MultiIndex::new(vec![k]), Coefficient::from(fact.recip()))
    });
    GermMap::new(vec![FormalSeries::from_terms(1, order, terms).expect("terms")]).expect("germ")
}

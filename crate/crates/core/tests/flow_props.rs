mod common;

use common::{check_certificate, germ_from, higher_terms, naive_compose, naive_iterate, newton_log, parabolic_germ, rat};
use germflow::coeff::{root_of_unity, Coefficient, Mode};
use germflow::flow::germs::exp_minus_one_germ;
use germflow::flow::{
    evaluate_flow, exp_flow, exp_map, flow_family, formal_log, iterative_root, verify_group_law, FlowError,
    FlowFamily, RootOutcome,
};
use germflow::series::{FormalSeries, GermMap, MultiIndex, VectorFieldGerm};
use proptest::prelude::*;

fn one_var_field(order: u32, terms: &[(u32, Coefficient)]) -> VectorFieldGerm {
    VectorFieldGerm::new(vec![FormalSeries::from_terms(
        1,
        order,
        terms.iter().map(|(e, c)| (MultiIndex::new(vec![*e]), c.clone())),
    )
    .unwrap()])
    .unwrap()
}

/// v = O(x²), or in two variables a field whose linear part is the
/// nilpotent block [[0, a], [0, 0]].
fn nilpotent_field(n: usize, order: u32) -> impl Strategy<Value = VectorFieldGerm> {
    (-2i64..=2, higher_terms(n, order)).prop_map(move |(a, h)| {
        let mut lin = vec![Coefficient::zero(); n * n];
        if n == 2 {
            lin[1] = Coefficient::int(a);
        }
        germ_from(n, order, &lin, &h).into_vector_field()
    })
}

fn time() -> impl Strategy<Value = Coefficient> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

#[test]
fn flow_of_x_squared_is_a_moebius_map() {
    // ẋ = x² gives x/(1 − t x) = Σ t^{k−1} x^k
    let v = one_var_field(10, &[(2, Coefficient::one())]);
    let t = rat(-3, 2);
    let phi = exp_flow(&v, &t, 10).unwrap();
    for k in 1..=10u32 {
        assert_eq!(phi.component(0).coeff(&[k]), Some(&t.pow(k as i64 - 1).unwrap()), "x^{k}");
    }
    let back = naive_compose(&exp_flow(&v, &Coefficient::one(), 10).unwrap(), &exp_flow(&v, &Coefficient::int(-1), 10).unwrap());
    assert!(back.is_identity());
}

#[test]
fn generator_of_exp_minus_one() {
    let u = exp_minus_one_germ(8);
    let v = formal_log(&u, 8).unwrap();
    let oracle = newton_log(&u, 8);
    assert_eq!(v.components()[0], oracle[0]);
    let frozen = [(2, 1, 2), (3, -1, 12), (4, 1, 48), (5, -1, 180), (6, 11, 8640), (7, -1, 6720), (8, -11, 241920)];
    for (k, p, q) in frozen {
        assert_eq!(v.component(0).coeff(&[k]), Some(&rat(p, q)), "x^{k}");
    }
}

#[test]
fn half_iterate_of_a_contraction_is_exact() {
    let u = germ_from(1, 10, &[rat(1, 2)], &[vec![Coefficient::one()], vec![Coefficient::zero(); 8]].concat());
    let family = flow_family(&u, 10).unwrap();
    let residual = verify_group_law(&family, &rat(1, 2), &rat(1, 2), 10).unwrap();
    assert!(residual.is_zero());
    let half = evaluate_flow(&family, &rat(1, 2), 10).unwrap();
    assert!(half.mode().is_exact());
    assert_eq!(naive_compose(&half, &half), u);
}

#[test]
fn float_time_moves_the_family_to_float() {
    let u = germ_from(1, 6, &[rat(1, 3)], &[Coefficient::one(), Coefficient::zero(), Coefficient::zero(), Coefficient::zero(), Coefficient::zero()]);
    let family = flow_family(&u, 6).unwrap();
    let t = Mode::Float { precision: 128 }.rational(germflow::coeff::Rational::new(1.into(), 3.into()));
    let phi = evaluate_flow(&family, &t, 6).unwrap();
    assert!(!phi.mode().is_exact());
    let cubed = naive_iterate(&phi, 3);
    assert!(cubed.sub(&u.to_mode(phi.mode()).unwrap()).unwrap().max_abs() < 1e-30);
}

#[test]
fn unit_multiplier_without_parabolic_structure_is_rejected() {
    let u = germ_from(1, 4, &[Coefficient::int(-1)], &[Coefficient::one(), Coefficient::zero(), Coefficient::zero()]);
    assert!(matches!(flow_family(&u, 4), Err(FlowError::UnitMultiplier(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lie_flow_is_a_semigroup(v in prop_oneof![nilpotent_field(1, 8), nilpotent_field(2, 6)], s in time(), t in time()) {
        let order = v.order();
        let lhs = naive_compose(&exp_flow(&v, &s, order).unwrap(), &exp_flow(&v, &t, order).unwrap());
        let rhs = exp_flow(&v, &s.try_add(&t).unwrap(), order).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn log_of_exp_is_identity(v in prop_oneof![nilpotent_field(1, 16).prop_map(|v| (v, 16u32)), nilpotent_field(2, 7).prop_map(|v| (v, 7u32))]) {
        let (v, order) = v;
        if v.linear_part().is_zero() {
            let back = formal_log(&exp_map(&v, order).unwrap(), order).unwrap();
            prop_assert_eq!(back, v);
        }
    }

    #[test]
    fn exp_of_log_is_identity(u in prop_oneof![parabolic_germ(1, 16).prop_map(|u| (u, 16u32)), parabolic_germ(2, 7).prop_map(|u| (u, 7u32))]) {
        let (u, order) = u;
        let v = formal_log(&u, order).unwrap();
        prop_assert_eq!(exp_map(&v, order).unwrap(), u.clone());
        prop_assert_eq!(v.components().to_vec(), newton_log(&u, order));
    }

    #[test]
    fn hyperbolic_family_satisfies_flow_axioms(p in 1i64..=4, q in 2i64..=5, h in higher_terms(1, 8)) {
        prop_assume!(p < q);
        let u = germ_from(1, 8, &[rat(p, q)], &h);
        let family = flow_family(&u, 8).unwrap();
        prop_assert_eq!(family.kind(), "hyperbolic");
        prop_assert!(evaluate_flow(&family, &Coefficient::zero(), 8).unwrap().is_identity());
        prop_assert_eq!(evaluate_flow(&family, &Coefficient::one(), 8).unwrap(), u.clone());
        let times = [rat(1, 2), Coefficient::int(2), Coefficient::int(-1), rat(3, 2)];
        for s in &times {
            let phi = evaluate_flow(&family, s, 8).unwrap();
            prop_assert!(phi.components().iter().all(|c| c.constant_term().is_none()));
            for t in &times {
                prop_assert!(verify_group_law(&family, s, t, 8).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn parabolic_family_satisfies_flow_axioms(u in parabolic_germ(1, 10), s in time(), t in time()) {
        let family = flow_family(&u, 10).unwrap();
        let is_parabolic = matches!(family, FlowFamily::Parabolic { .. });
        prop_assert!(is_parabolic);
        prop_assert_eq!(evaluate_flow(&family, &Coefficient::one(), 10).unwrap(), u);
        prop_assert!(verify_group_law(&family, &s, &t, 10).unwrap().is_zero());
    }

    #[test]
    fn roots_are_sound(
        root_lin in (1i64..=3, 1i64..=3, any::<bool>()),
        parabolic in any::<bool>(),
        h in higher_terms(1, 7),
        k in 2u32..=3,
    ) {
        let (p, q, neg) = root_lin;
        let a = if parabolic { Coefficient::one() } else { rat(if neg { -p } else { p }, q + 1) };
        let u = germ_from(1, 7, &[a.pow(k as i64).unwrap()], &h);
        for branch in 0..k as usize {
            match iterative_root(&u, k, 7, branch) {
                Ok(RootOutcome::Root(g)) => prop_assert_eq!(naive_iterate(&g, k), u.clone()),
                Ok(RootOutcome::Obstruction(c)) => {
                    if let Err(msg) = check_certificate(&u, &c) {
                        prop_assert!(false, "{}", msg);
                    }
                }
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }

    #[test]
    fn certificates_replay_on_rotations(q in 2u32..=6, p in 1i64..=5, h in higher_terms(1, 7)) {
        let u = germ_from(1, 7, &[root_of_unity(q, p)], &h);
        for branch in 0..2 {
            match iterative_root(&u, 2, 7, branch).unwrap() {
                RootOutcome::Root(g) => prop_assert_eq!(naive_iterate(&g, 2), u.clone()),
                RootOutcome::Obstruction(c) => {
                    if let Err(msg) = check_certificate(&u, &c) {
                        prop_assert!(false, "{}", msg);
                    }
                    prop_assert_eq!(c.replay(&u).unwrap(), (c.alpha.clone(), c.beta.clone()));
                }
            }
        }
    }

    #[test]
    fn parabolic_root_is_the_flow_at_one_over_k(u in parabolic_germ(1, 9), k in 2u32..=4) {
        let RootOutcome::Root(g) = iterative_root(&u, k, 9, 0).unwrap() else {
            panic!("parabolic germs have roots")
        };
        let family = flow_family(&u, 9).unwrap();
        prop_assert_eq!(g, evaluate_flow(&family, &rat(1, k as i64), 9).unwrap());
    }
}

#[test]
fn two_variable_parabolic_root_matches_flow() {
    let u = GermMap::new(vec![
        FormalSeries::from_terms(
            2,
            6,
            [(vec![1, 0], rat(1, 1)), (vec![0, 2], rat(1, 1)), (vec![1, 1], rat(-1, 2))]
                .map(|(e, c)| (MultiIndex::new(e), c)),
        )
        .unwrap(),
        FormalSeries::from_terms(2, 6, [(vec![0, 1], rat(1, 1)), (vec![2, 0], rat(2, 3))].map(|(e, c)| (MultiIndex::new(e), c)))
            .unwrap(),
    ])
    .unwrap();
    let RootOutcome::Root(g) = iterative_root(&u, 3, 6, 0).unwrap() else {
        panic!("root expected")
    };
    assert_eq!(naive_iterate(&g, 3), u);
    assert_eq!(g, evaluate_flow(&flow_family(&u, 6).unwrap(), &rat(1, 3), 6).unwrap());
}

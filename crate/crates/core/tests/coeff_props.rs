mod common;

use common::rat;
use germflow::coeff::{
    cyclotomic_polynomial, embed_complex, root_of_unity, totient, Coefficient, Cyclotomic, Rational,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

const CONDUCTORS: [u32; 8] = [1, 3, 4, 5, 6, 8, 10, 12];

/// Σ r_j ζ_k^j with small rational weights.
fn cyclotomic_in(k: u32) -> impl Strategy<Value = Coefficient> {
    prop::collection::vec((-4i64..=4, 1i64..=3), k as usize).prop_map(move |ws| {
        ws.iter().enumerate().fold(Coefficient::zero(), |acc, (j, &(n, d))| {
            acc.try_add(&root_of_unity(k, j as i64).try_mul(&rat(n, d)).unwrap()).unwrap()
        })
    })
}

fn any_cyclotomic() -> impl Strategy<Value = Coefficient> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(cyclotomic_in)
}

fn raw(c: &Coefficient) -> Cyclotomic {
    match c {
        Coefficient::Cyclotomic(x) => x.clone(),
        Coefficient::Rational(r) => Cyclotomic::from_rational(1, r.clone()),
        other => panic!("not cyclotomic: {other:?}"),
    }
}

#[test]
fn roots_of_unity_are_primitive() {
    for k in 1..=24u32 {
        for j in 1..=k as i64 {
            if (j as u32).gcd(&k) != 1 {
                continue;
            }
            let z = root_of_unity(k, j);
            assert!(z.pow(k as i64).unwrap().is_one(), "zeta({k})^{j} to the {k}");
            for i in 1..k as i64 {
                assert!(!z.pow(i).unwrap().is_one(), "zeta({k})^{j} has order dividing {i}");
            }
        }
    }
}

#[test]
fn cyclotomic_polynomials_match_factorisation() {
    // x^k − 1 = Π_{d | k} Φ_d(x)
    for k in 1..=24u32 {
        let mut prod = vec![BigInt::from(1)];
        for d in (1..=k).filter(|d| k % d == 0) {
            let phi = cyclotomic_polynomial(d);
            assert_eq!(phi.len() - 1, totient(d), "deg Φ_{d}");
            let mut next = vec![BigInt::from(0); prod.len() + phi.len() - 1];
            for (i, a) in prod.iter().enumerate() {
                for (j, b) in phi.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            prod = next;
        }
        let mut expected = vec![BigInt::from(0); k as usize + 1];
        expected[0] = BigInt::from(-1);
        expected[k as usize] = BigInt::from(1);
        assert_eq!(prod, expected, "k = {k}");
    }
}

#[test]
fn square_roots_of_rationals_are_exact() {
    let r = Coefficient::rational(1, 2).pow_rational(&Rational::new(1.into(), 2.into())).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.pow(2).unwrap(), Coefficient::rational(1, 2));
    let q = Coefficient::rational(9, 4).pow_rational(&Rational::new(1.into(), 2.into())).unwrap();
    assert_eq!(q, Coefficient::rational(3, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in any_cyclotomic(), b in any_cyclotomic(), c in any_cyclotomic()) {
        let ab_c = a.try_add(&b).unwrap().try_add(&c).unwrap();
        let a_bc = a.try_add(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let m1 = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let m2 = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(m1, m2);
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        if !a.is_zero() {
            prop_assert!(a.try_mul(&a.inv().unwrap()).unwrap().is_one());
        }
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn lifting_commutes_with_arithmetic(
        ka in prop::sample::select(vec![3u32, 4, 6]),
        kb in prop::sample::select(vec![4u32, 5, 8]),
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut pick = |k: u32| {
            (0..k as i64).fold(Cyclotomic::from_rational(k, Rational::from_integer(0.into())), |acc, j| {
                let w = Rational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into());
                acc.add(&Cyclotomic::root_of_unity(k, j).scale(&w))
            })
        };
        let (a, b) = (pick(ka), pick(kb));
        let l = ka.lcm(&kb) * 2;
        prop_assert_eq!(a.add(&b).lift(l), a.lift(l).add(&b.lift(l)));
        prop_assert_eq!(a.mul(&b).lift(l), a.lift(l).mul(&b.lift(l)));
        prop_assert_eq!(a.lift(l).mul(&b.lift(l)).conductor(), l);
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in any_cyclotomic(), b in any_cyclotomic()) {
        prop_assert_eq!(a.try_mul(&b).unwrap().conj(), a.conj().try_mul(&b.conj()).unwrap());
        prop_assert_eq!(raw(&a.conj()).conj(), raw(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn embedding_is_a_ring_morphism(a in any_cyclotomic(), b in any_cyclotomic()) {
        let p = 192;
        let tol = 1e-40;
        let (ea, eb) = (embed_complex(&a, p), embed_complex(&b, p));
        prop_assert!(embed_complex(&a.try_add(&b).unwrap(), p).approx_eq(&ea.add(&eb), tol));
        prop_assert!(embed_complex(&a.try_mul(&b).unwrap(), p).approx_eq(&ea.mul(&eb), tol));
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive};
use proptest::prelude::*;
use towerlab::invariants::{
    deficiency, diophantine_power, geometric_genus, geometric_genus_recursive, lambda_beta_from_core,
    nb_convert, sharp_genus, zeta_from_betas, Direction, GenusInputs,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn genus_inputs() -> impl Strategy<Value = GenusInputs> {
    (2u32..=5, 0i64..40, 0i64..6, prop::collection::vec(0i64..50, 11))
        .prop_map(|(d, gamma2, g1, deltas)| GenusInputs::new(gamma2, g1, d, &deltas))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nb_round_trip(vals in prop::collection::vec((-50i64..50, 1i64..20), 12)) {
        let b: BTreeMap<u32, BigRational> =
            vals.iter().enumerate().map(|(i, &(n, d))| (i as u32 + 1, rat(n, d))).collect();
        let n = nb_convert(&b, Direction::BToN, 12).unwrap();
        prop_assert_eq!(nb_convert(&n, Direction::NToB, 12).unwrap(), b.clone());
        // direct sum as oracle
        for r in 1..=12u32 {
            let s: BigRational = (1..=r)
                .filter(|e| r % e == 0)
                .map(|e| &b[&e] * BigRational::from_integer(e.into()))
                .sum();
            prop_assert_eq!(&n[&r], &s);
        }
    }

    #[test]
    fn lambda_beta_consistent(core in 1u64..200, r0 in 1u32..7, num in 1i64..50, den in 1i64..50, extra in 0u32..8) {
        let inv = lambda_beta_from_core(core, r0, &rat(num, den), r0 + extra);
        prop_assert!(inv.is_consistent());
        prop_assert_eq!(nb_convert(&inv.beta, Direction::BToN, r0 + extra).unwrap(), inv.lambda.clone());
        let zeta = zeta_from_betas(&inv.beta).unwrap();
        prop_assert!(zeta.starts_with("(1-T)^(-"));
    }

    #[test]
    fn deficiency_in_unit_interval(q in prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(9), Just(25)],
                                   core in 1u64..40, r0 in 1u32..5, frac in 0.0f64..1.0) {
        let bound = ((q as f64).powi(r0 as i32).sqrt() - 1.0) / core as f64;
        let den = 1_000_000i64;
        let num = (frac * bound * den as f64).floor() as i64;
        let ell = rat(num, den);
        prop_assume!(ell.to_f64().unwrap() <= bound);
        let inv = lambda_beta_from_core(core, r0, &ell, r0);
        let delta = deficiency(&inv.beta, q).unwrap();
        prop_assert!((0.0..=1.0).contains(&delta), "delta = {}", delta);
    }

    #[test]
    fn recursion_matches_closed_form(inputs in genus_inputs(), n in 1usize..=12) {
        prop_assert_eq!(
            geometric_genus(&inputs, n).unwrap(),
            geometric_genus_recursive(&inputs, n).unwrap()
        );
        if n >= 2 {
            let prev = geometric_genus(&inputs, n - 1).unwrap();
            let sharp = sharp_genus(&inputs, &prev, n);
            prop_assert!(sharp >= geometric_genus(&inputs, n).unwrap());
        }
    }

    #[test]
    fn normalized_genus_is_monotone(d in 2u32..=5, g1 in 0i64..5, extra in 0i64..20) {
        // gamma2 - 1 >= d (g1 - 1) and no singularities
        let gamma2 = 1 + i64::from(d) * (g1 - 1) + extra;
        prop_assume!(gamma2 >= 0);
        let inputs = GenusInputs::new(gamma2, g1, d, &[0; 11]);
        let dd = BigInt::from(d);
        for n in 1..12usize {
            let a = geometric_genus(&inputs, n).unwrap() - 1;
            let b = geometric_genus(&inputs, n + 1).unwrap() - 1;
            // (g_{n+1} - 1) / d^(n+1) >= (g_n - 1) / d^n
            prop_assert!(b * Pow::pow(&dd, n) >= a * Pow::pow(&dd, n + 1));
        }
    }

    #[test]
    fn diophantine_power_is_minimal(angles in prop::collection::vec(-3.0f64..3.0, 1..4)) {
        let values: Vec<(f64, f64)> = angles.iter().map(|t| (t.cos(), t.sin())).collect();
        if let Ok(n) = diophantine_power(&values, 10_000) {
            let ok = |k: u64| angles.iter().all(|t| (k as f64 * t).cos() > 1e-9);
            prop_assert!(ok(n));
            prop_assert!((1..n).all(|k| !ok(k)));
        }
    }
}

#[test]
fn negative_deficiency_is_reported() {
    let inv = lambda_beta_from_core(100, 1, &rat(1, 1), 1);
    assert!(deficiency(&inv.beta, 2).is_err());
    assert!(inv.beta[&1].is_positive());
}

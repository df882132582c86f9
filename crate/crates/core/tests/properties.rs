//! Invariants of the Ratliff–Rush filtrations and of the quasi-Hilbert
//! analysis on randomly generated semigroups, ideals and modules.

use std::sync::Arc;

use proptest::prelude::*;
use rr_core::qh;
use rr_core::rr::{self, Filtration};
use rr_core::{NormalizedIdeal, NumericalSemigroup};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn semigroup() -> impl Strategy<Value = Arc<NumericalSemigroup>> {
    proptest::collection::vec(3i64..25, 2..5)
        .prop_filter("gcd 1", |g| g.iter().fold(0, |a, &x| gcd(a, x)) == 1)
        .prop_map(|g| Arc::new(NumericalSemigroup::new(&g).unwrap()))
}

/// Semigroup, proper ideal, module and exponent.
fn instance() -> impl Strategy<
    Value = (
        Arc<NumericalSemigroup>,
        NormalizedIdeal,
        NormalizedIdeal,
        u32,
    ),
> {
    semigroup()
        .prop_flat_map(|s| {
            let top = s.frobenius() + s.generators().last().unwrap();
            let elements: Vec<i64> = (1..=top).filter(|&z| s.contains(z)).collect();
            let ideal_gens = proptest::sample::subsequence(elements, 1..4);
            let module = prop_oneof![
                Just(None),
                (-10i64..10).prop_map(|c| Some(vec![c])),
                proptest::collection::vec(-8i64..40, 1..4).prop_map(Some),
            ];
            (Just(s), ideal_gens, module, 1u32..6)
        })
        .prop_map(|(s, gens, module, t)| {
            let ideal = NormalizedIdeal::from_generators(&s, &gens).unwrap();
            let module = match module {
                None => NormalizedIdeal::canonical(&s),
                Some(g) => NormalizedIdeal::from_generators(&s, &g).unwrap(),
            };
            (s, ideal, module, t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn chain_ascends((_s, ideal, module, t) in instance()) {
        let f = Filtration::new(&ideal, &module).unwrap();
        let r = f.reduction().r_x;
        for k in 0..r {
            prop_assert!(f.ring_colon(t, k).is_subset_of(&f.ring_colon(t, k + 1)));
        }
        // Past the reduction number the chain is constant.
        prop_assert_eq!(f.ring_colon(t, r + 1), f.ring_colon(t, r));
        prop_assert_eq!(f.module_colon(t, r + 1), f.module_colon(t, r));
    }

    #[test]
    fn sandwich((_s, ideal, module, t) in instance()) {
        let power = ideal.power(t);
        let closure = rr::rr_closure(&ideal, t).unwrap();
        let rr = rr::rr_ideal(&ideal, t, &module).unwrap();
        prop_assert!(power.is_subset_of(&closure));
        prop_assert!(closure.is_subset_of(&rr));
        prop_assert!(rr.is_subset_of(&ideal.integral_closure_power(t)));
    }

    #[test]
    fn index_bounds((_s, ideal, module, t) in instance()) {
        let f = Filtration::new(&ideal, &module).unwrap();
        let idx = f.indices(t).unwrap();
        prop_assert!(idx.s <= idx.rho);
        prop_assert!(idx.rho <= idx.s_star.saturating_sub(t));
        prop_assert!(idx.s_star <= idx.r_x);
        let next = f.indices(t + 1).unwrap();
        prop_assert!(idx.rho <= next.rho + 1);
    }

    #[test]
    fn filtration_laws((_s, ideal, module, t) in instance()) {
        let f = Filtration::new(&ideal, &module).unwrap();
        let red = f.reduction();
        for b in 1..=2 {
            let lhs = f.rr_ideal(t).unwrap().product(&f.rr_ideal(b).unwrap()).unwrap();
            prop_assert!(lhs.is_subset_of(&f.rr_ideal(t + b).unwrap()));
        }
        // The colon at level n lies above n·v, so past the conductor it stays inside S.
        let c = f.ambient().conductor();
        let n = red.r_x.max(1).max(((c + red.v_min - 1) / red.v_min) as u32);
        prop_assert_eq!(f.rr_ideal(n + 1).unwrap(), f.rr_ideal(n).unwrap().shift(red.v_min));
    }

    #[test]
    fn module_choice_invariance((s, ideal, module, t) in instance(), c in -20i64..20) {
        let rr = rr::rr_ideal(&ideal, t, &module).unwrap();
        prop_assert_eq!(rr::rr_ideal(&ideal, t, &module.shift(c)).unwrap(), rr);
        let unit = NormalizedIdeal::unit(&s);
        let closure = rr::rr_closure(&ideal, t).unwrap();
        prop_assert_eq!(rr::rr_ideal(&ideal, t, &unit.shift(c)).unwrap(), closure.clone());
        if s.is_symmetric() {
            let k = NormalizedIdeal::canonical(&s);
            prop_assert_eq!(rr::rr_ideal(&ideal, t, &k).unwrap(), closure);
        }
    }

    #[test]
    fn canonical_module_facts(s in semigroup(), t in 1u32..7) {
        let m = NormalizedIdeal::maximal(&s);
        let k = NormalizedIdeal::canonical(&s);
        prop_assert_eq!(rr::rr_ideal(&m, 1, &k).unwrap(), m.clone());
        prop_assert!(!rr::rr_ideal(&m, t, &k).unwrap().contains(0));
    }

    #[test]
    fn series_structure(s in semigroup()) {
        let window = qh::stable_window(&s).unwrap();
        let r = window.r_x;
        let n_max = window.n_star.max(r) + 5;
        let series = qh::e_series(&s, n_max).unwrap();
        let w = window.window.len() as u64;
        let at = |n: u32| series.tilde[(n - 1) as usize];
        for n in r.max(1)..n_max {
            prop_assert!(at(n + 1) >= at(n));
            prop_assert!(at(n) <= w);
        }
        for n in window.n_star.max(1)..=n_max {
            prop_assert_eq!(at(n), w);
        }
        // Beyond r both series coincide, so both are eventually constant.
        for n in r.max(1)..=n_max {
            prop_assert_eq!(series.power[(n - 1) as usize], at(n));
        }
        let depth = qh::depth_positive(&s).unwrap();
        if depth.positive {
            prop_assert_eq!(&series.tilde, &series.power);
            let all_zero = series.tilde.iter().all(|&x| x == 0);
            prop_assert!(all_zero || w > 0);
        } else {
            prop_assert!(depth.witness.is_some());
        }
        if s.is_symmetric() {
            prop_assert_eq!(w, 0);
        }
    }

    #[test]
    fn series_bounded_by_integral_closure(s in semigroup()) {
        let m = NormalizedIdeal::maximal(&s);
        let series = qh::e_series(&s, 8).unwrap();
        for n in 1..=8u32 {
            let gap = m.integral_closure_power(n).quotient_length(&m.power(n)).unwrap();
            prop_assert!(series.tilde[(n - 1) as usize] <= gap);
        }
    }

    #[test]
    fn larger_modules_grow_faster(s in semigroup(), extra in proptest::collection::vec(-5i64..30, 1..3)) {
        let m = NormalizedIdeal::maximal(&s);
        let k = NormalizedIdeal::canonical(&s);
        let bigger = k.sum(&NormalizedIdeal::from_generators(&s, &extra).unwrap()).unwrap();
        let series = qh::e_series(&s, 6).unwrap();
        for n in 1..=6u32 {
            let rk = rr::rr_ideal(&m, n, &k).unwrap();
            let rb = rr::rr_ideal(&m, n, &bigger).unwrap();
            if rk.is_subset_of(&rb) {
                let closure = rr::rr_closure(&m, n).unwrap();
                prop_assert!(rb.quotient_length(&closure).unwrap() >= series.tilde[(n - 1) as usize]);
            }
        }
    }

    #[test]
    fn hilbert_mod_x_sums_to_multiplicity(s in semigroup()) {
        let h = qh::hilbert_fn_mod_x(&s).unwrap();
        prop_assert_eq!(h[0], 1);
        prop_assert_eq!(h.iter().sum::<u64>(), s.multiplicity() as u64);
        prop_assert!(h.iter().all(|&c| c > 0));
    }

    #[test]
    fn rossi_identity(s in semigroup()) {
        let m = NormalizedIdeal::maximal(&s);
        let red = rr::reduction_index(&m).unwrap();
        let (v, r) = (red.v_min, red.r_x);
        let unit = NormalizedIdeal::unit(&s);
        let mr = m.power(r);
        let stable = mr.colon_z(&mr).unwrap();
        for n in r..r + 3 {
            let lhs = stable.shift(n as i64 * v).intersect(&unit).unwrap();
            prop_assert_eq!(lhs, mr.shift((n - r) as i64 * v));
        }
    }
}

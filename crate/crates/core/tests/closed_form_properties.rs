mod common;

use proptest::prelude::*;

use signed_sumset::harness::{digit_minimizer_checks, DigitSuite};
use signed_sumset::{
    admissible_divisors, divisors, is_prime, min_sumset_size, predicted_signed_minimum,
    signed_sumset_bound, zp2_equality, zp2_table_prediction, DigitProfile, GroupSpec, PowerSplit,
};

fn odd_primes(max: u64) -> Vec<u64> {
    (3..=max).filter(|&p| is_prime(p)).collect()
}

fn elementary(p: u64, r: u32) -> GroupSpec {
    GroupSpec::with_order_cap(vec![p as usize; r as usize], usize::MAX).unwrap()
}

fn group_and_m() -> impl Strategy<Value = (GroupSpec, u64)> {
    (2usize..=200).prop_flat_map(|n| {
        let groups = GroupSpec::all_of_order(n).unwrap();
        (prop::sample::select(groups), 1..=n as u64)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn plain_minimum_at_most_signed_bound((g, m) in group_and_m(), h in 0u64..=6) {
        let u = min_sumset_size(g.order() as u64, m, h).unwrap().value;
        let u_pm = signed_sumset_bound(&g, m, h).unwrap().value;
        prop_assert!(u <= u_pm);
        if g.is_cyclic() {
            prop_assert_eq!(u, u_pm);
        }
    }

    #[test]
    fn plain_minimum_nondecreasing_in_m((g, m) in group_and_m(), h in 0u64..=6) {
        let n = g.order() as u64;
        prop_assume!(m < n);
        prop_assert!(min_sumset_size(n, m, h).unwrap().value <= min_sumset_size(n, m + 1, h).unwrap().value);
    }

    #[test]
    fn admissible_divisors_are_divisors((g, m) in group_and_m()) {
        let all = divisors(g.order() as u64);
        let adm = admissible_divisors(&g, m).unwrap();
        prop_assert!(!adm.is_empty());
        prop_assert!(adm.iter().all(|d| all.contains(d)));
        prop_assert!(adm.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(adm.contains(&(g.order() as u64)));
        if g.is_cyclic() {
            prop_assert_eq!(adm, all);
        }
    }

    #[test]
    fn prediction_between_minimum_and_bound((g, m) in group_and_m(), h in 2u64..=5) {
        let u = min_sumset_size(g.order() as u64, m, h).unwrap().value;
        let u_pm = signed_sumset_bound(&g, m, h).unwrap().value;
        let pred = predicted_signed_minimum(&g, m, h).unwrap();
        prop_assert!(u <= pred && pred <= u_pm);
        if h >= 3 {
            prop_assert_eq!(pred, u_pm);
        }
    }

    #[test]
    fn digit_profile_invariants(
        p in prop::sample::select(odd_primes(31)),
        r in 1u32..=4,
        h in 2u64..=6,
        seed in any::<u64>(),
    ) {
        let n = p.pow(r);
        let m = 1 + seed % n;
        let prof = DigitProfile::new(p, r, m, h).unwrap();
        let rebuilt: u64 = prof.digits.iter().rev().fold(0, |acc, &q| acc * p + q) + 1;
        prop_assert_eq!(rebuilt, m);
        prop_assert!(prof.digits.iter().all(|&q| q < p));
        let top = r as i32 - 1;
        prop_assert!(top >= prof.leading || m == 1);
        prop_assert!(prof.plateau >= prof.heavy && prof.heavy >= -1);
        prop_assert!(prof.leading >= prof.plateau);
    }

    #[test]
    fn power_split_is_maximal(
        p in prop::sample::select(odd_primes(31)),
        h_off in 0u64..30,
        m in 2u64..100_000,
    ) {
        let h = 2 + h_off % (p - 2);
        let s = PowerSplit::new(p, h, m).unwrap();
        let t = h * m - h + 1;
        prop_assert_eq!(s.delta, u64::from((p - 1) % h != 0));
        prop_assert!(p.pow(s.k) + s.delta <= t && p.pow(s.k + 1) + s.delta > t);
        prop_assert!((h * s.c + 1) * p.pow(s.k) + s.delta <= t);
        prop_assert!((h * (s.c + 1) + 1) * p.pow(s.k) + s.delta > t);
        prop_assert!(s.c < p);
    }
}

#[test]
fn digit_minimizers_small_ranges() {
    let suite = DigitSuite {
        p_max: 13,
        r_max: 3,
        h_max: 6,
        m_max: 400,
    };
    let mut cells = 0;
    digit_minimizer_checks(&suite, |outcome, cell| {
        cells += 1;
        assert!(
            outcome.verdict == signed_sumset::harness::Verdict::Pass,
            "{cell:?}: {}",
            outcome.detail
        );
        Ok(())
    })
    .unwrap();
    assert!(cells > 1000);
}

#[test]
fn table_prediction_matches_classification() {
    for p in odd_primes(101) {
        let g = if p <= 251 {
            Some(elementary(p, 2))
        } else {
            None
        };
        for m in 1..=p * p {
            let u = min_sumset_size(p * p, m, 2).unwrap().value;
            let pred = zp2_table_prediction(p, m).unwrap();
            assert!(pred >= u, "p={p} m={m}");
            assert_eq!(pred == u, zp2_equality(p, m).unwrap(), "p={p} m={m}");
            if let Some(g) = &g {
                if p <= 31 {
                    // the general divisor prediction specializes to the table
                    assert_eq!(
                        predicted_signed_minimum(g, m, 2).unwrap(),
                        pred,
                        "p={p} m={m}"
                    );
                }
            }
        }
    }
}

#[test]
fn admissible_divisors_of_elementary_groups_are_top_powers() {
    for p in odd_primes(13) {
        for r in 1..=4u32 {
            let g = elementary(p, r);
            for m in 1..=p.pow(r).min(3000) {
                let lead = if m == 1 { 0 } else { (m - 1).ilog(p) };
                let expected: Vec<u64> = (lead..=r).map(|i| p.pow(i)).collect();
                assert_eq!(
                    admissible_divisors(&g, m).unwrap(),
                    expected,
                    "p={p} r={r} m={m}"
                );
            }
        }
    }
}

#[test]
fn ceiling_uses_the_divisor() {
    // f_d(m, h) = (h⌈m/d⌉ - h + 1)·d reproduces min(p, 2m - 1) on Z_p
    for p in odd_primes(61) {
        for m in 1..=p {
            assert_eq!(min_sumset_size(p, m, 2).unwrap().value, p.min(2 * m - 1));
        }
    }
}

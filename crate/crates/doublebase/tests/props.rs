//! Property tests over random sequences, scalars, and bases.

mod common;

use num::{BigInt, BigRational, One, Zero};
use proptest::prelude::*;

use doublebase::bases::rational_base_in_a;
use doublebase::expansions::{expansion_stream, ExpansionKind};
use doublebase::inverse::{check_admissible, ProfileSpec};
use doublebase::base_classify::{profile, Verdict};
use doublebase::numerics::{compare, Cmp, ExactScalar};
use doublebase::words::{DigitPrefix, PeriodicSeq};

fn digit_vec(max_len: usize, min_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..=1, min_len..=max_len)
}

fn seq_strategy() -> impl Strategy<Value = PeriodicSeq> {
    (digit_vec(5, 0), digit_vec(5, 1)).prop_map(|(pre, per)| PeriodicSeq::new(pre, per).unwrap())
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn order_agrees_with_first_difference(a in seq_strategy(), b in seq_strategy()) {
        match a.first_difference(&b) {
            None => prop_assert_eq!(&a, &b),
            Some(i) => {
                prop_assert_ne!(a.digit(i), b.digit(i));
                prop_assert_eq!(a.cmp(&b), a.digit(i).cmp(&b.digit(i)));
                for j in 0..i {
                    prop_assert_eq!(a.digit(j), b.digit(j));
                }
            }
        }
    }

    #[test]
    fn shifts_settle_into_the_period(s in seq_strategy()) {
        let n = s.pre().len();
        prop_assert_eq!(s.shift(n + s.per().len()), s.shift(n));
        // Every tail class is reachable within tail_classes() shifts.
        let tc = s.tail_classes();
        prop_assert_eq!(s.shift(tc + s.per().len()), s.shift(tc));
    }

    #[test]
    fn reflect_is_an_involution(s in seq_strategy()) {
        prop_assert_eq!(s.reflect().reflect(), s);
    }

    #[test]
    fn word_prefix_then_shift_recovers_the_tail(w in digit_vec(6, 0), tail in seq_strategy()) {
        let s = PeriodicSeq::word_then(&w, &tail).unwrap();
        prop_assert_eq!(s.shift(w.len()), tail);
        for (i, &d) in w.iter().enumerate() {
            prop_assert_eq!(s.digit(i), d);
        }
    }

    #[test]
    fn scalar_arithmetic_mirrors_rationals(a in small_rational(), b in small_rational()) {
        let sa = common::scalar(&a);
        let sb = common::scalar(&b);
        prop_assert_eq!(sa.add(&sb).as_rational(), Some(&a + &b));
        prop_assert_eq!(sa.sub(&sb).as_rational(), Some(&a - &b));
        prop_assert_eq!(sa.mul(&sb).as_rational(), Some(&a * &b));
        let expected = match a.cmp(&b) {
            std::cmp::Ordering::Less => Cmp::Less,
            std::cmp::Ordering::Equal => Cmp::Equal,
            std::cmp::Ordering::Greater => Cmp::Greater,
        };
        prop_assert_eq!(compare(&sa, &sb), expected);
        if !b.is_zero() {
            prop_assert_eq!(sb.inverse().unwrap().as_rational(), Some(BigRational::one() / &b));
        }
        let (lo, hi) = sa.enclosure(32);
        prop_assert!(lo <= a && a <= hi);
    }

    #[test]
    fn sampled_bases_sit_inside_the_region(u in any::<u32>(), v in any::<u32>()) {
        let q = rational_base_in_a(u, v, 64);
        prop_assert!(q.in_a());
        let (q0, q1) = common::base_rationals(&q);
        let one = BigRational::one();
        let c = q.constants();
        prop_assert_eq!(c.r_q.as_rational(), Some(&q0 / &q1));
        prop_assert_eq!(c.j_max.as_rational(), Some(&one / (&q1 - &one)));
        prop_assert_eq!(
            c.ell_q.as_rational(),
            Some(&q1 / (&q0 * (&q1 - &one)) - &one)
        );
        // The two decision thresholds coincide exactly on the boundary.
        let t_cmp = compare(q.threshold_high(), q.threshold_low());
        if q.on_c() {
            prop_assert_eq!(t_cmp, Cmp::Equal);
        } else {
            prop_assert_eq!(t_cmp, Cmp::Less);
        }
    }

    #[test]
    fn pi_bounds_bracket_every_extension(w in digit_vec(8, 0), tail in seq_strategy(), u in any::<u32>(), v in any::<u32>()) {
        let q = rational_base_in_a(u, v, 64);
        let p = DigitPrefix::new(w.clone()).unwrap();
        let (lo, hi) = q.pi_bounds(&p).unwrap();
        let full = PeriodicSeq::word_then(&w, &tail).unwrap();
        let value = q.pi_eval(&full).unwrap();
        prop_assert_ne!(compare(&value, &lo), Cmp::Less);
        prop_assert_ne!(compare(&value, &hi), Cmp::Greater);
    }

    #[test]
    fn certified_profiles_pass_admissibility(u in any::<u32>(), v in any::<u32>()) {
        let q = rational_base_in_a(u, v, 64);
        let p = match profile(&q, 48) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        if let Some((mu, alpha)) = p.seqs() {
            let spec = ProfileSpec::new(mu.clone(), alpha.clone());
            prop_assert_eq!(check_admissible(&spec), Verdict::Proven);
        }
    }

    #[test]
    fn greedy_prefix_sums_never_overshoot(u in any::<u32>(), v in any::<u32>(), k in 1u32..=256) {
        let q = rational_base_in_a(u, v, 64);
        let (_, q1) = common::base_rationals(&q);
        let j_max = BigRational::one() / (&q1 - &BigRational::one());
        let x = BigRational::new(BigInt::from(k), BigInt::from(257)) * j_max;
        let b = expansion_stream(&q, &common::scalar(&x), ExpansionKind::Greedy, 40).unwrap();
        // Any greedy prefix evaluates below x, and adding the full tail
        // capacity reaches back above it.
        let p = b.prefix(40);
        let (lo, hi) = q.pi_bounds(&p).unwrap();
        prop_assert_ne!(compare(&common::scalar(&x), &lo), Cmp::Less);
        prop_assert_ne!(compare(&common::scalar(&x), &hi), Cmp::Greater);
    }
}

use proptest::prelude::*;

use qwhitney::identities::{binomial_inverse, binomial_transform};
use qwhitney::ring::rational::{rat, ratio};
use qwhitney::ring::{BigRational, LaurentPoly, QRing, RationalQ, RingScalar, SymbolicQ};
use qwhitney::tableaux::{enumerate_distinct, enumerate_weak, tableau_sum_second, ATableau};
use qwhitney::whitney::{choose2, second_rows};

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-5i64..=5, 0..5))
        .prop_map(|(low, cs)| LaurentPoly::from_dense(low, cs.into_iter().map(rat).collect()))
}

fn nonzero_q() -> impl Strategy<Value = BigRational> {
    small_rational().prop_filter("q must be nonzero", |q| *q != rat(0))
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn exact_div_inverts_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), q in nonzero_q()) {
        let (ea, eb) = (a.eval(&q).unwrap(), b.eval(&q).unwrap());
        prop_assert_eq!((&a + &b).eval(&q).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval(&q).unwrap(), &ea * &eb);
    }

    #[test]
    fn binomial_transform_round_trip(xs in prop::collection::vec(small_rational(), 1..12)) {
        let seq: Vec<RingScalar> = xs.into_iter().map(RingScalar::Rational).collect();
        prop_assert_eq!(binomial_inverse(&binomial_transform(&seq).unwrap()).unwrap(), seq.clone());
        prop_assert_eq!(binomial_transform(&binomial_inverse(&seq).unwrap()).unwrap(), seq);
    }

    #[test]
    fn enumerated_tableaux_are_valid(universe in 0i64..7, count in 0usize..5) {
        for t in enumerate_distinct(universe, count) {
            prop_assert!(t.is_valid());
            prop_assert_eq!(t.columns().len(), count);
            prop_assert!(t.columns().windows(2).all(|w| w[0] > w[1]));
        }
        for t in enumerate_weak(universe, count) {
            prop_assert!(t.is_valid());
            prop_assert!(t.columns().windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn tableau_constructor_rejects_out_of_range(cols in prop::collection::vec(0usize..8, 0..5), universe in 0i64..6) {
        let in_range = cols.iter().all(|&c| (c as i64) <= universe);
        prop_assert_eq!(ATableau::new(cols.clone(), false, universe).is_some(), in_range);
    }

    #[test]
    fn rational_mode_specializes_symbolic(m in small_rational(), r in small_rational(), q in nonzero_q()) {
        let sym = second_rows(&SymbolicQ, &LaurentPoly::constant(m.clone()), &LaurentPoly::constant(r.clone()), 6);
        let ring = RationalQ::new(q.clone()).unwrap();
        let num = second_rows(&ring, &m, &r, 6);
        for n in 0..=6 {
            for k in 0..=n {
                prop_assert_eq!(sym[n][k].eval(&q).unwrap(), num[n][k].clone());
            }
        }
    }

    #[test]
    fn second_kind_matches_weak_tableaux(m in small_rational(), r in small_rational(), q in nonzero_q()) {
        let ring = RationalQ::new(q).unwrap();
        let rows = second_rows(&ring, &m, &r, 6);
        for n in 0..=6usize {
            for k in 0..=n as i64 {
                let expected = ring.mul(&ring.q_pow(-choose2(k)), &rows[n][k as usize]);
                prop_assert_eq!(tableau_sum_second(&ring, &m, &r, n, k), expected);
            }
        }
    }
}

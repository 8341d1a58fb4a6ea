use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sheafgraph::graph::fixtures::{k4_unit, theta_area};
use sheafgraph::graph::{gauge_transform, total_weight, GaugeChain};
use sheafgraph::mfcore::{make_f, mf_shift, mf_sum};
use sheafgraph::scalars::{random_unit, NovikovElement};

fn term() -> impl Strategy<Value = (Rational64, BigRational)> {
    (-6i64..=6, 1i64..=3, -5i64..=5, 1i64..=4)
        .prop_map(|(n, d, c, e)| (Rational64::new(n, d), BigRational::new(c.into(), e.into())))
}

fn element() -> impl Strategy<Value = NovikovElement> {
    prop::collection::vec(term(), 0..4).prop_map(NovikovElement::from_terms)
}

proptest! {
    #[test]
    fn ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &NovikovElement::one(), a.clone());
    }

    #[test]
    fn specialization_is_a_ring_map(a in element(), b in element()) {
        prop_assert_eq!((&a * &b).specialize_q1(), a.specialize_q1() * b.specialize_q1());
        prop_assert_eq!((&a + &b).specialize_q1(), a.specialize_q1() + b.specialize_q1());
    }

    #[test]
    fn monomials_invert(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unit(&mut rng);
        prop_assert!((&u * &u.inverse().unwrap()).is_one());
    }

    #[test]
    fn gauge_chains_compose(s1 in any::<u64>(), s2 in any::<u64>()) {
        for g in [theta_area(), k4_unit()] {
            let c1 = GaugeChain::random(&g, &mut ChaCha8Rng::seed_from_u64(s1));
            let c2 = GaugeChain::random(&g, &mut ChaCha8Rng::seed_from_u64(s2));
            let step = gauge_transform(&gauge_transform(&g, &c1).unwrap(), &c2).unwrap();
            let once = gauge_transform(&g, &c1.compose(&c2)).unwrap();
            prop_assert_eq!(&step, &once);
            prop_assert_eq!(total_weight(&step), total_weight(&g));
        }
    }

    #[test]
    fn sums_and_shifts_stay_factorizations(seed in any::<u64>(), picks in prop::collection::vec(0usize..3, 1..5)) {
        let alpha = random_unit(&mut ChaCha8Rng::seed_from_u64(seed));
        let pairs = [(1, 2), (1, 3), (2, 3)];
        let mut acc = mf_shift(&make_f(&alpha, 1, 2).unwrap());
        for p in picks {
            let (i, j) = pairs[p];
            acc = mf_shift(&mf_sum(&acc, &make_f(&alpha, i, j).unwrap()).unwrap());
            prop_assert!(acc.check_invariant());
        }
    }
}

#[test]
fn identity_gauge_is_trivial() {
    let g = theta_area();
    assert_eq!(gauge_transform(&g, &GaugeChain::identity()).unwrap(), g);
}

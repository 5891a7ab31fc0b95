mod common;

use std::collections::BTreeMap;

use borel::flag::f8_z3;
use borel::graded_rep::trivial_rep;
use borel::koszul::borel_total;
use borel::mapping_torus::{binomial, recurse};
use borel::QGradedRep;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn both(rep: &QGradedRep) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let r = recurse(rep).expect("recursion runs").betti;
    let k = borel_total(rep).expect("koszul runs").totals();
    (r, k)
}

#[test]
fn f8_engines_agree() {
    let (r, k) = both(&f8_z3());
    assert_eq!(r, k);
    let expected: BTreeMap<usize, usize> = [(0, 1), (1, 3), (2, 5), (3, 7), (4, 6), (5, 2)]
        .into_iter()
        .collect();
    assert_eq!(r, expected);
}

#[test]
fn torus_of_a_point() {
    for n in 0..=5 {
        let rep: QGradedRep = trivial_rep(n, &[(0, 1)].into_iter().collect());
        let (r, k) = both(&rep);
        assert_eq!(r, k);
        for j in 0..=n {
            assert_eq!(r[&j], binomial(n, j), "n={n} k={j}");
        }
    }
}

#[test]
fn betti_sum_of_trivial_action_is_product() {
    // trivial action: H_{Z^n}(F) = H(F) ⊗ H(T^n)
    let dims: BTreeMap<usize, usize> = [(0, 1), (2, 3), (3, 2)].into_iter().collect();
    let rep: QGradedRep = trivial_rep(2, &dims);
    let (r, k) = both(&rep);
    assert_eq!(r, k);
    let mut expected = BTreeMap::new();
    for (&q, &d) in &dims {
        for p in 0..=2 {
            *expected.entry(p + q).or_insert(0) += d * binomial(2, p);
        }
    }
    assert_eq!(r, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree_on_random_reps(seed in any::<u64>(), connected in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = common::random_rep(&mut rng, connected);
        let (r, k) = both(&rep);
        prop_assert_eq!(&r, &k);
        if connected {
            for j in 0..=rep.n_ops() {
                prop_assert!(r.get(&j).copied().unwrap_or(0) >= binomial(rep.n_ops(), j));
            }
        }
    }

    #[test]
    fn betti_independent_of_operator_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = common::random_rep(&mut rng, false);
        let base = recurse(&rep).unwrap().betti;
        let mut order: Vec<usize> = (0..rep.n_ops()).collect();
        order.reverse();
        prop_assert_eq!(recurse(&rep.permute_operators(&order)).unwrap().betti, base);
    }

    #[test]
    fn equivariant_euler_characteristic_vanishes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = common::random_rep(&mut rng, false);
        let rec = recurse(&rep).unwrap();
        for stage in &rec.stages[1..] {
            prop_assert_eq!(stage.euler_characteristic(), 0);
        }
    }
}

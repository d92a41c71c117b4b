use leafcount::arith::{ratio, ratio_to_f64};
use leafcount::simplex::{
    bound_sample, dyadic_schedule, eval_f, minimize_f, multinomial_decomposition, muirhead_check, sorted_exponent_tuples,
    sup_boundary_scan, uniform_value, MajorizationPair, SimplexPoint,
};
use proptest::prelude::*;

#[test]
fn sampled_points_respect_both_bounds() {
    for d in 2..=4 {
        for k in 3..=6 {
            let s = bound_sample(d, k, 500, 11 * d as u64 + k as u64).unwrap();
            assert_eq!(s.upper_violations, 0, "d={d} k={k}");
            assert_eq!(s.lower_violations, 0, "d={d} k={k}");
        }
    }
}

#[test]
fn minimiser_finds_the_uniform_point() {
    let r = minimize_f(3, 3, 5).unwrap();
    assert!((r.value - 0.25).abs() < 1e-9);
    let r = minimize_f(4, 5, 5).unwrap();
    assert!((r.value - ratio_to_f64(&uniform_value(4, 5))).abs() < 1e-9);
    assert!(r.point.iter().all(|x| (x - 0.25).abs() < 1e-6));
}

#[test]
fn boundary_path_increases_to_reciprocal_k() {
    for d in 3..=4 {
        let flat = sup_boundary_scan(d, 3, &dyadic_schedule(16)).unwrap();
        assert!(flat.iter().all(|v| *v == ratio(1, 3)));
        for k in 4..=6u64 {
            let vals = sup_boundary_scan(d, k as usize, &dyadic_schedule(16)).unwrap();
            assert!(vals.windows(2).all(|w| w[0] < w[1]));
            assert!(vals.iter().all(|v| *v < ratio(1, k)));
        }
    }
}

fn weights(d: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..10_000, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_invariant(w in weights(4), k in 3usize..7, rot in 0usize..4) {
        let p = SimplexPoint::from_weights(&w).unwrap();
        let mut v = w.clone();
        v.rotate_left(rot);
        v.swap(0, 1);
        let q = SimplexPoint::from_weights(&v).unwrap();
        prop_assert_eq!(eval_f(4, k, &p).unwrap(), eval_f(4, k, &q).unwrap());
    }

    #[test]
    fn decomposition_identity(d in 2usize..6, k in 3u32..8, seed in prop::collection::vec(0u64..500, 6)) {
        let p = SimplexPoint::from_weights(&seed[..d]).unwrap_or_else(|_| SimplexPoint::uniform(d));
        let (lhs, rhs) = multinomial_decomposition(k, &p);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn muirhead_edge_exponent(w in weights(4), k in 3u32..7) {
        let p: Vec<_> = w.iter().map(|&x| ratio(x, 97)).collect();
        let a = vec![k - 1, 1, 0, 0];
        for b in sorted_exponent_tuples(4, k) {
            prop_assert!(muirhead_check(&MajorizationPair::new(a.clone(), b).unwrap(), &p).unwrap());
        }
    }
}

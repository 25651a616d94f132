//! Cross-module properties on random arbors, words and polynomials.

use arborlat_core::arbor::{enumerate_arbors, Arbor};
use arborlat_core::combin::factorial;
use arborlat_core::lattice::{count_dilate, ehrhart_interpolated, h_vector, hstar, polytope_of_arbor, polytope_qndk};
use arborlat_core::parking::{multiset_descent_enumerator, park_on, unlucky, weak_compositions, WeakComposition};
use arborlat_core::polyalg::{all_roots_real_in, hstar_from_ehrhart, sturm_real_root_count, Bound, SturmChain};
use arborlat_core::{IntPolynomial, RatPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arbors_of(n: usize) -> Vec<Arbor> {
    enumerate_arbors(n).collect()
}

fn arbor() -> impl Strategy<Value = Arbor> {
    (1usize..=4).prop_flat_map(|n| {
        let all = arbors_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn composition() -> impl Strategy<Value = WeakComposition> {
    (1usize..=6).prop_flat_map(|n| {
        let all = weak_compositions(n, 0);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

/// `sum_i h_i C(t + n - i, n)`.
fn ehrhart_from_hstar(h: &[u64], n: usize) -> RatPolynomial {
    let nf = BigRational::from_integer(factorial(n as u64));
    h.iter()
        .enumerate()
        .map(|(i, &hi)| {
            let binom = RatPolynomial::product_of_linear(
                (1..=n).map(|j| (BigRational::one(), BigRational::from_integer(BigInt::from(n as i64 - i as i64 - j as i64 + 1)))),
            );
            binom.scale(&(BigRational::from_integer(hi.into()) / &nf))
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arbor_polytope_invariants(a in arbor()) {
        let n = a.n();
        prop_assert!(a.is_valid());
        let d = a.descendant_sets().unwrap();
        prop_assert_eq!(d.set(a.root()).iter().copied().collect::<Vec<_>>(), (1..=n).collect::<Vec<_>>());

        let p = polytope_of_arbor(&a).unwrap();
        let h = h_vector(&p);
        prop_assert_eq!(h.total(), count_dilate(&p, 1));
        prop_assert_eq!(&h.hs[0], &BigInt::one());
        prop_assert!(h.hs[n] >= BigInt::one());

        let e = ehrhart_interpolated(&p).unwrap();
        let at = |m: u64| e.eval(&BigRational::from_integer(m.into()));
        prop_assert_eq!(at(n as u64 + 2), BigRational::from_integer(count_dilate(&p, n as u64 + 2)));
        let hs = hstar(&p).unwrap();
        let lead = e.leading().unwrap() * BigRational::from_integer(factorial(n as u64));
        prop_assert_eq!(BigRational::from_integer(hs.eval(&BigInt::one())), lead);
    }

    #[test]
    fn octopus_matches_direct_description(n in 1usize..=5, k_seed in 0usize..5, m in 0u64..=3) {
        let k = k_seed % n;
        let via_arbor = polytope_of_arbor(&Arbor::octopus(n, k).unwrap()).unwrap();
        let direct = polytope_qndk(n, n, k).unwrap();
        prop_assert_eq!(count_dilate(&via_arbor, m), count_dilate(&direct, m));
        let cube_corner = vec![1u64; n];
        prop_assert!(via_arbor.contains(&cube_corner, 1));
        prop_assert!(direct.contains(&cube_corner, 1));
    }

    #[test]
    fn hstar_round_trip_and_volume(h in prop::collection::vec(0u64..20, 1..7), extra in 0usize..2) {
        let mut h = h;
        h[0] = 1;
        let n = h.len() - 1 + extra;
        let e = ehrhart_from_hstar(&h, n);
        let got = hstar_from_ehrhart(&e, Some(n)).unwrap();
        prop_assert_eq!(got.padded(n + 1), IntPolynomial::from_i64s(&h.iter().map(|&x| x as i64).collect::<Vec<_>>()).padded(n + 1));
        let lead = e.coeff(n) * BigRational::from_integer(factorial(n as u64));
        prop_assert_eq!(BigRational::from_integer(got.eval(&BigInt::one())), lead);
    }

    #[test]
    fn sturm_total_count_bound(cs in prop::collection::vec(-6i64..6, 2..8)) {
        let p = IntPolynomial::from_i64s(&cs).to_rational();
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let sqfree_degree = SturmChain::new(&p).unwrap().distinct_root_bound();
        let total = sturm_real_root_count(&p, &Bound::NegInfinity, &Bound::PosInfinity).unwrap();
        prop_assert!(total <= sqfree_degree);
        let all_real = all_roots_real_in(&p, &Bound::NegInfinity, &Bound::PosInfinity).unwrap();
        prop_assert_eq!(total == sqfree_degree, all_real);
    }

    #[test]
    fn parking_is_a_bijection(word in prop::collection::vec(1usize..=8, 1..9)) {
        let n = word.len();
        let out = park_on(&word, n).unwrap();
        let mut spots = out.spot.clone();
        spots.sort();
        prop_assert_eq!(spots, (1..=n).collect::<Vec<_>>());
        prop_assert_eq!(out.unlucky_count, unlucky(&word));
        for (i, (&pref, &spot)) in word.iter().zip(&out.spot).enumerate() {
            prop_assert_eq!(out.lucky[i], pref == spot);
        }
    }

    #[test]
    fn permutations_are_lucky(perm in Just((1usize..=7).collect::<Vec<_>>()).prop_shuffle()) {
        prop_assert_eq!(unlucky(&perm), 0);
    }

    #[test]
    fn multiset_enumerator_counts_rearrangements(mu in composition()) {
        let parts = mu.parts().to_vec();
        let total = parts.len();
        let count: BigInt = multiset_descent_enumerator(&mu).coeffs().iter().sum();
        let denom: BigInt = parts.iter().map(|&a| factorial(a as u64)).product();
        prop_assert_eq!(count, factorial(total as u64) / denom);
    }
}

#[test]
fn sturm_property_sees_complex_roots() {
    // t^2 + 1 has no real roots, so the bound is strict
    let p = IntPolynomial::from_i64s(&[1, 0, 1]).to_rational();
    assert!(sturm_real_root_count(&p, &Bound::NegInfinity, &Bound::PosInfinity).unwrap().is_zero());
    assert!(!all_roots_real_in(&p, &Bound::NegInfinity, &Bound::PosInfinity).unwrap());
}

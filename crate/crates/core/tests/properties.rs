//! Randomized property tests for the exact-arithmetic kernel: root
//! isolation on random cubics, rational parse/format round-trips, p-adic
//! valuation additivity, and interval-arithmetic containment.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tridesign::exact::{
    format_rat, is_prime_u64, isolate_real_roots, p_adic_valuation, parse_rat, rat,
    rational_roots, Poly, Rat, RatInterval,
};

fn rational(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Cubics with three planted rational roots: isolation finds exactly
    /// three disjoint intervals, each containing its root, and the exact
    /// rational roots are recovered.
    #[test]
    fn sturm_isolates_planted_cubic_roots(
        p1 in -30i64..30, q1 in 1i64..12,
        p2 in -30i64..30, q2 in 1i64..12,
        p3 in -30i64..30, q3 in 1i64..12,
        scale in 1i64..5,
    ) {
        let mut roots = vec![rational(p1, q1), rational(p2, q2), rational(p3, q3)];
        roots.sort();
        roots.dedup();
        let mut poly = Poly::from_i64(&[scale]);
        for r in &roots {
            // (q t - p)
            poly = &poly * &Poly::new(vec![-r.clone(), rat(1, 1)]).primitive();
        }
        let bound = poly.root_bound();
        let ivs = isolate_real_roots(&poly, &-bound.clone(), &bound);
        prop_assert_eq!(ivs.len(), roots.len());
        for (iv, r) in ivs.iter().zip(&roots) {
            prop_assert!(&iv.lo <= r && r <= &iv.hi, "{:?} should contain {}", iv, r);
        }
        // intervals are pairwise disjoint and sorted
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
            prop_assert!(w[0].lo <= w[1].lo);
        }
        prop_assert_eq!(rational_roots(&poly), roots);
    }

    /// Arbitrary integer cubics: the number of isolated roots matches an
    /// independent discriminant count, every reported interval certifies a
    /// root (`sf(lo) * sf(hi) <= 0`, or an exact zero), and interval
    /// interiors never overlap.
    #[test]
    fn sturm_certifies_arbitrary_cubics(
        c0 in -50i64..50, c1 in -50i64..50, c2 in -50i64..50, c3 in 1i64..50,
    ) {
        let p = Poly::from_i64(&[c0, c1, c2, c3]);
        let bound = p.root_bound();
        let ivs = isolate_real_roots(&p, &-bound.clone(), &bound);
        let sf = p.square_free();
        prop_assert_eq!(ivs.len(), real_root_count(&sf));
        for iv in &ivs {
            if let Some(r) = iv.exact_root() {
                prop_assert!(sf.eval(&r).is_zero());
            } else {
                let lo = sf.eval(&iv.lo);
                let hi = sf.eval(&iv.hi);
                // lo may vanish when it is a neighboring exact root
                prop_assert!(!hi.is_zero());
                prop_assert!(!(&lo * &hi).is_positive(),
                    "interval [{}, {}] must bracket a sign change", iv.lo, iv.hi);
            }
        }
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
    }
}

/// Real-root count of a square-free polynomial of degree <= 3 by
/// discriminant sign, independent of the Sturm machinery under test.
fn real_root_count(sf: &Poly) -> usize {
    let c = |i: usize| sf.coeff(i);
    match sf.degree() {
        Some(1) => 1,
        Some(2) => {
            let disc = &c(1) * &c(1) - rat(4, 1) * &c(2) * &c(0);
            if disc.is_positive() { 2 } else { 0 }
        }
        Some(3) => {
            let (d, cc, b, a) = (c(0), c(1), c(2), c(3));
            let disc = rat(18, 1) * &a * &b * &cc * &d - rat(4, 1) * &b * &b * &b * &d
                + &b * &b * &cc * &cc
                - rat(4, 1) * &a * &cc * &cc * &cc
                - rat(27, 1) * &a * &a * &d * &d;
            if disc.is_positive() { 3 } else { 1 }
        }
        _ => 0,
    }
}

proptest! {
    #[test]
    fn rational_round_trip(p in -1_000_000i64..1_000_000, q in 1i64..1_000_000) {
        let x = rational(p, q);
        prop_assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
    }

    #[test]
    fn valuation_additive(a in 1i64..100_000, b in 1i64..100_000, pi in 0usize..5) {
        let p = BigInt::from([2i64, 3, 5, 7, 11][pi]);
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = p_adic_valuation(&p, &(&a * &b)).unwrap();
        let rhs = p_adic_valuation(&p, &a).unwrap() + p_adic_valuation(&p, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interval_arithmetic_contains_points(
        x in -100i64..100, y in -100i64..100, dx in 0i64..10, dy in 0i64..10, d in 3i64..9,
    ) {
        let xv = rational(x, d);
        let yv = rational(y, d);
        let xi = RatInterval::new(&xv - rational(dx, 7), &xv + rational(dx, 11));
        let yi = RatInterval::new(&yv - rational(dy, 7), &yv + rational(dy, 11));
        prop_assert!(xi.add(&yi).contains(&(&xv + &yv)));
        prop_assert!(xi.sub(&yi).contains(&(&xv - &yv)));
        prop_assert!(xi.mul(&yi).contains(&(&xv * &yv)));
        if yi.excludes_zero() {
            prop_assert!(xi.div(&yi).contains(&(&xv / &yv)));
        }
    }

    #[test]
    fn primes_against_trial_division(n in 2u64..100_000) {
        let trial = (2..=((n as f64).sqrt() as u64)).all(|d| n % d != 0);
        prop_assert_eq!(is_prime_u64(n), trial);
    }
}

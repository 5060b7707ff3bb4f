use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use spherical_ws::angular::{wigner3j_zero, wigner3j_zero_racah, wigner6j, AngularTriple};
use spherical_ws::momenta::MomentumPair;
use spherical_ws::specfun::{legendre_q, spherical_j};
use spherical_ws::weberschafheitlin::{ws_inverse_power, ws_linear_power, Status};

fn selection_rules(a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && a.abs_diff(b) <= c && c <= a + b
}

#[test]
fn three_j_vanishes_exactly_off_selection_rules() {
    for a in 0..=40u32 {
        for b in 0..=40 - a {
            for c in 0..=40 - a - b {
                let w = wigner3j_zero(AngularTriple::new(a, b, c));
                assert_eq!(!w.is_zero(), selection_rules(a, b, c), "({a},{b},{c})");
            }
        }
    }
}

#[test]
fn orthogonality_is_exact() {
    for a in 0..=10u32 {
        for b in 0..=10u32 {
            let sum: BigRational = (a.abs_diff(b)..=a + b)
                .map(|c| {
                    wigner3j_zero(AngularTriple::new(a, b, c)).square()
                        * BigRational::from_integer((2 * c + 1).into())
                })
                .sum();
            assert!(sum.is_one(), "({a},{b})");
        }
    }
}

proptest! {
    #[test]
    fn three_j_permutation_symmetry(a in 0u32..15, b in 0u32..15, c in 0u32..15) {
        let w = wigner3j_zero(AngularTriple::new(a, b, c));
        // Zero projections: even sums make every permutation symmetric.
        for (x, y, z) in [(b, c, a), (c, a, b), (b, a, c), (a, c, b), (c, b, a)] {
            prop_assert_eq!(&w, &wigner3j_zero(AngularTriple::new(x, y, z)));
        }
        prop_assert_eq!(&w, &wigner3j_zero_racah(AngularTriple::new(a, b, c)));
    }

    #[test]
    fn six_j_column_symmetry(j in proptest::array::uniform6(0u32..7)) {
        let [a, b, c, d, e, f] = j;
        let w = wigner6j(a, b, c, d, e, f);
        prop_assert_eq!(&w, &wigner6j(b, a, c, e, d, f));
        prop_assert_eq!(&w, &wigner6j(a, c, b, d, f, e));
        prop_assert_eq!(&w, &wigner6j(d, e, c, a, b, f));
    }

    #[test]
    fn spherical_bessel_recurrence(l in 1u32..45, x in 0.01f64..200.0) {
        let a = spherical_j(l - 1, x).unwrap();
        let b = spherical_j(l, x).unwrap();
        let c = spherical_j(l + 1, x).unwrap();
        let t = (2.0 * f64::from(l) + 1.0) / x * b;
        let scale = a.abs().max(c.abs()).max(t.abs());
        prop_assert!((a + c - t).abs() <= 1e-12 * scale);
    }

    #[test]
    fn legendre_q_is_positive_and_decreasing(l in 0u32..40, chi in 1.0001f64..50.0) {
        let q = legendre_q(l, chi).unwrap();
        let q_next = legendre_q(l + 1, chi).unwrap();
        prop_assert!(q > 0.0 && q_next < q);
    }

    #[test]
    fn inverse_power_is_swap_symmetric(
        a in 0u32..7, b in 0u32..7, c in 0u32..7, k1 in 0.2f64..5.0, k2 in 0.2f64..5.0,
    ) {
        let t = AngularTriple::new(a, b, c);
        let m = MomentumPair::new(k1, k2).unwrap();
        let x = ws_inverse_power(t, m);
        let y = ws_inverse_power(t.swapped(), m.swapped());
        prop_assert_eq!(x.status, y.status);
        if let (Some(x), Some(y)) = (x.value, y.value) {
            prop_assert!((x - y).abs() <= 1e-11 * x.abs().max(y.abs()));
        }
    }

    #[test]
    fn linear_power_scaling(
        a in 0u32..7, b in 0u32..7, c in 0u32..7, k1 in 0.2f64..5.0, k2 in 0.2f64..5.0, s in 0.1f64..10.0,
    ) {
        prop_assume!((k1 - k2).abs() > 1e-3);
        let t = AngularTriple::new(a, b, c);
        let m = MomentumPair::new(k1, k2).unwrap();
        let x = ws_linear_power(t, m);
        if x.status == Status::Ok {
            let x = x.value.unwrap();
            let y = ws_linear_power(t, m.scaled(s)).value.unwrap();
            let expected = s.powi(c as i32 - 2) * x;
            prop_assert!((y - expected).abs() <= 1e-11 * expected.abs());
        }
    }
}

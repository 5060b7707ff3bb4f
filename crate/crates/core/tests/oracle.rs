use std::f64::consts::PI;

use spherical_ws::angular::AngularTriple;
use spherical_ws::momenta::{MomentumPair, MomentumTriple};
use spherical_ws::oracle::{
    integrate_single_bessel, integrate_three_bessel, integrate_two_bessel, QuadratureConfig,
    Regularization,
};
use spherical_ws::weberschafheitlin::{
    linear_weight_vs_j0, single_bessel_inverse_power, single_bessel_linear, triple_bessel,
};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn single_bessel_families_match_closed_forms() {
    let c = QuadratureConfig::default();
    for l in 0..=6u32 {
        for k in [0.5, 1.0, 2.0] {
            let expected = single_bessel_inverse_power(l, k).value.unwrap();
            if l > 0 {
                let got = integrate_single_bessel(-(l as i32), l, k, &c).unwrap();
                assert!(
                    rel(got.estimate, expected) < 1e-9,
                    "inverse l={l} k={k}: {got:?}"
                );
            }
            let expected = single_bessel_linear(l, k).value.unwrap();
            let got = integrate_single_bessel(1 - l as i32, l, k, &c).unwrap();
            assert!(
                rel(got.estimate, expected) < 1e-8,
                "linear l={l} k={k}: {got:?}"
            );
        }
    }
}

#[test]
fn linear_weight_against_j0_value() {
    let m = MomentumPair::new(2.0, 1.0).unwrap();
    let o = integrate_two_bessel(0, 1, 0, m, &QuadratureConfig::default()).unwrap();
    assert!(
        (o.estimate - 0.455_989_804_125_270_6).abs() < 1e-12,
        "{o:?}"
    );
    let a = linear_weight_vs_j0(1, m).value.unwrap();
    assert!(rel(o.estimate, a) < 1e-12);

    let m = MomentumPair::new(3.0, 1.0).unwrap();
    let o = integrate_two_bessel(-1, 2, 0, m, &QuadratureConfig::default()).unwrap();
    assert!(
        rel(o.estimate, linear_weight_vs_j0(2, m).value.unwrap()) < 1e-10,
        "{o:?}"
    );
}

#[test]
fn triple_example_orders_one_one_two() {
    let m = MomentumTriple::new(1.0, 1.0, 1.0).unwrap();
    let o = integrate_three_bessel(1, 1, 2, m, &QuadratureConfig::default()).unwrap();
    let a = triple_bessel(AngularTriple::new(1, 1, 2), m).value.unwrap();
    assert!(rel(o.estimate, a) < 1e-6, "{o:?} vs {a}");
    let m = MomentumTriple::new(1.0, 1.0, 1.0).unwrap();
    let o = integrate_three_bessel(0, 0, 0, m, &QuadratureConfig::default()).unwrap();
    assert!(rel(o.estimate, PI / 4.0) < 1e-8);
}

#[test]
fn regulated_and_direct_paths_agree_on_convergent_integrals() {
    let direct = QuadratureConfig {
        regularization: Regularization::Never,
        ..QuadratureConfig::default()
    };
    let regulated = QuadratureConfig {
        regularization: Regularization::Always,
        ..QuadratureConfig::default()
    };
    let m = MomentumPair::new(0.3, 1.7).unwrap();
    for (p, a, b) in [(0, 0, 0), (-1, 2, 2), (-2, 3, 3), (0, 4, 4)] {
        let x = integrate_two_bessel(p, a, b, m, &direct).unwrap();
        let y = integrate_two_bessel(p, a, b, m, &regulated).unwrap();
        assert!(!x.regularized && y.regularized);
        assert!(rel(y.estimate, x.estimate) < 1e-7, "{x:?} {y:?}");
    }
    for (p, l) in [(-1, 1), (-2, 3), (-1, 2)] {
        let x = integrate_single_bessel(p, l, 1.3, &direct).unwrap();
        let y = integrate_single_bessel(p, l, 1.3, &regulated).unwrap();
        assert!(rel(y.estimate, x.estimate) < 1e-7, "{x:?} {y:?}");
    }
}

#[test]
fn refinement_moves_estimates_by_less_than_three_error_estimates() {
    let base = QuadratureConfig::default();
    let fine = QuadratureConfig {
        head_tolerance: base.head_tolerance / 2.0,
        cell_count: base.cell_count * 2,
        ..base.clone()
    };
    let close =
        |a: f64, b: f64, err: f64| (a - b).abs() <= 3.0 * err.max(8.0 * f64::EPSILON * a.abs());
    for (p, a, b, k) in [
        (0, 1, 1, (1.0, 2.0)),
        (1, 2, 0, (0.3, 1.7)),
        (-2, 4, 2, (1.0, 10.0)),
        (0, 3, 3, (2.5, 2.5)),
    ] {
        let m = MomentumPair::new(k.0, k.1).unwrap();
        let x = integrate_two_bessel(p, a, b, m, &base).unwrap();
        let y = integrate_two_bessel(p, a, b, m, &fine).unwrap();
        assert!(
            close(x.estimate, y.estimate, x.error_estimate),
            "{x:?} {y:?}"
        );
    }
    let m = MomentumTriple::new(1.0, 2.0, 2.5).unwrap();
    let x = integrate_three_bessel(2, 2, 2, m, &base).unwrap();
    let y = integrate_three_bessel(2, 2, 2, m, &fine).unwrap();
    assert!(
        close(x.estimate, y.estimate, x.error_estimate),
        "{x:?} {y:?}"
    );
}

#[test]
fn reports_non_integrable_and_divergent_inputs() {
    let c = QuadratureConfig::default();
    let m = MomentumPair::new(1.0, 1.0).unwrap();
    assert!(integrate_two_bessel(-1, 0, 0, m, &c).is_err());
    assert!(integrate_two_bessel(1, 2, 2, m, &c).is_err());
    assert!(integrate_single_bessel(-1, 0, 1.0, &c).is_err());
    assert!(integrate_single_bessel(0, 0, -1.0, &c).is_err());
    let edge = MomentumTriple::new(1.0, 2.0, 3.0).unwrap();
    assert!(integrate_three_bessel(0, 0, 0, edge, &c).is_err());
}

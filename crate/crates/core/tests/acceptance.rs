//! Acceptance criteria, one test per criterion. Each test writes a single
//! PASS/FAIL line straight to stderr so it shows up without `--nocapture`.

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use spherical_ws::angular::{wigner3j_zero, wigner3j_zero_racah, AngularTriple};
use spherical_ws::momenta::{MomentumPair, MomentumTriple};
use spherical_ws::oracle::{
    integrate_single_bessel, integrate_three_bessel, integrate_two_bessel, QuadratureConfig,
};
use spherical_ws::weberschafheitlin::{
    equal_k_inverse_power, equal_order_linear_weight, equal_order_no_weight, inverse_power_vs_j0,
    linear_weight_vs_j0, sum_identity_check, triple_bessel, ws_inverse_power, ws_linear_power,
};

const PAIRS: [(f64, f64); 4] = [(1.0, 2.0), (0.3, 1.7), (2.5, 2.5), (1.0, 10.0)];

fn report(id: u32, name: &str, passed: bool, elapsed: Duration, detail: &str) {
    let line = format!(
        "criterion {id} {} {name}: {detail} ({:.2}s)\n",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

fn applicable_triples(max: u32) -> Vec<AngularTriple> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                let t = AngularTriple::new(a, b, c);
                if t.applicable() {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn pair(k: (f64, f64)) -> MomentumPair {
    MomentumPair::new(k.0, k.1).unwrap()
}

/// Worst failure ratio (residual / tolerance) with a description.
#[derive(Default)]
struct Worst {
    ratio: f64,
    what: String,
    cases: usize,
}

impl Worst {
    fn see(&mut self, residual: f64, tolerance: f64, what: impl FnOnce() -> String) {
        self.cases += 1;
        let ratio = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual / tolerance
        };
        if ratio > self.ratio || self.what.is_empty() {
            self.ratio = ratio;
            self.what = what();
        }
    }

    fn passed(&self) -> bool {
        self.ratio <= 1.0
    }

    fn detail(&self) -> String {
        format!(
            "{} cases, worst residual/tolerance {:.3e} at {}",
            self.cases, self.ratio, self.what
        )
    }
}

#[test]
fn criterion_1_inverse_power_vs_oracle() {
    let start = Instant::now();
    let config = QuadratureConfig::default();
    let mut worst = Worst::default();
    for t in applicable_triples(6) {
        for k in PAIRS {
            let m = pair(k);
            let analytic = ws_inverse_power(t, m).value.unwrap();
            let o = integrate_two_bessel(-(t.lambda3 as i32), t.lambda1, t.lambda2, m, &config);
            let (residual, tol) = match o {
                Ok(o) => (
                    rel(o.estimate, analytic),
                    if o.error_estimate > 1e-10 { 1e-6 } else { 1e-8 },
                ),
                Err(_) => (f64::NAN, 1e-8),
            };
            worst.see(residual, tol, || format!("{t} k={k:?}"));
        }
    }
    report(
        1,
        "inverse-power closed form vs oracle",
        worst.passed(),
        start.elapsed(),
        &worst.detail(),
    );
    assert!(worst.passed(), "{}", worst.detail());
}

#[test]
fn criterion_2_linear_power_vs_oracle() {
    let start = Instant::now();
    let config = QuadratureConfig::default();
    let mut worst = Worst::default();
    for t in applicable_triples(6) {
        for k in PAIRS.into_iter().filter(|k| k.0 != k.1) {
            let m = pair(k);
            let analytic = ws_linear_power(t, m).value.unwrap();
            let tol = if t.lambda3 == 0 { 1e-6 } else { 1e-8 };
            let residual =
                integrate_two_bessel(1 - t.lambda3 as i32, t.lambda1, t.lambda2, m, &config)
                    .map(|o| rel(o.estimate, analytic))
                    .unwrap_or(f64::NAN);
            worst.see(residual, tol, || format!("{t} k={k:?}"));
        }
    }
    report(
        2,
        "linear-power closed form vs oracle",
        worst.passed(),
        start.elapsed(),
        &worst.detail(),
    );
    assert!(worst.passed(), "{}", worst.detail());
}

#[test]
fn criterion_3_triple_bessel_vs_regularized_oracle() {
    let start = Instant::now();
    let config = QuadratureConfig::default();
    let mut worst = Worst::default();
    let inside = [(1.0, 1.0, 1.0), (1.0, 2.0, 2.5), (3.0, 4.0, 5.0)];
    let outside = [(1.0, 1.0, 3.0), (1.0, 2.0, 4.0)];
    for t in applicable_triples(4) {
        for k in inside.iter().chain(&outside) {
            let m = MomentumTriple::new(k.0, k.1, k.2).unwrap();
            let analytic = triple_bessel(t, m).value.unwrap();
            let o = integrate_three_bessel(t.lambda1, t.lambda2, t.lambda3, m, &config);
            let Ok(o) = o else {
                worst.see(f64::NAN, 1.0, || format!("{t} k={k:?} oracle failed"));
                continue;
            };
            assert!(o.regularized);
            if m.in_triangle() {
                worst.see(rel(o.estimate, analytic), 1e-5, || format!("{t} k={k:?}"));
            } else {
                worst.see(o.estimate.abs(), 1e-5, || format!("{t} k={k:?} (outside)"));
            }
        }
    }
    report(
        3,
        "triple-Bessel closed form vs regularized oracle",
        worst.passed(),
        start.elapsed(),
        &worst.detail(),
    );
    assert!(worst.passed(), "{}", worst.detail());
}

#[test]
fn criterion_4_exact_alternating_binomial_identity() {
    let start = Instant::now();
    let failures: Vec<u32> = (0..=200)
        .filter(|&l| {
            let (lhs, rhs) = sum_identity_check(l);
            lhs != rhs
        })
        .collect();
    let elapsed = start.elapsed();
    let passed = failures.is_empty() && elapsed < Duration::from_secs(5);
    report(
        4,
        "exact identity for lambda <= 200",
        passed,
        elapsed,
        &format!("{} mismatches", failures.len()),
    );
    assert!(passed, "mismatches at {failures:?}, elapsed {elapsed:?}");
}

#[test]
fn criterion_5_reduction_consistency() {
    let start = Instant::now();
    let tol = 1e-12;
    let mut worst = Worst::default();
    let v = |r: spherical_ws::weberschafheitlin::ClosedFormResult| r.value.unwrap_or(f64::NAN);
    for l in 0..=6 {
        for k in PAIRS {
            let m = pair(k);
            let same = AngularTriple::new(l, l, 0);
            let mixed = AngularTriple::new(l, 0, l);
            worst.see(
                rel(v(ws_inverse_power(same, m)), v(equal_order_no_weight(l, m))),
                tol,
                || format!("inverse (l,l,0) l={l} k={k:?}"),
            );
            worst.see(
                rel(v(ws_inverse_power(mixed, m)), v(inverse_power_vs_j0(l, m))),
                tol,
                || format!("inverse (l,0,l) l={l} k={k:?}"),
            );
            if k.0 == k.1 {
                worst.see(
                    rel(
                        v(inverse_power_vs_j0(l, m)),
                        v(equal_k_inverse_power(l, k.0)),
                    ),
                    tol,
                    || format!("equal-k l={l} k={k:?}"),
                );
            } else {
                worst.see(
                    rel(
                        v(ws_linear_power(same, m)),
                        v(equal_order_linear_weight(l, m)),
                    ),
                    tol,
                    || format!("linear (l,l,0) l={l} k={k:?}"),
                );
                worst.see(
                    rel(v(ws_linear_power(mixed, m)), v(linear_weight_vs_j0(l, m))),
                    tol,
                    || format!("linear (l,0,l) l={l} k={k:?}"),
                );
            }
        }
    }
    let passed = worst.passed() && start.elapsed() < Duration::from_secs(10);
    report(
        5,
        "reduction consistency",
        passed,
        start.elapsed(),
        &worst.detail(),
    );
    assert!(passed, "{}", worst.detail());
}

#[test]
fn criterion_6_spot_values() {
    let start = Instant::now();
    let c = QuadratureConfig::default();
    let p = |a, b| MomentumPair::new(a, b).unwrap();
    let cases = [
        (
            "j0(r) j0(2r)",
            integrate_two_bessel(0, 0, 0, p(1.0, 2.0), &c)
                .unwrap()
                .estimate,
            PI / 4.0,
        ),
        (
            "r j0(r) j0(2r)",
            integrate_two_bessel(1, 0, 0, p(1.0, 2.0), &c)
                .unwrap()
                .estimate,
            0.25 * 3f64.ln(),
        ),
        (
            "j1(r) j0(r) / r",
            integrate_two_bessel(-1, 1, 0, p(1.0, 1.0), &c)
                .unwrap()
                .estimate,
            PI / 6.0,
        ),
        (
            "r j0(2r), Abel",
            integrate_single_bessel(1, 0, 2.0, &c).unwrap().estimate,
            0.25,
        ),
    ];
    let mut worst = Worst::default();
    for (name, got, expected) in cases {
        worst.see(rel(got, expected), 1e-8, || name.to_string());
    }
    report(
        6,
        "spot values",
        worst.passed(),
        start.elapsed(),
        &worst.detail(),
    );
    assert!(worst.passed(), "{}", worst.detail());
}

#[test]
fn criterion_7_swap_symmetry_and_scaling() {
    let start = Instant::now();
    let tol = 1e-11;
    let mut worst = Worst::default();
    for t in applicable_triples(6) {
        let l3 = t.lambda3 as i32;
        for k in PAIRS {
            let m = pair(k);
            let swapped = m.swapped();
            let a = ws_inverse_power(t, m).value.unwrap();
            let b = ws_inverse_power(t.swapped(), swapped).value.unwrap();
            worst.see(rel(b, a), tol, || format!("inverse swap {t} k={k:?}"));
            for s in [0.5, 3.0] {
                let scaled = ws_inverse_power(t, m.scaled(s)).value.unwrap();
                worst.see(rel(scaled, s.powi(l3 - 1) * a), tol, || {
                    format!("inverse scale {s} {t} k={k:?}")
                });
            }
            if k.0 != k.1 {
                let a = ws_linear_power(t, m).value.unwrap();
                let b = ws_linear_power(t.swapped(), swapped).value.unwrap();
                worst.see(rel(b, a), tol, || format!("linear swap {t} k={k:?}"));
                for s in [0.5, 3.0] {
                    let scaled = ws_linear_power(t, m.scaled(s)).value.unwrap();
                    worst.see(rel(scaled, s.powi(l3 - 2) * a), tol, || {
                        format!("linear scale {s} {t} k={k:?}")
                    });
                }
            }
        }
    }
    report(
        7,
        "swap symmetry and scaling",
        worst.passed(),
        start.elapsed(),
        &worst.detail(),
    );
    assert!(worst.passed(), "{}", worst.detail());
}

#[test]
fn criterion_8_wigner_exactness() {
    let start = Instant::now();
    let mut bad = 0;
    for l1 in 0..=10u32 {
        for l2 in 0..=10u32 {
            let mut sum = BigRational::zero();
            for l3 in l1.abs_diff(l2)..=l1 + l2 {
                let w = wigner3j_zero(AngularTriple::new(l1, l2, l3));
                sum += w.square() * BigRational::from_integer((2 * l3 + 1).into());
            }
            if !sum.is_one() {
                bad += 1;
            }
        }
    }
    let t = AngularTriple::new(8, 6, 4);
    let routes_agree = wigner3j_zero(t) == wigner3j_zero_racah(t);
    let passed = bad == 0 && routes_agree;
    report(
        8,
        "Wigner orthogonality and 3j routes",
        passed,
        start.elapsed(),
        &format!("{bad} orthogonality failures, (8,6,4) routes agree: {routes_agree}"),
    );
    assert!(passed);
}

#[test]
fn criterion_9_negative_controls() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_spherical-ws");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("binary runs");
    let parity = run(&[
        "eval",
        "--family",
        "inverse_power",
        "--orders",
        "1,1,1",
        "--momenta",
        "1,2",
    ]);
    let equal = run(&[
        "eval",
        "--family",
        "linear_power",
        "--orders",
        "0,0,0",
        "--momenta",
        "1,1",
    ]);
    let parity_text = String::from_utf8_lossy(&parity.stdout).to_string();
    let equal_text = String::from_utf8_lossy(&equal.stdout).to_string();
    let passed = parity.status.code() == Some(2)
        && equal.status.code() == Some(3)
        && parity_text.contains("not applicable (odd parity: 3j = 0)")
        && equal_text.contains("divergent (k1 = k2, Q_l(1) infinite)");
    report(
        9,
        "negative controls",
        passed,
        start.elapsed(),
        &format!(
            "parity exit {:?}, equal-momenta exit {:?}",
            parity.status.code(),
            equal.status.code()
        ),
    );
    assert!(passed, "{parity_text}\n{equal_text}");
}

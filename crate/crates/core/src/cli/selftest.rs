//! Identity, orthogonality, recurrence, reduction and closure checks.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::angular::{wigner3j_zero, AngularTriple};
use crate::momenta::{MomentumPair, MomentumTriple};
use crate::specfun::{legendre_p, legendre_q, spherical_j, MAX_BESSEL_ORDER};
use crate::weberschafheitlin::{self as ws, BetaConvention, ChainFamily};

pub const MAX_SELFTEST_LAMBDA: u32 = 200;

const PAIRS: [(f64, f64); 4] = [(1.0, 2.0), (0.3, 1.7), (2.5, 2.5), (1.0, 10.0)];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
    pub cases: usize,
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

struct Tally {
    worst: f64,
    cases: usize,
    failed: bool,
}

impl Tally {
    fn new() -> Self {
        Tally {
            worst: 0.0,
            cases: 0,
            failed: false,
        }
    }

    fn record(&mut self, residual: f64, tolerance: f64) {
        self.cases += 1;
        if residual.is_nan() || residual > tolerance {
            self.failed = true;
        }
        if residual.is_nan() {
            self.worst = f64::NAN;
        } else if !self.worst.is_nan() {
            self.worst = self.worst.max(residual);
        }
    }

    fn finish(self, name: &'static str, tolerance: f64) -> Check {
        Check {
            name,
            passed: !self.failed,
            worst: self.worst,
            tolerance,
            cases: self.cases,
        }
    }
}

pub fn run(max_lambda: u32, convention: BetaConvention) -> Vec<Check> {
    vec![
        identity(max_lambda),
        orthogonality(max_lambda.min(10)),
        recurrences(max_lambda.min(MAX_BESSEL_ORDER - 1)),
        reductions(max_lambda.min(6), convention),
        closure(max_lambda.min(4), convention),
    ]
}

/// `Σ_L (−1)^L C(λ,L)/(2L+1) = 2^λ λ!/(2λ+1)!!`, exactly.
fn identity(max_lambda: u32) -> Check {
    let mut tally = Tally::new();
    for lambda in 0..=max_lambda {
        let (lhs, rhs) = ws::sum_identity_check(lambda);
        tally.record(if lhs == rhs { 0.0 } else { 1.0 }, 0.0);
    }
    tally.finish("identity", 0.0)
}

/// `Σ_{λ3} (2λ3+1) (λ1 λ2 λ3; 0 0 0)² = 1`, exactly.
fn orthogonality(max_lambda: u32) -> Check {
    let mut tally = Tally::new();
    for l1 in 0..=max_lambda {
        for l2 in 0..=max_lambda {
            let mut sum = BigRational::zero();
            for l3 in l1.abs_diff(l2)..=l1 + l2 {
                let w = wigner3j_zero(AngularTriple::new(l1, l2, l3));
                sum += w.square() * BigRational::from_integer((2 * l3 + 1).into());
            }
            tally.record(if sum.is_one() { 0.0 } else { 1.0 }, 0.0);
        }
    }
    tally.finish("orthogonality", 0.0)
}

/// Three-term recurrences of `j_l`, `P_l` and `Q_l`, relative to the size
/// of the terms involved.
fn recurrences(max_lambda: u32) -> Check {
    let tol = 1e-12;
    let mut tally = Tally::new();
    for l in 1..=max_lambda.max(1) {
        let lf = f64::from(l);
        for &x in &[0.5, 3.0, 17.0, 60.0] {
            let (a, b, c) = (
                spherical_j(l - 1, x).unwrap(),
                spherical_j(l, x).unwrap(),
                spherical_j(l + 1, x).unwrap(),
            );
            let scale = a.abs().max(c.abs()).max(((2.0 * lf + 1.0) / x * b).abs());
            tally.record((a + c - (2.0 * lf + 1.0) / x * b).abs() / scale, tol);
        }
        for &x in &[-0.7, 0.2, 0.9] {
            let (a, b, c) = (
                legendre_p(l - 1, x).unwrap(),
                legendre_p(l, x).unwrap(),
                legendre_p(l + 1, x).unwrap(),
            );
            let r = (lf + 1.0) * c - (2.0 * lf + 1.0) * x * b + lf * a;
            let scale = ((lf + 1.0) * c).abs().max(lf * a.abs()).max(1.0);
            tally.record(r.abs() / scale, tol);
        }
        for &x in &[1.05, 1.25, 3.0] {
            let (a, b, c) = (
                legendre_q(l - 1, x).unwrap(),
                legendre_q(l, x).unwrap(),
                legendre_q(l + 1, x).unwrap(),
            );
            let r = (lf + 1.0) * c - (2.0 * lf + 1.0) * x * b + lf * a;
            let scale = ((lf + 1.0) * c)
                .abs()
                .max(lf * a.abs())
                .max(((2.0 * lf + 1.0) * x * b).abs());
            tally.record(r.abs() / scale, tol);
        }
    }
    tally.finish("recurrences", tol)
}

/// Each general closed form against its special cases.
fn reductions(max_lambda: u32, convention: BetaConvention) -> Check {
    let tol = 1e-12;
    let mut tally = Tally::new();
    let value = |r: ws::ClosedFormResult| r.value.unwrap_or(f64::NAN);
    for lambda in 0..=max_lambda {
        let same = AngularTriple::new(lambda, lambda, 0);
        let mixed = AngularTriple::new(lambda, 0, lambda);
        for &(k1, k2) in &PAIRS {
            let m = MomentumPair::new(k1, k2).unwrap();
            tally.record(
                rel(
                    value(ws::ws_inverse_power(same, m)),
                    value(ws::equal_order_no_weight(lambda, m)),
                ),
                tol,
            );
            tally.record(
                rel(
                    value(ws::ws_inverse_power(mixed, m)),
                    value(ws::inverse_power_vs_j0(lambda, m)),
                ),
                tol,
            );
            if k1 != k2 {
                tally.record(
                    rel(
                        value(ws::ws_linear_power(same, m)),
                        value(ws::equal_order_linear_weight(lambda, m)),
                    ),
                    tol,
                );
                tally.record(
                    rel(
                        value(ws::ws_linear_power(mixed, m)),
                        value(ws::linear_weight_vs_j0(lambda, m)),
                    ),
                    tol,
                );
            }
        }
        let k = 1.7;
        let m = MomentumPair::new(k, k).unwrap();
        tally.record(
            rel(
                value(ws::inverse_power_vs_j0(lambda, m)),
                value(ws::equal_k_inverse_power(lambda, k)),
            ),
            tol,
        );
        // With λ3 = 0 the triple-Bessel series collapses to a single Legendre
        // polynomial inside the momentum triangle and vanishes outside it.
        for &(k1, k2, k3) in &[
            (1.0, 1.0, 1.0),
            (1.0, 2.0, 2.5),
            (3.0, 4.0, 5.0),
            (1.0, 1.0, 3.0),
        ] {
            let t = MomentumTriple::new(k1, k2, k3).unwrap();
            let got = value(ws::triple_bessel_with(same, t, convention));
            let expected = if t.in_triangle() {
                PI / (4.0 * k1 * k2 * k3) * legendre_p(lambda, t.delta()).unwrap()
            } else {
                0.0
            };
            tally.record(rel(got, expected), tol);
        }
    }
    tally.finish("reductions", tol)
}

/// Two-Bessel closed forms rebuilt from the triple-Bessel one by
/// integrating over the third momentum.
fn closure(max_lambda: u32, convention: BetaConvention) -> Check {
    let tol = 1e-9;
    let mut tally = Tally::new();
    let pairs = [(1.0, 2.0), (0.3, 1.7)];
    for l1 in 0..=max_lambda {
        for l2 in 0..=max_lambda {
            for l3 in 0..=max_lambda {
                let triple = AngularTriple::new(l1, l2, l3);
                if !triple.applicable() {
                    continue;
                }
                for &(k1, k2) in &pairs {
                    let m = MomentumPair::new(k1, k2).unwrap();
                    for family in [ChainFamily::InversePower, ChainFamily::LinearPower] {
                        let expected = match family {
                            ChainFamily::InversePower => ws::ws_inverse_power(triple, m),
                            ChainFamily::LinearPower => ws::ws_linear_power(triple, m),
                        };
                        let got = ws::closure_chain_with(triple, m, family, convention);
                        let residual = match (got, expected.value) {
                            (Ok(g), Some(e)) => rel(g, e),
                            _ => f64::NAN,
                        };
                        tally.record(residual, tol);
                    }
                }
            }
        }
    }
    tally.finish("closure_chain", tol)
}

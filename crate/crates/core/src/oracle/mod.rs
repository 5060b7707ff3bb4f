//! Direct numerical quadrature of Bessel-product integrals.
//!
//! The integral is split at a cut-off `R0`. The head `[0, R0]` is integrated
//! adaptively from `spherical_j` values; the tail is handled wave by wave
//! (see [`tail`]). Integrals that exist only in the Abel sense, or whose
//! tails decay too slowly for a plain alternating sum, are evaluated with an
//! `e^{−εr}` regulator over a decreasing sequence of `ε` and extrapolated to
//! `ε = 0`.
//!
//! This module depends only on the special functions and the generic
//! quadrature routines, never on the closed forms it is used to check.

mod tail;

use crate::error::{Error, Result};
use crate::momenta::{MomentumPair, MomentumTriple};
use crate::quadrature::{extrapolate_to_zero, integrate_adaptive};
use crate::specfun::{spherical_j, MAX_BESSEL_ORDER};

use tail::{integrate_wave, CellOptions, Product};

/// Highest order accepted in a three-Bessel integrand.
pub const MAX_TRIPLE_ORDER: u32 = 20;

/// When to take the regulated path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Regularization {
    /// Regulate whenever the integrand class requires it.
    #[default]
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Relative tolerance of the adaptive head integration.
    pub head_tolerance: f64,
    /// Number of half-period cells summed in each tail wave.
    pub cell_count: usize,
    /// Number of iterated Aitken sweeps on the tail partial sums.
    pub acceleration_order: usize,
    /// Strictly decreasing positive regulator values.
    pub regulator_sequence: Vec<f64>,
    /// Polynomial degree of the extrapolation to zero regulator.
    pub extrapolation_order: usize,
    pub regularization: Regularization,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            head_tolerance: 1e-12,
            cell_count: 200,
            acceleration_order: 10,
            regulator_sequence: (0..8).map(|i| 0.2 / f64::from(1u32 << i)).collect(),
            extrapolation_order: 4,
            regularization: Regularization::Auto,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.head_tolerance > 0.0 && self.head_tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "head tolerance must be positive, got {}",
                self.head_tolerance
            )));
        }
        if self.cell_count < 3 {
            return Err(Error::InvalidArgument(
                "at least 3 tail cells are required".into(),
            ));
        }
        if self.regulator_sequence.is_empty() {
            return Err(Error::InvalidArgument("regulator sequence is empty".into()));
        }
        if self
            .regulator_sequence
            .iter()
            .any(|e| !(*e > 0.0 && e.is_finite()))
        {
            return Err(Error::InvalidArgument("regulators must be positive".into()));
        }
        if self.regulator_sequence.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument(
                "regulator sequence must be strictly decreasing".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    pub estimate: f64,
    pub error_estimate: f64,
    /// Tail cells summed, over all waves and regulator values.
    pub cells_used: usize,
    pub regularized: bool,
    /// Change of the extrapolated value from one degree lower; zero on the
    /// direct path.
    pub extrapolation_residual: f64,
}

/// `∫_0^∞ r^p j_{λ1}(k1 r) j_{λ2}(k2 r) dr`.
pub fn integrate_two_bessel(
    p: i32,
    lambda1: u32,
    lambda2: u32,
    momenta: MomentumPair,
    config: &QuadratureConfig,
) -> Result<QuadratureReport> {
    for l in [lambda1, lambda2] {
        if l > MAX_BESSEL_ORDER {
            return Err(Error::OrderOutOfRange {
                order: l,
                max: MAX_BESSEL_ORDER,
            });
        }
    }
    if i64::from(p) + i64::from(lambda1) + i64::from(lambda2) <= -1 {
        return Err(Error::NotIntegrable { exponent: p });
    }
    let product = Product {
        factors: vec![(lambda1, momenta.k1), (lambda2, momenta.k2)],
        power: p,
    };
    // Each wave of the tail is summed separately, so a plain alternating sum
    // already converges whenever the integral does.
    let regulate = matches!(config.regularization, Regularization::Always);
    integrate_product(&product, regulate, config)
}

/// `∫_0^∞ r² j_{λ1}(k1 r) j_{λ2}(k2 r) j_{λ3}(k3 r) dr`.
pub fn integrate_three_bessel(
    lambda1: u32,
    lambda2: u32,
    lambda3: u32,
    momenta: MomentumTriple,
    config: &QuadratureConfig,
) -> Result<QuadratureReport> {
    for l in [lambda1, lambda2, lambda3] {
        if l > MAX_TRIPLE_ORDER {
            return Err(Error::OrderOutOfRange {
                order: l,
                max: MAX_TRIPLE_ORDER,
            });
        }
    }
    if momenta.on_boundary() {
        return Err(Error::Divergent(
            "momenta on the triangle boundary, |Δ| = 1".into(),
        ));
    }
    let product = Product {
        factors: vec![
            (lambda1, momenta.k1),
            (lambda2, momenta.k2),
            (lambda3, momenta.k3),
        ],
        power: 2,
    };
    let regulate = !matches!(config.regularization, Regularization::Never);
    integrate_product(&product, regulate, config)
}

/// `∫_0^∞ r^p j_λ(k r) dr`, in the Abel sense when it does not converge.
pub fn integrate_single_bessel(
    p: i32,
    lambda: u32,
    k: f64,
    config: &QuadratureConfig,
) -> Result<QuadratureReport> {
    if lambda > MAX_BESSEL_ORDER {
        return Err(Error::OrderOutOfRange {
            order: lambda,
            max: MAX_BESSEL_ORDER,
        });
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain {
            value: k,
            domain: "k > 0",
        });
    }
    if i64::from(p) + i64::from(lambda) <= -1 {
        return Err(Error::NotIntegrable { exponent: p });
    }
    let product = Product {
        factors: vec![(lambda, k)],
        power: p,
    };
    let regulate = match config.regularization {
        Regularization::Auto => p >= 0,
        Regularization::Always => true,
        Regularization::Never => false,
    };
    integrate_product(&product, regulate, config)
}

fn integrate_product(
    product: &Product,
    regulate: bool,
    config: &QuadratureConfig,
) -> Result<QuadratureReport> {
    config.validate()?;
    let min_k = product
        .factors
        .iter()
        .map(|f| f.1)
        .fold(f64::INFINITY, f64::min);
    // Past the cut-off the terminating Hankel expansion of every factor is
    // well conditioned; large orders push it out beyond 20·max(1/k, 1).
    let cutoff = product
        .factors
        .iter()
        .map(|&(l, k)| f64::from(l * l) / k)
        .fold(20.0 * (1.0 / min_k).max(1.0), f64::max);
    let waves = product.waves();
    if regulate {
        let mut points = Vec::with_capacity(config.regulator_sequence.len());
        let mut cells_used = 0;
        let mut quadrature_error: f64 = 0.0;
        for &eps in &config.regulator_sequence {
            let (value, error, cells) = evaluate(product, &waves, cutoff, eps, config)?;
            cells_used += cells;
            quadrature_error = quadrature_error.max(error);
            points.push((eps, value));
        }
        let (estimate, residual) = extrapolate_to_zero(&points, config.extrapolation_order);
        if !estimate.is_finite() {
            return Err(Error::NoConvergence(
                "regulator extrapolation produced a non-finite value".into(),
            ));
        }
        Ok(QuadratureReport {
            estimate,
            error_estimate: residual + quadrature_error,
            cells_used,
            regularized: true,
            extrapolation_residual: residual,
        })
    } else {
        let (estimate, error_estimate, cells_used) =
            evaluate(product, &waves, cutoff, 0.0, config)?;
        Ok(QuadratureReport {
            estimate,
            error_estimate,
            cells_used,
            regularized: false,
            extrapolation_residual: 0.0,
        })
    }
}

/// Head plus tail at a single regulator value.
fn evaluate(
    product: &Product,
    waves: &[tail::Wave],
    cutoff: f64,
    eps: f64,
    config: &QuadratureConfig,
) -> Result<(f64, f64, usize)> {
    let total_k: f64 = product.factors.iter().map(|f| f.1).sum();
    let panels = (cutoff * total_k / std::f64::consts::PI).ceil().max(1.0) as usize;
    let mut failure = None;
    let head = integrate_adaptive(
        |r: f64| match integrand(product, r) {
            Ok(v) => v * (-eps * r).exp(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        cutoff,
        panels,
        config.head_tolerance,
        0.0,
        panels * 64 + 1000,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    if !head.value.is_finite() {
        return Err(Error::NoConvergence("head integral is not finite".into()));
    }
    let options = CellOptions {
        cell_count: config.cell_count,
        acceleration_order: config.acceleration_order,
        regulator: eps,
    };
    let mut value = head.value;
    let mut error = head.error;
    let mut cells = 0;
    for wave in waves {
        let piece = integrate_wave(wave, cutoff, options)?;
        value += piece.value;
        error += piece.error;
        cells += piece.cells;
    }
    Ok((value, error, cells))
}

fn integrand(product: &Product, r: f64) -> Result<f64> {
    if r >= 1.0 {
        let mut v = r.powi(product.power);
        for &(l, k) in &product.factors {
            v *= spherical_j(l, k * r)?;
        }
        return Ok(v);
    }
    // Near the origin j_l(kr) ~ (kr)^l; divide the powers out first so the
    // factors and r^p cannot underflow and overflow against each other.
    let mut v = 1.0;
    let mut total_power = product.power;
    for &(l, k) in &product.factors {
        let x = k * r;
        v *= spherical_j(l, x)? / x.powi(l as i32) * k.powi(l as i32);
        total_power += l as i32;
    }
    Ok(v * r.powi(total_power))
}

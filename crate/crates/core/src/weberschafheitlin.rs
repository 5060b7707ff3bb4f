//! Closed forms for integrals of two and three spherical Bessel functions.
//!
//! The two main families are
//!
//! ```text
//! ∫₀^∞ j_{λ1}(k1 r) j_{λ2}(k2 r) r^{−λ3} dr        (inverse power)
//! ∫₀^∞ j_{λ1}(k1 r) j_{λ2}(k2 r) r^{1−λ3} dr       (linear power)
//! ```
//!
//! for orders that satisfy the zero-projection 3j selection rules. Both are
//! finite double sums over a recoupling index `L ∈ [0, λ3]` and an
//! intermediate order `l`, with coefficients built from two 3j symbols and a
//! 6j symbol. The coefficients are assembled exactly (see
//! [`crate::angular::WignerValue`]) and rounded once; only the momentum
//! dependence (`k<^l / k>^{l+1}`, `Q_l(χ)` or `P_l(Δ)`) is floating point.
//!
//! Every evaluator returns the bare integral. The coupling identities carry
//! an overall `(λ1 λ2 λ3; 0 0 0)` which is divided out, so the orders must
//! be [`AngularTriple::applicable`].

use std::f64::consts::PI;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::angular::{wigner3j_zero, wigner6j, AngularTriple, WignerValue};
use crate::error::{Error, Result};
pub use crate::momenta::{MomentumPair, MomentumTriple};
use crate::quadrature::integrate_adaptive;
use crate::specfun::{binomial, double_factorial, legendre_p_unchecked, legendre_q, sqrt_binomial};

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    TripleBessel,
    InversePower,
    LinearPower,
    EqualOrderNoWeight,
    InversePowerVsJ0,
    EqualKInversePower,
    EqualOrderLinearWeight,
    LinearWeightVsJ0,
    SingleBesselInversePower,
    SingleBesselLinear,
}

impl Formula {
    pub const ALL: [Formula; 10] = [
        Formula::TripleBessel,
        Formula::InversePower,
        Formula::LinearPower,
        Formula::EqualOrderNoWeight,
        Formula::InversePowerVsJ0,
        Formula::EqualKInversePower,
        Formula::EqualOrderLinearWeight,
        Formula::LinearWeightVsJ0,
        Formula::SingleBesselInversePower,
        Formula::SingleBesselLinear,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Formula::TripleBessel => "triple_bessel",
            Formula::InversePower => "inverse_power",
            Formula::LinearPower => "linear_power",
            Formula::EqualOrderNoWeight => "equal_order_no_weight",
            Formula::InversePowerVsJ0 => "inverse_power_vs_j0",
            Formula::EqualKInversePower => "equal_k_inverse_power",
            Formula::EqualOrderLinearWeight => "equal_order_linear_weight",
            Formula::LinearWeightVsJ0 => "linear_weight_vs_j0",
            Formula::SingleBesselInversePower => "single_bessel_inverse_power",
            Formula::SingleBesselLinear => "single_bessel_linear",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Formula> {
        Formula::ALL.into_iter().find(|f| f.tag() == tag)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvergenceClass {
    Absolute,
    Conditional,
    Regularized,
    Divergent,
}

impl ConvergenceClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ConvergenceClass::Absolute => "absolute",
            ConvergenceClass::Conditional => "conditional",
            ConvergenceClass::Regularized => "regularized",
            ConvergenceClass::Divergent => "divergent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Ok,
    NotApplicable,
    Divergent,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotApplicable => "not_applicable",
            Status::Divergent => "divergent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormResult {
    /// Set exactly when `status == Status::Ok`.
    pub value: Option<f64>,
    pub formula: Formula,
    pub convergence: ConvergenceClass,
    pub status: Status,
    /// Human-readable reason for a non-ok status.
    pub reason: Option<String>,
}

impl ClosedFormResult {
    fn ok(formula: Formula, convergence: ConvergenceClass, value: f64) -> Self {
        ClosedFormResult {
            value: Some(value),
            formula,
            convergence,
            status: Status::Ok,
            reason: None,
        }
    }

    fn not_applicable(
        formula: Formula,
        convergence: ConvergenceClass,
        triple: AngularTriple,
    ) -> Self {
        let reason = if !triple.parity_ok() {
            "odd parity: 3j = 0"
        } else {
            "triangle rule violated: 3j = 0"
        };
        ClosedFormResult {
            value: None,
            formula,
            convergence,
            status: Status::NotApplicable,
            reason: Some(reason.to_string()),
        }
    }

    fn divergent(formula: Formula, reason: &str) -> Self {
        ClosedFormResult {
            value: None,
            formula,
            convergence: ConvergenceClass::Divergent,
            status: Status::Divergent,
            reason: Some(reason.to_string()),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

/// `β(Δ)`: momentum-triangle indicator.
pub fn beta(delta: f64) -> f64 {
    if delta.abs() < 1.0 {
        1.0
    } else {
        0.0
    }
}

/// Convention used for `β` when evaluating the triple-Bessel series. Only
/// the self-test's negative control uses the flipped form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BetaConvention {
    Indicator,
    Flipped,
}

impl BetaConvention {
    fn apply(self, delta: f64) -> f64 {
        match self {
            BetaConvention::Indicator => beta(delta),
            BetaConvention::Flipped => 1.0 - beta(delta),
        }
    }
}

/// One `(L, l)` term of a coupling series with its exact coefficient
/// rounded to `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingTerm {
    pub big_l: u32,
    pub l: u32,
    pub coefficient: f64,
}

/// The double sum shared by the triple-Bessel, inverse-power and
/// linear-power closed forms:
///
/// ```text
/// Σ_{L=0}^{λ3} Σ_l  c(L, l) (k2/k1)^L g(l)
/// c(L, l) = ε √(2λ3+1) √C(2λ3, 2L) w(l) (λ1 λ3−L l; 0 0 0)(λ2 L l; 0 0 0)
///           {λ1 λ2 λ3; L λ3−L l} R / (λ1 λ2 λ3; 0 0 0)
/// ```
///
/// with phase `ε = (−1)^{(λ1+λ2−λ3)/2}`, weight `w(l)` equal to `2l+1` or
/// 1, and an exact rational prefactor `R` folded into the coefficient.
#[derive(Debug, Clone)]
pub struct CouplingSeries {
    triple: AngularTriple,
    terms: Vec<CouplingTerm>,
}

impl CouplingSeries {
    fn build(triple: AngularTriple, weighted: bool, prefactor: &BigRational) -> Option<Self> {
        let norm = wigner3j_zero(triple).recip()?;
        let [l1, l2, l3] = triple.as_array();
        let phase = if ((l1 + l2 - l3) / 2) % 2 == 0 { 1 } else { -1 };
        let common = &(&norm * &WignerValue::from_rational(prefactor))
            * &WignerValue::sqrt_of(phase, &BigRational::from_integer((2 * l3 + 1).into()));
        let mut terms = Vec::new();
        for big_l in 0..=l3 {
            let rest = l3 - big_l;
            let binom = sqrt_binomial(u64::from(2 * l3), u64::from(2 * big_l)).expect("2L <= 2λ3");
            let outer = &common * &binom;
            let lo = l1.abs_diff(rest).max(l2.abs_diff(big_l));
            let hi = (l1 + rest).min(l2 + big_l);
            for l in lo..=hi {
                if (l1 + rest + l) % 2 != 0 || (l2 + big_l + l) % 2 != 0 {
                    continue;
                }
                let mut c = &outer * &wigner3j_zero(AngularTriple::new(l1, rest, l));
                c = &c * &wigner3j_zero(AngularTriple::new(l2, big_l, l));
                c = &c * &wigner6j(l1, l2, l3, big_l, rest, l);
                if weighted {
                    c = &c * &WignerValue::from_integer(i64::from(2 * l + 1));
                }
                if c.is_zero() {
                    continue;
                }
                terms.push(CouplingTerm {
                    big_l,
                    l,
                    coefficient: c.to_f64(),
                });
            }
        }
        Some(CouplingSeries { triple, terms })
    }

    /// Series of the triple-Bessel closed form (weight `2l+1`, `R = 1`).
    pub fn triple_bessel(triple: AngularTriple) -> Option<Self> {
        CouplingSeries::build(triple, true, &BigRational::one())
    }

    /// Series of the inverse-power closed form (weight 1,
    /// `R = 1 / (2^λ3 λ3!)`).
    pub fn inverse_power(triple: AngularTriple) -> Option<Self> {
        let l3 = triple.lambda3;
        let den = (BigUint::one() << l3 as usize) * crate::angular::factorial(u64::from(l3));
        CouplingSeries::build(triple, false, &BigRational::new(BigInt::one(), den.into()))
    }

    /// Series of the linear-power closed form (weight `2l+1`,
    /// `R = 1 / (2λ3−1)!!`).
    pub fn linear_power(triple: AngularTriple) -> Option<Self> {
        let den = double_factorial(2 * i64::from(triple.lambda3) - 1).expect("n >= -1");
        CouplingSeries::build(triple, true, &BigRational::new(BigInt::one(), den.into()))
    }

    pub fn triple(&self) -> AngularTriple {
        self.triple
    }

    pub fn terms(&self) -> &[CouplingTerm] {
        &self.terms
    }

    /// Largest intermediate order `l` appearing in the series.
    pub fn max_l(&self) -> u32 {
        self.terms.iter().map(|t| t.l).max().unwrap_or(0)
    }

    /// `Σ c(L,l) ratio^L g(l)`, summed in increasing magnitude.
    fn sum(&self, ratio: f64, g: &[f64]) -> f64 {
        let mut contributions: Vec<f64> = self
            .terms
            .iter()
            .map(|t| t.coefficient * ratio.powi(t.big_l as i32) * g[t.l as usize])
            .collect();
        contributions.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        contributions.iter().sum()
    }

    fn evaluate_triple(&self, momenta: MomentumTriple, convention: BetaConvention) -> f64 {
        let delta = momenta.delta();
        let b = convention.apply(delta);
        if b == 0.0 {
            return 0.0;
        }
        let MomentumTriple { k1, k2, k3 } = momenta;
        let g: Vec<f64> = (0..=self.max_l())
            .map(|l| legendre_p_unchecked(l, delta))
            .collect();
        let l3 = self.triple.lambda3 as i32;
        PI * b / (4.0 * k1 * k2 * k3) * (k1 / k3).powi(l3) * self.sum(k2 / k1, &g)
    }

    fn evaluate_inverse_power(&self, momenta: MomentumPair) -> f64 {
        let g: Vec<f64> = (0..=self.max_l()).map(|l| momenta.ratio_power(l)).collect();
        let l3 = self.triple.lambda3 as i32;
        0.5 * PI * momenta.k1.powi(l3) * self.sum(momenta.k2 / momenta.k1, &g)
    }

    fn evaluate_linear_power(&self, momenta: MomentumPair) -> Result<f64> {
        let chi = momenta.chi();
        let g = (0..=self.max_l())
            .map(|l| legendre_q(l, chi))
            .collect::<Result<Vec<f64>>>()?;
        let MomentumPair { k1, k2 } = momenta;
        let l3 = self.triple.lambda3 as i32;
        Ok(k1.powi(l3) / (2.0 * k1 * k2) * self.sum(k2 / k1, &g))
    }
}

const EQUAL_MOMENTA: &str = "k1 = k2, Q_l(1) infinite";

/// `∫₀^∞ r² j_{λ1}(k1 r) j_{λ2}(k2 r) j_{λ3}(k3 r) dr`.
pub fn triple_bessel(triple: AngularTriple, momenta: MomentumTriple) -> ClosedFormResult {
    triple_bessel_with(triple, momenta, BetaConvention::Indicator)
}

pub(crate) fn triple_bessel_with(
    triple: AngularTriple,
    momenta: MomentumTriple,
    convention: BetaConvention,
) -> ClosedFormResult {
    let class = ConvergenceClass::Conditional;
    let Some(series) = CouplingSeries::triple_bessel(triple) else {
        return ClosedFormResult::not_applicable(Formula::TripleBessel, class, triple);
    };
    if momenta.on_boundary() {
        return ClosedFormResult::divergent(
            Formula::TripleBessel,
            "|Δ| = 1: momenta on the triangle boundary",
        );
    }
    let value = series.evaluate_triple(momenta, convention);
    ClosedFormResult::ok(Formula::TripleBessel, class, value)
}

/// `∫₀^∞ j_{λ1}(k1 r) j_{λ2}(k2 r) r^{−λ3} dr`.
pub fn ws_inverse_power(triple: AngularTriple, momenta: MomentumPair) -> ClosedFormResult {
    let class = ConvergenceClass::Absolute;
    match CouplingSeries::inverse_power(triple) {
        Some(series) => ClosedFormResult::ok(
            Formula::InversePower,
            class,
            series.evaluate_inverse_power(momenta),
        ),
        None => ClosedFormResult::not_applicable(Formula::InversePower, class, triple),
    }
}

/// `∫₀^∞ r^{1−λ3} j_{λ1}(k1 r) j_{λ2}(k2 r) dr`, `k1 ≠ k2`.
pub fn ws_linear_power(triple: AngularTriple, momenta: MomentumPair) -> ClosedFormResult {
    let class = if triple.lambda3 == 0 {
        ConvergenceClass::Conditional
    } else {
        ConvergenceClass::Absolute
    };
    let Some(series) = CouplingSeries::linear_power(triple) else {
        return ClosedFormResult::not_applicable(Formula::LinearPower, class, triple);
    };
    if momenta.is_equal() {
        return ClosedFormResult::divergent(Formula::LinearPower, EQUAL_MOMENTA);
    }
    match series.evaluate_linear_power(momenta) {
        Ok(v) => ClosedFormResult::ok(Formula::LinearPower, class, v),
        Err(_) => ClosedFormResult::divergent(Formula::LinearPower, EQUAL_MOMENTA),
    }
}

/// `∫₀^∞ j_λ(k1 r) j_λ(k2 r) dr = π/(2(2λ+1)) k<^λ / k>^{λ+1}`.
pub fn equal_order_no_weight(lambda: u32, momenta: MomentumPair) -> ClosedFormResult {
    let value = PI / (2.0 * f64::from(2 * lambda + 1)) * momenta.ratio_power(lambda);
    ClosedFormResult::ok(
        Formula::EqualOrderNoWeight,
        ConvergenceClass::Absolute,
        value,
    )
}

/// `∫₀^∞ r^{−λ} j_λ(k1 r) j_0(k2 r) dr` as the finite sum over `L ≤ λ`.
pub fn inverse_power_vs_j0(lambda: u32, momenta: MomentumPair) -> ClosedFormResult {
    let MomentumPair { k1, k2 } = momenta;
    let ratio = k2 / k1;
    let mut terms: Vec<f64> = (0..=lambda)
        .map(|big_l| {
            let c = binomial(u64::from(lambda), u64::from(big_l))
                .expect("L <= λ")
                .to_f64()
                .unwrap_or(f64::INFINITY);
            let sign = if big_l % 2 == 0 { 1.0 } else { -1.0 };
            sign * c / f64::from(2 * big_l + 1)
                * ratio.powi(big_l as i32)
                * momenta.ratio_power(big_l)
        })
        .collect();
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let sum: f64 = terms.iter().sum();
    let value = 0.5 * PI * k1.powi(lambda as i32) * sum * inverse_two_pow_factorial(lambda);
    ClosedFormResult::ok(Formula::InversePowerVsJ0, ConvergenceClass::Absolute, value)
}

fn inverse_two_pow_factorial(lambda: u32) -> f64 {
    let den = (BigUint::one() << lambda as usize) * crate::angular::factorial(u64::from(lambda));
    1.0 / den.to_f64().unwrap_or(f64::INFINITY)
}

fn inverse_double_factorial(n: i64) -> f64 {
    let df = double_factorial(n).expect("n >= -1");
    1.0 / df.to_f64().unwrap_or(f64::INFINITY)
}

/// `∫₀^∞ r^{−λ} j_λ(k r) j_0(k r) dr = (π/2) k^{λ−1} / (2λ+1)!!`.
pub fn equal_k_inverse_power(lambda: u32, k: f64) -> ClosedFormResult {
    let value =
        0.5 * PI * k.powi(lambda as i32 - 1) * inverse_double_factorial(2 * i64::from(lambda) + 1);
    ClosedFormResult::ok(
        Formula::EqualKInversePower,
        ConvergenceClass::Absolute,
        value,
    )
}

/// Both sides of `Σ_{L=0}^{λ} (−1)^L C(λ,L) / (2L+1) = 2^λ λ! / (2λ+1)!!`
/// as exact rationals.
pub fn sum_identity_check(lambda: u32) -> (BigRational, BigRational) {
    let n = u64::from(lambda);
    let mut lhs = BigRational::zero();
    for big_l in 0..=n {
        let c = binomial(n, big_l).expect("L <= λ");
        let term = BigRational::new(c.into(), BigInt::from(2 * big_l + 1));
        if big_l % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let num = (BigUint::one() << lambda as usize) * crate::angular::factorial(n);
    let den = double_factorial(2 * i64::from(lambda) + 1).expect("n >= -1");
    (lhs, BigRational::new(num.into(), den.into()))
}

/// `∫₀^∞ j_λ(k r) r^{−λ} dr = (π/2) k^{λ−1} / (2^λ λ!)`.
pub fn single_bessel_inverse_power(lambda: u32, k: f64) -> ClosedFormResult {
    let value = 0.5 * PI * k.powi(lambda as i32 - 1) * inverse_two_pow_factorial(lambda);
    let class = if lambda == 0 {
        ConvergenceClass::Conditional
    } else {
        ConvergenceClass::Absolute
    };
    ClosedFormResult::ok(Formula::SingleBesselInversePower, class, value)
}

/// `∫₀^∞ r^{1−λ} j_λ(k r) dr = k^{λ−2} / (2λ−1)!!`; Abel sense for `λ = 0`.
pub fn single_bessel_linear(lambda: u32, k: f64) -> ClosedFormResult {
    let value = k.powi(lambda as i32 - 2) * inverse_double_factorial(2 * i64::from(lambda) - 1);
    let class = match lambda {
        0 => ConvergenceClass::Regularized,
        1 => ConvergenceClass::Conditional,
        _ => ConvergenceClass::Absolute,
    };
    ClosedFormResult::ok(Formula::SingleBesselLinear, class, value)
}

/// `∫₀^∞ r j_λ(k1 r) j_λ(k2 r) dr = Q_λ(χ) / (2 k1 k2)`.
pub fn equal_order_linear_weight(lambda: u32, momenta: MomentumPair) -> ClosedFormResult {
    if momenta.is_equal() {
        return ClosedFormResult::divergent(Formula::EqualOrderLinearWeight, EQUAL_MOMENTA);
    }
    match legendre_q(lambda, momenta.chi()) {
        Ok(q) => ClosedFormResult::ok(
            Formula::EqualOrderLinearWeight,
            ConvergenceClass::Conditional,
            q / (2.0 * momenta.k1 * momenta.k2),
        ),
        Err(_) => ClosedFormResult::divergent(Formula::EqualOrderLinearWeight, EQUAL_MOMENTA),
    }
}

/// `∫₀^∞ r^{1−λ} j_λ(k1 r) j_0(k2 r) dr` as the finite sum of `Q_L(χ)`.
pub fn linear_weight_vs_j0(lambda: u32, momenta: MomentumPair) -> ClosedFormResult {
    if momenta.is_equal() {
        return ClosedFormResult::divergent(Formula::LinearWeightVsJ0, EQUAL_MOMENTA);
    }
    let MomentumPair { k1, k2 } = momenta;
    let chi = momenta.chi();
    let ratio = -k2 / k1;
    let mut terms = Vec::with_capacity(lambda as usize + 1);
    for big_l in 0..=lambda {
        let c = binomial(u64::from(lambda), u64::from(big_l))
            .expect("L <= λ")
            .to_f64()
            .unwrap_or(f64::INFINITY);
        let q = match legendre_q(big_l, chi) {
            Ok(q) => q,
            Err(_) => return ClosedFormResult::divergent(Formula::LinearWeightVsJ0, EQUAL_MOMENTA),
        };
        terms.push(c * ratio.powi(big_l as i32) * q);
    }
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let sum: f64 = terms.iter().sum();
    let value = k1.powi(lambda as i32 - 1) / (2.0 * k2)
        * inverse_double_factorial(2 * i64::from(lambda) - 1)
        * sum;
    let class = if lambda == 0 {
        ConvergenceClass::Conditional
    } else {
        ConvergenceClass::Absolute
    };
    ClosedFormResult::ok(Formula::LinearWeightVsJ0, class, value)
}

/// Partial sum `Σ_{λ ≤ lmax} k<^λ / k>^{λ+1} P_λ(Δ)` of the Legendre
/// generating function.
pub fn legendre_generating_partial_sum(momenta: MomentumPair, delta: f64, lmax: u32) -> f64 {
    (0..=lmax)
        .map(|l| momenta.ratio_power(l) * legendre_p_unchecked(l, delta))
        .sum()
}

/// `(k1² + k2² − 2 k1 k2 Δ)^{−1/2}`.
pub fn legendre_generating_function(momenta: MomentumPair, delta: f64) -> f64 {
    let MomentumPair { k1, k2 } = momenta;
    (k1 * k1 + k2 * k2 - 2.0 * k1 * k2 * delta).powf(-0.5)
}

/// Numerical `∫₀^∞ β(Δ) P_l(Δ) dk3`, integrated in `Δ` through
/// `k3 dk3 = −k1 k2 dΔ`.
pub fn beta_legendre_moment(l: u32, momenta: MomentumPair) -> f64 {
    let MomentumPair { k1, k2 } = momenta;
    let k3 = |d: f64| (k1 * k1 + k2 * k2 - 2.0 * k1 * k2 * d).max(0.0).sqrt();
    integrate_adaptive(
        |d: f64| legendre_p_unchecked(l, d) * k1 * k2 / k3(d),
        -1.0,
        1.0,
        4,
        1e-13,
        0.0,
        4000,
    )
    .value
}

/// `2/(2l+1) · k<^{l+1} / k>^l`, the closed form of
/// [`beta_legendre_moment`].
pub fn beta_legendre_moment_closed(l: u32, momenta: MomentumPair) -> f64 {
    2.0 / f64::from(2 * l + 1) * momenta.k_less() * momenta.k_greater() * momenta.ratio_power(l)
}

/// Numerical `∫ β(Δ) P_l(Δ) / k3 dk3` over the triangle range of `k3`; the
/// closed form is `Q_l(χ)`.
pub fn beta_legendre_inverse_moment(l: u32, momenta: MomentumPair) -> f64 {
    let MomentumPair { k1, k2 } = momenta;
    let lo = (k1 - k2).abs();
    let hi = k1 + k2;
    integrate_adaptive(
        |k3: f64| {
            let d = (k1 * k1 + k2 * k2 - k3 * k3) / (2.0 * k1 * k2);
            legendre_p_unchecked(l, d) / k3
        },
        lo,
        hi,
        4,
        1e-13,
        0.0,
        4000,
    )
    .value
}

/// Which two-Bessel family a closure chain reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainFamily {
    InversePower,
    LinearPower,
}

/// Rebuilds a two-Bessel integral from the triple-Bessel closed form by
/// integrating over the third momentum:
///
/// ```text
/// (2/π) ∫ k3² S(k3) I3(k1, k2, k3) dk3
/// ```
///
/// where `S(k3)` is the single-Bessel integral of weight `r^{−λ3}` (inverse
/// power) or `r^{1−λ3}` (linear power). `I3` vanishes outside the momentum
/// triangle, so the `k3` range is `(|k1 − k2|, k1 + k2)`.
pub fn closure_chain(
    triple: AngularTriple,
    momenta: MomentumPair,
    family: ChainFamily,
) -> Result<f64> {
    closure_chain_with(triple, momenta, family, BetaConvention::Indicator)
}

pub(crate) fn closure_chain_with(
    triple: AngularTriple,
    momenta: MomentumPair,
    family: ChainFamily,
    convention: BetaConvention,
) -> Result<f64> {
    let series = CouplingSeries::triple_bessel(triple)
        .ok_or_else(|| Error::InvalidArgument(format!("orders {triple} not applicable")))?;
    if family == ChainFamily::LinearPower && momenta.is_equal() {
        return Err(Error::Divergent(EQUAL_MOMENTA.to_string()));
    }
    let MomentumPair { k1, k2 } = momenta;
    let lambda3 = triple.lambda3;
    let lo = (k1 - k2).abs();
    let hi = k1 + k2;
    let integral = integrate_adaptive(
        |k3: f64| {
            let single = match family {
                ChainFamily::InversePower => single_bessel_inverse_power(lambda3, k3),
                ChainFamily::LinearPower => single_bessel_linear(lambda3, k3),
            };
            let t = MomentumTriple { k1, k2, k3 };
            let value = single.value.unwrap_or(0.0) * series.evaluate_triple(t, convention);
            k3 * k3 * value
        },
        lo,
        hi,
        8,
        1e-13,
        0.0,
        4000,
    );
    Ok(2.0 / PI * integral.value)
}

//! Turning a request into a closed-form value, an oracle estimate, or both.

use std::fmt;

use crate::angular::AngularTriple;
use crate::error::Error;
use crate::momenta::{MomentumPair, MomentumTriple};
use crate::oracle::{
    integrate_single_bessel, integrate_three_bessel, integrate_two_bessel, QuadratureConfig,
    QuadratureReport,
};
use crate::weberschafheitlin::{self as ws, BetaConvention, ClosedFormResult, Formula, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    #[value(name = "inverse_power")]
    InversePower,
    #[value(name = "linear_power")]
    LinearPower,
    Triple,
    Special,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::InversePower => "inverse_power",
            Family::LinearPower => "linear_power",
            Family::Triple => "triple",
            Family::Special => "special",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Analytic,
    Oracle,
    Both,
}

impl Mode {
    fn analytic(self) -> bool {
        self != Mode::Oracle
    }

    fn oracle(self) -> bool {
        self != Mode::Analytic
    }
}

/// Reductions reachable through `--family special`.
pub const SPECIAL_FORMULAS: [Formula; 7] = [
    Formula::EqualOrderNoWeight,
    Formula::InversePowerVsJ0,
    Formula::EqualKInversePower,
    Formula::EqualOrderLinearWeight,
    Formula::LinearWeightVsJ0,
    Formula::SingleBesselInversePower,
    Formula::SingleBesselLinear,
];

/// A fully resolved integral: the closed form to use and its arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub family: Family,
    pub formula: Formula,
    pub orders: Vec<u32>,
    pub momenta: Vec<f64>,
}

/// Malformed request; reported with exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Malformed(pub String);

impl fmt::Display for Malformed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Request {
    pub fn new(
        family: Family,
        reduction: Option<&str>,
        orders: Vec<u32>,
        momenta: Vec<f64>,
    ) -> Result<Self, Malformed> {
        let formula = resolve_formula(family, reduction)?;
        let (want_orders, want_momenta) = arity(formula);
        if orders.len() != want_orders {
            return Err(Malformed(format!(
                "{} expects {want_orders} order(s), got {}",
                formula.tag(),
                orders.len()
            )));
        }
        if momenta.len() != want_momenta {
            return Err(Malformed(format!(
                "{} expects {want_momenta} momenta, got {}",
                formula.tag(),
                momenta.len()
            )));
        }
        if let Some(k) = momenta.iter().find(|k| !(**k > 0.0 && k.is_finite())) {
            return Err(Malformed(format!(
                "momenta must be positive and finite, got {k}"
            )));
        }
        Ok(Request {
            family,
            formula,
            orders,
            momenta,
        })
    }

    fn pair(&self) -> MomentumPair {
        MomentumPair::new(self.momenta[0], self.momenta[1]).expect("validated momenta")
    }

    fn triple(&self) -> AngularTriple {
        AngularTriple::new(self.orders[0], self.orders[1], self.orders[2])
    }
}

/// The closed form selected by a family and an optional reduction tag.
pub fn resolve_formula(family: Family, reduction: Option<&str>) -> Result<Formula, Malformed> {
    match (family, reduction) {
        (Family::Special, Some(tag)) => Formula::from_tag(tag)
            .filter(|f| SPECIAL_FORMULAS.contains(f))
            .ok_or_else(|| Malformed(format!("unknown reduction '{tag}'"))),
        (Family::Special, None) => Err(Malformed("--family special requires --reduction".into())),
        (_, Some(_)) => Err(Malformed(
            "--reduction is only valid with --family special".into(),
        )),
        (Family::InversePower, None) => Ok(Formula::InversePower),
        (Family::LinearPower, None) => Ok(Formula::LinearPower),
        (Family::Triple, None) => Ok(Formula::TripleBessel),
    }
}

/// Number of orders and momenta each closed form takes.
pub fn arity(formula: Formula) -> (usize, usize) {
    match formula {
        Formula::TripleBessel => (3, 3),
        Formula::InversePower | Formula::LinearPower => (3, 2),
        Formula::EqualKInversePower
        | Formula::SingleBesselInversePower
        | Formula::SingleBesselLinear => (1, 1),
        Formula::EqualOrderNoWeight
        | Formula::InversePowerVsJ0
        | Formula::EqualOrderLinearWeight
        | Formula::LinearWeightVsJ0 => (1, 2),
    }
}

/// Outcome of evaluating one request.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub request: Request,
    pub analytic: Option<f64>,
    pub oracle: Option<QuadratureReport>,
    pub status: RecordStatus,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordStatus {
    Ok,
    NotApplicable,
    Divergent,
    Failed,
}

impl RecordStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordStatus::Ok => "ok",
            RecordStatus::NotApplicable => "not_applicable",
            RecordStatus::Divergent => "divergent",
            RecordStatus::Failed => "failed",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            RecordStatus::Ok => 0,
            RecordStatus::NotApplicable => 2,
            RecordStatus::Divergent => 3,
            RecordStatus::Failed => 5,
        }
    }
}

impl Record {
    pub fn oracle_estimate(&self) -> Option<f64> {
        self.oracle.map(|o| o.estimate)
    }

    pub fn abs_diff(&self) -> Option<f64> {
        Some((self.analytic? - self.oracle_estimate()?).abs())
    }

    pub fn rel_diff(&self) -> Option<f64> {
        let a = self.analytic?;
        let d = self.abs_diff()?;
        Some(if a == 0.0 { d } else { d / a.abs() })
    }
}

pub fn closed_form(request: &Request, convention: BetaConvention) -> ClosedFormResult {
    let o = &request.orders;
    let k = &request.momenta;
    match request.formula {
        Formula::TripleBessel => {
            let m = MomentumTriple::new(k[0], k[1], k[2]).expect("validated momenta");
            ws::triple_bessel_with(request.triple(), m, convention)
        }
        Formula::InversePower => ws::ws_inverse_power(request.triple(), request.pair()),
        Formula::LinearPower => ws::ws_linear_power(request.triple(), request.pair()),
        Formula::EqualOrderNoWeight => ws::equal_order_no_weight(o[0], request.pair()),
        Formula::InversePowerVsJ0 => ws::inverse_power_vs_j0(o[0], request.pair()),
        Formula::EqualKInversePower => ws::equal_k_inverse_power(o[0], k[0]),
        Formula::EqualOrderLinearWeight => ws::equal_order_linear_weight(o[0], request.pair()),
        Formula::LinearWeightVsJ0 => ws::linear_weight_vs_j0(o[0], request.pair()),
        Formula::SingleBesselInversePower => ws::single_bessel_inverse_power(o[0], k[0]),
        Formula::SingleBesselLinear => ws::single_bessel_linear(o[0], k[0]),
    }
}

/// The same integral computed by direct quadrature.
pub fn quadrature(request: &Request, config: &QuadratureConfig) -> Result<QuadratureReport, Error> {
    let o = &request.orders;
    let k = &request.momenta;
    let l = |i: usize| o[i] as i32;
    match request.formula {
        Formula::TripleBessel => integrate_three_bessel(
            o[0],
            o[1],
            o[2],
            MomentumTriple::new(k[0], k[1], k[2])?,
            config,
        ),
        Formula::InversePower => integrate_two_bessel(-l(2), o[0], o[1], request.pair(), config),
        Formula::LinearPower => integrate_two_bessel(1 - l(2), o[0], o[1], request.pair(), config),
        Formula::EqualOrderNoWeight => integrate_two_bessel(0, o[0], o[0], request.pair(), config),
        Formula::InversePowerVsJ0 => integrate_two_bessel(-l(0), o[0], 0, request.pair(), config),
        Formula::EqualKInversePower => {
            integrate_two_bessel(-l(0), o[0], 0, MomentumPair::new(k[0], k[0])?, config)
        }
        Formula::EqualOrderLinearWeight => {
            integrate_two_bessel(1, o[0], o[0], request.pair(), config)
        }
        Formula::LinearWeightVsJ0 => {
            integrate_two_bessel(1 - l(0), o[0], 0, request.pair(), config)
        }
        Formula::SingleBesselInversePower => integrate_single_bessel(-l(0), o[0], k[0], config),
        Formula::SingleBesselLinear => integrate_single_bessel(1 - l(0), o[0], k[0], config),
    }
}

pub fn evaluate(
    request: Request,
    mode: Mode,
    config: &QuadratureConfig,
    convention: BetaConvention,
) -> Record {
    let closed = closed_form(&request, convention);
    let mut status = match closed.status {
        Status::Ok => RecordStatus::Ok,
        Status::NotApplicable => RecordStatus::NotApplicable,
        Status::Divergent => RecordStatus::Divergent,
    };
    let mut reason = closed.reason.clone();
    let analytic = if mode.analytic() { closed.value } else { None };
    let mut oracle = None;
    if mode.oracle() && status != RecordStatus::Divergent {
        match quadrature(&request, config) {
            Ok(report) => oracle = Some(report),
            Err(Error::Divergent(msg)) => {
                status = RecordStatus::Divergent;
                reason = Some(msg);
            }
            Err(e) => {
                // An inapplicable closed form already explains the outcome.
                if status == RecordStatus::Ok {
                    status = RecordStatus::Failed;
                    reason = Some(e.to_string());
                }
            }
        }
    }
    Record {
        request,
        analytic,
        oracle,
        status,
        reason,
    }
}

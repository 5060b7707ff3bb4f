//! Double-precision spherical Bessel, Legendre P/Q functions and the exact
//! integer helpers (double factorials, binomials) used by the closed forms.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::angular::WignerValue;
use crate::error::{Error, Result};

/// Largest spherical Bessel order supported by [`spherical_j`].
pub const MAX_BESSEL_ORDER: u32 = 50;

/// An order together with the argument it is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedArgument {
    pub order: u32,
    pub argument: f64,
}

impl OrderedArgument {
    pub fn spherical_j(self) -> Result<f64> {
        spherical_j(self.order, self.argument)
    }

    pub fn legendre_p(self) -> Result<f64> {
        legendre_p(self.order, self.argument)
    }

    pub fn legendre_q(self) -> Result<f64> {
        legendre_q(self.order, self.argument)
    }
}

/// Spherical Bessel function of the first kind `j_l(x)` for `x ≥ 0`.
///
/// Power series for `x < 1`, upward recurrence from `j0`, `j1` for `x > l`,
/// and Miller's downward recurrence normalised by `j0` (or `j1`) otherwise.
pub fn spherical_j(l: u32, x: f64) -> Result<f64> {
    if l > MAX_BESSEL_ORDER {
        return Err(Error::OrderOutOfRange {
            order: l,
            max: MAX_BESSEL_ORDER,
        });
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain {
            value: x,
            domain: "finite x >= 0",
        });
    }
    if x == 0.0 {
        return Ok(if l == 0 { 1.0 } else { 0.0 });
    }
    if x < 1.0 {
        return Ok(j_series(l, x));
    }
    if x > f64::from(l) {
        return Ok(j_upward(l, x));
    }
    Ok(j_miller(l, x))
}

fn j_series(l: u32, x: f64) -> f64 {
    // x^l / (2l+1)!! built as a running product to stay in range.
    let leading = (1..=l).fold(1.0, |acc, i| acc * x / f64::from(2 * i + 1));
    let half_x2 = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60u32 {
        term *= half_x2 / (f64::from(k) * f64::from(2 * l + 2 * k + 1));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    leading * sum
}

fn j0_j1(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    (j0, (j0 - c) / x)
}

fn j_upward(l: u32, x: f64) -> f64 {
    let (j0, j1) = j0_j1(x);
    if l == 0 {
        return j0;
    }
    let (mut prev, mut cur) = (j0, j1);
    for k in 1..l {
        let next = f64::from(2 * k + 1) / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn j_miller(l: u32, x: f64) -> f64 {
    const RESCALE: f64 = 1e250;
    let start = l.max(x.ceil() as u32) + 60;
    let mut upper = 0.0; // f_{k+1}
    let mut cur = 1e-200; // f_k
    let mut at_order = if start == l { cur } else { 0.0 };
    let mut at_one = 0.0;
    for k in (1..=start).rev() {
        let lower = f64::from(2 * k + 1) / x * cur - upper;
        upper = cur;
        cur = lower;
        if k - 1 == l {
            at_order = cur;
        }
        if k - 1 == 1 {
            at_one = cur;
        }
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            upper /= RESCALE;
            at_order /= RESCALE;
            at_one /= RESCALE;
        }
    }
    let at_zero = cur;
    let (j0, j1) = j0_j1(x);
    if j0.abs() >= j1.abs() {
        at_order * (j0 / at_zero)
    } else {
        at_order * (j1 / at_one)
    }
}

/// Coefficients `c_m` of `h_l(x) = e^{ix} Σ_{m=0}^{l} c_m x^{−m−1}`, the
/// terminating expansion of the spherical Hankel function of the first
/// kind. `j_l(x) = Re h_l(x)` for real `x`.
pub fn spherical_hankel_coefficients(l: u32) -> Vec<Complex64> {
    let mut coefficients = Vec::with_capacity(l as usize + 1);
    // (l+m)! / (m! (l−m)! 2^m)
    let mut magnitude = 1.0;
    for m in 0..=l {
        if m > 0 {
            magnitude *= f64::from((l + m) * (l - m + 1)) / (2.0 * f64::from(m));
        }
        // (−i)^{l+1} i^m = i^{m + 3(l+1)}
        coefficients.push(i_power(m + 3 * (l + 1)) * magnitude);
    }
    coefficients
}

/// `i^n` with exact zero components.
pub(crate) fn i_power(n: u32) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Legendre polynomial `P_l(x)` on `[−1, 1]` via the three-term recurrence.
pub fn legendre_p(l: u32, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            domain: "|x| <= 1",
        });
    }
    Ok(legendre_p_unchecked(l, x))
}

pub(crate) fn legendre_p_unchecked(l: u32, x: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..l {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Legendre function of the second kind `Q_l(x)` for `x > 1`.
///
/// Forward recurrence from `Q0`, `Q1` is used only while its error growth
/// `(x + √(x²−1))^{2l}` stays below 100; otherwise `Q_l` is the minimal
/// solution of the recurrence and is obtained by Miller's backward
/// recurrence normalised to `Q0`.
pub fn legendre_q(l: u32, x: f64) -> Result<f64> {
    if !(x > 1.0 && x.is_finite()) {
        return Err(Error::Domain {
            value: x,
            domain: "finite x > 1",
        });
    }
    let q0 = legendre_q0(x);
    if l == 0 {
        return Ok(q0);
    }
    let root = ((x - 1.0) * (x + 1.0)).sqrt();
    let log_ratio = (x + root).ln();
    if 2.0 * f64::from(l) * log_ratio < 100f64.ln() {
        return Ok(q_forward(l, x, q0));
    }
    Ok(q_miller(l, x, q0, log_ratio))
}

fn legendre_q0(x: f64) -> f64 {
    0.5 * (2.0 / (x - 1.0)).ln_1p()
}

fn q_forward(l: u32, x: f64, q0: f64) -> f64 {
    let (mut prev, mut cur) = (q0, x * q0 - 1.0);
    for k in 1..l {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn q_miller(l: u32, x: f64, q0: f64, log_ratio: f64) -> f64 {
    const RESCALE: f64 = 1e250;
    let extra = (40.0 / log_ratio).ceil() as u32 + 10;
    let start = l + extra;
    let mut upper = 0.0; // f_{k+1}
    let mut cur = 1e-200; // f_k
    let mut at_order = 0.0;
    for k in (1..=start).rev() {
        let kf = f64::from(k);
        let lower = ((2.0 * kf + 1.0) * x * cur - (kf + 1.0) * upper) / kf;
        upper = cur;
        cur = lower;
        if k - 1 == l {
            at_order = cur;
        }
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            upper /= RESCALE;
            at_order /= RESCALE;
        }
    }
    at_order * (q0 / cur)
}

/// `n!!` with `0!! = (−1)!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigUint> {
    if n < -1 {
        return Err(Error::InvalidArgument(format!(
            "double factorial of {n} (< -1)"
        )));
    }
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(acc)
}

pub fn binomial(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "binomial({n}, {k}) with k > n"
        )));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

/// Exact `√C(n, k)` with positive sign.
pub fn sqrt_binomial(n: u64, k: u64) -> Result<WignerValue> {
    let c = binomial(n, k)?;
    Ok(WignerValue::sqrt_of(
        1,
        &BigRational::from_integer(c.into()),
    ))
}

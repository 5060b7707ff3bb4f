//! Exact Wigner 3j (zero projections) and 6j symbols for integer angular
//! momenta.
//!
//! Every value is carried as a [`WignerValue`], i.e. `s √(p/q)` with big
//! integers `p`, `q` in lowest terms. Products of such values stay exact, so
//! the coefficients of the closed-form integral sums are rounded to `f64`
//! exactly once.

use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Three integer orders coupled by a zero-projection 3j symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngularTriple {
    pub lambda1: u32,
    pub lambda2: u32,
    pub lambda3: u32,
}

/// Selection-rule flags of an [`AngularTriple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validity {
    pub triangle_ok: bool,
    pub parity_ok: bool,
}

impl Validity {
    pub fn applicable(self) -> bool {
        self.triangle_ok && self.parity_ok
    }
}

impl AngularTriple {
    pub const fn new(lambda1: u32, lambda2: u32, lambda3: u32) -> Self {
        AngularTriple {
            lambda1,
            lambda2,
            lambda3,
        }
    }

    pub fn as_array(self) -> [u32; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }

    pub fn sum(self) -> u32 {
        self.lambda1 + self.lambda2 + self.lambda3
    }

    pub fn triangle_ok(self) -> bool {
        triangle(self.lambda1, self.lambda2, self.lambda3)
    }

    pub fn parity_ok(self) -> bool {
        self.sum().is_multiple_of(2)
    }

    /// True exactly when the zero-projection 3j symbol is nonzero.
    pub fn applicable(self) -> bool {
        self.triangle_ok() && self.parity_ok()
    }

    /// The same orders with `lambda1` and `lambda2` exchanged.
    pub fn swapped(self) -> Self {
        AngularTriple::new(self.lambda2, self.lambda1, self.lambda3)
    }
}

impl fmt::Display for AngularTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.lambda1, self.lambda2, self.lambda3)
    }
}

pub fn triangle_check(triple: AngularTriple) -> Validity {
    Validity {
        triangle_ok: triple.triangle_ok(),
        parity_ok: triple.parity_ok(),
    }
}

fn triangle(a: u32, b: u32, c: u32) -> bool {
    a.abs_diff(b) <= c && c <= a + b
}

/// Signed square root of a nonnegative rational: `sign × √(num / den)`.
///
/// The fraction is kept in lowest terms and `sign == 0` exactly when
/// `num == 0` (then `den == 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WignerValue {
    sign: i8,
    radicand_num: BigUint,
    radicand_den: BigUint,
}

impl Default for WignerValue {
    fn default() -> Self {
        WignerValue::zero()
    }
}

impl WignerValue {
    pub fn zero() -> Self {
        WignerValue {
            sign: 0,
            radicand_num: BigUint::zero(),
            radicand_den: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        WignerValue {
            sign: 1,
            radicand_num: BigUint::one(),
            radicand_den: BigUint::one(),
        }
    }

    /// `sign × √(num / den)`, normalised. Panics if `den` is zero.
    pub fn new(sign: i8, num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "zero radicand denominator");
        if sign == 0 || num.is_zero() {
            return WignerValue::zero();
        }
        let g = num.gcd(&den);
        WignerValue {
            sign: sign.signum(),
            radicand_num: num / &g,
            radicand_den: den / g,
        }
    }

    /// `sign × √r` for a nonnegative rational `r`.
    pub fn sqrt_of(sign: i8, radicand: &BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        WignerValue::new(
            sign,
            to_biguint(radicand.numer()),
            to_biguint(radicand.denom()),
        )
    }

    /// The exact rational `r`, stored as `sign(r) × √(r²)`.
    pub fn from_rational(value: &BigRational) -> Self {
        let sign = match value.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        let squared = value * value;
        WignerValue::sqrt_of(sign, &squared)
    }

    pub fn from_integer(value: i64) -> Self {
        WignerValue::from_rational(&BigRational::from_integer(BigInt::from(value)))
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand_num(&self) -> &BigUint {
        &self.radicand_num
    }

    pub fn radicand_den(&self) -> &BigUint {
        &self.radicand_den
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// The square of the value, `num / den`.
    pub fn square(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.radicand_num.clone()),
            BigInt::from(self.radicand_den.clone()),
        )
    }

    /// `sign × num / den`, the square carrying the sign of the value.
    pub fn signed_square(&self) -> BigRational {
        self.square() * BigInt::from(self.sign)
    }

    pub fn neg(&self) -> Self {
        WignerValue {
            sign: -self.sign,
            ..self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(WignerValue {
            sign: self.sign,
            radicand_num: self.radicand_den.clone(),
            radicand_den: self.radicand_num.clone(),
        })
    }

    /// Correctly rounded square root of the radicand (up to the final
    /// integer-to-float rounding), times the sign.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let num_bits = self.radicand_num.bits() as i64;
        let den_bits = self.radicand_den.bits() as i64;
        // Scale so that the integer quotient carries ~130 bits and its
        // integer square root ~65 bits.
        let shift = (130 - (num_bits - den_bits)).div_euclid(2) + 1;
        let quotient = if shift >= 0 {
            (&self.radicand_num << (2 * shift) as usize) / &self.radicand_den
        } else {
            &self.radicand_num / (&self.radicand_den << (-2 * shift) as usize)
        };
        let root = quotient.sqrt().to_f64().unwrap_or(f64::INFINITY);
        f64::from(self.sign) * ldexp(root, -shift)
    }
}

impl fmt::Display for WignerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            -1 => "-",
            0 => return write!(f, "0"),
            _ => "+",
        };
        write!(f, "{}√({}/{})", s, self.radicand_num, self.radicand_den)
    }
}

impl Mul for &WignerValue {
    type Output = WignerValue;

    fn mul(self, rhs: &WignerValue) -> WignerValue {
        if self.is_zero() || rhs.is_zero() {
            return WignerValue::zero();
        }
        WignerValue::new(
            self.sign * rhs.sign,
            &self.radicand_num * &rhs.radicand_num,
            &self.radicand_den * &rhs.radicand_den,
        )
    }
}

impl Mul for WignerValue {
    type Output = WignerValue;

    fn mul(self, rhs: WignerValue) -> WignerValue {
        &self * &rhs
    }
}

pub(crate) fn ldexp(x: f64, exp: i64) -> f64 {
    // Split the scaling so intermediate powers of two never overflow.
    let mut value = x;
    let mut remaining = exp;
    while remaining != 0 {
        let step = remaining.clamp(-1000, 1000);
        value *= 2f64.powi(step as i32);
        remaining -= step;
    }
    value
}

fn to_biguint(value: &BigInt) -> BigUint {
    value
        .to_biguint()
        .expect("radicand numerator must be nonnegative")
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn fact_u(n: u32) -> BigUint {
    factorial(u64::from(n))
}

/// Triangle coefficient `(a+b−c)!(a−b+c)!(−a+b+c)!/(a+b+c+1)!`.
fn triangle_coefficient(a: u32, b: u32, c: u32) -> BigRational {
    let num = fact_u(a + b - c) * fact_u(a + c - b) * fact_u(b + c - a);
    let den = fact_u(a + b + c + 1);
    BigRational::new(num.into(), den.into())
}

/// Zero-projection 3j symbol `(λ1 λ2 λ3; 0 0 0)` from the closed form in
/// factorials of the half-sum `g = (λ1+λ2+λ3)/2`.
pub fn wigner3j_zero(triple: AngularTriple) -> WignerValue {
    if !triple.applicable() {
        return WignerValue::zero();
    }
    let [a, b, c] = triple.as_array();
    let big_j = a + b + c;
    let g = big_j / 2;
    let root = BigRational::new(
        (fact_u(big_j - 2 * a) * fact_u(big_j - 2 * b) * fact_u(big_j - 2 * c)).into(),
        fact_u(big_j + 1).into(),
    );
    let ratio = BigRational::new(
        fact_u(g).into(),
        (fact_u(g - a) * fact_u(g - b) * fact_u(g - c)).into(),
    );
    let sign = if g % 2 == 0 { 1 } else { -1 };
    WignerValue::sqrt_of(sign, &(root * &ratio * &ratio))
}

/// Zero-projection 3j symbol from the general Racah single sum. Independent
/// of [`wigner3j_zero`]; both must agree exactly.
pub fn wigner3j_zero_racah(triple: AngularTriple) -> WignerValue {
    if !triple.triangle_ok() {
        return WignerValue::zero();
    }
    let [j1, j2, j3] = triple.as_array();
    let (j1, j2, j3) = (i64::from(j1), i64::from(j2), i64::from(j3));
    let t_min = 0.max(j2 - j3).max(j1 - j3);
    let t_max = (j1 + j2 - j3).min(j1).min(j2);
    let mut sum = BigRational::zero();
    for t in t_min..=t_max {
        let den = [
            t,
            j3 - j2 + t,
            j3 - j1 + t,
            j1 + j2 - j3 - t,
            j1 - t,
            j2 - t,
        ]
        .iter()
        .map(|&n| factorial(n as u64))
        .fold(BigUint::one(), |acc, f| acc * f);
        let term = BigRational::new(BigInt::one(), den.into());
        if t % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return WignerValue::zero();
    }
    let m_factor = fact_u(j1 as u32) * fact_u(j2 as u32) * fact_u(j3 as u32);
    let m_factor = BigRational::from_integer(m_factor.into());
    let delta = triangle_coefficient(j1 as u32, j2 as u32, j3 as u32);
    let phase = if (j1 - j2).rem_euclid(2) == 0 { 1 } else { -1 };
    let sign = phase * if sum.is_negative() { -1 } else { 1 };
    WignerValue::sqrt_of(sign, &(delta * &m_factor * &m_factor * &sum * &sum))
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}` via the Racah single-sum formula.
///
/// The Racah sum is a rational `S` multiplying `√Δ`; the result is stored as
/// `sign(S) √(S² Δ)`.
pub fn wigner6j(j1: u32, j2: u32, j3: u32, j4: u32, j5: u32, j6: u32) -> WignerValue {
    let triads = [(j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)];
    if triads.iter().any(|&(a, b, c)| !triangle(a, b, c)) {
        return WignerValue::zero();
    }
    let t_min = triads.iter().map(|&(a, b, c)| a + b + c).max().unwrap();
    let t_max = (j1 + j2 + j4 + j5)
        .min(j1 + j3 + j4 + j6)
        .min(j2 + j3 + j5 + j6);
    let mut sum = BigRational::zero();
    for t in t_min..=t_max {
        let mut den = BigUint::one();
        for &(a, b, c) in &triads {
            den *= fact_u(t - a - b - c);
        }
        den *= fact_u(j1 + j2 + j4 + j5 - t);
        den *= fact_u(j1 + j3 + j4 + j6 - t);
        den *= fact_u(j2 + j3 + j5 + j6 - t);
        let term = BigRational::new(fact_u(t + 1).into(), den.into());
        if t % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return WignerValue::zero();
    }
    let delta = triads
        .iter()
        .map(|&(a, b, c)| triangle_coefficient(a, b, c))
        .fold(BigRational::one(), |acc, d| acc * d);
    let sign = if sum.is_negative() { -1 } else { 1 };
    WignerValue::sqrt_of(sign, &(delta * &sum * &sum))
}

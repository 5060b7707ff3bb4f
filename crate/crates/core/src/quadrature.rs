//! Numerical building blocks: adaptive Gauss–Kronrod (7/15) integration,
//! iterated Aitken Δ² acceleration and polynomial extrapolation to zero.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_complex::Complex64;

/// Scalar types the integrator can accumulate.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + AddAssign
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn magnitude(self) -> f64 {
        self.norm()
    }
}

// Kronrod abscissae and weights (15 points) with the embedded 7-point
// Gauss weights; QUADPACK values.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss–Kronrod panel.
#[derive(Debug, Clone, Copy)]
pub struct Panel<T> {
    pub lo: f64,
    pub hi: f64,
    pub value: T,
    pub error: f64,
    /// Integral of |f| over the panel (Kronrod rule).
    pub abs_value: f64,
}

pub fn gauss_kronrod<T: Scalar, F: FnMut(f64) -> T>(f: &mut F, lo: f64, hi: f64) -> Panel<T> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_value = fc.magnitude() * WGK[7];
    let mut values = [T::zero(); 15];
    values[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[j] = f1;
        values[14 - j] = f2;
        kronrod += (f1 + f2) * WGK[j];
        abs_value += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    // Kronrod estimate of ∫|f − mean|, QUADPACK's `resasc`.
    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (fc - mean).magnitude();
    for j in 0..7 {
        asc += WGK[j] * ((values[j] - mean).magnitude() + (values[14 - j] - mean).magnitude());
    }
    let asc = asc * half.abs();
    let diff = ((kronrod - gauss) * half).magnitude();
    let mut error = diff;
    if asc != 0.0 && diff != 0.0 {
        error = asc * (200.0 * diff / asc).powf(1.5).min(1.0);
    }
    let abs_value = abs_value * half.abs();
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_value);
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error,
        abs_value,
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral<T> {
    pub value: T,
    pub error: f64,
    pub abs_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Queued<T>(Panel<T>);

impl<T> PartialEq for Queued<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}

impl<T> Eq for Queued<T> {}

impl<T> PartialOrd for Queued<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T> Ord for Queued<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Adaptive integration over `[lo, hi]`, pre-split into `initial_panels`
/// equal panels, bisecting the worst panel until the summed error estimate
/// is below `max(abs_tol, rel_tol·|I|)` or `max_panels` is reached.
pub fn integrate_adaptive<T: Scalar, F: FnMut(f64) -> T>(
    mut f: F,
    lo: f64,
    hi: f64,
    initial_panels: usize,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Integral<T> {
    let initial_panels = initial_panels.max(1);
    let width = (hi - lo) / initial_panels as f64;
    let mut heap = BinaryHeap::with_capacity(initial_panels * 2);
    for i in 0..initial_panels {
        let a = lo + width * i as f64;
        let b = if i + 1 == initial_panels {
            hi
        } else {
            lo + width * (i + 1) as f64
        };
        heap.push(Queued(gauss_kronrod(&mut f, a, b)));
    }
    let mut evaluations = 15 * initial_panels;
    let (_, mut error, mut abs_value) = totals(&heap);
    let mut value = heap.iter().fold(T::zero(), |acc, q| acc + q.0.value);
    loop {
        // Rounding in the panel sums bounds what any subdivision can reach.
        let rounding = 100.0 * f64::EPSILON * abs_value;
        let target = abs_tol.max(rel_tol * value.magnitude()).max(rounding);
        let converged = error <= target;
        if converged || heap.len() >= max_panels {
            let (value, error, abs_value) = totals(&heap);
            return Integral {
                value,
                error,
                abs_value,
                evaluations,
                converged,
            };
        }
        let Queued(worst) = heap.pop().expect("non-empty panel queue");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel cannot be split further in floating point.
            error -= worst.error;
            heap.push(Queued(Panel {
                error: 0.0,
                ..worst
            }));
            continue;
        }
        let left = gauss_kronrod(&mut f, worst.lo, mid);
        let right = gauss_kronrod(&mut f, mid, worst.hi);
        value = value - worst.value + left.value + right.value;
        error = (error - worst.error + left.error + right.error).max(0.0);
        abs_value = abs_value - worst.abs_value + left.abs_value + right.abs_value;
        heap.push(Queued(left));
        heap.push(Queued(right));
        evaluations += 30;
    }
}

fn totals<T: Scalar>(heap: &BinaryHeap<Queued<T>>) -> (T, f64, f64) {
    // Sum in a fixed order so results do not depend on heap layout.
    let mut panels: Vec<&Panel<T>> = heap.iter().map(|q| &q.0).collect();
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut value = T::zero();
    let mut error = 0.0;
    let mut abs_value = 0.0;
    for p in panels {
        value += p.value;
        error += p.error;
        abs_value += p.abs_value;
    }
    (value, error, abs_value)
}

/// Accelerated limit of a sequence together with the size of the last
/// acceleration increment.
#[derive(Debug, Clone, Copy)]
pub struct Accelerated<T> {
    pub value: T,
    pub increment: f64,
}

/// Iterated Aitken Δ² on `sequence`, up to `order` sweeps.
///
/// Each sweep shortens the sequence by two. A sweep whose second
/// differences vanish to rounding level stops the iteration (the sequence
/// has already converged).
pub fn iterated_aitken<T>(sequence: &[T], order: usize) -> Accelerated<T>
where
    T: Scalar + Mul<T, Output = T> + std::ops::Div<Output = T>,
{
    assert!(!sequence.is_empty(), "empty sequence");
    let mut current: Vec<T> = sequence.to_vec();
    let last_two = |s: &[T]| {
        let n = s.len();
        if n >= 2 {
            (s[n - 1], (s[n - 1] - s[n - 2]).magnitude())
        } else {
            (s[n - 1], f64::INFINITY)
        }
    };
    let (mut value, mut increment) = last_two(&current);
    for _ in 0..order {
        if current.len() < 3 {
            break;
        }
        let mut next = Vec::with_capacity(current.len() - 2);
        let mut degenerate = false;
        for w in current.windows(3) {
            let d1 = w[1] - w[0];
            let d2 = w[2] - w[1];
            let dd = d2 - d1;
            let scale = w[2].magnitude().max(f64::MIN_POSITIVE);
            if dd.magnitude() <= 64.0 * f64::EPSILON * scale {
                degenerate = true;
                break;
            }
            next.push(w[2] - (d2 * d2) / dd);
        }
        if degenerate || next.is_empty() {
            break;
        }
        current = next;
        let (v, inc) = last_two(&current);
        value = v;
        increment = inc;
    }
    Accelerated { value, increment }
}

/// Neville extrapolation to `h = 0` of samples `(h_i, y_i)` by a polynomial
/// of degree `order` through the last `order + 1` samples. Returns the
/// estimate and the change from the degree `order − 1` estimate.
pub fn extrapolate_to_zero(points: &[(f64, f64)], order: usize) -> (f64, f64) {
    assert!(!points.is_empty(), "no samples to extrapolate");
    let order = order.min(points.len() - 1);
    let window = &points[points.len() - order - 1..];
    let n = window.len();
    let mut table: Vec<f64> = window.iter().map(|p| p.1).collect();
    let mut previous_top = table[n - 1];
    let mut top = table[n - 1];
    for degree in 1..n {
        // table[i] holds the degree-(degree−1) interpolant on i−degree+1..=i
        for i in (degree..n).rev() {
            let hi = window[i].0;
            let lo = window[i - degree].0;
            table[i] = (hi * table[i - 1] - lo * table[i]) / (hi - lo);
        }
        previous_top = top;
        top = table[n - 1];
    }
    (top, (top - previous_top).abs())
}

//! Oscillatory tail of a product of spherical Bessel functions.
//!
//! Past the head cut-off every factor is replaced by its terminating Hankel
//! expansion `j_l(x) = Re[e^{ix} Σ_m c_m x^{−m−1}]`, so the tail integrand
//! becomes an exact finite sum of waves `Re[e^{iΩr} Σ_q a_q r^q]` with one
//! frequency each. A wave with `Ω ≠ 0` is summed cell by cell over its own
//! half-periods and the alternating partial sums are accelerated; a wave
//! with `Ω = 0` is a plain power law and is integrated exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, iterated_aitken};
use crate::specfun::spherical_hankel_coefficients;

/// `r^power Π_i j_{order_i}(k_i r)`.
#[derive(Debug, Clone)]
pub(crate) struct Product {
    pub factors: Vec<(u32, f64)>,
    pub power: i32,
}

/// `e^{iΩr} Σ_q a_q r^q`.
#[derive(Debug, Clone)]
pub(crate) struct Wave {
    pub frequency: f64,
    pub terms: Vec<(i32, Complex64)>,
}

impl Wave {
    fn amplitude(&self, r: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(q, a)| a * r.powi(q))
            .fold(Complex64::new(0.0, 0.0), |acc, x| acc + x)
    }

    fn leading_power(&self) -> i32 {
        self.terms.iter().map(|t| t.0).max().unwrap_or(i32::MIN)
    }
}

impl Product {
    /// Decomposes the product into waves; the tail integrand equals
    /// `Re Σ_w wave_w(r)` for every `r > 0`.
    pub fn waves(&self) -> Vec<Wave> {
        let n = self.factors.len();
        let scale = self.factors.iter().map(|f| f.1).sum::<f64>();
        let mut waves: Vec<Wave> = Vec::new();
        // Π Re h_i = 2^{1−n} Re Σ over conjugation patterns with the first
        // factor unconjugated.
        for pattern in 0..(1u32 << (n - 1)) {
            let mut frequency = 0.0;
            let mut poly: Vec<(i32, Complex64)> =
                vec![(self.power, Complex64::new(0.5f64.powi(n as i32 - 1), 0.0))];
            for (i, &(order, k)) in self.factors.iter().enumerate() {
                let conjugate = i > 0 && pattern & (1 << (i - 1)) != 0;
                frequency += if conjugate { -k } else { k };
                let coeffs = spherical_hankel_coefficients(order);
                let mut next = Vec::with_capacity(poly.len() * coeffs.len());
                for &(q, a) in &poly {
                    for (m, c) in coeffs.iter().enumerate() {
                        let c = if conjugate { c.conj() } else { *c };
                        let m = m as i32;
                        next.push((q - m - 1, a * c * k.powi(-m - 1)));
                    }
                }
                poly = collect_powers(next);
            }
            if frequency.abs() <= 1e-14 * scale {
                frequency = 0.0;
            }
            match waves.iter_mut().find(|w| w.frequency == frequency) {
                Some(w) => {
                    w.terms.extend(poly);
                    w.terms = collect_powers(std::mem::take(&mut w.terms));
                }
                None => waves.push(Wave {
                    frequency,
                    terms: poly,
                }),
            }
        }
        waves
    }
}

fn collect_powers(mut terms: Vec<(i32, Complex64)>) -> Vec<(i32, Complex64)> {
    terms.sort_by_key(|t| std::cmp::Reverse(t.0));
    let mut out: Vec<(i32, Complex64)> = Vec::with_capacity(terms.len());
    for (q, a) in terms {
        match out.last_mut() {
            Some(last) if last.0 == q => last.1 += a,
            _ => out.push((q, a)),
        }
    }
    out
}

/// Tail integral of one wave from `start` to infinity.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailPiece {
    /// Real part of the wave integral (the contribution to the tail).
    pub value: f64,
    pub error: f64,
    pub cells: usize,
}

/// Options for summing an oscillating wave.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CellOptions {
    pub cell_count: usize,
    pub acceleration_order: usize,
    /// Abel regulator `ε` in `e^{−εr}`; zero for the direct sum.
    pub regulator: f64,
}

pub(crate) fn integrate_wave(wave: &Wave, start: f64, options: CellOptions) -> Result<TailPiece> {
    if wave.frequency == 0.0 {
        return integrate_power_law(wave, start);
    }
    if options.regulator == 0.0 && wave.leading_power() >= 0 {
        return Err(Error::Divergent(format!(
            "oscillatory tail grows like r^{} without a regulator",
            wave.leading_power()
        )));
    }
    let omega = wave.frequency;
    let eps = options.regulator;
    let width = std::f64::consts::PI / omega.abs();
    let cells = options.cell_count.max(3);
    let mut partial = Vec::with_capacity(cells);
    let mut running = Complex64::new(0.0, 0.0);
    let mut quadrature_error = 0.0;
    for j in 0..cells {
        let a = start + width * j as f64;
        let b = start + width * (j + 1) as f64;
        let cell = integrate_adaptive(
            |r: f64| Complex64::new(-eps * r, omega * r).exp() * wave.amplitude(r),
            a,
            b,
            1,
            1e-14,
            0.0,
            64,
        );
        quadrature_error += cell.error;
        running += cell.value;
        partial.push(running);
    }
    let accelerated = iterated_aitken(&partial, options.acceleration_order);
    let value = accelerated.value.re;
    if !value.is_finite() {
        return Err(Error::NoConvergence(format!(
            "tail acceleration produced {value} for frequency {omega}"
        )));
    }
    Ok(TailPiece {
        value,
        error: accelerated.increment + quadrature_error,
        cells,
    })
}

fn integrate_power_law(wave: &Wave, start: f64) -> Result<TailPiece> {
    let mut value = 0.0;
    for &(q, a) in &wave.terms {
        // The integral of r^q is real, so only Re a contributes.
        if a.re == 0.0 {
            continue;
        }
        if q >= -1 {
            return Err(Error::Divergent(format!(
                "non-oscillating tail decays like r^{q}"
            )));
        }
        value += a.re * start.powi(q + 1) / f64::from(-q - 1);
    }
    Ok(TailPiece {
        value,
        error: 4.0 * f64::EPSILON * value.abs(),
        cells: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::spherical_j;

    #[test]
    fn waves_reproduce_the_product() {
        let cases = [
            Product {
                factors: vec![(3, 1.3)],
                power: 1,
            },
            Product {
                factors: vec![(2, 1.0), (5, 2.5)],
                power: -2,
            },
            Product {
                factors: vec![(1, 1.0), (1, 1.0)],
                power: 0,
            },
            Product {
                factors: vec![(2, 1.0), (1, 2.0), (3, 2.5)],
                power: 2,
            },
        ];
        for product in &cases {
            let waves = product.waves();
            for &r in &[40.0, 77.7, 500.0] {
                let direct: f64 = product
                    .factors
                    .iter()
                    .map(|&(l, k)| spherical_j(l, k * r).unwrap())
                    .product::<f64>()
                    * r.powi(product.power);
                let sum: f64 = waves
                    .iter()
                    .map(|w| (Complex64::new(0.0, w.frequency * r).exp() * w.amplitude(r)).re)
                    .sum();
                let scale = r.powi(product.power - product.factors.len() as i32);
                assert!((direct - sum).abs() < 1e-12 * scale, "{product:?} r={r}");
            }
        }
    }

    #[test]
    fn equal_momenta_produce_a_static_wave() {
        let product = Product {
            factors: vec![(0, 2.0), (0, 2.0)],
            power: 1,
        };
        let waves = product.waves();
        assert!(waves.iter().any(|w| w.frequency == 0.0));
        let fixed = waves.iter().find(|w| w.frequency == 0.0).unwrap();
        let err = integrate_power_law(fixed, 10.0).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)));
    }

    #[test]
    fn single_wave_against_sine_integral() {
        // ∫_R^∞ sin(r)/r dr = π/2 − Si(R); Si(20) = 1.548241701043439...
        let wave = Wave {
            frequency: 1.0,
            terms: vec![(-1, Complex64::new(0.0, -1.0))],
        };
        let options = CellOptions {
            cell_count: 200,
            acceleration_order: 10,
            regulator: 0.0,
        };
        let piece = integrate_wave(&wave, 20.0, options).unwrap();
        let expected = std::f64::consts::FRAC_PI_2 - 1.548_241_701_043_439_5;
        assert!((piece.value - expected).abs() < 1e-13, "{}", piece.value);
    }
}

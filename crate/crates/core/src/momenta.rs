//! Wavenumber pairs and triples shared by the closed forms and the
//! quadrature oracle.

use crate::error::{Error, Result};

/// Two positive wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPair {
    pub k1: f64,
    pub k2: f64,
}

impl MomentumPair {
    pub fn new(k1: f64, k2: f64) -> Result<Self> {
        for k in [k1, k2] {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::Domain {
                    value: k,
                    domain: "wavenumber must be finite and > 0",
                });
            }
        }
        Ok(MomentumPair { k1, k2 })
    }

    pub fn k_less(self) -> f64 {
        self.k1.min(self.k2)
    }

    pub fn k_greater(self) -> f64 {
        self.k1.max(self.k2)
    }

    /// `χ − 1 = (k1 − k2)² / (2 k1 k2)`, free of cancellation.
    pub fn chi_minus_one(self) -> f64 {
        let d = self.k1 - self.k2;
        d * d / (2.0 * self.k1 * self.k2)
    }

    /// `χ = (k1² + k2²) / (2 k1 k2) ≥ 1`.
    pub fn chi(self) -> f64 {
        1.0 + self.chi_minus_one()
    }

    pub fn is_equal(self) -> bool {
        self.chi() <= 1.0
    }

    pub fn swapped(self) -> Self {
        MomentumPair {
            k1: self.k2,
            k2: self.k1,
        }
    }

    pub fn scaled(self, s: f64) -> Self {
        MomentumPair {
            k1: s * self.k1,
            k2: s * self.k2,
        }
    }

    /// `k<^l / k>^{l+1}`.
    pub(crate) fn ratio_power(self, l: u32) -> f64 {
        (self.k_less() / self.k_greater()).powi(l as i32) / self.k_greater()
    }
}

/// Three positive wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumTriple {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl MomentumTriple {
    pub fn new(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        MomentumPair::new(k1, k2)?;
        MomentumPair::new(k3, 1.0)?;
        Ok(MomentumTriple { k1, k2, k3 })
    }

    /// `Δ = (k1² + k2² − k3²) / (2 k1 k2)`.
    pub fn delta(self) -> f64 {
        (self.k1 * self.k1 + self.k2 * self.k2 - self.k3 * self.k3) / (2.0 * self.k1 * self.k2)
    }

    /// True when the three wavenumbers are the sides of a nondegenerate
    /// triangle.
    pub fn in_triangle(self) -> bool {
        self.delta().abs() < 1.0
    }

    /// True on the degenerate boundary `k3 = k1 + k2` or `k3 = |k1 − k2|`.
    pub fn on_boundary(self) -> bool {
        let scale = self.k1 + self.k2 + self.k3;
        let gaps = [
            self.k1 + self.k2 - self.k3,
            self.k1 + self.k3 - self.k2,
            self.k2 + self.k3 - self.k1,
        ];
        gaps.iter().any(|g| g.abs() <= 1e-13 * scale)
    }

    pub fn pair(self) -> MomentumPair {
        MomentumPair {
            k1: self.k1,
            k2: self.k2,
        }
    }
}

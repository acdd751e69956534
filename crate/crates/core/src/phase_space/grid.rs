use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Period {
    #[serde(rename = "pi")]
    Pi,
    #[serde(rename = "2pi")]
    TwoPi,
}

impl Period {
    pub fn value(self) -> f64 {
        match self {
            Period::Pi => PI,
            Period::TwoPi => 2.0 * PI,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Period::Pi => "pi",
            Period::TwoPi => "2pi",
        }
    }
}

/// Uniform samples `k_j = j * period / count` on `[0, period)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuasiMomentumGrid {
    period: Period,
    count: usize,
}

impl QuasiMomentumGrid {
    pub fn new(period: Period, count: usize) -> Result<Self> {
        if count == 0 || count % 2 != 0 {
            return Err(Error::InvalidGrid(format!("k count must be even and positive, got {count}")));
        }
        Ok(Self { period, count })
    }

    pub fn full(count: usize) -> Result<Self> {
        Self::new(Period::TwoPi, count)
    }

    pub fn period(&self) -> Period {
        self.period
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        self.period.value() / self.count as f64
    }

    #[inline]
    pub fn k(&self, j: usize) -> f64 {
        j as f64 * self.period.value() / self.count as f64
    }

    pub fn samples(&self) -> Vec<f64> {
        (0..self.count).map(|j| self.k(j)).collect()
    }

    /// Weight turning a plain sum over samples into `int_0^{2 pi} dk` for an
    /// integrand with period `period`.
    pub fn full_period_weight(&self) -> f64 {
        2.0 * PI / self.count as f64
    }

    /// Bin containing `k` after reduction into `[0, period)`.
    pub fn bin_of(&self, k: f64) -> usize {
        let p = self.period.value();
        let r = k.rem_euclid(p);
        ((r / self.spacing()).floor() as usize).min(self.count - 1)
    }
}

//! Slow, independent references. Every quantity computed here is either a
//! literal sum or a general-purpose integrator; the fast paths are checked
//! against these and never the other way round.

pub mod ode;
pub mod reference;

use serde::{Deserialize, Serialize};

pub use ode::{ode_tb_evolve, ode_tb_evolve_in, OdeSolution, DEFAULT_RTOL};
pub use reference::{direct_transform, eigenphase_evolve, naive_wigner, naive_wigner_density};

/// One comparison between a reference and the value under test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub quantity: String,
    pub reference: Vec<f64>,
    pub comparison: Vec<f64>,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl OracleReport {
    /// Builds a report from paired samples. A length mismatch or a NaN error
    /// fails the comparison.
    pub fn compare(quantity: impl Into<String>, reference: Vec<f64>, comparison: Vec<f64>, tolerance: f64) -> Self {
        let max_abs_error = if reference.len() != comparison.len() {
            f64::INFINITY
        } else {
            reference.iter().zip(&comparison).map(|(a, b)| (a - b).abs()).fold(0.0, |m: f64, e| {
                if e.is_nan() || m.is_nan() {
                    f64::NAN
                } else {
                    m.max(e)
                }
            })
        };
        Self::from_error(quantity, reference, comparison, max_abs_error, tolerance)
    }

    pub fn from_error(
        quantity: impl Into<String>,
        reference: Vec<f64>,
        comparison: Vec<f64>,
        max_abs_error: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            quantity: quantity.into(),
            reference,
            comparison,
            max_abs_error,
            tolerance,
            pass: max_abs_error <= tolerance,
        }
    }

    /// Scalar-only report without the sample vectors.
    pub fn scalar(quantity: impl Into<String>, max_abs_error: f64, tolerance: f64) -> Self {
        Self::from_error(quantity, Vec::new(), Vec::new(), max_abs_error, tolerance)
    }
}

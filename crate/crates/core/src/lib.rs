#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Geometry of the partial sums Σ n^{-s} and the zeta evaluators built on it.
//!
//! Step angles θₙ = −t·ln n are reduced modulo 2π in double-word arithmetic, so
//! diagrams and sums stay exact to about 1e-6 rad up to t = 1e9.

pub mod argand;
pub mod arith;
pub mod dts;
pub mod error;
pub mod gamma;
pub mod precision;
pub mod symmetry;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// The argument s = σ + it. Negative t is handled by conjugation at call sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SParam {
    pub sigma: f64,
    pub t: f64,
}

impl SParam {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::Domain(format!(
                "non-finite argument σ={sigma}, t={t}"
            )));
        }
        if t < 0.0 {
            return Err(Error::Domain(format!("t must be non-negative, got {t}")));
        }
        Ok(SParam { sigma, t })
    }

    /// σ ↦ 1−σ at the same t; values there are conjugated to give f(1−s).
    pub fn reflect(self) -> Self {
        SParam {
            sigma: 1.0 - self.sigma,
            t: self.t,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

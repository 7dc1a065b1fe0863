//! Forward angle differences, the Discrete Taylor Series and its inversions.

use crate::error::{Error, Result};
use crate::precision::{dw_log, reduce_linear_dw, DoubleWord};
use std::f64::consts::TAU;

pub const MAX_ORDER: usize = 4;

/// Forward differences δᵏθ at step n, k = 1..=order. Unused orders are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffSet {
    pub n: u64,
    pub order: usize,
    /// −t·Δᵏ ln n, not reduced.
    pub unreduced: [DoubleWord; MAX_ORDER],
    /// Sign-preserving reduction of `unreduced`.
    pub reduced: [f64; MAX_ORDER],
}

impl DiffSet {
    pub fn d1(&self) -> f64 {
        self.reduced[0]
    }
    pub fn d2(&self) -> f64 {
        self.reduced[1]
    }
    pub fn d3(&self) -> f64 {
        self.reduced[2]
    }
    pub fn d4(&self) -> f64 {
        self.reduced[3]
    }
    pub fn d_unreduced(&self, k: usize) -> f64 {
        self.unreduced[k - 1].to_f64()
    }
}

fn binomial(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

fn log_differences(n: u64, order: usize) -> Result<Vec<DoubleWord>> {
    let logs = (0..=order as u64)
        .map(|j| dw_log(n + j))
        .collect::<Result<Vec<_>>>()?;
    Ok((1..=order)
        .map(|k| {
            (0..=k).fold(DoubleWord::ZERO, |acc, j| {
                let term = logs[j].mul_f64(binomial(k, j));
                if (k - j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect())
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::Domain(format!(
            "difference order must be 1..=4, got {order}"
        )));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "t must be finite and non-negative, got {t}"
        )));
    }
    Ok(())
}

/// Exact forward differences of θₙ = −t·ln n from double-word logarithms.
pub fn forward_diffs(t: f64, n: u64, order: usize) -> Result<DiffSet> {
    check_t(t)?;
    check_order(order)?;
    if n == 0 {
        return Err(Error::Domain("step index must be ≥ 1".into()));
    }
    let mut unreduced = [DoubleWord::ZERO; MAX_ORDER];
    let mut reduced = [0.0; MAX_ORDER];
    for (k, d) in log_differences(n, order)?.into_iter().enumerate() {
        let v = -d.mul_f64(t);
        unreduced[k] = v;
        reduced[k] = reduce_linear_dw(v)?;
    }
    Ok(DiffSet {
        n,
        order,
        unreduced,
        reduced,
    })
}

/// θ(n0+δn) from the Newton forward series Σ C(δn,k)·δᵏθ(n0), reduced mod 2π.
pub fn dts_eval(t: f64, n0: u64, delta_n: i64, order: usize) -> Result<f64> {
    check_t(t)?;
    check_order(order)?;
    if n0 == 0 {
        return Err(Error::Domain("anchor step must be ≥ 1".into()));
    }
    if 2 * delta_n.unsigned_abs() > n0 {
        return Err(Error::Domain(format!(
            "|δn| = {} exceeds n0/2",
            delta_n.abs()
        )));
    }
    let diffs = forward_diffs(t, n0, order)?;
    let mut total = -dw_log(n0)?.mul_f64(t);
    let mut coeff = DoubleWord::ONE;
    for k in 1..=order {
        coeff = coeff.mul_f64((delta_n - (k as i64 - 1)) as f64) / DoubleWord::from_f64(k as f64);
        total = total + coeff * diffs.unreduced[k - 1];
    }
    reduce_linear_dw(total)
}

/// Which angle condition to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvertKind {
    Theta,
    D1,
    D2,
    PendantK,
}

/// Real step number at which the (unreduced) angle condition holds.
pub fn invert(t: f64, kind: InvertKind, value: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("inversion needs t > 0, got {t}")));
    }
    if !value.is_finite() {
        return Err(Error::Domain("non-finite angle".into()));
    }
    match kind {
        InvertKind::Theta => {
            if value > 0.0 {
                return Err(Error::Domain(format!("θ must be ≤ 0, got {value}")));
            }
            Ok((-value / t).exp())
        }
        InvertKind::D1 => {
            if value >= 0.0 {
                return Err(Error::Domain(format!("δθ must be < 0, got {value}")));
            }
            Ok(1.0 / (-value / t).exp_m1())
        }
        InvertKind::D2 => {
            if value <= 0.0 {
                return Err(Error::Domain(format!("δ²θ must be > 0, got {value}")));
            }
            let m = (1.0 / -(-value / t).exp_m1()).sqrt();
            Ok(m - 1.0)
        }
        InvertKind::PendantK => {
            if value <= 0.0 {
                return Err(Error::Domain(format!(
                    "pendant index must be > 0, got {value}"
                )));
            }
            Ok((t / (TAU * value)).sqrt())
        }
    }
}

/// Upper estimate of the order-4 truncation error |C(δn,5)·δ⁵θ(n0)|, with δ⁵θ ≈ 24t/n0⁵
/// evaluated at the smaller end of the stencil.
pub fn truncation_bound(t: f64, n0: u64, delta_n: i64) -> f64 {
    let lo = (n0 as f64 - delta_n.unsigned_abs() as f64).max(1.0);
    let d = delta_n as f64;
    let c5 = (0..5).fold(1.0, |acc, i| acc * (d - i as f64) / (i + 1) as f64);
    c5.abs() * 24.0 * t / lo.powi(5)
}

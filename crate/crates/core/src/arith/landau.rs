use super::primes::{prime_power_base, sieve};
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::TAU;

/// f(x) = Σ_α cos(α·ln x) / (x^{1/2}·ln x) on each grid point.
pub fn landau_cosine_sum(x_grid: &[f64], zeros: &[f64]) -> Result<Vec<f64>> {
    if let Some(x) = x_grid.iter().find(|&&x| !(x > 1.0)) {
        return Err(Error::Domain(format!("grid point {x} must exceed 1")));
    }
    Ok(x_grid
        .par_iter()
        .map(|&x| {
            let l = x.ln();
            zeros.iter().map(|a| (a * l).cos()).sum::<f64>() / (x.sqrt() * l)
        })
        .collect())
}

/// A strict local minimum of sampled data with its prominence: the mean of the two
/// neighbouring local maxima (or grid ends) minus the minimum value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMinimum {
    pub x: f64,
    pub value: f64,
    pub depth: f64,
}

pub fn local_minima(xs: &[f64], fs: &[f64]) -> Vec<GridMinimum> {
    let n = fs.len().min(xs.len());
    if n < 3 {
        return Vec::new();
    }
    let maxima: Vec<usize> = (1..n - 1)
        .filter(|&i| fs[i] > fs[i - 1] && fs[i] > fs[i + 1])
        .collect();
    (1..n - 1)
        .filter(|&i| fs[i] < fs[i - 1] && fs[i] < fs[i + 1])
        .map(|i| {
            let left = maxima.iter().rev().find(|&&j| j < i).copied().unwrap_or(0);
            let right = maxima.iter().find(|&&j| j > i).copied().unwrap_or(n - 1);
            GridMinimum {
                x: xs[i],
                value: fs[i],
                depth: 0.5 * (fs[left] + fs[right]) - fs[i],
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauRow {
    pub n: u64,
    /// Real-part change of Σ_α Σ_n n^{−1/2}cos(α ln n) at step n.
    pub change: f64,
    /// Unweighted Σ_α cos(α ln n).
    pub cos_sum: f64,
    pub cumulative: f64,
    pub is_prime_power: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandauTable {
    pub t_max: f64,
    pub rows: Vec<LandauRow>,
}

/// Per-step real parts of the ensemble Σ_{α ≤ T} Σ_{n ≤ N} n^{−1/2}·cos(α ln n).
pub fn ensemble_real_sum(zeros: &[f64], t_max: f64, n_max: u64) -> Result<LandauTable> {
    if let Some(a) = zeros.iter().find(|&&a| a > t_max) {
        return Err(Error::Domain(format!(
            "zero ordinate {a} exceeds T = {t_max}"
        )));
    }
    if n_max == 0 {
        return Err(Error::Domain("N_max must be ≥ 1".into()));
    }
    let sums: Vec<f64> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let l = (n as f64).ln();
            zeros.iter().map(|a| (a * l).cos()).sum()
        })
        .collect();
    let mut cumulative = 0.0;
    let rows = sums
        .into_iter()
        .enumerate()
        .map(|(i, cos_sum)| {
            let n = i as u64 + 1;
            let change = cos_sum / (n as f64).sqrt();
            cumulative += change;
            LandauRow {
                n,
                change,
                cos_sum,
                cumulative,
                is_prime_power: prime_power_base(n).is_some(),
            }
        })
        .collect();
    Ok(LandauTable { t_max, rows })
}

/// −T·ln p/(2π√p).
pub fn expected_prime_change(t_max: f64, p: u64) -> f64 {
    let p = p as f64;
    -t_max * p.ln() / (TAU * p.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeWeight {
    Unit,
    /// ln p/√p, the weights of the explicit formula.
    LogOverSqrt,
}

/// Σ_{p_min ≤ p ≤ P_max} w(p)·cos(y·ln p) for each y.
pub fn invert_primes_to_zeros(
    y_grid: &[f64],
    p_min: u64,
    p_max: u64,
    weight: PrimeWeight,
) -> Result<Vec<f64>> {
    if p_min < 2 {
        return Err(Error::Domain(format!("p_min must be ≥ 2, got {p_min}")));
    }
    let primes: Vec<(f64, f64)> = sieve(p_max)?
        .into_iter()
        .filter(|&p| p >= p_min)
        .map(|p| {
            let pf = p as f64;
            let l = pf.ln();
            let w = match weight {
                PrimeWeight::Unit => 1.0,
                PrimeWeight::LogOverSqrt => l / pf.sqrt(),
            };
            (l, w)
        })
        .collect();
    Ok(y_grid
        .par_iter()
        .map(|&y| primes.iter().map(|(l, w)| w * (y * l).cos()).sum())
        .collect())
}

/// Local minima lying below mean − std/2 of the sampled sum.
pub fn candidate_zeros(ys: &[f64], fs: &[f64]) -> Vec<f64> {
    if fs.is_empty() {
        return Vec::new();
    }
    let n = fs.len() as f64;
    let mean = fs.iter().sum::<f64>() / n;
    let var = fs.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / n;
    let threshold = mean - 0.5 * var.sqrt();
    local_minima(ys, fs)
        .into_iter()
        .filter(|m| m.value < threshold)
        .map(|m| m.x)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_zero_list_is_zero() {
        let f = landau_cosine_sum(&[2.0, 3.0], &[]).unwrap();
        assert!(f.iter().all(|&v| v == 0.0));
        assert!(landau_cosine_sum(&[1.0], &[14.1]).is_err());
    }

    #[test]
    fn prominence_of_simple_well() {
        let xs: Vec<f64> = (0..7).map(|i| i as f64).collect();
        let fs = [0.0, 2.0, 1.0, -3.0, 1.0, 4.0, 0.0];
        let m = local_minima(&xs, &fs);
        let deep = m.iter().find(|m| m.x == 3.0).unwrap();
        assert!((deep.depth - 6.0).abs() < 1e-15);
    }

    #[test]
    fn empty_prime_range_is_zero() {
        let f = invert_primes_to_zeros(&[1.0, 2.0], 24, 28, PrimeWeight::Unit).unwrap();
        assert!(f.iter().all(|&v| v == 0.0));
    }
}

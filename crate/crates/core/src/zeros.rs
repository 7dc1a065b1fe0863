//! Gram points, zero scans on the critical line, Lehmer pairs and zero files.

use crate::error::{Error, Result};
use crate::precision::{DoubleWord, TWO_PI, TWO_PI_3};
use crate::symmetry::theta_unreduced;
use crate::zeta::{z_function, z_function_em};
use rayon::prelude::*;
use std::f64::consts::{E, PI, TAU};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Computed,
    Ingested,
}

impl ZeroSource {
    pub fn name(self) -> &'static str {
        match self {
            ZeroSource::Computed => "computed",
            ZeroSource::Ingested => "ingested",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    /// Position within the returned sequence, starting at 1.
    pub index: usize,
    pub alpha: f64,
    pub source: ZeroSource,
    pub gram_bracket: Option<(i64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramPoint {
    pub n: u64,
    pub t: f64,
}

fn lambert_w(y: f64) -> f64 {
    let mut w = (1.0 + y).ln();
    for _ in 0..50 {
        let ew = w.exp();
        let step = (w * ew - y) / (ew * (w + 1.0));
        w -= step;
        if step.abs() < 1e-15 * w.abs().max(1.0) {
            break;
        }
    }
    w
}

/// t/2·ln(t/2π) − t/2 − π/8 − nπ in double-word.
fn gram_defect(t: f64, n: u64) -> Result<f64> {
    let pi = TWO_PI.scale(0.5) + DoubleWord::from_f64(TWO_PI_3[2] * 0.5);
    Ok((-theta_unreduced(t)? - pi.mul_f64(n as f64)).to_f64())
}

/// The t > 2π solving t/2·ln(t/2π) − t/2 − π/8 = nπ, by Newton from a Lambert-W seed.
pub fn gram_point(n: u64) -> Result<GramPoint> {
    let a = n as f64 + 0.125;
    let mut t = TAU * (1.0 + lambert_w(a / E)).exp();
    for _ in 0..50 {
        let f = gram_defect(t, n)?;
        let df = 0.5 * (t / TAU).ln();
        let dt = f / df;
        t -= dt;
        if dt.abs() <= 1e-13 * t {
            if gram_defect(t, n)?.abs() <= 1e-9 {
                return Ok(GramPoint { n, t });
            }
            break;
        }
    }
    Err(Error::Numeric(format!("Gram point {n} did not converge")))
}

/// Index g with gram(g) ≤ t < gram(g+1).
pub fn gram_index(t: f64) -> i64 {
    let v = 0.5 * t * (t / TAU).ln() - 0.5 * t - PI / 8.0;
    (v / PI).floor() as i64
}

/// Illinois-modified regula falsi on a sign-changing bracket.
pub fn refine_root<F: Fn(f64) -> Result<f64>>(
    f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Numeric(format!("no sign change on [{a}, {b}]")));
    }
    let mut side = 0i8;
    let mut prev = f64::NAN;
    for _ in 0..max_iter {
        let c = (a * fb - b * fa) / (fb - fa);
        let c = if c > a.min(b) && c < a.max(b) {
            c
        } else {
            0.5 * (a + b)
        };
        let fc = f(c)?;
        if fc == 0.0 || (b - a).abs() < tol || (c - prev).abs() < tol {
            return Ok(c);
        }
        prev = c;
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() < tol {
            return Ok(0.5 * (a + b));
        }
    }
    Ok(0.5 * (a + b))
}

fn bisect(mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if b - a <= 1e-10 * m.max(1.0) {
            break;
        }
        let fm = z_function(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[inline]
fn positive(z: f64) -> bool {
    z >= 0.0
}

/// Zeros of Z on (t_lo, t_hi): sign changes on a uniform grid refined by bisection,
/// with one level of grid halving around small same-sign |Z| minima (< 0.05).
/// Each root is then polished on the Euler–Maclaurin Z.
pub fn scan_zeros(t_lo: f64, t_hi: f64, grid_step: f64) -> Result<Vec<ZeroRecord>> {
    scan_zeros_with(t_lo, t_hi, grid_step, true)
}

/// As [`scan_zeros`], optionally leaving the roots of the first-order Riemann–Siegel Z
/// unpolished. Those are off by up to ~0.1 at small t and ~1e-3 near t = 1000, but cost
/// O(√t) per evaluation instead of O(t).
pub fn scan_zeros_with(
    t_lo: f64,
    t_hi: f64,
    grid_step: f64,
    polish: bool,
) -> Result<Vec<ZeroRecord>> {
    if !(t_lo >= TAU) || !(t_hi > t_lo) || !t_hi.is_finite() {
        return Err(Error::Domain(format!(
            "invalid scan range ({t_lo}, {t_hi})"
        )));
    }
    if !(grid_step > 0.0) {
        return Err(Error::Domain(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    let m = ((t_hi - t_lo) / grid_step).ceil().max(1.0) as usize;
    let h = (t_hi - t_lo) / m as f64;
    let ts: Vec<f64> = (0..=m)
        .map(|i| if i == m { t_hi } else { t_lo + i as f64 * h })
        .collect();
    let zs = ts
        .par_iter()
        .map(|&t| z_function(t))
        .collect::<Result<Vec<f64>>>()?;

    let mut brackets: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..m {
        if positive(zs[i]) != positive(zs[i + 1]) {
            brackets.push((ts[i], ts[i + 1], zs[i]));
        }
    }
    let suspects: Vec<usize> = (1..m)
        .filter(|&i| {
            let (a, b, c) = (zs[i - 1], zs[i], zs[i + 1]);
            positive(a) == positive(b)
                && positive(b) == positive(c)
                && b.abs() < 0.05
                && b.abs() < a.abs()
                && b.abs() < c.abs()
        })
        .collect();
    let rescued = suspects
        .par_iter()
        .map(|&i| {
            let pts = [
                ts[i - 1],
                0.5 * (ts[i - 1] + ts[i]),
                ts[i],
                0.5 * (ts[i] + ts[i + 1]),
                ts[i + 1],
            ];
            let vals = [
                zs[i - 1],
                z_function(pts[1])?,
                zs[i],
                z_function(pts[3])?,
                zs[i + 1],
            ];
            let mut found = Vec::new();
            for j in 0..4 {
                if positive(vals[j]) != positive(vals[j + 1]) {
                    found.push((pts[j], pts[j + 1], vals[j]));
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?;
    brackets.extend(rescued.into_iter().flatten());
    brackets.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut alphas = brackets
        .par_iter()
        .map(|&(a, b, fa)| {
            let rough = bisect(a, b, fa)?;
            if !polish {
                return Ok(rough);
            }
            match polish_zero(rough) {
                Err(Error::Numeric(_)) => Ok(rough),
                other => other,
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    alphas.sort_by(f64::total_cmp);
    alphas.dedup_by(|x, y| (*x - *y).abs() < 1e-8);
    Ok(alphas
        .into_iter()
        .filter(|&a| a > t_lo && a < t_hi)
        .enumerate()
        .map(|(i, alpha)| {
            let g = gram_index(alpha);
            ZeroRecord {
                index: i + 1,
                alpha,
                source: ZeroSource::Computed,
                gram_bracket: if g >= -1 { Some((g, g + 1)) } else { None },
            }
        })
        .collect())
}

/// Refines a zero bracket with the Euler–Maclaurin Z, independent of the Riemann–Siegel Z.
pub fn refine_zero_em(a: f64, b: f64) -> Result<f64> {
    refine_root(z_function_em, a, b, 1e-11, 60)
}

/// Polishes an approximate zero with the Euler–Maclaurin Z: one-sided brackets
/// [α−h, α] and [α, α+h] widen from h = 1e-3 by factors of 4 until one holds a sign change.
pub fn polish_zero(alpha: f64) -> Result<f64> {
    let z0 = z_function_em(alpha)?;
    if z0 == 0.0 {
        return Ok(alpha);
    }
    let mut h = 1e-3;
    while h < 0.3 {
        let left = z_function_em(alpha - h)?;
        let right = z_function_em(alpha + h)?;
        if left.signum() != z0.signum()
            && (right.signum() == z0.signum() || left.abs() <= right.abs())
        {
            return refine_zero_em(alpha - h, alpha);
        }
        if right.signum() != z0.signum() {
            return refine_zero_em(alpha, alpha + h);
        }
        h *= 4.0;
    }
    Err(Error::Numeric(format!(
        "no sign change of Z within ±0.256 of {alpha}"
    )))
}

/// ΔN ≈ ΔT/2π·ln(T/2π).
pub fn zero_count_estimate(t: f64, dt: f64) -> Result<f64> {
    if !(t > TAU) {
        return Err(Error::Domain(format!(
            "count estimate needs T > 2π, got {t}"
        )));
    }
    Ok(dt / TAU * (t / TAU).ln())
}

/// Mean zero spacing 2π/ln(t/2π).
pub fn mean_gap(t: f64) -> f64 {
    TAU / (t / TAU).ln()
}

/// Consecutive zeros closer than `gap_fraction` times the local mean gap.
pub fn lehmer_pairs(zeros: &[ZeroRecord], gap_fraction: f64) -> Vec<(ZeroRecord, ZeroRecord)> {
    zeros
        .windows(2)
        .filter(|w| {
            let mid = 0.5 * (w[0].alpha + w[1].alpha);
            w[1].alpha - w[0].alpha < gap_fraction * mean_gap(mid)
        })
        .map(|w| (w[0], w[1]))
        .collect()
}

/// Scan at the default 0.02 grid, then flag close pairs.
pub fn lehmer_scan(
    t_lo: f64,
    t_hi: f64,
    gap_fraction: f64,
) -> Result<Vec<(ZeroRecord, ZeroRecord)>> {
    let zeros = scan_zeros(t_lo, t_hi, 0.02)?;
    Ok(lehmer_pairs(&zeros, gap_fraction))
}

/// One positive ordinate per line, strictly increasing; blank lines are ignored.
pub fn parse_zeros(text: &str) -> Result<Vec<ZeroRecord>> {
    let mut out: Vec<ZeroRecord> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let alpha: f64 = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("not a number: {line:?}"),
        })?;
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("ordinate must be positive, got {line}"),
            });
        }
        if let Some(prev) = out.last() {
            if alpha <= prev.alpha {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("ordinates must increase ({} then {alpha})", prev.alpha),
                });
            }
        }
        let g = gram_index(alpha);
        out.push(ZeroRecord {
            index: out.len() + 1,
            alpha,
            source: ZeroSource::Ingested,
            gram_bracket: if alpha >= TAU && g >= -1 {
                Some((g, g + 1))
            } else {
                None
            },
        });
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no zeros in input".into(),
        });
    }
    Ok(out)
}

pub fn ingest_zeros(path: impl AsRef<Path>) -> Result<Vec<ZeroRecord>> {
    let text = std::fs::read_to_string(path)?;
    parse_zeros(&text)
}

//! The symmetry frame of a diagram, conjugate regions, spiral and pendant centers.

use crate::argand::{partial_sum, partial_sums_at, step};
use crate::error::{Error, Result};
use crate::gamma::{big_phase, q_asymptotic, q_exact};
use crate::precision::{
    ln_two_pi, reduce_angle, reduce_linear_dw, wrap_pi, DoubleWord, TWO_PI, TWO_PI_3,
};
use crate::SParam;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryFrame {
    pub s: SParam,
    pub n_p: u64,
    pub p: f64,
    pub x_p: f64,
    /// Θ reduced to [0, 2π).
    pub theta_big: f64,
    /// Θ − π/2 reduced to [0, 2π).
    pub theta_sym: f64,
    pub q_asym: Complex64,
    pub q_exact: Complex64,
}

impl SymmetryFrame {
    /// Direction of the symmetry axis taken as a line, in [0, π).
    pub fn axis_angle(&self) -> f64 {
        self.theta_sym.rem_euclid(PI)
    }
}

fn positive_branch(x: f64) -> f64 {
    let y = if x < 0.0 { x + TAU } else { x };
    if y >= TAU {
        0.0
    } else {
        y
    }
}

fn pi_over(div: f64) -> DoubleWord {
    // exact for powers of two
    let scale = 0.5 / div;
    TWO_PI.scale(scale) + DoubleWord::from_f64(TWO_PI_3[2] * scale)
}

/// Θ(t) = −(t/2)·ln(t/2π) + t/2 + π/8, unreduced, in double-word.
pub fn theta_unreduced(t: f64) -> Result<DoubleWord> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("Θ needs t > 0, got {t}")));
    }
    let half = 0.5 * t;
    let lt = DoubleWord::from_f64(t).ln()? - ln_two_pi();
    Ok(-lt.mul_f64(half) + DoubleWord::from_f64(half) + pi_over(8.0))
}

/// Θ(t) reduced to [0, 2π).
pub fn theta_reduced(t: f64) -> Result<f64> {
    Ok(positive_branch(reduce_linear_dw(theta_unreduced(t)?)?))
}

/// x_p = √(t/2π) and its integer and fractional parts.
pub fn pendant_position(t: f64) -> (f64, u64, f64) {
    let xp = (t / TAU).sqrt();
    let np = xp.floor();
    (xp, np as u64, xp - np)
}

pub fn frame(s: SParam) -> Result<SymmetryFrame> {
    if !(s.t >= TAU) {
        return Err(Error::Domain(format!(
            "no symmetry frame below t = 2π (t = {})",
            s.t
        )));
    }
    let (x_p, n_p, p) = pendant_position(s.t);
    let theta = theta_unreduced(s.t)?;
    let theta_big = positive_branch(reduce_linear_dw(theta)?);
    let theta_sym = positive_branch(reduce_linear_dw(theta - pi_over(2.0))?);
    Ok(SymmetryFrame {
        s,
        n_p,
        p,
        x_p,
        theta_big,
        theta_sym,
        q_asym: q_asymptotic(s, theta_big),
        q_exact: q_exact(s)?,
    })
}

/// Range of conjugate steps ñ ∈ (nₚ²/(n+½), nₚ²/(n−½)) mirroring step n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugateRange {
    pub lo: f64,
    pub hi: f64,
    /// Number of conjugate steps per original step, nₚ²/n².
    pub multiplicity: f64,
}

impl ConjugateRange {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

pub fn conjugate_range(n: u64, frame: &SymmetryFrame) -> Result<ConjugateRange> {
    if n == 0 || n > frame.n_p {
        return Err(Error::Domain(format!(
            "step {n} has no conjugate region (nₚ = {})",
            frame.n_p
        )));
    }
    let np2 = (frame.n_p * frame.n_p) as f64;
    let n = n as f64;
    Ok(ConjugateRange {
        lo: np2 / (n + 0.5),
        hi: np2 / (n - 0.5),
        multiplicity: np2 / (n * n),
    })
}

/// Conjugate of the origin under (n+½)(ñ+½) = t/2π as n → 0: ñ = t/π − ½.
pub fn origin_reciprocal(t: f64) -> f64 {
    t / PI - 0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterOrder {
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralCenter {
    pub k: u64,
    pub n_k: u64,
    pub delta_t: f64,
    pub center: Complex64,
    pub order: CenterOrder,
}

/// N_k = floor(t/((2k−1)π)) and δt = t − (2k−1)π·N_k.
pub fn spiral_index(t: f64, k: u64) -> (u64, f64) {
    let width = (2 * k - 1) as f64 * PI;
    let n = (t / width).floor();
    let dt = t - width * n;
    // guard against rounding placing δt just outside [0, width)
    if dt < 0.0 {
        ((n - 1.0) as u64, dt + width)
    } else if dt >= width {
        ((n + 1.0) as u64, dt - width)
    } else {
        (n as u64, dt)
    }
}

fn corrected_center(
    s: SParam,
    sum: Complex64,
    n: u64,
    dt: f64,
    order: CenterOrder,
) -> Result<Complex64> {
    let last = step(s, n)?;
    let mut c = sum - last * 0.5;
    if order == CenterOrder::One {
        c += Complex64::new(s.sigma, dt) / (4.0 * n as f64) * last;
    }
    Ok(c)
}

/// Center of the k-th scroll: Σ₁^{N} n^{-s} − N^{-s}/2, plus the longitudinal and
/// transverse correction (σ + iδt)/(4N)·N^{-s} at order one.
pub fn spiral_center(s: SParam, k: u64, order: CenterOrder) -> Result<SpiralCenter> {
    Ok(spiral_centers(s, &[k], order)?.remove(0))
}

pub fn spiral_centers(s: SParam, ks: &[u64], order: CenterOrder) -> Result<Vec<SpiralCenter>> {
    if ks.contains(&0) {
        return Err(Error::Domain("scroll index k must be ≥ 1".into()));
    }
    let idx: Vec<(u64, f64)> = ks.iter().map(|&k| spiral_index(s.t, k)).collect();
    if let Some((k, _)) = ks.iter().zip(&idx).find(|(_, (n, _))| *n < 2) {
        return Err(Error::Domain(format!(
            "scroll {k} at t = {} ends before step 2",
            s.t
        )));
    }
    let cutoffs: Vec<u64> = idx.iter().map(|(n, _)| *n).collect();
    let sums = partial_sums_at(s, &cutoffs)?;
    ks.iter()
        .zip(idx)
        .zip(sums)
        .map(|((&k, (n_k, delta_t)), sum)| {
            Ok(SpiralCenter {
                k,
                n_k,
                delta_t,
                center: corrected_center(s, sum, n_k, delta_t, order)?,
                order,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PendantMethod {
    FirstOrder,
    SineLaw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PendantCenter {
    pub value: Complex64,
    pub method: PendantMethod,
    /// Distance from the partial sum at nₚ to the center.
    pub l: f64,
    pub capped: bool,
    pub diagnostic: Option<String>,
}

/// Threshold on |cos 2πp| below which the offset is capped.
pub const CAP_THRESHOLD: f64 = 0.1;

/// Absolute cap on the pendant offset, 6^{1/3}·nₚ^{1/6}/(2π).
pub fn pendant_cap(n_p: u64) -> f64 {
    6f64.cbrt() * (n_p as f64).powf(1.0 / 6.0) / TAU
}

fn first_order(
    s: SParam,
    sum: Complex64,
    n_p: u64,
    p: f64,
    theta_np: f64,
    diagnostic: Option<String>,
) -> PendantCenter {
    let c = (TAU * p).cos();
    let amp = 1.0 / (2.0 * (n_p as f64).powf(s.sigma) * c.abs());
    let dir = -Complex64::from_polar(c.signum(), theta_np - TAU * p);
    let (l, capped) = if c.abs() < CAP_THRESHOLD {
        // the cap is stated at σ = 1/2; off the line it scales with the step length nₚ^{−σ}
        let cap = pendant_cap(n_p) * (n_p as f64).powf(0.5 - s.sigma);
        (amp.min(cap), true)
    } else {
        (amp, false)
    };
    PendantCenter {
        value: sum + dir * l,
        method: PendantMethod::FirstOrder,
        l,
        capped,
        diagnostic,
    }
}

/// Center of the pendant structure P(s).
pub fn pendant_center(s: SParam, method: PendantMethod) -> Result<PendantCenter> {
    if !(s.t >= TAU) {
        return Err(Error::Domain(format!("pendant needs t ≥ 2π, got {}", s.t)));
    }
    let (_, n_p, p) = pendant_position(s.t);
    let sum = partial_sum(s, n_p)?;
    let theta_np = reduce_angle(s.t, n_p)?.theta;
    match method {
        PendantMethod::FirstOrder => Ok(first_order(s, sum, n_p, p, theta_np, None)),
        PendantMethod::SineLaw => {
            let npf = n_p as f64;
            let base = PI - 4.0 * PI * p;
            let d1 = base + TAU * (p - 0.5).powi(2) / npf;
            let d2 = base + TAU * (p + 0.5).powi(2) / npf;
            let th1 = FRAC_PI_2 + d1 / 2.0;
            let th2 = FRAC_PI_2 + d2 / 2.0;
            let th3 = PI - th1 - th2;
            if th3.sin().abs() < 0.05 || (TAU * p).cos().abs() < CAP_THRESHOLD {
                let mut c = first_order(
                    s,
                    sum,
                    n_p,
                    p,
                    theta_np,
                    Some(format!(
                        "sine law degenerate (θ₃ = {th3:.4}); capped first order used"
                    )),
                );
                c.capped = true;
                return Ok(c);
            }
            let coeff = th2.sin() / (th3.sin() * npf.powf(s.sigma));
            let dir = Complex64::from_polar(1.0, theta_np - FRAC_PI_2 + d1 / 2.0);
            Ok(PendantCenter {
                value: sum + dir * coeff,
                method: PendantMethod::SineLaw,
                l: coeff.abs(),
                capped: false,
                diagnostic: None,
            })
        }
    }
}

/// Root of δn³ − 3δn² + (2 + 6nₚ(1−4p))δn = 6nₚ and the offset bound derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusCap {
    pub delta_n: f64,
    /// δn/(2π·nₚ^{1/6}); equals 6^{1/3}nₚ^{1/6}/(2π) when δn = (6nₚ)^{1/3}.
    pub l: f64,
}

pub fn pendant_radius_cap(n_p: u64, p: f64) -> Result<RadiusCap> {
    if n_p < 2 {
        return Err(Error::Domain(format!("cap needs nₚ ≥ 2, got {n_p}")));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1), got {p}")));
    }
    let np = n_p as f64;
    let b = 2.0 + 6.0 * np * (1.0 - 4.0 * p);
    let f = |x: f64| ((x - 3.0) * x + b) * x - 6.0 * np;
    let df = |x: f64| (3.0 * x - 6.0) * x + b;
    let start = (6.0 * np).cbrt();
    let (mut lo, mut hi) = (0.0, start.max(1.0));
    while f(hi) <= 0.0 {
        hi *= 2.0;
    }
    let mut x = start.clamp(lo, hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            break;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        x = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-14 * hi.max(1.0) || (fx / d).abs() < 1e-15 * x.max(1.0) {
            break;
        }
    }
    Ok(RadiusCap {
        delta_n: x,
        l: x / (TAU * np.powf(1.0 / 6.0)),
    })
}

/// Universal ratios Q_k = (center(k) − center(k+1)) / k^{s−1}, k = 1..=k_max.
pub fn conjugate_ratio_experiment(s: SParam, k_max: u64) -> Result<Vec<Complex64>> {
    let (_, n_p, _) = pendant_position(s.t);
    if k_max == 0 || 3 * k_max > n_p {
        return Err(Error::Domain(format!(
            "k_max = {k_max} must lie in 1..=nₚ/3 (nₚ = {n_p})"
        )));
    }
    let ks: Vec<u64> = (1..=k_max + 1).collect();
    let centers = spiral_centers(s, &ks, CenterOrder::One)?;
    (1..=k_max)
        .map(|k| {
            let d = centers[(k - 1) as usize].center - centers[k as usize].center;
            let theta_k = reduce_angle(s.t, k)?.theta;
            // k^{s−1} = k^{σ−1}·e^{−iθ_k}
            let ks1 = Complex64::from_polar((k as f64).powf(s.sigma - 1.0), -theta_k);
            Ok(d / ks1)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianScroll {
    pub value: Complex64,
    /// False when (nₚ/k)² < 5 and the gaussian approximation is poor.
    pub accurate: bool,
}

/// nₚ^{1−2σ}/k^{σ−1}·e^{i(−t·ln(t/2π) + t + π/4·(1 − (k/nₚ)²))}.
pub fn gaussian_scroll(s: SParam, k: u64) -> Result<GaussianScroll> {
    if k == 0 {
        return Err(Error::Domain("scroll index k must be ≥ 1".into()));
    }
    let (_, n_p, _) = pendant_position(s.t);
    if n_p == 0 {
        return Err(Error::Domain("gaussian scroll needs t ≥ 2π".into()));
    }
    let np = n_p as f64;
    let kf = k as f64;
    let ratio = kf / np;
    let phase = big_phase(s.t)? + PI / 4.0 * (1.0 - ratio * ratio);
    let amp = np.powf(1.0 - 2.0 * s.sigma) / kf.powf(s.sigma - 1.0);
    Ok(GaussianScroll {
        value: Complex64::from_polar(amp, phase),
        accurate: (np / kf).powi(2) >= 5.0,
    })
}

/// Phase of Q_k·(step k) relative to 2Θ, wrapped to (−π, π].
pub fn ratio_phase_defect(q_k: Complex64, frame: &SymmetryFrame) -> f64 {
    wrap_pi(q_k.arg() - 2.0 * frame.theta_big)
}

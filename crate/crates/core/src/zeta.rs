//! Three evaluators of ζ(s): geometric continuation, Euler–Maclaurin and
//! Riemann–Siegel, plus Z(t) and the functional-equation residual.

use crate::argand::{partial_sum, step};
use crate::error::{Error, Result};
use crate::gamma::q_exact;
use crate::symmetry::{
    pendant_center, pendant_position, spiral_center, theta_reduced, CenterOrder, PendantMethod,
};
use crate::SParam;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Geometric,
    EulerMaclaurin,
    RiemannSiegel,
    Direct,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Geometric => "geometric",
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::RiemannSiegel => "riemann_siegel",
            Method::Direct => "direct",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    pub method: Method,
    pub est_error: f64,
}

/// B_{2k}/(2k)! for k = 1..=30.
pub const BERNOULLI_OVER_FACTORIAL: [f64; 30] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.247076741820743e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569557e-46,
    -2.5718041582418717e-48,
];

/// Largest even order supported by the Bernoulli table.
pub const MAX_EM_ORDER: usize = 2 * BERNOULLI_OVER_FACTORIAL.len() - 2;

/// Euler–Maclaurin tail for Σ_{n≥N}(n+shift)^{-s}-type sums, given u^{-s} at the cut-off u.
/// Returns (Σ_k B_{2k}/(2k)!·s(s+1)…(s+2k−2)·u^{-s-2k+1}, error estimate).
pub(crate) fn em_corrections(
    s: Complex64,
    u: f64,
    u_pow: Complex64,
    order: usize,
) -> (Complex64, f64) {
    let m = order / 2;
    let mut rising = s;
    let mut power = u_pow / u;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut next = 0.0;
    for k in 1..=m + 1 {
        if k > 1 {
            let a = 2.0 * k as f64 - 3.0;
            rising = rising * (s + a) * (s + a + 1.0);
            power /= u * u;
        }
        let term = rising * power * BERNOULLI_OVER_FACTORIAL[k - 1];
        if k <= m {
            acc += term;
        } else {
            let n = 2.0 * m as f64 + 1.0;
            next = term.norm() * (s + n).norm() / (s.re + n).abs().max(1e-300);
        }
    }
    (acc, next)
}

fn check_em_order(order: usize) -> Result<()> {
    if order < 2 || !order.is_multiple_of(2) || order > MAX_EM_ORDER {
        return Err(Error::Domain(format!(
            "Euler–Maclaurin order must be even in 2..={MAX_EM_ORDER}, got {order}"
        )));
    }
    Ok(())
}

/// Σ₁^N n^{-s} − N^{-s}/2 + N^{1−s}/(s−1) + Σ_k B_{2k}/(2k)!·(s)_{2k−1}·N^{-s-2k+1}.
pub fn zeta_em(s: SParam, n: u64, order: usize) -> Result<ZetaValue> {
    check_em_order(order)?;
    if n == 0 {
        return Err(Error::Domain("cut-off N must be ≥ 1".into()));
    }
    if (n as f64) <= s.t / TAU {
        return Err(Error::Domain(format!(
            "Euler–Maclaurin correction diverges: N = {n} ≤ t/2π = {:.3}",
            s.t / TAU
        )));
    }
    let z = s.to_complex();
    if (z - 1.0).norm() == 0.0 {
        return Err(Error::Domain("pole at s = 1".into()));
    }
    let sum = partial_sum(s, n)?;
    let np = step(s, n)?;
    let nf = n as f64;
    let (corr, err) = em_corrections(z, nf, np, order);
    let value = sum - np * 0.5 + np * nf / (z - 1.0) + corr;
    Ok(ZetaValue {
        value,
        method: Method::EulerMaclaurin,
        est_error: err + 1e-15 * value.norm().max(1.0),
    })
}

/// Euler–Maclaurin with a cut-off and order chosen for about 1e-12 accuracy.
pub fn zeta_em_auto(s: SParam) -> Result<ZetaValue> {
    let n = ((s.t / PI).ceil() as u64).max(50) + 16;
    zeta_em(s, n, 40)
}

/// Plain partial sum Σ₁^N n^{-s} with the integral tail bound N^{1−σ}/(σ−1) as error.
pub fn zeta_direct(s: SParam, n: u64) -> Result<ZetaValue> {
    if s.sigma <= 1.0 {
        return Err(Error::Domain(format!(
            "direct sum diverges for σ = {} ≤ 1",
            s.sigma
        )));
    }
    let value = partial_sum(s, n)?;
    Ok(ZetaValue {
        value,
        method: Method::Direct,
        est_error: (n as f64).powf(1.0 - s.sigma) / (s.sigma - 1.0),
    })
}

/// Geometric evaluator error scale: 10·N^{−2−σ}, i.e. 10·N^{−5/2} on the critical line.
pub fn geometric_error(n: u64, sigma: f64) -> f64 {
    10.0 * (n as f64).powf(-2.0 - sigma)
}

/// ζ(s) as the corrected center of the final spiral, truncated at N = floor(t/π).
/// Outside its region it delegates: t < 10 → Euler–Maclaurin (N = 50, order 8);
/// σ > 1.2 → direct sum when cheap, else Euler–Maclaurin; σ ∉ (0, 1.2] → Euler–Maclaurin.
pub fn zeta_geometric(s: SParam) -> Result<ZetaValue> {
    if s.sigma > 1.2 {
        let needed = (1e-12 * (s.sigma - 1.0)).powf(1.0 / (1.0 - s.sigma));
        if needed <= 1e6 {
            return zeta_direct(s, needed.ceil().max(1.0) as u64);
        }
        return zeta_em_auto(s);
    }
    if s.t < 10.0 {
        return zeta_em(s, 50, 8);
    }
    if s.sigma <= 0.0 {
        return zeta_em_auto(s);
    }
    let c = spiral_center(s, 1, CenterOrder::One)?;
    Ok(ZetaValue {
        value: c.center,
        method: Method::Geometric,
        est_error: geometric_error(c.n_k, s.sigma),
    })
}

/// Geometric evaluation with a chosen center order, without delegation.
pub fn zeta_geometric_order(s: SParam, order: CenterOrder) -> Result<ZetaValue> {
    let c = spiral_center(s, 1, order)?;
    let est = match order {
        CenterOrder::Zero => 10.0 * (c.n_k as f64).powf(-1.0 - s.sigma),
        CenterOrder::One => geometric_error(c.n_k, s.sigma),
    };
    Ok(ZetaValue {
        value: c.center,
        method: Method::Geometric,
        est_error: est,
    })
}

/// First-order Riemann–Siegel error scale 4·x_p^{−1−σ}/max(|cos 2πp|, 0.1).
/// The pendant correction divides by cos 2πp, which amplifies its phase error.
pub fn riemann_siegel_error(t: f64, sigma: f64) -> f64 {
    let xp = (t / TAU).sqrt();
    let c = (TAU * xp.fract()).cos().abs();
    4.0 * xp.powf(-1.0 - sigma) / c.max(0.1)
}

/// ζ(s) = P(s) + Q(s)·P(1−s) with P(1−s) the conjugated pendant center at σ → 1−σ.
pub fn riemann_siegel(s: SParam) -> Result<ZetaValue> {
    riemann_siegel_with(s, PendantMethod::FirstOrder)
}

pub fn riemann_siegel_with(s: SParam, method: PendantMethod) -> Result<ZetaValue> {
    if !(s.t >= TAU) {
        return Err(Error::Domain(format!(
            "Riemann–Siegel needs t ≥ 2π, got {}",
            s.t
        )));
    }
    let p = pendant_center(s, method)?.value;
    let p_reflected = pendant_center(s.reflect(), method)?.value.conj();
    let q = q_exact(s)?;
    Ok(ZetaValue {
        value: p + q * p_reflected,
        method: Method::RiemannSiegel,
        est_error: riemann_siegel_error(s.t, s.sigma),
    })
}

/// R = (−1)^{nₚ−1}·cos 2π(p² − p − 1/16) / (√nₚ·cos 2πp), with the 0/0 points resolved.
pub fn rs_remainder(n_p: u64, p: f64) -> Result<f64> {
    if n_p == 0 {
        return Err(Error::Domain("remainder needs nₚ ≥ 1".into()));
    }
    let sign = if n_p % 2 == 1 { 1.0 } else { -1.0 };
    let den = (TAU * p).cos();
    let arg = TAU * (p * p - p - 1.0 / 16.0);
    let ratio = if den.abs() < 1e-6 {
        arg.sin() * (2.0 * p - 1.0) / (TAU * p).sin()
    } else {
        arg.cos() / den
    };
    Ok(sign * ratio / (n_p as f64).sqrt())
}

/// 2·Σ_{n≤nₚ} n^{−1/2}·cos(Θ − θₙ) with θₙ = −t·ln n.
pub fn z_main(t: f64) -> Result<f64> {
    if !(t >= TAU) {
        return Err(Error::Domain(format!("Z needs t ≥ 2π, got {t}")));
    }
    let (_, n_p, _) = pendant_position(t);
    let mut acc = 0.0;
    if t <= 1e6 {
        let theta = -0.5 * t * (t / TAU).ln() + 0.5 * t + PI / 8.0;
        for n in 1..=n_p {
            let nf = n as f64;
            acc += (theta + t * nf.ln()).cos() / nf.sqrt();
        }
    } else {
        let theta = theta_reduced(t)?;
        for n in 1..=n_p {
            let th = crate::precision::reduce_angle(t, n)?.theta;
            acc += (theta - th).cos() / (n as f64).sqrt();
        }
    }
    Ok(2.0 * acc)
}

/// Z(t): the rotated ζ(1/2+it), real by construction.
pub fn z_function(t: f64) -> Result<f64> {
    let (_, n_p, p) = pendant_position(t);
    Ok(z_main(t)? + rs_remainder(n_p.max(1), p)?)
}

/// Z(t) from a high-order Euler–Maclaurin value, rotated by the exact phase of Q.
/// Independent of the Riemann–Siegel machinery; used as a refinement oracle.
pub fn z_function_em(t: f64) -> Result<f64> {
    let s = SParam::new(0.5, t)?;
    let zeta = zeta_em_auto(s)?.value;
    let q = q_exact(s)?;
    // Q = e^{−2iϑ} on the critical line; choose the root nearest e^{−iΘ}
    let half = -0.5 * q.arg();
    let theta = theta_reduced(t)?;
    let a = Complex64::from_polar(1.0, half);
    let target = Complex64::from_polar(1.0, -theta);
    let rot = if (a - target).norm() <= (a + target).norm() {
        a
    } else {
        -a
    };
    Ok((rot * zeta).re)
}

/// |ζ_geo(s) − Q(s)·ζ_geo(1−s)| / max(|ζ_geo(s)|, 1e-6), with ζ_geo(1−s) = conj ζ_geo(1−σ+it).
pub fn functional_eq_residual(s: SParam) -> Result<f64> {
    if !(s.sigma > 0.0 && s.sigma < 1.0) || s.t < 10.0 {
        return Err(Error::Domain(format!(
            "residual defined for 0 < σ < 1, t ≥ 10 (σ = {}, t = {})",
            s.sigma, s.t
        )));
    }
    let a = zeta_geometric(s)?.value;
    let b = zeta_geometric(s.reflect())?.value.conj();
    let q = q_exact(s)?;
    Ok((a - q * b).norm() / a.norm().max(1e-6))
}

/// Σ_{n≤nₚ} n^{−σ}, the triangle bound on |P(s)|.
pub fn p_bound(s: SParam) -> Result<f64> {
    if !(s.t >= TAU) {
        return Err(Error::Domain(format!("bound needs t ≥ 2π, got {}", s.t)));
    }
    let (_, n_p, _) = pendant_position(s.t);
    Ok((1..=n_p).map(|n| (n as f64).powf(-s.sigma)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_table_head() {
        assert!((BERNOULLI_OVER_FACTORIAL[0] - 1.0 / 12.0).abs() < 1e-17);
        assert!((BERNOULLI_OVER_FACTORIAL[1] + 1.0 / 720.0).abs() < 1e-18);
    }

    #[test]
    fn remainder_limits() {
        let at_quarter = rs_remainder(9, 0.25).unwrap();
        let near = rs_remainder(9, 0.25 + 1e-4).unwrap();
        assert!((at_quarter - near).abs() < 1e-3);
        let at_three_quarters = rs_remainder(9, 0.75).unwrap();
        let near = rs_remainder(9, 0.75 - 1e-4).unwrap();
        assert!((at_three_quarters - near).abs() < 1e-3);
    }

    #[test]
    fn em_rejects_small_cutoff() {
        let s = SParam::new(0.5, 1000.0).unwrap();
        assert!(zeta_em(s, 100, 8).is_err());
        assert!(zeta_em(s, 200, 7).is_err());
    }
}

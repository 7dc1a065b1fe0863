//! Log-gamma for complex arguments and the functional-equation factor
//! Q(s) = (2πi)^s / Γ(s).

use crate::error::{Error, Result};
use crate::precision::{ln_two_pi, reduce_linear_dw, DoubleWord};
use crate::SParam;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: Complex64) -> Complex64 {
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += *c / (z + (k as f64 - 1.0));
    }
    a
}

/// ln Γ(σ+it) for t > 0 split so that the large part of the imaginary component,
/// t·ln t − t, can be carried separately in double-word.
#[derive(Debug, Clone, Copy)]
struct LogGammaParts {
    /// Re ln Γ + πt/2.
    re_shifted: f64,
    /// Im ln Γ − (t·ln t − t).
    im_small: f64,
}

fn log_gamma_parts(sigma: f64, t: f64) -> LogGammaParts {
    let shift = if sigma < 1.5 {
        (1.5 - sigma).ceil()
    } else {
        0.0
    };
    let z = Complex64::new(sigma + shift, t);
    let c = z.re + LANCZOS_G - 0.5;
    let ratio = c / t;
    let ln_abs_w = t.ln() + 0.5 * (ratio * ratio).ln_1p();
    let atan_ratio = ratio.atan();
    let arg_w = FRAC_PI_2 - atan_ratio;
    let ln_a = lanczos_sum(z).ln();
    let mut re = 0.5 * TAU.ln() + (z.re - 0.5) * ln_abs_w + t * atan_ratio - c + ln_a.re;
    let mut im = (z.re - 0.5) * arg_w + 0.5 * t * (ratio * ratio).ln_1p() + ln_a.im;
    for j in 0..shift as usize {
        let u = sigma + j as f64;
        re -= 0.5 * (u * u + t * t).ln();
        im -= FRAC_PI_2 - (u / t).atan();
    }
    LogGammaParts {
        re_shifted: re,
        im_small: im,
    }
}

/// ln Γ(s) for t > 0, with the imaginary part reduced into (−π, π].
pub fn ln_gamma(s: SParam) -> Result<Complex64> {
    if !(s.t > 0.0) {
        return Err(Error::Domain("ln_gamma here needs t > 0".into()));
    }
    let parts = log_gamma_parts(s.sigma, s.t);
    let lt = DoubleWord::from_f64(s.t).ln()?;
    let big = reduce_linear_dw(lt.mul_f64(s.t) - DoubleWord::from_f64(s.t))?;
    let im = parts.im_small + big;
    Ok(Complex64::new(
        parts.re_shifted - FRAC_PI_2 * s.t,
        crate::precision::wrap_pi(im),
    ))
}

/// −t·ln(t/2π) + t reduced to [0, 2π) or (−2π, 0] by sign.
pub(crate) fn big_phase(t: f64) -> Result<f64> {
    let lt = DoubleWord::from_f64(t).ln()? - ln_two_pi();
    let v = -lt.mul_f64(t) + DoubleWord::from_f64(t);
    reduce_linear_dw(v)
}

/// Q(s) = (2πi)^s / Γ(s), evaluated in the log domain with the large phase
/// reduced in double-word.
pub fn q_exact(s: SParam) -> Result<Complex64> {
    if !(s.t > 0.0) {
        return Err(Error::Domain("q_exact needs t > 0".into()));
    }
    let parts = log_gamma_parts(s.sigma, s.t);
    let modulus = s.sigma * TAU.ln() - parts.re_shifted;
    let phase = big_phase(s.t)? + s.sigma * FRAC_PI_2 - parts.im_small;
    Ok(Complex64::from_polar(modulus.exp(), phase))
}

/// Asymptotic Q ≈ x_p^{1−2σ}·e^{2iΘ} with x_p = √(t/2π).
pub fn q_asymptotic(s: SParam, theta_big: f64) -> Complex64 {
    let xp = (s.t / TAU).sqrt();
    Complex64::from_polar(xp.powf(1.0 - 2.0 * s.sigma), 2.0 * theta_big)
}

/// Γ(x) for real x > 0, from the same Lanczos coefficients.
pub fn gamma_real(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_real(1.0 - x));
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    TAU.sqrt() * w.powf(z + 0.5) * (-w).exp() * a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_gamma_values() {
        assert!((gamma_real(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma_real(0.5) - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn ln_gamma_matches_factorial_growth() {
        // Γ(1+it)Γ(1−it) = πt/sinh(πt)
        let t = 3.0;
        let g = ln_gamma(SParam::new(1.0, t).unwrap()).unwrap();
        let expected = 0.5 * (PI * t / (PI * t).sinh()).ln();
        assert!((g.re - expected).abs() < 1e-12);
    }

    #[test]
    fn ln_gamma_recurrence() {
        let s = SParam::new(0.3, 20.0).unwrap();
        let s1 = SParam::new(1.3, 20.0).unwrap();
        let a = ln_gamma(s).unwrap();
        let b = ln_gamma(s1).unwrap();
        let diff = b - a - s.to_complex().ln();
        assert!(diff.re.abs() < 1e-12);
        assert!(crate::precision::wrap_pi(diff.im).abs() < 1e-11);
    }
}

use super::characters::DirichletCharacter;
use super::primes::sieve;
use crate::argand::{step, CompensatedSum};
use crate::error::{Error, Result};
use crate::precision::{reduce_linear_dw, two_sum, DoubleWord};
use crate::zeta::em_corrections;
use crate::SParam;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Partial product Π_{p ≤ P} (1 − p^{−s})^{−1}, accumulated as a sum of logarithms.
pub fn euler_product(s: SParam, p_max: u64) -> Result<Complex64> {
    if s.sigma <= 1.0 {
        return Err(Error::Domain(format!(
            "Euler product diverges for σ = {} ≤ 1",
            s.sigma
        )));
    }
    let primes = sieve(p_max)?;
    let logs = primes
        .par_iter()
        .map(|&p| Ok(-(Complex64::new(1.0, 0.0) - step(s, p)?).ln()))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = CompensatedSum::new();
    for l in logs {
        acc.add(l);
    }
    Ok(acc.value().exp())
}

/// Relative bound on |ζ(s)/Π_{p≤P} − 1|: e^B − 1 with B = 2·P^{1−σ}/(σ−1).
pub fn euler_tail_bound(sigma: f64, p_max: u64) -> f64 {
    let b = 2.0 * (p_max as f64).powf(1.0 - sigma) / (sigma - 1.0);
    b.exp_m1()
}

/// (n+a)^{−s} with the angle −t·ln(n+a) reduced in double-word.
fn shifted_step(s: SParam, n: u64, a: f64) -> Result<Complex64> {
    let (hi, lo) = two_sum(n as f64, a);
    let u = DoubleWord::new(hi, lo);
    let ln = u.ln()?;
    let theta = reduce_linear_dw(-ln.mul_f64(s.t))?;
    let len = (-s.sigma * ln.hi).exp() * (1.0 - s.sigma * ln.lo);
    Ok(Complex64::from_polar(len, theta))
}

fn shifted_sum(s: SParam, a: f64, last: u64) -> Result<Complex64> {
    const CHUNK: u64 = 4096;
    let chunks = (last + 1).div_ceil(CHUNK);
    let parts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = CompensatedSum::new();
            for n in c * CHUNK..((c + 1) * CHUNK).min(last + 1) {
                acc.add(shifted_step(s, n, a)?);
            }
            Ok(acc.value())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut acc = CompensatedSum::new();
    for z in parts {
        acc.add(z);
    }
    Ok(acc.value())
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!(
            "Hurwitz shift a must lie in (0, 1], got {a}"
        )));
    }
    Ok(())
}

fn uses_geometric(s: SParam) -> bool {
    s.t >= 10.0 && s.sigma <= 1.2
}

/// Geometric continuation: steps (n+a)^{−s} up to n_end = floor(t/π − a), then the
/// final-spiral center with the same λ/τ corrections as for ζ.
fn hurwitz_geometric(s: SParam, a: f64) -> Result<Complex64> {
    let n_end = (s.t / PI - a).floor() as u64;
    let u = n_end as f64 + a;
    let dt = s.t - PI * u;
    let sum = shifted_sum(s, a, n_end)?;
    let last = shifted_step(s, n_end, a)?;
    Ok(sum - last * 0.5 + Complex64::new(s.sigma, dt) / (4.0 * u) * last)
}

/// Euler–Maclaurin parts: (Σ_{n≤N}(n+a)^{−s} − u^{−s}/2 + corrections, u^{−s}, u).
fn hurwitz_em_parts(s: SParam, a: f64) -> Result<(Complex64, Complex64, f64)> {
    let n = ((s.t / PI).ceil() as u64).max(50) + 16;
    let u = n as f64 + a;
    let sum = shifted_sum(s, a, n)?;
    let u_pow = shifted_step(s, n, a)?;
    let (corr, _) = em_corrections(s.to_complex(), u, u_pow, 40);
    Ok((sum - u_pow * 0.5 + corr, u_pow, u))
}

/// ζ(s, a) = Σ_{n≥0} (n+a)^{−s}, continued geometrically for t ≥ 10, σ ≤ 1.2 and by
/// Euler–Maclaurin elsewhere.
pub fn hurwitz(s: SParam, a: f64) -> Result<Complex64> {
    check_a(a)?;
    if uses_geometric(s) {
        return hurwitz_geometric(s, a);
    }
    let z = s.to_complex();
    if (z - 1.0).norm() == 0.0 {
        return Err(Error::Domain("pole at s = 1".into()));
    }
    let (base, u_pow, u) = hurwitz_em_parts(s, a)?;
    Ok(base + u_pow * u / (z - 1.0))
}

/// ζ(s, a) − 1/(s−1), finite at s = 1, by Euler–Maclaurin.
pub fn hurwitz_regular(s: SParam, a: f64) -> Result<Complex64> {
    check_a(a)?;
    let (base, u_pow, u) = hurwitz_em_parts(s, a)?;
    let z = s.to_complex();
    let ln_u = u.ln();
    let w = (1.0 - z) * ln_u;
    // (u^{1−s} − 1)/(s−1) = −ln u·(e^w − 1)/w
    let pole_part = if w.norm() < 1e-3 {
        let series = 1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0 + w * w * w * w / 120.0;
        -series * ln_u
    } else {
        (u_pow * u - 1.0) / (z - 1.0)
    };
    Ok(base + pole_part)
}

/// L(s, χ) = k^{−s}·Σ_r χ(r)·ζ(s, r/k).
pub fn l_function(s: SParam, chi: &DirichletCharacter) -> Result<Complex64> {
    let k = chi.modulus;
    let terms: Vec<(Complex64, f64)> = (1..=k)
        .filter_map(|r| {
            let c = chi.eval(r);
            (c.norm() > 0.0).then_some((c, r as f64 / k as f64))
        })
        .collect();
    let sum = if uses_geometric(s) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, a) in &terms {
            acc += c * hurwitz_geometric(s, *a)?;
        }
        acc
    } else {
        let z = s.to_complex();
        let weight: Complex64 = terms.iter().map(|(c, _)| c).sum();
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, a) in &terms {
            acc += c * hurwitz_regular(s, *a)?;
        }
        if weight.norm() > 1e-12 {
            if (z - 1.0).norm() == 0.0 {
                return Err(Error::Domain(
                    "principal L-function has a pole at s = 1".into(),
                ));
            }
            acc += weight / (z - 1.0);
        }
        acc
    };
    Ok(step(s, k)? * sum)
}

/// Σ_{n ≤ N} χ(n)·n^{−s}.
pub fn dirichlet_series_direct(s: SParam, chi: &DirichletCharacter, n: u64) -> Result<Complex64> {
    let mut acc = CompensatedSum::new();
    for m in 1..=n {
        let c = chi.eval(m);
        if c.norm() > 0.0 {
            acc.add(c * step(s, m)?);
        }
    }
    Ok(acc.value())
}

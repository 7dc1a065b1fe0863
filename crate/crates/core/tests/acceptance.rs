//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` fail against their published targets for reasons
//! recorded in the project notes; they are reported as FAIL but do not abort the run.
//! Any other failure exits non-zero.

use rayon::prelude::*;
use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};
use zeta_geometry::arith::{
    characters, ensemble_real_sum, euler_product, euler_tail_bound, expected_prime_change, hurwitz,
    l_function, landau_cosine_sum, local_minima, prime_power_base,
};
use zeta_geometry::dts::{dts_eval, forward_diffs};
use zeta_geometry::precision::{reduce_angle, wrap_pi};
use zeta_geometry::symmetry::{
    conjugate_ratio_experiment, frame, pendant_position, ratio_phase_defect, spiral_center,
    CenterOrder,
};
use zeta_geometry::zeros::{
    gram_point, mean_gap, polish_zero, scan_zeros, scan_zeros_with, zero_count_estimate,
};
use zeta_geometry::zeta::{
    functional_eq_residual, p_bound, rs_remainder, z_function, z_main, zeta_em_auto,
};
use zeta_geometry::{Complex64, SParam};

/// 83 zeros lie in (1100, 1200), not 82; and |ζ(1/2 + 549.4975i)| ≈ 2.9e-4 makes the
/// relative functional-equation residual there exceed 1e-3.
const KNOWN_RED: &[usize] = &[5, 8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn s(sigma: f64, t: f64) -> SParam {
    SParam::new(sigma, t).unwrap()
}

fn refined_zeros(t_lo: f64, t_hi: f64) -> Vec<f64> {
    scan_zeros(t_lo, t_hi, 0.05)
        .unwrap()
        .iter()
        .map(|z| z.alpha)
        .collect()
}

fn c1_table_one() -> Outcome {
    let start = Instant::now();
    let expected = [
        (12614, -1.3272),
        (12615, -0.2297),
        (12616, -5.4148),
        (12617, -4.3170),
    ];
    let mut worst: f64 = 0.0;
    for (n, th) in expected {
        let r = reduce_angle(1e9, n).unwrap();
        worst = worst.max(wrap_pi(r.theta - th).abs());
    }
    let d = forward_diffs(1e9, 12615, 4).unwrap();
    worst = worst.max(wrap_pi(d.d1() - -5.1851).abs());
    let elapsed = start.elapsed();
    outcome(
        worst <= 5e-4 && elapsed < Duration::from_secs(1),
        format!("max deviation {worst:.1e}, {elapsed:?}"),
    )
}

fn c2_dts_series() -> Outcome {
    let expected = [(-2, -2.4230), (-1, -1.3272), (1, -5.4148), (2, -4.3170)];
    let mut worst: f64 = 0.0;
    for (dn, th) in expected {
        let v = dts_eval(1e9, 12615, dn, 4).unwrap();
        worst = worst.max(wrap_pi(v - th).abs());
    }
    outcome(worst <= 5e-4, format!("max deviation {worst:.1e}"))
}

fn c3_symmetry_frame() -> Outcome {
    let f = frame(s(0.5, 1e9)).unwrap();
    let axis = f.axis_angle().to_degrees();
    let g = gram_point(6710).unwrap();
    let (_, n_p, p) = pendant_position(g.t);
    let pass = f.n_p == 12615
        && (axis - 121.275).abs() <= 0.01
        && (g.t - 7007.18902).abs() <= 1e-4
        && n_p == 33
        && (p - 0.3950).abs() <= 5e-4;
    outcome(
        pass,
        format!(
            "nₚ {} axis {axis:.4}°, gram 6710 t {:.5} nₚ {n_p} p {p:.4}",
            f.n_p, g.t
        ),
    )
}

/// Least squares by modified Gram-Schmidt QR on the columns of the design matrix.
fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let m = rows[0].len();
    let mut q: Vec<Vec<f64>> = (0..m)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect();
    let mut r = vec![vec![0.0; m]; m];
    for j in 0..m {
        for i in 0..j {
            let d: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
            r[i][j] = d;
            let qi = q[i].clone();
            q[j].iter_mut().zip(&qi).for_each(|(x, a)| *x -= d * a);
        }
        let norm = q[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        r[j][j] = norm;
        q[j].iter_mut().for_each(|x| *x /= norm);
    }
    let qty: Vec<f64> = q
        .iter()
        .map(|c| c.iter().zip(y).map(|(a, b)| a * b).sum())
        .collect();
    let mut beta = vec![0.0; m];
    for i in (0..m).rev() {
        let tail: f64 = (i + 1..m).map(|k| r[i][k] * beta[k]).sum();
        beta[i] = (qty[i] - tail) / r[i][i];
    }
    beta
}

fn c4_center_error_orders() -> Outcome {
    let start = Instant::now();
    let zeros = refined_zeros(1100.0, 1200.0);
    let data: Vec<(f64, f64, f64, f64)> = zeros
        .par_iter()
        .map(|&a| {
            let c0 = spiral_center(s(0.5, a), 1, CenterOrder::Zero).unwrap();
            let c1 = spiral_center(s(0.5, a), 1, CenterOrder::One).unwrap();
            (
                (c0.n_k as f64).ln(),
                c0.delta_t,
                c0.center.norm().ln(),
                c1.center.norm().ln(),
            )
        })
        .collect();
    let mean_ln_n = data.iter().map(|d| d.0).sum::<f64>() / data.len() as f64;
    let rows: Vec<Vec<f64>> = data
        .iter()
        .map(|&(ln_n, dt, _, _)| {
            let x = dt / PI - 0.5;
            vec![1.0, ln_n - mean_ln_n, x, x * x, x.powi(3), x.powi(4)]
        })
        .collect();
    let y0: Vec<f64> = data.iter().map(|d| d.2).collect();
    let y1: Vec<f64> = data.iter().map(|d| d.3).collect();
    let slope0 = least_squares(&rows, &y0)[1];
    let slope1 = least_squares(&rows, &y1)[1];
    let elapsed = start.elapsed();
    outcome(
        (slope0 + 1.5).abs() <= 0.3
            && (slope1 + 2.5).abs() <= 0.3
            && elapsed < Duration::from_secs(30),
        format!(
            "{} zeros, slopes {slope0:.2} / {slope1:.2}, {elapsed:?}",
            zeros.len()
        ),
    )
}

fn c5_zero_counting() -> Outcome {
    let a = scan_zeros(1100.0, 1200.0, 0.05).unwrap().len();
    let b = scan_zeros(10.0, 1200.0, 0.05).unwrap().len();
    let est = zero_count_estimate(1200.0, 100.0).unwrap();
    outcome(
        a == 82 && b == 813 && (est - 82.0).abs() <= 2.0,
        format!("(1100,1200): {a}, (10,1200): {b}, estimate {est:.2}"),
    )
}

fn c6_lehmer_pair() -> Outcome {
    let g7 = gram_point(6707).unwrap().t;
    let g8 = gram_point(6708).unwrap().t;
    let z = scan_zeros(g7, g8, 0.05).unwrap();
    let gap = if z.len() == 2 {
        z[1].alpha - z[0].alpha
    } else {
        f64::NAN
    };
    let local = mean_gap(0.5 * (g7 + g8));
    outcome(
        z.len() == 2 && gap < 0.1 * local,
        format!("{} zeros, gap {gap:.4} vs mean gap {local:.4}", z.len()),
    )
}

fn c7_riemann_siegel_first_order() -> Outcome {
    let lo = TAU * 108.0 * 108.0;
    let hi = TAU * 109.0 * 109.0;
    let all = scan_zeros_with(lo, hi, 0.05, false).unwrap();
    let sample: Vec<f64> = all.iter().step_by(8).map(|z| z.alpha).collect();
    let stats: Vec<(f64, f64)> = sample
        .par_iter()
        .map(|&a| {
            let alpha = polish_zero(a).unwrap();
            let (_, n_p, p) = pendant_position(alpha);
            let with_r = z_function(alpha).unwrap();
            let omitted = z_main(alpha).unwrap();
            (with_r.abs(), omitted + rs_remainder(n_p, p).unwrap())
        })
        .collect();
    let worst = stats.iter().map(|s| s.0).fold(0.0, f64::max);
    let rms = (stats.iter().map(|s| s.1 * s.1).sum::<f64>() / stats.len() as f64).sqrt();
    outcome(
        stats.len() >= 200 && worst <= 5e-3 && rms <= 5e-4,
        format!(
            "{} zeros, max |Z| {worst:.1e}, curve RMS {rms:.1e}",
            stats.len()
        ),
    )
}

fn c8_functional_equation() -> Outcome {
    let mut worst = (0.0, 0.0, 0.0);
    for sigma in [0.3, 0.5, 0.7] {
        for t in [100.586, 549.4975, 7007.189] {
            let r = functional_eq_residual(s(sigma, t)).unwrap();
            if r > worst.0 {
                worst = (r, sigma, t);
            }
        }
    }
    outcome(
        worst.0 <= 1e-3,
        format!(
            "max residual {:.1e} at σ = {}, t = {}",
            worst.0, worst.1, worst.2
        ),
    )
}

fn c9_conjugate_ratios() -> Outcome {
    let half = s(0.5, 1e5);
    let f = frame(half).unwrap();
    let q = conjugate_ratio_experiment(half, 10).unwrap();
    let amp = q
        .iter()
        .map(|qk| ((qk / f.q_asym).norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let phase = q
        .iter()
        .map(|qk| ratio_phase_defect(*qk, &f).abs())
        .fold(0.0, f64::max);

    let off = s(0.45, 1e5);
    let f45 = frame(off).unwrap();
    let target = f45.x_p.powf(0.1);
    let q45 = conjugate_ratio_experiment(off, 10).unwrap();
    let amp45 = q45
        .iter()
        .map(|qk| (qk.norm() / target - 1.0).abs())
        .fold(0.0, f64::max);
    let phase45 = q45
        .iter()
        .map(|qk| ratio_phase_defect(*qk, &f45).abs())
        .fold(0.0, f64::max);
    outcome(
        amp <= 1e-3 && amp45 <= 1e-3 && phase.max(phase45) <= 1e-3,
        format!(
            "σ=1/2 amplitude {amp:.1e}, σ=0.45 relative {amp45:.1e}, phase {:.1e}",
            phase.max(phase45)
        ),
    )
}

fn c10_classical_values() -> Outcome {
    let z2 = zeta_em_auto(s(2.0, 0.0)).unwrap().value;
    let z4 = zeta_em_auto(s(4.0, 0.0)).unwrap().value;
    let e2 = (z2 - PI * PI / 6.0).norm();
    let e4 = (z4 - PI.powi(4) / 90.0).norm();
    let prod = euler_product(s(2.0, 0.0), 100_000).unwrap();
    let bound = euler_tail_bound(2.0, 100_000) * z2.norm();
    let ep = (prod - z2).norm();
    outcome(
        e2 <= 1e-10 && e4 <= 1e-10 && ep <= bound,
        format!("ζ(2) {e2:.1e}, ζ(4) {e4:.1e}, Euler product {ep:.1e} ≤ {bound:.1e}"),
    )
}

fn c11_landau() -> Outcome {
    let zeros = refined_zeros(10.0, 1200.0);
    let t_max = 1200.0;
    let table = ensemble_real_sum(&zeros, t_max, 30).unwrap();
    let mut prime_worst: f64 = 0.0;
    let mut other_worst: f64 = 0.0;
    for row in &table.rows {
        match prime_power_base(row.n) {
            Some(p) if p == row.n => {
                let e = expected_prime_change(t_max, p);
                prime_worst = prime_worst.max((row.cos_sum / e - 1.0).abs());
            }
            None if row.n > 1 => other_worst = other_worst.max(row.cos_sum.abs()),
            _ => {}
        }
    }
    let log_bound = t_max.ln();

    let xs: Vec<f64> = (150..=3000).map(|i| i as f64 * 0.01).collect();
    let fs = landau_cosine_sum(&xs, &zeros[..20]).unwrap();
    let minima = local_minima(&xs, &fs);
    let primes = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0];
    let near = |x0: f64| {
        minima
            .iter()
            .filter(|m| (m.x - x0).abs() <= 0.2)
            .min_by(|a, b| a.value.total_cmp(&b.value))
            .copied()
    };
    let prime_minima: Vec<_> = primes.iter().filter_map(|&p| near(p)).collect();
    let mean_depth =
        prime_minima.iter().map(|m| m.depth).sum::<f64>() / prime_minima.len().max(1) as f64;
    let ratio = near(8.0).map(|m| m.depth / mean_depth).unwrap_or(f64::NAN);
    outcome(
        zeros.len() == 813
            && prime_worst <= 0.25
            && other_worst <= log_bound
            && prime_minima.len() == primes.len()
            && (ratio - 1.0 / 3.0).abs() <= 0.15,
        format!(
            "{} zeros; prime steps within {:.0}%; other |Δ| ≤ {other_worst:.2} (ln T {log_bound:.2}); \
             prime minima {}/{}; x=8 depth ratio {ratio:.2}",
            zeros.len(),
            100.0 * prime_worst,
            prime_minima.len(),
            primes.len()
        ),
    )
}

fn c12_bound() -> Outcome {
    let b = p_bound(s(0.5, 7007.18902)).unwrap();
    outcome(
        (b - 10.1).abs() <= 0.05,
        format!("Σ n^(-1/2) up to nₚ = {b:.4}"),
    )
}

fn c13_generalized() -> Outcome {
    let w = Complex64::from_polar(1.0, PI / 3.0);
    let one = Complex64::new(1.0, 0.0);
    let expected: [[Complex64; 6]; 6] = [
        [one, one, one, one, one, one],
        [one, one, -one, one, -one, -one],
        [one, w * w, w, -w, -w * w, -one],
        [one, w * w, -w, -w, w * w, one],
        [one, -w, w * w, w * w, -w, one],
        [one, -w, -w * w, w * w, w, -one],
    ];
    let chars = characters(7).unwrap();
    let table_ok = chars.len() == 6
        && expected.iter().all(|row| {
            chars
                .iter()
                .any(|c| (1..=6).all(|n| (c.eval(n) - row[n as usize - 1]).norm() < 1e-12))
        });
    let mut orth: f64 = 0.0;
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let dot: Complex64 = (0..7).map(|n| a.eval(n) * b.eval(n).conj()).sum();
            let want = if i == j { 6.0 } else { 0.0 };
            orth = orth.max((dot - want).norm());
        }
    }
    let sp = s(2.0, 10.0);
    let h = hurwitz(sp, 0.5).unwrap();
    let z = zeta_em_auto(sp).unwrap().value;
    let two_s = Complex64::new(2.0, 0.0).powc(sp.to_complex());
    let he = (h - (two_s - 1.0) * z).norm();
    let chi4 = characters(4)
        .unwrap()
        .into_iter()
        .find(|c| !c.principal)
        .unwrap();
    let l = l_function(s(1.0, 0.0), &chi4).unwrap();
    let le = (l - PI / 4.0).norm();
    outcome(
        table_ok && orth <= 1e-12 && he <= 1e-6 && le <= 1e-4,
        format!("k=7 table {table_ok}, orthogonality {orth:.1e}, Hurwitz {he:.1e}, L(1) {le:.1e}"),
    )
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 13] = [
        ("table-1 angles", c1_table_one),
        ("DTS series column", c2_dts_series),
        ("symmetry frame", c3_symmetry_frame),
        ("spiral-center error orders", c4_center_error_orders),
        ("zero counting", c5_zero_counting),
        ("Lehmer pair", c6_lehmer_pair),
        ("Riemann-Siegel first order", c7_riemann_siegel_first_order),
        ("functional equation", c8_functional_equation),
        ("conjugate ratios", c9_conjugate_ratios),
        ("classical values", c10_classical_values),
        ("Landau suite", c11_landau),
        ("P(s) bound", c12_bound),
        ("generalized functions", c13_generalized),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = match (o.pass, KNOWN_RED.contains(&id)) {
            (false, true) => " (known divergence)",
            (true, true) => " (listed as known divergence, now passing)",
            (false, false) => {
                unexpected += 1;
                ""
            }
            _ => "",
        };
        println!("{tag} {id:>2} {name}: {}{note}", o.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

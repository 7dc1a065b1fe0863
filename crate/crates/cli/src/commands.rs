use crate::args::*;
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::{emit, num, Table};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};
use zeta_geometry::arith::{characters, ensemble_real_sum, hurwitz, l_function, landau_cosine_sum};
use zeta_geometry::symmetry::CenterOrder;
use zeta_geometry::symmetry::{pendant_center, PendantMethod};
use zeta_geometry::zeros::{
    gram_point, ingest_zeros, lehmer_pairs, scan_zeros, scan_zeros_with, ZeroRecord,
};
use zeta_geometry::zeta::{
    riemann_siegel, zeta_direct, zeta_em_auto, zeta_geometric, zeta_geometric_order, ZetaValue,
};
use zeta_geometry::{Complex64, SParam};

#[derive(Serialize)]
struct EvalOut {
    sigma: f64,
    t: f64,
    re: f64,
    im: f64,
    method: &'static str,
    est_error: f64,
}

#[derive(Serialize)]
struct HurwitzOut {
    sigma: f64,
    t: f64,
    a: f64,
    re: f64,
    im: f64,
}

fn json_line<T: Serialize>(v: &T) -> CliResult<Vec<u8>> {
    let mut out = serde_json::to_vec(v).map_err(|e| CliError::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub fn evaluate(s: SParam, method: MethodArg, cfg: &Config) -> CliResult<ZetaValue> {
    Ok(match method {
        MethodArg::Auto => zeta_geometric(s)?,
        MethodArg::Geometric => zeta_geometric_order(s, CenterOrder::One)?,
        MethodArg::EulerMaclaurin => zeta_em_auto(s)?,
        MethodArg::RiemannSiegel => riemann_siegel(s)?,
        MethodArg::Direct => {
            if s.sigma <= 1.0 {
                return Err(CliError::Domain(format!(
                    "the direct sum diverges for σ = {} ≤ 1",
                    s.sigma
                )));
            }
            // smallest N with tail bound N^{1−σ}/(σ−1) ≤ 1e-12, within the step budget
            let needed = (1e-12 * (s.sigma - 1.0)).powf(1.0 / (1.0 - s.sigma));
            let n = needed.ceil().clamp(1.0, cfg.max_steps as f64) as u64;
            zeta_direct(s, n)?
        }
    })
}

pub fn eval(a: &EvalArgs, cfg: &Config) -> CliResult<()> {
    let s = SParam::new(a.sigma, a.t)?;
    let v = evaluate(s, a.method, cfg)?;
    emit(
        None,
        &json_line(&EvalOut {
            sigma: s.sigma,
            t: s.t,
            re: v.value.re,
            im: v.value.im,
            method: v.method.name(),
            est_error: v.est_error,
        })?,
    )
}

pub fn zero_table(zeros: &[ZeroRecord]) -> Table {
    let mut t = Table::new(&["index", "alpha", "gram_lo", "gram_hi", "source"]);
    for z in zeros {
        let (lo, hi) = match z.gram_bracket {
            Some((lo, hi)) => (lo.to_string(), hi.to_string()),
            None => (String::new(), String::new()),
        };
        t.push(vec![
            z.index.to_string(),
            num(z.alpha),
            lo,
            hi,
            z.source.name().into(),
        ]);
    }
    t
}

pub fn scan(a: &ScanArgs, cfg: &Config) -> CliResult<()> {
    let step = a.step.unwrap_or(cfg.grid_step);
    let zeros = scan_zeros_with(a.lo, a.hi, step, !a.rough)?;
    let zeros = if a.lehmer {
        let mut out: Vec<ZeroRecord> = Vec::new();
        for (x, y) in lehmer_pairs(&zeros, cfg.lehmer_fraction) {
            for z in [x, y] {
                if out.last().is_none_or(|l| l.index != z.index) {
                    out.push(z);
                }
            }
        }
        out
    } else {
        zeros
    };
    emit(a.out.as_deref(), &zero_table(&zeros).to_csv()?)
}

pub fn gram(a: &GramArgs) -> CliResult<()> {
    let (lo, hi) = match (a.n, a.from, a.to) {
        (Some(n), _, _) => (n, n),
        (None, Some(f), Some(t)) if f <= t => (f, t),
        (None, Some(_), Some(_)) => {
            return Err(CliError::Usage("--from must not exceed --to".into()))
        }
        _ => return Err(CliError::Usage("give --n or --from and --to".into())),
    };
    let mut t = Table::new(&["n", "t"]);
    for n in lo..=hi {
        t.push(vec![n.to_string(), num(gram_point(n)?.t)]);
    }
    emit(a.out.as_deref(), &t.to_csv()?)
}

/// Zeros below `t_max`, from a file or a scan starting at t = 10.
fn zeros_below(t_max: f64, file: Option<&std::path::Path>, cfg: &Config) -> CliResult<Vec<f64>> {
    let all: Vec<f64> = match file {
        Some(p) => ingest_zeros(p)?.into_iter().map(|z| z.alpha).collect(),
        None => scan_zeros(10.0, t_max, cfg.grid_step)?
            .into_iter()
            .map(|z| z.alpha)
            .collect(),
    };
    Ok(all.into_iter().filter(|&a| a <= t_max).collect())
}

/// The first `count` zeros above t = 10.
pub fn first_zeros(count: usize, cfg: &Config) -> CliResult<Vec<f64>> {
    let mut hi = 100.0;
    loop {
        let z = scan_zeros(10.0, hi, cfg.grid_step)?;
        if z.len() >= count {
            return Ok(z.into_iter().take(count).map(|z| z.alpha).collect());
        }
        hi *= 2.0;
    }
}

pub fn landau(a: &LandauArgs, cfg: &Config) -> CliResult<()> {
    let table = if a.cosine {
        if !(a.dx > 0.0) || !(a.x_max > 1.0) {
            return Err(CliError::Usage("need dx > 0 and x_max > 1".into()));
        }
        let zeros = match &a.zeros_file {
            Some(p) => ingest_zeros(p)?
                .into_iter()
                .take(a.count)
                .map(|z| z.alpha)
                .collect(),
            None => first_zeros(a.count, cfg)?,
        };
        let m = ((a.x_max - 1.0) / a.dx).floor() as usize;
        let xs: Vec<f64> = (1..=m).map(|i| 1.0 + a.dx * i as f64).collect();
        let fs = landau_cosine_sum(&xs, &zeros)?;
        let mut t = Table::new(&["x", "f"]);
        for (x, f) in xs.iter().zip(fs) {
            t.push(vec![num(*x), num(f)]);
        }
        t
    } else {
        let zeros = zeros_below(a.t_max, a.zeros_file.as_deref(), cfg)?;
        let lt = ensemble_real_sum(&zeros, a.t_max, a.n_max)?;
        let mut t = Table::new(&["n", "change", "cos_sum", "cumulative", "prime_power"]);
        for r in lt.rows {
            t.push(vec![
                r.n.to_string(),
                num(r.change),
                num(r.cos_sum),
                num(r.cumulative),
                (r.is_prime_power as u8).to_string(),
            ]);
        }
        t
    };
    emit(a.out.as_deref(), &table.to_csv()?)
}

/// Rows (σ, t, P, ζ) over an nσ × nt grid, σ varying fastest.
pub fn surface_grid(
    sigma: (f64, f64),
    t: (f64, f64),
    nsigma: usize,
    nt: usize,
    cfg: &Config,
) -> CliResult<Vec<(f64, f64, Complex64, Complex64)>> {
    if nsigma < 2 || nt < 2 {
        return Err(CliError::Usage(
            "surface grids need at least 2 points per axis".into(),
        ));
    }
    if (nsigma * nt) as u64 > cfg.max_points {
        return Err(CliError::Usage(format!(
            "{} grid points exceed max_points = {}",
            nsigma * nt,
            cfg.max_points
        )));
    }
    if t.0 < 10.0 {
        return Err(CliError::Domain(format!(
            "surface grids need t ≥ 10, got {}",
            t.0
        )));
    }
    let pts: Vec<(f64, f64)> = (0..nt)
        .flat_map(|j| {
            let tj = t.0 + (t.1 - t.0) * j as f64 / (nt - 1) as f64;
            (0..nsigma).map(move |i| {
                (
                    sigma.0 + (sigma.1 - sigma.0) * i as f64 / (nsigma - 1) as f64,
                    tj,
                )
            })
        })
        .collect();
    pts.par_iter()
        .map(|&(sg, tj)| {
            let s = SParam::new(sg, tj)?;
            let p = pendant_center(s, PendantMethod::FirstOrder)?.value;
            let z = zeta_geometric(s)?.value;
            Ok((sg, tj, p, z))
        })
        .collect()
}

pub fn surface_table(rows: &[(f64, f64, Complex64, Complex64)]) -> Table {
    let mut t = Table::new(&["sigma", "t", "re_p", "im_p", "re_zeta", "im_zeta"]);
    for (s, tt, p, z) in rows {
        t.push(vec![
            num(*s),
            num(*tt),
            num(p.re),
            num(p.im),
            num(z.re),
            num(z.im),
        ]);
    }
    t
}

pub fn surface(a: &SurfaceArgs, cfg: &Config) -> CliResult<()> {
    let rows = surface_grid(a.sigma, a.t, a.nsigma, a.nt, cfg)?;
    emit(a.out.as_deref(), &surface_table(&rows).to_csv()?)
}

pub fn hurwitz_cmd(a: &HurwitzArgs) -> CliResult<()> {
    let s = SParam::new(a.sigma, a.t)?;
    let v = hurwitz(s, a.a)?;
    emit(
        None,
        &json_line(&HurwitzOut {
            sigma: s.sigma,
            t: s.t,
            a: a.a,
            re: v.re,
            im: v.im,
        })?,
    )
}

pub fn lfunction(a: &LfunctionArgs) -> CliResult<()> {
    let s = SParam::new(a.sigma, a.t)?;
    let chars = characters(a.k)?;
    let mut t = Table::new(&["character", "exponents", "principal", "real", "re", "im"]);
    for (i, chi) in chars.iter().enumerate() {
        let v = l_function(s, chi)?;
        let exps: Vec<String> = chi.exponents.iter().map(|e| e.to_string()).collect();
        t.push(vec![
            i.to_string(),
            exps.join(" "),
            (chi.principal as u8).to_string(),
            (chi.is_real() as u8).to_string(),
            num(v.re),
            num(v.im),
        ]);
    }
    emit(a.out.as_deref(), &t.to_csv()?)
}

pub fn ingest(a: &IngestArgs) -> CliResult<()> {
    let zeros = ingest_zeros(&a.file)?;
    eprintln!("{} zeros read from {}", zeros.len(), a.file.display());
    emit(a.out.as_deref(), &zero_table(&zeros).to_csv()?)
}

/// Default last step of an Argand render: one past the series end floor(t/π).
pub fn default_n_max(t: f64) -> u64 {
    (t / PI).floor() as u64 + 1
}

pub fn gram_span(from: u64, to: u64) -> CliResult<(f64, f64)> {
    if from >= to {
        return Err(CliError::Usage(
            "--gram-from must be below --gram-to".into(),
        ));
    }
    let a = gram_point(from)?.t;
    let b = gram_point(to)?.t;
    if a < TAU {
        return Err(CliError::Domain("limaçon needs t ≥ 2π".into()));
    }
    Ok((a, b))
}

//! SVG renderings. Each kind can also write the plotted vertex data as CSV, which is
//! what tests inspect.

use crate::args::{RenderArgs, RenderKind};
use crate::commands::{default_n_max, first_zeros, gram_span, surface_grid, surface_table};
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::{num, write_atomic, Table};
use crate::svg::{bounds, Frame, Svg};
use rayon::prelude::*;
use zeta_geometry::argand::dump_steps;
use zeta_geometry::arith::{landau_cosine_sum, local_minima};
use zeta_geometry::symmetry::{pendant_center, spiral_center, CenterOrder, PendantMethod};
use zeta_geometry::zeros::{gram_point, scan_zeros};
use zeta_geometry::zeta::riemann_siegel;
use zeta_geometry::SParam;

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {kind}")))
}

/// Stride keeping an Argand polyline over steps lo..=lo+span within `max_points`
/// vertices: the start point, floor(span/stride)+1 strided steps and an off-stride end.
pub fn stride_for(span: u64, max_points: u64) -> u64 {
    span.div_ceil(max_points.saturating_sub(3).max(1)).max(1)
}

pub fn polyline_len(span: u64, stride: u64) -> u64 {
    span / stride + 2 + u64::from(!span.is_multiple_of(stride))
}

struct Output {
    svg: String,
    vertices: Table,
}

fn argand(a: &RenderArgs, cfg: &Config) -> CliResult<Output> {
    let t = need(a.t, "t", "argand")?;
    let s = SParam::new(a.sigma, t)?;
    let lo = a.n_min.unwrap_or(1).max(1);
    let hi = a.n_max.unwrap_or_else(|| default_n_max(t));
    if hi < lo {
        return Err(CliError::Usage(format!("empty step range [{lo}, {hi}]")));
    }
    if hi > cfg.max_steps {
        return Err(CliError::Domain(format!(
            "step {hi} exceeds the step budget {}; narrow the range or raise max_steps",
            cfg.max_steps
        )));
    }
    let stride = stride_for(hi - lo, cfg.max_points);
    let stream = dump_steps(s, lo, hi, stride)?;
    let start = stream.records[0].cumulative - stream.records[0].step;
    let mut pts = vec![(start.re, start.im)];
    let mut vt = Table::new(&["n", "re", "im", "theta", "length"]);
    vt.push(vec![
        (lo - 1).to_string(),
        num(start.re),
        num(start.im),
        String::new(),
        String::new(),
    ]);
    for r in &stream.records {
        pts.push((r.cumulative.re, r.cumulative.im));
        vt.push(vec![
            r.n.to_string(),
            num(r.cumulative.re),
            num(r.cumulative.im),
            num(r.theta.theta),
            num(r.length),
        ]);
    }
    let frame = Frame::fit(pts.iter().copied(), cfg.width, cfg.height, true);
    let (xr, yr) = bounds(&pts);
    let mut svg = Svg::new(cfg.width, cfg.height);
    svg.title(&format!(
        "Σ n^-s, s = {} + {}i, n = {lo}..{hi}, stride {stride}",
        s.sigma, s.t
    ));
    svg.axes(&frame, xr, yr);
    svg.polyline(&frame, "path", &pts, "#1f4e99", None);
    if let Some(&last) = pts.last() {
        svg.marker(&frame, "end", last, 3.0, "#c0392b");
    }
    Ok(Output {
        svg: svg.finish(),
        vertices: vt,
    })
}

fn limacon(a: &RenderArgs, cfg: &Config) -> CliResult<Output> {
    let from = need(a.gram_from, "gram-from", "limacon")?;
    let to = need(a.gram_to, "gram-to", "limacon")?;
    let (t0, t1) = gram_span(from, to)?;
    let m = a.samples.unwrap_or(400).max(2);
    if m as u64 > cfg.max_points {
        return Err(CliError::Usage(format!("{m} samples exceed max_points")));
    }
    let grams: Vec<(u64, f64)> = (from..=to)
        .map(|n| Ok((n, gram_point(n)?.t)))
        .collect::<CliResult<_>>()?;
    let mut ts: Vec<(f64, Option<u64>)> = (0..m)
        .map(|i| (t0 + (t1 - t0) * i as f64 / (m - 1) as f64, None))
        .filter(|(t, _)| !grams.iter().any(|g| g.1 == *t))
        .collect();
    ts.extend(grams.iter().map(|&(n, t)| (t, Some(n))));
    ts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let rows = ts
        .par_iter()
        .map(|&(t, g)| {
            let s = SParam::new(a.sigma, t)?;
            let p = pendant_center(s, PendantMethod::FirstOrder)?.value;
            let z = riemann_siegel(s)?.value;
            Ok((t, g, p, z))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut vt = Table::new(&["t", "gram", "re_p", "im_p", "re_zeta", "im_zeta"]);
    for (t, g, p, z) in &rows {
        vt.push(vec![
            num(*t),
            g.map(|n| n.to_string()).unwrap_or_default(),
            num(p.re),
            num(p.im),
            num(z.re),
            num(z.im),
        ]);
    }
    let pp: Vec<(f64, f64)> = rows.iter().map(|r| (r.2.re, r.2.im)).collect();
    let zz: Vec<(f64, f64)> = rows.iter().map(|r| (r.3.re, r.3.im)).collect();
    let all: Vec<(f64, f64)> = pp.iter().chain(&zz).copied().chain([(0.0, 0.0)]).collect();
    let frame = Frame::fit(all.iter().copied(), cfg.width, cfg.height, true);
    let (xr, yr) = bounds(&all);
    let mut svg = Svg::new(cfg.width, cfg.height);
    svg.title(&format!("P(s) and ζ(s), Gram {from}..{to}"));
    svg.axes(&frame, xr, yr);
    svg.polyline(&frame, "pendant", &pp, "#7f8c8d", Some("4 3"));
    svg.polyline(&frame, "zeta", &zz, "#1f4e99", None);
    for (_, g, p, z) in &rows {
        if g.is_some() {
            svg.segment(&frame, "gram-radius", (p.re, p.im), (z.re, z.im), "#c0392b");
        }
    }
    Ok(Output {
        svg: svg.finish(),
        vertices: vt,
    })
}

fn error_scatter(a: &RenderArgs, cfg: &Config) -> CliResult<Output> {
    let lo = need(a.lo, "lo", "error-scatter")?;
    let hi = need(a.hi, "hi", "error-scatter")?;
    let zeros = scan_zeros(lo, hi, cfg.grid_step)?;
    let rows = zeros
        .par_iter()
        .map(|z| {
            let s = SParam::new(0.5, z.alpha)?;
            let c0 = spiral_center(s, 1, CenterOrder::Zero)?;
            let c1 = spiral_center(s, 1, CenterOrder::One)?;
            Ok((z.alpha, c0.n_k, c0.center.norm(), c1.center.norm()))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut vt = Table::new(&["alpha", "n", "err0", "err1"]);
    for (al, n, e0, e1) in &rows {
        vt.push(vec![num(*al), n.to_string(), num(*e0), num(*e1)]);
    }
    let p0: Vec<(f64, f64)> = rows.iter().map(|r| (r.0, r.2.log10())).collect();
    let p1: Vec<(f64, f64)> = rows.iter().map(|r| (r.0, r.3.log10())).collect();
    let frame = Frame::fit(p0.iter().chain(&p1).copied(), cfg.width, cfg.height, false);
    let mut svg = Svg::new(cfg.width, cfg.height);
    svg.title(&format!(
        "log10 |center| at {} zeros in ({lo}, {hi}): order 0 (red), order 1 (blue)",
        rows.len()
    ));
    for &p in &p0 {
        svg.marker(&frame, "order0", p, 2.0, "#c0392b");
    }
    for &p in &p1 {
        svg.marker(&frame, "order1", p, 2.0, "#1f4e99");
    }
    Ok(Output {
        svg: svg.finish(),
        vertices: vt,
    })
}

fn quadrant_colour(re: f64, im: f64) -> &'static str {
    match (re >= 0.0, im >= 0.0) {
        (true, true) => "#f6d7a7",
        (false, true) => "#a7d3f6",
        (false, false) => "#c9a7f6",
        (true, false) => "#a7f6c0",
    }
}

fn surface_render(a: &RenderArgs, cfg: &Config) -> CliResult<Output> {
    let sr = a.sigma_range.unwrap_or((0.0, 1.0));
    let tr = need(a.t_range, "t-range", "surface")?;
    let n = a.samples.unwrap_or(41);
    let rows = surface_grid(sr, tr, n, n, cfg)?;
    let (ds, dt) = (
        (sr.1 - sr.0) / (n - 1) as f64,
        (tr.1 - tr.0) / (n - 1) as f64,
    );
    let frame = Frame::fit(
        [
            (sr.0 - ds / 2.0, tr.0 - dt / 2.0),
            (sr.1 + ds / 2.0, tr.1 + dt / 2.0),
        ],
        cfg.width,
        cfg.height,
        false,
    );
    let mut svg = Svg::new(cfg.width, cfg.height);
    svg.title(&format!(
        "sign quadrant of ζ(σ+it), σ ∈ [{}, {}], t ∈ [{}, {}]",
        sr.0, sr.1, tr.0, tr.1
    ));
    for (s, t, _, z) in &rows {
        svg.cell(
            &frame,
            (s - ds / 2.0, t - dt / 2.0),
            (s + ds / 2.0, t + dt / 2.0),
            quadrant_colour(z.re, z.im),
        );
    }
    Ok(Output {
        svg: svg.finish(),
        vertices: surface_table(&rows),
    })
}

fn landau_render(a: &RenderArgs, cfg: &Config) -> CliResult<Output> {
    let lo = a.lo.unwrap_or(1.5);
    let hi = a.hi.unwrap_or(30.0);
    if !(lo > 1.0 && hi > lo) {
        return Err(CliError::Usage("landau needs 1 < lo < hi".into()));
    }
    let m = a
        .samples
        .unwrap_or(((hi - lo) / 0.01).round() as usize + 1)
        .max(3);
    if m as u64 > cfg.max_points {
        return Err(CliError::Usage(format!("{m} samples exceed max_points")));
    }
    let zeros = first_zeros(a.zeros, cfg)?;
    let xs: Vec<f64> = (0..m)
        .map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64)
        .collect();
    let fs = landau_cosine_sum(&xs, &zeros)?;
    let pts: Vec<(f64, f64)> = xs.iter().copied().zip(fs.iter().copied()).collect();
    let mut vt = Table::new(&["x", "f"]);
    for &(x, f) in &pts {
        vt.push(vec![num(x), num(f)]);
    }
    let frame = Frame::fit(pts.iter().copied(), cfg.width, cfg.height, false);
    let mut svg = Svg::new(cfg.width, cfg.height);
    svg.title(&format!(
        "Σ cos(α ln x)/(√x ln x) over {} zeros",
        zeros.len()
    ));
    svg.polyline(&frame, "cosine", &pts, "#1f4e99", None);
    for mn in local_minima(&xs, &fs) {
        svg.marker(&frame, "minimum", (mn.x, mn.value), 2.5, "#c0392b");
    }
    Ok(Output {
        svg: svg.finish(),
        vertices: vt,
    })
}

pub fn render(a: &RenderArgs, cfg: &Config) -> CliResult<()> {
    let mut cfg = cfg.clone();
    if let Some(v) = a.max_points {
        cfg.max_points = v.max(4);
    }
    if let Some(v) = a.max_steps {
        cfg.max_steps = v;
    }
    if let Some(v) = a.width {
        cfg.width = v.max(1);
    }
    if let Some(v) = a.height {
        cfg.height = v.max(1);
    }
    let out = match a.kind {
        RenderKind::Argand => argand(a, &cfg)?,
        RenderKind::Limacon => limacon(a, &cfg)?,
        RenderKind::ErrorScatter => error_scatter(a, &cfg)?,
        RenderKind::Surface => surface_render(a, &cfg)?,
        RenderKind::Landau => landau_render(a, &cfg)?,
    };
    write_atomic(&a.out, out.svg.as_bytes())?;
    if let Some(p) = &a.vertices {
        write_atomic(p, &out.vertices.to_csv()?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stride_respects_budget() {
        assert_eq!(stride_for(59, 1_000_000), 1);
        for (span, max) in [
            (3_183_098_861, 1_000_000),
            (10, 4),
            (7, 5),
            (999, 101),
            (59, 61),
        ] {
            let s = stride_for(span, max);
            assert!(polyline_len(span, s) <= max, "{span} {max} {s}");
        }
    }
}

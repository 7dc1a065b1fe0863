use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "zgeom",
    version,
    about = "Geometric evaluation of the Riemann zeta function"
)]
pub struct Cli {
    /// key = value configuration file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (overrides ZGEOM_THREADS and the config file).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate ζ(σ+it) and print JSON.
    Eval(EvalArgs),
    /// Scan the critical line for zeros; CSV.
    Scan(ScanArgs),
    /// Gram points; CSV.
    Gram(GramArgs),
    /// Render an SVG diagram.
    Render(RenderArgs),
    /// Landau ensemble table or cosine sum; CSV.
    Landau(LandauArgs),
    /// P(s) and ζ(s) on a rectangular (σ, t) grid; CSV.
    Surface(SurfaceArgs),
    /// Hurwitz ζ(s, a); JSON.
    Hurwitz(HurwitzArgs),
    /// Dirichlet L(s, χ) for every character mod k; CSV.
    Lfunction(LfunctionArgs),
    /// Validate a zero file (one ordinate per line) and emit it as CSV.
    Ingest(IngestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Geometric,
    #[value(alias = "em")]
    EulerMaclaurin,
    #[value(alias = "rs")]
    RiemannSiegel,
    Direct,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
    /// Grid spacing (default from config, 0.05).
    #[arg(long)]
    pub step: Option<f64>,
    /// Keep the first-order Riemann–Siegel roots without Euler–Maclaurin polishing.
    #[arg(long)]
    pub rough: bool,
    /// Emit only close pairs (gap below lehmer_fraction × mean gap).
    #[arg(long)]
    pub lehmer: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    #[arg(long, conflicts_with_all = ["from", "to"])]
    pub n: Option<u64>,
    #[arg(long, requires = "to")]
    pub from: Option<u64>,
    #[arg(long, requires = "from")]
    pub to: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderKind {
    Argand,
    Limacon,
    ErrorScatter,
    Surface,
    Landau,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, value_enum)]
    pub kind: RenderKind,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the plotted vertex data as CSV.
    #[arg(long)]
    pub vertices: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub sigma: f64,
    /// argand: the ordinate t.
    #[arg(long)]
    pub t: Option<f64>,
    /// argand: first and last step (default 1 and floor(t/π)+1).
    #[arg(long)]
    pub n_min: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    /// limacon: Gram point range.
    #[arg(long)]
    pub gram_from: Option<u64>,
    #[arg(long)]
    pub gram_to: Option<u64>,
    /// error-scatter: zero range; landau: x range upper end.
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    /// surface: σ and t ranges as a..b.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub sigma_range: Option<(f64, f64)>,
    #[arg(long, value_parser = parse_range)]
    pub t_range: Option<(f64, f64)>,
    /// Samples along the curve (limacon 400, landau every 0.01) or per grid axis (surface 41).
    #[arg(long)]
    pub samples: Option<usize>,
    /// landau: number of zeros in the cosine sum.
    #[arg(long, default_value_t = 20)]
    pub zeros: usize,
    #[arg(long)]
    pub max_points: Option<u64>,
    #[arg(long)]
    pub max_steps: Option<u64>,
    #[arg(long)]
    pub width: Option<u32>,
    #[arg(long)]
    pub height: Option<u32>,
}

#[derive(Debug, Args)]
pub struct LandauArgs {
    /// Use zeros below T (scanned unless --zeros-file is given).
    #[arg(long, default_value_t = 1200.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 30)]
    pub n_max: u64,
    #[arg(long)]
    pub zeros_file: Option<PathBuf>,
    /// Emit f(x) = Σ cos(α ln x)/(√x ln x) over the first --count zeros instead.
    #[arg(long)]
    pub cosine: bool,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long, default_value_t = 30.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dx: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_parser = parse_range, default_value = "0..1", allow_hyphen_values = true)]
    pub sigma: (f64, f64),
    #[arg(long, value_parser = parse_range)]
    pub t: (f64, f64),
    #[arg(long, default_value_t = 21)]
    pub nsigma: usize,
    #[arg(long, default_value_t = 101)]
    pub nt: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HurwitzArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub a: f64,
}

#[derive(Debug, Args)]
pub struct LfunctionArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// "a..b" with a < b.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: f64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound in {s:?}"))?;
    let b: f64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound in {s:?}"))?;
    if !(a < b) {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..1"), Ok((0.0, 1.0)));
        assert_eq!(parse_range("-0.5..1.5"), Ok((-0.5, 1.5)));
        assert!(parse_range("2..1").is_err());
        assert!(parse_range("1-2").is_err());
    }

    #[test]
    fn cli_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

//! `pansu`: runs the word-metric and limit-metric experiments from the shell.
//!
//! Exit codes: 0 on success, 1 on I/O failure, 2 on budget or validation
//! errors (partial artifacts are still written and flagged), 64 on usage
//! errors.

mod output;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pansu_core::*;

use output::{emit_json, emit_report, write_atomic};
use render::{RenderMetric, RenderMode, RenderSpec};

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(std::io::Error),
    /// The artifact was written but is incomplete.
    Partial(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(io) => CliError::Io(io),
            other => CliError::Core(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "pansu", version, about = "Word metrics on Heisenberg lattices and their asymptotic cones")]
struct Cli {
    /// Worker threads for parallel enumeration and scans.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact d3 / dinf distances, or word distances for a generating set.
    Dist(DistArgs),
    /// Ball census as `radius,sphere,ball` CSV.
    Ball(BallArgs),
    /// Word distance from the identity by bidirectional search.
    WordDist(WordDistArgs),
    /// Geodesic plan for a point of H₃(ℝ), optionally drawn as SVG.
    Geodesic(GeodesicArgs),
    /// Correspondence distortion series and its log-log slope.
    Ghrate(GhrateArgs),
    /// Ball-volume fit against the limit-ball volume.
    Volfit(VolfitArgs),
    /// Excess of ρ_S₂ over n along γ_n = (n;0,0,n).
    Gap(GapArgs),
    /// Extreme families and almost-extreme scans.
    Extreme(ExtremeArgs),
    /// Endpoint sensitivity of developed controls.
    Gronwall(GronwallArgs),
    /// SVG sections, OBJ sphere mesh, geodesic projections.
    Render(RenderArgs),
}

/// Flags shared by every experiment.
#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random samples per configuration.
    #[arg(long)]
    samples: Option<usize>,
    /// Output file; `.json` selects JSON, anything else CSV. Stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

#[derive(Args, Debug)]
struct GensetArgs {
    /// heis, prod or z3.
    #[arg(long, default_value = "heis")]
    group: String,
    /// Builtin short name (std, s1, s2), builtin label, or a file of generators.
    #[arg(long, default_value = "std")]
    genset: String,
}

impl GensetArgs {
    fn resolve(&self) -> Result<GenSet, CliError> {
        let group = Group::parse(&self.group)?;
        let path = Path::new(&self.genset);
        if path.is_file() {
            let text = std::fs::read_to_string(path)?;
            let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            return Ok(GenSet::parse(label, group, &text, true)?);
        }
        let builtin = match (group, self.genset.to_ascii_lowercase().as_str()) {
            (Group::Heis, "std") => Builtin::HeisStd,
            (Group::ProdHeisZ, "s1") => Builtin::ProdS1,
            (Group::ProdHeisZ, "s2") => Builtin::ProdS2,
            (Group::Z3, "std") => Builtin::Z3Std,
            (_, label) => label.parse::<Builtin>()?,
        };
        if builtin.group() != group {
            return Err(Error::GroupMismatch { left: group, right: builtin.group() }.into());
        }
        Ok(builtin.genset())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistMetric {
    D3,
    Dinf,
    Word,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[arg(long, value_enum)]
    metric: DistMetric,
    /// `x,y,z` for d3 (exponential coordinates), `v,x,y,z` for dinf, integer
    /// matrix coordinates for word.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    /// Second point; the distance is then between the two.
    #[arg(long, allow_hyphen_values = true)]
    to: Option<String>,
    #[command(flatten)]
    genset: GensetArgs,
    #[arg(long, default_value_t = 256)]
    budget: u32,
}

#[derive(Args, Debug)]
struct BallArgs {
    #[command(flatten)]
    genset: GensetArgs,
    #[arg(long)]
    radius: u32,
    /// Cap on simultaneously held states.
    #[arg(long, default_value_t = EnumerateOptions::default().max_states)]
    max_states: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WordDistArgs {
    #[command(flatten)]
    genset: GensetArgs,
    /// Integer matrix coordinates, `x,y,z` or `v,x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    element: String,
    #[arg(long, default_value_t = 64)]
    budget: u32,
    /// Use the direct-factor split (ℤ × H₃ sets only).
    #[arg(long)]
    split: bool,
}

#[derive(Args, Debug)]
struct GeodesicArgs {
    /// `x,y,z` in exponential coordinates.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    /// Also draw the planar projection here.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GhrateArgs {
    #[command(flatten)]
    genset: GensetArgs,
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    ns: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VolfitArgs {
    #[command(flatten)]
    genset: GensetArgs,
    #[arg(long, default_value_t = 60)]
    radius: u32,
    /// Fit window `n0,n1`.
    #[arg(long, value_delimiter = ',', default_value = "20,60")]
    window: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GapArgs {
    #[arg(long, value_delimiter = ',', default_value = "16,25,36,64,100")]
    n: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    Midpoint,
    Abnormal,
    Control,
}

#[derive(Args, Debug)]
struct ExtremeArgs {
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// heis (4 points) or prod (6 points).
    #[arg(long, default_value = "prod")]
    group: String,
    /// Run an almost-extreme scan instead of the family check.
    #[arg(long, value_enum)]
    scan: Option<ScanKind>,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025")]
    eps: Vec<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GronwallArgs {
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long, value_enum, default_value = "d3")]
    metric: RenderMetric,
    #[arg(long, value_enum, default_value = "section")]
    mode: RenderMode,
    /// `a,b` axis pair or `axis=0`.
    #[arg(long, default_value = "y=0")]
    plane: String,
    /// Angular samples per turn.
    #[arg(long, default_value_t = 256)]
    resolution: usize,
    /// Target of geodesic mode, `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

fn parse_floats(s: &str, lens: &[usize]) -> Result<Vec<f64>, CliError> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::InvalidParameter(format!("`{s}`: {e}")))?;
    if !lens.contains(&v.len()) || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("`{s}`: expected {lens:?} finite coordinates")).into());
    }
    Ok(v)
}

fn heis_point(s: &str) -> Result<HeisPoint, CliError> {
    let c = parse_floats(s, &[3])?;
    Ok(HeisPoint::new(c[0], c[1], c[2]))
}

fn prod_point(s: &str) -> Result<ProdPoint, CliError> {
    let c = parse_floats(s, &[4])?;
    Ok(ProdPoint::new(c[0], c[1], c[2], c[3]))
}

fn lattice_element(s: &str, group: Group) -> Result<LatticeElement, CliError> {
    let c = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::InvalidParameter(format!("`{s}`: {e}")))?;
    match (group, c.as_slice()) {
        (Group::ProdHeisZ, &[v, x, y, z]) => Ok(LatticeElement::prod(v, x, y, z)),
        (Group::Heis, &[x, y, z]) => Ok(LatticeElement::heis(x, y, z)),
        (Group::Z3, &[x, y, z]) => Ok(LatticeElement::z3(x, y, z)),
        _ => Err(Error::InvalidParameter(format!("`{s}` has the wrong arity for {}", group.name())).into()),
    }
}

fn cmd_dist(a: &DistArgs) -> Result<(), CliError> {
    let value = match a.metric {
        DistMetric::D3 => {
            let p = heis_point(&a.point)?;
            let q = a.to.as_deref().map(heis_point).transpose()?;
            q.map_or(d3(p), |q| d3_between(p, q)).to_string()
        }
        DistMetric::Dinf => {
            let p = prod_point(&a.point)?;
            let q = a.to.as_deref().map(prod_point).transpose()?;
            q.map_or(dinf(p), |q| dinf_between(p, q)).to_string()
        }
        DistMetric::Word => {
            let s = a.genset.resolve()?;
            let mut g = lattice_element(&a.point, s.group())?;
            if let Some(to) = &a.to {
                g = lat_mul(&lat_inv(&g)?, &lattice_element(to, s.group())?)?;
            }
            DistanceSource::new(&s, a.budget)?.distance(&g)?.to_string()
        }
    };
    println!("{value}");
    Ok(())
}

fn cmd_ball(a: &BallArgs) -> Result<(), CliError> {
    let s = a.genset.resolve()?;
    let opts = EnumerateOptions { max_states: a.max_states, ..Default::default() };
    let outcome = enumerate_ball_partial(&s, a.radius, opts);
    let mut text = outcome.census.to_csv();
    if let Some(e) = &outcome.stopped {
        text.push_str(&format!("# partial: {e}\n"));
    }
    match &a.out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    match outcome.stopped {
        Some(e) => Err(CliError::Partial(format!("census incomplete: {e}"))),
        None => Ok(()),
    }
}

fn cmd_word_dist(a: &WordDistArgs) -> Result<(), CliError> {
    let s = a.genset.resolve()?;
    let g = lattice_element(&a.element, s.group())?;
    let d = if a.split { split_word_distance(&s, &g, a.budget)? } else { word_distance(&s, &g, a.budget)? };
    println!("{d}");
    Ok(())
}

fn cmd_geodesic(a: &GeodesicArgs) -> Result<(), CliError> {
    let p = heis_point(&a.point)?;
    let plan = synthesize_geodesic(p)?;
    if let Some(svg) = &a.svg {
        write_atomic(svg, &render::geodesic_svg(p)?)?;
    }
    emit_json(&plan, a.out.as_deref())
}

#[derive(Serialize)]
struct GhRow {
    n: u32,
    samples: usize,
    distortion: f64,
    sampled_distortion: f64,
    witness_gap: Option<f64>,
}

fn cmd_ghrate(a: &GhrateArgs) -> Result<(), CliError> {
    let s = a.genset.resolve()?;
    let samples = a.common.samples_or(2000);
    let mut report = ExperimentReport::new("ghrate", s.label(), a.common.seed);
    let mut series = Vec::new();
    for &n in &a.ns {
        let r = gh_distortion(&s, n, samples, a.common.seed)?;
        series.push((n as f64, r.distortion));
        report.push(&GhRow {
            n,
            samples,
            distortion: r.distortion,
            sampled_distortion: r.sampled_distortion,
            witness_gap: r.witnesses.first().map(|w| w.gap),
        })?;
    }
    let fit = if series.len() >= 3 { fit_rate(&series).ok() } else { None };
    if let Some(f) = &fit {
        eprintln!("slope {:.4}", f.slope);
    }
    emit_report(&report.with_fit(fit.as_ref()), a.common.out.as_deref())
}

#[derive(Serialize)]
struct VolfitOut {
    genset: String,
    radius: u32,
    dimension: u32,
    window: (u32, u32),
    c_hat: f64,
    next_order: f64,
    /// `vol(B_d3(1))`, present for HEIS_STD whose limit metric is d3.
    reference_volume: Option<f64>,
    relative_error: Option<f64>,
    max_abs_residual: f64,
    median_abs_residual: f64,
    residuals: Vec<(u32, f64)>,
}

fn cmd_volfit(a: &VolfitArgs) -> Result<(), CliError> {
    let s = a.genset.resolve()?;
    let &[n0, n1] = a.window.as_slice() else {
        return Err(Error::InvalidParameter("window takes two radii `n0,n1`".into()).into());
    };
    if n1 > a.radius {
        return Err(Error::InvalidParameter(format!("window end {n1} exceeds radius {}", a.radius)).into());
    }
    let census = enumerate_ball(&s, a.radius, false)?;
    let fit = fit_volume(&census, homogeneous_dimension(s.group()), (n0, n1))?;
    let reference = (s.as_builtin() == Some(Builtin::HeisStd)).then(|| unit_ball_volume(Metric::D3));
    let out = VolfitOut {
        genset: s.label().to_string(),
        radius: a.radius,
        dimension: fit.dimension,
        window: fit.window,
        c_hat: fit.c_hat,
        next_order: fit.next_order,
        reference_volume: reference,
        relative_error: reference.map(|v| (fit.c_hat - v).abs() / v),
        max_abs_residual: fit.max_abs_residual(),
        median_abs_residual: fit.median_abs_residual(),
        residuals: fit.residuals.clone(),
    };
    emit_json(&out, a.common.out.as_deref())
}

fn cmd_gap(a: &GapArgs) -> Result<(), CliError> {
    let rows = sqrt_gap_experiment(&a.n)?;
    let mut report = ExperimentReport::new("gap", Builtin::ProdS2.label(), a.common.seed);
    for r in &rows {
        report.push(r)?;
    }
    emit_report(&report, a.common.out.as_deref())
}

#[derive(Serialize)]
struct FamilyOut {
    family: ExtremeFamily,
    mutual_deviation: f64,
    isometry_pairs: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct ScanRow {
    eps: f64,
    samples: usize,
    accepted: usize,
    sup_defect: f64,
    ratio: f64,
}

fn cmd_extreme(a: &ExtremeArgs) -> Result<(), CliError> {
    let Some(kind) = a.scan else {
        let group = match Group::parse(&a.group)? {
            Group::Z3 => return Err(Error::InvalidParameter("extreme families live in heis or prod".into()).into()),
            g => g,
        };
        let family = extreme_family(a.a, a.b, group)?;
        let out = FamilyOut {
            mutual_deviation: verify_mutual_distance(&family),
            isometry_pairs: isometry_pairs(&family, 1e-9),
            family,
        };
        return emit_json(&out, a.common.out.as_deref());
    };
    let samples = a.common.samples_or(100_000);
    let (name, scan): (&str, fn(f64, usize, u64) -> Result<ScanReport>) = match kind {
        ScanKind::Midpoint => ("midpoint", midpoint_defect_scan),
        ScanKind::Abnormal => ("abnormal", abnormal_vertical_scan),
        ScanKind::Control => ("control", heisenberg_control_scan),
    };
    let mut report = ExperimentReport::new(format!("extreme-{name}"), "", a.common.seed);
    let mut series = Vec::new();
    for &eps in &a.eps {
        let r = scan(eps, samples, a.common.seed)?;
        if eps > 0.0 && r.sup_defect > 0.0 {
            series.push((eps, r.sup_defect));
        }
        report.push(&ScanRow { eps, samples, accepted: r.accepted, sup_defect: r.sup_defect, ratio: r.ratio })?;
    }
    let fit = if series.len() >= 3 { fit_rate(&series).ok() } else { None };
    if let Some(f) = &fit {
        eprintln!("slope {:.4}", f.slope);
    }
    emit_report(&report.with_fit(fit.as_ref()), a.common.out.as_deref())
}

#[derive(Serialize)]
struct GronwallRow {
    eps: f64,
    gap: f64,
    half_gap: f64,
    halving_ratio: f64,
}

fn cmd_gronwall(a: &GronwallArgs) -> Result<(), CliError> {
    let rows = sample_gronwall(a.eps, a.common.samples_or(1000), a.common.seed)?;
    let mut report = ExperimentReport::new("gronwall", "", a.common.seed);
    for r in &rows {
        report.push(&GronwallRow { eps: r.eps, gap: r.gap, half_gap: r.half_gap, halving_ratio: r.halving_ratio() })?;
    }
    emit_report(&report, a.common.out.as_deref())
}

fn cmd_render(a: &RenderArgs) -> Result<(), CliError> {
    let spec = RenderSpec {
        metric: a.metric,
        mode: a.mode,
        plane: a.plane.clone(),
        resolution: a.resolution,
        point: a.point.as_deref().map(heis_point).transpose()?,
        out: a.out.clone(),
    };
    let text = render::render(&spec)?;
    write_atomic(&spec.out, &text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("--threads {n}: {e}")))?;
    }
    match &cli.command {
        Command::Dist(a) => cmd_dist(a),
        Command::Ball(a) => cmd_ball(a),
        Command::WordDist(a) => cmd_word_dist(a),
        Command::Geodesic(a) => cmd_geodesic(a),
        Command::Ghrate(a) => cmd_ghrate(a),
        Command::Volfit(a) => cmd_volfit(a),
        Command::Gap(a) => cmd_gap(a),
        Command::Extreme(a) => cmd_extreme(a),
        Command::Gronwall(a) => cmd_gronwall(a),
        Command::Render(a) => cmd_render(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(CliError::Partial(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

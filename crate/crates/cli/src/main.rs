//! Command-line front end: boundary records, dual-cloud CSV exports,
//! numeric-vs-symbolic verification, SVG figures, and the built-in example
//! suite.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage or
//! parse errors. Logs go to stderr; stdout stays machine-parseable.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use pcdual_core::boundary::{boundary_curve, BoundaryOutcome};
use pcdual_core::render::{render_svg, scene_dump, viewport_for_cloud, Scene};
use pcdual_core::sample::{
    cloud_csv, dual_cloud, sample_surface, validate_boundary, SampleConfig, SampleMode,
};
use pcdual_core::{parse_spacing, parse_surface, AxisSpacing, Error as CoreError, QuadricSurface};

#[derive(Parser)]
#[command(
    name = "pcdual",
    version,
    about = "Quadric surfaces in parallel coordinates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact boundary conic of the dual region.
    Boundary(JobArgs),
    /// Sample the surface and export the dual point cloud as CSV.
    Sample(JobArgs),
    /// Check the numeric cloud against the symbolic boundary; exit 1 on failure.
    Verify(JobArgs),
    /// Render the dual region, boundary conic, and parallel axes as SVG.
    Render(JobArgs),
    /// Run the four built-in example surfaces against embedded reference conics.
    PaperSuite,
}

#[derive(Args, Clone, Default)]
struct JobArgs {
    /// Surface equation, e.g. "x^2 + y^2 + z^2 = 2".
    #[arg(long)]
    surface: Option<String>,
    /// Read the equation from a file ("-" for stdin).
    #[arg(long)]
    surface_file: Option<PathBuf>,
    /// Axis positions as exact rationals: "0,1,2" or "0,1/2,3".
    #[arg(long)]
    spacing: Option<String>,
    /// Sampling mode: auto, explicit-grid, builtin-param, implicit-scan.
    #[arg(long)]
    mode: Option<String>,
    /// Per-variable intervals "lo:hi[,lo:hi,..]"; one interval is broadcast.
    #[arg(long)]
    domain: Option<String>,
    /// Target number of surface samples.
    #[arg(long)]
    count: Option<usize>,
    /// RNG seed for reproducible sampling.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol_contact: Option<f64>,
    #[arg(long)]
    tol_curve: Option<f64>,
    /// Marching-squares resolution for rendered conics.
    #[arg(long)]
    steps: Option<usize>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json, text, csv, or svg (command-dependent default).
    #[arg(long)]
    format: Option<String>,
    /// JSON file supplying defaults for any of the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Config-file mirror of the flags.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    surface: Option<String>,
    surface_file: Option<PathBuf>,
    spacing: Option<String>,
    mode: Option<String>,
    domain: Option<String>,
    count: Option<usize>,
    seed: Option<u64>,
    tol_contact: Option<f64>,
    tol_curve: Option<f64>,
    steps: Option<usize>,
    out: Option<PathBuf>,
    format: Option<String>,
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// Computation or verification failure: exit 1.
    Run(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        match e {
            CoreError::Syntax { .. }
            | CoreError::UnsupportedDegree(_)
            | CoreError::UnknownVariable(_)
            | CoreError::MixedNaming
            | CoreError::NonConstantDivisor
            | CoreError::DivisionByZero
            | CoreError::DegenerateSpacing(_)
            | CoreError::InvalidConfig(_) => Failure::Usage(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Boundary(args) => cmd_boundary(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Render(args) => cmd_render(args),
        Command::PaperSuite => cmd_paper_suite(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

impl JobArgs {
    /// Apply config-file defaults underneath the explicit flags.
    fn merged(mut self) -> Result<JobArgs, Failure> {
        let Some(path) = self.config.take() else {
            return Ok(self);
        };
        let text = fs::read_to_string(&path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let file: FileConfig = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))?;
        self.surface = self.surface.or(file.surface);
        self.surface_file = self.surface_file.or(file.surface_file);
        self.spacing = self.spacing.or(file.spacing);
        self.mode = self.mode.or(file.mode);
        self.domain = self.domain.or(file.domain);
        self.count = self.count.or(file.count);
        self.seed = self.seed.or(file.seed);
        self.tol_contact = self.tol_contact.or(file.tol_contact);
        self.tol_curve = self.tol_curve.or(file.tol_curve);
        self.steps = self.steps.or(file.steps);
        self.out = self.out.or(file.out);
        self.format = self.format.or(file.format);
        Ok(self)
    }

    fn surface(&self) -> Result<QuadricSurface, Failure> {
        let text = match (&self.surface, &self.surface_file) {
            (Some(t), _) => t.clone(),
            (None, Some(path)) if path.as_os_str() == "-" => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
                buf
            }
            (None, Some(path)) => fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
            (None, None) => {
                return Err(Failure::Usage(
                    "missing surface: pass --surface or --surface-file".into(),
                ))
            }
        };
        Ok(parse_surface(text.trim())?)
    }

    fn spacing(&self, nvars: usize) -> Result<AxisSpacing, Failure> {
        match &self.spacing {
            Some(text) => {
                let spacing = parse_spacing(text)?;
                if spacing.len() != nvars {
                    return Err(Failure::Usage(format!(
                        "spacing has {} entries for {} variables",
                        spacing.len(),
                        nvars
                    )));
                }
                Ok(spacing)
            }
            None => Ok(AxisSpacing::default_for(nvars)),
        }
    }

    fn sample_config(&self) -> Result<SampleConfig, Failure> {
        let mut cfg = SampleConfig::new(self.count.unwrap_or(1500));
        cfg.seed = self.seed.unwrap_or(0);
        if let Some(t) = self.tol_contact {
            cfg.tol_contact = t;
        }
        if let Some(t) = self.tol_curve {
            cfg.tol_curve = t;
        }
        if let Some(mode) = &self.mode {
            cfg.mode = match mode.as_str() {
                "auto" => SampleMode::Auto,
                "explicit-grid" => SampleMode::ExplicitGrid,
                "builtin-param" => SampleMode::BuiltinParam,
                "implicit-scan" => SampleMode::ImplicitScan,
                other => return Err(Failure::Usage(format!("unknown sampling mode `{other}`"))),
            };
        }
        if let Some(domain) = &self.domain {
            cfg.domain = parse_domain(domain)?;
        }
        Ok(cfg)
    }

    fn emit(&self, payload: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => fs::write(path, payload)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{payload}");
                Ok(())
            }
        }
    }
}

fn parse_domain(text: &str) -> Result<Vec<(f64, f64)>, Failure> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let (lo, hi) = piece
            .split_once(':')
            .ok_or_else(|| Failure::Usage(format!("domain interval `{piece}` is not lo:hi")))?;
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad domain bound `{lo}`")))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad domain bound `{hi}`")))?;
        out.push((lo, hi));
    }
    Ok(out)
}

fn cmd_boundary(args: JobArgs) -> Result<(), Failure> {
    let args = args.merged()?;
    let surface = args.surface()?;
    let spacing = args.spacing(surface.nvars())?;
    let outcome = boundary_curve(&surface, &spacing)?;
    let payload = match args.format.as_deref().unwrap_or("json") {
        "json" => format!("{:#}\n", outcome.to_json()),
        "text" => match &outcome {
            BoundaryOutcome::Curve(c) => {
                let disc = c.discriminant();
                format!(
                    "surface: {}\nspacing: {}\nboundary: {}\nsigma_prime: {}\ndiscriminant: {}\n",
                    c.surface().canonical_text(),
                    c.spacing().texts().join(","),
                    c.boundary_text(),
                    c.contact(),
                    disc
                )
            }
            BoundaryOutcome::PlanePoint { point, .. } => format!(
                "degenerate plane input; dual point ({}, {}, {})\n",
                point.eta, point.xi, point.psi
            ),
        },
        other => {
            return Err(Failure::Usage(format!(
                "unsupported format `{other}` for boundary"
            )))
        }
    };
    args.emit(&payload)
}

fn cmd_sample(args: JobArgs) -> Result<(), Failure> {
    let args = args.merged()?;
    let surface = args.surface()?;
    let spacing = args.spacing(surface.nvars())?;
    let cfg = args.sample_config()?;
    let points = sample_surface(&surface, &cfg)?;
    if points.is_empty() {
        eprintln!("warning: no surface points found in the domain");
    }
    let report = dual_cloud(&surface, &points, &spacing, &cfg)?;
    match args.format.as_deref().unwrap_or("csv") {
        "csv" => args.emit(&cloud_csv(&report)),
        "json" => {
            let value = serde_json::json!({
                "surface": report.surface,
                "spacing": report.spacing,
                "samples": report.samples.len(),
                "boundary_hits": report.boundary_hits.len(),
                "n_ideal": report.n_ideal,
                "n_singular": report.n_singular,
            });
            args.emit(&format!("{value:#}\n"))
        }
        other => Err(Failure::Usage(format!(
            "unsupported format `{other}` for sample"
        ))),
    }
}

fn cmd_verify(args: JobArgs) -> Result<(), Failure> {
    let args = args.merged()?;
    let surface = args.surface()?;
    let spacing = args.spacing(surface.nvars())?;
    let cfg = args.sample_config()?;
    let BoundaryOutcome::Curve(curve) = boundary_curve(&surface, &spacing)? else {
        return Err(Failure::Run(
            "degree-1 input has no boundary to verify".into(),
        ));
    };
    let points = sample_surface(&surface, &cfg)?;
    if points.is_empty() {
        return Err(Failure::Run(
            "no surface samples in the domain; widen --domain".into(),
        ));
    }
    let mut report = dual_cloud(&surface, &points, &spacing, &cfg)?;
    let summary = validate_boundary(&report, &curve, &cfg)?;
    report.attach_validation(&summary);
    let payload = match args.format.as_deref().unwrap_or("text") {
        "json" => format!("{:#}\n", serde_json::to_value(&summary).expect("serializable")),
        "text" => format!(
            "samples: {}\nboundary hits checked: {} (ideal skipped: {})\nmax hit residual: {:.3e}\ninterior exceed fraction: {:.4}\nverdict: {}\n",
            report.samples.len(),
            summary.hits_checked,
            summary.hits_ideal,
            summary.max_hit_residual,
            summary.interior_exceed_fraction,
            if summary.pass { "PASS" } else { "FAIL" },
        ),
        other => return Err(Failure::Usage(format!("unsupported format `{other}` for verify"))),
    };
    args.emit(&payload)?;
    if summary.pass {
        Ok(())
    } else {
        Err(Failure::Run(
            "numeric cloud disagrees with the symbolic boundary".into(),
        ))
    }
}

fn cmd_render(args: JobArgs) -> Result<(), Failure> {
    let args = args.merged()?;
    let surface = args.surface()?;
    let spacing = args.spacing(surface.nvars())?;
    let cfg = args.sample_config()?;
    let points = sample_surface(&surface, &cfg)?;
    if points.is_empty() {
        eprintln!("warning: no surface points found in the domain");
    }
    let report = dual_cloud(&surface, &points, &spacing, &cfg)?;
    let curve = match boundary_curve(&surface, &spacing) {
        Ok(BoundaryOutcome::Curve(c)) => Some(c),
        Ok(BoundaryOutcome::PlanePoint { .. }) => None,
        Err(e) => {
            eprintln!("warning: no boundary curve ({e})");
            None
        }
    };
    let viewport = viewport_for_cloud(&report, 50.0);
    let mut scene = Scene::new(spacing, viewport);
    scene.cloud = Some(report);
    scene.curve = curve;
    if let Some(steps) = args.steps {
        if steps < 2 {
            return Err(Failure::Usage("--steps must be at least 2".into()));
        }
        scene.trace_steps = steps;
    }
    match args.format.as_deref().unwrap_or("svg") {
        "svg" => args.emit(&render_svg(&scene)),
        "json" => {
            let dump = scene_dump(&scene);
            args.emit(&format!(
                "{:#}\n",
                serde_json::to_value(&dump).expect("serializable")
            ))
        }
        other => Err(Failure::Usage(format!(
            "unsupported format `{other}` for render"
        ))),
    }
}

/// Built-in example surfaces with their embedded reference conics, compared
/// after normalization.
const SUITE: [(&str, &str, &str); 4] = [
    (
        "saddle",
        "z = -(x/2)^2 + (y/2)^2",
        "4*x^2 - 4*x*y + y^2 - 16*x - 4*y + 16",
    ),
    ("sphere", "x^2 + y^2 + z^2 = 2", "x^2 - 4*x*y + y^2 + 1"),
    (
        "hyperboloid-one-sheet",
        "x^2 + y^2 - z^2 = 1",
        "x^2 - 4*x*y + y^2 - 1",
    ),
    (
        "hyperboloid-two-sheets",
        "x^2 - 4y^2 + 2z^2 = -2",
        "x^2 - 2*x*y + 4*y^2 - 1",
    ),
];

fn cmd_paper_suite() -> Result<(), Failure> {
    let spacing = AxisSpacing::default_for(3);
    let mut lines = Vec::new();
    let mut all_pass = true;
    for (name, equation, expected) in SUITE {
        let surface = parse_surface(equation)?;
        let line = match boundary_curve(&surface, &spacing) {
            Ok(BoundaryOutcome::Curve(c)) => {
                let got = c.boundary_text();
                if got == expected {
                    format!("PASS {name}: {got}")
                } else {
                    all_pass = false;
                    format!("FAIL {name}: expected {expected}, got {got}")
                }
            }
            Ok(BoundaryOutcome::PlanePoint { .. }) => {
                all_pass = false;
                format!("FAIL {name}: degenerate plane result")
            }
            Err(e) => {
                all_pass = false;
                format!("FAIL {name}: {e}")
            }
        };
        lines.push(line);
    }
    for line in lines {
        println!("{line}");
    }
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Run("reference comparison failed".into()))
    }
}

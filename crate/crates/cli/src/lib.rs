//! Verification suites behind the `classop` binary. Every command builds a
//! [`Report`]; rendering and exit status are decided from it alone, so the
//! binary stays a thin wrapper.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use classop::class_ops::scaled_tolerance;
use classop::export::{CharacterTableDoc, IrrepsDoc};
use classop::su2::{convergence_table, default_orders, DEFAULT_N_PHI, DEFAULT_N_THETA, DEFAULT_PSIS};
use classop::verify::{
    class_based_at, finite_class_checks, scan_finite, scan_su2, wigner_eckart_finite, wigner_eckart_su2,
};
use classop::{build_group, CatalogSpec, ConjugacyClass, FiniteContext, GroupSpec, Representation, SphereQuadrature, Tolerances};

mod report;

pub use report::{Body, Report, ScanEntry, WignerEckartSection, REPORT_SCHEMA};

/// Largest doubled spin accepted on the command line.
pub const MAX_J2: u32 = 40;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] classop::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "classop", version, about = "Weighted class operator verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-class invariant checks on the regular representation.
    FiniteVerify(RunArgs),
    /// SU(2) class operator quadrature against the closed-form spectrum.
    Su2Verify(RunArgs),
    /// Predicted tensor-operator coefficients against brute force or quadrature.
    WignerEckart(RunArgs),
    /// Which tensor-operator families vanish in a representation.
    Scan(RunArgs),
    /// Character table and irreducible matrices as versioned documents.
    ExportTables(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::FiniteVerify(_) => "finite-verify",
            Command::Su2Verify(_) => "su2-verify",
            Command::WignerEckart(_) => "wigner-eckart",
            Command::Scan(_) => "scan",
            Command::ExportTables(_) => "export-tables",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::FiniteVerify(a)
            | Command::Su2Verify(a)
            | Command::WignerEckart(a)
            | Command::Scan(a)
            | Command::ExportTables(a) => a,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// `catalog:S3` (C<n>, D<n>, S<n>, Q8), `file:<path>` with a group document, or `su2`.
    #[arg(long, default_value = "catalog:S3")]
    pub group: String,

    /// Base-element label of one class, or `all`.
    #[arg(long, default_value = "all")]
    pub class: String,

    /// Named tolerance `name=value`; `default` applies to unnamed checks. Repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tolerance)]
    pub tolerances: Vec<(String, f64)>,

    /// Report file; overrides the output directory.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Directory receiving `<command>.<ext>` when `--output` is absent.
    #[arg(long, env = "CLASSOP_OUTPUT_DIR")]
    pub output_dir: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Random weights per class in finite-verify.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,

    /// Gauss-Legendre nodes in cos(theta) [default: 16].
    #[arg(long)]
    pub n_theta: Option<usize>,

    /// Uniform nodes in phi [default: 32].
    #[arg(long)]
    pub n_phi: Option<usize>,

    /// Largest doubled spin of the truncated SU(2) irrep system.
    #[arg(long = "max-spin-x2", default_value_t = 6)]
    pub max_spin_x2: u32,

    /// Class angles in (0, 2pi); comma-separated or repeated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub psi: Vec<f64>,

    /// Doubled spins for su2-verify; comma-separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub j2: Vec<u32>,

    /// Representation for scan: `regular` or `irrep:<N>` (doubled spin for su2).
    #[arg(long, default_value = "regular")]
    pub rep: String,
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    let value: f64 = value.trim().parse().map_err(|_| format!("tolerance {value:?} is not a number"))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(format!("tolerance {name} must be positive"));
    }
    Ok((name.trim().to_string(), value))
}

enum Target {
    Finite(Box<FiniteContext>),
    Su2,
}

fn resolve_group(spec: &str, seed: u64) -> Result<Target, CliError> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("su2") {
        return Ok(Target::Su2);
    }
    let group_spec = if let Some(name) = spec.strip_prefix("catalog:") {
        GroupSpec::Catalog(CatalogSpec::parse_short(name)?)
    } else if let Some(path) = spec.strip_prefix("file:") {
        let path = PathBuf::from(path);
        let text = std::fs::read_to_string(&path).map_err(|source| CliError::Read { path, source })?;
        GroupSpec::from_json(&text)?
    } else {
        return Err(CliError::Usage(format!("group {spec:?} must be catalog:<name>, file:<path> or su2")));
    };
    let group = build_group(&group_spec)?;
    Ok(Target::Finite(Box::new(FiniteContext::new(group, seed)?)))
}

fn finite_only(target: Target, command: &str) -> Result<FiniteContext, CliError> {
    match target {
        Target::Finite(ctx) => Ok(*ctx),
        Target::Su2 => Err(CliError::Usage(format!("{command} needs a finite group"))),
    }
}

/// Selected classes, each based at the chosen element.
fn classes(ctx: &FiniteContext, selector: &str) -> Result<Vec<ConjugacyClass>, CliError> {
    if selector == "all" {
        return Ok(ctx.classes.clone());
    }
    Ok(vec![class_based_at(&ctx.group, ctx.group.find_label(selector)?)])
}

fn quadrature(args: &RunArgs) -> Result<SphereQuadrature, CliError> {
    let (t, p) = (args.n_theta.unwrap_or(DEFAULT_N_THETA), args.n_phi.unwrap_or(DEFAULT_N_PHI));
    check_nodes(t, p)?;
    Ok(SphereQuadrature::new(t, p)?)
}

fn check_nodes(n_theta: usize, n_phi: usize) -> Result<(), CliError> {
    if n_theta < 2 || n_phi < 2 {
        return Err(CliError::Usage(format!("node counts must be at least 2, got ({n_theta}, {n_phi})")));
    }
    Ok(())
}

fn check_spin(j2: u32) -> Result<(), CliError> {
    if j2 > MAX_J2 {
        return Err(CliError::Usage(format!("doubled spin {j2} exceeds the supported maximum {MAX_J2}")));
    }
    Ok(())
}

fn psis(args: &RunArgs, default: &[f64]) -> Result<Vec<f64>, CliError> {
    let psis = if args.psi.is_empty() { default.to_vec() } else { args.psi.clone() };
    for &psi in &psis {
        if !(psi > 0.0 && psi < 2.0 * PI) {
            return Err(classop::Error::AngleDomain(psi).into());
        }
    }
    Ok(psis)
}

fn tolerances(args: &RunArgs) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    for (name, value) in &args.tolerances {
        tol.set(name, *value)?;
    }
    Ok(tol)
}

/// Runs one command to a report; errors are usage or input problems.
pub fn run(command: &Command) -> Result<Report, CliError> {
    let args = command.args();
    let tol = tolerances(args)?;
    let target = resolve_group(&args.group, args.seed)?;
    let group_name = match &target {
        Target::Finite(ctx) => ctx.name.clone(),
        Target::Su2 => "SU(2)".to_string(),
    };
    let (pass, body) = match command {
        Command::FiniteVerify(_) => {
            let ctx = finite_only(target, command.name())?;
            let selected = ctx.select_classes(&args.class)?;
            let mut checks = Vec::new();
            for idx in selected {
                checks.extend(finite_class_checks(&ctx, idx, &tol, args.seed, args.samples)?);
            }
            (checks.iter().all(|c| c.pass), Body::FiniteVerify { checks })
        }
        Command::Su2Verify(_) => {
            let j2s: Vec<u32> = if args.j2.is_empty() { (1..=12).collect() } else { args.j2.clone() };
            for &j2 in &j2s {
                check_spin(j2)?;
            }
            let psis = psis(args, &DEFAULT_PSIS)?;
            let orders = if args.n_theta.is_some() || args.n_phi.is_some() {
                vec![(args.n_theta.unwrap_or(DEFAULT_N_THETA), args.n_phi.unwrap_or(DEFAULT_N_PHI))]
            } else {
                default_orders()
            };
            for &(t, p) in &orders {
                check_nodes(t, p)?;
            }
            let rows = convergence_table(&j2s, &psis, &orders)?;
            let final_order = *orders.last().expect("at least one order");
            let limit = tol.get("su2", 1e-9);
            let pass = rows
                .iter()
                .filter(|r| (r.n_theta, r.n_phi) == final_order)
                .all(|r| r.max_abs_error <= limit);
            (pass, Body::Su2Verify { tolerance: limit, final_order, rows })
        }
        Command::WignerEckart(_) => {
            let off_tol = tol.get("off-pattern", 1e-10);
            let mut sections = Vec::new();
            match target {
                Target::Finite(ctx) => {
                    let limit = tol.get("wigner-eckart", 1e-9);
                    for class in classes(&ctx, &args.class)? {
                        let report = wigner_eckart_finite(&ctx, &class, limit)?;
                        sections.push(WignerEckartSection::new(ctx.class_label(&class), report, off_tol));
                    }
                }
                Target::Su2 => {
                    check_spin(args.max_spin_x2)?;
                    let quad = quadrature(args)?;
                    let limit = tol.get("wigner-eckart", 1e-8);
                    for psi in psis(args, &[2.0 * PI / 3.0])? {
                        let report = wigner_eckart_su2(args.max_spin_x2, psi, &quad, limit)?;
                        sections.push(WignerEckartSection::new(format!("g({psi})"), report, off_tol));
                    }
                }
            }
            (sections.iter().all(|s| s.pass), Body::WignerEckart { sections })
        }
        Command::Scan(_) => {
            let limit = tol.get("scan", 1e-10);
            let mut rows = Vec::new();
            match target {
                Target::Finite(ctx) => {
                    let rep = match parse_rep(&args.rep)? {
                        None => Representation::regular(&ctx.group),
                        Some(n) => {
                            let irrep = ctx.irreps.get(n).ok_or(classop::Error::IndexOutOfRange {
                                index: n,
                                dim: ctx.irreps.len(),
                            })?;
                            Representation::from_irrep(irrep)
                        }
                    };
                    let limit = scaled_tolerance(limit, rep.dim());
                    for class in classes(&ctx, &args.class)? {
                        let label = ctx.class_label(&class);
                        for row in scan_finite(&ctx, &class, &rep, limit)? {
                            rows.push(ScanEntry::new(&label, row));
                        }
                    }
                }
                Target::Su2 => {
                    let j2 = parse_rep(&args.rep)?
                        .ok_or_else(|| CliError::Usage("su2 scan needs --rep irrep:<doubled spin>".into()))?
                        as u32;
                    check_spin(j2)?;
                    check_spin(args.max_spin_x2)?;
                    let quad = quadrature(args)?;
                    for psi in psis(args, &[2.0 * PI / 3.0])? {
                        for row in scan_su2(j2, args.max_spin_x2, psi, &quad, limit)? {
                            rows.push(ScanEntry::new(&format!("g({psi})"), row));
                        }
                    }
                }
            }
            // an empirical report: only errors make the run fail
            (true, Body::Scan { tolerance: limit, rows })
        }
        Command::ExportTables(_) => {
            let ctx = finite_only(target, command.name())?;
            let characters = CharacterTableDoc::new(&ctx.group, &ctx.table);
            let irreps = IrrepsDoc::new(&ctx.group, &ctx.irreps);
            (true, Body::ExportTables { characters, irreps })
        }
    };
    Ok(Report {
        schema: REPORT_SCHEMA.to_string(),
        command: command.name().to_string(),
        group: group_name,
        class: args.class.clone(),
        seed: args.seed,
        tolerances: tol.0,
        pass,
        body,
    })
}

/// `None` for the regular representation, `Some(n)` for `irrep:n`.
fn parse_rep(rep: &str) -> Result<Option<usize>, CliError> {
    if rep == "regular" {
        return Ok(None);
    }
    rep.strip_prefix("irrep:")
        .and_then(|n| n.parse().ok())
        .map(Some)
        .ok_or_else(|| CliError::Usage(format!("representation {rep:?} must be regular or irrep:<N>")))
}

/// Where the rendered report goes; `None` means standard output.
pub fn output_path(command: &Command) -> Option<PathBuf> {
    let args = command.args();
    if let Some(path) = &args.output {
        return Some(path.clone());
    }
    args.output_dir.as_ref().map(|dir| dir.join(format!("{}.{}", command.name(), args.format.extension())))
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(report).map_err(classop::Error::from)?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => report::to_csv(report),
    }
}

//! Command-line front end.
//!
//! Six subcommands cover the workflow end to end:
//!
//! * `pullin` — bracket the pull-in voltage of one specimen,
//! * `sweep` — emit the full voltage/deflection trace as CSV,
//! * `deflect` — emit the static deflection profile at a fixed voltage,
//! * `identify` — back out the residual stress from a measured pull-in,
//! * `sensitivity` — tabulate pull-in voltage over a list of stresses,
//! * `catalog` — list the built-in measured specimens.
//!
//! Specimens come either from the built-in catalog (`--catalog geom5/sample1`)
//! or from a `key = value` config file (`--config beam.toml`); `--sigma0`,
//! `--e-gpa`, `--fringing` and `--n-elements` override either source. All
//! interface units are the lab ones — microns, MPa, GPa, volts — while the
//! solver itself runs in SI.
//!
//! Commands whose primary product is a table write CSV to `--out` (or to
//! stdout when no path is given) and keep their human-readable summary on
//! stderr, so redirecting stdout always yields a clean file. CSV uses `.`
//! decimals, `\n` line ends, and no trailing whitespace. Two sign
//! conventions coexist deliberately: sweep traces report the *gap-closing*
//! deflection (positive toward the electrode, the quantity that runs up to
//! about a third of the gap at pull-in), while `deflect` profiles report the
//! geometric deflection `v_um` (positive away from the electrode, so a
//! stress-relieved cantilever shows its tip rise as a positive number).
//!
//! Exit codes, also used by the integration tests:
//!
//! * 0 — success,
//! * 2 — input error (bad flags, unknown catalog id, config parse failure,
//!   unattainable identification target),
//! * 3 — no pull-in below the voltage ceiling (`pullin`), or a requested
//!   operating point at or beyond pull-in (`deflect`),
//! * 4 — numerical failure (no stable equilibrium at the starting voltage,
//!   non-finite arithmetic).
//!
//! `PULLIN_THREADS` caps the size of the thread pool used by the
//! sensitivity scan; it must be set before the first parallel call.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::domain::{self, catalog, config, BoundaryCondition, Specimen};
use crate::solver::{
    identify_prestress, prestress_sensitivity, solve_equilibrium, sweep_model, BeamModel,
    EquilibriumResult, SolverConfig, SolverError, SweepOutcome, SweepRecord,
};
use crate::units;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_PULL_IN: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

/// A failure carrying the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn no_pull_in(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_NO_PULL_IN,
            message: message.into(),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> CliError {
        let code = match &e {
            SolverError::NotStableAtStart { .. }
            | SolverError::NonFinite { .. }
            | SolverError::Fem(_) => EXIT_NUMERICAL,
            SolverError::NoPullInAtSigma { .. } => EXIT_NO_PULL_IN,
            SolverError::Domain(_)
            | SolverError::Config(_)
            | SolverError::TargetOutOfRange { .. }
            | SolverError::NotClampedClamped => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<domain::DomainError> for CliError {
    fn from(e: domain::DomainError) -> CliError {
        CliError::input(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pullin",
    version,
    about = "Electrostatic pull-in analysis of MEMS beams",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bracket the pull-in voltage of a specimen
    Pullin(PullinArgs),
    /// Sweep the voltage and write the equilibrium trace as CSV
    Sweep(SweepArgs),
    /// Static deflection profile at a fixed voltage, as CSV
    Deflect(DeflectArgs),
    /// Identify the residual stress matching a measured pull-in voltage
    Identify(IdentifyArgs),
    /// Pull-in voltage for each stress in a list, as CSV
    Sensitivity(SensitivityArgs),
    /// List the built-in specimen catalog
    Catalog,
}

/// Where the specimen comes from and which properties to override.
#[derive(Args, Debug)]
pub struct SpecimenArgs {
    /// Built-in specimen id, e.g. geom5/sample1 (see `pullin catalog`)
    #[arg(long, value_name = "ID", conflicts_with = "config")]
    pub catalog: Option<String>,
    /// Specimen description file (`key = value` lines)
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Override the residual stress (MPa, tension positive)
    #[arg(long, value_name = "MPA", allow_hyphen_values = true)]
    pub sigma0: Option<f64>,
    /// Override the Young's modulus (GPa)
    #[arg(long = "e-gpa", value_name = "GPA")]
    pub e_gpa: Option<f64>,
    /// Enable or disable the first-order fringing-field correction
    #[arg(long, value_name = "BOOL")]
    pub fringing: Option<bool>,
    /// Number of beam finite elements
    #[arg(long = "n-elements", value_name = "N")]
    pub n_elements: Option<usize>,
}

/// Continuation knobs shared by every sweeping command.
#[derive(Args, Debug)]
pub struct SweepKnobs {
    /// Highest voltage to try (V)
    #[arg(long, value_name = "V", default_value_t = 300.0)]
    pub vmax: f64,
    /// Voltage step of the upward march (V)
    #[arg(long, value_name = "V", default_value_t = 1.0)]
    pub dv: f64,
    /// Final width of the pull-in bracket (V)
    #[arg(long = "tol-v", value_name = "V", default_value_t = 0.05)]
    pub tol_v: f64,
    /// Electrostatic load multiplier (1 = physical; for numerical studies)
    #[arg(long = "force-scale", value_name = "F", default_value_t = 1.0)]
    pub force_scale: f64,
}

#[derive(Args, Debug)]
pub struct PullinArgs {
    #[command(flatten)]
    pub specimen: SpecimenArgs,
    #[command(flatten)]
    pub knobs: SweepKnobs,
    /// Also write the sweep trace CSV to this file
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub specimen: SpecimenArgs,
    #[command(flatten)]
    pub knobs: SweepKnobs,
    /// Write the trace CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DeflectArgs {
    #[command(flatten)]
    pub specimen: SpecimenArgs,
    /// Applied voltage (V)
    #[arg(long, value_name = "V", default_value_t = 0.0)]
    pub v: f64,
    /// Voltage step used to walk up to `--v` (V)
    #[arg(long, value_name = "V", default_value_t = 1.0)]
    pub dv: f64,
    /// Write the profile CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IdentifyArgs {
    #[command(flatten)]
    pub specimen: SpecimenArgs,
    #[command(flatten)]
    pub knobs: SweepKnobs,
    /// Measured pull-in voltage to match (V)
    #[arg(long, value_name = "V")]
    pub vpi: f64,
    /// Stress search range in MPa, as LO:HI
    #[arg(long = "sigma-range", value_name = "LO:HI", default_value = "0:100", value_parser = parse_sigma_range, allow_hyphen_values = true)]
    pub sigma_range: (f64, f64),
}

#[derive(Args, Debug)]
pub struct SensitivityArgs {
    #[command(flatten)]
    pub specimen: SpecimenArgs,
    #[command(flatten)]
    pub knobs: SweepKnobs,
    /// Comma-separated residual stresses to sweep (MPa)
    #[arg(long = "sigma-list", value_name = "MPA,MPA,...", value_parser = parse_sigma_list, allow_hyphen_values = true)]
    pub sigma_list: SigmaList,
    /// Write the table CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Parsed `--sigma-list` values (MPa), in the order given.
#[derive(Debug, Clone)]
pub struct SigmaList(pub Vec<f64>);

fn parse_sigma_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI in MPa (e.g. 0:100), got `{s}`"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("`{lo}` is not a number"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("`{hi}` is not a number"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite LO < HI, got `{s}`"));
    }
    Ok((lo, hi))
}

fn parse_sigma_list(s: &str) -> Result<SigmaList, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty entry in the stress list".to_string());
        }
        let v: f64 = part
            .parse()
            .map_err(|_| format!("`{part}` is not a number"))?;
        if !v.is_finite() {
            return Err(format!("`{part}` is not finite"));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err("the stress list is empty".to_string());
    }
    Ok(SigmaList(out))
}

/// Sizes the global thread pool from `PULLIN_THREADS`, when set. Must run
/// before the first parallel region; later calls are ignored by rayon.
pub fn init_threads() {
    if let Ok(raw) = std::env::var("PULLIN_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring PULLIN_THREADS=`{raw}` (want a positive integer)"),
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Pullin(args) => cmd_pullin(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Deflect(args) => cmd_deflect(args),
        Command::Identify(args) => cmd_identify(args),
        Command::Sensitivity(args) => cmd_sensitivity(args),
        Command::Catalog => cmd_catalog(),
    }
}

/// Resolves the specimen plus any mesh override pinned in a config file.
fn resolve_specimen(args: &SpecimenArgs) -> Result<(Specimen, Option<usize>), CliError> {
    let (mut spec, n_from_file) = match (&args.catalog, &args.config) {
        (Some(id), None) => {
            let entry = catalog::lookup(id).map_err(|e| CliError::input(e.to_string()))?;
            (entry.specimen, None)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read `{}`: {e}", path.display())))?;
            let parsed = config::parse_config(&text)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            (parsed.specimen, parsed.n_elements)
        }
        _ => {
            return Err(CliError::input(
                "give exactly one specimen source: --catalog ID or --config FILE",
            ))
        }
    };
    if let Some(mpa) = args.sigma0 {
        spec = spec.with_residual_stress(units::mpa_to_pa(mpa));
    }
    if let Some(gpa) = args.e_gpa {
        spec = spec.with_young_modulus(units::gpa_to_pa(gpa));
    }
    if let Some(fringing) = args.fringing {
        spec.fringing = fringing;
    }
    spec.validate()?;
    Ok((spec, n_from_file))
}

fn solver_config(
    knobs: &SweepKnobs,
    args: &SpecimenArgs,
    n_from_file: Option<usize>,
) -> Result<SolverConfig, CliError> {
    let cfg = SolverConfig {
        v_max: knobs.vmax,
        dv_initial: knobs.dv,
        vpi_bracket_tol: knobs.tol_v,
        n_elements: args
            .n_elements
            .or(n_from_file)
            .unwrap_or(SolverConfig::default().n_elements),
        ..SolverConfig::default()
    };
    cfg.validate()?;
    if !(knobs.force_scale > 0.0 && knobs.force_scale.is_finite()) {
        return Err(CliError::input("force-scale must be positive and finite"));
    }
    Ok(cfg)
}

fn build_model(
    spec: &Specimen,
    cfg: &SolverConfig,
    knobs: &SweepKnobs,
) -> Result<BeamModel, CliError> {
    let mut model = BeamModel::new(spec, cfg.n_elements)?;
    model.electro.force_scale = knobs.force_scale;
    Ok(model)
}

/// Writes `content` to the file at `path`, or to stdout when none given.
fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliError::input(format!("cannot write `{}`: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Six-decimal CSV number; negative zero is normalized so sign flips
/// cannot leak a `-0.000000` into a column.
fn fmt6(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.6}")
}

fn specimen_echo(spec: &Specimen) -> String {
    let mut line = format!(
        "specimen {}: {}, L = {:.1} um, w = {:.1} um, t = {:.3} um, g0 = {:.3} um",
        spec.name,
        spec.bc.label(),
        units::m_to_um(spec.length),
        units::m_to_um(spec.section.width),
        units::m_to_um(spec.section.thickness),
        units::m_to_um(spec.gap0),
    );
    if spec.bc == BoundaryCondition::Cantilever && spec.tip_rise() != 0.0 {
        line.push_str(&format!(
            ", tip rise = {:.3} um",
            units::m_to_um(spec.tip_rise())
        ));
    }
    line
}

fn material_echo(spec: &Specimen) -> String {
    format!(
        "material: E = {:.1} GPa (effective {:.1} GPa), nu = {:.2}, sigma0 = {:.3} MPa, fringing {}",
        units::pa_to_gpa(spec.material.young_modulus),
        units::pa_to_gpa(spec.effective_modulus()),
        spec.material.poisson_ratio,
        units::pa_to_mpa(spec.residual_stress),
        if spec.fringing { "on" } else { "off" },
    )
}

fn trace_csv(trace: &[SweepRecord]) -> String {
    let mut csv = String::from("V,deflection_um,min_gap_um,iters,converged\n");
    for r in trace {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt6(r.voltage),
            fmt6(units::m_to_um(r.deflection)),
            fmt6(units::m_to_um(r.min_gap)),
            r.iterations,
            r.converged,
        ));
    }
    csv
}

fn trace_stats(trace: &[SweepRecord]) -> (usize, usize) {
    let newton: usize = trace.iter().map(|r| r.iterations).sum();
    (trace.len(), newton)
}

fn cmd_pullin(args: &PullinArgs) -> Result<(), CliError> {
    let (spec, n_file) = resolve_specimen(&args.specimen)?;
    let cfg = solver_config(&args.knobs, &args.specimen, n_file)?;
    let model = build_model(&spec, &cfg, &args.knobs)?;
    let started = Instant::now();
    let outcome = sweep_model(&model, &cfg)?;
    let elapsed = started.elapsed().as_secs_f64();

    println!("{}", specimen_echo(&spec));
    println!("{}", material_echo(&spec));
    println!(
        "sweep: {:.1} -> {:.1} V, dv = {:.3} V, bracket tol = {:.3} V, {} elements",
        cfg.v_start, cfg.v_max, cfg.dv_initial, cfg.vpi_bracket_tol, cfg.n_elements
    );
    match outcome {
        SweepOutcome::PullIn(p) => {
            let deflection = model.reference_deflection(&p.state_at_v_low);
            let (points, newton) = trace_stats(&p.trace);
            println!("pull-in bracket [{:.3}, {:.3}] V", p.v_low, p.v_high);
            println!("V_PI = {:.3} V", p.v_pi);
            println!(
                "last stable state at {:.3} V: gap-closing deflection {:.4} um, {:.4} um of gap left",
                p.v_low,
                units::m_to_um(deflection),
                units::m_to_um(p.trace.iter().filter(|r| r.converged).map(|r| r.min_gap).fold(f64::INFINITY, f64::min)),
            );
            println!("{points} voltage points, {newton} Newton iterations, {elapsed:.2} s");
            if let Some(out) = &args.out {
                write_output(Some(out), &trace_csv(&p.trace))?;
            }
            Ok(())
        }
        SweepOutcome::NoPullIn { v_max, trace, .. } => {
            if let Some(out) = &args.out {
                write_output(Some(out), &trace_csv(&trace))?;
            }
            Err(CliError::no_pull_in(format!(
                "no pull-in below {:.3} V at sigma0 = {:.3} MPa; raise --vmax",
                v_max,
                units::pa_to_mpa(spec.residual_stress)
            )))
        }
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let (spec, n_file) = resolve_specimen(&args.specimen)?;
    let cfg = solver_config(&args.knobs, &args.specimen, n_file)?;
    let model = build_model(&spec, &cfg, &args.knobs)?;
    let outcome = sweep_model(&model, &cfg)?;

    eprintln!("{}", specimen_echo(&spec));
    match &outcome {
        SweepOutcome::PullIn(p) => {
            let (points, newton) = trace_stats(&p.trace);
            eprintln!(
                "pull-in bracket [{:.3}, {:.3}] V, V_PI = {:.3} V ({points} voltage points, {newton} Newton iterations)",
                p.v_low, p.v_high, p.v_pi
            );
        }
        SweepOutcome::NoPullIn { v_max, trace, .. } => {
            let (points, newton) = trace_stats(trace);
            eprintln!(
                "still stable at the {v_max:.3} V ceiling ({points} voltage points, {newton} Newton iterations)"
            );
        }
    }
    write_output(args.out.as_deref(), &trace_csv(outcome.trace()))
}

/// Walks the voltage up in `dv` steps (warm-started), landing exactly on
/// `v_target`. Direct cold Newton at a high voltage can jump the energy
/// barrier and miss a stable root that exists, so `deflect` reuses the
/// same continuation the sweeps do.
fn march_to_voltage(
    model: &BeamModel,
    v_target: f64,
    dv: f64,
    cfg: &SolverConfig,
) -> Result<EquilibriumResult, CliError> {
    let mut state = crate::beam_fem::BeamState::zero(&model.mesh);
    let mut v = 0.0;
    loop {
        let res = solve_equilibrium(model, v, &state, cfg)?;
        if !(res.converged && res.stable) {
            return Err(CliError::no_pull_in(format!(
                "no stable equilibrium at {v:.3} V — the specimen is at or beyond pull-in \
                 (requested {v_target:.3} V)"
            )));
        }
        if v >= v_target {
            return Ok(res);
        }
        state = res.state;
        v = (v + dv).min(v_target);
    }
}

fn cmd_deflect(args: &DeflectArgs) -> Result<(), CliError> {
    let (spec, n_file) = resolve_specimen(&args.specimen)?;
    if !(args.v >= 0.0 && args.v.is_finite()) {
        return Err(CliError::input("--v must be finite and non-negative"));
    }
    if !(args.dv > 0.0 && args.dv.is_finite()) {
        return Err(CliError::input("--dv must be positive"));
    }
    let cfg = SolverConfig {
        n_elements: args
            .specimen
            .n_elements
            .or(n_file)
            .unwrap_or(SolverConfig::default().n_elements),
        ..SolverConfig::default()
    };
    cfg.validate()?;
    let model = BeamModel::new(&spec, cfg.n_elements)?;
    let res = march_to_voltage(&model, args.v, args.dv, &cfg)?;

    let mut csv = String::from("x_um,v_um\n");
    for (x, v_closing) in model.profile(&res.state) {
        // Profiles use the geometric sign: positive away from the
        // electrode, so a relaxed cantilever reports a positive tip rise.
        csv.push_str(&format!(
            "{},{}\n",
            fmt6(units::m_to_um(x)),
            fmt6(-units::m_to_um(v_closing))
        ));
    }

    let reference = match spec.bc {
        BoundaryCondition::Cantilever => "tip",
        BoundaryCondition::ClampedClamped => "midspan",
    };
    eprintln!("{}", specimen_echo(&spec));
    eprintln!(
        "at {:.3} V: {} deflection {:+.4} um (away from the electrode), min gap {:.4} um",
        args.v,
        reference,
        -units::m_to_um(model.reference_deflection(&res.state)),
        units::m_to_um(res.min_gap),
    );
    write_output(args.out.as_deref(), &csv)
}

fn cmd_identify(args: &IdentifyArgs) -> Result<(), CliError> {
    let (spec, n_file) = resolve_specimen(&args.specimen)?;
    let cfg = solver_config(&args.knobs, &args.specimen, n_file)?;
    if args.knobs.force_scale != 1.0 {
        return Err(CliError::input(
            "identification runs against measured voltages; --force-scale does not apply",
        ));
    }
    let (lo_mpa, hi_mpa) = args.sigma_range;
    let started = Instant::now();
    let result = identify_prestress(
        &spec,
        args.vpi,
        units::mpa_to_pa(lo_mpa),
        units::mpa_to_pa(hi_mpa),
        &cfg,
    )?;
    let elapsed = started.elapsed().as_secs_f64();

    println!("{}", specimen_echo(&spec));
    println!("{}", material_echo(&spec));
    println!(
        "search: sigma0 in [{:.3}, {:.3}] MPa -> V_PI in [{:.3}, {:.3}] V",
        lo_mpa, hi_mpa, result.v_lo, result.v_hi
    );
    println!(
        "identified sigma0 = {:.3} MPa",
        units::pa_to_mpa(result.sigma0)
    );
    println!(
        "forward check: V_PI = {:.3} V against the measured {:.3} V",
        result.v_pi, args.vpi
    );
    println!("{} full sweeps, {elapsed:.2} s", result.evaluations);
    Ok(())
}

fn cmd_sensitivity(args: &SensitivityArgs) -> Result<(), CliError> {
    let (spec, n_file) = resolve_specimen(&args.specimen)?;
    let cfg = solver_config(&args.knobs, &args.specimen, n_file)?;
    if args.knobs.force_scale != 1.0 {
        return Err(CliError::input(
            "sensitivity maps the physical device; --force-scale does not apply",
        ));
    }
    let sigmas_pa: Vec<f64> = args
        .sigma_list
        .0
        .iter()
        .map(|&m| units::mpa_to_pa(m))
        .collect();
    let started = Instant::now();
    let rows = prestress_sensitivity(&spec, &sigmas_pa, &cfg)?;
    let elapsed = started.elapsed().as_secs_f64();

    let mut csv = String::from("sigma0_MPa,V_PI\n");
    for (sigma_pa, v_pi) in &rows {
        csv.push_str(&format!(
            "{},{}\n",
            fmt6(units::pa_to_mpa(*sigma_pa)),
            fmt6(*v_pi)
        ));
    }
    eprintln!("{}", specimen_echo(&spec));
    eprintln!("{} stress points swept, {elapsed:.2} s", rows.len());
    write_output(args.out.as_deref(), &csv)
}

fn cmd_catalog() -> Result<(), CliError> {
    println!(
        "built-in specimens (electroplated gold; sigma0 is the published residual stress,\n\
         V_PI the measured pull-in window; specimens are stored stress-free)\n"
    );
    println!(
        "{:<15} {:<10} {:>7} {:>6} {:>6} {:>6} {:>6} {:>10}  {}",
        "id", "bc", "L_um", "w_um", "t_um", "g0_um", "y_um", "sigma0_MPa", "measured_VPI_V"
    );
    for entry in catalog::load_catalog() {
        let s = &entry.specimen;
        let rise = if s.bc == BoundaryCondition::Cantilever {
            format!("{:.3}", units::m_to_um(s.tip_rise()))
        } else {
            "-".to_string()
        };
        let sigma = match entry.published_prestress {
            Some(p) => format!("{:.0}", units::pa_to_mpa(p)),
            None => "-".to_string(),
        };
        let mut line = format!(
            "{:<15} {:<10} {:>7.1} {:>6.1} {:>6.3} {:>6.3} {:>6} {:>10}  {:.0}-{:.0}",
            s.name,
            s.bc.label(),
            units::m_to_um(s.length),
            units::m_to_um(s.section.width),
            units::m_to_um(s.section.thickness),
            units::m_to_um(s.gap0),
            rise,
            sigma,
            entry.measured_vpi.0,
            entry.measured_vpi.1,
        );
        if entry.incomplete {
            line.push_str("  [incomplete: only t+g was measured]");
        }
        println!("{line}");
    }
    Ok(())
}

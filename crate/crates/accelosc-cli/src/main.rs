//! Command-line front end for the accelerated-oscillator toolkit: single
//! evaluations, parameter sweeps, and CSV/JSON emission.
//!
//! Every run is a pure function of argv: no config files, no environment, no
//! timestamps, so identical invocations produce byte-identical output.
//! Floating-point CSV fields are printed with 17 significant digits and JSON
//! numbers round-trip exactly.
//!
//! Exit codes: 0 success; 2 argument or domain errors (one-line reason on
//! stderr); 3 numeric non-convergence or non-finite evaluations; 1 I/O
//! failures.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use accelosc::commutator::{
    commutator_closed_form, commutator_numeric, variance_p, variance_x, DimensionlessParams,
    WindowSpec,
};
use accelosc::model::{OscillatorParams, PhysicalConstants};
use accelosc::quadrature::QuadratureSpec;
use accelosc::response::{integrate_time_domain, steady_amplitude, DriveSpec};
use accelosc::spectrum::{spectral_density, unruh_temperature};
use accelosc::thermofield::{build_fock, thermal_expectations, TwoModeFock};
use accelosc::worldline::{hyperbolic_worldline, lad_self_force, Worldline};

#[derive(Parser)]
#[command(
    name = "accelosc",
    version,
    about = "Radiation reaction, thermal spectra, and commutator integrals \
             for a uniformly accelerated charged oscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Position-momentum commutator as a windowed spectral integral
    Commutator(CommutatorArgs),
    /// Position and momentum variances and their uncertainty product
    Uncertainty(UncertaintyArgs),
    /// Field spectral density samples across a frequency range
    Spectrum(SpectrumArgs),
    /// Unruh-Davies temperature for a proper acceleration
    Unruh(UnruhArgs),
    /// Time-domain oscillator trajectory with steady-state extraction
    Trajectory(TrajectoryArgs),
    /// Hyperbolic worldline samples with the self-force cancellation check
    Worldline(WorldlineArgs),
    /// Thermal expectations in the two-mode squeezed vacuum
    Thermofield(ThermofieldArgs),
    /// Sweep one variable and emit CSV, one row per point
    #[command(subcommand)]
    Sweep(SweepTarget),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scale {
    Linear,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepVar {
    /// Dimensionless acceleration s = a/(c omega0)
    S,
    /// Thermal parameter alpha = pi/s
    Alpha,
    /// Drive frequency (rad/s)
    OmegaDrive,
    /// Fock-space occupation cutoff
    Nmax,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CommutatorArgs {
    /// Dimensionless acceleration s = a/(c omega0)
    #[arg(long)]
    s: f64,
    /// Dimensionless damping g = gamma*omega0
    #[arg(long)]
    g: f64,
    /// Integration window: half, sym:W, or full:L
    #[arg(long, default_value = "half")]
    window: String,
    /// Relative tolerance for the adaptive quadrature
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct UncertaintyArgs {
    #[arg(long)]
    s: f64,
    #[arg(long)]
    g: f64,
    /// Integration window: half, sym:W, or full:L
    #[arg(long, default_value = "half")]
    window: String,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SpectrumArgs {
    /// Oscillator resonance frequency omega0 (rad/s)
    #[arg(long)]
    omega0: f64,
    /// Dimensionless acceleration s = a/(c omega0)
    #[arg(long)]
    s: f64,
    /// Range start, in units of omega0
    #[arg(long)]
    start: f64,
    /// Range stop, in units of omega0
    #[arg(long)]
    stop: f64,
    #[arg(long)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    scale: Scale,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct UnruhArgs {
    /// Proper acceleration (cm/s^2)
    #[arg(long)]
    accel: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct TrajectoryArgs {
    /// Oscillator resonance frequency omega0 (rad/s)
    #[arg(long)]
    omega0: f64,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    g: f64,
    /// Drive as E0,OMEGA,PHASE (statvolt/cm, rad/s, rad)
    #[arg(long)]
    drive: String,
    /// Integration length (s)
    #[arg(long)]
    duration: f64,
    /// Time step (s)
    #[arg(long)]
    dt: f64,
    /// Write the t,x,v CSV here; the fit summary then goes to stdout.
    /// Without --out the CSV goes to stdout and the summary to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct WorldlineArgs {
    /// Proper acceleration (cm/s^2)
    #[arg(long)]
    accel: f64,
    /// Half-range of dimensionless proper time a*tau/c to sample
    #[arg(long)]
    tau_range: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Write the worldline CSV here; the residual summary then goes to
    /// stdout. Without --out the CSV goes to stdout and the summary to
    /// stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ThermofieldArgs {
    /// Thermal parameter alpha = pi*c*omega0/a
    #[arg(long)]
    alpha: f64,
    /// Fock-space occupation cutoff per mode
    #[arg(long, default_value_t = 40)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SweepOpts {
    #[arg(long, value_enum)]
    var: SweepVar,
    #[arg(long)]
    start: f64,
    #[arg(long)]
    stop: f64,
    #[arg(long)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    scale: Scale,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SweepTarget {
    /// Commutator value across s (fixed g and window)
    #[command(allow_negative_numbers = true)]
    Commutator {
        #[command(flatten)]
        sweep: SweepOpts,
        #[arg(long)]
        g: f64,
        #[arg(long, default_value = "half")]
        window: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Variances and uncertainty product across s (fixed g and window)
    #[command(allow_negative_numbers = true)]
    Uncertainty {
        #[command(flatten)]
        sweep: SweepOpts,
        #[arg(long)]
        g: f64,
        #[arg(long, default_value = "half")]
        window: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Thermal expectations across alpha (fixed nmax) or across nmax
    /// (fixed alpha)
    #[command(allow_negative_numbers = true)]
    Thermofield {
        #[command(flatten)]
        sweep: SweepOpts,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Frequency-domain steady-state amplitude across the drive frequency
    #[command(allow_negative_numbers = true)]
    Response {
        #[command(flatten)]
        sweep: SweepOpts,
        #[arg(long)]
        omega0: f64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        g: f64,
        /// Drive field amplitude E0 (statvolt/cm)
        #[arg(long)]
        amplitude: f64,
        #[arg(long, default_value_t = 0.0)]
        phase: f64,
    },
}

enum CliError {
    Physics(accelosc::Error),
    Io(io::Error),
    Usage(String),
}

impl From<accelosc::Error> for CliError {
    fn from(e: accelosc::Error) -> Self {
        CliError::Physics(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Physics(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io: {e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Physics(e) => match e {
                accelosc::Error::Domain(_)
                | accelosc::Error::Resolution(_)
                | accelosc::Error::Truncation(_) => 2,
                accelosc::Error::NonConvergence { .. }
                | accelosc::Error::NonFiniteEvaluation { .. } => 3,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Commutator(args) => run_commutator(args),
        Command::Uncertainty(args) => run_uncertainty(args),
        Command::Spectrum(args) => run_spectrum(args),
        Command::Unruh(args) => run_unruh(args),
        Command::Trajectory(args) => run_trajectory(args),
        Command::Worldline(args) => run_worldline(args),
        Command::Thermofield(args) => run_thermofield(args),
        Command::Sweep(target) => run_sweep(target),
    }
}

/// 17-significant-digit float field for CSV.
fn csv_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_window(token: &str) -> Result<WindowSpec, CliError> {
    if token == "half" {
        return Ok(WindowSpec::FrozenHalfResonance);
    }
    if let Some(rest) = token.strip_prefix("sym:") {
        let half_width: f64 = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("cannot parse window half-width {rest:?}")))?;
        return Ok(WindowSpec::SymmetricResonance { half_width });
    }
    if let Some(rest) = token.strip_prefix("full:") {
        let cutoff: f64 = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("cannot parse window cutoff {rest:?}")))?;
        return Ok(WindowSpec::FullAxis { cutoff });
    }
    Err(CliError::Usage(format!(
        "window must be half, sym:W, or full:L, got {token:?}"
    )))
}

fn quad_spec(tol: Option<f64>) -> QuadratureSpec {
    match tol {
        Some(rel_tol) => QuadratureSpec {
            rel_tol,
            ..QuadratureSpec::default()
        },
        None => QuadratureSpec::default(),
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;
    println!("{text}");
    Ok(())
}

fn sweep_grid(opts: &SweepOpts) -> Result<Vec<f64>, CliError> {
    if opts.points < 2 {
        return Err(CliError::Usage(format!(
            "sweep needs at least 2 points, got {}",
            opts.points
        )));
    }
    if !(opts.start.is_finite() && opts.stop.is_finite() && opts.start < opts.stop) {
        return Err(CliError::Usage(format!(
            "sweep range must satisfy start < stop with finite bounds, got [{}, {}]",
            opts.start, opts.stop
        )));
    }
    if matches!(opts.scale, Scale::Log) && opts.start <= 0.0 {
        return Err(CliError::Usage(format!(
            "log scale requires start > 0, got {}",
            opts.start
        )));
    }
    let n = opts.points;
    let grid = (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            match opts.scale {
                Scale::Linear => opts.start + (opts.stop - opts.start) * t,
                Scale::Log => (opts.start.ln() + (opts.stop.ln() - opts.start.ln()) * t).exp(),
            }
        })
        .collect();
    Ok(grid)
}

#[derive(Serialize)]
struct CommutatorOut<'a> {
    s: f64,
    g: f64,
    window: &'a str,
    value: f64,
    error_estimate: f64,
    evaluations: u64,
}

fn run_commutator(args: CommutatorArgs) -> Result<(), CliError> {
    let params = DimensionlessParams::new(args.s, args.g)?;
    let window = parse_window(&args.window)?;
    let spec = quad_spec(args.tol);
    let result = commutator_numeric(params, window, &spec)?;
    let quad = result.quadrature.expect("numeric result carries quadrature");
    let out = CommutatorOut {
        s: args.s,
        g: args.g,
        window: &args.window,
        value: result.value,
        error_estimate: quad.error_estimate,
        evaluations: quad.evaluations,
    };
    match args.format {
        Format::Json => print_json(&out)?,
        Format::Csv => {
            let mut text = String::from("s,g,window,value,error_estimate,evaluations\n");
            text.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_f64(out.s),
                csv_f64(out.g),
                out.window,
                csv_f64(out.value),
                csv_f64(out.error_estimate),
                out.evaluations
            ));
            emit(None, &text)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct UncertaintyOut {
    dx2: f64,
    dp2: f64,
    product: f64,
    closed_form: f64,
}

fn run_uncertainty(args: UncertaintyArgs) -> Result<(), CliError> {
    let out = uncertainty_record(args.s, args.g, &args.window, args.tol)?;
    match args.format {
        Format::Json => print_json(&out)?,
        Format::Csv => {
            let mut text = String::from("dx2,dp2,product,closed_form\n");
            text.push_str(&format!(
                "{},{},{},{}\n",
                csv_f64(out.dx2),
                csv_f64(out.dp2),
                csv_f64(out.product),
                csv_f64(out.closed_form)
            ));
            emit(None, &text)?;
        }
    }
    Ok(())
}

fn uncertainty_record(
    s: f64,
    g: f64,
    window_token: &str,
    tol: Option<f64>,
) -> Result<UncertaintyOut, CliError> {
    let params = DimensionlessParams::new(s, g)?;
    let window = parse_window(window_token)?;
    let spec = quad_spec(tol);
    let dx2 = variance_x(params, window, &spec)?;
    let dp2 = variance_p(params, window, &spec)?;
    Ok(UncertaintyOut {
        dx2,
        dp2,
        product: (dx2 * dp2).sqrt(),
        closed_form: commutator_closed_form(s)?,
    })
}

fn run_spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    let constants = PhysicalConstants::default();
    let params = OscillatorParams::from_dimensionless(args.omega0, args.s, 1e-8, &constants)?;
    let grid = sweep_grid(&SweepOpts {
        var: SweepVar::S,
        start: args.start,
        stop: args.stop,
        points: args.points,
        scale: args.scale,
        out: None,
    })?;
    let mut text = String::from("omega,density,vacuum_part,thermal_part\n");
    for u in grid {
        let point = spectral_density(u * args.omega0, params.accel, &constants)?;
        text.push_str(&format!(
            "{},{},{},{}\n",
            csv_f64(point.omega),
            csv_f64(point.density),
            csv_f64(point.vacuum_part),
            csv_f64(point.thermal_part)
        ));
    }
    emit(args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct UnruhOut {
    accel: f64,
    temperature_k: f64,
}

fn run_unruh(args: UnruhArgs) -> Result<(), CliError> {
    let constants = PhysicalConstants::default();
    let out = UnruhOut {
        accel: args.accel,
        temperature_k: unruh_temperature(args.accel, &constants)?,
    };
    match args.format {
        Format::Json => print_json(&out)?,
        Format::Csv => {
            let text = format!(
                "accel,temperature_k\n{},{}\n",
                csv_f64(out.accel),
                csv_f64(out.temperature_k)
            );
            emit(None, &text)?;
        }
    }
    Ok(())
}

fn parse_drive(text: &str) -> Result<DriveSpec, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "drive must be E0,OMEGA,PHASE, got {text:?}"
        )));
    }
    let mut values = [0.0; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("cannot parse drive component {part:?}")))?;
    }
    Ok(DriveSpec::new(values[0], values[1], values[2])?)
}

#[derive(Serialize)]
struct TrajectorySummary {
    fitted_amplitude: f64,
    analytic_amplitude: f64,
    relative_error: f64,
}

fn run_trajectory(args: TrajectoryArgs) -> Result<(), CliError> {
    let constants = PhysicalConstants::default();
    let params = OscillatorParams::from_dimensionless(args.omega0, args.s, args.g, &constants)?;
    let drive = parse_drive(&args.drive)?;
    let record = integrate_time_domain(&drive, &params, &constants, args.duration, args.dt)?;

    let mut csv = String::from("t,x,v\n");
    for i in 0..record.len() {
        csv.push_str(&format!(
            "{},{},{}\n",
            csv_f64(record.times[i]),
            csv_f64(record.positions[i]),
            csv_f64(record.velocities[i])
        ));
    }

    let fitted = record.steady_state_amplitude(drive.omega_drive, params.damping_rate())?;
    let analytic = steady_amplitude(&drive, &params, &constants).norm();
    let relative_error = if analytic == 0.0 {
        fitted.abs()
    } else {
        (fitted - analytic).abs() / analytic
    };
    let summary = TrajectorySummary {
        fitted_amplitude: fitted,
        analytic_amplitude: analytic,
        relative_error,
    };
    let summary_text = serde_json::to_string_pretty(&summary)
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;

    match args.out.as_deref() {
        Some(path) => {
            fs::write(path, &csv)?;
            println!("{summary_text}");
        }
        None => {
            io::stdout().write_all(csv.as_bytes())?;
            eprintln!("{summary_text}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WorldlineSummary {
    max_self_force_ratio: f64,
}

fn run_worldline(args: WorldlineArgs) -> Result<(), CliError> {
    if args.points < 2 {
        return Err(CliError::Usage(format!(
            "worldline needs at least 2 points, got {}",
            args.points
        )));
    }
    if !(args.tau_range.is_finite() && args.tau_range > 0.0) {
        return Err(CliError::Usage(format!(
            "tau-range must be finite and positive, got {}",
            args.tau_range
        )));
    }
    let constants = PhysicalConstants::default();
    let worldline: Worldline = hyperbolic_worldline(args.accel, &constants)?;
    let damping = constants.damping_time();
    let tau_unit = constants.c / args.accel;

    let mut csv = String::from("tau,ct,x,y,z,u0,u1,u2,u3\n");
    let mut max_ratio: f64 = 0.0;
    for i in 0..args.points {
        let phi = -args.tau_range
            + 2.0 * args.tau_range * i as f64 / (args.points - 1) as f64;
        let tau = phi * tau_unit;
        let pos = worldline.position(tau);
        let vel = worldline.velocity(tau)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            csv_f64(tau),
            csv_f64(pos.0[0]),
            csv_f64(pos.0[1]),
            csv_f64(pos.0[2]),
            csv_f64(pos.0[3]),
            csv_f64(vel.0[0]),
            csv_f64(vel.0[1]),
            csv_f64(vel.0[2]),
            csv_f64(vel.0[3])
        ));
        let lad = lad_self_force(&worldline, tau, damping, &constants)?;
        let ratio = lad.total_self.euclidean_norm() / lad.schott.euclidean_norm();
        max_ratio = max_ratio.max(ratio);
    }

    let summary = WorldlineSummary {
        max_self_force_ratio: max_ratio,
    };
    let summary_text = serde_json::to_string_pretty(&summary)
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;
    match args.out.as_deref() {
        Some(path) => {
            fs::write(path, &csv)?;
            println!("{summary_text}");
        }
        None => {
            io::stdout().write_all(csv.as_bytes())?;
            eprintln!("{summary_text}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ThermofieldOut {
    alpha: f64,
    theta: f64,
    n_max: usize,
    number: f64,
    commutator: f64,
    closed_number: f64,
    closed_commutator: f64,
}

fn run_thermofield(args: ThermofieldArgs) -> Result<(), CliError> {
    let fock = build_fock(args.nmax)?;
    let ex = thermal_expectations(&fock, args.alpha)?;
    let out = ThermofieldOut {
        alpha: args.alpha,
        theta: ex.theta,
        n_max: args.nmax,
        number: ex.number,
        commutator: ex.commutator,
        closed_number: ex.closed_number,
        closed_commutator: ex.closed_commutator,
    };
    match args.format {
        Format::Json => print_json(&out)?,
        Format::Csv => {
            let mut text =
                String::from("alpha,theta,number,commutator,closed_number,closed_commutator\n");
            text.push_str(&thermo_row(args.alpha, &ex));
            emit(None, &text)?;
        }
    }
    Ok(())
}

fn thermo_row(alpha: f64, ex: &accelosc::thermofield::ThermalExpectations) -> String {
    format!(
        "{},{},{},{},{},{}\n",
        csv_f64(alpha),
        csv_f64(ex.theta),
        csv_f64(ex.number),
        csv_f64(ex.commutator),
        csv_f64(ex.closed_number),
        csv_f64(ex.closed_commutator)
    )
}

fn run_sweep(target: SweepTarget) -> Result<(), CliError> {
    match target {
        SweepTarget::Commutator {
            sweep,
            g,
            window,
            tol,
        } => {
            require_var(&sweep, SweepVar::S, "sweep commutator varies s")?;
            let window_spec = parse_window(&window)?;
            let spec = quad_spec(tol);
            let grid = sweep_grid(&sweep)?;
            let rows: Vec<Result<String, accelosc::Error>> = grid
                .par_iter()
                .map(|&s| {
                    let params = DimensionlessParams::new(s, g)?;
                    let result = commutator_numeric(params, window_spec, &spec)?;
                    let quad = result.quadrature.expect("numeric result carries quadrature");
                    Ok(format!(
                        "{},{},{},{}\n",
                        csv_f64(s),
                        csv_f64(result.value),
                        csv_f64(quad.error_estimate),
                        quad.evaluations
                    ))
                })
                .collect();
            write_sweep(
                sweep.out.as_deref(),
                "s,value,error_estimate,evaluations\n",
                rows,
            )
        }
        SweepTarget::Uncertainty {
            sweep,
            g,
            window,
            tol,
        } => {
            require_var(&sweep, SweepVar::S, "sweep uncertainty varies s")?;
            let window_spec = parse_window(&window)?;
            let spec = quad_spec(tol);
            let grid = sweep_grid(&sweep)?;
            let rows: Vec<Result<String, accelosc::Error>> = grid
                .par_iter()
                .map(|&s| {
                    let params = DimensionlessParams::new(s, g)?;
                    let dx2 = variance_x(params, window_spec, &spec)?;
                    let dp2 = variance_p(params, window_spec, &spec)?;
                    Ok(format!(
                        "{},{},{},{},{}\n",
                        csv_f64(s),
                        csv_f64(dx2),
                        csv_f64(dp2),
                        csv_f64((dx2 * dp2).sqrt()),
                        csv_f64(commutator_closed_form(s)?)
                    ))
                })
                .collect();
            write_sweep(
                sweep.out.as_deref(),
                "s,dx2,dp2,product,closed_form\n",
                rows,
            )
        }
        SweepTarget::Thermofield { sweep, alpha, nmax } => match sweep.var {
            SweepVar::Alpha => {
                if alpha.is_some() {
                    return Err(CliError::Usage(
                        "sweep thermofield --var alpha sweeps alpha; do not also fix --alpha"
                            .into(),
                    ));
                }
                let fock = build_fock(nmax.unwrap_or(40))?;
                let grid = sweep_grid(&sweep)?;
                let rows: Vec<Result<String, accelosc::Error>> = grid
                    .par_iter()
                    .map(|&a| Ok(thermo_row(a, &thermal_expectations(&fock, a)?)))
                    .collect();
                write_sweep(
                    sweep.out.as_deref(),
                    "alpha,theta,number,commutator,closed_number,closed_commutator\n",
                    rows,
                )
            }
            SweepVar::Nmax => {
                let Some(alpha) = alpha else {
                    return Err(CliError::Usage(
                        "sweep thermofield --var nmax needs a fixed --alpha".into(),
                    ));
                };
                if nmax.is_some() {
                    return Err(CliError::Usage(
                        "sweep thermofield --var nmax sweeps nmax; do not also fix --nmax".into(),
                    ));
                }
                let grid = integer_grid(&sweep)?;
                let rows: Vec<Result<String, accelosc::Error>> = grid
                    .par_iter()
                    .map(|&n| {
                        let fock: TwoModeFock = build_fock(n)?;
                        let ex = thermal_expectations(&fock, alpha)?;
                        Ok(format!(
                            "{},{},{},{},{},{}\n",
                            n,
                            csv_f64(ex.theta),
                            csv_f64(ex.number),
                            csv_f64(ex.commutator),
                            csv_f64(ex.closed_number),
                            csv_f64(ex.closed_commutator)
                        ))
                    })
                    .collect();
                write_sweep(
                    sweep.out.as_deref(),
                    "n_max,theta,number,commutator,closed_number,closed_commutator\n",
                    rows,
                )
            }
            _ => Err(CliError::Usage(
                "sweep thermofield varies alpha or nmax".into(),
            )),
        },
        SweepTarget::Response {
            sweep,
            omega0,
            s,
            g,
            amplitude,
            phase,
        } => {
            require_var(
                &sweep,
                SweepVar::OmegaDrive,
                "sweep response varies omega-drive",
            )?;
            let constants = PhysicalConstants::default();
            let params = OscillatorParams::from_dimensionless(omega0, s, g, &constants)?;
            let grid = sweep_grid(&sweep)?;
            let rows: Vec<Result<String, accelosc::Error>> = grid
                .par_iter()
                .map(|&omega_drive| {
                    let drive = DriveSpec::new(amplitude, omega_drive, phase)?;
                    let x1 = steady_amplitude(&drive, &params, &constants);
                    Ok(format!(
                        "{},{},{},{}\n",
                        csv_f64(omega_drive),
                        csv_f64(x1.re),
                        csv_f64(x1.im),
                        csv_f64(x1.norm())
                    ))
                })
                .collect();
            write_sweep(
                sweep.out.as_deref(),
                "omega_drive,real,imag,magnitude\n",
                rows,
            )
        }
    }
}

fn require_var(sweep: &SweepOpts, expected: SweepVar, reason: &str) -> Result<(), CliError> {
    if std::mem::discriminant(&sweep.var) == std::mem::discriminant(&expected) {
        Ok(())
    } else {
        Err(CliError::Usage(reason.into()))
    }
}

/// Rounds a sweep grid to integers, insisting the rounded column stays
/// strictly increasing so the emitted CSV keeps one row per requested point.
fn integer_grid(sweep: &SweepOpts) -> Result<Vec<usize>, CliError> {
    let grid = sweep_grid(sweep)?;
    let ints: Vec<usize> = grid.iter().map(|&v| v.round().max(0.0) as usize).collect();
    if ints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(
            "integer sweep grid collapsed; use fewer points or a wider range".into(),
        ));
    }
    Ok(ints)
}

fn write_sweep(
    out: Option<&Path>,
    header: &str,
    rows: Vec<Result<String, accelosc::Error>>,
) -> Result<(), CliError> {
    let mut text = String::from(header);
    for row in rows {
        text.push_str(&row?);
    }
    emit(out, &text)
}

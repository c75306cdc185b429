//! Command-line front end of the `lateral-cp` binary.
//!
//! Exit codes: 0 success, 1 other failure, 2 at least one row did not
//! converge, 3 unknown material, 4 invalid range or request (including
//! malformed arguments).

mod table;
mod tasks;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use table::{Cell, Dataset, Format, Metadata};
pub use tasks::{
    compare_asymptotics, has_nonconvergence, run_preset, run_spectrum, run_sweep, Preset, Quantity, Scale, SweepSpec,
    ASYMPTOTICS_COLUMNS, SPECTRUM_COLUMNS,
};

use crate::error::Error;
use crate::observables::{GammaMode, SolverOptions};
use crate::planar_em::MaterialRegistry;
use crate::quadrature::QuadratureConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_NON_CONVERGENCE: i32 = 2;
pub const EXIT_UNKNOWN_MATERIAL: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lateral-cp", version, about = "Lateral Casimir-Polder force on a circular emitter above a surface")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a quantity over a range of distances.
    Sweep(SweepArgs),
    /// Polar emission spectrum at one distance.
    Spectrum(SpectrumArgs),
    /// Full force against the near-field and retarded laws.
    Asymptotics(AsymptoticsArgs),
    /// Material registry.
    Materials {
        #[command(subcommand)]
        command: MaterialsCommand,
    },
    /// Figure-reproduction dataset.
    Preset(PresetArgs),
}

#[derive(Debug, Subcommand)]
enum MaterialsCommand {
    /// Print the registry.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaArg {
    Total,
    FreeSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    /// Decay rate used in exp(-Γt) and the velocity.
    #[arg(long, value_enum, default_value_t = GammaArg::Total)]
    gamma_mode: GammaArg,
    /// Worker threads for parallel rows (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Quantity::Force)]
    quantity: Quantity,
    #[arg(long, default_value = "gold")]
    material: String,
    #[arg(long, default_value_t = 100.0)]
    zmin_nm: f64,
    #[arg(long, default_value_t = 1000.0)]
    zmax_nm: f64,
    #[arg(long, default_value_t = 500)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    scale: Scale,
    /// Time after excitation for the force quantities.
    #[arg(long, default_value_t = 0.0)]
    t_ns: f64,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long, default_value = "gold")]
    material: String,
    #[arg(long)]
    z_nm: f64,
    #[arg(long, default_value_t = 720)]
    n_phi: usize,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct AsymptoticsArgs {
    #[arg(long, default_value = "gold")]
    material: String,
    /// Comma-separated distances in nm.
    #[arg(long, value_delimiter = ',', default_value = "4.26,8.52,42.6,213,852,4260,8520")]
    z_list: Vec<f64>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct PresetArgs {
    #[arg(value_enum)]
    name: Preset,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            quadrature: QuadratureConfig::default().with_rel_tol(self.rel_tol),
            gamma_mode: match self.gamma_mode {
                GammaArg::Total => GammaMode::Total,
                GammaArg::FreeSpace => GammaMode::FreeSpace,
            },
        }
    }
}

/// Maps a library error to the process exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnknownMaterial(_) => EXIT_UNKNOWN_MATERIAL,
        Error::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
        Error::InvalidRange(_)
        | Error::InvalidConfig(_)
        | Error::InvalidDomain(_)
        | Error::InvalidEmitter(_)
        | Error::UnsupportedMaterial { .. } => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

fn emit(data: &Dataset, output: &OutputArgs, stdout: &mut dyn Write) -> io::Result<()> {
    let format = match output.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            data.write(format, &mut w)?;
            w.flush()
        }
        None => data.write(format, stdout),
    }
}

fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(job))
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Output goes to `stdout` unless `--out` is given.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let registry = match MaterialRegistry::from_env() {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_FAILURE;
        }
    };

    let (result, output) = match &cli.command {
        Command::Materials {
            command: MaterialsCommand::List,
        } => {
            return match list_materials(&registry, stdout) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_FAILURE
                }
            };
        }
        Command::Sweep(a) => {
            let spec = SweepSpec {
                quantity: a.quantity,
                material: a.material.clone(),
                z_min: a.zmin_nm * 1e-9,
                z_max: a.zmax_nm * 1e-9,
                n_points: a.points,
                scale: a.scale,
                t: a.t_ns * 1e-9,
                options: a.solver.options(),
            };
            let r = with_workers(a.solver.workers, || run_sweep(&spec, &registry)).and_then(|r| r);
            (r, &a.output)
        }
        Command::Spectrum(a) => {
            let r = with_workers(a.solver.workers, || {
                run_spectrum(&a.material, a.z_nm * 1e-9, a.n_phi, &a.solver.options(), &registry)
            })
            .and_then(|r| r);
            (r, &a.output)
        }
        Command::Asymptotics(a) => {
            let z: Vec<f64> = a.z_list.iter().map(|z| z * 1e-9).collect();
            let r = with_workers(a.solver.workers, || {
                compare_asymptotics(&a.material, &z, &a.solver.options(), &registry)
            })
            .and_then(|r| r);
            (r, &a.output)
        }
        Command::Preset(a) => {
            let r = with_workers(a.solver.workers, || run_preset(a.name, &a.solver.options(), &registry))
                .and_then(|r| r);
            (r, &a.output)
        }
    };

    match result {
        Ok(data) => {
            if let Err(e) = emit(&data, output, stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_FAILURE;
            }
            if has_nonconvergence(&data) {
                let _ = writeln!(stderr, "warning: some rows did not converge");
                EXIT_NON_CONVERGENCE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn list_materials(registry: &MaterialRegistry, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "# registry_sha256={}", registry.hash())?;
    writeln!(out, "name,eps_re,eps_im,perfect_conductor")?;
    for m in registry.iter() {
        match m.epsilon() {
            Some(e) => writeln!(out, "{},{},{},false", m.name(), e.re, e.im)?,
            None => writeln!(out, "{},,,true", m.name())?,
        }
    }
    Ok(())
}

//! `p5` command-line front end. [`run`] parses arguments, resolves a
//! [`RunConfig`], runs one command and returns its output and exit code.

mod args;
pub mod commands;
mod config;
mod error;
mod render;

pub use args::{Cli, Command, DetOp, GlobalArgs, Hbar, Kernel, Method, TrOp, VerifyOp};
pub use config::{ConfigFile, ConventionFlags, OutputFormat, RunConfig, MAX_GENUS_LIMIT, MAX_ORDER_LIMIT, N_POINTS_LIMIT};
pub use error::CliError;
pub use render::Rendered;

use clap::error::ErrorKind;
use clap::Parser;
use commands::Context;
use p5_algebra::par::Exec;
use p5_numerics::{HbarNormalization, OdeMethod};
use p5_toprec::{resolve_cache_dir, Convention};
use std::ffi::OsString;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub const DEFAULT_MAX_GENUS: usize = 5;
pub const DEFAULT_MAX_ORDER: usize = 8;
pub const DEFAULT_N_POINTS: usize = 2;

fn taylor_tol() -> f64 {
    p5_numerics::OdeConfig::default().tol
}

const DOPRI5_TOL: f64 = 1e-12;

/// Flags override the settings file, which overrides the defaults.
pub fn resolve_config(global: &GlobalArgs, command: &Command) -> Result<RunConfig, CliError> {
    let file = match &global.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let (max_genus, max_order, n_points, tol) = match command {
        Command::Sigma { max_k } => (None, *max_k, None, None),
        Command::Tau { max_g } => (*max_g, None, None, None),
        Command::Tr { op: TrOp::FreeEnergy { max_g } } => (*max_g, None, None, None),
        Command::Tr { op: TrOp::Corr { g, n } } => (Some(*g), None, Some(*n), None),
        Command::Verify { op: VerifyOp::Identity { max_g } } => (*max_g, None, None, None),
        Command::Verify { op: VerifyOp::Hypotheses { n_max, g_max } } => (*g_max, None, *n_max, None),
        Command::Verify { op: VerifyOp::Table } => (None, None, None, None),
        Command::Wkb { max_order, .. } => (None, *max_order, None, None),
        Command::Det { op: DetOp::Corr { n, order } } => (None, *order, *n, None),
        Command::Ode { tol, .. } => (None, None, None, *tol),
        Command::Fredholm { .. } => (None, None, None, None),
        Command::Gap { max_g, .. } => (*max_g, None, None, None),
    };
    let default_tol = match command {
        Command::Ode { method: Method::Dopri5, .. } => DOPRI5_TOL,
        _ => taylor_tol(),
    };
    let cfg = RunConfig {
        cache_dir: match (&global.cache, &file.cache_dir) {
            (None, Some(d)) if std::env::var_os(p5_toprec::CACHE_ENV).is_none() => d.clone(),
            _ => resolve_cache_dir(global.cache.as_deref()),
        },
        output_format: global.format.or(file.output_format).unwrap_or(match command {
            Command::Ode { .. } => OutputFormat::Csv,
            _ => OutputFormat::Json,
        }),
        max_genus: max_genus.or(file.max_genus).unwrap_or(match command {
            Command::Gap { .. } => p5_numerics::GapConfig::default().max_g,
            _ => DEFAULT_MAX_GENUS,
        }),
        max_order: max_order.or(file.max_order).unwrap_or(DEFAULT_MAX_ORDER),
        n_points: n_points.or(file.n_points).unwrap_or(DEFAULT_N_POINTS),
        float_tol: tol.or(file.float_tol).unwrap_or(default_tol),
        convention_flags: file.convention_flags.unwrap_or(ConventionFlags { appendix_b_normalization: true }),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(cli: &Cli, ctx: &Context) -> Result<Rendered, CliError> {
    let c = &ctx.config;
    match &cli.command {
        Command::Sigma { .. } => commands::sigma(c.max_order),
        Command::Tau { .. } => commands::tau(c.max_genus),
        Command::Tr { op: TrOp::Corr { .. } } => commands::tr_corr(ctx, c.max_genus, c.n_points),
        Command::Tr { op: TrOp::FreeEnergy { .. } } => commands::tr_free_energy(ctx, c.max_genus),
        Command::Verify { op: VerifyOp::Identity { .. } } => commands::verify_identity(ctx, c.max_genus),
        Command::Verify { op: VerifyOp::Hypotheses { .. } } => commands::verify_hypotheses_cmd(c.n_points, c.max_genus),
        Command::Verify { op: VerifyOp::Table } => commands::verify_table(ctx),
        Command::Wkb { check_regularity, .. } => commands::wkb(ctx, c.max_order, *check_regularity),
        Command::Det { op: DetOp::Corr { .. } } => commands::det_corr(c.n_points, c.max_order),
        Command::Ode { s_max, grid, method, .. } => {
            let m = match method {
                Method::Taylor => OdeMethod::Taylor,
                Method::Dopri5 => OdeMethod::Dopri5,
            };
            commands::ode(*s_max, c.float_tol, *grid, m)
        }
        Command::Fredholm { s, nodes } => commands::fredholm(ctx, *s, *nodes),
        Command::Gap { s, nodes, hbar, .. } => {
            let h = match hbar {
                Hbar::OdeConsistent => HbarNormalization::OdeConsistent,
                Hbar::Printed => HbarNormalization::Printed,
            };
            commands::gap(ctx, s, c.max_genus, *nodes, h, taylor_tol())
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let config = resolve_config(&cli.global, &cli.command)?;
    let format = config.output_format;
    let ctx = Context {
        exec: if cli.global.sequential { Exec::Sequential } else { Exec::default() },
        kernel: match cli.global.kernel {
            Kernel::PrintedRatio => Convention::PrintedRatio,
            Kernel::EynardOrantin => Convention::EynardOrantin,
        },
        use_cache: !cli.global.no_cache,
        config,
    };
    let rendered = with_threads(cli.global.threads, || dispatch(cli, &ctx))??;
    Ok(Outcome {
        code: if rendered.passed { EXIT_OK } else { EXIT_VERIFY },
        stdout: rendered.emit(format)?,
        stderr: String::new(),
    })
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        _ => Ok(f()),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

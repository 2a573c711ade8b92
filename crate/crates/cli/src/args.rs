use crate::config::OutputFormat;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "p5", version, about = "Painlevé-5 gap probability: σ-series, topological recursion, WKB and numerics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Correlator cache directory [env: P5_CACHE_DIR; default ./.p5cache].
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Disable the on-disk correlator cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// TOML or JSON settings file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads of the parallel loops.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run every loop sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Normalization of the recursion kernel.
    #[arg(long, global = true, value_enum, default_value_t = Kernel::PrintedRatio)]
    pub kernel: Kernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kernel {
    PrintedRatio,
    EynardOrantin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Taylor,
    Dopri5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Hbar {
    OdeConsistent,
    Printed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// σ_k coefficients with discrepancy records.
    Sigma {
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// τ̂_g coefficients of log τ̂.
    Tau {
        #[arg(long)]
        max_g: Option<usize>,
    },
    /// Topological recursion.
    Tr {
        #[command(subcommand)]
        op: TrOp,
    },
    /// Exact identity checks.
    Verify {
        #[command(subcommand)]
        op: VerifyOp,
    },
    /// WKB orders of the Lax-pair wave functions.
    Wkb {
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        check_regularity: bool,
    },
    /// Determinantal correlators.
    Det {
        #[command(subcommand)]
        op: DetOp,
    },
    /// σ-form ODE on a uniform grid (CSV by default).
    Ode {
        #[arg(long)]
        s_max: f64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 60)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Method::Taylor)]
        method: Method,
    },
    /// Sine-kernel Fredholm determinant on [0, s].
    Fredholm {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
    },
    /// ODE, Fredholm and large-s series side by side.
    Gap {
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        s: Vec<f64>,
        #[arg(long)]
        max_g: Option<usize>,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        #[arg(long, value_enum, default_value_t = Hbar::OdeConsistent)]
        hbar: Hbar,
    },
}

#[derive(Debug, Subcommand)]
pub enum TrOp {
    /// W_n^(g) from the recursion (cached).
    Corr {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
    },
    /// F^(g) for g = 0..=G.
    FreeEnergy {
        #[arg(long)]
        max_g: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyOp {
    /// F^(g) = τ̂_g for g = 0..=G.
    Identity {
        #[arg(long)]
        max_g: Option<usize>,
    },
    /// Determinantal hypotheses and det-vs-recursion comparison.
    Hypotheses {
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        g_max: Option<usize>,
    },
    /// Published correlator table against the recursion.
    Table,
}

#[derive(Debug, Subcommand)]
pub enum DetOp {
    /// Determinantal W_n through ħ^M at the sample points.
    Corr {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
}

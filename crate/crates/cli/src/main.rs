mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polariton_core::io::ModelConfig;
use polariton_core::verify::VerifyLevel;

use crate::commands::Output;
use crate::config::{parse_model, parse_times, parse_window, ModeArg, RunConfig};

#[derive(Parser)]
#[command(name = "polariton", version, about = "Lattice Wigner portraits, kernel propagation and oracle checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, global = true, env = "WIGNER_CONFIG")]
    config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,

    /// Number of quasi-momentum samples (even).
    #[arg(long, global = true)]
    k_count: Option<usize>,

    /// Lattice window `A:B`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,

    /// Comma-separated evolution times.
    #[arg(long, global = true)]
    times: Option<String>,

    /// jc, rabi, buck_sukumar, dispersive or tight_binding.
    #[arg(long, global = true)]
    model: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Wigner portrait of the configured state.
    Wigner,
    /// Portraits and marginals at each requested time.
    Evolve,
    /// Propagator kernel dump.
    Kernel,
    /// Position and momentum marginals.
    Marginals,
    /// Stationary-phase points of momentum-eigenstate diffusion.
    Caustics,
    /// Oracle comparison suite; exits nonzero on any failure.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        level: Level,
        /// Harness self-test: flip the kernel phase.
        #[arg(long, hide = true)]
        inject_kernel_sign_error: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Fast,
    Full,
}

fn build_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(m) = cli.mode {
        cfg.mode = m;
    }
    if let Some(k) = cli.k_count {
        cfg.grid.k_count = k;
    }
    if let Some(w) = &cli.window {
        cfg.grid.window = Some(parse_window(w)?);
    }
    if let Some(t) = &cli.times {
        cfg.times = parse_times(t)?;
    }
    if let Some(name) = &cli.model {
        let kind = parse_model(name)?;
        match &mut cfg.model {
            Some(m) => m.model = kind,
            None => {
                cfg.model = Some(ModelConfig {
                    model: kind,
                    omega: 1.0,
                    delta: 0.0,
                    g: 0.0,
                    big_omega: None,
                    n_max: None,
                    alpha_re: 0.0,
                    alpha_im: None,
                })
            }
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Command::Verify { level, inject_kernel_sign_error } = cli.command {
        let level = match level {
            Level::Fast => VerifyLevel::Fast,
            Level::Full => VerifyLevel::Full,
        };
        let out = cli.out.as_deref().map(Output::new).transpose()?;
        return commands::verify(level, inject_kernel_sign_error, out.as_ref());
    }
    let cfg = build_config(&cli)?;
    let dir = cli.out.clone().or_else(|| cfg.out.as_ref().map(|o| cfg.base.join(o))).unwrap_or_else(|| PathBuf::from("."));
    let out = Output::new(&dir)?;
    match cli.command {
        Command::Wigner => commands::wigner(&cfg, &out)?,
        Command::Evolve => commands::evolve(&cfg, &out)?,
        Command::Kernel => commands::kernel(&cfg, &out)?,
        Command::Marginals => commands::marginals(&cfg, &out)?,
        Command::Caustics => commands::caustic(&cfg, &out)?,
        Command::Verify { .. } => unreachable!(),
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

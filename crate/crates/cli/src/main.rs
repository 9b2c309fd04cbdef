use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use se2_coset_cli::builtins::{self, Selection};
use se2_coset_cli::{commands, output, run_acceptance, CliError, Result, RunConfig};

/// Fourier series on Z²\SE(2): lattice shells, coefficients, reconstruction,
/// Plancherel sums, convolutions and the acceptance suite.
#[derive(Parser, Debug)]
#[command(name = "se2coset", version)]
struct Cli {
    /// Configuration file; defaults are used for a missing file argument.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Builtin test function: bump, mode, character, pair (or `a,b` for convolve).
    #[arg(long, global = true, value_name = "NAME")]
    function: Option<String>,
    #[arg(long, global = true)]
    kmax: Option<usize>,
    #[arg(long = "rho-max", global = true)]
    rho_max: Option<f64>,
    /// Quadrature nodes per axis.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Irrep band for spectral sums (0 = margin rule).
    #[arg(long, global = true)]
    band: Option<usize>,
    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    print_config: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Enumerate lattice shells up to rho_max.
    Lattice,
    /// Spectral and direct coefficients of a builtin.
    Coeffs,
    /// Reconstruct a builtin from its series at seeded points.
    Reconstruct,
    /// Plancherel sums, spectral and direct.
    Plancherel,
    /// Convolution series against the direct action.
    Convolve,
    /// Run the acceptance criteria and write the report.
    Acceptance,
}

fn effective_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(d) = &cli.out {
        cfg.output.dir = d.clone();
    }
    if let Some(k) = cli.kmax {
        cfg.series.k_max = k;
    }
    if let Some(r) = cli.rho_max {
        cfg.series.rho_max = r;
    }
    if let Some(g) = cli.grid {
        cfg.quadrature.grid = g;
    }
    if let Some(b) = cli.band {
        cfg.series.band = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn pair(name: &str, k0: i64) -> Result<(builtins::TestFunction, builtins::TestFunction)> {
    if let Some((a, b)) = name.split_once(',') {
        return Ok((builtins::single(a.trim(), k0)?, builtins::single(b.trim(), k0)?));
    }
    match builtins::lookup(name, k0)? {
        Selection::Pair(a, b) => Ok((a, b)),
        Selection::Single(_) => Err(CliError::Usage(format!("convolve needs a pair, got `{name}`"))),
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cfg = effective_config(cli)?;
    if cli.print_config {
        print!("{}", cfg.print());
        return Ok(ExitCode::SUCCESS);
    }
    let Some(command) = cli.command else {
        return Err(CliError::Usage("a subcommand is required (see --help)".into()));
    };
    let k0 = cfg.sampling.mode_k0;
    let name = cli.function.as_deref();
    let written = match command {
        Command::Lattice => commands::lattice(&cfg)?,
        Command::Coeffs => commands::coeffs(&builtins::single(name.unwrap_or("bump"), k0)?, &cfg)?,
        Command::Reconstruct => commands::reconstruct(&builtins::single(name.unwrap_or("bump"), k0)?, &cfg)?,
        Command::Plancherel => commands::plancherel(&builtins::single(name.unwrap_or("bump"), k0)?, &cfg)?,
        Command::Convolve => {
            let (f1, f2) = pair(name.unwrap_or("pair"), k0)?;
            commands::convolve(&f1, &f2, &cfg)?
        }
        Command::Acceptance => {
            let report = run_acceptance(&cfg, |r| println!("{}", r.line()))?;
            let path = output::write(&cfg.output.dir, &cfg.output.report, &report.to_json())?;
            println!("{}", path.display());
            let pass = report.pass();
            println!("{}", if pass { "all criteria pass" } else { "some criteria failed" });
            return Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    };
    for p in written {
        println!("{}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("SE2COSET_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                se2_coset::par::init_global_threads(n);
            }
            _ => {
                eprintln!("se2coset: SE2COSET_THREADS must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("se2coset: {e}");
            ExitCode::from(2)
        }
    }
}

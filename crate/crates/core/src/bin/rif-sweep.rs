use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use rifsim::pipeline::{run_sweep, write_artifacts, Precision, SweepConfig, FAILURE_BUDGET};

/// Sweep the comoving frequency, writing photon-flux spectra, correlation and
/// entanglement tables as CSV plus matplotlib scripts.
///
/// Exit status: 0 success, 1 configuration error, 2 more than 1% of the grid failed.
#[derive(Parser, Debug)]
#[command(name = "rif-sweep", version)]
struct Cli {
    /// TOML configuration; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    delta_n: Option<f64>,
    #[arg(long)]
    u_over_c: Option<f64>,
    #[arg(long)]
    omega_min: Option<f64>,
    #[arg(long)]
    omega_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    dump_modes: bool,
    #[arg(long)]
    dump_smatrix: bool,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// f64 | double-double
    #[arg(long)]
    precision: Option<Precision>,
}

fn config(cli: &Cli) -> rifsim::Result<SweepConfig> {
    let mut c = match &cli.config {
        Some(p) => SweepConfig::load(p)?,
        None => SweepConfig::default(),
    };
    if let Some(v) = cli.delta_n {
        c.medium.delta_n = v;
    }
    if let Some(v) = cli.u_over_c {
        c.medium.u_over_c = v;
    }
    if let Some(v) = cli.omega_min {
        c.grid.omega_min = v;
    }
    if let Some(v) = cli.omega_max {
        c.grid.omega_max = v;
    }
    if let Some(v) = cli.points {
        c.grid.points = v;
    }
    if let Some(v) = &cli.out_dir {
        c.out_dir = v.clone();
    }
    if let Some(v) = cli.jobs {
        c.jobs = v;
    }
    if let Some(v) = cli.precision {
        c.precision = v;
    }
    c.dump_modes |= cli.dump_modes;
    c.dump_smatrix |= cli.dump_smatrix;
    c.validate()?;
    Ok(c)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("rif-sweep: {e}");
            return ExitCode::from(1);
        }
    };
    let art = match run_sweep(&cfg) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("rif-sweep: {e}");
            return ExitCode::from(1);
        }
    };
    for w in &art.warnings {
        eprintln!("rif-sweep: warning: {w}");
    }
    if let Err(e) = write_artifacts(&art, &cfg.out_dir) {
        eprintln!("rif-sweep: {e}");
        return ExitCode::from(1);
    }
    eprintln!(
        "rif-sweep: {} points, {} failed, max residual {:e}, output in {}",
        art.rows.len(),
        art.failures(),
        art.max_residual(),
        cfg.out_dir.display()
    );
    if art.failed_fraction() > FAILURE_BUDGET {
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

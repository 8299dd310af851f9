use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trisect::cli::{self, Command, RunConfig};
use trisect::Result;

#[derive(Parser)]
#[command(name = "trisect", version, about = "Direct and inverse scattering for iD³ + q on the half-line")]
struct Cli {
    /// Flat key = value configuration file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and print a JSON report.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        potential: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Potential CSV to scattering-data JSON.
    Forward {
        #[arg(long)]
        potential: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        boundary: Boundary,
        #[command(flatten)]
        grid: Grid,
    },
    /// Scattering-data JSON to recovered potential CSV.
    Inverse {
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Forward then inverse, with errors at two resolutions.
    Roundtrip {
        #[arg(long)]
        potential: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        boundary: Boundary,
        #[command(flatten)]
        grid: Grid,
    },
    /// Zeros of s_p on the negative real axis.
    Zeros {
        #[arg(long)]
        family: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Args)]
struct Grid {
    #[arg(long)]
    xmax: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long = "tmax")]
    t_max: Option<f64>,
    #[arg(long)]
    ntau: Option<usize>,
    /// compact or truncated
    #[arg(long)]
    support: Option<String>,
}

#[derive(Args)]
struct Boundary {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long = "theta-arg", allow_hyphen_values = true)]
    theta_arg: Option<f64>,
}

fn set<T: ToString>(cfg: &mut RunConfig, key: &str, v: &Option<T>) -> Result<()> {
    if let Some(v) = v {
        cfg.set(key, &v.to_string())?;
    }
    Ok(())
}

fn set_path(cfg: &mut RunConfig, key: &str, v: &Option<PathBuf>) -> Result<()> {
    if let Some(v) = v {
        cfg.set(key, &v.to_string_lossy())?;
    }
    Ok(())
}

impl Grid {
    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        set(cfg, "xmax", &self.xmax)?;
        set(cfg, "nx", &self.nx)?;
        set(cfg, "t_max", &self.t_max)?;
        set(cfg, "ntau", &self.ntau)?;
        set(cfg, "support", &self.support)
    }
}

impl Boundary {
    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        set(cfg, "alpha", &self.alpha)?;
        set(cfg, "beta", &self.beta)?;
        set(cfg, "theta_arg", &self.theta_arg)
    }
}

fn config(args: &Cli) -> Result<RunConfig> {
    let command = match args.command {
        Cmd::Verify { .. } => Command::Verify,
        Cmd::Forward { .. } => Command::Forward,
        Cmd::Inverse { .. } => Command::Inverse,
        Cmd::Roundtrip { .. } => Command::Roundtrip,
        Cmd::Zeros { .. } => Command::Zeros,
    };
    let mut cfg = RunConfig::new(command);
    if let Some(path) = &args.config {
        cfg.apply_text(&std::fs::read_to_string(path)?)?;
    }
    match &args.command {
        Cmd::Verify { suite, potential, seed, report, grid } => {
            set(&mut cfg, "suite", suite)?;
            set_path(&mut cfg, "potential", potential)?;
            set(&mut cfg, "seed", seed)?;
            set_path(&mut cfg, "out", report)?;
            grid.apply(&mut cfg)?;
        }
        Cmd::Forward { potential, out, boundary, grid } => {
            set_path(&mut cfg, "potential", potential)?;
            set_path(&mut cfg, "out", out)?;
            boundary.apply(&mut cfg)?;
            grid.apply(&mut cfg)?;
        }
        Cmd::Inverse { data, out, grid } => {
            set_path(&mut cfg, "data", data)?;
            set_path(&mut cfg, "out", out)?;
            grid.apply(&mut cfg)?;
        }
        Cmd::Roundtrip { potential, report, boundary, grid } => {
            set_path(&mut cfg, "potential", potential)?;
            set_path(&mut cfg, "out", report)?;
            boundary.apply(&mut cfg)?;
            grid.apply(&mut cfg)?;
        }
        Cmd::Zeros { family, count } => {
            set(&mut cfg, "family", family)?;
            set(&mut cfg, "count", count)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit<T: serde::Serialize>(value: &T, path: Option<&std::path::Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(args: &Cli) -> Result<i32> {
    let cfg = config(args)?;
    match cfg.command {
        Command::Verify => {
            let q = match &cfg.potential_path {
                Some(_) => cli::load_potential(&cfg)?,
                None => cli::small_potential(cfg.n_x, cfg.support()),
            };
            let report = cli::verify(&cfg.suite, &q, &cfg.boundary()?, &cli::jost_options(&cfg), cfg.seed)?;
            emit(&report, cfg.output_path.as_deref())?;
            for s in &report.suites {
                eprintln!("{:<12} {} max {:.3e} (tol {:.1e})", s.name, if s.passed { "PASS" } else { "FAIL" }, s.max_residual, s.tolerance);
            }
            Ok(if report.passed() { cli::EXIT_OK } else { cli::EXIT_VALIDATION })
        }
        Command::Forward => {
            let data = cli::cmd_forward(&cfg)?;
            println!("bound states: {}", data.kappas.len());
            Ok(cli::EXIT_OK)
        }
        Command::Inverse => {
            let rec = cli::cmd_inverse(&cfg)?;
            println!("recovered {} points", rec.x.len());
            Ok(cli::EXIT_OK)
        }
        Command::Roundtrip => {
            let report = cli::cmd_roundtrip(&cfg)?;
            if cfg.output_path.is_none() {
                emit(&report, None)?;
            }
            for r in &report.resolutions {
                let q = r.q_error.map_or("n/a".to_string(), |e| format!("{:.3e}", e.l2));
                eprintln!("nx {} ntau {} ({} points): P rel L2 {:.3e}, q rel L2 {q}", r.n_x, r.n_tau, r.recovered_points, r.p_error.l2);
            }
            Ok(if report.within_tolerance { cli::EXIT_OK } else { cli::EXIT_VALIDATION })
        }
        Command::Zeros => {
            for z in cli::cmd_zeros(&cfg)? {
                println!("{} {} {:.15e} {:.2e}", z.p, z.k, z.x, z.residual);
            }
            Ok(cli::EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}

//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analytic::{
    limit_min_excess_work, limit_prefactor, limit_protocol, limit_protocol_rate, regime_holds, symmetric_length,
    symmetric_protocol_samples, Regime, REGIME_RATIO,
};
use crate::config::RunConfig;
use crate::csvio;
use crate::error::{Error, Result};
use crate::geodesic::{find_all_geodesics, to_protocol, GeodesicOptions};
use crate::geometry::{path_length, PathSamples};
use crate::model::{quasi_static_work, ConfigPoint, SystemParams};
use crate::simulate::{evolve, excess_work_sweep};
use crate::verify::run_suite;

#[derive(Parser, Debug)]
#[command(name = "thermosep", version, about = "Minimum excess-work protocols for membrane gas separation")]
struct Cli {
    /// Configuration file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long = "out-dir", global = true, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long = "n_total", global = true, value_name = "COUNT")]
    n_total: Option<f64>,
    #[arg(long = "t_bath_k", global = true, value_name = "K")]
    t_bath_k: Option<f64>,
    #[arg(long = "eps_alpha", global = true, value_name = "FRACTION")]
    eps_alpha: Option<f64>,
    #[arg(long = "tau_alpha_s", global = true, value_name = "S")]
    tau_alpha_s: Option<f64>,
    #[arg(long = "tau_beta_s", global = true, value_name = "S")]
    tau_beta_s: Option<f64>,
    #[arg(long = "tau_h_s", global = true, value_name = "S")]
    tau_h_s: Option<f64>,
    #[arg(long = "k_b", global = true, value_name = "J_PER_K")]
    k_b: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form results: symmetric length, limit regimes, quasi-static work.
    Analytic {
        /// Also print the limit-regime excess work for this operation time (s).
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Find all geodesics from the mixed state to complete separation.
    Geodesic {
        #[arg(long, default_value_t = 32)]
        n_scan: usize,
        /// Samples per emitted protocol.
        #[arg(long, default_value_t = 1001)]
        samples: usize,
    },
    /// Simulate one protocol and write its trajectory.
    Simulate {
        /// `symmetric`, `particle-limit`, `heat-limit` or a protocol CSV file.
        #[arg(long, default_value = "symmetric")]
        protocol: String,
        /// Operation time (s).
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value = "trajectory.csv")]
        output: String,
    },
    /// Excess work over a list of operation times.
    Sweep {
        #[arg(long, default_value = "symmetric")]
        protocol: String,
        /// Comma-separated operation times (s).
        #[arg(long, value_delimiter = ',', required = true)]
        tau: Vec<f64>,
        #[arg(long, default_value = "sweep.csv")]
        output: String,
    },
    /// Run the consistency checks and print a pass/fail table.
    Verify,
}

/// Four significant figures for human-readable output.
pub fn sig4(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-3..6).contains(&e) {
        format!("{:.*}", (3 - e).max(0) as usize, x)
    } else {
        format!("{x:.3e}")
    }
}

fn load_config(cli: &Cli) -> Result<SystemParams> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    let overrides = [
        ("n_total", cli.n_total),
        ("t_bath_k", cli.t_bath_k),
        ("eps_alpha", cli.eps_alpha),
        ("tau_alpha_s", cli.tau_alpha_s),
        ("tau_beta_s", cli.tau_beta_s),
        ("tau_h_s", cli.tau_h_s),
        ("k_b", cli.k_b),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    cfg.params()
}

fn limit_samples(regime: Regime, n: usize) -> Result<PathSamples> {
    let s: Vec<f64> = (0..n).map(|i| if i == n - 1 { 1.0 } else { i as f64 / (n - 1) as f64 }).collect();
    let pts = s
        .iter()
        .map(|&v| {
            let x = limit_protocol(regime, v).min(0.5);
            ConfigPoint { x_l: x, x_r: x }
        })
        .collect();
    let der = s.iter().map(|&v| [limit_protocol_rate(regime, v); 2]).collect();
    PathSamples::with_derivatives(s, pts, der)
}

/// Built-in protocol by name, otherwise a protocol file.
fn resolve_protocol(params: &SystemParams, name: &str) -> Result<PathSamples> {
    match name {
        "symmetric" => symmetric_protocol_samples(params, 1001),
        "particle-limit" => limit_samples(Regime::Particle, 1001),
        "heat-limit" => limit_samples(Regime::Heat, 1001),
        path => csvio::read_protocol(Path::new(path)),
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn regime_warnings(params: &SystemParams) {
    let ratio = params.tau_h() / params.tau_alpha();
    if !regime_holds(params, Regime::Particle) && !regime_holds(params, Regime::Heat) {
        eprintln!(
            "warning: tau_h/tau_p = {} lies between 1/{REGIME_RATIO} and {REGIME_RATIO}; neither limit applies, limit values are indicative only",
            sig4(ratio)
        );
    }
}

fn cmd_analytic(params: &SystemParams, tau: Option<f64>) -> Result<()> {
    let w0 = quasi_static_work(params, params.target())?;
    println!("quasi-static work W0            {} J", sig4(w0));
    if !params.is_symmetric() {
        eprintln!("warning: closed forms need equal mixture and equal membrane timescales; skipping them");
        return Ok(());
    }
    println!("symmetric length                {} (J s)^1/2", sig4(symmetric_length(params, 0.5)?));
    println!("particle-limit prefactor        {}", sig4(limit_prefactor(Regime::Particle)));
    println!("heat-limit prefactor            {}", sig4(limit_prefactor(Regime::Heat)));
    if let Some(tau) = tau {
        for (label, regime) in [("particle", Regime::Particle), ("heat", Regime::Heat)] {
            let w = limit_min_excess_work(params, tau, regime)?;
            println!("{label:<8} limit min W_ex at tau  {} J", sig4(w));
        }
    }
    regime_warnings(params);
    Ok(())
}

fn cmd_geodesic(params: &SystemParams, out_dir: &Path, n_scan: usize, samples: usize) -> Result<()> {
    let sols = find_all_geodesics(params, params.target(), n_scan, &GeodesicOptions::default())?;
    ensure_dir(out_dir)?;
    csvio::write_geodesic_summary(&out_dir.join("geodesic_summary.csv"), &sols)?;
    println!("{:>5}  {:>12}  {:>12}  {:>10}", "index", "length", "gap", "theta0");
    for (i, g) in sols.iter().enumerate() {
        csvio::write_protocol(&out_dir.join(format!("geodesic_{i}.csv")), &to_protocol(g, samples)?)?;
        println!("{i:>5}  {:>12}  {:>12}  {:>10}", sig4(g.length), sig4(g.terminal_gap), sig4(g.initial_angle));
    }
    Ok(())
}

fn cmd_simulate(params: &SystemParams, out_dir: &Path, protocol: &str, tau: f64, output: &str) -> Result<()> {
    let path = resolve_protocol(params, protocol)?;
    let tr = evolve(params, &path, tau)?;
    ensure_dir(out_dir)?;
    csvio::write_trajectory(&out_dir.join(output), &tr)?;
    let len = path_length(params, &path)?;
    println!("total work      {} J", sig4(tr.total_work));
    println!("excess work     {} J", sig4(tr.excess_work));
    println!("L^2/tau         {} J", sig4(len * len / tau));
    println!("stopped at s =  {}", sig4(tr.s_end));
    Ok(())
}

fn cmd_sweep(params: &SystemParams, out_dir: &Path, protocol: &str, taus: &[f64], output: &str) -> Result<()> {
    let path = resolve_protocol(params, protocol)?;
    let rows = excess_work_sweep(params, &path, taus)?;
    ensure_dir(out_dir)?;
    csvio::write_sweep(&out_dir.join(output), &rows)?;
    println!("{:>10}  {:>12}  {:>12}", "tau", "W_ex", "L^2/tau");
    for r in &rows {
        println!("{:>10}  {:>12}  {:>12}", sig4(r.tau), sig4(r.excess_work), sig4(r.l_squared_over_tau));
    }
    Ok(())
}

fn cmd_verify(params: &SystemParams) -> Result<bool> {
    let checks = run_suite(params)?;
    let mut all = true;
    for c in &checks {
        println!("{}  {:<50} {:>11} (limit {})", if c.passed { "PASS" } else { "FAIL" }, c.name, sig4(c.value), sig4(c.tolerance));
        all &= c.passed;
    }
    Ok(all)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let params = load_config(cli)?;
    match &cli.command {
        Command::Analytic { tau } => cmd_analytic(&params, *tau)?,
        Command::Geodesic { n_scan, samples } => cmd_geodesic(&params, &cli.out_dir, *n_scan, *samples)?,
        Command::Simulate { protocol, tau, output } => cmd_simulate(&params, &cli.out_dir, protocol, *tau, output)?,
        Command::Sweep { protocol, tau, output } => cmd_sweep(&params, &cli.out_dir, protocol, tau, output)?,
        Command::Verify => {
            if !cmd_verify(&params)? {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

/// Runs the tool on `argv` (program name first) and returns the exit code:
/// 0 on success, 1 for usage, domain, config and I/O errors, 2 for
/// convergence and numerical failures.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

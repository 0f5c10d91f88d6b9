//! Command-line front end. Every subcommand writes plot-ready data to stdout
//! or a file; exit status is 0 on success, 1 for physics-domain errors and 2
//! for usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::boundaries::{equal_magnetization_temperature, magnetization_peak_temperature, w_zero_curve, StrokeMode};
use crate::cycle::{carnot_point, finite_cycle, CycleSpec, ZeroTolerance};
use crate::dispersion::ModelParams;
use crate::equilibrium::{magnetization, EquilibriumModel, ThermalState};
use crate::error::{Error, Result};
use crate::oracle::{compare_cached, level_crossings, MAX_SITES};
use crate::pool::resolve_threads;
use crate::quad::Quadrature;
use crate::roots::linspace;
use crate::sweep::{emit, run_sweep, write_csv, write_json_lines, Format, SweepGrid};

#[derive(Debug, Parser)]
#[command(name = "ising-otto", version, about = "Quantum Otto cycles on the transverse-field Ising chain")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub quad_tol: f64,
    /// Assert that no random numbers are drawn. Every computation here is
    /// deterministic, so this only documents intent.
    #[arg(long, global = true)]
    pub seedless: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Magnetization per site against temperature.
    Magnetization {
        #[arg(long)]
        g: f64,
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, default_value = "exact")]
        model: EquilibriumModel,
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One finite-stroke cycle, as JSON.
    Cycle {
        #[arg(long)]
        g: f64,
        #[arg(long, allow_negative_numbers = true)]
        h_hot: f64,
        #[arg(long, allow_negative_numbers = true)]
        h_cold: f64,
        #[arg(long)]
        t_hot: f64,
        #[arg(long)]
        t_cold: f64,
        /// Absolute per-site zero tolerance for the regime label.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Regime map over a grid read from a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv or json-lines; overrides the config.
        #[arg(long)]
        format: Option<Format>,
    },
    /// Zero-work curve T_C(h).
    Boundary {
        #[arg(long)]
        g: f64,
        #[arg(long)]
        t_hot: f64,
        /// Finite stroke size; infinitesimal when omitted.
        #[arg(long, allow_negative_numbers = true)]
        delta_h: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        h_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        h_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Fields at which all four regimes meet, with the cycle there.
    Carnot {
        #[arg(long)]
        g: f64,
        #[arg(long)]
        t_hot: f64,
        #[arg(long)]
        t_cold: f64,
    },
    /// Magnetization peak and equal-magnetization temperatures.
    Landmarks {
        #[arg(long)]
        g: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        h: f64,
        #[arg(long)]
        model: EquilibriumModel,
    },
    /// Continuum, discrete-mode and exact-diagonalization cycles side by side.
    OracleCompare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: f64,
        #[arg(long, allow_negative_numbers = true)]
        h_hot: f64,
        #[arg(long, allow_negative_numbers = true)]
        h_cold: f64,
        #[arg(long)]
        t_hot: f64,
        #[arg(long)]
        t_cold: f64,
        /// Directory for cached spectra.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Also count inter-sector level crossings on this many fields.
        #[arg(long)]
        crossings: Option<usize>,
    },
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn num(v: f64) -> String {
    format!("{v:.11e}")
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("plain data serializes");
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| Error::io("<stdout>", e))
}

fn write_text(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    if !(g.quad_tol > 0.0 && g.quad_tol < 1.0) {
        return Err(usage(format!("--quad-tol must lie in (0, 1), got {}", g.quad_tol)));
    }
    if g.threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }
    let quad = Quadrature::default().with_rel_tol(g.quad_tol);
    let threads = resolve_threads(g.threads);

    match cli.command {
        Command::Magnetization {
            g,
            h,
            model,
            t_min,
            t_max,
            steps,
            out,
        } => {
            if steps < 2 || !(t_min > 0.0 && t_min < t_max) {
                return Err(usage("need 0 < --t-min < --t-max and --steps >= 2"));
            }
            let params = ModelParams::infinite(g, h)?;
            let temps = linspace(t_min, t_max, steps);
            let rows = crate::pool::map_ordered(&temps, threads, |&t| {
                magnetization(&ThermalState::new(params, t)?, model, &quad)
            });
            let mut text = String::from("t,m\n");
            for (t, m) in temps.iter().zip(rows) {
                text.push_str(&format!("{},{}\n", num(*t), num(m?)));
            }
            write_text(&text, out.as_ref())
        }
        Command::Cycle {
            g,
            h_hot,
            h_cold,
            t_hot,
            t_cold,
            tolerance,
        } => {
            let spec = CycleSpec::new(g, h_hot, h_cold, t_hot, t_cold)?;
            let tol = tolerance.map_or_else(|| ZeroTolerance::default_for(g), ZeroTolerance::Absolute);
            print_json(&finite_cycle(&spec, tol, &quad)?)
        }
        Command::Sweep { config, out, format } => {
            let grid = SweepGrid::from_path(&config)?;
            let records = run_sweep(&grid, threads, &quad)?;
            let target = out.or_else(|| grid.output.as_ref().map(|o| o.path.clone()));
            let format = format.or(grid.output.as_ref().map(|o| o.format)).unwrap_or_default();
            match target {
                Some(path) => emit(&records, format, &path),
                None => write_text(
                    &match format {
                        Format::Csv => write_csv(&records),
                        Format::JsonLines => write_json_lines(&records),
                    },
                    None,
                ),
            }
        }
        Command::Boundary {
            g,
            t_hot,
            delta_h,
            h_min,
            h_max,
            steps,
        } => {
            if steps < 2 || h_min.partial_cmp(&h_max) != Some(std::cmp::Ordering::Less) {
                return Err(usage("need --h-min < --h-max and --steps >= 2"));
            }
            let mode = delta_h.map_or(StrokeMode::Infinitesimal, StrokeMode::Finite);
            let curve = w_zero_curve(g, t_hot, mode, &linspace(h_min, h_max, steps), threads, &quad)?;
            let mut text = String::from("h,t_cold,residual\n");
            for p in &curve.points {
                text.push_str(&format!("{},{},{}\n", num(p.h), num(p.t_cold), num(p.residual)));
            }
            write_text(&text, None)?;
            for o in &curve.omitted {
                eprintln!("omitted h = {}: {}", o.h, o.reason);
            }
            Ok(())
        }
        Command::Carnot { g, t_hot, t_cold } => {
            let cp = carnot_point(g, t_hot, t_cold)?;
            let spec = CycleSpec::new(g, cp.h_hot, cp.h_cold, t_hot, t_cold)?;
            let cycle = finite_cycle(&spec, ZeroTolerance::default_for(g), &quad)?;
            print_json(&json!({
                "h_cold": cp.h_cold,
                "h_hot": cp.h_hot,
                "product_over_g2": cp.h_cold * cp.h_hot / (g * g),
                "cycle": cycle,
            }))
        }
        Command::Landmarks { g, h, model } => {
            let peak = magnetization_peak_temperature(g, h, model, &quad)?;
            let equal = equal_magnetization_temperature(g, h, model, &quad)?;
            print_json(&json!({
                "model": model.name(),
                "g": g,
                "h": h,
                "t_peak": peak,
                "t_equal": equal,
            }))
        }
        Command::OracleCompare {
            n,
            g,
            h_hot,
            h_cold,
            t_hot,
            t_cold,
            cache,
            crossings,
        } => {
            if n > MAX_SITES {
                return Err(Error::DimensionCap { n, max: MAX_SITES });
            }
            let spec = CycleSpec::new(g, h_hot, h_cold, t_hot, t_cold)?;
            let c = compare_cached(n, &spec, ZeroTolerance::default_for(g), &quad, cache.as_deref())?;
            let rel = c.relative_errors();
            let mut doc = json!({
                "n_sites": n,
                "finite_cycle": c.thermodynamic_limit,
                "discrete_mode_cycle": c.discrete_modes,
                "brute_force_cycle": c.exact_diagonalization,
                "relative_difference": {"work": rel[0], "q_hot": rel[1], "q_cold": rel[2]},
            });
            if let Some(steps) = crossings {
                let r = level_crossings(n, g, h_cold, h_hot, steps)?;
                doc["level_crossings"] = json!({"fields": r.fields, "swaps": r.swaps, "total": r.total()});
            }
            print_json(&doc)
        }
    }
}

/// Parses the process arguments and runs, mapping failures to exit codes.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bmc_cli::config::parse_eta;
use bmc_cli::output::{
    curve_csv, curve_plot_script, fmt_sci, plot_path, sweep_csv, sweep_plot_script, validation_csv,
};
use bmc_cli::{CliError, Settings, EXIT_NO_OPTIMUM, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
use bmc_core::{Complex64, Preset, SweptParam};
use clap::{Args, Parser, Subcommand};

/// Holevo capacity and fidelity of a lossy bosonic Markov channel.
#[derive(Parser)]
#[command(name = "bmc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// χ, F̄ and Θ over a parameter sweep, as CSV.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Figure preset: fig1 (n̄), fig2 (β) or fig3 (γ).
        #[arg(long, value_parser = parse_preset)]
        preset: Option<Preset>,
        /// Parameter to sweep: n_bar, beta, gamma or t.
        #[arg(long = "sweep", value_parser = parse_swept)]
        swept: Option<SweptParam>,
        #[arg(long, allow_negative_numbers = true)]
        lo: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        hi: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Also write a matplotlib script next to --out.
        #[arg(long, requires = "out")]
        plot: bool,
    },
    /// Compare the Lindblad integrator against the closed-form output state.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Fock cutoff (default 50, or $BMC_DEFAULT_DIM).
        #[arg(long)]
        dim: Option<usize>,
        /// Coherent amplitude `re[,im]`; repeat for several.
        #[arg(long, value_parser = parse_eta)]
        eta: Vec<Complex64>,
    },
    /// Signal strength n̄ maximising Θ = F̄χ at fixed t.
    Optimal {
        #[command(flatten)]
        common: Common,
        /// Upper end of the n̄ search interval.
        #[arg(long)]
        search_max: Option<f64>,
        /// Emit the Θ(n̄) curve as CSV (to --out, else stdout).
        #[arg(long)]
        curve: bool,
        /// Also write a matplotlib script next to --out.
        #[arg(long, requires = "out", requires = "curve")]
        plot: bool,
    },
}

#[derive(Args)]
struct Common {
    /// `key = value` config file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Loss rate γ (1/s).
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Noise rate β (1/s).
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Mean signal photon number n̄.
    #[arg(long = "nbar", allow_negative_numbers = true)]
    n_bar: Option<f64>,
    /// Reservoir squeezing M, real part.
    #[arg(long, allow_negative_numbers = true)]
    m_re: Option<f64>,
    /// Reservoir squeezing M, imaginary part.
    #[arg(long, allow_negative_numbers = true)]
    m_im: Option<f64>,
    /// Evaluation time(s), comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    t: Vec<f64>,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse()
}

fn parse_swept(s: &str) -> Result<SweptParam, String> {
    s.parse()
}

impl Common {
    fn settings(&self) -> Result<Settings, CliError> {
        let file = match &self.config {
            Some(p) => bmc_cli::parse_config(p)?,
            None => Settings::default(),
        };
        Ok(file.overlay(Settings {
            gamma: self.gamma,
            beta: self.beta,
            n_bar: self.n_bar,
            m_re: self.m_re,
            m_im: self.m_im,
            t: (!self.t.is_empty()).then(|| self.t.clone()),
            ..Default::default()
        }))
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_file(p, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Sweep {
            common,
            preset,
            swept,
            lo,
            hi,
            steps,
            plot,
        } => {
            let s = common.settings()?.overlay(Settings {
                preset,
                swept,
                lo,
                hi,
                steps,
                ..Default::default()
            });
            let (spec, rows) = bmc_cli::sweep(&s)?;
            emit(common.out.as_deref(), &sweep_csv(&rows))?;
            if let (true, Some(out)) = (plot, &common.out) {
                write_file(&plot_path(out), &sweep_plot_script(out, spec.swept))?;
            }
            Ok(EXIT_OK)
        }
        Command::Validate { common, dim, eta } => {
            let s = common.settings()?.overlay(Settings {
                dim,
                eta: (!eta.is_empty()).then_some(eta),
                ..Default::default()
            });
            let report = match bmc_cli::validate(&s) {
                Err(CliError::Core(e @ bmc_core::Error::TruncationInsufficient { .. })) => {
                    eprintln!("bmc: validation failed: {e}");
                    return Ok(EXIT_VALIDATION);
                }
                r => r?,
            };
            if let Some(out) = &common.out {
                write_file(out, &validation_csv(&report))?;
            }
            println!(
                "{:>24} {:>8} {:>14} {:>14}",
                "eta", "t", "trace_dist", "entropy_gap"
            );
            for r in &report.results {
                println!(
                    "{:>24} {:>8} {:>14.3e} {:>14.3e}",
                    format!("{:+.3}{:+.3}i", r.eta.re, r.eta.im),
                    r.t,
                    r.trace_distance,
                    r.entropy_gap
                );
            }
            let w = &report.worst_case;
            println!(
                "worst case: eta = {}, t = {}, trace distance {:.3e} (tol {:.1e}); max entropy gap {:.3e} bits (tol {:.1e})",
                w.eta,
                w.t,
                w.trace_distance,
                report.trace_distance_tol,
                report.max_entropy_gap(),
                report.entropy_tol
            );
            if report.passed {
                println!("validation: PASS");
                Ok(EXIT_OK)
            } else {
                println!("validation: FAIL");
                Ok(EXIT_VALIDATION)
            }
        }
        Command::Optimal {
            common,
            search_max,
            curve,
            plot,
        } => {
            let s = common.settings()?.overlay(Settings {
                search_max,
                ..Default::default()
            });
            let run = bmc_cli::optimal(&s)?;
            let r = &run.result;
            let summary = format!(
                "t = {}\nn_bar_opt = {}\ntheta = {}\ncriterion_residual = {}\nsecond_order_ok = {}\ninterior = {}\n",
                fmt_sci(run.t),
                fmt_sci(r.n_bar_opt),
                fmt_sci(r.theta_at_opt),
                fmt_sci(r.criterion_residual),
                r.second_order_ok,
                r.interior
            );
            if curve {
                let csv = curve_csv(&bmc_cli::theta_curve(&run)?);
                match &common.out {
                    Some(out) => {
                        print!("{summary}");
                        write_file(out, &csv)?;
                        if plot {
                            write_file(
                                &plot_path(out),
                                &curve_plot_script(out, r.interior.then_some(r.n_bar_opt)),
                            )?;
                        }
                    }
                    None => {
                        eprint!("{summary}");
                        emit(None, &csv)?;
                    }
                }
            } else {
                emit(common.out.as_deref(), &summary)?;
            }
            if r.interior {
                Ok(EXIT_OK)
            } else {
                eprintln!(
                    "bmc: no interior optimum of Θ(n̄) in (0, {}]; Θ is still increasing at the boundary",
                    run.search_max
                );
                Ok(EXIT_NO_OPTIMUM)
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("bmc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

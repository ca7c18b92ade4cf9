use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kgo_core::cli::csv::{number, read_table, write_table};
use kgo_core::cli::sweep::{search_spec, verify_table};
use kgo_core::cli::{config, run_sweep, Knob, SweepOptions, SweepSpec};
use kgo_core::oracle::{self, OracleGrid};
use kgo_core::spectrum::{self, Branch};
use kgo_core::{heun, Error, PhysicalConfig, QuantumNumbers};

/// Bound-state spectra of the (generalized) Klein-Gordon oscillator in
/// Som-Raychaudhuri space-time.
#[derive(Parser, Debug)]
#[command(name = "kgo", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct Common {
    /// `key = value` configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override a configuration key (repeatable), e.g. `--set alpha=0.5`
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,
    /// Radial quantum number
    #[arg(long, default_value_t = 0, global = true)]
    n: u32,
    /// Angular quantum number
    #[arg(long, default_value_t = 0, global = true, allow_hyphen_values = true)]
    l: i64,
    /// Axial wavenumber
    #[arg(long, default_value_t = 0.0, global = true, allow_hyphen_values = true)]
    k: f64,
    /// Residual tolerance for accepted roots
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Energy search window `EMIN,EMAX`
    #[arg(long, value_name = "EMIN,EMAX", global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Output file (default stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the effective configuration and exit
    #[arg(long, global = true)]
    print_config: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the energy condition for one state
    Spectrum {
        /// Also report negative-energy roots
        #[arg(long)]
        include_negative: bool,
    },
    /// Sweep one parameter over a family of curves
    Sweep {
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Per-curve parameter and values, e.g. `n=1,2,3`
        #[arg(long, value_name = "KEY=V1,V2,...")]
        family: Option<String>,
        #[arg(long)]
        with_oracle: bool,
    },
    /// Compare the analytic energy with the finite-difference oracle
    Oracle {
        /// Oracle grid cells
        #[arg(long, default_value_t = oracle::DEFAULT_POINTS)]
        points: usize,
    },
    /// Tabulate the radial wavefunction s(r)
    Wavefunction {
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, default_value_t = 401)]
        points: usize,
        /// Scale to unit norm in L^2(r dr)
        #[arg(long)]
        normalize: bool,
    },
    /// Check the flux-shift identity E(l, PhiB + 2 pi tau / e) = E(l - tau, PhiB)
    CheckAb {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        tau: i64,
    },
    /// Recompute residuals of a sweep CSV
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

enum Failure {
    Usage(Error),
    Numerical(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::NoRoot
            | Error::Degenerate { .. }
            | Error::NodeMismatch { .. }
            | Error::CutoffSensitive { .. }
            | Error::SeriesNotConverged { .. } => Failure::Numerical(err),
            other => Failure::Usage(other),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    let mut cfg = match &common.config {
        Some(path) => config::load_config(path)?,
        None => PhysicalConfig::default(),
    };
    for assignment in &common.overrides {
        config::apply_override(&mut cfg, assignment)?;
    }
    if common.print_config {
        return emit(common, &config::format_config(&cfg));
    }
    let qn = QuantumNumbers::new(common.n, common.l, common.k);
    if !qn.k.is_finite() {
        return Err(Error::Usage("k must be finite".into()).into());
    }
    let window = common.window.as_deref().map(parse_window).transpose()?;
    let command = cli
        .command
        .ok_or_else(|| Error::Usage("no subcommand given (try --help)".into()))?;

    match command {
        Command::Spectrum { include_negative } => {
            let spec = search_spec(&cfg, &qn, window, common.tol);
            let levels = spectrum::solve_energy(&cfg, &qn, &spec)?;
            let levels: Vec<_> = levels
                .into_iter()
                .filter(|l| include_negative || l.branch == Branch::Positive)
                .collect();
            if levels.is_empty() {
                return Err(Error::NoRoot.into());
            }
            let mut out = String::from("n,l,k,E,residual,branch,c_next,poly_residual\n");
            for level in levels {
                let (c_next, poly) = spectrum::termination_diagnostics(&cfg, &level)?;
                let branch = match level.branch {
                    Branch::Positive => "positive",
                    Branch::Negative => "negative",
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    level.n,
                    level.l,
                    number(level.k),
                    number(level.energy),
                    number(level.residual),
                    branch,
                    number(c_next),
                    number(poly)
                ));
            }
            emit(common, &out)
        }
        Command::Sweep { param, from, to, steps, family, with_oracle } => {
            let (family, family_values) = match family.as_deref() {
                Some(text) => parse_family(text)?,
                None => (Knob::N, vec![qn.n as f64]),
            };
            let sweep = SweepSpec {
                parameter: Knob::parse(&param)?,
                start: from,
                stop: to,
                steps,
                family,
                family_values,
            };
            let options = SweepOptions { with_oracle, window, tol: common.tol };
            let table = run_sweep(&cfg, &qn, &sweep, &options)?;
            emit(common, &write_table(&table))
        }
        Command::Oracle { points } => {
            let analytic = {
                let spec = search_spec(&cfg, &qn, window, common.tol);
                spectrum::positive_branch(&spectrum::solve_energy(&cfg, &qn, &spec)?)
                    .ok_or(Error::NoRoot)?
            };
            let mut out = String::from("n,l,k,E,oracle_nodes,oracle_E,oracle_gap,relative_gap\n");
            let mut row = format!("{},{},{},{},", qn.n, qn.l, number(qn.k), number(analytic.energy));
            match oracle::exact_partner_nodes(qn.n) {
                Some(nodes) => {
                    let oqn = QuantumNumbers { n: nodes, ..qn };
                    let mut ospec = oracle::default_search(&cfg, &oqn);
                    if let Some((lo, hi)) = window {
                        ospec.e_min = lo;
                        ospec.e_max = hi;
                    }
                    let level = oracle::oracle_energy(&cfg, &oqn, &OracleGrid::Scaled { points }, &ospec)?;
                    let gap = (level.energy - analytic.energy).abs();
                    row.push_str(&format!(
                        "{},{},{},{}",
                        nodes,
                        number(level.energy),
                        number(gap),
                        number(gap / analytic.energy.abs())
                    ));
                }
                None => row.push_str(",,,"),
            }
            out.push_str(&row);
            out.push('\n');
            emit(common, &out)
        }
        Command::Wavefunction { r_max, points, normalize } => {
            let spec = search_spec(&cfg, &qn, window, common.tol);
            let level = spectrum::positive_branch(&spectrum::solve_energy(&cfg, &qn, &spec)?)
                .ok_or(Error::NoRoot)?;
            let rc = kgo_core::model::radial_coefficients(&cfg, &qn, level.energy)?;
            rc.require_confining()?;
            let r_max = r_max.unwrap_or_else(|| (2.0 * (40.0 + 2.0 * qn.n as f64) / rc.a2()).sqrt());
            let table = heun::tabulate_wavefunction(&rc, r_max, points, normalize)?;
            let mut out = String::from("r,s\n");
            for (r, s) in table {
                out.push_str(&format!("{},{}\n", number(r), number(s)));
            }
            emit(common, &out)
        }
        Command::CheckAb { tau } => {
            let spec = window.map(|_| search_spec(&cfg, &qn, window, common.tol));
            let shift = spectrum::ab_flux_shift_check(&cfg, &qn, tau, spec.as_ref())?;
            let out = format!(
                "tau,flux,E_flux_shifted,l_shifted,E_l_shifted,gap\n{},{},{},{},{},{}\n",
                tau,
                number(cfg.flux + 2.0 * std::f64::consts::PI * tau as f64 / cfg.charge),
                number(shift.shifted_flux.energy),
                qn.l - tau,
                number(shift.shifted_l.energy),
                number(shift.gap)
            );
            emit(common, &out)
        }
        Command::Verify { input } => {
            let text = std::fs::read_to_string(&input).map_err(Error::from)?;
            let table = read_table(&text)?;
            let tol = common.tol.unwrap_or(spectrum::DEFAULT_TOL);
            let failures = verify_table(&cfg, &qn, &table, tol)?;
            let checked = table.rows.iter().filter(|r| r.energy.is_some()).count();
            let mut out = format!("checked {checked} rows, {} above tolerance {tol}\n", failures.len());
            for (i, residual) in &failures {
                out.push_str(&format!("row {}: residual {residual:e}\n", i + 1));
            }
            emit(common, &out)?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(Failure::Numerical(Error::NoRoot))
            }
        }
    }
}

fn parse_window(text: &str) -> Result<(f64, f64), Error> {
    let bad = || Error::Usage(format!("--window expects EMIN,EMAX, got `{text}`"));
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn parse_family(text: &str) -> Result<(Knob, Vec<f64>), Error> {
    let bad = || Error::Usage(format!("--family expects key=v1,v2,..., got `{text}`"));
    let (key, values) = text.split_once('=').ok_or_else(bad)?;
    let values = values
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Knob::parse(key.trim())?, values))
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    let result = match &common.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| Failure::Usage(Error::from(e)))
}

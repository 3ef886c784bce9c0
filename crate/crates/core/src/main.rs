//! Command-line interface: evaluate predictions, exact determinants,
//! convergence experiments, and the special-function identity suite.

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use thdet::closed_form::ClosedFormFamily;
use thdet::experiment::{emit_report, run_experiment, ExactMethod, ExperimentConfig};
use thdet::matrix::{build_m, logdet_lu};
use thdet::predict::predict_m;
use thdet::special::{log_relative_error, run_identity_suite};
use thdet::symbol::{symbol_fourier_coeffs, SymbolSpec};
use thdet::LogValue;

#[derive(Parser)]
#[command(
    name = "thdet",
    about = "Toeplitz+Hankel determinants: exact values and asymptotics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Lu,
    Closed,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the asymptotic prediction for a symbol at given dimensions.
    Predict {
        /// Path to a symbol spec JSON file.
        #[arg(long)]
        spec: String,
        /// Comma-separated list of dimensions.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Compute the exact determinant at one dimension.
    Exact {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "lu")]
        method: MethodArg,
    },
    /// Run a convergence experiment from a config file, emit the report, and
    /// print PASS/FAIL against the embedded thresholds.
    Verify {
        #[arg(long)]
        config: String,
    },
    /// Run the special-function identity suite.
    Identities,
}

fn load_spec(path: &str) -> Result<SymbolSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let spec: SymbolSpec =
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {path}: {e}"))?;
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn print_logvalue(label: &str, v: &LogValue) {
    if v.is_zero {
        println!("{label}: exact zero");
        return;
    }
    let arg = v.reduced_argument();
    print!(
        "{label}: log|det| = {:.12}, arg = {:.12}",
        v.log_modulus, arg
    );
    if v.log_modulus.abs() < 600.0 {
        let z = v.to_complex();
        print!("  (value {:.12e} + {:.12e} i)", z.re, z.im);
    }
    println!();
}

fn cmd_predict(spec_path: &str, ns: &[usize]) -> Result<(), String> {
    let spec = load_spec(spec_path)?;
    let pred = predict_m(&spec).map_err(|e| e.to_string())?;
    println!(
        "prediction: log_growth = {:+.12} {:+.12}i, omega = {:+.12} {:+.12}i, log_constant = {:+.12} {:+.12}i",
        pred.log_growth.re,
        pred.log_growth.im,
        pred.omega.re,
        pred.omega.im,
        pred.log_constant.re,
        pred.log_constant.im
    );
    for &n in ns {
        if n == 0 {
            return Err("n must be >= 1".into());
        }
        print_logvalue(&format!("n = {n}"), &pred.predict(n));
    }
    Ok(())
}

fn cmd_exact(spec_path: &str, n: usize, method: MethodArg) -> Result<(), String> {
    let spec = load_spec(spec_path)?;
    if n == 0 {
        return Err("n must be >= 1".into());
    }
    let family = ClosedFormFamily::of(&spec);
    let closed = |f: &ClosedFormFamily| f.exact_logdet(n).map_err(|e| e.to_string());
    let lu = || -> Result<LogValue, String> {
        let series = symbol_fourier_coeffs(&spec, 2 * n as i64 + 8).map_err(|e| e.to_string())?;
        let det = logdet_lu(&build_m(&series, n, 1).map_err(|e| e.to_string())?);
        if det.numerically_singular {
            eprintln!("warning: pivot ratio flags the matrix numerically singular");
        }
        Ok(det.value)
    };
    match method {
        MethodArg::Lu => print_logvalue("exact (lu)", &lu()?),
        MethodArg::Closed => {
            let f = family.ok_or("no closed form for this spec")?;
            print_logvalue("exact (closed form)", &closed(&f)?);
        }
        MethodArg::Both => {
            let f = family.ok_or("no closed form for this spec")?;
            let a = lu()?;
            let b = closed(&f)?;
            print_logvalue("exact (lu)", &a);
            print_logvalue("exact (closed form)", &b);
            let d = if a.is_zero && b.is_zero {
                0.0
            } else {
                log_relative_error(&a, &b)
            };
            println!("relative deviation: {d:.3e}");
            if d.is_nan() || d > 1e-8 {
                return Err(format!("LU and closed form disagree: {d:.3e} > 1e-8"));
            }
        }
    }
    Ok(())
}

/// Embedded verify thresholds: the report must have a strictly decreasing
/// error tail and final |ratio - 1| below 0.15 (1e-6 for smooth symbols,
/// which converge exponentially fast).
fn cmd_verify(config_path: &str) -> Result<bool, String> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| format!("cannot read {config_path}: {e}"))?;
    let config: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {config_path}: {e}"))?;
    config.validate().map_err(|e| e.to_string())?;
    let report = run_experiment(&config).map_err(|e| e.to_string())?;
    emit_report(&report, config.output, &config.output_path).map_err(|e| e.to_string())?;
    println!("report written to {}", config.output_path);

    let smooth_only = config.spec.all_jumps().is_empty()
        && config.spec.powers.is_empty()
        && config.spec.special_kind.is_none();
    let final_tol = if smooth_only { 1e-6 } else { 0.15 };
    let final_err = report.rows.last().and_then(|r| r.abs_err);
    let mut pass = true;
    match final_err {
        Some(e) => {
            let ok = e < final_tol;
            println!(
                "{} final |ratio - 1| = {e:.6e} (threshold {final_tol})",
                if ok { "PASS" } else { "FAIL" }
            );
            pass &= ok;
        }
        None => {
            println!("FAIL final row has no ratio (exact zero)");
            pass = false;
        }
    }
    if report.rows.len() >= 4 {
        println!(
            "{} error tail strictly decreasing",
            if report.monotone_tail { "PASS" } else { "FAIL" }
        );
        pass &= report.monotone_tail;
    }
    if let Some(rate) = report.fitted_rate {
        println!("info fitted decay rate {rate:.3}");
    }
    if config.exact_method == ExactMethod::Both {
        let worst = report
            .rows
            .iter()
            .filter_map(|r| r.method_discrepancy)
            .fold(0.0f64, f64::max);
        println!("PASS lu/closed-form agreement (worst {worst:.3e})");
    }
    println!("{}", if pass { "VERIFY PASS" } else { "VERIFY FAIL" });
    Ok(pass)
}

fn cmd_identities() -> bool {
    let mut all = true;
    for check in run_identity_suite(0x5eed) {
        println!(
            "{} {} (max err {:.3e}, tol {:.0e})",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.max_err,
            check.tol
        );
        all &= check.pass;
    }
    all
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Predict { spec, n } => cmd_predict(&spec, &n).map(|()| true),
        Command::Exact { spec, n, method } => cmd_exact(&spec, n, method).map(|()| true),
        Command::Verify { config } => cmd_verify(&config),
        Command::Identities => Ok(cmd_identities()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

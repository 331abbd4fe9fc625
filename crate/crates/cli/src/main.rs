//! Command-line front end: moment polynomials, PMF tables, coefficient
//! closed forms, the verification grid, and Monte Carlo checks.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors, 2 when a
//! verification run finds a mismatch.

mod output;
mod parse;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use poisson_order_k::exact::LambdaPoly;
use poisson_order_k::moments::{self, OrderParams};
use poisson_order_k::oracles;
use poisson_order_k::verify::{self, VerifyOptions, VerifyReport};
use poisson_order_k::BigRational;

use output::{emit_csv, emit_json, Format, OutputRecord};
use parse::parse_rational;

#[derive(Parser)]
#[command(
    name = "poisson-order-k",
    version,
    about = "Exact factorial moments and PMF of the Poisson distribution of order k"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print M_(n)(k, λ): coefficients, or its value when λ is given.
    Moment {
        /// Order of the distribution (k >= 1).
        #[arg(long)]
        k: u32,
        /// Moment order.
        #[arg(long)]
        n: u32,
        /// Rate, as `p/q` or a decimal; omit to print the polynomial only.
        #[arg(long)]
        lambda: Option<String>,
        /// Print the value as an exact rational instead of a float.
        #[arg(long)]
        exact: bool,
    },
    /// Print the PMF table P_0 … P_n_max with a cumulative column.
    Pmf {
        #[arg(long)]
        k: u32,
        /// Rate, as `p/q` or a decimal (must be positive).
        #[arg(long)]
        lambda: String,
        #[arg(long = "n-max")]
        n_max: u32,
    },
    /// Compare a closed-form coefficient of M_(n) against extraction.
    Coeff {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Power of λ: one of n, n−1, n−2, n−3 or 1 (within validity range).
        #[arg(long)]
        power: i64,
    },
    /// Cross-check all identities over a grid; exit 2 on any mismatch.
    Verify {
        #[arg(long = "k-max", default_value_t = 8)]
        k_max: u32,
        #[arg(long = "n-max", default_value_t = 12)]
        n_max: u32,
        /// Also run the Monte Carlo cross-check, seeded with this value.
        #[arg(long)]
        seed: Option<u64>,
        /// Corrupt the κ table on purpose; the run must then fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Monte Carlo estimates of M_(1) … M_(n_max) with standard errors.
    Sample {
        #[arg(long)]
        k: u32,
        /// Rate, as `p/q` or a decimal (0 < λ <= 30).
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Moment {
            k,
            n,
            lambda,
            exact,
        } => cmd_moment(k, n, lambda, exact, cli.format),
        Command::Pmf { k, lambda, n_max } => cmd_pmf(k, lambda, n_max, cli.format),
        Command::Coeff { k, n, power } => cmd_coeff(k, n, power, cli.format),
        Command::Verify {
            k_max,
            n_max,
            seed,
            inject_fault,
        } => cmd_verify(k_max, n_max, seed, inject_fault, cli.format),
        Command::Sample {
            k,
            lambda,
            trials,
            n_max,
            seed,
        } => cmd_sample(k, lambda, trials, n_max, seed, cli.format),
    }
}

fn order(k: u32) -> Result<OrderParams, String> {
    OrderParams::new(k).map_err(|e| e.to_string())
}

fn moment_poly(n: u32, params: OrderParams) -> LambdaPoly {
    #[cfg(feature = "parallel")]
    {
        moments::par_factorial_moment_poly(n, params)
    }
    #[cfg(not(feature = "parallel"))]
    {
        moments::factorial_moment_poly(n, params)
    }
}

fn run_verify(options: &VerifyOptions) -> VerifyReport {
    #[cfg(feature = "parallel")]
    {
        verify::par_run(options)
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify::run(options)
    }
}

fn emit(records: &[OutputRecord], format: Format, text: impl FnOnce()) {
    match format {
        Format::Text => text(),
        Format::Csv => emit_csv(records),
        Format::Json => emit_json(records),
    }
}

fn cmd_moment(
    k: u32,
    n: u32,
    lambda: Option<String>,
    exact: bool,
    format: Format,
) -> Result<ExitCode, String> {
    let params = order(k)?;
    let poly = moment_poly(n, params);
    let coeffs: Vec<String> = (0..=n as usize)
        .map(|i| poly.coeff(i).to_string())
        .collect();

    let mut record = OutputRecord::new("moment", k, n);
    record.coeffs = Some(coeffs.clone());
    let mut value_line = None;
    if let Some(raw) = lambda {
        let rate = parse_rational(&raw)?;
        let exact_value = poly.eval(&rate);
        let rendered = if exact {
            exact_value.to_string()
        } else {
            exact_value
                .to_f64()
                .ok_or_else(|| "value does not fit in a float".to_string())?
                .to_string()
        };
        record.lambda = Some(rate.to_string());
        record.value = Some(rendered.clone());
        value_line = Some((rate.to_string(), rendered));
    }

    emit(&[record], format, || {
        println!("M_({n})(k={k}, λ) = {poly}");
        println!("coefficients by power: [{}]", coeffs.join(", "));
        if let Some((rate, value)) = value_line {
            println!("value at λ = {rate}: {value}");
        }
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_pmf(k: u32, lambda: String, n_max: u32, format: Format) -> Result<ExitCode, String> {
    let params = order(k)?;
    let rate = parse_rational(&lambda)?;
    if !rate.is_positive() {
        return Err(format!("pmf requires lambda > 0, got {rate}"));
    }
    let rate_f64 = rate.to_f64().ok_or("lambda does not fit in a float")?;
    let prefactor = (-f64::from(k) * rate_f64).exp();

    let weights = oracles::pmf_weights_exact(params, &rate, n_max);
    let mut records = Vec::with_capacity(weights.len());
    let mut rows = Vec::with_capacity(weights.len());
    let mut partial = BigRational::zero();
    for (n, weight) in weights.iter().enumerate() {
        partial += weight;
        let p = prefactor * weight.to_f64().unwrap_or(f64::INFINITY);
        let cumulative = prefactor * partial.to_f64().unwrap_or(f64::INFINITY);
        let mut record = OutputRecord::new("pmf", k, n as u32);
        record.lambda = Some(rate.to_string());
        record.value = Some(p.to_string());
        record.status = Some(json!({ "cumulative": cumulative.to_string() }));
        records.push(record);
        rows.push((n, p, cumulative));
    }

    emit(&records, format, || {
        println!("P_n(k={k}, λ={rate}) with cumulative mass");
        println!("{:>6}  {:<24} {:<24}", "n", "P_n", "cumulative");
        for (n, p, cumulative) in rows {
            println!("{n:>6}  {p:<24} {cumulative:<24}");
        }
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_coeff(k: u32, n: u32, power: i64, format: Format) -> Result<ExitCode, String> {
    let params = order(k)?;
    let closed = moments::coeff_closed_form(n, params, power).map_err(|e| e.to_string())?;
    let extracted = moment_poly(n, params).coeff(power as usize);
    let matched = closed == extracted;

    let mut record = OutputRecord::new("coeff", k, n);
    record.value = Some(closed.to_string());
    record.status = Some(json!({
        "power": power,
        "extracted": extracted.to_string(),
        "match": matched,
    }));

    emit(&[record], format, || {
        let verdict = if matched { "match" } else { "MISMATCH" };
        println!(
            "[λ^{power}] M_({n})(k={k}): closed form {closed} = extracted {extracted}, {verdict}"
        );
    });
    if matched {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}

fn cmd_verify(
    k_max: u32,
    n_max: u32,
    seed: Option<u64>,
    inject_fault: bool,
    format: Format,
) -> Result<ExitCode, String> {
    if k_max < 1 {
        return Err("verify requires --k-max >= 1".to_string());
    }
    let mut options = VerifyOptions::new(k_max, n_max);
    options.seed = seed;
    options.inject_fault = inject_fault;
    let report = run_verify(&options);

    let records: Vec<OutputRecord> = report
        .checks
        .iter()
        .map(|check| {
            let mut record = OutputRecord::new("verify", k_max, n_max);
            record.status = Some(json!({
                "check": check.name,
                "cells": check.cells,
                "passed": check.passed(),
                "counterexample": check.counterexample,
            }));
            record
        })
        .collect();

    emit(&records, format, || {
        println!("verification grid: k <= {k_max}, n <= {n_max}");
        for check in &report.checks {
            match &check.counterexample {
                None => println!("  ok    {} ({} cells)", check.name, check.cells),
                Some(counterexample) => {
                    println!("  FAIL  {}: {counterexample}", check.name)
                }
            }
        }
        if report.passed() {
            println!("all checks passed");
        } else {
            println!("verification FAILED");
        }
    });

    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}

fn cmd_sample(
    k: u32,
    lambda: String,
    trials: u64,
    n_max: u32,
    seed: u64,
    format: Format,
) -> Result<ExitCode, String> {
    let params = order(k)?;
    if trials < 1 {
        return Err("sample requires --trials >= 1".to_string());
    }
    let rate = parse_rational(&lambda)?;
    let rate_f64 = rate.to_f64().ok_or("lambda does not fit in a float")?;

    #[cfg(feature = "parallel")]
    let summary = oracles::par_sample_moments(params, rate_f64, n_max, trials, seed)
        .map_err(|e| e.to_string())?;
    #[cfg(not(feature = "parallel"))]
    let summary = oracles::sample_moments(params, rate_f64, n_max, trials, seed)
        .map_err(|e| e.to_string())?;

    let records: Vec<OutputRecord> = summary
        .estimates
        .iter()
        .map(|est| {
            let mut record = OutputRecord::new("sample", k, est.order);
            record.lambda = Some(rate.to_string());
            record.value = Some(est.estimate.to_string());
            record.status = Some(json!({
                "exact": est.exact.to_string(),
                "std_error": est.std_error.to_string(),
                "z": est.z_score().to_string(),
                "trials": summary.trials,
                "seed": summary.seed,
            }));
            record
        })
        .collect();

    emit(&records, format, || {
        println!(
            "Monte Carlo: k={k}, λ={rate}, trials={}, seed={}",
            summary.trials, summary.seed
        );
        println!(
            "{:>4}  {:<22} {:<22} {:<22} {:<10}",
            "n", "estimate", "exact", "std_error", "z"
        );
        for est in &summary.estimates {
            println!(
                "{:>4}  {:<22} {:<22} {:<22} {:<10.3}",
                est.order,
                est.estimate,
                est.exact,
                est.std_error,
                est.z_score()
            );
        }
    });
    Ok(ExitCode::SUCCESS)
}

//! `rr`: batch front end for the Ratliff–Rush kernel.
//!
//! Exit codes: 0 success, 2 invalid input, 3 internal guard tripped.

mod instance;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rr_core::oracle::{self, OracleReport};
use rr_core::rr::{self, Filtration};
use rr_core::{qh, NormalizedIdeal};
use serde::Serialize;
use serde_json::{json, Value};

use instance::{Instance, Term, Within};

#[derive(Parser)]
#[command(
    name = "rr",
    version,
    about = "Ratliff-Rush filtrations over numerical semigroup rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Instance file (JSON).
    #[arg(short = 'i', long = "input", global = true)]
    input: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Series length for `series` and `verdict`.
    #[arg(long = "n-max", global = true)]
    n_max: Option<u32>,
    /// Truncation bound for `oracle-check`.
    #[arg(long, global = true)]
    bound: Option<i64>,
    /// Seed for the random `oracle-check` suite.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Number of random instances for `oracle-check` without `-i`.
    #[arg(long, global = true, default_value_t = 100)]
    count: usize,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Semigroup invariants, canonical ideal, normalized ideal and module.
    Info,
    /// The colon described by the instance's `colon` object.
    Colon,
    /// r(I^t, M) next to I^t and its Ratliff-Rush closure.
    Rr,
    /// Ratliff-Rush closure of I^t and the module closure of I^t M.
    Closure,
    /// Stabilization indices s, rho, s* and the reduction number.
    Indices,
    /// Length series of r(m^n, K) over the closures and the powers of m.
    Series,
    /// Quasi-Hilbert decision for the semigroup ring.
    Verdict,
    /// Hilbert function of A/(t^e).
    Hilbert,
    /// Kernel against the brute-force oracle, at bounds B and 2B.
    OracleCheck,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Kernel(rr_core::Error),
}

impl From<rr_core::Error> for CliError {
    fn from(e: rr_core::Error) -> Self {
        CliError::Kernel(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Kernel(e) if e.is_guard() => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &str {
        match self {
            CliError::Validation(_) => "Validation",
            CliError::Kernel(e) => e.kind(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Validation(m) => m.clone(),
            CliError::Kernel(e) => e.to_string(),
        }
    }
}

/// A command's output before rendering; `status` is the exit code.
struct Report {
    semigroup: Value,
    result: Value,
    diagnostics: Value,
    status: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.flags) {
        Ok(report) => {
            let body = json!({
                "semigroup": report.semigroup,
                "result": report.result,
                "diagnostics": report.diagnostics,
            });
            if cli.flags.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&body).expect("serializable")
                );
            } else {
                print!("{}", render::text(&body));
            }
            ExitCode::from(report.status)
        }
        Err(err) => {
            if cli.flags.json {
                let body = json!({"error": {"kind": err.kind(), "message": err.message(), "exit_code": err.exit_code()}});
                println!(
                    "{}",
                    serde_json::to_string_pretty(&body).expect("serializable")
                );
            } else {
                eprintln!("error ({}): {}", err.kind(), err.message());
            }
            ExitCode::from(err.exit_code())
        }
    }
}

fn load(flags: &Flags) -> Result<Instance, CliError> {
    let path = flags
        .input
        .as_ref()
        .ok_or_else(|| CliError::Validation("an instance file is required (-i FILE)".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    Instance::parse(&text)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(command: Command, flags: &Flags) -> Result<Report, CliError> {
    if let Command::OracleCheck = command {
        if flags.input.is_none() {
            return oracle_suite(flags);
        }
    }
    let inst = load(flags)?;
    let s = &inst.semigroup;
    let semigroup = json!({
        "generators": s.generators(),
        "multiplicity": s.multiplicity(),
        "frobenius": s.frobenius(),
        "gaps": s.gaps(),
    });
    let diagnostics = json!({
        "r_x": rr::reduction_index(&inst.ideal)?.r_x,
        "n_star": qh::stable_window(s)?.n_star,
    });
    let n_max = flags.n_max.or(inst.spec.n_max);
    let t = inst.t();
    let mut status = 0;
    let result = match command {
        Command::Info => info(&inst)?,
        Command::Colon => colon(&inst)?,
        Command::Rr => {
            let f = Filtration::new(&inst.ideal, &inst.module)?;
            let r = f.rr_ideal(t)?;
            let power = f.power(t);
            let closure = rr::rr_closure(&inst.ideal, t)?;
            json!({
                "t": t,
                "rr": to_value(&r),
                "minimal_generators": r.minimal_generators(),
                "power": to_value(&power),
                "closure": to_value(&closure),
                "rr_equals_power": r == power,
                "rr_equals_closure": r == closure,
                "length_over_power": r.quotient_length(&power)?,
                "length_over_closure": r.quotient_length(&closure)?,
            })
        }
        Command::Closure => {
            let closure = rr::rr_closure(&inst.ideal, t)?;
            let power = inst.ideal.power(t);
            json!({
                "t": t,
                "closure": to_value(&closure),
                "minimal_generators": closure.minimal_generators(),
                "power": to_value(&power),
                "closure_equals_power": closure == power,
                "module_closure": to_value(&rr::rr_module_closure(&inst.ideal, t, &inst.module)?),
                "integral_closure": to_value(&inst.ideal.integral_closure_power(t)),
            })
        }
        Command::Indices => {
            let idx = rr::indices(&inst.ideal, t, &inst.module)?;
            json!({
                "t": t,
                "s": idx.s,
                "rho": idx.rho,
                "s_star": idx.s_star,
                "r_x": idx.r_x,
                "v_min": idx.v_min,
            })
        }
        Command::Series => {
            let n_max = match n_max {
                Some(n) => n,
                None => qh::default_n_max(s)?,
            };
            let series = qh::e_series(s, n_max)?;
            let window = qh::stable_window(s)?;
            json!({
                "n_max": n_max,
                "e_series_tilde": series.tilde,
                "e_series_power": series.power,
                "stable_window": window.window,
                "n_star": window.n_star,
                "eventual_length": window.window.len(),
            })
        }
        Command::Verdict => to_value(&qh::verdict(s, n_max)?),
        Command::Hilbert => {
            let coefficients = qh::hilbert_fn_mod_x(s)?;
            json!({
                "polynomial": render::polynomial(&coefficients),
                "coefficients": coefficients,
            })
        }
        Command::OracleCheck => {
            let reports = oracle::check_instance_two_bounds(&inst.oracle_instance(), flags.bound)?;
            let (value, ok) = summarize(1, &reports);
            status = if ok { 0 } else { 3 };
            value
        }
    };
    Ok(Report {
        semigroup,
        result,
        diagnostics,
        status,
    })
}

fn info(inst: &Instance) -> Result<Value, CliError> {
    let s = &inst.semigroup;
    Ok(json!({
        "genus": s.genus(),
        "apery_set": s.apery_set(s.multiplicity())?,
        "symmetric": s.is_symmetric(),
        "canonical_ideal": to_value(&NormalizedIdeal::canonical(s)),
        "ideal": to_value(&inst.ideal),
        "ideal_generators": inst.ideal.minimal_generators(),
        "module": to_value(&inst.module),
        "module_generators": inst.module.minimal_generators(),
    }))
}

fn colon(inst: &Instance) -> Result<Value, CliError> {
    let spec = inst.spec.colon.as_ref().ok_or_else(|| {
        CliError::Validation("the colon command needs a \"colon\" object in the instance".into())
    })?;
    let term = |t: &Term| -> Result<NormalizedIdeal, CliError> {
        let p = inst.ideal.power(t.ideal_power);
        Ok(if t.with_module {
            p.product(&inst.module)?
        } else {
            p
        })
    };
    let numerator = term(&spec.numerator)?;
    let denominator = term(&spec.denominator)?;
    let result = match spec.within {
        Within::Ring => {
            numerator.colon_in(&denominator, &NormalizedIdeal::unit(&inst.semigroup))?
        }
        Within::Module => numerator.colon_in(&denominator, &inst.module)?,
        Within::Integers => numerator.colon_z(&denominator)?,
    };
    Ok(json!({
        "numerator": to_value(&numerator),
        "denominator": to_value(&denominator),
        "within": spec.within.name(),
        "colon": to_value(&result),
        "minimal_generators": result.minimal_generators(),
    }))
}

fn oracle_suite(flags: &Flags) -> Result<Report, CliError> {
    let reports = oracle::compare_suite_at(flags.seed, flags.count, flags.bound)?;
    let (result, ok) = summarize(flags.count, &reports);
    Ok(Report {
        semigroup: Value::Null,
        result,
        diagnostics: json!({"r_x": null, "n_star": null}),
        status: if ok { 0 } else { 3 },
    })
}

/// Summary of oracle reports and whether all of them agree with sound margins.
fn summarize(instances: usize, reports: &[OracleReport]) -> (Value, bool) {
    let mut bounds: Vec<i64> = reports.iter().map(|r| r.bound).collect();
    bounds.sort_unstable();
    bounds.dedup();
    let agree = reports.iter().all(|r| r.agree);
    let margins_ok = reports.iter().all(|r| r.margin_ok);
    let failures: Vec<&OracleReport> = reports
        .iter()
        .filter(|r| !r.agree || !r.margin_ok)
        .take(10)
        .collect();
    let value = json!({
        "instances": instances,
        "reports": reports.len(),
        "bounds": bounds,
        "agree": agree,
        "margins_ok": margins_ok,
        "failures": to_value(&failures),
    });
    (value, agree && margins_ok)
}

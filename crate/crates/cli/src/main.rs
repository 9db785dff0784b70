mod cache;
mod commands;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use pfdeg::algebra::parse_poly;
use pfdeg::families::Epsilon;
use pfdeg::realize::DEFAULT_BUDGET;
use pfdeg::{Error, DEFAULT_TOL};
use serde_json::Value;

use crate::cache::Cache;

#[derive(Parser)]
#[command(name = "pfdeg", version, about = "Bounds and witnesses for the Perron-Frobenius degree of Perron numbers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Root-isolation tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Directory of the result cache; caching is off when unset.
    #[arg(long, global = true, env = "PFDEG_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Compact single-line JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a polynomial and bound the degree of its Perron root.
    Analyze {
        /// Ascending comma-separated coefficients, e.g. "-1,-1,1".
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Largest k for the power-sum obstruction (default 2·degree).
        #[arg(long)]
        max_power: Option<usize>,
        /// Also lift the root γ to α with α + 1/α = γ.
        #[arg(long)]
        emit_biperron: bool,
    },
    /// Generate the cubic family member for ε and check its claims.
    Family {
        /// ε as "p/q" with 0 < ε ≤ 1/2.
        #[arg(long)]
        epsilon: String,
        /// Also build the bi-Perron sextic.
        #[arg(long)]
        emit_biperron: bool,
    },
    /// Search for a non-negative aperiodic realizing matrix.
    Realize {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Matrix size (default: the degree).
        #[arg(long)]
        n: Option<usize>,
        /// Largest entry.
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Node limit per first-row partition.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Invariant hull of the orbit of z0 under multiplication by t.
    Polygon {
        /// Multiplier as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Seed point as "re,im".
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        z0: String,
        /// Maximum number of orbit terms.
        #[arg(long, default_value_t = 10_000)]
        terms: usize,
    },
    /// Run the acceptance suite.
    Verify,
}

enum Failure {
    Parse(String),
    Module(Error),
    Suite,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) | Failure::Module(Error::MalformedInput(_) | Error::NotMonic(_)) => 2,
            Failure::Module(Error::Indeterminate(_)) => 3,
            Failure::Module(Error::BudgetExceeded(_)) => 4,
            _ => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

fn parse_complex(flag: &str, text: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [re, im] => match (re.parse::<f64>(), im.parse::<f64>()) {
            (Ok(re), Ok(im)) if re.is_finite() && im.is_finite() => Ok(Complex64::new(re, im)),
            _ => Err(Failure::Parse(format!("--{flag}: expected two numbers, got {text:?}"))),
        },
        _ => Err(Failure::Parse(format!("--{flag}: expected \"re,im\", got {text:?}"))),
    }
}

fn parse_epsilon(text: &str) -> Result<Epsilon, Failure> {
    text.parse()
        .map_err(|e: Error| Failure::Parse(format!("--epsilon: {e}")))
}

/// Canonical inputs and the closure computing the result.
type Job = (&'static str, Value, Box<dyn FnOnce() -> Result<Value, Failure>>);

fn job(command: Command, tol: f64) -> Result<Job, Failure> {
    Ok(match command {
        Command::Analyze {
            poly,
            max_power,
            emit_biperron,
        } => {
            let p = parse_poly(&poly)?;
            let k = max_power.unwrap_or(2 * p.degree()).max(1);
            let inputs = json::object([
                ("emit_biperron", emit_biperron.into()),
                ("max_power", json::integer(k)),
                ("poly", p.to_string().into()),
                ("tol", json::float(tol)),
            ]);
            (
                "analyze",
                inputs,
                Box::new(move || Ok(commands::cmd_analyze(&p, tol, k, emit_biperron)?)),
            )
        }
        Command::Family { epsilon, emit_biperron } => {
            let eps = parse_epsilon(&epsilon)?;
            let inputs = json::object([
                ("emit_biperron", emit_biperron.into()),
                ("epsilon", eps.to_string().into()),
                ("tol", json::float(tol)),
            ]);
            (
                "family",
                inputs,
                Box::new(move || Ok(commands::cmd_family(eps, tol, emit_biperron)?)),
            )
        }
        Command::Realize { poly, n, bound, budget } => {
            let p = parse_poly(&poly)?;
            let n = n.unwrap_or(p.degree());
            let inputs = json::object([
                ("bound", json::integer(bound)),
                ("budget", json::integer(budget)),
                ("n", json::integer(n)),
                ("poly", p.to_string().into()),
            ]);
            (
                "realize",
                inputs,
                Box::new(move || Ok(commands::cmd_realize(&p, n, bound, budget)?)),
            )
        }
        Command::Polygon { t, z0, terms } => {
            let t = parse_complex("t", &t)?;
            let z0 = parse_complex("z0", &z0)?;
            let inputs = json::object([
                ("t", json::complex(t)),
                ("terms", json::integer(terms)),
                ("z0", json::complex(z0)),
            ]);
            (
                "polygon",
                inputs,
                Box::new(move || Ok(commands::cmd_polygon(t, z0, terms)?)),
            )
        }
        Command::Verify => (
            "verify",
            json::object([]),
            Box::new(|| {
                let (v, ok) = commands::cmd_verify();
                if ok {
                    Ok(v)
                } else {
                    println!("{}", json::render(&v, false));
                    Err(Failure::Suite)
                }
            }),
        ),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let (command, inputs, compute) = job(cli.command, cli.global.tol)?;
    // verify reports timings, so its results are never cached
    let cache = match (&cli.global.cache_dir, command) {
        (Some(dir), c) if c != "verify" => Cache::open(dir),
        _ => None,
    };
    let key = cache::key(command, &inputs);
    let stored = cache.as_ref().and_then(|c| c.get(&key));
    let (result, hit) = match stored.and_then(|r| r.get("result").cloned()) {
        Some(r) => (r, true),
        None => (compute()?, false),
    };
    let mut report = json::object([
        ("command", command.into()),
        ("inputs", inputs),
        ("result", result),
        ("versions", format!("pfdeg {}", env!("CARGO_PKG_VERSION")).into()),
    ]);
    if let Some(c) = &cache {
        if !hit {
            c.put(&key, &report);
        }
        report["cache_hit"] = hit.into();
    }
    report["timing_ms"] = json::float(start.elapsed().as_secs_f64() * 1e3);
    println!("{}", json::render(&report, cli.global.pretty));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Parse(msg) => eprintln!("error: {msg}"),
                Failure::Module(e) => eprintln!("error: {e}"),
                Failure::Suite => eprintln!("error: acceptance suite failed"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Parse("x".into()).exit_code(), 2);
        assert_eq!(Failure::Module(Error::NotMonic("x".into())).exit_code(), 2);
        assert_eq!(Failure::Module(Error::Indeterminate("x".into())).exit_code(), 3);
        assert_eq!(Failure::Module(Error::BudgetExceeded(5)).exit_code(), 4);
        assert_eq!(Failure::Module(Error::NotPerron).exit_code(), 1);
        assert_eq!(Failure::Suite.exit_code(), 1);
    }

    #[test]
    fn complex_flags() {
        assert!(matches!(parse_complex("t", "0.5, -0.25"), Ok(z) if z == Complex64::new(0.5, -0.25)));
        assert!(matches!(parse_complex("t", "0.5"), Err(Failure::Parse(_))));
        assert!(matches!(parse_complex("t", "a,b"), Err(Failure::Parse(_))));
    }
}

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use alfeld::arrangement::{iso_check, terao_exponents};
use alfeld::geometry::{alfeld_split, SimplicialComplex};
use alfeld::homology::homology_dims;
use alfeld::spline::{spline_dim_graded, SmoothnessProblem};
use alfeld::verify::{sweep, Method};
use alfeld::{Error, Limits};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_TOO_LARGE: u8 = 3;

#[derive(Parser)]
#[command(name = "alfeld", version, about = "Exact spline and multiderivation dimensions on Alfeld splits")]
struct Cli {
    /// Entry cap (rows x cols) for any single exact elimination.
    #[arg(long, global = true, default_value_t = alfeld::linalg::DEFAULT_MAX_ENTRIES)]
    max_entries: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print dim C^r_k(AS(Δ_n)) computed by one method.
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value = "formula", value_parser = parse_method)]
        method: Method,
    },
    /// Cross-check methods over a grid and write a CSV or JSON report.
    Sweep {
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        r: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        k: RangeInclusive<u32>,
        /// Comma-separated methods, or `all` / `default`.
        #[arg(long, default_value = "default")]
        methods: String,
        /// Output file; the extension (.csv or .json) selects the format.
        #[arg(long)]
        out: PathBuf,
    },
    /// Exit 0 iff all methods agree for every k in 0..=kmax.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        kmax: u32,
        #[arg(long, default_value = "default")]
        methods: String,
    },
    /// Per-degree homology of the chain complex R/J on AS(Δ_n).
    Homology {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        kmax: u32,
    },
    /// Terao exponents of D^m(A_n).
    Exponents {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Signed-permutation witness relating splines on AS(Δ_n) to D^{r+1}(A_n).
    Iso {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
    },
    /// Graded spline dimension on a complex read from JSON.
    SplineDim {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Accepts `A..B`, `A..=B` (both inclusive) or a single integer.
fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

enum Failure {
    Mismatch(String),
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn nonneg(name: &str, v: i64) -> Result<u32, Error> {
    u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("{name} must be a nonnegative integer, got {v}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = Limits {
        max_entries: cli.max_entries,
    };
    match cli.command {
        Command::Dim { n, r, k, method } => {
            let d = match method {
                Method::Formula => alfeld::formulas::conjecture_dim(n, r, k)? as i64,
                other => {
                    if n < 1 {
                        return Err(Error::InvalidParameter(format!("n must be at least 1, got {n}")).into());
                    }
                    other.compute(nonneg("n", n)?, nonneg("r", r)?, nonneg("k", k)?, &limits)?
                }
            };
            println!("{d}");
        }
        Command::Sweep { n, r, k, methods, out } => {
            let methods = Method::parse_list(&methods)?;
            let report = sweep(n, r, k, &methods, &limits)?;
            let text = match out.extension().and_then(|e| e.to_str()) {
                Some("csv") => report.to_csv(),
                Some("json") => report.to_json(),
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "output {} must end in .csv or .json",
                        out.display()
                    ))
                    .into())
                }
            };
            fs::write(&out, text).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
            let groups = report.rows.len() / methods.len();
            eprintln!("wrote {} rows ({groups} grid points) to {}", report.rows.len(), out.display());
            if !report.all_agree() {
                return Err(Failure::Mismatch("methods disagree; see report".into()));
            }
        }
        Command::Verify { n, r, kmax, methods } => {
            let methods = Method::parse_list(&methods)?;
            let report = sweep(n..=n, r..=r, 0..=kmax, &methods, &limits)?;
            print!("{}", report.to_csv());
            if !report.all_agree() {
                return Err(Failure::Mismatch(format!("methods disagree for n={n}, r={r}")));
            }
            if report.any_skipped() {
                return Err(Error::InstanceTooLarge {
                    rows: 0,
                    cols: 0,
                    cap: limits.max_entries,
                }
                .into());
            }
        }
        Command::Homology { n, r, kmax } => {
            if n < 1 {
                return Err(Error::InvalidParameter("n must be at least 1".into()).into());
            }
            let complex = alfeld_split(n as usize);
            println!("k,i,dim");
            for k in 0..=kmax {
                for (i, d) in homology_dims(&complex, r, k, &limits)?.iter().enumerate() {
                    println!("{k},{i},{d}");
                }
            }
        }
        Command::Exponents { n, m } => {
            let e = terao_exponents(n, m)?;
            let list: Vec<String> = e.exponents.iter().map(u64::to_string).collect();
            println!("exponents: {}", list.join(" "));
            println!("constant derivation (degree 0): {}", if e.constant_derivation { "yes" } else { "no" });
        }
        Command::Iso { n, r } => match iso_check(n, r) {
            Ok(w) => println!("{w}"),
            Err(alfeld::arrangement::IsoFailure::Build(e)) => return Err(e.into()),
            Err(f) => return Err(Failure::Mismatch(f.to_string())),
        },
        Command::SplineDim { complex, r, k } => {
            let text = fs::read_to_string(&complex).map_err(|e| Failure::Io(format!("{}: {e}", complex.display())))?;
            let complex = SimplicialComplex::from_json_str(&text)?;
            println!("{}", spline_dim_graded(&SmoothnessProblem::new(complex, r), k, &limits)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Engine(e @ Error::InstanceTooLarge { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_TOO_LARGE)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

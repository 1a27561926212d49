use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use supertree::construct::{family, ConstructionSpec, Family};
use supertree::matching::{matching_polynomial, matching_polynomial_oracle, reduce};
use supertree::spectra::{default_tol, matching_energy, spectral_radius, SpectralSummary};
use supertree::verify::{check_cospectral, run_suite, SuiteConfig, SuiteName};
use supertree::{Error, Result, UniformHypergraph};

#[derive(Parser)]
#[command(
    name = "supertree",
    version,
    about = "Uniform supertrees, matching polynomials and cospectral checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named family or a JSON construction spec and print it.
    Construct(ConstructArgs),
    /// Print the matching polynomial of a hypergraph file.
    Matchpoly {
        file: PathBuf,
        /// Count matchings by enumeration instead of the recurrence.
        #[arg(long)]
        oracle: bool,
        /// Print z and q(y) with φ(x) = x^z q(x^r).
        #[arg(long)]
        reduced: bool,
        /// Human-readable output instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Print the spectral radius.
    Rho {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the matching energy.
    Me {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Print the full spectral summary as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compare two hypergraphs; exit 0 when their matching polynomials agree,
    /// 1 when they differ.
    Cospectral {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run a verification suite; JSON report on stdout, table on stderr.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    family: Option<String>,
    #[arg(long, requires = "family")]
    r: Option<usize>,
    #[arg(long, value_delimiter = ',', requires = "family")]
    params: Vec<usize>,
    /// JSON construction spec file (`-` for stdin).
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    name: String,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
    r: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 25)]
    trials: usize,
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    /// Inclusive range, `lo..hi`.
    #[arg(long, default_value = "6..10", value_parser = parse_range)]
    m_range: (usize, usize),
    #[arg(long, default_value = "6..10", value_parser = parse_range)]
    n_range: (usize, usize),
    /// Largest edge count of sampled supertrees.
    #[arg(long, default_value_t = 5)]
    max_edges: usize,
    #[arg(long)]
    tol: Option<f64>,
    /// Run only the case with this id.
    #[arg(long)]
    case: Option<String>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .or_else(|| s.split_once('-'))
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = hi
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

/// Reads a hypergraph file, ignoring an `anchors` map from `construct`.
fn read_hypergraph(path: &Path) -> Result<UniformHypergraph> {
    let mut value: Value = serde_json::from_str(&read_text(path)?)?;
    if let Some(obj) = value.as_object_mut() {
        obj.remove("anchors");
    }
    Ok(serde_json::from_value(value)?)
}

fn parse_family(name: &str) -> Result<Family> {
    const ALL: [Family; 12] = [
        Family::LoosePath,
        Family::Power,
        Family::PendantAttach,
        Family::T,
        Family::Q,
        Family::R,
        Family::W,
        Family::Z,
        Family::Coalesce,
        Family::CoalescePower,
        Family::Bridge,
        Family::Union,
    ];
    let key: String = name.chars().filter(|c| !matches!(c, '-' | '_')).collect();
    ALL.into_iter()
        .find(|f| format!("{f:?}").eq_ignore_ascii_case(&key))
        .ok_or_else(|| Error::InvalidParameter(format!("unknown family {name:?}")))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn fmt15(x: f64) -> String {
    let v: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    format!("{v}")
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(args) => {
            let spec = match (&args.spec, &args.family) {
                (Some(path), _) => serde_json::from_str::<ConstructionSpec>(&read_text(path)?)?,
                (None, Some(name)) => {
                    let r = args
                        .r
                        .ok_or_else(|| Error::InvalidParameter("--r is required".into()))?;
                    ConstructionSpec::simple(parse_family(name)?, r, args.params.clone())
                }
                (None, None) => unreachable!("clap requires --family or --spec"),
            };
            let built = family(&spec)?;
            match &args.output {
                Some(path) => fs::write(path, serde_json::to_string(&built)? + "\n")?,
                None => print_json(&built)?,
            }
        }
        Command::Matchpoly {
            file,
            oracle,
            reduced,
            text,
        } => {
            let h = read_hypergraph(&file)?;
            let phi = if oracle {
                matching_polynomial_oracle(&h)
            } else {
                matching_polynomial(&h)
            };
            match (reduced, text) {
                (false, false) => print_json(&phi.to_json("x"))?,
                (false, true) => println!("{phi}"),
                (true, _) => {
                    let red = reduce(&phi, h.r(), h.n())?;
                    if text {
                        println!(
                            "x^{} * q(x^{}), q(y) = {}",
                            red.z,
                            red.r,
                            red.q.display_with("y")
                        );
                    } else {
                        print_json(&json!({
                            "z": red.z,
                            "r": red.r,
                            "nu": red.matching_number(),
                            "q": red.q.to_json("y"),
                        }))?;
                    }
                }
            }
        }
        Command::Rho { file, tol } => {
            let h = read_hypergraph(&file)?;
            println!(
                "{}",
                fmt15(spectral_radius(&h, tol.unwrap_or_else(default_tol))?)
            );
        }
        Command::Me { file, tol, json } => {
            let h = read_hypergraph(&file)?;
            let tol = tol.unwrap_or_else(default_tol);
            if json {
                print_json(&SpectralSummary::compute(&h, tol)?)?;
            } else {
                println!("{}", fmt15(matching_energy(&h, tol)?));
            }
        }
        Command::Cospectral { a, b, tol } => {
            let h1 = read_hypergraph(&a)?;
            let h2 = read_hypergraph(&b)?;
            let report = check_cospectral(&h1, &h2, tol.unwrap_or_else(default_tol))?;
            print_json(&report)?;
            return Ok(if report.phi_equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Suite(args) => {
            let name = SuiteName::parse(&args.name)?;
            let config = SuiteConfig {
                r_list: args.r,
                seed: args.seed,
                trials: args.trials,
                m_max: args.m_max,
                m_range: args.m_range,
                n_range: args.n_range,
                tol: args.tol.unwrap_or_else(default_tol),
                max_edges: args.max_edges,
                timing: args.timing,
                only_case: args.case,
            };
            let report = run_suite(name, &config)?;
            print_json(&report)?;
            eprint!("{}", report.table());
            return Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

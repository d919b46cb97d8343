//! Command-line front end: exploratory printing of the hypersurface
//! family and its Frobenius data, certificate generation, and seeded
//! self-tests. Exit codes: 0 verified, 1 certification/selftest failure,
//! 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fsing::certify::{self, doc_to_string, CertifyError};
use fsing::cohomology::{basis_of_degree, frobenius_matrix_on_piece, CechSymbol};
use fsing::selftest::run_selftest;
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fsing",
    version,
    about = "Frobenius actions on graded local cohomology of weighted hypersurfaces over F_p(t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format (text for exploration, json for machine use)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the hypersurface data for a prime p
    Example {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print the cohomology basis of a graded piece
    Basis {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print the Frobenius matrix on a graded piece
    Frobenius {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Produce and verify a certificate for a claim
    Certify {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Run the seeded randomized property suites
    Selftest {
        #[arg(long, default_value_t = 0xF5EED)]
        seed: u64,
        /// Cases per suite
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

#[derive(Args)]
struct CertifyOpts {
    #[arg(long)]
    p: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Subcommand)]
enum Claim {
    /// Isolated singularity / geometric normality via Jacobian powers
    Normality {
        #[command(flatten)]
        opts: CertifyOpts,
        /// Use only the partial derivatives, excluding f itself
        #[arg(long)]
        no_f: bool,
    },
    /// F-injectivity of the Veronese subring
    FInjective {
        #[command(flatten)]
        opts: CertifyOpts,
    },
    /// F-injective but not F-anti-nilpotent
    AntiNilpotent {
        #[command(flatten)]
        opts: CertifyOpts,
    },
    /// Loss of F-injectivity after adjoining t^{1/p}
    GeoFInjective {
        #[command(flatten)]
        opts: CertifyOpts,
    },
    /// Nilpotent classes in the enveloping algebra / Segre square
    Enveloping {
        #[command(flatten)]
        opts: CertifyOpts,
    },
    /// The Segre product with a polynomial plane is not F-full
    NotFFull {
        #[command(flatten)]
        opts: CertifyOpts,
        /// Veronese index override
        #[arg(long)]
        n: Option<u64>,
    },
}

fn emit(output: &OutputOpts, text: String) -> Result<(), std::io::Error> {
    match &output.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
    }
}

fn run() -> Result<ExitCode, CertifyError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Example { p, output } => {
            let h = certify::make_example(p)?;
            let format = output.format.unwrap_or(Format::Text);
            let text = match format {
                Format::Text => format!(
                    "p = {}\nf = {}\nweights = {:?}\nm = {}\na-invariant = {}\n",
                    p,
                    h.f().render(),
                    h.ring().weights(),
                    h.x_degree(),
                    h.a_invariant()
                ),
                Format::Json => doc_to_string(&json!({
                    "p": p,
                    "f": h.f().render(),
                    "weights": h.ring().weights(),
                    "m": h.x_degree(),
                    "a_invariant": h.a_invariant(),
                })),
            };
            emit(&output, text).expect("write output");
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis { p, degree, output } => {
            let h = certify::make_example(p)?;
            let basis = basis_of_degree(&h, degree);
            let format = output.format.unwrap_or(Format::Text);
            let text = match format {
                Format::Text => {
                    let mut s = format!("degree {degree}: dimension {}\n", basis.len());
                    for sym in &basis {
                        s.push_str(&sym.render());
                        s.push('\n');
                    }
                    s
                }
                Format::Json => doc_to_string(&json!({
                    "degree": degree,
                    "dimension": basis.len(),
                    "basis": basis.iter().map(CechSymbol::render).collect::<Vec<_>>(),
                })),
            };
            emit(&output, text).expect("write output");
            Ok(ExitCode::SUCCESS)
        }
        Command::Frobenius { p, degree, output } => {
            let h = certify::make_example(p)?;
            let map = frobenius_matrix_on_piece(&h, degree)?;
            let format = output.format.unwrap_or(Format::Text);
            let text = match format {
                Format::Text => {
                    let mut s =
                        format!("degree {degree}: {} -> {}\n", map.src_dim(), map.dst_dim());
                    for i in 0..map.dst_dim() {
                        let row: Vec<String> = (0..map.src_dim())
                            .map(|j| map.matrix().get(i, j).render())
                            .collect();
                        s.push_str(&format!("[{}]\n", row.join(", ")));
                    }
                    s
                }
                Format::Json => doc_to_string(&map.to_json()),
            };
            emit(&output, text).expect("write output");
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { claim } => {
            let (opts, doc) = match claim {
                Claim::Normality { opts, no_f } => {
                    let cert = certify::certify_normality(opts.p, !no_f)?;
                    (opts, cert.to_json()?)
                }
                Claim::FInjective { opts } => {
                    let cert = certify::certify_f_injective(opts.p)?;
                    (opts, cert.to_json()?)
                }
                Claim::AntiNilpotent { opts } => {
                    let cert = certify::certify_anti_nilpotent(opts.p)?;
                    (opts, cert.to_json()?)
                }
                Claim::GeoFInjective { opts } => {
                    let cert = certify::certify_geo_f_inj_failure(opts.p)?;
                    (opts, cert.to_json()?)
                }
                Claim::Enveloping { opts } => {
                    let cert = certify::certify_enveloping(opts.p)?;
                    (opts, cert.to_json()?)
                }
                Claim::NotFFull { opts, n } => {
                    let cert = certify::certify_not_f_full(opts.p, n)?;
                    (opts, cert.to_json()?)
                }
            };
            emit(&opts.output, doc_to_string(&doc)).expect("write output");
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { seed, cases } => {
            let outcome = run_selftest(seed, cases);
            println!("seed = {seed}, cases per suite = {cases}");
            for r in &outcome.reports {
                println!(
                    "{}: {} ({} cases, {} failures)",
                    if r.failures == 0 { "pass" } else { "FAIL" },
                    r.name,
                    r.cases,
                    r.failures
                );
            }
            if outcome.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use propb::alteration::{run_alteration, AlterationParams};
use propb::analysis::{design_check, verify_paper_example};
use propb::colouring::{enumerate_proper, is_two_colourable};
use propb::constructions::{self, derive_h8};
use propb::report::RunReport;
use propb::{io, Hypergraph};

/// Exact 2-colourability workbench for non-uniform hypergraphs.
///
/// Hypergraph files use the `p <v> <m>` text format with one edge per line.
/// Set PROPB_ENUM_LIMIT to change the vertex limit for exhaustive enumeration
/// (default 28).
#[derive(Parser)]
#[command(name = "propb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named construction: triangle, fano, seymour-toft, h4, h8, paper-example
    Construct {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the exact and decimal value of q(H) = Σ 2^-|e|
    Q { file: PathBuf },
    /// Decide 2-colourability and print a witness or UNCOLOURABLE
    Check { file: PathBuf },
    /// Count proper colourings exhaustively
    Count { file: PathBuf },
    /// Turn opposite pairs of proper colourings into 8-edges
    DeriveH8 {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Sample n-edges, then kill every surviving colouring with a large edge
    Alteration {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seed: u64,
        /// Resample until at most 2^big_edge_size colourings survive
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 50)]
        max_retries: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check whether the edges form a t-design on the vertex set
    DesignCheck {
        file: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Run every check on the 16-vertex example
    VerifyPaper,
}

/// Exit-code classes: 0 success, 1 a check failed, 2 usage or IO error.
enum Failure {
    Check(String),
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    io::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_hypergraph(path: &Path, h: &Hypergraph) -> Result<(), Failure> {
    fs::write(path, io::serialize(h))
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn print_report(report: &RunReport) -> Result<(), Failure> {
    print!("{report}");
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} check(s) failed",
            report.failed()
        )))
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Construct { name, output } => {
            let h = constructions::by_name(&name)?;
            match output {
                Some(path) => write_hypergraph(&path, &h)?,
                None => print!("{}", io::serialize(&h)),
            }
        }
        Command::Q { file } => {
            let q = read_hypergraph(&file)?.q_value();
            println!("{q} = {}", q.to_decimal_string());
        }
        Command::Check { file } => {
            let h = read_hypergraph(&file)?;
            match is_two_colourable(&h).witness {
                Some(w) => println!("COLOURABLE {w}"),
                None => println!("UNCOLOURABLE"),
            }
        }
        Command::Count { file } => {
            let h = read_hypergraph(&file)?;
            let r = enumerate_proper(&h, false)?;
            println!("proper = {}", r.total_proper);
            println!("balanced = {}", r.balanced_count);
        }
        Command::DeriveH8 { file, output } => {
            let h8 = derive_h8(&read_hypergraph(&file)?)?;
            write_hypergraph(&output, &h8)?;
        }
        Command::Alteration {
            n,
            seed,
            strict,
            max_retries,
            output,
        } => {
            let params = AlterationParams::new(n, seed, max_retries, strict)?;
            let outcome = match run_alteration(&params) {
                Ok(o) => o,
                Err(e @ propb::Error::RetriesExhausted { .. }) => {
                    return Err(Failure::Check(e.to_string()))
                }
                Err(e) => return Err(e.into()),
            };
            let report = outcome.run_report();
            if let Some(path) = output {
                write_hypergraph(&path, &outcome.hypergraph)?;
            }
            print_report(&report)?;
        }
        Command::DesignCheck { file, t } => {
            let h = read_hypergraph(&file)?;
            let blocks: Vec<Vec<usize>> = h
                .edges()
                .iter()
                .map(|e| e.members().iter().map(|&x| x as usize).collect())
                .collect();
            let d = design_check(&blocks, h.vertex_count(), t)?;
            let mut report = RunReport::new("design-check");
            report
                .entry("t", d.t)
                .entry("points", d.point_count)
                .entry("blocks", d.block_count)
                .entry("block_size", d.block_size);
            match (&d.lambda, &d.counterexample) {
                (Some(l), _) => {
                    report.entry("lambda", l);
                    report.check("constant_lambda", "constant", format!("lambda = {l}"), true);
                }
                (None, c) => {
                    report.check(
                        "constant_lambda",
                        "constant",
                        format!("differs at {c:?}"),
                        false,
                    );
                }
            }
            print_report(&report)?;
        }
        Command::VerifyPaper => print_report(&verify_paper_example())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("elapsed_ms = {}", start.elapsed().as_millis());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("propb: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("propb: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end. Every invocation rebuilds its state from the input
//! file.
//!
//! Exit codes: 0 success, 1 "no intersection" from single-pair `query` or
//! `reduce`, 2 usage error, 3 unreadable or malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bench::{adversarial_failure_demo, sweep_threshold, TSV_HEADER};
use crate::oracles::OracleSpec;
use crate::reduction::{decide_intersection, ExportFormat};
use crate::{Eps, Error, IntersectionIndex, OracleParams, ReductionGraph, SetFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "setisect", about = "Set-intersection index and distance-oracle reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct ReductionArgs {
    /// Multiplicative slack of the oracle, as p/q in (0, 1]; stretch is 2 - eps.
    #[arg(long, value_parser = parse_eps)]
    eps: Eps,
    /// Additive error of the oracle.
    #[arg(long)]
    c: u32,
}

impl ReductionArgs {
    fn params(&self) -> OracleParams {
        OracleParams::new(self.eps, self.c)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the index and print its space report.
    BuildCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Answer one pair with the intersection index.
    Query {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["I", "J"], required = true)]
        pair: Vec<usize>,
    },
    /// Answer one pair through a distance oracle on the reduction graph.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        reduction: ReductionArgs,
        #[arg(long, value_parser = parse_oracle)]
        oracle: OracleSpec,
        #[arg(long, num_args = 2, value_names = ["I", "J"], required = true)]
        pair: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the raw oracle estimate between two vertices of the reduction graph.
    OracleQuery {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        reduction: ReductionArgs,
        #[arg(long, value_parser = parse_oracle)]
        oracle: OracleSpec,
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        vertices: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep the large-set threshold and print one TSV row per value.
    Bench {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sweep: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print "-" instead of wall-clock columns, for reproducible output.
        #[arg(long)]
        no_timing: bool,
    },
    /// Write the reduction graph as an edge list or DIMACS file.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_format)]
        format: ExportFormat,
        #[command(flatten)]
        reduction: ReductionArgs,
    },
    /// Find a pair that a stretch-`mult` oracle gets wrong.
    DemoFailure {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        mult: f64,
        #[command(flatten)]
        reduction: ReductionArgs,
    },
}

fn parse_eps(s: &str) -> Result<Eps, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_oracle(s: &str) -> Result<OracleSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ExportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<SetFamily, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    SetFamily::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn answer(yes: bool) -> i32 {
    if yes {
        EXIT_OK
    } else {
        EXIT_NO
    }
}

fn execute(command: Command, out: &mut String) -> Result<i32, Failure> {
    use std::fmt::Write as _;

    match command {
        Command::BuildCheck { input, t } => {
            let family = load(&input)?;
            let r = IntersectionIndex::build(&family, t)?.space_report();
            writeln!(
                out,
                "num_large={} matrix_bits={} membership_entries={}",
                r.num_large, r.matrix_bits, r.membership_entries
            )
            .unwrap();
            Ok(EXIT_OK)
        }
        Command::Query { input, t, pair } => {
            let family = load(&input)?;
            let index = IntersectionIndex::build(&family, t)?;
            let r = index.query(pair[0], pair[1])?;
            match r.witness {
                Some(w) => writeln!(out, "{} witness={w} probes={}", u8::from(r.intersects), r.probes),
                None => writeln!(out, "{} probes={}", u8::from(r.intersects), r.probes),
            }
            .unwrap();
            Ok(answer(r.intersects))
        }
        Command::Reduce {
            input,
            reduction,
            oracle,
            pair,
            seed,
        } => {
            let family = load(&input)?;
            let params = reduction.params();
            let graph = ReductionGraph::subdivided(&family, &params);
            let oracle = oracle.build(&graph, seed)?;
            let yes = decide_intersection(&graph, oracle.as_ref(), &params, pair[0], pair[1])?;
            writeln!(out, "{}", u8::from(yes)).unwrap();
            Ok(answer(yes))
        }
        Command::OracleQuery {
            input,
            reduction,
            oracle,
            vertices,
            seed,
        } => {
            let family = load(&input)?;
            let graph = ReductionGraph::subdivided(&family, &reduction.params());
            graph.check_vertex(vertices[0])?;
            graph.check_vertex(vertices[1])?;
            let oracle = oracle.build(&graph, seed)?;
            writeln!(out, "{}", oracle.estimate(vertices[0], vertices[1])).unwrap();
            Ok(EXIT_OK)
        }
        Command::Bench {
            input,
            sweep,
            samples,
            seed,
            no_timing,
        } => {
            let family = load(&input)?;
            let rows = sweep_threshold(&family, &sweep, samples, seed)?;
            writeln!(out, "{TSV_HEADER}").unwrap();
            for row in &rows {
                writeln!(out, "{}", row.to_tsv(!no_timing)).unwrap();
            }
            Ok(EXIT_OK)
        }
        Command::Export {
            input,
            format,
            reduction,
        } => {
            let family = load(&input)?;
            let graph = ReductionGraph::subdivided(&family, &reduction.params());
            out.push_str(&graph.export(format));
            Ok(EXIT_OK)
        }
        Command::DemoFailure {
            input,
            mult,
            reduction,
        } => {
            let family = load(&input)?;
            let demo = adversarial_failure_demo(&family, mult, &reduction.params())?;
            match demo.pair {
                Some((i, j)) => writeln!(
                    out,
                    "found=1 pair={i} {j} estimate={} truth={} threshold={}",
                    demo.estimate,
                    u8::from(demo.truth),
                    reduction.params().threshold()
                ),
                None => writeln!(out, "found=0"),
            }
            .unwrap();
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its output to `stdout`, diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut out = String::new();
    match execute(cli.command, &mut out) {
        Ok(code) => {
            let _ = stdout.write_all(out.as_bytes());
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
    }
}

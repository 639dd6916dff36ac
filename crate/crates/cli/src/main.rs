//! `circ`: spanning-tree counts, decompositions and Mahler asymptotics for
//! circulant graphs.

mod commands;
mod record;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use circulant::exact::DEFAULT_ORACLE_CEILING;
use circulant::{Family, OracleConfig};
use clap::{Parser, Subcommand};

use commands::{exit, parse_family, parse_range, CmdResult, MahlerMethod, TauMethod};
use record::{write_records, Format};

#[derive(Debug, Parser)]
#[command(name = "circ", version, about = "Spanning trees of circulant graphs")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write rows to FILE instead of stdout
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    /// Add wall-clock timings to each row
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct CeilingArg {
    /// Largest vertex count the matrix-tree oracle accepts
    #[arg(long, env = "CIRC_ORACLE_CEILING", default_value_t = DEFAULT_ORACLE_CEILING)]
    oracle_ceiling: usize,
}

impl CeilingArg {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            ceiling: self.oracle_ceiling,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count spanning trees of one circulant, e.g. `C12(1,3)` or `C3(1;d)`
    Tau {
        spec: String,
        #[arg(long, value_enum, default_value_t = TauMethod::Formula)]
        method: TauMethod,
        #[command(flatten)]
        ceiling: CeilingArg,
    },
    /// Count spanning trees with the matrix-tree oracle only
    Oracle {
        spec: String,
        #[command(flatten)]
        ceiling: CeilingArg,
    },
    /// Sweep a family (`C*(1,2)`, `C*(1,2;d)`) or check `C16-iso-pair`
    Verify {
        pattern: String,
        #[arg(long, default_value_t = 30)]
        n_max: u64,
        #[command(flatten)]
        ceiling: CeilingArg,
    },
    /// Mahler measure of the Laurent polynomial of a step list
    Mahler {
        steps: String,
        #[arg(long, default_value = "even")]
        family: Family,
        #[arg(long, value_enum, default_value_t = MahlerMethod::RootProduct)]
        method: MahlerMethod,
    },
    /// Ratio of tau(n) to its asymptotic prediction over a range of n
    Asymptote {
        steps: String,
        #[arg(long, default_value = "even")]
        family: Family,
        /// Orders as `a..b`
        #[arg(long, default_value = "5..30")]
        n: String,
    },
    /// Split tau = c·n·a² for one or more circulants
    Decompose {
        #[arg(required = true)]
        specs: Vec<String>,
        #[arg(long, value_enum, default_value_t = TauMethod::Formula)]
        method: TauMethod,
        #[command(flatten)]
        ceiling: CeilingArg,
    },
    /// The sequence a(n) of a step family, optionally checked against a recursion
    Sequence {
        steps: String,
        #[arg(long, default_value = "even")]
        family: Family,
        /// Orders as `a..b`
        #[arg(long)]
        n: String,
        /// Coefficients c_1,…,c_k of a(n) = c_1·a(n−1) + … + c_k·a(n−k)
        #[arg(long, allow_hyphen_values = true)]
        check_recursion: Option<String>,
        /// Terms preceding the range (default: computed, with a(0) = 0)
        #[arg(long, allow_hyphen_values = true)]
        seeds: Option<String>,
    },
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Tau {
            spec,
            method,
            ceiling,
        } => commands::cmd_tau(spec, *method, &ceiling.config(), cli.timings),
        Command::Oracle { spec, ceiling } => {
            commands::cmd_tau(spec, TauMethod::Oracle, &ceiling.config(), cli.timings)
        }
        Command::Verify {
            pattern,
            n_max,
            ceiling,
        } => verify::cmd_verify(pattern, *n_max, &ceiling.config(), cli.timings),
        Command::Mahler {
            steps,
            family,
            method,
        } => commands::cmd_mahler(&parse_family(steps, *family)?, *method),
        Command::Asymptote { steps, family, n } => {
            commands::cmd_asymptote(&parse_family(steps, *family)?, parse_range(n)?)
        }
        Command::Decompose {
            specs,
            method,
            ceiling,
        } => commands::cmd_decompose(specs, *method, &ceiling.config()),
        Command::Sequence {
            steps,
            family,
            n,
            check_recursion,
            seeds,
        } => commands::cmd_sequence(
            &parse_family(steps, *family)?,
            parse_range(n)?,
            check_recursion.as_deref(),
            seeds.as_deref(),
        ),
    }
}

fn emit(cli: &Cli, records: &[record::OutputRecord]) -> io::Result<()> {
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_records(&mut w, records, cli.format)?;
            w.flush()
        }
        None => write_records(&mut io::stdout().lock(), records, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("circ: {}", e.message);
            return ExitCode::from(e.code);
        }
    };
    if let Err(e) = emit(&cli, &outcome.records) {
        eprintln!("circ: cannot write output: {e}");
        return ExitCode::from(exit::IO);
    }
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    ExitCode::from(outcome.code)
}

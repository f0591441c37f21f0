//! Argument parsing and command dispatch for the `palmod` binary.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use palmod_core::asymptotics;
use palmod_core::bijection_m2::{Family, TernaryWord};
use palmod_core::bijection_m3::TwoOneWord;
use palmod_core::counting::{self, CountCell, CountTable, Method};
use palmod_core::oracle::Oracle;
use palmod_core::{Composition, Modulus};

use crate::error::{CliError, ExitCode};
use crate::goldens::{self, Table};
use crate::render::{self, OutputFormat};
use crate::trace;
use crate::verify::{self, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "palmod", version, about = "Compositions of n that are palindromic modulo m")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Largest n the brute-force oracle will enumerate (at most 63).
    #[arg(long, global = true, default_value_t = palmod_core::oracle::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u64,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracle,
    Recurrence,
    Closed,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichTable {
    Table1,
    Table2,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count pc(n, m) with one or all methods.
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Modulus,
        #[arg(long, value_enum, default_value_t = MethodArg::Recurrence)]
        method: MethodArg,
    },
    /// Tabulate pc(n, m) for 1 <= n <= n-max over a list of moduli.
    Table {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<Modulus>,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_delimiter = ',', default_value = "recurrence")]
        methods: Vec<Method>,
    },
    /// Trace the m = 2 bijection from a word over {0,1,2}.
    Bij2 {
        #[arg(long)]
        word: TernaryWord,
        #[arg(long, default_value = "plain")]
        family: Family,
    },
    /// Recover the word and family of a composition palindromic modulo 2.
    Bij2Inverse {
        #[arg(long)]
        composition: Composition,
    },
    /// Trace the m = 3 bijection from a word over {1,2}.
    Bij3 {
        #[arg(long)]
        word: TwoOneWord,
    },
    /// Recover the word in A_n of a composition palindromic modulo 3.
    Bij3Inverse {
        #[arg(long)]
        composition: Composition,
    },
    /// Regenerate the worked tables and diff them against fixtures.
    Goldens {
        #[arg(long, value_enum, default_value_t = WhichTable::All)]
        which: WhichTable,
        /// Compare against this file instead of the embedded fixture.
        #[arg(long, value_name = "FILE")]
        fixture: Option<PathBuf>,
    },
    /// Run the exhaustive property suite.
    Verify {
        #[arg(long, default_value_t = 14)]
        n_max: u64,
        #[arg(long, default_value_t = 6)]
        m_max: u64,
    },
    /// Growth rate and limit constants with the observed error.
    Asymptotics {
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4])]
        m: Vec<u64>,
        #[arg(long, default_value_t = 50)]
        n_lo: u64,
        #[arg(long, default_value_t = 60)]
        n_hi: u64,
    },
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to `err`; command output goes to `--out` or `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { ExitCode::Domain } else { ExitCode::Success };
        }
    };
    match execute(&cli, out) {
        Ok(()) => ExitCode::Success,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    if cli.global.oracle_cap == 0 || cli.global.oracle_cap > palmod_core::oracle::MAX_SUPPORTED_N {
        return Err(CliError::Usage(format!(
            "--oracle-cap must be between 1 and {}",
            palmod_core::oracle::MAX_SUPPORTED_N
        )));
    }
    let oracle = Oracle::with_cap(cli.global.oracle_cap);
    let format = cli.global.format;
    let mut file;
    let out: &mut dyn Write = match &cli.global.out {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    let result = dispatch(&cli.command, format, &oracle, out);
    out.flush()?;
    result
}

fn dispatch(command: &Command, format: OutputFormat, oracle: &Oracle, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Count { n, m, method } => cmd_count(*n, *m, *method, format, oracle, out),
        Command::Table { m, n_max, methods } => {
            let table = counting::count_table(m, *n_max, methods, oracle)?;
            render::count_table(&table, format, out)?;
            verdict(table.all_agree())
        }
        Command::Bij2 { word, family } => trace::write_m2(&trace::m2_forward(word, *family)?, format, out),
        Command::Bij2Inverse { composition } => trace::write_m2(&trace::m2_inverse(composition)?, format, out),
        Command::Bij3 { word } => trace::write_m3(&trace::m3_forward(word)?, format, out),
        Command::Bij3Inverse { composition } => trace::write_m3(&trace::m3_inverse(composition)?, format, out),
        Command::Goldens { which, fixture } => cmd_goldens(*which, fixture.as_ref(), format, out),
        Command::Verify { n_max, m_max } => cmd_verify(*n_max, *m_max, format, oracle, out),
        Command::Asymptotics { m, n_lo, n_hi } => {
            let reports = m
                .iter()
                .map(|&m| asymptotics::verify_asymptotics(m, *n_lo, *n_hi))
                .collect::<Result<Vec<_>, _>>()?;
            render::asymptotics(&reports, format, out)
        }
    }
}

fn verdict(agree: bool) -> Result<(), CliError> {
    if agree {
        Ok(())
    } else {
        Err(CliError::Verification("counting methods disagree".into()))
    }
}

fn closed_supported(m: Modulus) -> bool {
    matches!(m, Modulus::Infinity) || (1..=4).contains(&m.get().unwrap_or(0))
}

fn cmd_count(
    n: u64,
    m: Modulus,
    method: MethodArg,
    format: OutputFormat,
    oracle: &Oracle,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(palmod_core::Error::NTooSmall { n, min: 1 }.into());
    }
    let methods: Vec<Method> = match method {
        MethodArg::Oracle => vec![Method::Oracle],
        MethodArg::Recurrence => vec![Method::Recurrence],
        MethodArg::Closed => vec![Method::Closed],
        MethodArg::All => Method::ALL
            .into_iter()
            .filter(|&k| match k {
                Method::Oracle => n <= oracle.cap(),
                Method::Recurrence => true,
                Method::Closed => closed_supported(m),
            })
            .collect(),
    };
    let values = methods
        .iter()
        .map(|&k| {
            let v = match k {
                Method::Oracle => verify::par_count_pc(n, m, oracle)?,
                Method::Recurrence => counting::pc_recurrence(n, m)?,
                Method::Closed => counting::pc_closed(n, m)?,
            };
            Ok((k, v))
        })
        .collect::<Result<Vec<_>, palmod_core::Error>>()?;
    let cell = CountCell { n, m, values };
    let agree = cell.agree();
    match format {
        OutputFormat::Text => {
            if cell.values.len() == 1 {
                writeln!(out, "{}", cell.value())?;
            } else {
                for (k, v) in &cell.values {
                    writeln!(out, "{:<10} {v}", k.name())?;
                }
                writeln!(out, "{} {}", cell.value(), if agree { "AGREE" } else { "DISAGREE" })?;
            }
        }
        _ => {
            let table = CountTable { moduli: vec![m], n_max: n, methods, cells: vec![cell] };
            render::count_table(&table, format, out)?;
        }
    }
    verdict(agree)
}

fn cmd_goldens(
    which: WhichTable,
    fixture: Option<&PathBuf>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let tables = match which {
        WhichTable::Table1 => vec![Table::Table1],
        WhichTable::Table2 => vec![Table::Table2],
        WhichTable::All => {
            if fixture.is_some() {
                return Err(CliError::Usage("--fixture needs --which table1 or table2".into()));
            }
            vec![Table::Table1, Table::Table2]
        }
    };
    let custom = fixture.map(std::fs::read_to_string).transpose()?;
    let reports = tables
        .into_iter()
        .map(|t| goldens::check(t, custom.as_deref().unwrap_or(t.fixture())))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        OutputFormat::Json => {
            let doc: Vec<_> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "table": r.table.name(),
                        "passed": r.passed(),
                        "rows": r.rows,
                        "cells": r.cells,
                        "mismatch": r.mismatch.as_ref().map(|m| m.to_string()),
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["table", "status", "rows", "cells", "mismatch"])?;
            for r in &reports {
                let mismatch = r.mismatch.as_ref().map(|m| m.to_string()).unwrap_or_default();
                w.write_record([
                    r.table.name(),
                    if r.passed() { "PASS" } else { "FAIL" },
                    &r.rows.to_string(),
                    &r.cells.to_string(),
                    &mismatch,
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            for r in &reports {
                match &r.mismatch {
                    None => writeln!(out, "{}: PASS ({} rows, {} cells)", r.table.name(), r.rows, r.cells)?,
                    Some(m) => writeln!(out, "{}: FAIL {m}", r.table.name())?,
                }
            }
        }
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.table.name()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("golden mismatch in {}", failed.join(", "))))
    }
}

fn cmd_verify(
    n_max: u64,
    m_max: u64,
    format: OutputFormat,
    oracle: &Oracle,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if m_max == 0 {
        return Err(palmod_core::Error::ZeroModulus.into());
    }
    let config = VerifyConfig { n_max, m_max, oracle: *oracle };
    let outcomes = verify::run(&config);
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &outcomes)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["property", "status", "detail"])?;
            for o in &outcomes {
                w.write_record([o.name, if o.passed { "PASS" } else { "FAIL" }, &o.detail])?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status}  {:<38} {}", o.name, o.detail)?;
            }
        }
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

/// Entry point used by `main`; writes to the real stdout and stderr.
pub fn main_with_stdio() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

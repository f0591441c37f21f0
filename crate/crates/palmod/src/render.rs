//! Text, CSV and JSON renderings. CSV and JSON layouts are stable: the count
//! table header is `n,m,method,value,agree`, the asymptotics header is
//! `m,alpha_inverse,c,d`, and JSON counts are decimal strings.

use std::io::Write;

use clap::ValueEnum;
use palmod_core::asymptotics::AsymptoticReport;
use palmod_core::counting::CountTable;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Serialize)]
struct CountRow {
    n: u64,
    m: String,
    method: &'static str,
    value: String,
    agree: bool,
}

fn count_rows(table: &CountTable) -> Vec<CountRow> {
    table
        .cells
        .iter()
        .flat_map(|cell| {
            let agree = cell.agree();
            cell.values.iter().map(move |(method, value)| CountRow {
                n: cell.n,
                m: cell.m.to_string(),
                method: method.name(),
                value: value.to_string(),
                agree,
            })
        })
        .collect()
}

pub fn count_table(table: &CountTable, format: OutputFormat, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in count_rows(table) {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc {
                methods: Vec<&'static str>,
                all_agree: bool,
                rows: Vec<CountRow>,
            }
            let doc = Doc {
                methods: table.methods.iter().map(|m| m.name()).collect(),
                all_agree: table.all_agree(),
                rows: count_rows(table),
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        OutputFormat::Text => {
            let width = table
                .cells
                .iter()
                .map(|c| c.value().to_string().len())
                .max()
                .unwrap_or(1)
                .max(4);
            write!(out, "{:>4}", "n")?;
            for m in &table.moduli {
                write!(out, "  {:>width$}", format!("m={m}"))?;
            }
            writeln!(out)?;
            for n in 1..=table.n_max {
                write!(out, "{n:>4}")?;
                for &m in &table.moduli {
                    let cell = table.column(m).find(|c| c.n == n).expect("dense table");
                    let mark = if cell.agree() { "" } else { "!" };
                    write!(out, "  {:>width$}", format!("{}{mark}", cell.value()))?;
                }
                writeln!(out)?;
            }
            let methods: Vec<_> = table.methods.iter().map(|m| m.name()).collect();
            let verdict = if table.all_agree() { "AGREE" } else { "DISAGREE" };
            writeln!(out, "methods: {} -> {verdict}", methods.join(", "))?;
        }
    }
    Ok(())
}

/// Formats `x` with 10 significant digits in fixed notation.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Serialize)]
struct AsymptoticRow {
    m: u64,
    alpha_inverse: String,
    c: String,
    d: String,
}

pub fn asymptotics(
    reports: &[AsymptoticReport],
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                let p = &r.profile;
                w.serialize(AsymptoticRow {
                    m: p.m,
                    alpha_inverse: sig10(p.growth()),
                    c: sig10(p.c),
                    d: sig10(p.d),
                })?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Row {
                m: u64,
                alpha: f64,
                alpha_inverse: f64,
                bracket: [f64; 2],
                c: f64,
                d: f64,
                n_lo: u64,
                n_hi: u64,
                max_error: f64,
                max_error_top_quartile: f64,
            }
            let rows: Vec<Row> = reports
                .iter()
                .map(|r| {
                    let p = &r.profile;
                    Row {
                        m: p.m,
                        alpha: p.alpha,
                        alpha_inverse: p.growth(),
                        bracket: [p.bracket.lo, p.bracket.hi],
                        c: p.c,
                        d: p.d,
                        n_lo: r.rows.first().map_or(0, |x| x.n),
                        n_hi: r.rows.last().map_or(0, |x| x.n),
                        max_error: r.max_error,
                        max_error_top_quartile: r.max_error_top_quartile,
                    }
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        OutputFormat::Text => {
            writeln!(out, "{:>4}  {:>14}  {:>14}  {:>14}  {:>10}", "m", "alpha_inverse", "c", "d", "max_err")?;
            for r in reports {
                let p = &r.profile;
                writeln!(
                    out,
                    "{:>4}  {:>14}  {:>14}  {:>14}  {:>10.3e}",
                    p.m,
                    sig10(p.growth()),
                    sig10(p.c),
                    sig10(p.d),
                    r.max_error
                )?;
            }
            if let (Some(first), Some(last)) = (reports.first(), reports.first().and_then(|r| r.rows.last())) {
                let lo = first.rows.first().map_or(0, |x| x.n);
                writeln!(out, "max_err = max |pc(n,m) alpha^n - (c + (-1)^n d)| over {lo} <= n <= {}", last.n)?;
            }
        }
    }
    Ok(())
}

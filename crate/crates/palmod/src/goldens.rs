//! Regenerates the two worked tables (the `m = 2` words for `n = 4` and the
//! `m = 3` decompositions of `A_8`) and diffs them against embedded
//! fixtures.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use palmod_core::bijection_m2::{self, TernaryWord};
use palmod_core::bijection_m3;

use crate::error::CliError;

pub const TABLE1_FIXTURE: &str = include_str!("../fixtures/table1.txt");
pub const TABLE2_FIXTURE: &str = include_str!("../fixtures/table2.txt");

const TABLE1_COLUMNS: [&str; 4] = ["word", "triples", "composition of 8", "composition of 9"];
const TABLE2_COLUMNS: [&str; 3] = ["a", "decomposition", "b"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Table1,
    Table2,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::Table1 => "table1",
            Table::Table2 => "table2",
        }
    }

    pub fn fixture(self) -> &'static str {
        match self {
            Table::Table1 => TABLE1_FIXTURE,
            Table::Table2 => TABLE2_FIXTURE,
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            Table::Table1 => &TABLE1_COLUMNS,
            Table::Table2 => &TABLE2_COLUMNS,
        }
    }

    pub fn generate(self) -> Result<Vec<Vec<String>>, CliError> {
        match self {
            Table::Table1 => Ok(generate_table1()),
            Table::Table2 => generate_table2(),
        }
    }
}

impl FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table1" => Ok(Table::Table1),
            "table2" => Ok(Table::Table2),
            other => Err(format!("unknown table `{other}` (expected table1 or table2)")),
        }
    }
}

/// Rows of `a | b | c` cells; `#` lines and blanks are skipped and all
/// whitespace inside cells is dropped.
pub fn parse_fixture(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split('|').map(|c| c.chars().filter(|ch| !ch.is_whitespace()).collect()).collect())
        .collect()
}

/// Every ternary word of length 3, plain then marked.
pub fn generate_table1() -> Vec<Vec<String>> {
    let mut rows = Vec::with_capacity(54);
    for word in TernaryWord::all(4) {
        let plain = bijection_m2::word_to_triples(&word);
        let marked = bijection_m2::mark_last(&plain).expect("fresh sequences end unflipped");
        for seq in [plain, marked] {
            let even = bijection_m2::triples_to_composition(&seq);
            let odd = bijection_m2::lift_parity(&even).expect("image is palindromic mod 2");
            rows.push(vec![word.to_string(), seq.to_string(), even.to_string(), odd.to_string()]);
        }
    }
    rows
}

pub fn generate_table2() -> Result<Vec<Vec<String>>, CliError> {
    bijection_m3::an_elements(8)?
        .iter()
        .map(|a| {
            let d = bijection_m3::decompose(a)?;
            let b = bijection_m3::forward(a)?;
            Ok(vec![a.to_string(), d.to_string(), b.to_string()])
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// 1-based data row of the fixture (0 for rows only in the regenerated table).
    pub row: usize,
    pub column: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {} column `{}`: expected `{}`, got `{}`",
            self.row, self.column, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenReport {
    pub table: Table,
    pub rows: usize,
    pub cells: usize,
    pub mismatch: Option<Mismatch>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Regenerates `table` and compares it with `fixture`, matching rows by
/// their first cell (and occurrence order for repeated keys).
pub fn check(table: Table, fixture: &str) -> Result<GoldenReport, CliError> {
    let expected = parse_fixture(fixture);
    let actual = table.generate()?;
    let columns = table.columns();
    let mut by_key: HashMap<&str, Vec<&Vec<String>>> = HashMap::new();
    for row in &actual {
        by_key.entry(row[0].as_str()).or_default().push(row);
    }
    let mut used: HashMap<&str, usize> = HashMap::new();
    let mut cells = 0;
    let report = |mismatch| GoldenReport { table, rows: expected.len(), cells: 0, mismatch: Some(mismatch) };

    for (i, row) in expected.iter().enumerate() {
        let key = row[0].as_str();
        let slot = used.entry(key).or_insert(0);
        let Some(generated) = by_key.get(key).and_then(|rows| rows.get(*slot)) else {
            return Ok(report(Mismatch {
                row: i + 1,
                column: columns[0].to_string(),
                expected: key.to_string(),
                actual: "<no such row>".to_string(),
            }));
        };
        *slot += 1;
        if row.len() != columns.len() {
            return Ok(report(Mismatch {
                row: i + 1,
                column: "<row>".to_string(),
                expected: format!("{} cells", columns.len()),
                actual: format!("{} cells", row.len()),
            }));
        }
        for (col, (want, got)) in row.iter().zip(generated.iter()).enumerate() {
            if want != got {
                return Ok(report(Mismatch {
                    row: i + 1,
                    column: columns[col].to_string(),
                    expected: want.clone(),
                    actual: got.clone(),
                }));
            }
            cells += 1;
        }
    }
    if expected.len() != actual.len() {
        let extra = actual
            .iter()
            .find(|r| used.get(r[0].as_str()).copied().unwrap_or(0) < by_key[r[0].as_str()].len())
            .map(|r| r.join(" | "))
            .unwrap_or_default();
        return Ok(report(Mismatch {
            row: 0,
            column: "<row>".to_string(),
            expected: format!("{} rows", expected.len()),
            actual: format!("{} rows, first unmatched: {extra}", actual.len()),
        }));
    }
    Ok(GoldenReport { table, rows: expected.len(), cells, mismatch: None })
}

//! Reference tables of tangle counts, shipped with the crate.
//!
//! Each table is one column of `p<TAB>value` lines; blank cells at small
//! `p` are simply absent.

use crate::algebra::BigInt;
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Which reference table a column belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    /// `n = 1` connected correlators `G₄ᶜ`, `G₆ᶜ`, `G₈ᶜ`.
    Tab1,
    /// `n = −2` four-leg function `Γ`.
    Tab2,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::Tab1 => "tab1",
            TableId::Tab2 => "tab2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub table: TableId,
    pub column: &'static str,
    pub rows: Vec<(usize, BigInt)>,
}

impl GoldenTable {
    /// File name under which the column is stored.
    pub fn file_name(&self) -> String {
        format!("{}_{}.tsv", self.table, self.column)
    }

    pub fn get(&self, p: usize) -> Option<&BigInt> {
        self.rows.iter().find(|(q, _)| *q == p).map(|(_, v)| v)
    }

    pub fn parse(table: TableId, column: &'static str, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = || Error::InvalidArgument(format!("{table}_{column}: malformed line {}", i + 1));
            let (p, v) = line.split_once('\t').ok_or_else(bad)?;
            let p = p.trim().parse::<usize>().map_err(|_| bad())?;
            let v = BigInt::from_str(v.trim()).map_err(|_| bad())?;
            rows.push((p, v));
        }
        Ok(GoldenTable { table, column, rows })
    }
}

/// The `(table, column)` pairs, in the order they are reported.
pub const COLUMNS: [(TableId, &str); 4] = [
    (TableId::Tab1, "G4c"),
    (TableId::Tab1, "G6c"),
    (TableId::Tab1, "G8c"),
    (TableId::Tab2, "Gamma"),
];

fn embedded(table: TableId, column: &str) -> &'static str {
    match (table, column) {
        (TableId::Tab1, "G4c") => include_str!("../golden/tab1_G4c.tsv"),
        (TableId::Tab1, "G6c") => include_str!("../golden/tab1_G6c.tsv"),
        (TableId::Tab1, "G8c") => include_str!("../golden/tab1_G8c.tsv"),
        (TableId::Tab2, "Gamma") => include_str!("../golden/tab2_Gamma.tsv"),
        _ => "",
    }
}

/// The tables compiled into the crate.
pub fn builtin() -> Vec<GoldenTable> {
    COLUMNS
        .iter()
        .map(|&(t, c)| GoldenTable::parse(t, c, embedded(t, c)).expect("embedded table is well formed"))
        .collect()
}

/// Number of legs of a tab1 column.
pub fn legs(column: &str) -> Option<usize> {
    match column {
        "G4c" => Some(4),
        "G6c" => Some(6),
        "G8c" => Some(8),
        _ => None,
    }
}

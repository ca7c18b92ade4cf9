//! CSV encoding of sweep tables.
//!
//! Numbers use the shortest decimal representation that parses back to the
//! same `f64`; absent values are empty cells.

use crate::cli::sweep::{SweepRow, SweepTable, HEADER};
use crate::{Error, Result};

/// Shortest representation that parses back to the same `f64`; exponent
/// form outside `[1e-4, 1e15)`.
pub fn number(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

pub fn write_table(table: &SweepTable) -> String {
    let mut out = String::with_capacity(64 * (table.rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for row in &table.rows {
        let cells = [
            table.swept_param.clone(),
            number(row.swept_value),
            table.family_param.clone(),
            number(row.family_value),
            row.n.to_string(),
            row.l.to_string(),
            number(row.k),
            optional(row.energy),
            optional(row.residual),
            optional(row.oracle_energy),
            optional(row.oracle_gap),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn read_table(text: &str) -> Result<SweepTable> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim_end() == HEADER => {}
        _ => return Err(Error::Parse { line: 1, message: "unexpected CSV header".into() }),
    }
    let mut table = SweepTable { swept_param: String::new(), family_param: String::new(), rows: Vec::new() };
    for (index, line) in lines {
        let line_no = index + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let cells: Vec<&str> = line.trim_end().split(',').collect();
        if cells.len() != 11 {
            return Err(err(format!("expected 11 cells, found {}", cells.len())));
        }
        let num = |i: usize| cells[i].parse::<f64>().map_err(|_| err(format!("bad number `{}`", cells[i])));
        let opt = |i: usize| if cells[i].is_empty() { Ok(None) } else { num(i).map(Some) };
        table.swept_param = cells[0].to_string();
        table.family_param = cells[2].to_string();
        table.rows.push(SweepRow {
            swept_value: num(1)?,
            family_value: num(3)?,
            n: cells[4].parse().map_err(|_| err(format!("bad n `{}`", cells[4])))?,
            l: cells[5].parse().map_err(|_| err(format!("bad l `{}`", cells[5])))?,
            k: num(6)?,
            energy: opt(7)?,
            residual: opt(8)?,
            oracle_energy: opt(9)?,
            oracle_gap: opt(10)?,
        });
    }
    Ok(table)
}

//! Output rows and their JSON-lines, CSV and table renderings.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

/// One output row. Absent fields serialize as `null` (empty in CSV); big
/// integers are decimal strings.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct OutputRecord {
    pub spec: Option<String>,
    pub n: Option<u64>,
    pub family: Option<String>,
    pub method: Option<String>,
    pub tau: Option<String>,
    pub coefficient: Option<u64>,
    pub a: Option<String>,
    pub mahler: Option<f64>,
    pub mahler_error: Option<f64>,
    pub small_measure: Option<f64>,
    pub ratio: Option<f64>,
    pub check: Option<String>,
    pub status: Option<String>,
    pub detail: Option<String>,
    pub timings_ms: Option<f64>,
}

pub const COLUMNS: [&str; 15] = [
    "spec",
    "n",
    "family",
    "method",
    "tau",
    "coefficient",
    "a",
    "mahler",
    "mahler_error",
    "small_measure",
    "ratio",
    "check",
    "status",
    "detail",
    "timings_ms",
];

impl OutputRecord {
    fn cells(&self) -> [Option<String>; 15] {
        let num = |v: Option<f64>| v.map(short_float);
        [
            self.spec.clone(),
            self.n.map(|v| v.to_string()),
            self.family.clone(),
            self.method.clone(),
            self.tau.clone(),
            self.coefficient.map(|v| v.to_string()),
            self.a.clone(),
            num(self.mahler),
            num(self.mahler_error),
            num(self.small_measure),
            num(self.ratio),
            self.check.clone(),
            self.status.clone(),
            self.detail.clone(),
            num(self.timings_ms),
        ]
    }
}

/// Plain notation except for very small or very large magnitudes.
fn short_float(x: f64) -> String {
    if x != 0.0 && !(1e-4..1e15).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub fn write_records(
    out: &mut dyn Write,
    records: &[OutputRecord],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(&mut *out);
            w.write_record(COLUMNS)?;
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Table => write_table(out, records)?,
    }
    out.flush()
}

/// Aligned columns, omitting columns that are null in every row.
fn write_table(out: &mut dyn Write, records: &[OutputRecord]) -> std::io::Result<()> {
    let rows: Vec<[Option<String>; 15]> = records.iter().map(OutputRecord::cells).collect();
    let used: Vec<usize> = (0..COLUMNS.len())
        .filter(|&c| rows.iter().any(|r| r[c].is_some()))
        .collect();
    let text = |cell: &Option<String>| cell.clone().unwrap_or_else(|| "-".into());
    let widths: Vec<usize> = used
        .iter()
        .map(|&c| {
            rows.iter()
                .map(|r| text(&r[c]).chars().count())
                .chain([COLUMNS[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(
        out,
        "{}",
        line(used.iter().map(|&c| COLUMNS[c].to_string()).collect())
    )?;
    for r in &rows {
        writeln!(out, "{}", line(used.iter().map(|&c| text(&r[c])).collect()))?;
    }
    Ok(())
}

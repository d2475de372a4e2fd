//! Per-field verification reports and their serialization.

use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::bounds::Comparators;
use crate::error::{Error, Result};
use crate::field::{into_io, DataFormat};

/// Outcome of checking the main theorem for one field.
///
/// Optional values are absent when the field lies outside the domain where
/// they are defined (see `notes`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub label: String,
    pub kappa: f64,
    pub x_used: Option<f64>,
    pub upper_19: Option<f64>,
    pub lower_19: Option<f64>,
    pub pass_upper: Option<bool>,
    pub pass_lower: Option<bool>,
    pub c_min_upper: Option<f64>,
    pub c_min_lower: Option<f64>,
    pub comparators: Option<Comparators>,
    pub notes: String,
}

pub const REPORT_COLUMNS: [&str; 11] = [
    "label",
    "kappa",
    "x_used",
    "upper_19",
    "lower_19",
    "pass_upper",
    "pass_lower",
    "c_min_upper",
    "c_min_lower",
    "comparators",
    "notes",
];

/// Seventeen significant digits, enough to round-trip any double.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_real(v: Option<f64>) -> String {
    v.map(fmt_real).unwrap_or_default()
}

fn opt_bool(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

pub fn write_reports<W: Write>(reports: &[BoundReport], sink: W, format: DataFormat) -> Result<()> {
    match format {
        DataFormat::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(REPORT_COLUMNS).map_err(into_io)?;
            for r in reports {
                w.write_record([
                    r.label.clone(),
                    fmt_real(r.kappa),
                    opt_real(r.x_used),
                    opt_real(r.upper_19),
                    opt_real(r.lower_19),
                    opt_bool(r.pass_upper),
                    opt_bool(r.pass_lower),
                    opt_real(r.c_min_upper),
                    opt_real(r.c_min_lower),
                    r.comparators.as_ref().map(Comparators::to_field).unwrap_or_default(),
                    r.notes.clone(),
                ])
                .map_err(into_io)?;
            }
            w.flush()?;
        }
        DataFormat::Jsonl => {
            let mut sink = sink;
            for r in reports {
                serde_json::to_writer(&mut sink, r).map_err(std::io::Error::from)?;
                sink.write_all(b"\n")?;
            }
            sink.flush()?;
        }
    }
    Ok(())
}

pub fn read_reports<R: Read>(source: R, format: DataFormat) -> Result<Vec<BoundReport>> {
    match format {
        DataFormat::Csv => read_csv(source),
        DataFormat::Jsonl => {
            let mut out = Vec::new();
            for (i, line) in BufReader::new(source).lines().enumerate() {
                let line_text = line?;
                if line_text.trim().is_empty() {
                    continue;
                }
                out.push(serde_json::from_str(&line_text).map_err(|e| Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })?);
            }
            Ok(out)
        }
    }
}

fn read_csv<R: Read>(source: R) -> Result<Vec<BoundReport>> {
    let mut rdr = csv::Reader::from_reader(source);
    let headers = rdr.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if headers.iter().ne(REPORT_COLUMNS) {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected columns {}", REPORT_COLUMNS.join(",")),
        });
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let perr = |message: String| Error::Parse { line, message };
        let real = |i: usize| -> Result<Option<f64>> {
            match &row[i] {
                "" => Ok(None),
                s => s.parse().map(Some).map_err(|_| perr(format!("bad number `{s}` in `{}`", REPORT_COLUMNS[i]))),
            }
        };
        let flag = |i: usize| -> Result<Option<bool>> {
            match &row[i] {
                "" => Ok(None),
                s => s.parse().map(Some).map_err(|_| perr(format!("bad flag `{s}` in `{}`", REPORT_COLUMNS[i]))),
            }
        };
        let comparators = match &row[9] {
            "" => None,
            s => Some(Comparators::from_field(s).map_err(perr)?),
        };
        out.push(BoundReport {
            label: row[0].to_string(),
            kappa: real(1)?.ok_or_else(|| perr("missing kappa".into()))?,
            x_used: real(2)?,
            upper_19: real(3)?,
            lower_19: real(4)?,
            pass_upper: flag(5)?,
            pass_lower: flag(6)?,
            c_min_upper: real(7)?,
            c_min_lower: real(8)?,
            comparators,
            notes: row[10].to_string(),
        });
    }
    Ok(out)
}

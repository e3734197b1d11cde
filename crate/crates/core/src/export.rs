//! Text formats for catalogs, reports and point evaluations.
//!
//! Floats are written with 15 significant digits, in scientific notation
//! when `|x| < 1e-4` (or `>= 1e15`), with a period as decimal separator.
//! Values stored in [`ZeroRecord`]s are already rounded to 15 significant
//! digits, so writing and re-reading them is exact.

use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zero_finder::{ZeroCatalog, ZeroRecord};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            other => Err(Error::Domain(format!("unknown format {other:?}"))),
        }
    }
}

impl Format {
    fn delimiter(self) -> u8 {
        match self {
            Format::Tsv => b'\t',
            _ => b',',
        }
    }
}

/// Formats `x` with 15 significant digits.
pub fn fmt_sig15(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.14e}");
    let ax = x.abs();
    if !(1e-4..1e15).contains(&ax) {
        return sci;
    }
    // Decimal exponent after rounding to 15 digits.
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if exp >= 15 {
        return sci;
    }
    let decimals = (14 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Rounds to the nearest double that prints exactly in 15 significant digits.
pub fn quantize(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap()
}

/// Largest 15-significant-digit value not above `x`.
pub fn quantize_down(x: f64) -> f64 {
    let q = quantize(x);
    if q <= x {
        q
    } else {
        quantize(q - ulp15(q))
    }
}

/// Smallest 15-significant-digit value not below `x`.
pub fn quantize_up(x: f64) -> f64 {
    let q = quantize(x);
    if q >= x {
        q
    } else {
        quantize(q + ulp15(q))
    }
}

fn ulp15(q: f64) -> f64 {
    10f64.powi(q.abs().log10().floor() as i32 - 14)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Domain(format!("csv: {e}"))
}

fn io_err(e: std::io::Error) -> Error {
    Error::Domain(format!("io: {e}"))
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Domain(format!("json: {e}"))
}

/// Writes a header and rows of already formatted cells as CSV or TSV.
pub fn write_table<W: Write>(out: W, format: Format, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(format.delimiter())
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(json_err)?;
    out.write_all(b"\n").map_err(io_err)
}

pub const CATALOG_HEADER: [&str; 3] = ["index", "gamma", "z_residual"];

#[derive(Serialize, Deserialize)]
struct CatalogDocument {
    schema_version: u32,
    zeros: Vec<ZeroRecord>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CatalogInput {
    Document(CatalogDocument),
    Bare(Vec<ZeroRecord>),
}

pub fn write_catalog<W: Write>(out: W, catalog: &ZeroCatalog, format: Format) -> Result<()> {
    match format {
        Format::Json => write_json(
            out,
            &CatalogDocument {
                schema_version: SCHEMA_VERSION,
                zeros: catalog.records.clone(),
            },
        ),
        Format::Csv | Format::Tsv => {
            let rows: Vec<Vec<String>> = catalog
                .records
                .iter()
                .map(|r| vec![r.index.to_string(), fmt_sig15(r.gamma), fmt_sig15(r.z_residual)])
                .collect();
            write_table(out, format, &CATALOG_HEADER, &rows)
        }
    }
}

/// Reads zero records back. CSV and TSV carry only `index`, `gamma` and
/// `z_residual`; the bracket is then reported as the single point `gamma`.
pub fn read_catalog<R: Read>(input: R, format: Format) -> Result<Vec<ZeroRecord>> {
    match format {
        Format::Json => {
            let doc: CatalogInput = serde_json::from_reader(input).map_err(json_err)?;
            Ok(match doc {
                CatalogInput::Document(d) => d.zeros,
                CatalogInput::Bare(v) => v,
            })
        }
        Format::Csv | Format::Tsv => {
            let mut r = csv::ReaderBuilder::new()
                .delimiter(format.delimiter())
                .from_reader(input);
            let headers = r.headers().map_err(csv_err)?.clone();
            if headers.iter().ne(CATALOG_HEADER) {
                return Err(Error::Domain(format!("unexpected catalog header {headers:?}")));
            }
            let mut out = Vec::new();
            for row in r.records() {
                let row = row.map_err(csv_err)?;
                let field = |i: usize| -> Result<f64> {
                    row[i]
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad number {:?}", &row[i])))
                };
                let index = row[0]
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad index {:?}", &row[0])))?;
                let gamma = field(1)?;
                out.push(ZeroRecord {
                    index,
                    gamma,
                    bracket_lo: gamma,
                    bracket_hi: gamma,
                    z_residual: field(2)?,
                    assumed_multiplicity: 1,
                });
            }
            Ok(out)
        }
    }
}

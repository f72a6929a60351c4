use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// One measured (or externally computed) tunneling time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementRecord {
    /// Peak field, au.
    pub f: f64,
    /// Time, as.
    pub t: f64,
    pub err_lo: f64,
    pub err_hi: f64,
    pub source: String,
}

impl MeasurementRecord {
    /// Half-width used for "within error bars": the larger of the two bars.
    pub fn bar(&self) -> f64 {
        self.err_lo.max(self.err_hi)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MeasurementSet {
    /// Records sorted by field strength.
    pub records: Vec<MeasurementRecord>,
    pub warnings: Vec<String>,
}

enum Bars {
    Asymmetric { lo: usize, hi: usize },
    Symmetric(usize),
}

/// Reads a measurement CSV from disk. See [`parse_measurements`].
pub fn load_measurements(path: impl AsRef<Path>) -> Result<MeasurementSet> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let default_source = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_measurements(file, &default_source)
}

/// Parses `field_au,time_as,err_lo_as,err_hi_as[,source]` or the symmetric
/// form `field_au,time_as,err_as[,source]`. Lines starting with `#` are
/// skipped. Records without a `source` column get `default_source`.
pub fn parse_measurements(input: impl Read, default_source: &str) -> Result<MeasurementSet> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input);

    let headers = reader.headers().map_err(|e| parse_error(&e, 1))?.clone();
    let column = |name: &str| headers.iter().position(|h| h == name);
    let field_col = column("field_au").ok_or_else(|| Error::MissingColumn("field_au".into()))?;
    let time_col = column("time_as").ok_or_else(|| Error::MissingColumn("time_as".into()))?;
    let bars = match (column("err_lo_as"), column("err_hi_as"), column("err_as")) {
        (Some(lo), Some(hi), _) => Bars::Asymmetric { lo, hi },
        (Some(_), None, _) => return Err(Error::MissingColumn("err_hi_as".into())),
        (None, Some(_), _) => return Err(Error::MissingColumn("err_lo_as".into())),
        (None, None, Some(e)) => Bars::Symmetric(e),
        (None, None, None) => return Err(Error::MissingColumn("err_lo_as".into())),
    };
    let source_col = column("source");

    let mut set = MeasurementSet::default();
    for row in reader.records() {
        let row = row.map_err(|e| parse_error(&e, 0))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != headers.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", headers.len(), row.len()),
            });
        }
        let number = |col: usize, name: &str| -> Result<f64> {
            let raw = &row[col];
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse { line, message: format!("{name}: `{raw}` is not a finite number") })
        };
        let f = number(field_col, "field_au")?;
        let t = number(time_col, "time_as")?;
        let (err_lo, err_hi) = match bars {
            Bars::Asymmetric { lo, hi } => (number(lo, "err_lo_as")?, number(hi, "err_hi_as")?),
            Bars::Symmetric(e) => {
                let e = number(e, "err_as")?;
                (e, e)
            }
        };
        if f <= 0.0 {
            return Err(Error::Parse { line, message: format!("field_au must be > 0, got {f}") });
        }
        if err_lo < 0.0 || err_hi < 0.0 {
            return Err(Error::Parse { line, message: "error bars must be >= 0".into() });
        }
        let source = source_col.map_or_else(|| default_source.to_string(), |c| row[c].to_string());
        if let Some(prev) = set.records.last() {
            if f <= prev.f {
                set.warnings.push(format!("line {line}: field_au {f} does not increase (previous {})", prev.f));
            }
        }
        set.records.push(MeasurementRecord { f, t, err_lo, err_hi, source });
    }
    set.records.sort_by(|a, b| a.f.total_cmp(&b.f));
    Ok(set)
}

fn parse_error(err: &csv::Error, fallback_line: u64) -> Error {
    let line = err.position().map_or(fallback_line, |p| p.line());
    Error::Parse { line, message: err.to_string() }
}

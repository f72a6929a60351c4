use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Value};

use super::SweepRow;
use crate::atom::AtomModel;
use crate::error::{Error, Result};
use crate::units::CONSTANTS_VERSION;

/// Formats `x` with `precision` significant digits, locale independent.
/// Plain decimal for magnitudes in `[1e-5, 1e15)`, exponent form otherwise.
pub fn format_number(x: f64, precision: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let precision = precision.clamp(1, 17);
    let rounded: f64 = format!("{:.*e}", precision - 1, x).parse().expect("valid float literal");
    let exponent = rounded.abs().log10().floor();
    if (-5.0..15.0).contains(&exponent) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Number(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Number)
    }
}

/// Provenance written as `#` lines ahead of an emitted table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableMeta {
    pub entries: Vec<(String, String)>,
}

impl TableMeta {
    pub fn new(atom: &AtomModel, grid: &[f64]) -> Self {
        let grid_desc = match (grid.first(), grid.last()) {
            (Some(lo), Some(hi)) => format!("n={} min={} max={}", grid.len(), lo, hi),
            _ => "n=0".into(),
        };
        TableMeta {
            entries: vec![
                ("atom".into(), atom.label()),
                ("z_eff".into(), atom.z_eff().to_string()),
                ("i_p".into(), atom.ip().to_string()),
                ("grid".into(), grid_desc),
                ("constants".into(), CONSTANTS_VERSION.into()),
            ],
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.entries.push((key.into(), value.into()));
        self
    }
}

/// Column-oriented numeric table with CSV and JSON renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: TableMeta,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[idx]).collect())
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta.entries {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Number(v) => format_number(*v, precision),
                    Cell::Text(s) => s.clone(),
                    Cell::Empty => String::new(),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json_value(&self, precision: usize) -> Value {
        let meta: Map<String, Value> =
            self.meta.entries.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(col, cell)| {
                        let v = match cell {
                            Cell::Number(v) => json_number(*v, precision),
                            Cell::Text(s) => Value::String(s.clone()),
                            Cell::Empty => Value::Null,
                        };
                        (col.to_string(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::json!({ "meta": meta, "columns": self.columns, "rows": rows })
    }

    pub fn to_json(&self, precision: usize) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value(precision)).expect("table serializes");
        s.push('\n');
        s
    }
}

/// A number rounded to `precision` significant digits, as JSON.
pub fn json_number(v: f64, precision: usize) -> Value {
    format_number(v, precision).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `tau_unsy` and `tau_sym` vs field.
    Fig2,
    /// `tau_d` and `tau_sym` vs field.
    Fig3,
    /// `tau_d` and the light-crossing time vs barrier width.
    Fig4,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            _ => Err(Error::invalid(format!("unknown figure `{s}` (fig2|fig3|fig4)"))),
        }
    }
}

pub fn figure_table(rows: &[SweepRow], figure: Figure, meta: TableMeta) -> Result<Table> {
    if rows.is_empty() {
        return Err(Error::invalid("no sweep rows to emit"));
    }
    let (columns, body): (Vec<&'static str>, Vec<Vec<Cell>>) = match figure {
        Figure::Fig2 => (
            vec!["f_au", "tau_unsy_as", "tau_sym_as"],
            rows.iter().map(|r| vec![r.f.into(), r.times_as.tau_unsy.into(), r.times_as.tau_sym.into()]).collect(),
        ),
        Figure::Fig3 => (
            vec!["f_au", "tau_d_as", "tau_sym_as"],
            rows.iter().map(|r| vec![r.f.into(), r.times_as.tau_d.into(), r.times_as.tau_sym.into()]).collect(),
        ),
        Figure::Fig4 => {
            let body = rows
                .iter()
                .map(|r| {
                    let g = &r.geometry;
                    match (g.barrier_width, r.times_as.tau_d, r.light_traversal_as) {
                        (Some(d), Some(t), Some(light)) => Ok(vec![d.into(), t.into(), light.into()]),
                        _ => Err(Error::NoRealCrossing { re: g.x_classical / 2.0, im: g.delta_z_imag / (2.0 * g.f) }),
                    }
                })
                .collect::<Result<_>>()?;
            (vec!["d_B_au", "tau_d_as", "light_as"], body)
        }
    };
    Ok(Table { meta, columns, rows: body })
}

/// Every quantity of every row.
pub fn sweep_table(rows: &[SweepRow], meta: TableMeta) -> Result<Table> {
    if rows.is_empty() {
        return Err(Error::invalid("no sweep rows to emit"));
    }
    let columns = vec![
        "f_au",
        "regime",
        "delta_z_au",
        "delta_z_imag_au",
        "x_entrance_au",
        "x_peak_au",
        "x_exit_au",
        "x_classical_au",
        "d_B_au",
        "h_max_au",
        "tau_i_as",
        "tau_d_as",
        "tau_sym_as",
        "tau_unsy_as",
        "tau_c_as",
        "tau_t_as",
        "tau_a_as",
        "tau_d_re_as",
        "tau_d_im_as",
        "tau_i_re_as",
        "tau_i_im_as",
        "light_as",
        "keldysh_gamma",
    ];
    let body = rows
        .iter()
        .map(|r| {
            let g = &r.geometry;
            let t = &r.times_as;
            vec![
                r.f.into(),
                Cell::Text(g.regime.as_str().into()),
                g.delta_z.into(),
                g.delta_z_imag.into(),
                g.x_entrance.into(),
                g.x_peak.into(),
                g.x_exit.into(),
                g.x_classical.into(),
                g.barrier_width.into(),
                g.h_max.into(),
                t.tau_i.into(),
                t.tau_d.into(),
                t.tau_sym.into(),
                t.tau_unsy.into(),
                t.tau_c.into(),
                t.tau_t.into(),
                t.tau_a.into(),
                t.tau_d_re.into(),
                t.tau_d_im.into(),
                t.tau_i_re.into(),
                t.tau_i_im.into(),
                r.light_traversal_as.into(),
                r.keldysh_gamma.into(),
            ]
        })
        .collect();
    Ok(Table { meta, columns, rows: body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run_sweep;

    fn he_c() -> AtomModel {
        AtomModel::new("He", 0.90357, 1.6875, "Clementi").unwrap()
    }

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(12.875_040_92, 6), "12.875");
        assert_eq!(format_number(46.138_125, 6), "46.1381");
        assert_eq!(format_number(-0.636_396_1, 6), "-0.636396");
        assert_eq!(format_number(0.0, 6), "0");
        assert_eq!(format_number(1.234_567e-7, 3), "1.23e-7");
        assert_eq!(format_number(3.509_445_520_6e16, 6), "3.50945e16");
        assert_eq!(format_number(999_999.7, 6), "1000000");
        assert_eq!(format_number(2.0 / 3.0, 3), "0.667");
        assert_eq!(format_number(f64::NAN, 6), "NaN");
    }

    #[test]
    fn figure_rows() {
        let he = he_c();
        let fa = he.atomic_field_strength();
        let rows = run_sweep(&he, &[0.06, fa], None).unwrap();
        let meta = TableMeta::new(&he, &[0.06, fa]);

        let fig4 = figure_table(&rows[..1], Figure::Fig4, meta.clone()).unwrap();
        let line = fig4.to_csv(6).lines().last().unwrap().to_string();
        assert_eq!(line, "10.6906,46.1381,1.88704");

        let fig3 = figure_table(&rows, Figure::Fig3, meta.clone()).unwrap();
        let last = fig3.to_csv(6).lines().last().unwrap().to_string();
        assert_eq!(last, "0.120954,13.3852,26.7703");

        let fig2 = figure_table(&rows, Figure::Fig2, meta.clone()).unwrap();
        assert_eq!(fig2.column("f_au"), fig3.column("f_au"));
        assert_eq!(fig2.column("tau_sym_as"), fig3.column("tau_sym_as"));
    }

    #[test]
    fn fig4_needs_real_barrier() {
        let he = he_c();
        let rows = run_sweep(&he, &[0.06, 0.15], None).unwrap();
        let err = figure_table(&rows, Figure::Fig4, TableMeta::new(&he, &[0.06, 0.15])).unwrap_err();
        assert!(err.is_regime_error());
        assert!(figure_table(&[], Figure::Fig3, TableMeta::new(&he, &[])).is_err());
    }

    #[test]
    fn csv_layout() {
        let he = he_c();
        let rows = run_sweep(&he, &[0.05, 0.15], None).unwrap();
        let csv = figure_table(&rows, Figure::Fig2, TableMeta::new(&he, &[0.05, 0.15])).unwrap().to_csv(6);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# atom=He:clementi");
        assert_eq!(lines[3], "# grid=n=2 min=0.05 max=0.15");
        assert_eq!(lines[4], "# constants=CODATA-2018");
        assert_eq!(lines[5], "f_au,tau_unsy_as,tau_sym_as");
        // tau_unsy is complex at 0.15 and left empty
        assert!(lines[7].starts_with("0.15,,"));
    }

    #[test]
    fn json_mirrors_csv() {
        let he = he_c();
        let rows = run_sweep(&he, &[0.06, 0.15], None).unwrap();
        let table = sweep_table(&rows, TableMeta::new(&he, &[0.06, 0.15])).unwrap();
        let json: Value = serde_json::from_str(&table.to_json(6)).unwrap();
        let first = &json["rows"][0];
        assert_eq!(first["x_exit_au"], serde_json::json!(12.875));
        assert_eq!(first["regime"], "sub_atomic");
        assert_eq!(json["rows"][1]["x_exit_au"], Value::Null);
        assert_eq!(json["columns"].as_array().unwrap().len(), table.columns.len());
        assert_eq!(json["meta"]["atom"], "He:clementi");
    }
}

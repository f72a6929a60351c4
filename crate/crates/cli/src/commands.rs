use std::io::Write;

use attoclock::atom::{self, AtomModel, FieldOrigin, LaserField};
use attoclock::barrier::{BarrierGeometry, Regime};
use attoclock::clocks::{self, TunnelClocks};
use attoclock::harness::{self, Cell, Estimator, Figure, Table, TableMeta};
use attoclock::units::Time;
use attoclock::Error;

use crate::{Command, EstimatorArg, FigureArg, Format, OutputArgs};

pub fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Geometry { atom, field, output } => geometry(&atom.resolve()?, &field.resolve()?, &output),
        Command::Times { atom, field, output } => times(&atom.resolve()?, &field.resolve()?, &output),
        Command::Sweep { atom, grid, figure, wavelength, output } => {
            sweep(&atom.resolve()?, &grid, figure, wavelength, &output)
        }
        Command::Compare { atom, data, estimator, residuals, output } => {
            let set = harness::load_measurements(&data)?;
            for w in &set.warnings {
                eprintln!("warning: {w}");
            }
            let meta = TableMeta::new(&atom.resolve()?, &[]).with("data", data.display().to_string());
            compare(&atom.resolve()?, &set.records, estimator.into(), residuals, meta, &output)
        }
        Command::Catalog { output } => catalog(&output),
    }
}

impl From<EstimatorArg> for Estimator {
    fn from(e: EstimatorArg) -> Self {
        match e {
            EstimatorArg::TauD => Estimator::TauD,
            EstimatorArg::TauSym => Estimator::TauSym,
            EstimatorArg::TauUnsy => Estimator::TauUnsy,
            EstimatorArg::TauT => Estimator::TauT,
        }
    }
}

impl From<FigureArg> for Figure {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::Fig2 => Figure::Fig2,
            FigureArg::Fig3 => Figure::Fig3,
            FigureArg::Fig4 => Figure::Fig4,
        }
    }
}

fn write_output(text: &str, output: &OutputArgs) -> Result<(), Error> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn render(table: &Table, output: &OutputArgs) -> String {
    let precision = output.precision as usize;
    match output.format {
        Format::Csv => table.to_csv(precision),
        Format::Json => table.to_json(precision),
    }
}

/// `quantity,value,unit` report.
struct Report {
    rows: Vec<Vec<Cell>>,
}

impl Report {
    fn new() -> Self {
        Report { rows: Vec::new() }
    }

    fn push(&mut self, quantity: &str, value: impl Into<Cell>, unit: &str) {
        self.rows.push(vec![Cell::Text(quantity.into()), value.into(), Cell::Text(unit.into())]);
    }

    fn time(&mut self, quantity: &str, t: Option<Time>) {
        self.push(quantity, t.map(Time::au), "au");
        self.push(quantity, t.map(Time::attoseconds), "as");
    }

    fn into_table(self, meta: TableMeta) -> Table {
        Table { meta, columns: vec!["quantity", "value", "unit"], rows: self.rows }
    }
}

fn field_meta(atom: &AtomModel, field: &LaserField) -> TableMeta {
    let origin = match field.origin() {
        FieldOrigin::Direct => "direct".to_string(),
        FieldOrigin::FromIntensity { intensity_w_cm2 } => format!("intensity {intensity_w_cm2} W/cm2"),
        FieldOrigin::FromF0Ellipticity { f0 } => {
            format!("f0 {f0} au, ellipticity {}", field.ellipticity().unwrap_or(0.0))
        }
    };
    TableMeta::new(atom, &[field.f_peak()]).with("field_origin", origin)
}

fn keldysh(report: &mut Report, atom: &AtomModel, field: &LaserField) -> Result<(), Error> {
    if let Some(omega) = field.angular_frequency() {
        report.push("omega", omega, "au");
        report.push("keldysh_gamma", clocks::keldysh_gamma(atom, field.f_peak(), omega)?, "1");
    }
    Ok(())
}

fn geometry(atom: &AtomModel, field: &LaserField, output: &OutputArgs) -> Result<(), Error> {
    let f = field.f_peak();
    let g = BarrierGeometry::solve(atom, f)?;
    let mut r = Report::new();
    r.push("f", f, "au");
    r.push("atomic_field", g.atomic_field, "au");
    r.push("regime", Cell::Text(g.regime.as_str().into()), "");
    r.push("delta_z", g.delta_z, "au");
    r.push("delta_z_imag", g.delta_z_imag, "au");
    r.push("x_entrance", g.x_entrance, "au");
    r.push("x_peak", g.x_peak, "au");
    r.push("x_exit", g.x_exit, "au");
    r.push("x_classical", g.x_classical, "au");
    r.push("barrier_width", g.barrier_width, "au");
    r.push("h_max", g.h_max, "au");
    keldysh(&mut r, atom, field)?;
    write_output(&render(&r.into_table(field_meta(atom, field)), output), output)?;

    if g.regime == Regime::SuperAtomic {
        return Err(Error::NoRealCrossing { re: g.x_classical / 2.0, im: g.delta_z_imag / (2.0 * f) });
    }
    Ok(())
}

fn times(atom: &AtomModel, field: &LaserField, output: &OutputArgs) -> Result<(), Error> {
    let f = field.f_peak();
    let g = BarrierGeometry::solve(atom, f)?;
    let c = TunnelClocks::evaluate(atom, &g);
    let mut r = Report::new();
    r.push("f", f, "au");
    r.push("regime", Cell::Text(g.regime.as_str().into()), "");
    r.time("tau_i", c.tau_i);
    r.time("tau_d", c.tau_d);
    r.time("tau_sym", Some(c.tau_sym));
    r.time("tau_unsy", c.tau_unsy);
    r.time("tau_c", Some(c.tau_c));
    r.time("tau_t", c.tau_t);
    r.time("tau_a", Some(c.tau_a));
    r.push("de_plus", c.de_plus, "au");
    r.push("de_minus", c.de_minus, "au");
    if let Some(cp) = c.complex_parts {
        r.time("tau_d_re", Some(Time::from_au(cp.tau_d.re)));
        r.time("tau_d_im", Some(Time::from_au(cp.tau_d.im)));
        r.time("tau_i_re", Some(Time::from_au(cp.tau_i.re)));
        r.time("tau_i_im", Some(Time::from_au(cp.tau_i.im)));
    }
    keldysh(&mut r, atom, field)?;
    write_output(&render(&r.into_table(field_meta(atom, field)), output), output)?;

    if g.regime == Regime::SuperAtomic {
        return Err(Error::ComplexRegime { estimator: "tau_d", field: f });
    }
    Ok(())
}

fn sweep(
    atom: &AtomModel,
    grid: &str,
    figure: Option<FigureArg>,
    wavelength: Option<f64>,
    output: &OutputArgs,
) -> Result<(), Error> {
    let grid = harness::parse_grid(grid)?;
    let omega = wavelength.map(attoclock::units::wavelength_to_angular_frequency).transpose()?;
    let rows = harness::run_sweep(atom, &grid, omega)?;
    let meta = TableMeta::new(atom, &grid);
    let table = match figure {
        Some(fig) => {
            let fig = Figure::from(fig);
            let name = match fig {
                Figure::Fig2 => "fig2",
                Figure::Fig3 => "fig3",
                Figure::Fig4 => "fig4",
            };
            harness::figure_table(&rows, fig, meta.with("figure", name))?
        }
        None => harness::sweep_table(&rows, meta)?,
    };
    write_output(&render(&table, output), output)
}

fn compare(
    atom: &AtomModel,
    records: &[harness::MeasurementRecord],
    estimator: Estimator,
    residuals: bool,
    meta: TableMeta,
    output: &OutputArgs,
) -> Result<(), Error> {
    let report = harness::compare(atom, estimator, records)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let meta = meta.with("model_id", report.model_id.clone());
    let mut r = Report::new();
    r.push("n_points", report.points.len() as f64, "1");
    r.push("n_skipped", report.skipped as f64, "1");
    r.push("rms", report.rms, "as");
    r.push("max_abs", report.max_abs, "as");
    r.push("fraction_within_bars", report.fraction_within_bars, "1");
    let summary = r.into_table(meta.clone());

    let residual_table = residuals.then(|| Table {
        meta: TableMeta { entries: Vec::new() },
        columns: vec!["f_au", "model_as", "measured_as", "residual_as", "bar_as", "within_bars", "source"],
        rows: report
            .points
            .iter()
            .map(|p| {
                vec![
                    p.f.into(),
                    p.model_as.into(),
                    p.measured_as.into(),
                    p.residual_as.into(),
                    p.bar_as.into(),
                    Cell::Text(p.within_bars.to_string()),
                    Cell::Text(p.source.clone()),
                ]
            })
            .collect(),
    });

    let precision = output.precision as usize;
    let text = match output.format {
        Format::Csv => {
            let mut text = summary.to_csv(precision);
            if let Some(t) = &residual_table {
                text.push('\n');
                text.push_str(&t.to_csv(precision));
            }
            text
        }
        Format::Json => {
            let mut value = serde_json::json!({ "summary": summary.to_json_value(precision) });
            if let Some(t) = &residual_table {
                value["residuals"] = t.to_json_value(precision);
            }
            let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
            s.push('\n');
            s
        }
    };
    write_output(&text, output)
}

fn catalog(output: &OutputArgs) -> Result<(), Error> {
    let rows = atom::builtin_catalog()
        .iter()
        .map(|a| {
            vec![
                Cell::Text(a.label()),
                Cell::Text(a.name().into()),
                Cell::Text(a.source().into()),
                a.ip().into(),
                a.z_eff().into(),
                a.atomic_field_strength().into(),
            ]
        })
        .collect();
    let table = Table {
        meta: TableMeta { entries: vec![("constants".into(), attoclock::units::CONSTANTS_VERSION.into())] },
        columns: vec!["atom", "name", "source", "ip_au", "z_eff", "atomic_field_au"],
        rows,
    };
    write_output(&render(&table, output), output)
}

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::data::MeasurementRecord;
use crate::atom::AtomModel;
use crate::barrier::BarrierGeometry;
use crate::clocks::TunnelClocks;
use crate::error::{Error, Result};
use crate::units::Time;

/// Model curve compared against measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    TauD,
    TauSym,
    TauUnsy,
    TauT,
}

impl Estimator {
    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::TauD => "tau_d",
            Estimator::TauSym => "tau_sym",
            Estimator::TauUnsy => "tau_unsy",
            Estimator::TauT => "tau_t",
        }
    }

    fn pick(self, clocks: &TunnelClocks) -> Option<Time> {
        match self {
            Estimator::TauD => clocks.tau_d,
            Estimator::TauSym => Some(clocks.tau_sym),
            Estimator::TauUnsy => clocks.tau_unsy,
            Estimator::TauT => clocks.tau_t,
        }
    }

    /// Model value in attoseconds at field `f`; `None` where the estimator is
    /// not real.
    pub fn evaluate_as(self, atom: &AtomModel, f: f64) -> Result<Option<f64>> {
        let geom = BarrierGeometry::solve(atom, f)?;
        let clocks = TunnelClocks::evaluate(atom, &geom);
        Ok(self.pick(&clocks).map(Time::attoseconds))
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau_d" => Ok(Estimator::TauD),
            "tau_sym" => Ok(Estimator::TauSym),
            "tau_unsy" => Ok(Estimator::TauUnsy),
            "tau_t" => Ok(Estimator::TauT),
            _ => Err(Error::invalid(format!("unknown estimator `{s}` (tau_d|tau_sym|tau_unsy|tau_t)"))),
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualPoint {
    pub f: f64,
    pub model_as: f64,
    pub measured_as: f64,
    /// model − measurement, as.
    pub residual_as: f64,
    pub bar_as: f64,
    pub within_bars: bool,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub model_id: String,
    pub estimator: Estimator,
    pub points: Vec<ResidualPoint>,
    pub rms: f64,
    pub max_abs: f64,
    pub fraction_within_bars: f64,
    /// Records skipped because the estimator is complex at their field.
    pub skipped: usize,
    pub warnings: Vec<String>,
}

/// Residuals of `estimator` against `data`. The model is recomputed in
/// closed form at every record's field, never interpolated.
pub fn compare(atom: &AtomModel, estimator: Estimator, data: &[MeasurementRecord]) -> Result<ComparisonReport> {
    if data.is_empty() {
        return Err(Error::invalid("comparison needs at least one measurement"));
    }
    let mut points = Vec::with_capacity(data.len());
    let mut warnings = Vec::new();
    for rec in data {
        match estimator.evaluate_as(atom, rec.f)? {
            Some(model) => {
                let residual = model - rec.t;
                points.push(ResidualPoint {
                    f: rec.f,
                    model_as: model,
                    measured_as: rec.t,
                    residual_as: residual,
                    bar_as: rec.bar(),
                    within_bars: residual.abs() <= rec.bar(),
                    source: rec.source.clone(),
                });
            }
            None => warnings.push(format!(
                "skipped F = {} au: {estimator} is not real above F_a = {} au",
                rec.f,
                atom.atomic_field_strength()
            )),
        }
    }
    if points.is_empty() {
        return Err(Error::ComplexRegime { estimator: estimator.as_str(), field: data[0].f });
    }
    let n = points.len() as f64;
    let rms = (points.iter().map(|p| p.residual_as * p.residual_as).sum::<f64>() / n).sqrt();
    let max_abs = points.iter().map(|p| p.residual_as.abs()).fold(0.0, f64::max);
    let fraction_within_bars = points.iter().filter(|p| p.within_bars).count() as f64 / n;
    Ok(ComparisonReport {
        model_id: format!("{}/{}", atom.label(), estimator),
        estimator,
        skipped: data.len() - points.len(),
        points,
        rms,
        max_abs,
        fraction_within_bars,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn he_c() -> AtomModel {
        AtomModel::new("He", 0.90357, 1.6875, "Clementi").unwrap()
    }

    fn fixture(atom: &AtomModel, est: Estimator, offset: f64, bar: f64) -> Vec<MeasurementRecord> {
        [0.04, 0.05, 0.06, 0.07, 0.08]
            .iter()
            .map(|&f| MeasurementRecord {
                f,
                t: est.evaluate_as(atom, f).unwrap().unwrap() + offset,
                err_lo: bar,
                err_hi: bar,
                source: "synthetic".into(),
            })
            .collect()
    }

    #[test]
    fn self_comparison_is_exact() {
        let he = he_c();
        for est in [Estimator::TauD, Estimator::TauSym, Estimator::TauUnsy, Estimator::TauT] {
            let r = compare(&he, est, &fixture(&he, est, 0.0, 0.0)).unwrap();
            assert_eq!(r.rms, 0.0);
            assert_eq!(r.max_abs, 0.0);
            assert_eq!(r.fraction_within_bars, 1.0);
        }
    }

    #[test]
    fn offset_fixtures() {
        let he = he_c();
        let r = compare(&he, Estimator::TauD, &fixture(&he, Estimator::TauD, 1.0, 2.0)).unwrap();
        assert!((r.rms - 1.0).abs() <= 1e-9);
        assert_eq!(r.fraction_within_bars, 1.0);
        assert!(r.points.iter().all(|p| (p.residual_as + 1.0).abs() < 1e-9));

        let r = compare(&he, Estimator::TauD, &fixture(&he, Estimator::TauD, 5.0, 2.0)).unwrap();
        assert_eq!(r.fraction_within_bars, 0.0);
        assert!((r.max_abs - 5.0).abs() < 1e-9);
        assert_eq!(r.model_id, "He:clementi/tau_d");
    }

    #[test]
    fn larger_bar_decides() {
        let he = he_c();
        let model = Estimator::TauD.evaluate_as(&he, 0.06).unwrap().unwrap();
        let rec = MeasurementRecord { f: 0.06, t: model - 3.0, err_lo: 1.0, err_hi: 4.0, source: String::new() };
        let r = compare(&he, Estimator::TauD, &[rec]).unwrap();
        assert_eq!(r.fraction_within_bars, 1.0);
    }

    #[test]
    fn super_atomic_points_are_skipped() {
        let he = he_c();
        let mut data = fixture(&he, Estimator::TauD, 0.0, 1.0);
        data.push(MeasurementRecord { f: 0.15, t: 10.0, err_lo: 1.0, err_hi: 1.0, source: String::new() });
        let r = compare(&he, Estimator::TauD, &data).unwrap();
        assert_eq!(r.skipped, 1);
        assert_eq!(r.points.len(), 5);
        assert_eq!(r.warnings.len(), 1);

        // tau_sym stays real above F_a
        let r = compare(&he, Estimator::TauSym, &data).unwrap();
        assert_eq!(r.skipped, 0);

        assert!(compare(&he, Estimator::TauD, &data[5..]).unwrap_err().is_regime_error());
        assert!(compare(&he, Estimator::TauD, &[]).is_err());
    }

    #[test]
    fn estimator_names_round_trip() {
        for est in [Estimator::TauD, Estimator::TauSym, Estimator::TauUnsy, Estimator::TauT] {
            assert_eq!(est.as_str().parse::<Estimator>().unwrap(), est);
        }
        assert!("tau_x".parse::<Estimator>().is_err());
    }
}

//! Atom and laser-field input models.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::{self, CONSTANTS};

/// One-electron atom model: ionization potential and effective nuclear charge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomModel {
    name: String,
    ip: f64,
    z_eff: f64,
    source: String,
}

impl AtomModel {
    pub fn new(name: impl Into<String>, ip: f64, z_eff: f64, source: impl Into<String>) -> Result<Self> {
        if !(ip.is_finite() && ip > 0.0) {
            return Err(Error::Config { key: "ip".into(), message: format!("must be a finite value > 0, got {ip}") });
        }
        if !(z_eff.is_finite() && z_eff > 0.0) {
            return Err(Error::Config {
                key: "z_eff".into(),
                message: format!("must be a finite value > 0, got {z_eff}"),
            });
        }
        let model = AtomModel { name: name.into(), ip, z_eff, source: source.into() };
        let fa = model.atomic_field_strength();
        if !(fa.is_finite() && fa > 0.0) {
            return Err(Error::invalid(format!("atomic field strength I_p²/(4 Z_eff) = {fa} is not finite and positive")));
        }
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Ionization potential, au.
    pub fn ip(&self) -> f64 {
        self.ip
    }

    pub fn z_eff(&self) -> f64 {
        self.z_eff
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// `F_a = I_p²/(4 Z_eff)`: the field at which the barrier top touches `-I_p`.
    pub fn atomic_field_strength(&self) -> f64 {
        self.ip * self.ip / (4.0 * self.z_eff)
    }

    /// Short label used in table metadata, e.g. `He:clementi`.
    pub fn label(&self) -> String {
        if self.source.is_empty() {
            self.name.clone()
        } else {
            format!("{}:{}", self.name, self.source.to_lowercase())
        }
    }
}

/// Helium ionization potential in au, from the constants table.
pub fn helium_ip() -> f64 {
    CONSTANTS.helium_ionization_energy_ev / CONSTANTS.hartree_in_ev
}

/// Effective charge of the He 1s electron screened by a hydrogen-like 1s partner.
pub const Z_EFF_HE_KULLIE: f64 = 1.375;
/// Hartree-Fock (Clementi-Raimondi) effective charge for He 1s.
pub const Z_EFF_HE_CLEMENTI: f64 = 1.6875;

/// Built-in atom models. Both He entries share the same `I_p`.
pub fn builtin_catalog() -> Vec<AtomModel> {
    let he = helium_ip();
    vec![
        AtomModel::new("He", he, Z_EFF_HE_KULLIE, "Kullie").expect("valid catalog entry"),
        AtomModel::new("He", he, Z_EFF_HE_CLEMENTI, "Clementi").expect("valid catalog entry"),
        AtomModel::new("H", 0.5, 1.0, "exact").expect("valid catalog entry"),
    ]
}

/// Looks up `NAME[:MODEL]` in the catalog, case-insensitively. Without a
/// model suffix the last catalog entry for that name wins (Clementi for He).
pub fn lookup(spec: &str) -> Result<AtomModel> {
    let (name, model) = match spec.split_once(':') {
        Some((n, m)) => (n, Some(m)),
        None => (spec, None),
    };
    let catalog = builtin_catalog();
    let found = catalog
        .iter()
        .filter(|a| a.name.eq_ignore_ascii_case(name))
        .filter(|a| model.is_none_or(|m| a.source.eq_ignore_ascii_case(m)))
        .last();
    found.cloned().ok_or_else(|| Error::Config {
        key: "atom".into(),
        message: format!("`{spec}` is not in the catalog"),
    })
}

/// Parses `key=value` text (whitespace- or newline-separated; `#` starts a
/// comment). Keys: `name`, `ip`, `z_eff`, `source`.
pub fn load_atom(config: &str) -> Result<AtomModel> {
    let mut name = None;
    let mut ip = None;
    let mut z_eff = None;
    let mut source = None;

    for line in config.lines() {
        let line = line.split('#').next().unwrap_or("");
        for token in line.split_whitespace() {
            let (key, value) = token.split_once('=').ok_or_else(|| Error::Config {
                key: token.to_string(),
                message: "expected key=value".into(),
            })?;
            let number = |v: &str| {
                v.parse::<f64>().map_err(|_| Error::Config {
                    key: key.to_string(),
                    message: format!("`{v}` is not a number"),
                })
            };
            match key {
                "name" => name = Some(value.to_string()),
                "ip" => ip = Some(number(value)?),
                "z_eff" => z_eff = Some(number(value)?),
                "source" => source = Some(value.to_string()),
                _ => {
                    return Err(Error::Config { key: key.to_string(), message: "unknown key".into() });
                }
            }
        }
    }

    let missing = |key: &str| Error::Config { key: key.into(), message: "missing".into() };
    // Validate values before reporting absent keys so that `ip=-1` names `ip`.
    let ip = ip.ok_or_else(|| missing("ip"))?;
    if !(ip.is_finite() && ip > 0.0) {
        return Err(Error::Config { key: "ip".into(), message: format!("must be > 0, got {ip}") });
    }
    let z_eff = z_eff.ok_or_else(|| missing("z_eff"))?;
    let name = name.ok_or_else(|| missing("name"))?;
    AtomModel::new(name, ip, z_eff, source.unwrap_or_else(|| "user".into()))
}

/// How the peak field of a [`LaserField`] was specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldOrigin {
    Direct,
    FromIntensity { intensity_w_cm2: f64 },
    FromF0Ellipticity { f0: f64 },
}

/// Laser drive: peak field strength at the pulse maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaserField {
    f_peak: f64,
    wavelength_nm: Option<f64>,
    ellipticity: Option<f64>,
    origin: FieldOrigin,
}

impl LaserField {
    fn checked(f_peak: f64, ellipticity: Option<f64>, origin: FieldOrigin) -> Result<Self> {
        if !(f_peak.is_finite() && f_peak > 0.0) {
            return Err(Error::invalid(format!("peak field must be finite and > 0, got {f_peak}")));
        }
        Ok(LaserField { f_peak, wavelength_nm: None, ellipticity, origin })
    }

    pub fn direct(f_peak: f64) -> Result<Self> {
        Self::checked(f_peak, None, FieldOrigin::Direct)
    }

    pub fn from_intensity(intensity_w_cm2: f64) -> Result<Self> {
        let f = units::intensity_to_field(intensity_w_cm2)?;
        Self::checked(f, None, FieldOrigin::FromIntensity { intensity_w_cm2 })
    }

    pub fn from_f0_ellipticity(f0: f64, ellipticity: f64) -> Result<Self> {
        let f = units::elliptical_peak_field(f0, ellipticity)?;
        Self::checked(f, Some(ellipticity), FieldOrigin::FromF0Ellipticity { f0 })
    }

    pub fn with_wavelength(mut self, lambda_nm: f64) -> Result<Self> {
        units::wavelength_to_angular_frequency(lambda_nm)?;
        self.wavelength_nm = Some(lambda_nm);
        Ok(self)
    }

    pub fn f_peak(&self) -> f64 {
        self.f_peak
    }

    pub fn wavelength_nm(&self) -> Option<f64> {
        self.wavelength_nm
    }

    pub fn ellipticity(&self) -> Option<f64> {
        self.ellipticity
    }

    pub fn origin(&self) -> FieldOrigin {
        self.origin
    }

    /// Angular frequency in au, when a wavelength is attached.
    pub fn angular_frequency(&self) -> Option<f64> {
        self.wavelength_nm.and_then(|l| units::wavelength_to_angular_frequency(l).ok())
    }
}

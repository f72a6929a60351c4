//! Conversions between atomic units and laboratory units.
//!
//! Everything inside the crate is computed in atomic units
//! (ħ = mₑ = e = 1). Attoseconds, W/cm² and nanometres only appear at the
//! I/O boundary, and every conversion factor comes from [`CONSTANTS`].

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Frozen table of the physical constants the model needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Atomic unit of time ħ/E_h, in attoseconds.
    pub au_time_in_attoseconds: f64,
    /// Speed of light in atomic units (1/α).
    pub speed_of_light: f64,
    /// Atomic unit of intensity ½ε₀cE_a², in W/cm².
    pub intensity_au_in_w_per_cm2: f64,
    /// Hartree energy in eV.
    pub hartree_in_ev: f64,
    /// Bohr radius in nm.
    pub bohr_radius_in_nm: f64,
    /// First ionization energy of helium, in eV.
    pub helium_ionization_energy_ev: f64,
}

/// Version tag written into emitted table metadata.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// CODATA 2018 recommended values. The atomic intensity unit is
/// ½ε₀c·(5.14220674763e11 V/m)²; the helium ionization energy is the
/// NIST ASD value 198310.666 cm⁻¹.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    au_time_in_attoseconds: 24.188_843_265_857,
    speed_of_light: 137.035_999_084,
    intensity_au_in_w_per_cm2: 3.509_445_520_6e16,
    hartree_in_ev: 27.211_386_245_988,
    bohr_radius_in_nm: 0.052_917_721_090_3,
    helium_ionization_energy_ev: 24.587_387,
};

/// A time interval stored in atomic units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
pub struct Time(f64);

impl Time {
    pub const fn from_au(t: f64) -> Self {
        Time(t)
    }

    pub fn au(self) -> f64 {
        self.0
    }

    pub fn attoseconds(self) -> f64 {
        self.0 * CONSTANTS.au_time_in_attoseconds
    }
}

fn require_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be finite, got {v}")))
    }
}

pub fn au_time_to_attoseconds(t: f64) -> Result<f64> {
    require_finite("time", t)?;
    Ok(t * CONSTANTS.au_time_in_attoseconds)
}

pub fn attoseconds_to_au_time(t: f64) -> Result<f64> {
    require_finite("time", t)?;
    Ok(t / CONSTANTS.au_time_in_attoseconds)
}

/// Peak field (au) of a laser with cycle-averaged intensity `intensity` in W/cm².
pub fn intensity_to_field(intensity: f64) -> Result<f64> {
    require_finite("intensity", intensity)?;
    if intensity < 0.0 {
        return Err(Error::invalid(format!("intensity must be >= 0, got {intensity}")));
    }
    Ok((intensity / CONSTANTS.intensity_au_in_w_per_cm2).sqrt())
}

pub fn field_to_intensity(field: f64) -> Result<f64> {
    require_finite("field", field)?;
    if field < 0.0 {
        return Err(Error::invalid(format!("field must be >= 0, got {field}")));
    }
    Ok(field * field * CONSTANTS.intensity_au_in_w_per_cm2)
}

/// Peak field of an elliptically polarized pulse, `F0/sqrt(1+ε²)`.
pub fn elliptical_peak_field(f0: f64, ellipticity: f64) -> Result<f64> {
    require_finite("F0", f0)?;
    if f0 < 0.0 {
        return Err(Error::invalid(format!("F0 must be >= 0, got {f0}")));
    }
    if !(0.0..=1.0).contains(&ellipticity) {
        return Err(Error::invalid(format!(
            "ellipticity must lie in [0, 1], got {ellipticity}"
        )));
    }
    Ok(f0 / (1.0 + ellipticity * ellipticity).sqrt())
}

/// Angular frequency in au of light with vacuum wavelength `lambda_nm`.
pub fn wavelength_to_angular_frequency(lambda_nm: f64) -> Result<f64> {
    require_finite("wavelength", lambda_nm)?;
    if lambda_nm <= 0.0 {
        return Err(Error::invalid(format!("wavelength must be > 0, got {lambda_nm}")));
    }
    Ok(2.0 * PI * CONSTANTS.speed_of_light * CONSTANTS.bohr_radius_in_nm / lambda_nm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn constants_in_range() {
        let c = CONSTANTS;
        for v in [
            c.au_time_in_attoseconds,
            c.speed_of_light,
            c.intensity_au_in_w_per_cm2,
            c.hartree_in_ev,
        ] {
            assert!(v > 0.0);
        }
        assert!((24.18..=24.20).contains(&c.au_time_in_attoseconds));
        assert!((137.0..=137.1).contains(&c.speed_of_light));
    }

    #[test]
    fn au_time_from_hbar_over_hartree() {
        // ħ = 1.054571817e-34 J·s, E_h = 4.3597447222071e-18 J
        let oracle = 1.054_571_817e-34 / 4.359_744_722_207_1e-18 * 1e18;
        assert_eq!(au_time_to_attoseconds(0.0).unwrap(), 0.0);
        assert_relative_eq!(au_time_to_attoseconds(1.0).unwrap(), oracle, max_relative = 1e-9);
        assert_relative_eq!(au_time_to_attoseconds(2.23104).unwrap(), 53.9663, max_relative = 1e-5);
        assert!(au_time_to_attoseconds(f64::NAN).is_err());
        assert!(au_time_to_attoseconds(f64::INFINITY).is_err());
    }

    #[test]
    fn intensity_examples() {
        assert_eq!(intensity_to_field(0.0).unwrap(), 0.0);
        // ½·ε₀·c·E_a² with E_a = 5.14220674763e11 V/m, in W/cm²
        let i_au = 0.5 * 8.854_187_812_8e-12 * 299_792_458.0 * 5.142_206_747_63e11_f64.powi(2) * 1e-4;
        assert_relative_eq!(intensity_to_field(i_au).unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(intensity_to_field(3.50945e16).unwrap(), 1.0, max_relative = 1e-5);
        assert_relative_eq!(intensity_to_field(2.0e14).unwrap(), 0.075_491_1, max_relative = 1e-5);
        assert!(intensity_to_field(-1.0).is_err());
    }

    #[test]
    fn elliptical_examples() {
        assert_eq!(elliptical_peak_field(0.1, 0.0).unwrap(), 0.1);
        assert_relative_eq!(elliptical_peak_field(0.1, 0.87).unwrap(), 0.075_444_3, max_relative = 1e-6);
        assert_eq!(elliptical_peak_field(0.0, 0.87).unwrap(), 0.0);
        assert!(elliptical_peak_field(0.1, -0.1).is_err());
        assert!(elliptical_peak_field(0.1, 1.01).is_err());
    }

    #[test]
    fn wavelength_examples() {
        assert_relative_eq!(wavelength_to_angular_frequency(735.0).unwrap(), 0.061_990_96, max_relative = 1e-6);
        assert_relative_eq!(wavelength_to_angular_frequency(45.563_352_53).unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(wavelength_to_angular_frequency(1470.0).unwrap(), 0.030_995_48, max_relative = 1e-6);
        assert!(wavelength_to_angular_frequency(0.0).is_err());
        assert!(wavelength_to_angular_frequency(-735.0).is_err());
    }

    proptest! {
        #[test]
        fn intensity_round_trip(log_i in 10.0f64..18.0) {
            let i = 10f64.powf(log_i);
            let back = field_to_intensity(intensity_to_field(i).unwrap()).unwrap();
            prop_assert!(((back - i) / i).abs() <= 1e-12);
        }

        #[test]
        fn intensity_monotone(a in 0.0f64..1e18, b in 0.0f64..1e18) {
            prop_assume!(a < b);
            prop_assert!(intensity_to_field(a).unwrap() < intensity_to_field(b).unwrap());
        }

        #[test]
        fn ellipticity_never_raises_field(f0 in 0.0f64..10.0, eps in 0.0f64..=1.0) {
            let f = elliptical_peak_field(f0, eps).unwrap();
            prop_assert!(f <= f0);
            if eps > 0.0 && f0 > 0.0 {
                prop_assert!(f < f0);
            }
        }

        #[test]
        fn frequency_decreases_with_wavelength(a in 1.0f64..1e5, b in 1.0f64..1e5) {
            prop_assume!(a < b);
            prop_assert!(wavelength_to_angular_frequency(a).unwrap() > wavelength_to_angular_frequency(b).unwrap());
        }
    }
}

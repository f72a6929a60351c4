//! Tunneling-time estimators from the time-energy uncertainty relation.
//!
//! The energy uncertainty at a crossing `x` is the Coulomb energy there,
//! `ΔE(x) = Z_eff/x`, and each time is `1/(2ΔE)`. With
//! `δ_z = sqrt(I_p² - 4 Z_eff F)`:
//!
//! | estimator | au |
//! |---|---|
//! | `tau_d` (under the barrier) | `1/(2(I_p - δ_z))` |
//! | `tau_i` (reach the entrance) | `1/(2(I_p + δ_z))` |
//! | `tau_sym = tau_i + tau_d` | `I_p/(4 Z_eff F)` |
//! | `tau_unsy = 2·tau_d` | `1/(I_p - δ_z)` |
//! | `tau_t` | `(1/I_p + 1/(I_p - δ_z))/2` |
//! | `tau_c` (classical exit) | `I_p/(2F)` |
//! | `tau_a` (appearance) | `1/I_p` |
//!
//! `I_p - δ_z` is evaluated as `4 Z_eff F/(I_p + δ_z)`, which keeps full
//! precision at weak fields. Above `F_a` the real-only estimators are
//! replaced by [`complex_times`].

use serde::Serialize;

use crate::atom::AtomModel;
use crate::barrier::{BarrierGeometry, Regime};
use crate::error::{Error, Result};
use crate::units::Time;

/// `ΔE(x) = |-Z_eff/x|`.
pub fn energy_uncertainty_at(x: f64, atom: &AtomModel) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain { x });
    }
    Ok(atom.z_eff() / x)
}

/// `I_p - δ_z` for a geometry with real crossings.
fn exit_gap(geom: &BarrierGeometry, atom: &AtomModel, estimator: &'static str) -> Result<f64> {
    match geom.regime {
        Regime::SuperAtomic => Err(Error::ComplexRegime { estimator, field: geom.f }),
        Regime::Atomic => Ok(atom.ip()),
        Regime::SubAtomic => Ok(4.0 * atom.z_eff() * geom.f / (atom.ip() + geom.delta_z)),
    }
}

/// Unsymmetrical time `1/(I_p - δ_z)`, from the exit point alone.
pub fn tau_unsymmetric(geom: &BarrierGeometry, atom: &AtomModel) -> Result<f64> {
    Ok(1.0 / exit_gap(geom, atom, "tau_unsy")?)
}

/// `I_p/(2F)`: the leading term quoted for the unsymmetrical time, i.e. the
/// time at the classical exit with `ΔE_c = 1/x_{e,c}`.
///
/// The expansion of `1/(I_p - δ_z)` actually leads with `I_p/(2 Z_eff F)`;
/// this function keeps the `Z_eff`-free form on purpose.
pub fn tau_classical_first_order(atom: &AtomModel, f: f64) -> Result<f64> {
    if !(f.is_finite() && f > 0.0) {
        return Err(Error::invalid(format!("field strength must be finite and > 0, got {f} au")));
    }
    Ok(atom.ip() / (2.0 * f))
}

/// Time to cross from the entrance to the exit under the barrier,
/// `1/(2(I_p - δ_z))`; `1/(2I_p)` at `F_a`.
pub fn tau_delay(geom: &BarrierGeometry, atom: &AtomModel) -> Result<f64> {
    Ok(0.5 / exit_gap(geom, atom, "tau_d")?)
}

/// Time to reach the entrance point, `1/(2(I_p + δ_z))`.
pub fn tau_initial(geom: &BarrierGeometry, atom: &AtomModel) -> Result<f64> {
    if geom.regime == Regime::SuperAtomic {
        return Err(Error::ComplexRegime { estimator: "tau_i", field: geom.f });
    }
    Ok(0.5 / (atom.ip() + geom.delta_z))
}

/// Symmetrical (total) time `I_p/(4 Z_eff F)`; real in every regime.
pub fn tau_symmetric(geom: &BarrierGeometry, atom: &AtomModel) -> f64 {
    atom.ip() / (4.0 * atom.z_eff() * geom.f)
}

/// `(1/I_p + 1/(I_p - δ_z))/2`.
pub fn tau_total(geom: &BarrierGeometry, atom: &AtomModel) -> Result<f64> {
    let gap = exit_gap(geom, atom, "tau_t")?;
    Ok(0.5 * (1.0 / atom.ip() + 1.0 / gap))
}

/// Ionization time at the appearance intensity, `1/I_p`.
pub fn tau_appearance(atom: &AtomModel) -> f64 {
    1.0 / atom.ip()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexTime {
    pub re: f64,
    pub im: f64,
}

/// Above `F_a`: `tau_d = 1/(2(I_p - iδ''))`, `tau_i = 1/(2(I_p + iδ''))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexTimes {
    pub tau_d: ComplexTime,
    pub tau_i: ComplexTime,
}

pub fn complex_times(geom: &BarrierGeometry, atom: &AtomModel) -> Result<ComplexTimes> {
    if geom.regime != Regime::SuperAtomic {
        return Err(Error::InvalidRegime { field: geom.f, atomic_field: geom.atomic_field });
    }
    let ip = atom.ip();
    let d = geom.delta_z_imag;
    let denom = 2.0 * (ip * ip + d * d);
    let re = ip / denom;
    let im = d / denom;
    Ok(ComplexTimes { tau_d: ComplexTime { re, im }, tau_i: ComplexTime { re, im: -im } })
}

/// Keldysh parameter `ω·sqrt(2 I_p)/F`.
pub fn keldysh_gamma(atom: &AtomModel, f: f64, omega: f64) -> Result<f64> {
    if !(f > 0.0) || !(omega > 0.0) {
        return Err(Error::invalid(format!("Keldysh parameter needs F > 0 and ω > 0, got F = {f}, ω = {omega}")));
    }
    Ok(omega * (2.0 * atom.ip()).sqrt() / f)
}

/// Every estimator for one geometry. Real-only entries are `None` above `F_a`,
/// where `complex_parts` is set instead.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TunnelClocks {
    pub tau_i: Option<Time>,
    pub tau_d: Option<Time>,
    pub tau_sym: Time,
    pub tau_unsy: Option<Time>,
    pub tau_c: Time,
    pub tau_t: Option<Time>,
    pub tau_a: Time,
    /// `ΔE(x_{e,+}) = (I_p - δ_z)/2`.
    pub de_plus: Option<f64>,
    /// `ΔE(x_{e,-}) = (I_p + δ_z)/2`.
    pub de_minus: Option<f64>,
    pub complex_parts: Option<ComplexTimes>,
}

impl TunnelClocks {
    pub fn evaluate(atom: &AtomModel, geom: &BarrierGeometry) -> TunnelClocks {
        let time = |r: Result<f64>| r.ok().map(Time::from_au);
        let real = geom.regime.has_real_crossings();
        TunnelClocks {
            tau_i: time(tau_initial(geom, atom)),
            tau_d: time(tau_delay(geom, atom)),
            tau_sym: Time::from_au(tau_symmetric(geom, atom)),
            tau_unsy: time(tau_unsymmetric(geom, atom)),
            // geometry construction already validated F
            tau_c: Time::from_au(atom.ip() / (2.0 * geom.f)),
            tau_t: time(tau_total(geom, atom)),
            tau_a: Time::from_au(tau_appearance(atom)),
            de_plus: real.then(|| 0.5 * exit_gap(geom, atom, "de_plus").unwrap_or(f64::NAN)),
            de_minus: real.then(|| 0.5 * (atom.ip() + geom.delta_z)),
            complex_parts: complex_times(geom, atom).ok(),
        }
    }
}

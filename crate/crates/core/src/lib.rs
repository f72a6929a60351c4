//! Tunneling time in strong-field (attoclock) ionization from the
//! time-energy uncertainty relation.
//!
//! The model is one-dimensional: an electron bound at `-I_p` in the
//! effective potential `V_eff(x) = -Z_eff/x - x·F`. The crossings of that
//! potential with the `-I_p` line fix the barrier geometry
//! ([`barrier`]), and the Coulomb energy at the crossings fixes the energy
//! uncertainty from which the tunneling-time estimators follow
//! ([`clocks`]). [`harness`] sweeps the field strength, emits figure tables
//! and compares against measured data.
//!
//! ```
//! use attoclock::{atom, barrier::BarrierGeometry, clocks::TunnelClocks};
//!
//! let he = atom::AtomModel::new("He", 0.90357, 1.6875, "Clementi")?;
//! let geom = BarrierGeometry::solve(&he, 0.06)?;
//! let clocks = TunnelClocks::evaluate(&he, &geom);
//! let tau_d = clocks.tau_d.unwrap().attoseconds();
//! assert!((tau_d - 46.138).abs() < 1e-3);
//! # Ok::<(), attoclock::Error>(())
//! ```

pub mod atom;
pub mod barrier;
pub mod clocks;
mod error;
pub mod harness;
pub mod units;

pub use error::{Error, Result};

//! Static barrier geometry of the atom + laser effective potential
//! `V_eff(x) = -Z_eff/x - x·F` along the field axis.

use serde::Serialize;

use crate::atom::AtomModel;
use crate::error::{Error, Result};

/// Relative band around `F_a` that is classified as the atomic field strength.
pub const ATOMIC_REGIME_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `F < F_a`: two real crossings, tunneling through a barrier.
    SubAtomic,
    /// `F = F_a`: the crossings merge at the barrier top.
    Atomic,
    /// `F > F_a`: no real crossings, over-the-barrier ionization.
    SuperAtomic,
}

impl Regime {
    pub fn classify(atom: &AtomModel, f: f64) -> Regime {
        let fa = atom.atomic_field_strength();
        if (f - fa).abs() <= ATOMIC_REGIME_TOLERANCE * fa {
            Regime::Atomic
        } else if f < fa {
            Regime::SubAtomic
        } else {
            Regime::SuperAtomic
        }
    }

    /// True when the barrier has real crossings.
    pub fn has_real_crossings(self) -> bool {
        !matches!(self, Regime::SuperAtomic)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::SubAtomic => "sub_atomic",
            Regime::Atomic => "atomic",
            Regime::SuperAtomic => "super_atomic",
        }
    }
}

/// `δ_z = sqrt(I_p² - 4 Z_eff F)`, split into real and imaginary parts.
/// Exactly one of the two is nonzero, and both vanish at `F_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaZ {
    pub re: f64,
    pub im: f64,
}

fn require_field(f: f64) -> Result<()> {
    if f.is_finite() && f > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("field strength must be finite and > 0, got {f} au")))
    }
}

fn require_position(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { x })
    }
}

/// `V_eff(x) = -Z_eff/x - x·F`.
pub fn effective_potential(x: f64, atom: &AtomModel, f: f64) -> Result<f64> {
    require_position(x)?;
    Ok(-atom.z_eff() / x - x * f)
}

/// Signed barrier height `-I_p - V_eff(x) = -I_p + Z_eff/x + x·F`.
///
/// Negative under the barrier, zero at the crossings, positive outside.
pub fn signed_barrier_height(x: f64, atom: &AtomModel, f: f64) -> Result<f64> {
    require_position(x)?;
    Ok(-atom.ip() + atom.z_eff() / x + x * f)
}

/// Barrier height `|-I_p + Z_eff/x + x·F|`.
pub fn barrier_height(x: f64, atom: &AtomModel, f: f64) -> Result<f64> {
    signed_barrier_height(x, atom, f).map(f64::abs)
}

/// Position of the barrier top, `x_m = sqrt(Z_eff/F)`, where the Coulomb and
/// field potentials are equal.
pub fn barrier_peak_position(atom: &AtomModel, f: f64) -> Result<f64> {
    require_field(f)?;
    Ok((atom.z_eff() / f).sqrt())
}

/// `F_a = I_p²/(4 Z_eff)`.
pub fn atomic_field_strength(atom: &AtomModel) -> f64 {
    atom.atomic_field_strength()
}

/// Appearance intensity `I_a = F_a²`, in atomic units.
pub fn appearance_intensity(atom: &AtomModel) -> f64 {
    let fa = atom.atomic_field_strength();
    fa * fa
}

pub fn delta_z(atom: &AtomModel, f: f64) -> Result<DeltaZ> {
    require_field(f)?;
    if Regime::classify(atom, f) == Regime::Atomic {
        return Ok(DeltaZ { re: 0.0, im: 0.0 });
    }
    let ip = atom.ip();
    let disc = ip * ip - 4.0 * atom.z_eff() * f;
    Ok(DeltaZ { re: disc.max(0.0).sqrt(), im: (-disc).max(0.0).sqrt() })
}

/// Barrier-top height `|-I_p + sqrt(4 Z_eff F)|`.
pub fn barrier_top_height(atom: &AtomModel, f: f64) -> Result<f64> {
    require_field(f)?;
    Ok((-atom.ip() + (4.0 * atom.z_eff() * f).sqrt()).abs())
}

/// Real crossings `(x_{e,-}, x_{e,+}) = ((I_p - δ_z)/(2F), (I_p + δ_z)/(2F))`.
///
/// The entrance is evaluated as `2 Z_eff/(I_p + δ_z)`, the same value without
/// the cancellation in `I_p - δ_z` at weak fields.
pub fn exit_points(atom: &AtomModel, f: f64) -> Result<(f64, f64)> {
    let dz = delta_z(atom, f)?;
    if dz.im > 0.0 {
        return Err(Error::NoRealCrossing { re: atom.ip() / (2.0 * f), im: dz.im / (2.0 * f) });
    }
    let sum = atom.ip() + dz.re;
    Ok((2.0 * atom.z_eff() / sum, sum / (2.0 * f)))
}

/// Classical exit `x_{e,c} = I_p/F`, the crossing of `-x·F` with `-I_p`
/// when the Coulomb term is dropped.
pub fn classical_exit(atom: &AtomModel, f: f64) -> Result<f64> {
    require_field(f)?;
    Ok(atom.ip() / f)
}

/// Barrier width `d_B = x_{e,+} - x_{e,-} = δ_z/F`.
pub fn barrier_width(atom: &AtomModel, f: f64) -> Result<f64> {
    let dz = delta_z(atom, f)?;
    if dz.im > 0.0 {
        return Err(Error::NoRealCrossing { re: atom.ip() / (2.0 * f), im: dz.im / (2.0 * f) });
    }
    Ok(dz.re / f)
}

const MAX_BISECTIONS: usize = 400;

fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (mut g_lo, g_hi) = (g(lo), g(hi));
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::Internal(format!(
            "bracket [{lo}, {hi}] does not straddle a root (g = {g_lo}, {g_hi})"
        )));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Independent root isolation for the crossings: bisection of the signed
/// barrier height on `(0, x_m]` and `[x_m, 1.5·I_p/F]`.
pub fn exit_points_oracle(atom: &AtomModel, f: f64, tol: f64) -> Result<(f64, f64)> {
    require_field(f)?;
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be > 0, got {tol}")));
    }
    if Regime::classify(atom, f) != Regime::SubAtomic {
        return Err(Error::invalid(format!("oracle requires F < F_a, got F = {f}")));
    }
    let g = |x: f64| -atom.ip() + atom.z_eff() / x + x * f;
    let x_m = (atom.z_eff() / f).sqrt();
    if g(x_m) >= 0.0 {
        return Err(Error::Internal(format!("barrier top at x_m = {x_m} is not below -I_p for F = {f}")));
    }

    let mut lo = 0.5 * x_m;
    let mut halvings = 0;
    while g(lo) <= 0.0 {
        lo *= 0.5;
        halvings += 1;
        if halvings > 1100 {
            return Err(Error::Internal("could not bracket the inner crossing".into()));
        }
    }
    let inner = bisect(g, lo, x_m, tol)?;
    let outer = bisect(g, x_m, 1.5 * atom.ip() / f, tol)?;
    Ok((inner, outer))
}

/// Geometric solution of the barrier for one `(atom, F)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarrierGeometry {
    pub f: f64,
    pub atomic_field: f64,
    pub delta_z: f64,
    pub delta_z_imag: f64,
    /// `x_{e,-}`; absent above `F_a`.
    pub x_entrance: Option<f64>,
    /// `x_{e,+}`; absent above `F_a`.
    pub x_exit: Option<f64>,
    pub x_classical: f64,
    pub x_peak: f64,
    pub barrier_width: Option<f64>,
    pub h_max: f64,
    pub regime: Regime,
}

impl BarrierGeometry {
    pub fn solve(atom: &AtomModel, f: f64) -> Result<Self> {
        let dz = delta_z(atom, f)?;
        let regime = Regime::classify(atom, f);
        let (x_entrance, x_exit, barrier_width) = if regime.has_real_crossings() {
            let (lo, hi) = exit_points(atom, f)?;
            (Some(lo), Some(hi), Some(dz.re / f))
        } else {
            (None, None, None)
        };
        Ok(BarrierGeometry {
            f,
            atomic_field: atom.atomic_field_strength(),
            delta_z: dz.re,
            delta_z_imag: dz.im,
            x_entrance,
            x_exit,
            x_classical: classical_exit(atom, f)?,
            x_peak: barrier_peak_position(atom, f)?,
            barrier_width,
            h_max: barrier_top_height(atom, f)?,
            regime,
        })
    }
}

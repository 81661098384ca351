//! Problem definition, channel wavenumbers and the region bases.
//!
//! A configuration is the dimensionless tuple `(m, v, β, r_i)`. In the
//! barriers (`r < r_i`, `r > 1`) the radial equations are solved by
//! modified Bessel functions of the complex wavenumbers
//! `k±_o = √(v − e − β²/4) ± iβ/2`; in the well by ordinary Bessel functions
//! of the real wavenumbers `k±_i = √(e + β²/4) ± β/2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::{Family, Kernel};
use crate::error::{Error, Result};

/// Inset of the bound-state window from both edges.
pub const EPS_THRESHOLD: f64 = 1e-9;

/// Wavenumber functions reject energies closer than this to a window edge.
/// Half the window inset, so the inset window endpoints themselves are valid.
const THRESHOLD_GUARD: f64 = 0.5 * EPS_THRESHOLD;

/// Dimensional inputs in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Effective electron mass μ (kg).
    pub effective_mass: f64,
    /// Inner ring radius ρ_i (m).
    pub inner_radius: f64,
    /// Outer ring radius ρ_o (m).
    pub outer_radius: f64,
    /// Barrier height V (J).
    pub well_depth: f64,
    /// Rashba coefficient β_R of `β_R (σ_x p_y − σ_y p_x)`, in m/s.
    pub rashba_strength: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
}

/// Dimensionless image of a [`PhysicalParams`] and an energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dimensionless {
    pub v: f64,
    pub beta: f64,
    pub r_i: f64,
    pub e: f64,
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("effective_mass", self.effective_mass),
            ("inner_radius", self.inner_radius),
            ("outer_radius", self.outer_radius),
            ("hbar", self.hbar),
        ];
        for (name, x) in positive {
            if !(x.is_finite() && x > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {x}")));
            }
        }
        if !(self.well_depth.is_finite() && self.well_depth >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "well_depth must be non-negative, got {}",
                self.well_depth
            )));
        }
        if !self.rashba_strength.is_finite() {
            return Err(Error::InvalidParameter("rashba_strength must be finite".into()));
        }
        if self.inner_radius >= self.outer_radius {
            return Err(Error::InvalidParameter(format!(
                "inner_radius {} must be below outer_radius {}",
                self.inner_radius, self.outer_radius
            )));
        }
        Ok(())
    }

    /// `ħ² / (2 μ ρ_o²)`, the unit of dimensionless energy.
    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.effective_mass * self.outer_radius * self.outer_radius)
    }

    pub fn energy_from_dimensionless(&self, e: f64) -> f64 {
        e * self.energy_unit()
    }
}

pub fn nondimensionalize(p: &PhysicalParams, energy: f64) -> Result<Dimensionless> {
    p.validate()?;
    let unit = p.energy_unit();
    Ok(Dimensionless {
        v: p.well_depth / unit,
        beta: 2.0 * p.effective_mass * p.outer_radius * p.rashba_strength / p.hbar,
        r_i: p.inner_radius / p.outer_radius,
        e: energy / unit,
    })
}

/// Dimensionless ring: total angular momentum channel `m`, barrier height
/// `v`, Rashba coupling `beta` and inner radius `r_i` (outer radius is 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingConfig {
    pub m: i32,
    pub v: f64,
    pub beta: f64,
    pub r_i: f64,
}

impl RingConfig {
    pub fn new(m: i32, v: f64, beta: f64, r_i: f64) -> Result<Self> {
        let cfg = RingConfig { m, v, beta, r_i };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v.is_finite() && self.v > 0.0) {
            return Err(Error::InvalidParameter(format!("v must be positive, got {}", self.v)));
        }
        if !self.beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite, got {}",
                self.beta
            )));
        }
        if !(self.r_i > 0.0 && self.r_i < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "r_i must lie in (0, 1), got {}",
                self.r_i
            )));
        }
        Ok(())
    }

    pub fn from_dimensionless(m: i32, d: &Dimensionless) -> Result<Self> {
        RingConfig::new(m, d.v, d.beta, d.r_i)
    }

    /// The partner channel under `(m, β) → (−(m+1), −β)`.
    pub fn mirrored(&self) -> RingConfig {
        RingConfig {
            m: -(self.m + 1),
            beta: -self.beta,
            ..*self
        }
    }

    /// `β² / 4`.
    pub fn rashba_shift(&self) -> f64 {
        0.25 * self.beta * self.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    Outer,
    Well,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavenumberPair {
    pub k_plus: Complex64,
    pub k_minus: Complex64,
    pub kind: RegionKind,
}

impl WavenumberPair {
    /// Real parts of a well pair.
    pub fn real(&self) -> (f64, f64) {
        (self.k_plus.re, self.k_minus.re)
    }
}

/// Barrier wavenumbers `√(v − e − β²/4) ± iβ/2`.
pub fn outer_wavenumbers(e: f64, v: f64, beta: f64) -> Result<WavenumberPair> {
    let edge = v - 0.25 * beta * beta;
    let gap = edge - e;
    if !(gap >= THRESHOLD_GUARD) {
        return Err(Error::Threshold {
            e,
            edge,
            region: "barrier",
        });
    }
    let k = Complex64::new(gap.sqrt(), 0.5 * beta);
    Ok(WavenumberPair {
        k_plus: k,
        k_minus: k.conj(),
        kind: RegionKind::Outer,
    })
}

/// Well wavenumbers `√(e + β²/4) ± β/2`.
///
/// For `−β²/4 < e < 0` one of the pair is negative; the smaller-magnitude
/// member is formed as `e / (√(e + β²/4) + |β|/2)` so that its sign is that
/// of `e` exactly and it does not suffer cancellation near `e = 0`.
pub fn inner_wavenumbers(e: f64, beta: f64) -> Result<WavenumberPair> {
    let shift = 0.25 * beta * beta;
    let gap = e + shift;
    if !(gap >= THRESHOLD_GUARD) {
        return Err(Error::Threshold {
            e,
            edge: -shift,
            region: "well",
        });
    }
    let s = gap.sqrt();
    let h = 0.5 * beta.abs();
    let big = s + h;
    let small = if h == 0.0 { s } else { e / big };
    let (kp, km) = if beta >= 0.0 { (big, small) } else { (small, big) };
    Ok(WavenumberPair {
        k_plus: Complex64::new(kp, 0.0),
        k_minus: Complex64::new(km, 0.0),
        kind: RegionKind::Well,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    Region1,
    Region2J,
    Region2Y,
    Region3,
}

/// Real basis pair `(f, g)` and radial derivatives at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisEval {
    pub f: f64,
    pub g: f64,
    pub df: f64,
    pub dg: f64,
    pub label: BasisLabel,
}

impl BasisEval {
    fn from_complex(value: Complex64, deriv: Complex64, label: BasisLabel) -> Self {
        BasisEval {
            f: value.re,
            g: value.im,
            df: deriv.re,
            dg: deriv.im,
            label,
        }
    }

    fn from_split(minus: (f64, f64), plus: (f64, f64), label: BasisLabel) -> Self {
        BasisEval {
            f: 0.5 * (minus.0 + plus.0),
            g: 0.5 * (minus.0 - plus.0),
            df: 0.5 * (minus.1 + plus.1),
            dg: 0.5 * (minus.1 - plus.1),
            label,
        }
    }
}

fn require_kind(k: &WavenumberPair, kind: RegionKind) -> Result<()> {
    if k.kind != kind {
        return Err(Error::InvalidParameter(format!(
            "expected {kind:?} wavenumbers, got {:?}",
            k.kind
        )));
    }
    Ok(())
}

/// `f_1 = Re I_m(k⁺r)`, `g_1 = Im I_m(k⁺r)`: the half-sum and
/// `i/2`-difference of `I_m(k⁻r)` and `I_m(k⁺r)` collapse to real and
/// imaginary parts because `k⁻ = conj(k⁺)`.
pub fn basis_region1(m: i32, r: f64, k: &WavenumberPair) -> Result<BasisEval> {
    require_kind(k, RegionKind::Outer)?;
    let (c, d) = Kernel::default().value_and_deriv(Family::I, m, k.k_plus, r)?;
    Ok(BasisEval::from_complex(c, d, BasisLabel::Region1))
}

/// `f_3 = Re K_m(k⁺r)`, `g_3 = Im K_m(k⁺r)`.
pub fn basis_region3(m: i32, r: f64, k: &WavenumberPair) -> Result<BasisEval> {
    require_kind(k, RegionKind::Outer)?;
    let (c, d) = Kernel::default().value_and_deriv(Family::K, m, k.k_plus, r)?;
    Ok(BasisEval::from_complex(c, d, BasisLabel::Region3))
}

/// `(f_21, g_21)` from `J` and `(f_22, g_22)` from `Y`.
pub fn basis_region2(m: i32, r: f64, k: &WavenumberPair) -> Result<(BasisEval, BasisEval)> {
    require_kind(k, RegionKind::Well)?;
    let (kp, km) = k.real();
    let j = BasisEval::from_split(
        well_cylinder(Family::J, m, km, r)?,
        well_cylinder(Family::J, m, kp, r)?,
        BasisLabel::Region2J,
    );
    let y = BasisEval::from_split(
        well_cylinder(Family::Y, m, km, r)?,
        well_cylinder(Family::Y, m, kp, r)?,
        BasisLabel::Region2Y,
    );
    Ok((j, y))
}

/// `C_n(k r)` and `d/dr C_n(k r)` for real `k` of either sign, `C ∈ {J, Y}`.
///
/// Negative `k` uses the real continuation `C_n(−x) := (−1)^n C_n(x)`, which
/// satisfies the same raising and lowering relations in `r` as the
/// positive-`k` functions.
pub(crate) fn well_cylinder(family: Family, n: i32, k: f64, r: f64) -> Result<(f64, f64)> {
    if k == 0.0 {
        return match family {
            Family::J => Ok((if n == 0 { 1.0 } else { 0.0 }, 0.0)),
            _ => Err(Error::Domain {
                family,
                order: n,
                z: Complex64::new(0.0, 0.0),
            }),
        };
    }
    let (c, d) = Kernel::default().value_and_deriv(family, n, Complex64::new(k.abs(), 0.0), r)?;
    let parity = if k < 0.0 && n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    Ok((parity * c.re, parity * d.re))
}

/// Values (no derivatives) of `C_n(k r)` for real `k`, same continuation.
pub(crate) fn well_cylinder_value(family: Family, n: i32, k: f64, r: f64) -> Result<f64> {
    if k == 0.0 {
        return well_cylinder(family, n, k, r).map(|p| p.0);
    }
    let c = Kernel::default().eval(family, n, Complex64::new(k.abs() * r, 0.0))?;
    let parity = if k < 0.0 && n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    Ok(parity * c.re)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPhase {
    pub gamma: f64,
}

impl TailPhase {
    pub fn cos(&self) -> f64 {
        self.gamma.cos()
    }

    pub fn sin(&self) -> f64 {
        self.gamma.sin()
    }
}

/// Phase γ with `cos γ = √(v−e−β²/4)/√(v−e)`, `sin γ = β/(2√(v−e))`.
pub fn tail_phase(e: f64, v: f64, beta: f64) -> Result<TailPhase> {
    let k = outer_wavenumbers(e, v, beta)?;
    Ok(TailPhase {
        gamma: (0.5 * beta).atan2(k.k_plus.re),
    })
}

/// Leading large-`r` forms of `(f_3, g_3)`:
/// `√(π/2) e^{−κr} / ((v−e)^{1/4} √r) · (cos θ, −sin θ)` with
/// `κ = √(v−e−β²/4)` and `θ = (βr + γ)/2`. Independent of the order.
pub fn tail_asymptote(e: f64, v: f64, beta: f64, r: f64) -> Result<(f64, f64)> {
    let k = outer_wavenumbers(e, v, beta)?;
    let kappa = k.k_plus.re;
    let gamma = (0.5 * beta).atan2(kappa);
    let amp = (0.5 * PI).sqrt() * (-kappa * r).exp() / ((v - e).powf(0.25) * r.sqrt());
    let theta = 0.5 * (beta * r + gamma);
    Ok((amp * theta.cos(), -amp * theta.sin()))
}

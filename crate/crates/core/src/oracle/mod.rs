//! Eigenvalues by direct integration of the coupled radial equations.
//!
//! With `V = v` in the barriers and `V = 0` in the well,
//!
//! ```text
//! u'' = −u'/r + (m²/r² + V − e) u + β (w' + (m+1) w / r)
//! w'' = −w'/r + ((m+1)²/r² + V − e) w − β (u' − m u / r)
//! ```
//!
//! Two regular solutions are carried outward from `r = ε` and two decaying
//! ones inward from far outside the well; the bound states are the zeros of
//! the 4 × 4 determinant of the four states at a junction inside the well.
//! Nothing here calls the Bessel kernel.

mod dopri;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::RingConfig;
use crate::spectrum::{energy_window, EnergyWindow};

pub use dopri::State as PairState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub u: f64,
    pub du: f64,
    pub w: f64,
    pub dw: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// Barrier, potential `v`.
    Barrier,
    /// Well, potential 0.
    Well,
}

/// Start radius of the outward integration.
pub const START_OFFSET: f64 = 1e-4;

/// `d/dr (u, u', w, w')`.
pub fn rhs(region: Region, cfg: &RingConfig, e: f64, r: f64, s: &StateVector) -> Result<StateVector> {
    if !(r > 0.0) {
        return Err(Error::Singular);
    }
    Ok(rhs_unchecked(region, cfg, e, r, s))
}

#[inline]
fn rhs_unchecked(region: Region, cfg: &RingConfig, e: f64, r: f64, s: &StateVector) -> StateVector {
    let pot = match region {
        Region::Barrier => cfg.v,
        Region::Well => 0.0,
    };
    let m = cfg.m as f64;
    let n = m + 1.0;
    let inv = 1.0 / r;
    let ddu = -s.du * inv + (m * m * inv * inv + pot - e) * s.u + cfg.beta * (s.dw + n * s.w * inv);
    let ddw = -s.dw * inv + (n * n * inv * inv + pot - e) * s.w - cfg.beta * (s.du - m * s.u * inv);
    StateVector {
        u: s.du,
        du: ddu,
        w: s.dw,
        dw: ddw,
    }
}

fn split(y: &PairState) -> [StateVector; 2] {
    let one = |o: usize| StateVector {
        u: y[o],
        du: y[o + 1],
        w: y[o + 2],
        dw: y[o + 3],
    };
    [one(0), one(4)]
}

fn join(a: &StateVector, b: &StateVector) -> PairState {
    [a.u, a.du, a.w, a.dw, b.u, b.du, b.w, b.dw]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Width of the final bisection bracket.
    pub tol: f64,
    pub scan_points: usize,
    /// Local error tolerance of the integrator.
    pub local_error: f64,
    pub max_steps: usize,
    /// Junction radius; `(r_i + 1)/2` when unset.
    pub junction: Option<f64>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            tol: 1e-7,
            scan_points: 800,
            local_error: 1e-11,
            max_steps: 200_000,
            junction: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingResult {
    pub matching_determinant: f64,
    pub junction: f64,
}

/// Renormalise the pair and remove from the second solution its component
/// along the first. The map is triangular with positive diagonal, so the
/// sign of any determinant built from the pair is unchanged.
fn orthonormalise(y: &mut PairState) {
    let n0 = (0..4).map(|i| y[i] * y[i]).sum::<f64>().sqrt();
    for v in y.iter_mut().take(4) {
        *v /= n0;
    }
    let dot: f64 = (0..4).map(|i| y[i] * y[i + 4]).sum();
    for i in 0..4 {
        y[i + 4] -= dot * y[i];
    }
    let n1 = (4..8).map(|i| y[i] * y[i]).sum::<f64>().sqrt();
    for v in y.iter_mut().skip(4) {
        *v /= n1;
    }
}

/// Whether the pair has drifted towards linear dependence or very unequal
/// size.
fn needs_orthonormalising(y: &PairState) -> bool {
    let n0 = (0..4).map(|i| y[i] * y[i]).sum::<f64>().sqrt();
    let n1 = (4..8).map(|i| y[i] * y[i]).sum::<f64>().sqrt();
    let dot: f64 = (0..4).map(|i| y[i] * y[i + 4]).sum();
    let ratio = n0.max(n1) / n0.min(n1);
    let cos = (dot / (n0 * n1)).abs();
    ratio > 1e8 || cos > 1.0 - 1e-8 || n0.max(n1) > 1e100 || n0.min(n1) < 1e-100
}

struct Integrator<'a> {
    cfg: &'a RingConfig,
    e: f64,
    ctl: dopri::Controls,
}

impl Integrator<'_> {
    fn run(&self, region: Region, r0: f64, r1: f64, y: PairState) -> Result<PairState> {
        let (cfg, e) = (self.cfg, self.e);
        let f = |r: f64, y: &PairState| {
            let [a, b] = split(y);
            join(
                &rhs_unchecked(region, cfg, e, r, &a),
                &rhs_unchecked(region, cfg, e, r, &b),
            )
        };
        let post = |y: &mut PairState| {
            if needs_orthonormalising(y) {
                orthonormalise(y);
            }
        };
        let h0 = 1e-3 * (r1 - r0).abs().min(r0.abs().max(r1.abs()));
        let (mut out, _) = dopri::integrate(f, post, r0, r1, y, h0, &self.ctl)?;
        orthonormalise(&mut out);
        Ok(out)
    }
}

/// Power-law seeds `u ~ r^{|m|}` and `w ~ r^{|m+1|}` at `r = ε`.
fn outward_seeds(m: i32) -> PairState {
    let eps = START_OFFSET;
    let p = m.unsigned_abs() as i32;
    let q = (m + 1).unsigned_abs() as i32;
    let pow = |k: i32| {
        if k == 0 {
            (1.0, 0.0)
        } else {
            (eps.powi(k), k as f64 * eps.powi(k - 1))
        }
    };
    let (u, du) = pow(p);
    let (w, dw) = pow(q);
    [u, du, 0.0, 0.0, 0.0, 0.0, w, dw]
}

/// `K_n(z) e^{Re z}` and its `z`-derivative (same scaling) from the
/// large-argument expansion, truncated at its smallest term.
fn k_asymptotic(n: i32, z: Complex64) -> (Complex64, Complex64) {
    let mu = 4.0 * (n as f64) * (n as f64);
    let inv = 1.0 / z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut s = term;
    let mut ds = Complex64::new(0.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * inv * ((mu - odd * odd) / (8.0 * kf));
        if next.norm() >= prev || next.norm() < 1e-17 * s.norm() {
            break;
        }
        prev = next.norm();
        term = next;
        s += term;
        ds -= term * inv * kf;
    }
    let phase = Complex64::new(0.0, -z.im).exp();
    let pre = (std::f64::consts::FRAC_PI_2 / z).sqrt() * phase;
    let value = pre * s;
    let deriv = pre * (ds - s * (1.0 + 0.5 * inv));
    (value, deriv)
}

/// Decay lengths `1/κ` between the start of the inward integration and the
/// well, and the cap on that distance.
const DECAY_LENGTHS: f64 = 16.0;
const MAX_INWARD_SPAN: f64 = 80.0;

/// Smallest barrier wavenumber the oracle accepts: below it the capped
/// inward span no longer covers `DECAY_LENGTHS` decay lengths and the
/// far-field seeds stop isolating the decaying solutions.
pub const KAPPA_MIN: f64 = DECAY_LENGTHS / MAX_INWARD_SPAN;

/// Far-field radius where the inward integration starts.
pub fn inward_start(kappa: f64) -> f64 {
    1.0 + (DECAY_LENGTHS / kappa).min(MAX_INWARD_SPAN)
}

/// Scan window: the solver window with its top lowered to `κ = KAPPA_MIN`.
pub fn oracle_window(cfg: &RingConfig) -> EnergyWindow {
    let w = energy_window(cfg);
    EnergyWindow {
        e_min: w.e_min,
        e_max: w.e_max.min(cfg.v - cfg.rashba_shift() - KAPPA_MIN * KAPPA_MIN),
    }
}

/// The two decaying barrier solutions at `r`, up to the common factor
/// `e^{−κ r}`: `(Re K_m, Im K_{m+1})` and `(Im K_m, −Re K_{m+1})` of
/// `(κ + iβ/2) r`.
fn inward_seeds(cfg: &RingConfig, kappa: f64, r: f64) -> PairState {
    let k = Complex64::new(kappa, 0.5 * cfg.beta);
    let (a, da) = k_asymptotic(cfg.m, k * r);
    let (b, db) = k_asymptotic(cfg.m + 1, k * r);
    let (da, db) = (da * k, db * k);
    [a.re, da.re, b.im, db.im, a.im, da.im, -b.re, -db.re]
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let mut a = m;
    let mut det = 1.0;
    for k in 0..4 {
        let p = (k..4)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("non-empty range");
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        let pivot = a[k];
        for row in a.iter_mut().skip(k + 1) {
            let f = row[k] / pivot[k];
            for (x, p) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Junction determinant at energy `e`.
pub fn shoot(cfg: &RingConfig, e: f64, opts: &OracleOptions) -> Result<ShootingResult> {
    cfg.validate()?;
    let window = oracle_window(cfg);
    if !window.contains(e) {
        return Err(Error::Threshold {
            e,
            edge: if e < window.e_min { window.e_min } else { window.e_max },
            region: "oracle window",
        });
    }
    let junction = opts.junction.unwrap_or(0.5 * (cfg.r_i + 1.0));
    if !(junction > cfg.r_i && junction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "junction {junction} must lie inside the well ({}, 1)",
            cfg.r_i
        )));
    }
    let integ = Integrator {
        cfg,
        e,
        ctl: dopri::Controls {
            tol: opts.local_error,
            max_steps: opts.max_steps,
        },
    };
    let kappa = (cfg.v - e - cfg.rashba_shift()).sqrt();

    let mut out = integ.run(Region::Barrier, START_OFFSET, cfg.r_i, outward_seeds(cfg.m))?;
    out = integ.run(Region::Well, cfg.r_i, junction, out)?;

    let r_start = inward_start(kappa);
    let mut inn = inward_seeds(cfg, kappa, r_start);
    orthonormalise(&mut inn);
    inn = integ.run(Region::Barrier, r_start, 1.0, inn)?;
    inn = integ.run(Region::Well, 1.0, junction, inn)?;

    let mut cols = [[0.0; 4]; 4];
    for i in 0..4 {
        cols[i] = [out[i], out[i + 4], inn[i], inn[i + 4]];
    }
    Ok(ShootingResult {
        matching_determinant: det4(cols),
        junction,
    })
}

/// Bound states from sign changes of the junction determinant on a uniform
/// scan, bisected to `opts.tol`.
pub fn oracle_levels(cfg: &RingConfig, opts: &OracleOptions) -> Result<Vec<f64>> {
    cfg.validate()?;
    if opts.scan_points < 2 || !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(
            "oracle needs scan_points ≥ 2 and tol > 0".into(),
        ));
    }
    let window = oracle_window(cfg);
    if window.is_empty() {
        return Ok(Vec::new());
    }
    let n = opts.scan_points;
    let step = (window.e_max - window.e_min) / (n - 1) as f64;
    let grid: Vec<f64> = (0..n)
        .map(|i| {
            if i + 1 == n {
                window.e_max
            } else {
                window.e_min + step * i as f64
            }
        })
        .collect();
    let signs: Vec<f64> = grid
        .par_iter()
        .map(|&e| shoot(cfg, e, opts).map(|s| s.matching_determinant.signum()))
        .collect::<Result<_>>()?;
    let brackets: Vec<(f64, f64, f64)> = (0..n - 1)
        .filter(|&i| signs[i] * signs[i + 1] < 0.0)
        .map(|i| (grid[i], grid[i + 1], signs[i]))
        .collect();
    brackets
        .par_iter()
        .map(|&(mut a, mut b, sa)| {
            while b - a > opts.tol {
                let mid = 0.5 * (a + b);
                let s = shoot(cfg, mid, opts)?.matching_determinant.signum();
                if s == 0.0 {
                    return Ok(mid);
                }
                if s == sa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            Ok(0.5 * (a + b))
        })
        .collect()
}

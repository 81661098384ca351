//! Piecewise radial solution `(u, w)` at a bound-state energy.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::{Family, Kernel};
use crate::error::{Error, Result};
use crate::matching::{assemble_matrix, assemble_split_matrix, null_vector_with_well_split, C1, C3, D1, D3};
use crate::model::{
    basis_region1, basis_region3, inner_wavenumbers, outer_wavenumbers, well_cylinder, well_cylinder_value, BasisEval,
    RingConfig, WavenumberPair,
};
use crate::quadrature::integrate;

/// `r_tail` is where the barrier envelope drops to this fraction of the peak.
pub const TAIL_FRACTION: f64 = 1e-14;
pub const MIN_SAMPLES: usize = 16;
/// Sampled output never extends past this radius.
pub const SAMPLE_RADIUS: f64 = 3.0;

/// Relative to the peak of `(u² + w²) r`.
const QUAD_ABS_TOL: f64 = 1e-13;
const PEAK_SAMPLES: usize = 256;
const QUAD_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution {
    pub cfg: RingConfig,
    pub e: f64,
    /// `(c_1, d_1, c_21, d_21, c_22, d_22, c_3, d_3)`, unit length.
    pub coefficients: [f64; 8],
    /// Well coefficients on `C(k⁻r)` and `C(k⁺r)` separately,
    /// `((c_21 + d_21)/2, (c_21 − d_21)/2, (c_22 + d_22)/2, (c_22 − d_22)/2)`,
    /// resolved independently of the paired values.
    pub well_split: [f64; 4],
    /// Overall factor applied to every evaluation; 1 until normalised.
    pub norm: f64,
    pub r_tail: f64,
    /// Barrier wavenumber `√(v − e − β²/4)`.
    pub kappa: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Wavenumbers {
    outer: WavenumberPair,
    inner: WavenumberPair,
}

impl RadialSolution {
    fn wavenumbers(&self) -> Result<Wavenumbers> {
        Ok(Wavenumbers {
            outer: outer_wavenumbers(self.e, self.cfg.v, self.cfg.beta)?,
            inner: inner_wavenumbers(self.e, self.cfg.beta)?,
        })
    }

    fn x(&self, i: usize) -> f64 {
        self.coefficients[i]
    }

    /// `(u, w)` before the `norm` factor.
    fn raw(&self, k: &Wavenumbers, r: f64) -> Result<(f64, f64)> {
        let m = self.cfg.m;
        let kernel = Kernel::default();
        if r < self.cfg.r_i {
            let z = k.outer.k_plus * r;
            let a = kernel.eval(Family::I, m, z)?;
            let b = kernel.eval(Family::I, m + 1, z)?;
            let u = self.x(C1) * a.re + self.x(D1) * a.im;
            let w = -self.x(C1) * b.im + self.x(D1) * b.re;
            Ok((u, w))
        } else if r <= 1.0 {
            let (kp, km) = k.inner.real();
            let mut u = 0.0;
            let mut w = 0.0;
            for (slot, family) in [Family::J, Family::Y].into_iter().enumerate() {
                let (a, b) = (self.well_split[2 * slot], self.well_split[2 * slot + 1]);
                u += a * well_cylinder_value(family, m, km, r)? + b * well_cylinder_value(family, m, kp, r)?;
                w += a * well_cylinder_value(family, m + 1, km, r)? - b * well_cylinder_value(family, m + 1, kp, r)?;
            }
            Ok((u, w))
        } else if r <= self.r_tail {
            let z = k.outer.k_plus * r;
            let a = kernel.eval(Family::K, m, z)?;
            let b = kernel.eval(Family::K, m + 1, z)?;
            let u = self.x(C3) * a.re + self.x(D3) * a.im;
            let w = self.x(C3) * b.im - self.x(D3) * b.re;
            Ok((u, w))
        } else {
            let (fa, ga) = self.tail(r)?;
            // Leading large-r forms are order independent: f ≈ F, g ≈ G.
            let u = self.x(C3) * fa + self.x(D3) * ga;
            let w = self.x(C3) * ga - self.x(D3) * fa;
            Ok((u, w))
        }
    }

    fn tail(&self, r: f64) -> Result<(f64, f64)> {
        crate::model::tail_asymptote(self.e, self.cfg.v, self.cfg.beta, r)
    }

    /// Envelope `(|c_3| + |d_3|) √(π/2) e^{−κr} / ((v−e)^{1/4} √r)` bounding
    /// `|u|` and `|w|` at large `r`.
    fn envelope(&self, r: f64) -> f64 {
        let amp = self.x(C3).abs() + self.x(D3).abs();
        amp * (0.5 * PI).sqrt() * (-self.kappa * r).exp() / ((self.cfg.v - self.e).powf(0.25) * r.sqrt())
    }

    /// `∫_{r_tail}^∞ (u² + w²) r dr` from the leading asymptote, where
    /// `u² + w² = (c_3² + d_3²) (π/2) e^{−2κr} / (√(v−e) r)`.
    fn tail_integral(&self) -> f64 {
        let c2 = self.x(C3).powi(2) + self.x(D3).powi(2);
        c2 * 0.5 * PI * (-2.0 * self.kappa * self.r_tail).exp() / ((self.cfg.v - self.e).sqrt() * 2.0 * self.kappa)
    }
}

/// Solution at a root of the secular equation, with unit coefficient vector.
pub fn build_solution(cfg: &RingConfig, e: f64) -> Result<RadialSolution> {
    // Split columns keep the small-wavenumber coefficients well determined;
    // at β = 0 the paired ones decouple the spin sectors exactly.
    let mat = if cfg.beta == 0.0 {
        assemble_matrix(cfg, e)?
    } else {
        assemble_split_matrix(cfg, e)?
    };
    let (x, well_split) = null_vector_with_well_split(&mat)?;
    let kappa = outer_wavenumbers(e, cfg.v, cfg.beta)?.k_plus.re;
    let mut sol = RadialSolution {
        cfg: *cfg,
        e,
        coefficients: x.into(),
        well_split,
        norm: 1.0,
        r_tail: f64::INFINITY,
        kappa,
    };
    let peak = peak_amplitude(&sol)?;
    sol.r_tail = tail_radius(&sol, peak);
    Ok(sol)
}

/// Largest `|u|`, `|w|` on a fine grid over `[0, 1]`.
fn peak_amplitude(sol: &RadialSolution) -> Result<f64> {
    let k = sol.wavenumbers()?;
    let mut peak: f64 = 0.0;
    let n = 400;
    for i in 0..=n {
        let r = i as f64 / n as f64;
        let (u, w) = sol.raw(&k, r)?;
        peak = peak.max(u.abs()).max(w.abs());
    }
    Ok(peak)
}

fn tail_radius(sol: &RadialSolution, peak: f64) -> f64 {
    let target = TAIL_FRACTION * peak;
    if sol.envelope(1.0) <= target {
        return 1.0;
    }
    let mut hi = 2.0;
    while sol.envelope(hi) > target {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if sol.envelope(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    hi
}

/// `(u(r), w(r))` including the normalisation factor.
pub fn evaluate(sol: &RadialSolution, r: f64) -> Result<(f64, f64)> {
    if !(r >= 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be non-negative, got {r}")));
    }
    let k = sol.wavenumbers()?;
    let (u, w) = sol.raw(&k, r)?;
    Ok((sol.norm * u, sol.norm * w))
}

/// Mismatch of `u, u', w, w'` across `r_i` (region 1 vs 2) and across 1
/// (region 2 vs 3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityReport {
    /// Ordered as the matching rows: `u, u', w, w'` at `r_i`, then at 1.
    /// Values are divided by the largest function value, derivatives by the
    /// largest derivative, over both sides of both interfaces.
    pub residuals: [f64; 8],
    pub max: f64,
}

fn fields(sol: &RadialSolution, lo: &BasisEval, hi: &BasisEval, c: usize, d: usize, inner: bool) -> [f64; 4] {
    let (xc, xd) = (sol.x(c), sol.x(d));
    let s = if inner { -1.0 } else { 1.0 };
    [
        xc * lo.f + xd * lo.g,
        xc * lo.df + xd * lo.dg,
        s * (xc * hi.g - xd * hi.f),
        s * (xc * hi.dg - xd * hi.df),
    ]
}

fn well_fields(sol: &RadialSolution, k: &WavenumberPair, r: f64) -> Result<[f64; 4]> {
    let m = sol.cfg.m;
    let (kp, km) = k.real();
    let mut out = [0.0; 4];
    for (slot, family) in [Family::J, Family::Y].into_iter().enumerate() {
        let (a, b) = (sol.well_split[2 * slot], sol.well_split[2 * slot + 1]);
        let (lo, dlo) = well_cylinder(family, m, km, r)?;
        let (hi, dhi) = well_cylinder(family, m, kp, r)?;
        let (lo1, dlo1) = well_cylinder(family, m + 1, km, r)?;
        let (hi1, dhi1) = well_cylinder(family, m + 1, kp, r)?;
        out[0] += a * lo + b * hi;
        out[1] += a * dlo + b * dhi;
        out[2] += a * lo1 - b * hi1;
        out[3] += a * dlo1 - b * dhi1;
    }
    Ok(out)
}

pub fn continuity_residuals(sol: &RadialSolution) -> Result<ContinuityReport> {
    let k = sol.wavenumbers()?;
    let (m, r_i) = (sol.cfg.m, sol.cfg.r_i);
    let r1 = fields(
        sol,
        &basis_region1(m, r_i, &k.outer)?,
        &basis_region1(m + 1, r_i, &k.outer)?,
        C1,
        D1,
        true,
    );
    let r3 = fields(
        sol,
        &basis_region3(m, 1.0, &k.outer)?,
        &basis_region3(m + 1, 1.0, &k.outer)?,
        C3,
        D3,
        false,
    );
    let w_in = well_fields(sol, &k.inner, r_i)?;
    let w_out = well_fields(sol, &k.inner, 1.0)?;

    let all = [r1, w_in, w_out, r3];
    let value_scale = all
        .iter()
        .flat_map(|f| [f[0], f[2]])
        .fold(0.0f64, |a, x| a.max(x.abs()));
    let deriv_scale = all
        .iter()
        .flat_map(|f| [f[1], f[3]])
        .fold(0.0f64, |a, x| a.max(x.abs()));
    let mut residuals = [0.0; 8];
    for i in 0..4 {
        let scale = if i % 2 == 0 { value_scale } else { deriv_scale };
        residuals[i] = (r1[i] - w_in[i]).abs() / scale;
        residuals[i + 4] = (w_out[i] - r3[i]).abs() / scale;
    }
    let max = residuals.iter().copied().fold(0.0, f64::max);
    Ok(ContinuityReport { residuals, max })
}

/// Breakdown of `∫ (u² + w²) r dr` for the current `norm`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormIntegral {
    pub inner: f64,
    pub well: f64,
    pub barrier: f64,
    pub tail: f64,
    pub error: f64,
}

impl NormIntegral {
    pub fn total(&self) -> f64 {
        self.inner + self.well + self.barrier + self.tail
    }
}

pub fn norm_integral(sol: &RadialSolution) -> Result<NormIntegral> {
    let k = sol.wavenumbers()?;
    let mut failure = None;
    let mut density = |r: f64| match sol.raw(&k, r) {
        Ok((u, w)) => (u * u + w * w) * r,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let r_i = sol.cfg.r_i;
    // Unnormalised densities can sit anywhere in magnitude, so the absolute
    // tolerance follows the sampled peak.
    let peak = (0..=PEAK_SAMPLES)
        .map(|i| density(sol.r_tail * i as f64 / PEAK_SAMPLES as f64))
        .fold(0.0, f64::max);
    let abs_tol = QUAD_ABS_TOL * peak.max(f64::MIN_POSITIVE);
    let a = integrate(&mut density, 0.0, r_i, abs_tol, QUAD_REL_TOL)?;
    let b = integrate(&mut density, r_i, 1.0, abs_tol, QUAD_REL_TOL)?;
    let c = integrate(&mut density, 1.0, sol.r_tail, abs_tol, QUAD_REL_TOL)?;
    if let Some(e) = failure {
        return Err(e);
    }
    let s = sol.norm * sol.norm;
    Ok(NormIntegral {
        inner: s * a.value,
        well: s * b.value,
        barrier: s * c.value,
        tail: s * sol.tail_integral(),
        error: s * (a.error + b.error + c.error),
    })
}

pub fn normalize(sol: &RadialSolution) -> Result<RadialSolution> {
    let base = RadialSolution {
        norm: 1.0,
        ..sol.clone()
    };
    let total = norm_integral(&base)?.total();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::NonFinite("normalisation integral"));
    }
    Ok(RadialSolution {
        norm: total.sqrt().recip(),
        ..base
    })
}

/// `(u(r) e^{imφ}, w(r) e^{i(m+1)φ})`.
pub fn spinor(sol: &RadialSolution, r: f64, phi: f64) -> Result<[Complex64; 2]> {
    let (u, w) = evaluate(sol, r)?;
    let m = sol.cfg.m as f64;
    Ok([
        Complex64::from_polar(1.0, m * phi) * u,
        Complex64::from_polar(1.0, (m + 1.0) * phi) * w,
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledWavefunction {
    pub cfg: RingConfig,
    pub e: f64,
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
}

impl SampledWavefunction {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,u,w\n");
        for i in 0..self.r.len() {
            s.push_str(&format!("{:e},{:e},{:e}\n", self.r[i], self.u[i], self.w[i]));
        }
        s
    }
}

/// `n_points` uniform radii on `[0, min(r_tail, 3)]`, with `r_i` and 1
/// added when not already grid points.
pub fn sample(sol: &RadialSolution, n_points: usize) -> Result<SampledWavefunction> {
    if n_points < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "at least {MIN_SAMPLES} sample points are required, got {n_points}"
        )));
    }
    let r_max = sol.r_tail.min(SAMPLE_RADIUS);
    let step = r_max / (n_points - 1) as f64;
    let mut r: Vec<f64> = (0..n_points)
        .map(|i| if i + 1 == n_points { r_max } else { step * i as f64 })
        .collect();
    r.push(sol.cfg.r_i);
    if r_max >= 1.0 {
        r.push(1.0);
    }
    r.sort_by(f64::total_cmp);
    r.dedup();
    let k = sol.wavenumbers()?;
    let mut u = Vec::with_capacity(r.len());
    let mut w = Vec::with_capacity(r.len());
    for &x in &r {
        let (a, b) = sol.raw(&k, x)?;
        u.push(sol.norm * a);
        w.push(sol.norm * b);
    }
    Ok(SampledWavefunction {
        cfg: sol.cfg,
        e: sol.e,
        r,
        u,
        w,
    })
}

/// Number of strict sign changes in a sequence, ignoring exact zeros.
pub fn sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut n = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            n += 1;
        }
        last = v;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{find_levels, SpectrumOptions};

    fn root(m: i32, v: f64, beta: f64, r_i: f64, index: usize) -> (RingConfig, f64) {
        let cfg = RingConfig::new(m, v, beta, r_i).unwrap();
        let e = find_levels(&cfg, &SpectrumOptions::default()).unwrap()[index].e;
        (cfg, e)
    }

    #[test]
    fn origin_vanishes_for_positive_m() {
        let (cfg, e) = root(1, 25.0, 1.0, 0.2, 1);
        let sol = normalize(&build_solution(&cfg, e).unwrap()).unwrap();
        assert_eq!(evaluate(&sol, 0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn continuity_and_norm() {
        let (cfg, e) = root(0, 25.0, 5.0, 0.2, 0);
        let sol = normalize(&build_solution(&cfg, e).unwrap()).unwrap();
        assert!(continuity_residuals(&sol).unwrap().max <= 1e-8);
        let n = norm_integral(&sol).unwrap();
        assert!((n.total() - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn off_root_breaks_continuity() {
        let (cfg, e) = root(0, 25.0, 5.0, 0.2, 0);
        let sol = build_solution(&cfg, e + 1e-3).unwrap();
        assert!(continuity_residuals(&sol).unwrap().max >= 1e-5);
    }

    #[test]
    fn beta_zero_sector_is_pure() {
        let (cfg, e) = root(0, 25.0, 0.0, 0.2, 0);
        let sol = normalize(&build_solution(&cfg, e).unwrap()).unwrap();
        let rep = continuity_residuals(&sol).unwrap();
        assert_eq!(
            [rep.residuals[2], rep.residuals[3], rep.residuals[6], rep.residuals[7]],
            [0.0; 4]
        );
        for r in [0.1, 0.5, 1.5] {
            assert_eq!(evaluate(&sol, r).unwrap().1, 0.0);
        }
    }

    #[test]
    fn spinor_phases() {
        let (cfg, e) = root(1, 25.0, 1.0, 0.2, 0);
        let sol = normalize(&build_solution(&cfg, e).unwrap()).unwrap();
        let (u, w) = evaluate(&sol, 0.5).unwrap();
        let s0 = spinor(&sol, 0.5, 0.0).unwrap();
        assert_eq!(s0, [Complex64::new(u, 0.0), Complex64::new(w, 0.0)]);
        let s = spinor(&sol, 0.5, 2.0 * PI).unwrap();
        assert!((s[0] - s0[0]).norm() < 1e-14 && (s[1] - s0[1]).norm() < 1e-14);
        let t = spinor(&sol, 0.5, 1.234).unwrap();
        assert!((t[0].norm() - u.abs()).abs() < 1e-15);
    }

    #[test]
    fn sample_grid_contains_interfaces() {
        let (cfg, e) = root(1, 25.0, 1.0, 0.2, 1);
        let sol = normalize(&build_solution(&cfg, e).unwrap()).unwrap();
        let s = sample(&sol, 64).unwrap();
        assert!(s.r.contains(&0.2) && s.r.contains(&1.0));
        assert!(s.r.windows(2).all(|w| w[0] < w[1]));
        assert!(sample(&sol, 2).is_err());
    }

    #[test]
    fn sign_change_counter() {
        assert_eq!(sign_changes(&[1.0, 0.0, -1.0, -2.0, 3.0]), 2);
        assert_eq!(sign_changes(&[]), 0);
    }

    #[test]
    fn norm_tolerance_is_scale_free() {
        // Raw density integrates to ~7e-9 here.
        let (cfg, e) = root(0, 98.58741557693062, 0.0, 0.5734075332308972, 0);
        let raw = build_solution(&cfg, e).unwrap();
        let scaled = RadialSolution {
            norm: 1e6,
            ..raw.clone()
        };
        let (a, b) = (norm_integral(&raw).unwrap(), norm_integral(&scaled).unwrap());
        assert!(a.error <= 1e-11 * a.total(), "{a:?}");
        assert!((b.total() / a.total() / 1e12 - 1.0).abs() <= 1e-11);
    }

    #[test]
    fn small_well_wavenumber_stays_continuous() {
        // k ≈ −0.16 in the well: Y-type columns dominate both paired members.
        let (cfg, e) = root(3, 57.605243890784806, -6.8875281718977845, 0.15, 0);
        let sol = normalize(&build_solution(&cfg, e).unwrap()).unwrap();
        assert!(continuity_residuals(&sol).unwrap().max <= 1e-9);
    }

    #[test]
    fn near_threshold_state_normalises() {
        // κ ≈ 2.4e-4: the tail oscillates across ~10^5 units of barrier.
        let (cfg, e) = root(3, 10.0, -1.5567185498595917, 0.15, 0);
        let sol = normalize(&build_solution(&cfg, e).unwrap()).unwrap();
        assert!(sol.r_tail > 1e5);
        let n = norm_integral(&sol).unwrap();
        assert!((n.total() - 1.0).abs() <= 1e-8 && n.error <= 1e-10, "{n:?}");
        assert!(n.barrier > 0.999);
    }
}

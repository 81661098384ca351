//! Bound-state energies by scanning the secular function over the window.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matching::{secular_det, DetValue};
use crate::model::{RingConfig, EPS_THRESHOLD};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyWindow {
    pub e_min: f64,
    pub e_max: f64,
}

impl EnergyWindow {
    pub fn is_empty(&self) -> bool {
        !(self.e_min < self.e_max)
    }

    pub fn contains(&self, e: f64) -> bool {
        e >= self.e_min && e <= self.e_max
    }
}

/// `(−β²/4 + ε, v − β²/4 − ε)` with `ε = 1e−9`.
pub fn energy_window(cfg: &RingConfig) -> EnergyWindow {
    let shift = cfg.rashba_shift();
    EnergyWindow {
        e_min: -shift + EPS_THRESHOLD,
        e_max: cfg.v - shift - EPS_THRESHOLD,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub e: f64,
    pub index: usize,
    pub bracket: (f64, f64),
    /// `log|det|` at the root minus the mean over the scan bracket ends; a
    /// genuine root sits many units below its neighbourhood. Floored at
    /// `-MAX_LOG_GAP` when the determinant evaluates to exactly zero.
    pub residual_logdet_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOptions {
    pub grid_points: usize,
    /// Upper bound on the reported bracket width. Roots are always refined
    /// to f64 resolution: near the barrier threshold `κ` is so sensitive to
    /// `e` that a coarser root visibly breaks the wavefunction's continuity.
    pub tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            grid_points: 2000,
            tol: 1e-10,
        }
    }
}

impl SpectrumOptions {
    pub fn validate(&self) -> crate::Result<()> {
        if self.grid_points < 2 {
            return Err(crate::Error::InvalidParameter(format!(
                "grid_points must be at least 2, got {}",
                self.grid_points
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(crate::Error::InvalidParameter(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Gaps between consecutive sign changes longer than this multiple of the
/// median are rescanned.
const RESCAN_FACTOR: f64 = 10.0;
const RESCAN_DENSITY: usize = 10;

#[derive(Debug, Clone, Copy)]
struct Sample {
    e: f64,
    det: DetValue,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
        .collect()
}

fn scan(cfg: &RingConfig, es: &[f64]) -> Result<Vec<Sample>> {
    es.par_iter()
        .map(|&e| secular_det(cfg, e).map(|det| Sample { e, det }))
        .collect()
}

fn brackets(samples: &[Sample]) -> Vec<(Sample, Sample)> {
    samples
        .windows(2)
        .filter(|w| w[0].det.sign * w[1].det.sign < 0)
        .map(|w| (w[0], w[1]))
        .collect()
}

/// Every sign change of the secular function in the window.
pub fn find_levels(cfg: &RingConfig, opts: &SpectrumOptions) -> Result<Vec<EnergyLevel>> {
    cfg.validate()?;
    opts.validate()?;
    let window = energy_window(cfg);
    if window.is_empty() || cfg.v <= 2.0 * EPS_THRESHOLD {
        return Ok(Vec::new());
    }

    let grid = linspace(window.e_min, window.e_max, opts.grid_points);
    let samples = scan(cfg, &grid)?;
    let mut found = brackets(&samples);

    // Cells of the coarse grid inside wide gaps, subdivided in place so the
    // sign-change set only ever grows.
    let mut cells: Vec<usize> = Vec::new();
    for (lo, hi) in wide_gaps(&window, &found) {
        let i0 = grid.partition_point(|&e| e < lo).saturating_sub(1);
        let i1 = grid.partition_point(|&e| e <= hi).min(grid.len() - 1);
        cells.extend((i0..i1).filter(|&i| samples[i].det.sign * samples[i + 1].det.sign >= 0));
    }
    cells.sort_unstable();
    cells.dedup();
    let interior: Vec<f64> = cells
        .iter()
        .flat_map(|&i| {
            let pts = linspace(samples[i].e, samples[i + 1].e, RESCAN_DENSITY + 1);
            pts[1..RESCAN_DENSITY].to_vec()
        })
        .collect();
    let fine = scan(cfg, &interior)?;
    for (n, &i) in cells.iter().enumerate() {
        let mut run = vec![samples[i]];
        run.extend_from_slice(&fine[n * (RESCAN_DENSITY - 1)..(n + 1) * (RESCAN_DENSITY - 1)]);
        run.push(samples[i + 1]);
        found.extend(brackets(&run));
    }
    found.sort_by(|x, y| x.0.e.total_cmp(&y.0.e));

    // (root, bracket, log-det gap)
    let refined: Vec<Result<_>> = found
        .par_iter()
        .map(|(a, b)| {
            let reference = 0.5 * (a.det.log_magnitude + b.det.log_magnitude);
            let (root, bracket) = refine(cfg, *a, *b)?;
            let at = secular_det(cfg, root)?;
            Ok((root, bracket, (at.log_magnitude - reference).max(-MAX_LOG_GAP)))
        })
        .collect();

    let mut levels = Vec::with_capacity(refined.len());
    for (index, r) in refined.into_iter().enumerate() {
        let (e, bracket, gap) = r?;
        levels.push(EnergyLevel {
            e,
            index,
            bracket,
            residual_logdet_gap: gap,
        });
    }
    Ok(levels)
}

/// Intervals between consecutive sign changes (and the window edges) that
/// exceed `RESCAN_FACTOR` × the median such interval.
fn wide_gaps(window: &EnergyWindow, found: &[(Sample, Sample)]) -> Vec<(f64, f64)> {
    let mut marks = vec![window.e_min];
    marks.extend(found.iter().map(|(a, b)| 0.5 * (a.e + b.e)));
    marks.push(window.e_max);
    let gaps: Vec<(f64, f64)> = marks.windows(2).map(|w| (w[0], w[1])).collect();
    let mut widths: Vec<f64> = gaps.iter().map(|g| g.1 - g.0).collect();
    widths.sort_by(f64::total_cmp);
    let median = widths[widths.len() / 2];
    gaps.into_iter()
        .filter(|g| g.1 - g.0 > RESCAN_FACTOR * median)
        .collect()
}

pub const MAX_LOG_GAP: f64 = 700.0;

/// Signed secular value rescaled around `reference`, finite everywhere.
fn scaled(d: &DetValue, reference: f64) -> f64 {
    d.sign as f64 * (d.log_magnitude - reference).clamp(-MAX_LOG_GAP, MAX_LOG_GAP).exp()
}

/// Brent's method on the rescaled secular function, keeping a sign-changing
/// bracket throughout, down to a bracket of a few ulps.
fn refine(cfg: &RingConfig, lo: Sample, hi: Sample) -> Result<(f64, (f64, f64))> {
    let reference = 0.5 * (lo.det.log_magnitude + hi.det.log_magnitude);
    let f = |e: f64| secular_det(cfg, e).map(|d| scaled(&d, reference));

    let (mut a, mut fa) = (lo.e, scaled(&lo.det, reference));
    let (mut b, mut fb) = (hi.e, scaled(&hi.det, reference));
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..400 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let half = 0.5 * (c - b);
        let eps = 2.0 * f64::EPSILON * b.abs();
        if half.abs() <= eps || fb == 0.0 {
            break;
        }
        if e.abs() >= eps && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * half * q - (eps * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > eps { d } else { eps.copysign(half) };
        fb = f(b)?;
    }
    if fb == 0.0 {
        return Ok((b, (b, b)));
    }
    // Bisect the last few ulps down to adjacent floats.
    let ((mut x, mut fx), (mut y, mut fy)) = if b < c { ((b, fb), (c, fc)) } else { ((c, fc), (b, fb)) };
    loop {
        let mid = 0.5 * (x + y);
        if mid <= x || mid >= y {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid, (mid, mid)));
        }
        if fm.signum() == fx.signum() {
            (x, fx) = (mid, fm);
        } else {
            (y, fy) = (mid, fm);
        }
    }
    let root = if fx.abs() <= fy.abs() { x } else { y };
    Ok((root, (x, y)))
}

pub fn level_count(cfg: &RingConfig) -> Result<usize> {
    Ok(find_levels(cfg, &SpectrumOptions::default())?.len())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub original: Vec<f64>,
    pub mirrored: Vec<f64>,
    pub count_match: bool,
    pub max_abs_diff: f64,
}

/// Compares the spectrum of `(m, β)` with that of `(−(m+1), −β)`.
pub fn spectrum_symmetry_check(cfg: &RingConfig, opts: &SpectrumOptions) -> Result<SymmetryReport> {
    let a: Vec<f64> = find_levels(cfg, opts)?.iter().map(|l| l.e).collect();
    let b: Vec<f64> = find_levels(&cfg.mirrored(), opts)?.iter().map(|l| l.e).collect();
    let count_match = a.len() == b.len();
    let max_abs_diff = if count_match {
        a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(SymmetryReport {
        original: a,
        mirrored: b,
        count_match,
        max_abs_diff,
    })
}

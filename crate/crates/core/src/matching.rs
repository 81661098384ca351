//! The 8 × 8 continuity system `M X = 0` and its determinant.
//!
//! Rows: `u, u', w, w'` at `r_i`, then the same at `r = 1`.
//! Columns: `c_1, d_1, c_21, d_21, c_22, d_22, c_3, d_3`.
//! Region-2 columns enter with a minus sign at `r_i` and region-3 columns
//! with a minus sign at `1`, so each row reads "inside minus outside".

use nalgebra::{DMatrix, SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::bessel::Family;
use crate::error::{Error, Result};
use crate::model::{
    basis_region1, basis_region3, inner_wavenumbers, outer_wavenumbers, well_cylinder, BasisEval, RingConfig,
    EPS_THRESHOLD,
};

pub type Matrix8 = SMatrix<f64, 8, 8>;
pub type Vector8 = SVector<f64, 8>;

/// Column index of each coefficient in `X`.
pub const C1: usize = 0;
pub const D1: usize = 1;
pub const C21: usize = 2;
pub const D21: usize = 3;
pub const C22: usize = 4;
pub const D22: usize = 5;
pub const C3: usize = 6;
pub const D3: usize = 7;

/// How the four region-2 columns are parametrised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColumnLayout {
    /// The `(f_21, g_21, f_22, g_22)` combinations.
    Paired,
    /// The single-wavenumber solutions `(C_m(k⁻r), C_{m+1}(k⁻r))` and
    /// `(C_m(k⁺r), −C_{m+1}(k⁺r))` for `C = J, Y`. The `Paired` columns are
    /// half-sums and half-differences of these, so
    /// `det M_paired = det M_split / 4`.
    Split,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchMatrix {
    pub entries: Matrix8,
    pub layout: ColumnLayout,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetValue {
    pub sign: i8,
    pub log_magnitude: f64,
}

impl DetValue {
    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log_magnitude.exp()
    }
}

/// `(C_m, C_m', C_{m+1}, C_{m+1}')` at one radius for one wavenumber.
type Channel = [f64; 4];

fn channel(family: Family, m: i32, k: f64, r: f64) -> Result<Channel> {
    let (a, da) = well_cylinder(family, m, k, r)?;
    let (b, db) = well_cylinder(family, m + 1, k, r)?;
    Ok([a, da, b, db])
}

/// Region-2 columns in row order `(u, u', w, w')` at radius `r`.
fn region2_columns(cfg: &RingConfig, e: f64, r: f64, layout: ColumnLayout) -> Result<[[f64; 4]; 4]> {
    let (kp, km) = inner_wavenumbers(e, cfg.beta)?.real();
    let mut cols = [[0.0; 4]; 4];
    for (slot, family) in [Family::J, Family::Y].into_iter().enumerate() {
        let lo = channel(family, cfg.m, km, r)?;
        let hi = channel(family, cfg.m, kp, r)?;
        let p = lo;
        let q = [hi[0], hi[1], -hi[2], -hi[3]];
        let (c, d) = match layout {
            ColumnLayout::Split => (p, q),
            ColumnLayout::Paired => {
                let mut c = [0.0; 4];
                let mut d = [0.0; 4];
                for i in 0..4 {
                    c[i] = 0.5 * (p[i] + q[i]);
                    d[i] = 0.5 * (p[i] - q[i]);
                }
                (c, d)
            }
        };
        cols[2 * slot] = c;
        cols[2 * slot + 1] = d;
    }
    Ok(cols)
}

/// Barrier columns `(c, d)` in row order `(u, u', w, w')`.
///
/// Region 1 uses `u = c f + d g`, `w = −c G + d F`; region 3 uses
/// `u = c f + d g`, `w = c G − d F`, where capitals are order `m + 1`.
fn barrier_columns(lo: &BasisEval, hi: &BasisEval, inner: bool) -> [[f64; 4]; 2] {
    let s = if inner { -1.0 } else { 1.0 };
    [[lo.f, lo.df, s * hi.g, s * hi.dg], [lo.g, lo.dg, -s * hi.f, -s * hi.df]]
}

fn assemble(cfg: &RingConfig, e: f64, layout: ColumnLayout) -> Result<MatchMatrix> {
    cfg.validate()?;
    let ko = outer_wavenumbers(e, cfg.v, cfg.beta)?;
    inner_wavenumbers(e, cfg.beta)?;
    let m = cfg.m;
    let r_i = cfg.r_i;

    let b1 = barrier_columns(&basis_region1(m, r_i, &ko)?, &basis_region1(m + 1, r_i, &ko)?, true);
    let b3 = barrier_columns(&basis_region3(m, 1.0, &ko)?, &basis_region3(m + 1, 1.0, &ko)?, false);
    let w_in = region2_columns(cfg, e, r_i, layout)?;
    let w_out = region2_columns(cfg, e, 1.0, layout)?;

    let mut a = Matrix8::zeros();
    for row in 0..4 {
        a[(row, C1)] = b1[0][row];
        a[(row, D1)] = b1[1][row];
        a[(row + 4, C3)] = -b3[0][row];
        a[(row + 4, D3)] = -b3[1][row];
        for col in 0..4 {
            a[(row, C21 + col)] = -w_in[col][row];
            a[(row + 4, C21 + col)] = w_out[col][row];
        }
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("matching matrix entry"));
    }
    Ok(MatchMatrix { entries: a, layout })
}

/// `M(m, e, v, β)` with the paired region-2 columns.
pub fn assemble_matrix(cfg: &RingConfig, e: f64) -> Result<MatchMatrix> {
    assemble(cfg, e, ColumnLayout::Paired)
}

/// The same system with split region-2 columns; free of the cancellation
/// between `f_2` and `g_2` columns when one well wavenumber is small.
pub fn assemble_split_matrix(cfg: &RingConfig, e: f64) -> Result<MatchMatrix> {
    assemble(cfg, e, ColumnLayout::Split)
}

fn pow2_scale(max: f64) -> (f64, i32) {
    if max == 0.0 || !max.is_finite() {
        return (1.0, 0);
    }
    let exp = -(max.log2().round() as i32);
    (2f64.powi(exp), exp)
}

/// Row then column scaling by powers of two to unit max magnitude.
/// Returns the scaled matrix, the row and column scales, and
/// `Σ log2` of the scales applied.
fn equilibrate(a: &Matrix8) -> (Matrix8, [f64; 8], [f64; 8], i64) {
    let mut b = *a;
    let mut rows = [1.0; 8];
    let mut cols = [1.0; 8];
    let mut applied: i64 = 0;
    for i in 0..8 {
        let max = b.row(i).iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let (s, e) = pow2_scale(max);
        rows[i] = s;
        applied += e as i64;
        for j in 0..8 {
            b[(i, j)] *= s;
        }
    }
    for j in 0..8 {
        let max = b.column(j).iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let (s, e) = pow2_scale(max);
        cols[j] = s;
        applied += e as i64;
        for i in 0..8 {
            b[(i, j)] *= s;
        }
    }
    (b, rows, cols, applied)
}

/// Sign and natural log of `|det|` after equilibration, by partial-pivot
/// elimination.
pub fn log_det(mat: &MatchMatrix) -> DetValue {
    log_det_of(&mat.entries)
}

fn log_det_of(a: &Matrix8) -> DetValue {
    let (mut b, _, _, applied) = equilibrate(a);
    let mut sign: i8 = 1;
    let mut log = -(applied as f64) * std::f64::consts::LN_2;
    for k in 0..8 {
        let (mut piv, mut best) = (k, b[(k, k)].abs());
        for i in k + 1..8 {
            if b[(i, k)].abs() > best {
                piv = i;
                best = b[(i, k)].abs();
            }
        }
        if best == 0.0 {
            return DetValue {
                sign: 0,
                log_magnitude: f64::NEG_INFINITY,
            };
        }
        if piv != k {
            b.swap_rows(piv, k);
            sign = -sign;
        }
        let p = b[(k, k)];
        if p < 0.0 {
            sign = -sign;
        }
        log += p.abs().ln();
        for i in k + 1..8 {
            let f = b[(i, k)] / p;
            if f != 0.0 {
                for j in k + 1..8 {
                    b[(i, j)] -= f * b[(k, j)];
                }
            }
        }
    }
    DetValue {
        sign,
        log_magnitude: log,
    }
}

/// The secular function whose sign changes are the bound states.
///
/// For `β ≠ 0` one well wavenumber is `k = e / (k_big)`, and the `Y` column
/// of that wavenumber makes `det M` behave like `1/k` near `e = 0`. Both
/// the sign and the magnitude are regularised by the factor `e`, which
/// removes this pole without introducing zeros elsewhere.
pub fn secular_det(cfg: &RingConfig, e: f64) -> Result<DetValue> {
    let e_eval = if e == 0.0 && cfg.beta != 0.0 {
        EPS_THRESHOLD * 1e-3
    } else {
        e
    };
    let mat = assemble_split_matrix(cfg, e_eval)?;
    let mut d = log_det(&mat);
    d.log_magnitude -= 4f64.ln();
    if cfg.beta != 0.0 {
        d.log_magnitude += e_eval.abs().ln();
        if e_eval < 0.0 {
            d.sign = -d.sign;
        }
    }
    Ok(d)
}

/// Singular values of the equilibrated matrix, descending.
pub fn singular_values(mat: &MatchMatrix) -> Vec<f64> {
    let (b, _, _, _) = equilibrate(&mat.entries);
    let mut s: Vec<f64> = b.singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Rank deficiency is declared when a second singular value of the
/// vanishing block falls below this fraction of the largest.
const DEGENERACY_RATIO: f64 = 1e-8;

/// Groups of rows and columns that are coupled through nonzero entries.
fn blocks(a: &Matrix8) -> Vec<(Vec<usize>, Vec<usize>)> {
    // Union-find over 8 row nodes (0..8) and 8 column nodes (8..16).
    let mut parent: Vec<usize> = (0..16).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for i in 0..8 {
        for j in 0..8 {
            if a[(i, j)] != 0.0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, 8 + j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for node in 0..16 {
        let root = find(&mut parent, node);
        let idx = match groups.iter().position(|g| g.0 == root) {
            Some(i) => i,
            None => {
                groups.push((root, Vec::new(), Vec::new()));
                groups.len() - 1
            }
        };
        if node < 8 {
            groups[idx].1.push(node);
        } else {
            groups[idx].2.push(node - 8);
        }
    }
    groups.into_iter().map(|(_, r, c)| (r, c)).collect()
}

/// Unit null vector of `M`, expressed in `Paired` coefficients
/// `(c_1, d_1, c_21, d_21, c_22, d_22, c_3, d_3)` whatever the layout of
/// `mat`, with its largest-magnitude component positive.
///
/// Structurally decoupled blocks (all of `M` at `β = 0` splits into the two
/// spin sectors) are decomposed separately, so the coefficients of the
/// non-vanishing block are exact zeros.
pub fn null_vector(mat: &MatchMatrix) -> Result<Vector8> {
    null_vector_with_well_split(mat).map(|(x, _)| x)
}

/// [`null_vector`] together with the well coefficients on the split basis,
/// `(α_J, β_J, α_Y, β_Y)` with `α = (c + d)/2`, `β = (c − d)/2`, on the same
/// scale. From a `Split` matrix they come straight out of the decomposition,
/// so a nearly cancelling `c − d` keeps its full relative accuracy.
pub fn null_vector_with_well_split(mat: &MatchMatrix) -> Result<(Vector8, [f64; 4])> {
    let (b, _, cols, _) = equilibrate(&mat.entries);
    let sigma_max = b.singular_values().max();
    if !(sigma_max > 0.0) {
        return Err(Error::RankDeficient(8));
    }

    let mut best: Option<(f64, Vector8)> = None;
    let mut near_zero = 0usize;
    for (rows, bcols) in blocks(&b) {
        if bcols.is_empty() {
            continue;
        }
        if rows.len() < bcols.len() {
            // Under-determined block: a free column direction.
            near_zero += bcols.len() - rows.len();
        }
        let mut sub = DMatrix::<f64>::zeros(rows.len().max(bcols.len()), bcols.len());
        for (ii, &i) in rows.iter().enumerate() {
            for (jj, &j) in bcols.iter().enumerate() {
                sub[(ii, jj)] = b[(i, j)];
            }
        }
        let svd = sub.svd(false, true);
        let v_t = svd.v_t.as_ref().expect("right singular vectors requested");
        let sv = &svd.singular_values;
        let mut order: Vec<usize> = (0..sv.len()).collect();
        order.sort_by(|&x, &y| sv[x].total_cmp(&sv[y]));
        let smallest = order[0];
        near_zero += order.iter().filter(|&&k| sv[k] <= DEGENERACY_RATIO * sigma_max).count();
        let mut x = Vector8::zeros();
        for (jj, &j) in bcols.iter().enumerate() {
            x[j] = v_t[(smallest, jj)];
        }
        if best.as_ref().is_none_or(|(s, _)| sv[smallest] < *s) {
            best = Some((sv[smallest], x));
        }
    }
    if near_zero > 1 {
        return Err(Error::RankDeficient(near_zero));
    }
    let (_, mut x) = best.ok_or(Error::RankDeficient(0))?;
    for j in 0..8 {
        x[j] *= cols[j];
    }
    let mut split = [0.0; 4];
    for (slot, (c, d)) in [(C21, D21), (C22, D22)].into_iter().enumerate() {
        let (p, q) = (x[c], x[d]);
        if mat.layout == ColumnLayout::Split {
            split[2 * slot] = p;
            split[2 * slot + 1] = q;
            x[c] = p + q;
            x[d] = p - q;
        } else {
            split[2 * slot] = 0.5 * (p + q);
            split[2 * slot + 1] = 0.5 * (p - q);
        }
    }
    let norm = x.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::NonFinite("null vector"));
    }
    let scale = if x[x.iamax()] < 0.0 {
        -norm.recip()
    } else {
        norm.recip()
    };
    x *= scale;
    split.iter_mut().for_each(|s| *s *= scale);
    Ok((x, split))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: i32, v: f64, beta: f64, r_i: f64) -> RingConfig {
        RingConfig::new(m, v, beta, r_i).unwrap()
    }

    #[test]
    fn zero_blocks_are_exact() {
        for layout in [ColumnLayout::Paired, ColumnLayout::Split] {
            let a = assemble(&cfg(1, 25.0, 1.0, 0.2), 7.3, layout).unwrap().entries;
            for row in 0..4 {
                assert_eq!(a[(row, C3)], 0.0);
                assert_eq!(a[(row, D3)], 0.0);
                assert_eq!(a[(row + 4, C1)], 0.0);
                assert_eq!(a[(row + 4, D1)], 0.0);
            }
        }
    }

    #[test]
    fn identity_and_diagonal() {
        let id = MatchMatrix {
            entries: Matrix8::identity(),
            layout: ColumnLayout::Paired,
        };
        assert_eq!(
            log_det(&id),
            DetValue {
                sign: 1,
                log_magnitude: 0.0
            }
        );
        let two = MatchMatrix {
            entries: Matrix8::identity() * 2.0,
            layout: ColumnLayout::Paired,
        };
        let d = log_det(&two);
        assert_eq!(d.sign, 1);
        assert!((d.log_magnitude - 8.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_det_matches_direct_determinant() {
        let a = assemble_matrix(&cfg(0, 25.0, 1.3, 0.3), 10.3).unwrap();
        let direct = a.entries.determinant();
        let d = log_det(&a);
        assert!((d.value() - direct).abs() <= 1e-10 * direct.abs());
    }

    #[test]
    fn zero_row_gives_zero_sign() {
        let mut a = Matrix8::identity();
        a[(3, 3)] = 0.0;
        let m = MatchMatrix {
            entries: a,
            layout: ColumnLayout::Paired,
        };
        assert_eq!(log_det(&m).sign, 0);
    }

    #[test]
    fn split_layout_is_a_quarter() {
        let c = cfg(1, 100.0, -3.0, 0.4);
        let p = log_det(&assemble_matrix(&c, 30.0).unwrap());
        let s = log_det(&assemble_split_matrix(&c, 30.0).unwrap());
        assert_eq!(p.sign, s.sign);
        assert!((s.log_magnitude - 4f64.ln() - p.log_magnitude).abs() < 1e-11);
    }

    #[test]
    fn column_scaling_shifts_log() {
        let mut a = assemble_matrix(&cfg(0, 25.0, 1.0, 0.2), 5.0).unwrap();
        let before = log_det(&a);
        for i in 0..8 {
            a.entries[(i, C1)] *= 3.0;
        }
        let after = log_det(&a);
        assert_eq!(before.sign, after.sign);
        assert!((after.log_magnitude - before.log_magnitude - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn sign_change_near_coupled_root() {
        let c = cfg(1, 25.0, 1.0, 0.2);
        let lo = log_det(&assemble_matrix(&c, 17.8).unwrap());
        let hi = log_det(&assemble_matrix(&c, 17.95).unwrap());
        assert_ne!(lo.sign, hi.sign);
        assert_ne!(
            secular_det(&c, 17.8).unwrap().sign,
            secular_det(&c, 17.95).unwrap().sign
        );
    }

    #[test]
    fn secular_sign_is_continuous_through_zero_energy() {
        for m in [-3, -1, 0, 1, 4] {
            let c = cfg(m, 25.0, 5.0, 0.5);
            let a = secular_det(&c, -1e-6).unwrap();
            let b = secular_det(&c, 1e-6).unwrap();
            assert_eq!(a.sign, b.sign, "m = {m}");
            assert!((a.log_magnitude - b.log_magnitude).abs() < 1e-3, "m = {m}");
        }
    }

    #[test]
    fn out_of_window_energy_rejected() {
        let c = cfg(0, 100.0, 10.0, 0.2);
        assert!(matches!(assemble_matrix(&c, 75.0), Err(Error::Threshold { .. })));
        assert!(matches!(assemble_matrix(&c, -25.0), Err(Error::Threshold { .. })));
    }

    #[test]
    fn beta_zero_decouples_into_two_blocks() {
        let a = assemble_matrix(&cfg(0, 25.0, 0.0, 0.2), 5.58).unwrap();
        let groups = blocks(&a.entries);
        assert_eq!(groups.len(), 2);
        for (rows, cols) in groups {
            assert_eq!(rows.len(), 4);
            assert_eq!(cols.len(), 4);
        }
    }

    #[test]
    fn null_vector_residual_and_sign() {
        let c = cfg(1, 25.0, 1.0, 0.2);
        let root = crate::spectrum::find_levels(&c, &Default::default()).unwrap()[1].e;
        let a = assemble_matrix(&c, root).unwrap();
        for mat in [a.clone(), assemble_split_matrix(&c, root).unwrap()] {
            let x = null_vector(&mat).unwrap();
            assert!((x.norm() - 1.0).abs() < 1e-14);
            assert!(x[x.iamax()] > 0.0);
            let res = (a.entries * x).norm();
            assert!(res <= 1e-8 * a.entries.norm(), "residual {res:e}");
        }
    }

    #[test]
    fn off_root_is_not_rank_deficient() {
        let mat = assemble_matrix(&cfg(0, 25.0, 1.0, 0.2), 7.0).unwrap();
        let s = singular_values(&mat);
        assert!(s[7] > 1e-6 * s[0]);
    }
}

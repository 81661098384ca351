//! Scalar annular well at zero coupling: one real Bessel order `n`, four
//! coefficients `(I_n, J_n, Y_n, K_n)`.

use nalgebra::Matrix4;
use num_complex::Complex64;
use rashba_ring::bessel::{bessel_deriv, bessel_eval, Family};

fn c(f: Family, n: i32, k: f64, r: f64) -> (f64, f64) {
    let k = Complex64::new(k, 0.0);
    let val = bessel_eval(f, n, k * r).unwrap().re;
    let der = bessel_deriv(f, n, k, r).unwrap().re;
    (val, der)
}

/// Rows `ψ, ψ'` at `r_i` then at 1; inner-minus-outer convention.
pub fn scalar_matrix(n: i32, v: f64, r_i: f64, e: f64) -> Matrix4<f64> {
    let kappa = (v - e).sqrt();
    let s = e.sqrt();
    let (i, di) = c(Family::I, n, kappa, r_i);
    let (ja, dja) = c(Family::J, n, s, r_i);
    let (ya, dya) = c(Family::Y, n, s, r_i);
    let (jb, djb) = c(Family::J, n, s, 1.0);
    let (yb, dyb) = c(Family::Y, n, s, 1.0);
    let (k, dk) = c(Family::K, n, kappa, 1.0);
    Matrix4::new(
        i, -ja, -ya, 0.0, //
        di, -dja, -dya, 0.0, //
        0.0, jb, yb, -k, //
        0.0, djb, dyb, -dk,
    )
}

pub fn scalar_det(n: i32, v: f64, r_i: f64, e: f64) -> f64 {
    scalar_matrix(n, v, r_i, e).determinant()
}

/// Bound levels in `(0, v)` by a uniform sign scan and bisection.
pub fn scalar_levels(n: i32, v: f64, r_i: f64) -> Vec<f64> {
    let points = 4000;
    let (lo, hi) = (1e-9, v - 1e-9);
    let grid: Vec<f64> = (0..=points)
        .map(|i| lo + (hi - lo) * i as f64 / points as f64)
        .collect();
    let f = |e: f64| scalar_det(n, v, r_i, e);
    let mut out = Vec::new();
    for w in grid.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (f(a), f(b));
        if fa == 0.0 || fa.signum() == fb.signum() {
            continue;
        }
        for _ in 0..100 {
            let mid = 0.5 * (a + b);
            let fm = f(mid);
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
            if b - a < 1e-13 {
                break;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

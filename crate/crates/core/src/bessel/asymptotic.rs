//! Large-argument (Hankel) expansions for orders 0 and 1, `Re z > 0`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// The four sums `Σ c^k a_k(ν) / z^k` for `c ∈ {1, -1, i, -i}`, truncated at
/// the smallest term of the divergent series.
struct Sums {
    plus: Complex64,
    alt: Complex64,
    pos_i: Complex64,
    neg_i: Complex64,
}

fn sums(nu: u32, z: Complex64) -> Sums {
    let mu = 4.0 * (nu as f64) * (nu as f64);
    let inv = 1.0 / z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut out = Sums {
        plus: term,
        alt: term,
        pos_i: term,
        neg_i: term,
    };
    let mut prev = f64::INFINITY;
    let mut ik = Complex64::new(1.0, 0.0);
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * inv * ((mu - odd * odd) / (8.0 * kf));
        let mag = next.norm();
        if mag >= prev {
            break;
        }
        prev = mag;
        term = next;
        ik *= I;
        out.plus += term;
        if k % 2 == 0 {
            out.alt += term;
        } else {
            out.alt -= term;
        }
        out.pos_i += ik * term;
        out.neg_i += ik.conj() * term;
        if mag == 0.0 || mag < 1e-18 * out.plus.norm() {
            break;
        }
    }
    out
}

/// `(J_ν(z), Y_ν(z))` for ν ∈ {0, 1}.
pub(crate) fn bessel_jy(nu: u32, z: Complex64) -> (Complex64, Complex64) {
    let s = sums(nu, z);
    let omega = z - (nu as f64) * FRAC_PI_2 - FRAC_PI_4;
    let pre = (2.0 / (PI * z)).sqrt();
    let h1 = pre * (I * omega).exp() * s.pos_i;
    let h2 = pre * (-I * omega).exp() * s.neg_i;
    let j = (h1 + h2) * 0.5;
    let y = (h1 - h2) * (-0.5 * I);
    (j, y)
}

pub(crate) fn bessel_k(nu: u32, z: Complex64) -> Complex64 {
    let s = sums(nu, z);
    (PI / (2.0 * z)).sqrt() * (-z).exp() * s.plus
}

pub(crate) fn bessel_i(nu: u32, z: Complex64) -> Complex64 {
    let s = sums(nu, z);
    let pre = 1.0 / (2.0 * PI * z).sqrt();
    let grow = pre * z.exp() * s.alt;
    if z.im == 0.0 {
        return Complex64::new(grow.re, 0.0);
    }
    // Exponentially small companion, sign fixed by the half-plane of z.
    let parity = if nu.is_multiple_of(2) { 1.0 } else { -1.0 };
    let side = if z.im > 0.0 { 1.0 } else { -1.0 };
    grow + side * parity * I * pre * (-z).exp() * s.plus
}

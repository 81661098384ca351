//! Ascending power series, evaluated in double-double precision.

use num_complex::Complex64;

use super::dd::{Cdd, Dd};

const MAX_TERMS: usize = 600;
const REL_STOP: f64 = 1e-34;

/// `J_n(z)` (`modified = false`) or `I_n(z)` (`modified = true`) for `n ≥ 0`,
/// returned in double-double together with the terms needed by the
/// logarithmic series.
struct Ascending {
    sum: Cdd,
    /// Σ t_k (ψ(k+1) + ψ(n+k+1)), same terms as `sum`.
    psi_sum: Cdd,
}

fn ascending(n: u32, z: Complex64, modified: bool, with_psi: bool) -> Ascending {
    let half = Cdd::from_c64(z * 0.5);
    let mut q = half * half;
    if !modified {
        q = -q;
    }
    // t0 = (z/2)^n / n!
    let mut t = Cdd::ONE;
    for j in 1..=n {
        t = (t * half).div_f64(j as f64);
    }
    // ψ(1) = -γ, ψ(n+1) = -γ + H_n
    let mut h_k = Dd::ZERO;
    let mut h_nk = Dd::ZERO;
    for j in 1..=n {
        h_nk = h_nk + Dd::ONE.div_f64(j as f64);
    }
    let two_gamma = Dd::EULER_GAMMA.mul_f64(2.0);

    let mut sum = t;
    let mut psi_sum = if with_psi {
        t.scale(h_k + h_nk - two_gamma)
    } else {
        Cdd::ZERO
    };
    let zmag_half = 0.5 * z.norm();
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        t = (t * q).div_f64(kf * (kf + n as f64));
        sum = sum + t;
        if with_psi {
            h_k = h_k + Dd::ONE.div_f64(kf);
            h_nk = h_nk + Dd::ONE.div_f64(kf + n as f64);
            psi_sum = psi_sum + t.scale(h_k + h_nk - two_gamma);
        }
        let tm = t.mag();
        if kf > zmag_half && (tm == 0.0 || tm <= REL_STOP * sum.mag().max(psi_sum.mag())) {
            break;
        }
    }
    Ascending { sum, psi_sum }
}

pub(crate) fn bessel_j(n: u32, z: Complex64) -> Complex64 {
    ascending(n, z, false, false).sum.to_c64()
}

pub(crate) fn bessel_i(n: u32, z: Complex64) -> Complex64 {
    ascending(n, z, true, false).sum.to_c64()
}

/// Finite part `(z/2)^{-n} Σ_{k<n} (n-k-1)!/k! (s z²/4)^k` with `s = ±1`.
fn finite_part(n: u32, z: Complex64, sign: f64) -> Cdd {
    if n == 0 {
        return Cdd::ZERO;
    }
    let half = Cdd::from_c64(z * 0.5);
    let mut q = half * half;
    if sign < 0.0 {
        q = -q;
    }
    let inv_half_pow = half.recip().powi(n);
    // u_0 = (n-1)!
    let mut fact = Dd::ONE;
    for j in 1..n {
        fact = fact.mul_f64(j as f64);
    }
    let mut u = Cdd { re: fact, im: Dd::ZERO };
    let mut sum = u;
    for k in 0..(n - 1) {
        let kf = k as f64;
        u = (u * q).div_f64((kf + 1.0) * (n as f64 - kf - 1.0));
        sum = sum + u;
    }
    sum * inv_half_pow
}

pub(crate) fn bessel_y(n: u32, z: Complex64) -> Complex64 {
    let a = ascending(n, z, false, true);
    let log_half = Cdd::ln_of(z)
        - Cdd {
            re: Dd::LN_2,
            im: Dd::ZERO,
        };
    let fin = finite_part(n, z, 1.0);
    let val = (log_half * a.sum).scale(Dd::FRAC_2_PI) - (fin + a.psi_sum).scale(Dd::FRAC_1_PI);
    val.to_c64()
}

pub(crate) fn bessel_k(n: u32, z: Complex64) -> Complex64 {
    let a = ascending(n, z, true, true);
    let log_half = Cdd::ln_of(z)
        - Cdd {
            re: Dd::LN_2,
            im: Dd::ZERO,
        };
    let fin = finite_part(n, z, -1.0);
    let odd = n % 2 == 1;
    // (-1)^{n+1} ln(z/2) I_n
    let mut log_term = log_half * a.sum;
    if !odd {
        log_term = -log_term;
    }
    // (-1)^n ½ (z/2)^n Σ ψ-terms
    let mut psi_term = a.psi_sum;
    if odd {
        psi_term = -psi_term;
    }
    let half = Dd::new(0.5);
    (fin.scale(half) + log_term + psi_term.scale(half)).to_c64()
}

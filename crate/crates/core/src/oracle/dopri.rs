//! Dormand–Prince 5(4) with error-per-step control.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub const N: usize = 8;
pub type State = [f64; N];

#[derive(Debug, Clone, Copy)]
pub struct Controls {
    pub tol: f64,
    pub max_steps: usize,
}

/// Per-component error scale: `tol` times the largest magnitude within the
/// component's four-entry solution block, so that growing and decaying
/// solutions are each controlled relative to themselves.
fn scales(y: &State, z: &State, tol: f64) -> State {
    let mut s = [0.0; N];
    for block in 0..N / 4 {
        let mut big: f64 = 0.0;
        for i in 4 * block..4 * block + 4 {
            big = big.max(y[i].abs()).max(z[i].abs());
        }
        s[4 * block..4 * block + 4].fill(tol * big.max(f64::MIN_POSITIVE));
    }
    s
}

/// Integrates `y' = f(r, y)` from `r0` to `r1` (either direction), calling
/// `after_step` on every accepted state.
pub fn integrate<F, G>(
    f: F,
    mut after_step: G,
    r0: f64,
    r1: f64,
    y0: State,
    h0: f64,
    ctl: &Controls,
) -> Result<(State, usize)>
where
    F: Fn(f64, &State) -> State,
    G: FnMut(&mut State),
{
    let dir = (r1 - r0).signum();
    let mut r = r0;
    let mut y = y0;
    let mut h = h0.abs().min((r1 - r0).abs()) * dir;
    let mut k = [[0.0; N]; 7];
    k[0] = f(r, &y);
    let mut steps = 0usize;
    while (r1 - r) * dir > 0.0 {
        if steps >= ctl.max_steps {
            return Err(Error::Stiffness(ctl.max_steps));
        }
        steps += 1;
        let last = (r + h - r1) * dir >= 0.0;
        if last {
            h = r1 - r;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[s] = f(r + C[s] * h, &ys);
        }
        let mut y5 = y;
        let mut err = [0.0; N];
        for i in 0..N {
            let mut d5 = 0.0;
            let mut d4 = 0.0;
            for s in 0..7 {
                d5 += B5[s] * k[s][i];
                d4 += B4[s] * k[s][i];
            }
            y5[i] += h * d5;
            err[i] = h * (d5 - d4);
        }
        let sc = scales(&y, &y5, ctl.tol);
        let ratio = err.iter().zip(&sc).map(|(e, s)| (e / s).abs()).fold(0.0f64, f64::max);
        if !ratio.is_finite() {
            return Err(Error::NonFinite("oracle integration"));
        }
        if ratio <= 1.0 {
            r = if last { r1 } else { r + h };
            y = y5;
            after_step(&mut y);
            k[0] = f(r, &y);
        }
        let grow = if ratio == 0.0 {
            5.0
        } else {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        };
        if !(last && ratio <= 1.0) {
            h *= grow;
        }
        if h.abs() < 1e-14 * r.abs().max(1e-300) {
            return Err(Error::Stiffness(steps));
        }
    }
    Ok((y, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let f = |_r: f64, y: &State| {
            let mut d = [0.0; N];
            d[0] = y[1];
            d[1] = -y[0];
            d[4] = y[5];
            d[5] = -y[4];
            d
        };
        let y0 = [1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let ctl = Controls {
            tol: 1e-12,
            max_steps: 100_000,
        };
        let (y, _) = integrate(f, |_| {}, 0.0, 2.0 * std::f64::consts::PI, y0, 0.1, &ctl).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-9 && y[1].abs() < 1e-9);
        assert!(y[4].abs() < 1e-9 && (y[5] - 1.0).abs() < 1e-9);
        let (back, _) = integrate(f, |_| {}, 2.0 * std::f64::consts::PI, 0.0, y, 0.1, &ctl).unwrap();
        assert!((back[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn step_cap_is_enforced() {
        let f = |_r: f64, y: &State| {
            let mut d = [0.0; N];
            d[0] = y[1];
            d[1] = -1e6 * y[0];
            d
        };
        let ctl = Controls {
            tol: 1e-12,
            max_steps: 50,
        };
        let y0 = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert!(matches!(
            integrate(f, |_| {}, 0.0, 10.0, y0, 0.1, &ctl),
            Err(Error::Stiffness(50))
        ));
    }
}

mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rashba_ring::bessel::{bessel_eval, Branch, Family, Kernel, SERIES_RADIUS};

use common::reference::BESSEL_REFERENCE;

fn eval(f: Family, n: i32, z: Complex64) -> Complex64 {
    bessel_eval(f, n, z).unwrap()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn matches_arbitrary_precision_reference() {
    let mut worst: f64 = 0.0;
    for &(fam, n, x, y, vr, vi) in BESSEL_REFERENCE {
        let got = eval(fam, n, Complex64::new(x, y));
        let want = Complex64::new(vr, vi);
        let rel = (got - want).norm() / want.norm();
        worst = worst.max(rel);
        assert!(rel <= 1e-12, "{fam:?}_{n}({x}+{y}i): {got} vs {want} (rel {rel:e})");
    }
    eprintln!("worst relative error vs reference: {worst:e}");
}

#[test]
fn spot_values_k0_j0() {
    let k0 = eval(Family::K, 0, re(1.0));
    let j0 = eval(Family::J, 0, re(1.0));
    assert!((k0.re - 0.421_024_438_240_708_3).abs() / 0.421 <= 1e-12);
    assert!((j0.re - 0.765_197_686_557_966_6).abs() / 0.765 <= 1e-12);
    assert_eq!(k0.im, 0.0);
    assert_eq!(j0.im, 0.0);
}

#[test]
fn wronskians_on_real_axis() {
    let mut x = 0.5;
    while x <= 40.0 {
        for n in 0..10 {
            let j = eval(Family::J, n, re(x)).re;
            let j1 = eval(Family::J, n + 1, re(x)).re;
            let y = eval(Family::Y, n, re(x)).re;
            let y1 = eval(Family::Y, n + 1, re(x)).re;
            let w = j * y1 - j1 * y;
            let want = -2.0 / (std::f64::consts::PI * x);
            assert!(((w - want) / want).abs() <= 1e-10, "JY n={n} x={x}: {w} vs {want}");

            let i = eval(Family::I, n, re(x)).re;
            let i1 = eval(Family::I, n + 1, re(x)).re;
            let k = eval(Family::K, n, re(x)).re;
            let k1 = eval(Family::K, n + 1, re(x)).re;
            let w = i * k1 + i1 * k;
            let want = 1.0 / x;
            assert!(((w - want) / want).abs() <= 1e-10, "IK n={n} x={x}: {w} vs {want}");
        }
        x += 0.37;
    }
}

#[test]
fn three_term_recurrence_residual() {
    for n in 1..=10 {
        for &r in &[0.7, 3.0, 9.5, 14.0, 16.0, 22.0, 30.0] {
            for &t in &[-1.3, -0.6, 0.0, 0.4, 1.1, 1.5] {
                let z = Complex64::from_polar(r, t);
                let ratio = z.inv() * (2.0 * n as f64);
                for fam in Family::ALL {
                    let lo = eval(fam, n - 1, z);
                    let mid = eval(fam, n, z);
                    let hi = eval(fam, n + 1, z);
                    let (lhs, rhs) = match fam {
                        Family::J | Family::Y => (lo + hi, ratio * mid),
                        Family::I => (lo - hi, ratio * mid),
                        Family::K => (lo - hi, -ratio * mid),
                    };
                    let scale = lo.norm().max(hi.norm()).max(rhs.norm());
                    let res = (lhs - rhs).norm() / scale;
                    assert!(res <= 1e-10, "{fam:?} n={n} z={z}: residual {res:e}");
                }
            }
        }
    }
}

#[test]
fn series_and_asymptotic_agree_on_seam() {
    let kernel = Kernel::default();
    let mut worst: f64 = 0.0;
    for n in 0..=6 {
        for step in 0..=28 {
            let t = -1.4 + 0.1 * step as f64;
            let z = Complex64::from_polar(SERIES_RADIUS, t);
            let pair = |f: Family, b: Branch| kernel.eval_on(b, f, n, z).unwrap();
            // Oscillatory pairs are compared against the Hankel modulus so
            // that zeros of J or Y do not inflate the relative error.
            let jy_scale = pair(Family::J, Branch::Series)
                .norm()
                .hypot(pair(Family::Y, Branch::Series).norm());
            for fam in Family::ALL {
                let s = pair(fam, Branch::Series);
                let a = pair(fam, Branch::Asymptotic);
                let scale = match fam {
                    Family::J | Family::Y => jy_scale,
                    _ => s.norm(),
                };
                let rel = (s - a).norm() / scale;
                worst = worst.max(rel);
                assert!(
                    rel <= 1e-12,
                    "{fam:?}_{n} at {z}: series {s} vs asymptotic {a} ({rel:e})"
                );
            }
        }
    }
    eprintln!("worst seam disagreement: {worst:e}");
}

#[test]
fn integer_order_reflection_is_exact_routing() {
    let z = Complex64::new(4.2, -1.7);
    for n in 1..=12 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(eval(Family::J, -n, z), eval(Family::J, n, z) * sign);
        assert_eq!(eval(Family::Y, -n, z), eval(Family::Y, n, z) * sign);
        assert_eq!(eval(Family::I, -n, z), eval(Family::I, n, z));
        assert_eq!(eval(Family::K, -n, z), eval(Family::K, n, z));
    }
}

#[test]
fn high_orders_stay_accurate() {
    // J_64 and I_64 by series vs Miller on either side of the seam agree with
    // the recurrence from below.
    for &r in &[5.0, 14.9, 15.1, 40.0] {
        let z = Complex64::new(r, 0.3 * r);
        for fam in [Family::J, Family::I] {
            let a = eval(fam, 63, z);
            let b = eval(fam, 64, z);
            assert!(a.norm().is_finite() && b.norm().is_finite());
            assert!(b.norm() < a.norm(), "{fam:?} not decreasing in order at {z}");
        }
    }
}

proptest! {
    #[test]
    fn schwarz_reflection(
        r in 0.05f64..50.0,
        t in -1.5f64..1.5,
        n in -10i32..=10,
    ) {
        let z = Complex64::from_polar(r, t);
        for fam in Family::ALL {
            let a = eval(fam, n, z.conj());
            let b = eval(fam, n, z).conj();
            let scale = b.norm().max(f64::MIN_POSITIVE);
            prop_assert!((a - b).norm() <= 1e-12 * scale, "{:?}_{} at {}: {} vs {}", fam, n, z, a, b);
        }
    }
}

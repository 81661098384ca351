//! Double-double arithmetic for the ascending series.
//!
//! Series for `J`, `Y` and `K` lose up to `e^{2|z|}` to cancellation; at the
//! series/asymptotic seam `|z| = 15` that is ~13 decimal digits. Carrying sums
//! in ~32 significant digits keeps the final `f64` result correctly rounded
//! to within a few ulps.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const LN_2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    pub const EULER_GAMMA: Dd = Dd {
        hi: 0.5772156649015329,
        lo: -4.942915152430645e-18,
    };
    pub const FRAC_1_PI: Dd = Dd {
        hi: std::f64::consts::FRAC_1_PI,
        lo: -1.9678676675182486e-17,
    };
    pub const FRAC_2_PI: Dd = Dd {
        hi: std::f64::consts::FRAC_2_PI,
        lo: -3.935735335036497e-17,
    };

    #[inline]
    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self - Dd::new(b).mul_f64(q1);
        let q2 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn exp(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / Dd::LN_2.hi).round();
        // r = (x - k ln2) / 1024, then exp(r)^1024
        let r = (self - Dd::LN_2.mul_f64(k)).mul_f64(1.0 / 1024.0);
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for j in 1..=14 {
            term = (term * r).div_f64(j as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum.sqr();
        }
        let scale = 2f64.powi(k as i32);
        Dd {
            hi: sum.hi * scale,
            lo: sum.lo * scale,
        }
    }

    /// Natural log of a positive value, one Newton step on `exp`.
    pub fn ln(self) -> Dd {
        let y0 = self.hi.ln();
        let y = Dd::new(y0);
        y + self * (-y).exp() - Dd::ONE
    }

    /// `(sin x, cos x)` by direct Taylor series; intended for `|x| ≤ π/2`.
    pub fn sin_cos(x: f64) -> (Dd, Dd) {
        let xd = Dd::new(x);
        let x2 = xd.sqr();
        let mut s_term = xd;
        let mut c_term = Dd::ONE;
        let mut s = s_term;
        let mut c = c_term;
        let mut k = 1.0;
        loop {
            s_term = -(s_term * x2).div_f64((k + 1.0) * (k + 2.0));
            c_term = -(c_term * x2).div_f64(k * (k + 1.0));
            s = s + s_term;
            c = c + c_term;
            k += 2.0;
            if (s_term.hi.abs() < 1e-36 && c_term.hi.abs() < 1e-36) || k > 80.0 {
                break;
            }
        }
        (s, c)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_c64(z: Complex64) -> Cdd {
        Cdd {
            re: Dd::new(z.re),
            im: Dd::new(z.im),
        }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn scale(self, s: Dd) -> Cdd {
        Cdd {
            re: self.re * s,
            im: self.im * s,
        }
    }

    #[inline]
    pub fn div_f64(self, s: f64) -> Cdd {
        Cdd {
            re: self.re.div_f64(s),
            im: self.im.div_f64(s),
        }
    }

    /// Cheap magnitude estimate, `|re| + |im|` in leading precision.
    #[inline]
    pub fn mag(self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }

    pub fn recip(self) -> Cdd {
        let den = self.re.sqr() + self.im.sqr();
        Cdd {
            re: self.re / den,
            im: -(self.im / den),
        }
    }

    pub fn powi(self, mut n: u32) -> Cdd {
        let mut base = self;
        let mut acc = Cdd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Principal logarithm of an `f64` complex number with `Re z > 0`,
    /// returned in double-double precision.
    pub fn ln_of(z: Complex64) -> Cdd {
        let (x, y) = (z.re, z.im);
        let (x2h, x2l) = two_prod(x, x);
        let (y2h, y2l) = two_prod(y, y);
        let r2 = Dd { hi: x2h, lo: x2l } + Dd { hi: y2h, lo: y2l };
        let re = r2.ln().mul_f64(0.5);
        let im = if y == 0.0 {
            Dd::ZERO
        } else {
            let theta0 = y.atan2(x);
            let (s, c) = Dd::sin_cos(theta0);
            // tan(θ - θ0) = (y cos θ0 - x sin θ0) / (x cos θ0 + y sin θ0)
            let num = c.mul_f64(y) - s.mul_f64(x);
            let den = c.mul_f64(x) + s.mul_f64(y);
            Dd::new(theta0) + num / den
        };
        Cdd { re, im }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, b: Cdd) -> Cdd {
        Cdd {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    #[inline]
    fn sub(self, b: Cdd) -> Cdd {
        Cdd {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    #[inline]
    fn neg(self) -> Cdd {
        Cdd {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, b: Cdd) -> Cdd {
        if self.im.hi == 0.0 && b.im.hi == 0.0 && self.im.lo == 0.0 && b.im.lo == 0.0 {
            return Cdd {
                re: self.re * b.re,
                im: Dd::ZERO,
            };
        }
        Cdd {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_and_exp_are_inverse() {
        for &x in &[0.1, 0.5, 1.0, 2.0, 7.5, 123.25] {
            let d = Dd::new(x);
            let back = d.ln().exp();
            let err = ((back - d).to_f64() / x).abs();
            assert!(err < 1e-28, "x = {x}: {err:e}");
        }
    }

    #[test]
    fn ln_two_constant() {
        let l = Dd::new(2.0).ln();
        assert!((l - Dd::LN_2).to_f64().abs() < 1e-31);
    }

    #[test]
    fn complex_log_recovers_argument() {
        let z = Complex64::new(1.0, 1.0);
        let l = Cdd::ln_of(z);
        let quarter_pi = Dd {
            hi: std::f64::consts::FRAC_PI_4,
            lo: 3.061616997868383e-17,
        };
        assert!((l.im - quarter_pi).to_f64().abs() < 1e-31);
        assert!((l.re - Dd::LN_2.mul_f64(0.5)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn division_is_exactish() {
        let a = Dd::new(1.0);
        let b = Dd::new(3.0);
        let q = a / b;
        let r = q * b - a;
        assert!(r.to_f64().abs() < 1e-31);
    }
}

//! Double-double arithmetic (about 32 significant decimal digits).

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
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

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest double-double to a rational.
    pub fn from_rational(r: &BigRational) -> Dd {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() || hi == 0.0 {
            return Dd { hi, lo: 0.0 };
        }
        let exact_hi = BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
        let lo = (r - exact_hi).to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
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

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
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
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Cdd {
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

    pub fn from_c64(z: Complex64) -> Cdd {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn real(x: Dd) -> Cdd {
        Cdd { re: x, im: Dd::ZERO }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    /// Modulus rounded to `f64`.
    pub fn norm(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn conj(self) -> Cdd {
        Cdd {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn recip(self) -> Cdd {
        let d = self.norm_sqr();
        Cdd {
            re: self.re / d,
            im: -self.im / d,
        }
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
        Cdd {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    #[inline]
    fn div(self, b: Cdd) -> Cdd {
        // scale by the larger component to avoid overflow in |b|^2
        let s = b.re.hi.abs().max(b.im.hi.abs());
        if s == 0.0 {
            return Cdd {
                re: Dd::from_f64(f64::NAN),
                im: Dd::from_f64(f64::NAN),
            };
        }
        let k = Dd::from_f64(1.0 / s);
        let bs = Cdd {
            re: b.re * k,
            im: b.im * k,
        };
        let num = self * bs.conj();
        let den = bs.norm_sqr();
        Cdd {
            re: num.re / den * k,
            im: num.im / den * k,
        }
    }
}

/// Horner evaluation of `p`, `p'` and `p''` at `z`; coefficients lowest degree first.
pub fn horner2(coeffs: &[Dd], z: Cdd) -> (Cdd, Cdd, Cdd) {
    let mut p = Cdd::ZERO;
    let mut dp = Cdd::ZERO;
    let mut ddp = Cdd::ZERO;
    for &c in coeffs.iter().rev() {
        ddp = ddp * z + dp;
        dp = dp * z + p;
        p = p * z + Cdd::real(c);
    }
    (p, dp, ddp + ddp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::rat;

    #[test]
    fn third_is_accurate_beyond_double() {
        let third = Dd::from_rational(&rat(1, 3));
        let err = Dd::from_f64(1.0) - third * Dd::from_f64(3.0);
        assert!(err.to_f64().abs() < 1e-31);
        let q = Dd::ONE / Dd::from_f64(3.0);
        assert!((q - third).to_f64().abs() < 1e-32);
    }

    #[test]
    fn complex_division_roundtrip() {
        let a = Cdd::from_c64(Complex64::new(1.5, -2.25));
        let b = Cdd::from_c64(Complex64::new(-0.3, 7.0));
        let back = (a / b) * b - a;
        assert!(back.norm() < 1e-30);
    }

    #[test]
    fn horner_derivatives() {
        // p = z^3 - 2z + 1 at z = 2: p = 5, p' = 10, p'' = 12
        let coeffs: Vec<Dd> = [1.0, -2.0, 0.0, 1.0].iter().map(|&c| Dd::from_f64(c)).collect();
        let (p, dp, ddp) = horner2(&coeffs, Cdd::from_c64(Complex64::new(2.0, 0.0)));
        assert_eq!((p.to_c64().re, dp.to_c64().re, ddp.to_c64().re), (5.0, 10.0, 12.0));
    }
}

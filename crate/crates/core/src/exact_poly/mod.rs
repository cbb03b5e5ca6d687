//! Exact univariate polynomials over the rationals.

mod bareiss;
mod hermite;
mod squarefree;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use bareiss::{det_poly_matrix, det_rational_matrix, IntPoly};
pub use hermite::{
    appell_polynomials, conjugation_discrepancy, hermite_monic, hermite_physicist, parity_conjugation_checks,
    schur_specialized, wronskian, wronskian_for_partition, AppellSpec, GaussianPoly,
};
pub use squarefree::{
    coprime, poly_gcd, resultant, squarefree_certificate, squarefree_decomposition, SquarefreeCertificate,
};

/// Dense polynomial, lowest degree first, with no trailing zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> ExactPoly {
        match self.leading_coeff() {
            None => ExactPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> ExactPoly {
        ExactPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> ExactPoly {
        ExactPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> ExactPoly {
        (0..e).fold(ExactPoly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &ExactPoly) -> (ExactPoly, ExactPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (ExactPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (ExactPoly::new(quot), ExactPoly::new(rem))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `(d, P)` with `d * self = P` and `P` integral.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let d = self.denominator_lcm();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (d, IntPoly::new(coeffs))
    }

    /// Coefficients as `f64`, lowest degree first.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `"num/den"` strings, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<ExactPoly> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(ExactPoly::new)
    }
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        ExactPoly::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = ExactPoly::new(vec![rat(-1, 2), int(0), int(1)]);
        let x = ExactPoly::x();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(&x * &x, ExactPoly::from_ints(&[0, 0, 1]));
        assert_eq!(&p - &p, ExactPoly::zero());
        assert_eq!(p.derivative(), ExactPoly::from_ints(&[0, 2]));
        assert_eq!(p.eval(&int(1)), rat(1, 2));
        assert_eq!(p.reflect(), p);
        assert_eq!(
            ExactPoly::from_ints(&[0, 0, 0, 2]).monic(),
            ExactPoly::from_ints(&[0, 0, 0, 1])
        );
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = ExactPoly::from_ints(&[1, 2, 3, 4, 5]);
        let b = ExactPoly::new(vec![rat(1, 3), int(0), int(2)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn serialization_format() {
        let p = ExactPoly::new(vec![rat(-1, 2), int(0), int(1)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["-1/2","0/1","1/1"]"#);
        let back: ExactPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let q: ExactPoly = serde_json::from_str(r#"["3","-1/2"]"#).unwrap();
        assert_eq!(q, ExactPoly::new(vec![int(3), rat(-1, 2)]));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn display_is_readable() {
        let p = ExactPoly::new(vec![rat(-1, 2), int(0), int(1)]);
        assert_eq!(p.to_string(), "z^2 - 1/2");
        assert_eq!(ExactPoly::from_ints(&[0, 0, 0, 2]).to_string(), "2*z^3");
    }
}

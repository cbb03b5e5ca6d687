//! Fraction-free (Bareiss) determinants over `Z` and `Z[z]`.
//!
//! Rational matrices are handled by scaling each row to integers first;
//! the determinant is multilinear in rows, so the scale factors divide out.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactPoly;

/// Integer polynomial, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_exact(&self) -> ExactPoly {
        ExactPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly { coeffs: vec![] };
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    fn sub(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    /// Division known to be exact in `Z[z]`.
    fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            debug_assert!(self.is_zero(), "inexact polynomial division");
            return IntPoly { coeffs: vec![] };
        }
        let lc = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let (c, r) = rem[k + dd].div_rem(lc);
            debug_assert!(r.is_zero(), "inexact coefficient division");
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::new(quot)
    }
}

trait BareissRing: Clone {
    fn ring_one() -> Self;
    fn ring_zero() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_neg(&self) -> Self;
    /// `(a * b - c * d) / e`, exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn ring_one() -> Self {
        BigInt::one()
    }
    fn ring_zero() -> Self {
        BigInt::zero()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Self {
        (a * b - c * d) / e
    }
}

impl BareissRing for IntPoly {
    fn ring_one() -> Self {
        IntPoly::new(vec![BigInt::one()])
    }
    fn ring_zero() -> Self {
        IntPoly { coeffs: vec![] }
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Self {
        a.mul(b).sub(&c.mul(d)).exact_div(e)
    }
}

fn bareiss<T: BareissRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::ring_one();
    }
    let mut sign_flip = false;
    let mut prev = T::ring_one();
    for k in 0..n - 1 {
        if m[k][k].ring_is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].ring_is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return T::ring_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = T::cross_div(&m[i][j], &m[k][k], &m[i][k], &m[k][j], &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.ring_neg()
    } else {
        det
    }
}

/// Exact determinant of a square matrix of rational polynomials.
pub fn det_poly_matrix(rows: &[Vec<ExactPoly>]) -> ExactPoly {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut scale = BigInt::one();
    let int_rows: Vec<Vec<IntPoly>> = rows
        .iter()
        .map(|row| {
            let d = row.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
            scale *= &d;
            let dr = BigRational::from_integer(d);
            row.iter().map(|p| p.scale(&dr).clear_denominators().1).collect()
        })
        .collect();
    bareiss(int_rows)
        .to_exact()
        .scale(&BigRational::from_integer(scale).recip())
}

/// Exact determinant of a square rational matrix.
pub fn det_rational_matrix(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut scale = BigInt::one();
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let d = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale *= &d;
            row.iter()
                .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    BigRational::new(bareiss(int_rows), scale)
}

//! GCD, Yun squarefree decomposition and resultants over `Q[z]`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{det_rational_matrix, ExactPoly};
use crate::{Error, Result};

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
    let mut a = a.monic();
    let mut b = b.monic();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.monic();
    }
    a
}

/// Yun's algorithm: `p = c * Π f_k^k` with squarefree, pairwise coprime, monic `f_k`.
/// Returns the nonconstant `(f_k, k)` in increasing `k`.
pub fn squarefree_decomposition(p: &ExactPoly) -> Result<Vec<(ExactPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = poly_gcd(p, &dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), k));
        }
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarefreeCertificate {
    pub squarefree: bool,
    /// Root multiplicities, one entry per distinct complex root, nonincreasing.
    pub multiplicities: Vec<usize>,
}

pub fn squarefree_certificate(p: &ExactPoly) -> Result<SquarefreeCertificate> {
    let factors = squarefree_decomposition(p)?;
    let squarefree = poly_gcd(p, &p.derivative()).is_constant();
    let mut multiplicities: Vec<usize> = factors
        .iter()
        .flat_map(|(f, k)| std::iter::repeat_n(*k, f.degree().unwrap_or(0)))
        .collect();
    multiplicities.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SquarefreeCertificate {
        squarefree,
        multiplicities,
    })
}

/// Sylvester resultant with the rows of `q` first:
/// `res(p, q) = lc(q)^{deg p} Π_{q(β)=0} p(β)`, zero iff `p` and `q` share a root.
pub fn resultant(p: &ExactPoly, q: &ExactPoly) -> Result<BigRational> {
    let (Some(n), Some(m)) = (p.degree(), q.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    let size = n + m;
    if size == 0 {
        return Ok(BigRational::one());
    }
    // Rows hold coefficients from the highest degree down.
    let mut rows = Vec::with_capacity(size);
    let shifted = |poly: &ExactPoly, deg: usize, shift: usize| {
        let mut row = vec![BigRational::zero(); size];
        for k in 0..=deg {
            row[shift + deg - k] = poly.coeff(k);
        }
        row
    };
    for s in 0..n {
        rows.push(shifted(q, m, s));
    }
    for s in 0..m {
        rows.push(shifted(p, n, s));
    }
    Ok(det_rational_matrix(&rows))
}

/// True when `p` and `q` share no complex root.
pub fn coprime(p: &ExactPoly, q: &ExactPoly) -> bool {
    poly_gcd(p, q).is_constant()
}

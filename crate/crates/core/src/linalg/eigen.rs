//! Eigenvalues of general complex matrices: Parlett–Reinsch balancing,
//! Householder reduction to Hessenberg form, then single-shift QR with
//! Wilkinson shifts and deflation on the active window.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

fn l1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Rescales rows/columns by powers of two so that row and column norms match.
fn balance(a: &mut [Vec<Complex64>]) {
    let n = a.len();
    let radix = 2.0_f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += l1(a[j][i]);
                    r += l1(a[i][j]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut g = r / radix;
            let mut f = 1.0;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[i][j] *= g;
                }
                for row in a.iter_mut() {
                    row[i] *= f;
                }
            }
        }
    }
}

fn to_hessenberg(a: &mut [Vec<Complex64>]) {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| a[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[k + 1][k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vnorm;
        }
        // A <- (I - 2vv*) A
        for j in 0..n {
            let s: Complex64 = (k + 1..n).map(|i| v[i - k - 1].conj() * a[i][j]).sum();
            for i in k + 1..n {
                a[i][j] -= 2.0 * v[i - k - 1] * s;
            }
        }
        // A <- A (I - 2vv*)
        for row in a.iter_mut() {
            let s: Complex64 = (k + 1..n).map(|j| row[j] * v[j - k - 1]).sum();
            for j in k + 1..n {
                row[j] -= 2.0 * s * v[j - k - 1].conj();
            }
        }
        for row in a.iter_mut().skip(k + 2) {
            row[k] = Complex64::new(0.0, 0.0);
        }
    }
}

/// `(c, s)` with `c` real such that `[[c, s], [-s̄, c]] [a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = an.hypot(bn);
    let alpha = a / an;
    (an / r, alpha * b.conj() / r)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = d - b * c / (half + disc);
    let m2 = d - b * c / (half - disc);
    let pick = |m: Complex64| {
        if m.re.is_finite() && m.im.is_finite() {
            Some(m)
        } else {
            None
        }
    };
    match (pick(m1), pick(m2)) {
        (Some(x), Some(y)) => {
            if (x - d).norm() <= (y - d).norm() {
                x
            } else {
                y
            }
        }
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => d,
    }
}

/// Eigenvalues of an upper Hessenberg matrix (entries below the subdiagonal ignored).
pub fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex64>>, max_iter: usize) -> Result<Vec<Complex64>> {
    let n = h.len();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let norm = h.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let budget = max_iter.max(30) * n;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let s = l1(h[lo - 1][lo - 1]) + l1(h[lo][lo]);
            let s = if s == 0.0 { norm } else { s };
            if l1(h[lo][lo - 1]) <= EPS * s {
                h[lo][lo - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > budget {
            return Err(Error::NoConvergence {
                what: "Hessenberg QR",
                iterations: total,
            });
        }
        let mu = if iter % 10 == 0 {
            // exceptional shift
            h[hi][hi] + Complex64::new(0.75 * h[hi][hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        for k in lo..=hi {
            h[k][k] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = c * x + s * y;
                h[k + 1][j] = -s.conj() * x + c * y;
            }
            h[k + 1][k] = Complex64::new(0.0, 0.0);
            rots.push((c, s));
        }
        for (idx, k) in (lo..hi).enumerate() {
            let (c, s) = rots[idx];
            for row in h.iter_mut().take((k + 2).min(hi) + 1).skip(lo) {
                let x = row[k];
                let y = row[k + 1];
                row[k] = c * x + s.conj() * y;
                row[k + 1] = -s * x + c * y;
            }
        }
        for k in lo..=hi {
            h[k][k] += mu;
        }
    }
    Ok(eig)
}

/// All eigenvalues of a square complex matrix.
pub fn eigenvalues(a: &ComplexMatrix, max_iter: usize) -> Result<Vec<Complex64>> {
    if !a.is_finite() {
        return Err(Error::InvalidConfig("matrix has non-finite entries".into()));
    }
    let mut rows = a.rows();
    if rows.len() <= 1 {
        return Ok(rows.into_iter().flatten().collect());
    }
    balance(&mut rows);
    to_hessenberg(&mut rows);
    hessenberg_eigenvalues(rows, max_iter)
}

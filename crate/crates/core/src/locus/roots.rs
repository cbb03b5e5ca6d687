//! Polynomial root finding: exact squarefree split, companion-matrix seeds,
//! then simultaneous Aberth–Ehrlich polishing against the exact coefficients
//! in double-double arithmetic.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::{horner2, Cdd, Dd};
use super::NumericsConfig;
use crate::exact_poly::{squarefree_decomposition, ExactPoly};
use crate::linalg::hessenberg_eigenvalues;
use crate::{Error, Result};

/// Roots with multiplicity plus the number of polishing sweeps used.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
}

/// All roots of `p`, repeated by multiplicity, sorted by `(re, im)`.
pub fn find_roots(p: &ExactPoly, cfg: &NumericsConfig) -> Result<Vec<Complex64>> {
    find_roots_detailed(p, cfg).map(|r| r.roots)
}

pub fn find_roots_detailed(p: &ExactPoly, cfg: &NumericsConfig) -> Result<RootSet> {
    cfg.validate()?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut iterations = 0;
    for (factor, mult) in squarefree_decomposition(p)? {
        let (r, it) = squarefree_roots(&factor, cfg)?;
        iterations += it;
        for z in r {
            roots.extend(std::iter::repeat_n(z, mult));
        }
    }
    sort_canonical(&mut roots);
    Ok(RootSet { roots, iterations })
}

/// Sort by real part, then imaginary part.
pub fn sort_canonical(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Roots of a squarefree polynomial.
pub(crate) fn squarefree_roots(f: &ExactPoly, cfg: &NumericsConfig) -> Result<(Vec<Complex64>, usize)> {
    let f = f.monic();
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Ok((Vec::new(), 0));
    }
    let coeffs: Vec<Dd> = f.coeffs().iter().map(Dd::from_rational).collect();
    if d == 1 {
        return Ok((vec![Complex64::new((-coeffs[0]).to_f64(), 0.0)], 0));
    }
    let seeds = companion_seeds(&f.to_f64_coeffs(), cfg.max_iter).unwrap_or_else(|| circle_seeds(&f.to_f64_coeffs()));
    let (z, iterations) = aberth(&coeffs, seeds, cfg)?;
    Ok((z, iterations))
}

fn companion_seeds(monic: &[f64], max_iter: usize) -> Option<Vec<Complex64>> {
    let d = monic.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    let mut h = vec![vec![zero; d]; d];
    for (j, entry) in h[0].iter_mut().enumerate() {
        *entry = Complex64::new(-monic[d - 1 - j], 0.0);
    }
    for i in 1..d {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    balance_companion(&mut h);
    let eig = hessenberg_eigenvalues(h, max_iter).ok()?;
    if eig.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return None;
    }
    Some(separate(eig))
}

/// Diagonal power-of-two scaling; keeps the Hessenberg shape.
fn balance_companion(a: &mut [Vec<Complex64>]) {
    let n = a.len();
    for _ in 0..50 {
        let mut changed = false;
        for i in 0..n {
            let c: f64 = (0..n).filter(|&j| j != i).map(|j| a[j][i].norm()).sum();
            let r: f64 = (0..n).filter(|&j| j != i).map(|j| a[i][j].norm()).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let f = 2f64.powi(((r / c).log2() / 2.0).round() as i32);
            if f != 1.0 {
                changed = true;
                for j in 0..n {
                    a[i][j] /= f;
                    a[j][i] *= f;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn circle_seeds(monic: &[f64]) -> Vec<Complex64> {
    let d = monic.len() - 1;
    let radius = (0..d)
        .map(|k| monic[k].abs().powf(1.0 / (d - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3)
        * 2.0;
    (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
        .collect()
}

/// Nudges coincident seeds apart; Aberth needs distinct starting points.
fn separate(mut z: Vec<Complex64>) -> Vec<Complex64> {
    let scale = z.iter().map(|x| x.norm()).fold(1.0, f64::max);
    for i in 0..z.len() {
        for j in 0..i {
            if (z[i] - z[j]).norm() < 1e-10 * scale {
                z[i] += Complex64::from_polar(1e-7 * scale, 0.7 + i as f64);
            }
        }
    }
    z
}

fn aberth(coeffs: &[Dd], seeds: Vec<Complex64>, cfg: &NumericsConfig) -> Result<(Vec<Complex64>, usize)> {
    let d = seeds.len();
    let mut z: Vec<Cdd> = seeds.into_iter().map(Cdd::from_c64).collect();
    let target = 10f64.powi(-(cfg.digits as i32));
    let mut prev_step = f64::INFINITY;
    let mut iterations = 0;
    for it in 1..=cfg.max_iter {
        iterations = it;
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let (p, dp, _) = horner2(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = if dp.norm() == 0.0 { p } else { p / dp };
            let mut s = Cdd::ZERO;
            for j in 0..d {
                if j != i {
                    s = s + (z[i] - z[j]).recip();
                }
            }
            let w = ratio / (Cdd::ONE - ratio * s);
            let step = w.norm() / z[i].norm().max(1.0);
            if step.is_finite() {
                z[i] = z[i] - w;
                max_step = max_step.max(step);
            }
        }
        if max_step <= target {
            break;
        }
        // precision floor: steps stopped shrinking at the rounding level
        if max_step < 1e-24 && max_step > 0.5 * prev_step {
            break;
        }
        prev_step = max_step;
    }
    let roots: Vec<Complex64> = z.iter().map(|&x| snap(x)).collect();
    for &x in &z {
        let (p, _, _) = horner2(coeffs, x);
        let r = x.norm();
        let scale: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().abs() * r.powi(k as i32))
            .sum();
        if !(p.norm() <= cfg.root_tol * scale) {
            return Err(Error::NoConvergence {
                what: "Aberth polish",
                iterations,
            });
        }
    }
    Ok((roots, iterations))
}

/// Rounds to `f64`, flushing components below the double-double noise floor to zero.
fn snap(x: Cdd) -> Complex64 {
    let z = x.to_c64();
    let floor = 1e-25 * (1.0 + z.norm());
    Complex64::new(
        if z.re.abs() < floor { 0.0 } else { z.re },
        if z.im.abs() < floor { 0.0 } else { z.im },
    )
}

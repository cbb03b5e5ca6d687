//! Numerics on the harmonic locus.
//!
//! The poles of `u_λ(z) = z^2 - 2 (log W_λ)''` are the roots of the Hermite
//! Wronskian. When they are all simple they satisfy the locus conditions
//!
//! ```text
//! F_i(z) = Σ_{j≠i} 2 / (z_i - z_j)^3 - z_i = 0,
//! ```
//!
//! the equilibrium equations of the harmonic Calogero–Moser potential.

mod dd;
mod roots;

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exact_poly::{squarefree_decomposition, wronskian_for_partition, ExactPoly};
use crate::linalg::ComplexMatrix;
use crate::{Error, Partition, Result};
use dd::{horner2, Cdd, Dd};

pub use roots::{find_roots, find_roots_detailed, sort_canonical, RootSet};

/// Tolerances for the floating-point stages.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NumericsConfig {
    /// Accept a root when `|p(z)| <= root_tol * Σ |a_k| |z|^k`.
    pub root_tol: f64,
    /// Target max-norm of the locus residual in Newton refinement.
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Roots closer than this are treated as one pole.
    pub cluster_tol: f64,
    /// Largest accepted distance of an eigenvalue from the nearest integer.
    pub integer_tol: f64,
    /// Relative step size, as a power of ten, at which polishing stops.
    pub digits: u32,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            root_tol: 1e-10,
            newton_tol: 1e-11,
            max_iter: 200,
            cluster_tol: 1e-6,
            integer_tol: 1e-4,
            digits: 30,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        let tols = [
            ("root_tol", self.root_tol),
            ("newton_tol", self.newton_tol),
            ("cluster_tol", self.cluster_tol),
            ("integer_tol", self.integer_tol),
        ];
        for (name, t) in tols {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {t}")));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if !(1..=32).contains(&self.digits) {
            return Err(Error::InvalidConfig(format!(
                "digits must lie in 1..=32 (double-double precision), got {}",
                self.digits
            )));
        }
        Ok(())
    }
}

/// Distinct poles of `u_λ` with their root multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusConfiguration {
    pub partition: Partition,
    /// Distinct roots of `W_λ`, sorted by `(re, im)`.
    pub roots: Vec<Complex64>,
    /// Root multiplicity `ν_i = m_i (m_i + 1) / 2` of each pole.
    pub multiplicities: Vec<usize>,
    /// Locus residual after refinement; only defined when every pole is simple.
    pub locus_residual: Option<f64>,
    /// Polishing sweeps plus Newton steps.
    pub polish_iterations: usize,
}

impl LocusConfiguration {
    /// Pole orders `m_i`, where `u ~ m_i (m_i + 1) / (z - z_i)^2`.
    pub fn pole_orders(&self) -> Vec<usize> {
        self.multiplicities
            .iter()
            .map(|&nu| triangular_root(nu).expect("validated on construction"))
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicities.iter().all(|&nu| nu == 1)
    }

    pub fn degree(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Poles of multiplicity above one away from the origin.
    pub fn noncentral_multiple_roots(&self, tol: f64) -> Vec<(Complex64, usize)> {
        self.roots
            .iter()
            .zip(&self.multiplicities)
            .filter(|(z, &nu)| nu > 1 && z.norm() > tol)
            .map(|(&z, &nu)| (z, nu))
            .collect()
    }

    /// Every root repeated by multiplicity.
    pub fn expanded_roots(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&z, &nu)| std::iter::repeat_n(z, nu))
            .collect()
    }

    /// CSV with header `re,im,multiplicity`; floats in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        roots_to_csv(&self.roots, &self.multiplicities)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.record()).expect("plain data serializes")
    }

    fn record(&self) -> LocusRecord {
        LocusRecord {
            partition: self.partition.clone(),
            degree: self.degree(),
            roots: self
                .roots
                .iter()
                .zip(&self.multiplicities)
                .map(|(z, &multiplicity)| RootEntry {
                    re: z.re,
                    im: z.im,
                    multiplicity,
                })
                .collect(),
            locus_residual: self.locus_residual,
            polish_iterations: self.polish_iterations,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LocusRecord {
    partition: Partition,
    degree: usize,
    roots: Vec<RootEntry>,
    locus_residual: Option<f64>,
    polish_iterations: usize,
}

/// One line of the roots table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl Serialize for LocusConfiguration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocusConfiguration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LocusRecord::deserialize(d)?;
        let multiplicities: Vec<usize> = r.roots.iter().map(|e| e.multiplicity).collect();
        if let Some(&bad) = multiplicities.iter().find(|&&nu| triangular_root(nu).is_none()) {
            return Err(serde::de::Error::custom(Error::NonTriangularMultiplicity(bad)));
        }
        Ok(LocusConfiguration {
            partition: r.partition,
            roots: r.roots.iter().map(|e| Complex64::new(e.re, e.im)).collect(),
            multiplicities,
            locus_residual: r.locus_residual,
            polish_iterations: r.polish_iterations,
        })
    }
}

pub fn roots_to_csv(roots: &[Complex64], multiplicities: &[usize]) -> String {
    let mut out = String::from("re,im,multiplicity\n");
    for (z, nu) in roots.iter().zip(multiplicities) {
        let _ = writeln!(out, "{:?},{:?},{}", z.re, z.im, nu);
    }
    out
}

/// Parses `re,im[,multiplicity]` lines; a header line is optional and blank
/// lines or `#` comments are skipped. Missing multiplicities default to 1.
pub fn roots_from_csv(text: &str) -> Result<Vec<(Complex64, usize)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if lineno == 0 && fields.first().is_some_and(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        let bad = || {
            Error::Parse(format!(
                "line {}: expected re,im[,multiplicity], got {line:?}",
                lineno + 1
            ))
        };
        if !(2..=3).contains(&fields.len()) {
            return Err(bad());
        }
        let re: f64 = fields[0].parse().map_err(|_| bad())?;
        let im: f64 = fields[1].parse().map_err(|_| bad())?;
        let nu: usize = match fields.get(2) {
            Some(f) => f.parse().map_err(|_| bad())?,
            None => 1,
        };
        if nu == 0 {
            return Err(bad());
        }
        out.push((Complex64::new(re, im), nu));
    }
    Ok(out)
}

/// `m` with `m (m + 1) / 2 = nu`, if any.
pub fn triangular_root(nu: usize) -> Option<usize> {
    let m = (((8 * nu + 1) as f64).sqrt() as usize).saturating_sub(1) / 2;
    (m.saturating_sub(1)..=m + 1).find(|&k| k * (k + 1) / 2 == nu)
}

fn check_distinct(roots: &[Complex64], cluster_tol: f64) -> Result<()> {
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() < cluster_tol {
                return Err(Error::CoincidentPoints { i, j });
            }
        }
    }
    Ok(())
}

fn locus_forces(z: &[Complex64]) -> Vec<Complex64> {
    (0..z.len())
        .map(|i| {
            let s: Complex64 = (0..z.len())
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    2.0 / (d * d * d)
                })
                .sum();
            s - z[i]
        })
        .collect()
}

/// `max_i |Σ_{j≠i} 2/(z_i - z_j)^3 - z_i|`, using the default clustering tolerance.
pub fn locus_residual(roots: &[Complex64]) -> Result<f64> {
    locus_residual_with(roots, NumericsConfig::default().cluster_tol)
}

pub fn locus_residual_with(roots: &[Complex64], cluster_tol: f64) -> Result<f64> {
    check_distinct(roots, cluster_tol)?;
    Ok(locus_forces(roots).iter().map(|f| f.norm()).fold(0.0, f64::max))
}

/// Newton's method on the locus conditions.
pub fn refine_equilibrium(roots: &[Complex64], cfg: &NumericsConfig) -> Result<Vec<Complex64>> {
    refine_equilibrium_counted(roots, cfg).map(|(z, _)| z)
}

/// As [`refine_equilibrium`], also returning the number of Newton steps taken.
pub fn refine_equilibrium_counted(roots: &[Complex64], cfg: &NumericsConfig) -> Result<(Vec<Complex64>, usize)> {
    cfg.validate()?;
    check_distinct(roots, cfg.cluster_tol)?;
    let n = roots.len();
    let mut z = roots.to_vec();
    let mut f = locus_forces(&z);
    let mut res = f.iter().map(|x| x.norm()).fold(0.0, f64::max);
    for it in 0..cfg.max_iter {
        if res <= cfg.newton_tol {
            return Ok((z, it));
        }
        // dF_i/dz_i = -1 - Σ 6/(z_i-z_j)^4, dF_i/dz_j = 6/(z_i-z_j)^4
        let jac = ComplexMatrix::from_fn(n, |i, j| {
            if i == j {
                let s: Complex64 = (0..n).filter(|&l| l != i).map(|l| 6.0 / (z[i] - z[l]).powu(4)).sum();
                -1.0 - s
            } else {
                6.0 / (z[i] - z[j]).powu(4)
            }
        });
        let rhs: Vec<Complex64> = f.iter().map(|x| -x).collect();
        let step = jac.solve(&rhs, 1e-14).ok_or(Error::SingularJacobian)?;
        let scale = z.iter().map(|x| x.norm()).fold(1.0, f64::max);
        let step_norm = step.iter().map(|x| x.norm()).fold(0.0, f64::max);
        for (zi, s) in z.iter_mut().zip(&step) {
            *zi += s;
        }
        f = locus_forces(&z);
        let new_res = f.iter().map(|x| x.norm()).fold(0.0, f64::max);
        // at the rounding floor the residual cannot drop further
        if step_norm <= 4.0 * f64::EPSILON * scale && new_res <= cfg.newton_tol.max(1e3 * f64::EPSILON * scale) {
            return Ok((z, it + 1));
        }
        if !new_res.is_finite() {
            return Err(Error::NoConvergence {
                what: "equilibrium refinement",
                iterations: it + 1,
            });
        }
        res = new_res;
    }
    if res <= cfg.newton_tol {
        return Ok((z, cfg.max_iter));
    }
    Err(Error::NoConvergence {
        what: "equilibrium refinement",
        iterations: cfg.max_iter,
    })
}

/// Finds the poles of `u_λ`, clusters them and checks the triangular-number law.
///
/// Clustered sizes are cross-checked against the exact squarefree
/// decomposition of `W_λ`; simple configurations are refined by Newton's
/// method and their locus residual recorded.
pub fn pole_structure(lambda: &Partition, cfg: &NumericsConfig) -> Result<LocusConfiguration> {
    cfg.validate()?;
    let w = wronskian_for_partition(lambda);
    if lambda.is_empty() {
        return Ok(LocusConfiguration {
            partition: lambda.clone(),
            roots: vec![],
            multiplicities: vec![],
            locus_residual: Some(0.0),
            polish_iterations: 0,
        });
    }
    let found = find_roots_detailed(&w, cfg)?;
    let (mut centers, mut sizes) = cluster(&found.roots, cfg.cluster_tol);

    let mut exact: Vec<usize> = squarefree_decomposition(&w)?
        .iter()
        .flat_map(|(f, k)| std::iter::repeat_n(*k, f.degree().unwrap_or(0)))
        .collect();
    exact.sort_unstable();
    let mut numeric = sizes.clone();
    numeric.sort_unstable();
    if numeric != exact {
        return Err(Error::MultiplicityMismatch { numeric, exact });
    }
    if let Some(&bad) = sizes.iter().find(|&&nu| triangular_root(nu).is_none()) {
        return Err(Error::NonTriangularMultiplicity(bad));
    }

    let mut iterations = found.iterations;
    let mut residual = None;
    if sizes.iter().all(|&nu| nu == 1) {
        let (refined, steps) = refine_equilibrium_counted(&centers, cfg)?;
        iterations += steps;
        residual = Some(locus_residual_with(&refined, cfg.cluster_tol)?);
        centers = refined;
    }
    let mut order: Vec<usize> = (0..centers.len()).collect();
    order.sort_by(|&a, &b| {
        centers[a]
            .re
            .total_cmp(&centers[b].re)
            .then(centers[a].im.total_cmp(&centers[b].im))
    });
    let roots = order.iter().map(|&k| centers[k]).collect();
    sizes = order.iter().map(|&k| sizes[k]).collect();
    Ok(LocusConfiguration {
        partition: lambda.clone(),
        roots,
        multiplicities: sizes,
        locus_residual: residual,
        polish_iterations: iterations,
    })
}

/// Greedy single-linkage clustering; returns cluster means and sizes.
fn cluster(roots: &[Complex64], tol: f64) -> (Vec<Complex64>, Vec<usize>) {
    let mut members: Vec<Vec<Complex64>> = Vec::new();
    for &z in roots {
        match members.iter_mut().find(|c| c.iter().any(|&w| (w - z).norm() < tol)) {
            Some(c) => c.push(z),
            None => members.push(vec![z]),
        }
    }
    let centers = members
        .iter()
        .map(|c| c.iter().sum::<Complex64>() / c.len() as f64)
        .collect();
    let sizes = members.iter().map(Vec::len).collect();
    (centers, sizes)
}

/// `u_λ(z)`, evaluated from the exact Wronskian and from the pole expansion.
///
/// The two values must agree to a relative difference of `1e-8`; the
/// exact-coefficient value is returned.
pub fn potential_eval(lambda: &Partition, z: Complex64, cfg: &NumericsConfig) -> Result<Complex64> {
    let conf = pole_structure(lambda, cfg)?;
    potential_eval_with(&wronskian_for_partition(lambda), &conf, z, cfg)
}

/// As [`potential_eval`] with a precomputed Wronskian and pole structure.
pub fn potential_eval_with(
    w: &ExactPoly,
    conf: &LocusConfiguration,
    z: Complex64,
    cfg: &NumericsConfig,
) -> Result<Complex64> {
    if conf.roots.iter().any(|&p| (z - p).norm() < cfg.cluster_tol) {
        return Err(Error::EvaluationAtPole);
    }
    let coeffs: Vec<Dd> = w.monic().coeffs().iter().map(Dd::from_rational).collect();
    let zd = Cdd::from_c64(z);
    let (p, dp, ddp) = horner2(&coeffs, zd);
    if p.norm() == 0.0 {
        return Err(Error::EvaluationAtPole);
    }
    let log2 = (ddp * p - dp * dp) / (p * p);
    let a = (zd * zd - log2 - log2).to_c64();

    let b = z * z
        + conf
            .roots
            .iter()
            .zip(conf.pole_orders())
            .map(|(&zi, m)| Complex64::new((m * (m + 1)) as f64, 0.0) / (z - zi).powu(2))
            .sum::<Complex64>();

    let rel = (a - b).norm() / a.norm().max(b.norm()).max(1.0);
    if !(rel <= 1e-8) {
        return Err(Error::PotentialMismatch(rel));
    }
    Ok(a)
}

/// Largest distance from a root to the nearest negated root.
pub fn negation_asymmetry(roots: &[Complex64]) -> f64 {
    roots
        .iter()
        .map(|z| roots.iter().map(|w| (z + w).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

//! Moser's matrix and the Hessian of the Calogero–Moser potential at a
//! simple locus configuration.
//!
//! With `Q = diag(z_i)`, `L_ij = 1/(z_i - z_j)` and `M` having off-diagonal
//! entries `-1/(z_i - z_j)^2` and zero row sums, the locus conditions are
//! equivalent to `[M, L±] = ±L±` for `L± = L ± Q`. The spectrum of `M` is
//! the content multiset of `λ`; the spectrum of the Hessian `K` is the
//! multiset of squared hook lengths.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exact_poly::{hermite_monic, squarefree_certificate, wronskian_for_partition};
use crate::linalg::{self, ComplexMatrix};
use crate::locus::{find_roots, pole_structure, NumericsConfig};
use crate::partitions::{partition_from_contents, IntegerMultiset};
use crate::{Error, Partition, Result};

/// `Q`, `L`, `M`, `L+` and `L-` at a configuration.
#[derive(Clone, Debug)]
pub struct MoserMatrices {
    pub q: ComplexMatrix,
    pub l: ComplexMatrix,
    pub m: ComplexMatrix,
    pub l_plus: ComplexMatrix,
    pub l_minus: ComplexMatrix,
}

fn check_distinct(roots: &[Complex64]) -> Result<()> {
    let tol = NumericsConfig::default().cluster_tol;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() < tol {
                return Err(Error::CoincidentPoints { i, j });
            }
        }
    }
    Ok(())
}

pub fn build_moser(roots: &[Complex64]) -> Result<MoserMatrices> {
    check_distinct(roots)?;
    let n = roots.len();
    let zero = Complex64::new(0.0, 0.0);
    let q = ComplexMatrix::diagonal(roots);
    let l = ComplexMatrix::from_fn(n, |i, j| if i == j { zero } else { 1.0 / (roots[i] - roots[j]) });
    let mut m = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            zero
        } else {
            -1.0 / (roots[i] - roots[j]).powu(2)
        }
    });
    for i in 0..n {
        // exact negation of the off-diagonal row sum, so that Me = 0
        let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)]).sum();
        m[(i, i)] = -s;
    }
    let l_plus = &l + &q;
    let l_minus = &l - &q;
    Ok(MoserMatrices {
        q,
        l,
        m,
        l_plus,
        l_minus,
    })
}

/// `max(|[M,L+] - L+|, |[M,L-] + L-|)` in the max-entry norm.
pub fn perelomov_residual(roots: &[Complex64]) -> Result<f64> {
    let mm = build_moser(roots)?;
    let plus = &mm.m.commutator(&mm.l_plus) - &mm.l_plus;
    let minus = &mm.m.commutator(&mm.l_minus) + &mm.l_minus;
    Ok(plus.max_abs().max(minus.max_abs()))
}

pub fn eigenvalues(a: &ComplexMatrix, cfg: &NumericsConfig) -> Result<Vec<Complex64>> {
    linalg::eigenvalues(a, cfg.max_iter)
}

/// Hessian of `U = Σ z_i^2/2 + Σ_{i<j} 1/(z_i - z_j)^2`.
pub fn hessian_k(roots: &[Complex64]) -> Result<ComplexMatrix> {
    check_distinct(roots)?;
    let n = roots.len();
    Ok(ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            let s: Complex64 = (0..n)
                .filter(|&l| l != j)
                .map(|l| 6.0 / (roots[l] - roots[j]).powu(4))
                .sum();
            1.0 + s
        } else {
            -6.0 / (roots[i] - roots[j]).powu(4)
        }
    }))
}

/// Eigenvalues together with their nearest integers.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub partition: Option<Partition>,
    /// Sorted by real part.
    pub raw: Vec<Complex64>,
    /// Nearest integers to `raw`, same order.
    pub rounded: Vec<i64>,
    /// Largest `|raw_i - rounded_i|`.
    pub residual: f64,
}

impl SpectrumReport {
    pub fn from_eigenvalues(partition: Option<Partition>, mut raw: Vec<Complex64>) -> Self {
        raw.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let rounded: Vec<i64> = raw.iter().map(|z| z.re.round() as i64).collect();
        let residual = raw
            .iter()
            .zip(&rounded)
            .map(|(z, &k)| (z - Complex64::new(k as f64, 0.0)).norm())
            .fold(0.0, f64::max);
        SpectrumReport {
            partition,
            raw,
            rounded,
            residual,
        }
    }

    pub fn residuals(&self) -> Vec<f64> {
        self.raw
            .iter()
            .zip(&self.rounded)
            .map(|(z, &k)| (z - Complex64::new(k as f64, 0.0)).norm())
            .collect()
    }

    pub fn rounded_multiset(&self) -> IntegerMultiset {
        self.rounded.iter().copied().collect()
    }

    fn require_integral(&self, tol: f64) -> Result<()> {
        if self.residual <= tol {
            Ok(())
        } else {
            Err(Error::NonIntegerSpectrum {
                residual: self.residual,
                tol,
            })
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumRecord {
    partition: Option<Partition>,
    raw: Vec<[f64; 2]>,
    rounded: Vec<i64>,
    residual: f64,
}

impl Serialize for SpectrumReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpectrumRecord {
            partition: self.partition.clone(),
            raw: self.raw.iter().map(|z| [z.re, z.im]).collect(),
            rounded: self.rounded.clone(),
            residual: self.residual,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpectrumReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SpectrumRecord::deserialize(d)?;
        Ok(SpectrumReport {
            partition: r.partition,
            raw: r.raw.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
            rounded: r.rounded,
            residual: r.residual,
        })
    }
}

/// Recovers `λ` from the poles of `u_λ`: the spectrum of `M` is its content multiset.
pub fn invert_wronskian_map(roots: &[Complex64], cfg: &NumericsConfig) -> Result<(Partition, SpectrumReport)> {
    cfg.validate()?;
    let mm = build_moser(roots)?;
    let report = SpectrumReport::from_eigenvalues(None, eigenvalues(&mm.m, cfg)?);
    report.require_integral(cfg.integer_tol)?;
    let lambda = partition_from_contents(&report.rounded_multiset())?;
    Ok((
        lambda.clone(),
        SpectrumReport {
            partition: Some(lambda),
            ..report
        },
    ))
}

fn require_squarefree(lambda: &Partition) -> Result<()> {
    if lambda.is_empty() {
        return Ok(());
    }
    let cert = squarefree_certificate(&wronskian_for_partition(lambda))?;
    if cert.squarefree {
        Ok(())
    } else {
        Err(Error::SimplicityGateFailed)
    }
}

/// Refined simple poles of `u_λ`, or `SimplicityGateFailed`.
pub fn simple_roots(lambda: &Partition, cfg: &NumericsConfig) -> Result<Vec<Complex64>> {
    require_squarefree(lambda)?;
    Ok(pole_structure(lambda, cfg)?.roots)
}

/// Spectrum of `M` at the poles of `u_λ`, checked against the contents of `λ`.
pub fn moser_spectrum_check(lambda: &Partition, cfg: &NumericsConfig) -> Result<SpectrumReport> {
    let roots = simple_roots(lambda, cfg)?;
    let mm = build_moser(&roots)?;
    let report = SpectrumReport::from_eigenvalues(Some(lambda.clone()), eigenvalues(&mm.m, cfg)?);
    report.require_integral(cfg.integer_tol)?;
    let expected = lambda.contents();
    if report.rounded_multiset() != expected {
        return Err(Error::SpectrumMismatch {
            rounded: report.rounded.clone(),
            expected: expected.to_sorted_vec(),
        });
    }
    Ok(report)
}

/// Spectrum of `K` at the poles of `u_λ`, checked against the squared hook
/// lengths and against the squares of `λ_{l(□)+1} - c(□)`.
pub fn hessian_spectrum_check(lambda: &Partition, cfg: &NumericsConfig) -> Result<SpectrumReport> {
    let roots = simple_roots(lambda, cfg)?;
    let k = hessian_k(&roots)?;
    let report = SpectrumReport::from_eigenvalues(Some(lambda.clone()), eigenvalues(&k, cfg)?);
    report.require_integral(cfg.integer_tol)?;
    let rounded = report.rounded_multiset();
    for expected in [lambda.hooks().map(|h| h * h), lambda.cm_exponents().map(|s| s * s)] {
        if rounded != expected {
            return Err(Error::SpectrumMismatch {
                rounded: report.rounded.clone(),
                expected: expected.to_sorted_vec(),
            });
        }
    }
    Ok(report)
}

/// Outcome of the one-row comparison between `K` and `(M + I)^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneRowReport {
    pub n: usize,
    /// `|K - (M + I)^2|` at the roots of the Hermite polynomial of degree `n`.
    pub identity_residual: f64,
    /// `|[K, M]|` at the poles of `u_(3,1)`, where the two do not commute.
    pub commutator_31: f64,
}

impl OneRowReport {
    pub fn passed(&self, identity_tol: f64) -> bool {
        self.identity_residual <= identity_tol && self.commutator_31 > 1e-3
    }
}

pub fn one_row_identity_check(n: usize, cfg: &NumericsConfig) -> Result<OneRowReport> {
    if n == 0 {
        return Err(Error::InvalidConfig("n must be at least 1".into()));
    }
    let roots = crate::locus::refine_equilibrium(&find_roots(&hermite_monic(n), cfg)?, cfg)?;
    let mm = build_moser(&roots)?;
    let k = hessian_k(&roots)?;
    let shifted = &mm.m + &ComplexMatrix::identity(n);
    let identity_residual = (&k - &(&shifted * &shifted)).max_abs();

    let hook = Partition::new(vec![3, 1])?;
    let roots31 = simple_roots(&hook, cfg)?;
    let m31 = build_moser(&roots31)?.m;
    let commutator_31 = hessian_k(&roots31)?.commutator(&m31).max_abs();
    Ok(OneRowReport {
        n,
        identity_residual,
        commutator_31,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn pair() -> Vec<Complex64> {
        vec![c(-FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn close(a: &ComplexMatrix, b: &[Vec<f64>], tol: f64) -> bool {
        (a - &ComplexMatrix::from_real_rows(b).unwrap()).max_abs() <= tol
    }

    #[test]
    fn moser_examples() {
        let mm = build_moser(&pair()).unwrap();
        assert!(close(&mm.m, &[vec![0.5, -0.5], vec![-0.5, 0.5]], 1e-15));
        assert!((&mm.l + &mm.l.transpose()).max_abs() == 0.0);
        let one = build_moser(&[c(0.0)]).unwrap();
        assert_eq!(one.m.max_abs(), 0.0);
        assert_eq!(one.l.max_abs(), 0.0);
        let z = [Complex64::new(0.3, 1.1), c(-2.0), Complex64::new(0.7, -0.4), c(1.9)];
        let mm = build_moser(&z).unwrap();
        let ones = vec![c(1.0); 4];
        assert!(mm.m.mul_vec(&ones).iter().all(|x| x.norm() < 1e-15));
        assert_eq!(
            build_moser(&[c(1.0), c(1.0)]).err(),
            Some(Error::CoincidentPoints { i: 0, j: 1 })
        );
    }

    #[test]
    fn perelomov_on_and_off_the_locus() {
        assert!(perelomov_residual(&pair()).unwrap() <= 1e-13);
        assert_eq!(perelomov_residual(&[c(0.0)]).unwrap(), 0.0);
        let z = [Complex64::new(0.3, 1.1), c(-2.0), Complex64::new(0.7, -0.4)];
        assert!(perelomov_residual(&z).unwrap() > 1e-3);
    }

    #[test]
    fn eigenvalue_examples() {
        let cfg = NumericsConfig::default();
        let m = ComplexMatrix::from_real_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]).unwrap();
        let r = SpectrumReport::from_eigenvalues(None, eigenvalues(&m, &cfg).unwrap());
        assert_eq!(r.rounded, vec![0, 1]);
        assert!(r.residual < 1e-14);
        let i3 = SpectrumReport::from_eigenvalues(None, eigenvalues(&ComplexMatrix::identity(3), &cfg).unwrap());
        assert_eq!(i3.rounded, vec![1, 1, 1]);
        let d = ComplexMatrix::diagonal(&[c(-1.0), c(0.0), c(2.0)]);
        let r = SpectrumReport::from_eigenvalues(None, eigenvalues(&d, &cfg).unwrap());
        assert_eq!((r.rounded, r.residual), (vec![-1, 0, 2], 0.0));
    }

    #[test]
    fn inversion_examples() {
        let cfg = NumericsConfig::default();
        let (lambda, report) = invert_wronskian_map(&pair(), &cfg).unwrap();
        assert_eq!((lambda, report.rounded), (p(&[2]), vec![0, 1]));
        let (lambda, report) = invert_wronskian_map(&[c(0.0)], &cfg).unwrap();
        assert_eq!((lambda, report.rounded), (p(&[1]), vec![0]));
        let fig = p(&[10, 10, 4, 4, 3, 3]);
        let (lambda, report) = invert_wronskian_map(&simple_roots(&fig, &cfg).unwrap(), &cfg).unwrap();
        assert_eq!(lambda, fig);
        assert!(report.residual <= 1e-6, "{}", report.residual);
    }

    #[test]
    fn inversion_rejects_off_locus_points() {
        let cfg = NumericsConfig::default();
        let z = [c(-1.0), c(0.25), c(1.3)];
        assert!(matches!(
            invert_wronskian_map(&z, &cfg),
            Err(Error::NonIntegerSpectrum { .. })
        ));
    }

    #[test]
    fn hessian_examples() {
        let cfg = NumericsConfig::default();
        assert!(close(
            &hessian_k(&pair()).unwrap(),
            &[vec![2.5, -1.5], vec![-1.5, 2.5]],
            1e-14
        ));
        assert!(close(&hessian_k(&[c(0.0)]).unwrap(), &[vec![1.0]], 0.0));
        let roots = find_roots(&hermite_monic(3), &cfg).unwrap();
        let r = SpectrumReport::from_eigenvalues(None, eigenvalues(&hessian_k(&roots).unwrap(), &cfg).unwrap());
        assert_eq!(r.rounded, vec![1, 4, 9]);
    }

    #[test]
    fn hessian_spectrum_examples() {
        let cfg = NumericsConfig::default();
        assert_eq!(hessian_spectrum_check(&p(&[2]), &cfg).unwrap().rounded, vec![1, 4]);
        assert_eq!(hessian_spectrum_check(&p(&[1]), &cfg).unwrap().rounded, vec![1]);
        assert_eq!(
            hessian_spectrum_check(&p(&[2, 2]), &cfg).unwrap().rounded,
            vec![1, 4, 4, 9]
        );
        assert_eq!(
            hessian_spectrum_check(&p(&[2, 1]), &cfg),
            Err(Error::SimplicityGateFailed)
        );
    }

    #[test]
    fn one_row_identity() {
        let cfg = NumericsConfig::default();
        let r2 = one_row_identity_check(2, &cfg).unwrap();
        assert!(r2.identity_residual <= 1e-13);
        assert!(r2.commutator_31 > 1e-3);
        assert_eq!(one_row_identity_check(1, &cfg).unwrap().identity_residual, 0.0);
        for n in 3..=10 {
            assert!(one_row_identity_check(n, &cfg).unwrap().passed(1e-10), "n = {n}");
        }
    }

    #[test]
    fn report_json_roundtrip() {
        let cfg = NumericsConfig::default();
        let r = moser_spectrum_check(&p(&[3, 1]), &cfg).unwrap();
        let back: SpectrumReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}

//! Hermite polynomials, Wronskians and the Appell/Schur specialization.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{det_poly_matrix, int, rat, ExactPoly};
use crate::partitions::Partition;

/// Physicists' Hermite polynomial `H_k`, leading coefficient `2^k`.
pub fn hermite_physicist(k: usize) -> ExactPoly {
    let two_z = ExactPoly::from_ints(&[0, 2]);
    let mut prev = ExactPoly::zero();
    let mut cur = ExactPoly::one();
    for j in 0..k {
        // H_{j+1} = 2z H_j - 2j H_{j-1}
        let next = &(&two_z * &cur) - &prev.scale(&int(2 * j as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Monic Hermite polynomial `2^{-k} H_k`, an Appell sequence.
pub fn hermite_monic(k: usize) -> ExactPoly {
    // H~_{j+1} = z H~_j - (j/2) H~_{j-1}
    let z = ExactPoly::x();
    let mut prev = ExactPoly::zero();
    let mut cur = ExactPoly::one();
    for j in 0..k {
        let next = &(&z * &cur) - &prev.scale(&rat(j as i64, 2));
        prev = cur;
        cur = next;
    }
    cur
}

/// `det(D^{i} f_j)`, rows indexed by derivative order.
pub fn wronskian(fs: &[ExactPoly]) -> ExactPoly {
    let n = fs.len();
    let mut rows = Vec::with_capacity(n);
    let mut row: Vec<ExactPoly> = fs.to_vec();
    for _ in 0..n {
        let next = row.iter().map(ExactPoly::derivative).collect();
        rows.push(std::mem::replace(&mut row, next));
    }
    det_poly_matrix(&rows)
}

/// `W_λ = Wr(H~_{k_l}, ..., H~_{k_1})` with the degrees listed in increasing order.
///
/// The empty partition gives the constant 1.
pub fn wronskian_for_partition(lambda: &Partition) -> ExactPoly {
    let fs: Vec<ExactPoly> = lambda.degree_sequence().into_iter().rev().map(hermite_monic).collect();
    if fs.is_empty() {
        return ExactPoly::one();
    }
    wronskian(&fs)
}

/// Polynomial with Gaussian-rational coefficients `re + i*im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianPoly {
    pub re: ExactPoly,
    pub im: ExactPoly,
}

impl GaussianPoly {
    /// `c * i^e * p(i z)` for a real polynomial `p`, rational `c`.
    pub fn rotate(p: &ExactPoly, c: &BigRational, e: usize) -> GaussianPoly {
        let mut re = Vec::new();
        let mut im = Vec::new();
        for (k, a) in p.coeffs().iter().enumerate() {
            let v = a * c;
            // i^(k + e)
            let (r, m) = match (k + e) % 4 {
                0 => (v, BigRational::zero()),
                1 => (BigRational::zero(), v),
                2 => (-v, BigRational::zero()),
                _ => (BigRational::zero(), -v),
            };
            re.push(r);
            im.push(m);
        }
        GaussianPoly {
            re: ExactPoly::new(re),
            im: ExactPoly::new(im),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

/// Exact checks of `W_λ(-z) = (-1)^{|λ|} W_λ(z)` and
/// `W_{λ*}(z) = (-i)^{|λ|} W_λ(iz)`.
///
/// The second identity holds only up to the ratio of leading coefficients
/// (see [`conjugation_discrepancy`]), so it is compared between monic forms.
pub fn parity_conjugation_checks(lambda: &Partition) -> (bool, bool) {
    let n = lambda.size();
    let w = wronskian_for_partition(lambda).monic();
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let parity = w.reflect() == w.scale(&sign);
    let rotated = rotate_for_conjugate(&w, n);
    let conj = wronskian_for_partition(&lambda.conjugate()).monic();
    let conjugation = rotated.is_real() && rotated.re == conj;
    (parity, conjugation)
}

/// `(-i)^n W(iz) = (-1)^n i^n W(iz)`.
fn rotate_for_conjugate(w: &ExactPoly, n: usize) -> GaussianPoly {
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    GaussianPoly::rotate(w, &sign, n)
}

/// If `W_{λ*}(z) = c (-i)^{|λ|} W_λ(iz)` for a rational constant `c`, returns `c`.
///
/// `c` is the ratio of the leading coefficients, i.e. of the Vandermonde
/// products of the two degree sequences; it is 1 for self-conjugate `λ`.
pub fn conjugation_discrepancy(lambda: &Partition) -> Option<BigRational> {
    let n = lambda.size();
    let w = wronskian_for_partition(lambda);
    let rotated = rotate_for_conjugate(&w, n);
    if !rotated.is_real() {
        return None;
    }
    let conj = wronskian_for_partition(&lambda.conjugate());
    let c = conj.leading_coeff()? / rotated.re.leading_coeff()?;
    (rotated.re.scale(&c) == conj).then_some(c)
}

/// Appell data: `log f_A(t) = Σ_{k≥1} b_k t^k / k`, with `b[0]` holding `b_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellSpec {
    pub b: Vec<BigRational>,
}

impl AppellSpec {
    pub fn new(b: Vec<BigRational>) -> Self {
        AppellSpec { b }
    }

    /// `b = (0, -1/2)`, generating the monic Hermite polynomials.
    pub fn hermite() -> Self {
        AppellSpec {
            b: vec![int(0), rat(-1, 2)],
        }
    }

    /// `b_k`, 1-based, zero outside the support.
    pub fn b(&self, k: usize) -> BigRational {
        if k == 0 {
            return BigRational::zero();
        }
        self.b.get(k - 1).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Taylor coefficients `c_0..=c_n` of `f_A(t) = exp(Σ b_k t^k / k)`.
    fn f_series(&self, n: usize) -> Vec<BigRational> {
        // f' = g' f with g' = Σ b_k t^{k-1}, so m c_m = Σ_{j=1}^m b_j c_{m-j}.
        let mut c = vec![BigRational::one()];
        for m in 1..=n {
            let s = (1..=m).fold(BigRational::zero(), |acc, j| acc + self.b(j) * &c[m - j]);
            c.push(s / int(m as i64));
        }
        c
    }
}

/// `A_k(x) = k! [t^k] e^{xt} f_A(t)`.
pub fn appell_polynomials(spec: &AppellSpec, k: usize) -> ExactPoly {
    let c = spec.f_series(k);
    // k!/(k-m)! c_m x^{k-m}
    let mut coeffs = vec![BigRational::zero(); k + 1];
    let mut falling = BigRational::one();
    for (m, cm) in c.iter().enumerate() {
        coeffs[k - m] = cm * &falling;
        falling *= int((k - m) as i64);
    }
    ExactPoly::new(coeffs)
}

/// Schur function `s_λ` at `p_1 = x + b_1`, `p_k = b_k` (k ≥ 2), as a polynomial in `x`.
///
/// Power sums are converted to complete homogeneous functions with Newton's
/// identities, then `s_λ = det(h_{λ_i - i + j})`.
pub fn schur_specialized(lambda: &Partition, spec: &AppellSpec) -> ExactPoly {
    let l = lambda.len();
    if l == 0 {
        return ExactPoly::one();
    }
    let max_index = lambda.part(1) + l;
    let power_sum = |k: usize| {
        if k == 1 {
            &ExactPoly::x() + &ExactPoly::constant(spec.b(1))
        } else {
            ExactPoly::constant(spec.b(k))
        }
    };
    // k h_k = Σ_{i=1}^k p_i h_{k-i}
    let mut h = vec![ExactPoly::one()];
    for k in 1..=max_index {
        let s = (1..=k).fold(ExactPoly::zero(), |acc, i| &acc + &(&power_sum(i) * &h[k - i]));
        h.push(s.scale(&rat(1, k as i64)));
    }
    let entry = |i: usize, j: usize| {
        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            ExactPoly::zero()
        } else {
            h[idx as usize].clone()
        }
    };
    let rows: Vec<Vec<ExactPoly>> = (1..=l).map(|i| (1..=l).map(|j| entry(i, j)).collect()).collect();
    det_poly_matrix(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(c: &[BigRational]) -> ExactPoly {
        ExactPoly::new(c.to_vec())
    }

    #[test]
    fn physicist_hermite_values() {
        assert_eq!(hermite_physicist(0), ExactPoly::one());
        assert_eq!(hermite_physicist(1), ExactPoly::from_ints(&[0, 2]));
        assert_eq!(hermite_physicist(2), ExactPoly::from_ints(&[-2, 0, 4]));
        assert_eq!(hermite_physicist(3), ExactPoly::from_ints(&[0, -12, 0, 8]));
    }

    #[test]
    fn monic_hermite_values() {
        assert_eq!(hermite_monic(2), poly(&[rat(-1, 2), int(0), int(1)]));
        assert_eq!(hermite_monic(1), ExactPoly::x());
        assert_eq!(hermite_monic(3), poly(&[int(0), rat(-3, 2), int(0), int(1)]));
        for k in 0..15 {
            let scaled = hermite_physicist(k).scale(&rat(1, 1 << k));
            assert_eq!(hermite_monic(k), scaled);
            if k > 0 {
                assert_eq!(
                    hermite_monic(k).derivative(),
                    hermite_monic(k - 1).scale(&int(k as i64))
                );
            }
        }
    }

    #[test]
    fn wronskian_examples() {
        let z = ExactPoly::x();
        assert_eq!(wronskian(std::slice::from_ref(&z)), z);
        assert_eq!(
            wronskian(&[z.clone(), hermite_monic(2)]),
            poly(&[rat(1, 2), int(0), int(1)])
        );
        assert_eq!(wronskian(&[z, hermite_monic(3)]), ExactPoly::from_ints(&[0, 0, 0, 2]));
    }

    #[test]
    fn wronskian_for_partition_examples() {
        assert_eq!(wronskian_for_partition(&p("2")), poly(&[rat(-1, 2), int(0), int(1)]));
        assert_eq!(wronskian_for_partition(&p("1,1")), poly(&[rat(1, 2), int(0), int(1)]));
        assert_eq!(wronskian_for_partition(&p("2,1")), ExactPoly::from_ints(&[0, 0, 0, 2]));
        assert_eq!(wronskian_for_partition(&p("0")), ExactPoly::one());
    }

    #[test]
    fn parity_and_conjugation_examples() {
        assert_eq!(parity_conjugation_checks(&p("2")), (true, true));
        assert_eq!(parity_conjugation_checks(&p("1")), (true, true));
        assert_eq!(parity_conjugation_checks(&p("2,1")), (true, true));
        assert_eq!(conjugation_discrepancy(&p("2,1")), Some(int(1)));
        // degrees (1,4) vs (1,2,4): Vandermonde products 3 and 6
        assert_eq!(conjugation_discrepancy(&p("3,1")), Some(int(2)));
        assert_eq!(parity_conjugation_checks(&p("3,1")), (true, true));
    }

    #[test]
    fn schur_examples() {
        let hs = AppellSpec::hermite();
        assert_eq!(schur_specialized(&p("2"), &hs), poly(&[rat(-1, 4), int(0), rat(1, 2)]));
        assert_eq!(
            schur_specialized(&p("1"), &AppellSpec::new(vec![int(0), int(7)])),
            ExactPoly::x()
        );
        assert_eq!(
            schur_specialized(&p("2,1"), &hs),
            poly(&[int(0), int(0), int(0), rat(1, 3)])
        );
        assert_eq!(schur_specialized(&p("0"), &hs), ExactPoly::one());
    }

    #[test]
    fn appell_examples() {
        let hs = AppellSpec::hermite();
        assert_eq!(appell_polynomials(&hs, 2), hermite_monic(2));
        assert_eq!(
            appell_polynomials(&AppellSpec::new(vec![int(3), rat(2, 5)]), 0),
            ExactPoly::one()
        );
        assert_eq!(appell_polynomials(&hs, 3), hermite_monic(3));
    }

    #[test]
    fn appell_derivative_relation() {
        let spec = AppellSpec::new(vec![rat(1, 3), int(-2), rat(5, 7)]);
        for k in 1..10 {
            assert_eq!(
                appell_polynomials(&spec, k).derivative(),
                appell_polynomials(&spec, k - 1).scale(&int(k as i64))
            );
        }
    }
}

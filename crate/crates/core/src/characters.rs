//! Torus characters as integer Laurent polynomials in `μ`.
//!
//! The character of the tangent space at the fixed point `λ` is
//!
//! ```text
//! χ_λ(μ) = (μ - 2 + μ^{-1}) G(μ) G(μ^{-1}) + G(μ) + G(μ^{-1}),   G = Σ_□ μ^{c(□)}
//! ```
//!
//! and equals both `Σ_□ μ^{±(λ_{l(□)+1} - c(□))}` and `Σ_□ μ^{±h(□)}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::partitions::IntegerMultiset;
use crate::{Error, Partition, Result};

/// Finite sum `Σ c_e μ^e` with integer coefficients; zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<i64, i64>", into = "BTreeMap<i64, i64>")]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `μ^e + μ^{-e}`.
    pub fn pair(e: i64) -> Self {
        &Self::monomial(1, e) + &Self::monomial(1, -e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `p(μ^{-1})`.
    pub fn invert(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert()
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(0)
    }
}

impl From<LaurentPoly> for BTreeMap<i64, i64> {
    fn from(p: LaurentPoly) -> Self {
        p.terms
    }
}

impl TryFrom<BTreeMap<i64, i64>> for LaurentPoly {
    type Error = Error;
    fn try_from(m: BTreeMap<i64, i64>) -> Result<Self> {
        if m.values().any(|&c| c == 0) {
            return Err(Error::Parse("zero coefficient stored in a Laurent polynomial".into()));
        }
        Ok(LaurentPoly { terms: m })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent first, e.g. `mu^3 + 2*mu + 2*mu^-1 + mu^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "mu")?,
                (1, _) => write!(f, "{a}*mu")?,
                (_, 1) => write!(f, "mu^{e}")?,
                _ => write!(f, "{a}*mu^{e}")?,
            }
        }
        Ok(())
    }
}

/// `G_λ(μ) = Σ_□ μ^{c(□)}`.
pub fn content_generating(lambda: &Partition) -> LaurentPoly {
    LaurentPoly::from_terms(lambda.contents().iter().map(|(c, k)| (c, k as i64)))
}

/// `(μ - 2 + μ^{-1}) G(μ) G(μ^{-1}) + G(μ) + G(μ^{-1})`.
pub fn character_theorem4(lambda: &Partition) -> LaurentPoly {
    let g = content_generating(lambda);
    let gi = g.invert();
    let kernel = LaurentPoly::from_terms([(1, 1), (0, -2), (-1, 1)]);
    &(&(&kernel * &g) * &gi) + &(&g + &gi)
}

fn symmetric_sum(values: &IntegerMultiset) -> LaurentPoly {
    values.iter().fold(LaurentPoly::zero(), |acc, (s, k)| {
        &acc + &LaurentPoly::from_terms([(s, k as i64), (-s, k as i64)])
    })
}

/// `Σ_□ μ^{λ_{l(□)+1} - c(□)} + μ^{-(λ_{l(□)+1} - c(□))}`.
pub fn character_legs(lambda: &Partition) -> LaurentPoly {
    symmetric_sum(&lambda.cm_exponents())
}

/// `Σ_□ μ^{h(□)} + μ^{-h(□)}`.
pub fn character_hooks(lambda: &Partition) -> LaurentPoly {
    symmetric_sum(&lambda.hooks())
}

/// Closed form for the hook `(a + 1, 1^l)`.
pub fn one_hook_character(a: usize, l: usize) -> LaurentPoly {
    let (a, l) = (a as i64, l as i64);
    let mut chi = LaurentPoly::pair(a + l + 1);
    for j in (-l..=a).filter(|&j| j != 0) {
        chi = &chi + &LaurentPoly::pair(j);
    }
    chi
}

/// Positive weights `s` counted with the coefficient of `μ^s`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset(IntegerMultiset);

impl WeightMultiset {
    pub fn as_multiset(&self) -> &IntegerMultiset {
        &self.0
    }

    pub fn to_sorted_vec(&self) -> Vec<i64> {
        self.0.to_sorted_vec()
    }

    /// `{s^2}`: the predicted spectrum of the Hessian.
    pub fn squares(&self) -> IntegerMultiset {
        self.0.map(|s| s * s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn weights_from_character(chi: &LaurentPoly) -> Result<WeightMultiset> {
    if !chi.is_symmetric() {
        return Err(Error::AsymmetricCharacter);
    }
    if chi.constant_term() != 0 {
        return Err(Error::NonzeroConstantTerm);
    }
    if let Some((e, _)) = chi.terms().find(|&(_, c)| c < 0) {
        return Err(Error::NegativeCoefficient(e));
    }
    let mut out = IntegerMultiset::new();
    for (e, c) in chi.terms().filter(|&(e, _)| e > 0) {
        out.insert_many(e, c as usize);
    }
    Ok(WeightMultiset(out))
}

/// Signed small-oscillation frequencies of the spin Calogero–Moser system:
/// `±(a_α - a_β + i + j - 1 - λ^{(β)t}_j - λ^{(α)}_i)` over all `α, β` and
/// boxes `(i, j)` of `λ^{(β)}`.
pub fn spin_frequencies(lambdas: &[Partition], a: &[BigRational]) -> Result<Vec<BigRational>> {
    if lambdas.is_empty() || lambdas.len() != a.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} partitions but {} parameters",
            lambdas.len(),
            a.len()
        )));
    }
    let conjugates: Vec<Partition> = lambdas.iter().map(Partition::conjugate).collect();
    let mut out = Vec::new();
    for (alpha, la) in lambdas.iter().enumerate() {
        for (beta, lb) in lambdas.iter().enumerate() {
            for cell in lb.cells() {
                let (i, j) = (cell.row, cell.col);
                let shift = i as i64 + j as i64 - 1 - conjugates[beta].part(j) as i64 - la.part(i) as i64;
                let f = &a[alpha] - &a[beta] + BigRational::from_integer(shift.into());
                out.push(-f.clone());
                out.push(f);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::int;
    use crate::partitions::partitions_up_to;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn generating_function_examples() {
        assert_eq!(content_generating(&p(&[1])), LaurentPoly::one());
        assert_eq!(content_generating(&p(&[2, 1])), lp(&[(-1, 1), (0, 1), (1, 1)]));
        // (μ - 1) G = μ^{a+1} - μ^{-l} for a one-hook diagram
        for a in 0..5 {
            for l in 0..5 {
                let g = content_generating(&Partition::hook(a, l));
                let lhs = &lp(&[(1, 1), (0, -1)]) * &g;
                assert_eq!(lhs, lp(&[(a as i64 + 1, 1), (-(l as i64), -1)]));
            }
        }
    }

    #[test]
    fn theorem4_examples() {
        assert_eq!(character_theorem4(&p(&[1])), lp(&[(1, 1), (-1, 1)]));
        let want = lp(&[(3, 1), (-3, 1), (1, 2), (-1, 2)]);
        assert_eq!(character_theorem4(&p(&[2, 1])), want);
        assert_eq!(character_theorem4(&p(&[2])), lp(&[(2, 1), (-2, 1), (1, 1), (-1, 1)]));
    }

    #[test]
    fn three_forms_agree() {
        assert_eq!(character_legs(&p(&[2, 1])), lp(&[(3, 1), (-3, 1), (1, 2), (-1, 2)]));
        let want = lp(&[(3, 1), (-3, 1), (2, 2), (-2, 2), (1, 1), (-1, 1)]);
        assert_eq!(character_hooks(&p(&[2, 2])), want);
        for lambda in partitions_up_to(9) {
            let chi = character_theorem4(&lambda);
            assert_eq!(chi, character_legs(&lambda), "{lambda}");
            assert_eq!(chi, character_hooks(&lambda), "{lambda}");
            assert_eq!(chi.eval_at_one(), 2 * lambda.size() as i64);
            assert!(chi.is_symmetric());
            assert_eq!(chi, character_theorem4(&lambda.conjugate()));
        }
    }

    #[test]
    fn one_hook_examples() {
        assert_eq!(one_hook_character(1, 0), lp(&[(1, 1), (-1, 1), (2, 1), (-2, 1)]));
        assert_eq!(one_hook_character(0, 0), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(one_hook_character(0, 1), lp(&[(1, 1), (-1, 1), (2, 1), (-2, 1)]));
        for a in 0..=6 {
            for l in 0..=6 {
                assert_eq!(one_hook_character(a, l), character_theorem4(&Partition::hook(a, l)));
            }
        }
    }

    #[test]
    fn weights() {
        assert_eq!(
            weights_from_character(&lp(&[(1, 1), (-1, 1)])).unwrap().to_sorted_vec(),
            vec![1]
        );
        let w = weights_from_character(&lp(&[(3, 1), (-3, 1), (1, 2), (-1, 2)])).unwrap();
        assert_eq!(w.to_sorted_vec(), vec![1, 1, 3]);
        assert_eq!(w.squares().to_sorted_vec(), vec![1, 1, 9]);
        let row = weights_from_character(&character_theorem4(&Partition::row(7))).unwrap();
        assert_eq!(row.to_sorted_vec(), (1..=7).collect::<Vec<_>>());
        assert_eq!(weights_from_character(&lp(&[(1, 1)])), Err(Error::AsymmetricCharacter));
        assert_eq!(weights_from_character(&lp(&[(0, 2)])), Err(Error::NonzeroConstantTerm));
        assert_eq!(
            weights_from_character(&lp(&[(1, -1), (-1, -1)])),
            Err(Error::NegativeCoefficient(-1))
        );
    }

    #[test]
    fn spin_examples() {
        let f = spin_frequencies(&[p(&[2, 1])], &[int(0)]).unwrap();
        assert_eq!(f, [-3, -1, -1, 1, 1, 3].map(int).to_vec());
        let f = spin_frequencies(&[p(&[1]), Partition::empty()], &[int(0), int(5)]).unwrap();
        assert_eq!(f, [-5, -1, 1, 5].map(int).to_vec());
        let f = spin_frequencies(&[p(&[1]), p(&[1])], &[int(0), int(0)]).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|x| f.contains(&-x)));
        assert!(spin_frequencies(&[p(&[1])], &[]).is_err());
    }

    #[test]
    fn display_and_json() {
        let chi = character_theorem4(&p(&[2, 1]));
        assert_eq!(chi.to_string(), "mu^3 + 2*mu + 2*mu^-1 + mu^-3");
        assert_eq!(lp(&[(0, -4), (2, 1)]).to_string(), "mu^2 - 4");
        let json = serde_json::to_string(&chi).unwrap();
        assert_eq!(json, r#"{"-3":1,"-1":2,"1":2,"3":1}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), chi);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"1":0}"#).is_err());
    }
}

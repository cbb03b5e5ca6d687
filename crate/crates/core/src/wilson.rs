//! Exact fixed points of the Calogero–Moser space.
//!
//! For a partition with Frobenius coordinates `(a_1, …, a_k | l_1, …, l_k)`
//! put `n_i = a_i + l_i + 1` and `r_i = l_i + 1`. Then `Z` is block diagonal
//! with nilpotent Jordan blocks `Λ_{n_i}`, `vw` has blocks `n_i E(r_i, r_j)`,
//! and `X` is the unique solution of `[X, Z] + I = vw` supported on the
//! diagonals `col - row = r_j - r_i - 1`. The grading matrix `M` is diagonal
//! with blocks `diag(-l_i, …, a_i)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_poly::{int, rat, wronskian_for_partition, ExactPoly};
use crate::partitions::IntegerMultiset;
use crate::{Error, Partition, Result};

/// Dense exact matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{:?} times {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let x = self.get(i, j);
                        format!("{}/{}", x.numer(), x.denom())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| crate::exact_poly::parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Self::from_string_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// One principal hook: arm `a`, leg `l`, size `n = a + l + 1`, corner row `r = l + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookBlock {
    pub arm: usize,
    pub leg: usize,
    pub n: usize,
    pub r: usize,
}

fn hook_blocks(lambda: &Partition) -> Result<Vec<HookBlock>> {
    if lambda.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let fr = lambda.frobenius();
    Ok(fr
        .arms
        .iter()
        .zip(&fr.legs)
        .map(|(&arm, &leg)| HookBlock {
            arm,
            leg,
            n: arm + leg + 1,
            r: leg + 1,
        })
        .collect())
}

fn offsets(blocks: &[HookBlock]) -> Vec<usize> {
    blocks
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.n;
            Some(o)
        })
        .collect()
}

pub fn build_z(lambda: &Partition) -> Result<RationalMatrix> {
    let blocks = hook_blocks(lambda)?;
    let mut z = RationalMatrix::zeros(lambda.size(), lambda.size());
    for (b, o) in blocks.iter().zip(offsets(&blocks)) {
        for a in 0..b.n - 1 {
            z.set(o + a, o + a + 1, BigRational::one());
        }
    }
    Ok(z)
}

/// Solves `x_{a,b-1} - x_{a+1,b} = n_i δ_{a r_i} δ_{b r_j} - δ_ij δ_ab`
/// (1-based, out-of-range entries zero) for block `(i, j)`.
fn solve_block(bi: &HookBlock, bj: &HookBlock, same: bool, ij: (usize, usize)) -> Result<Vec<Vec<BigRational>>> {
    let (ni, nj) = (bi.n as i64, bj.n as i64);
    let d = bj.r as i64 - bi.r as i64 - 1;
    // unknowns u(a) = x_{a, a+d}
    let unknowns: Vec<i64> = (1..=ni).filter(|&a| (1..=nj).contains(&(a + d))).collect();
    let col_of = |a: i64| unknowns.iter().position(|&u| u == a);
    let width = unknowns.len();

    let mut system: Vec<Vec<BigRational>> = Vec::new();
    for a in 1..=ni {
        let b = a + d + 1;
        if !(1..=nj).contains(&b) {
            continue;
        }
        let mut row = vec![BigRational::zero(); width + 1];
        if let Some(c) = col_of(a).filter(|_| b > 1) {
            row[c] += BigRational::one();
        }
        if let Some(c) = col_of(a + 1) {
            row[c] -= BigRational::one();
        }
        let mut rhs = BigRational::zero();
        if a == bi.r as i64 && b == bj.r as i64 {
            rhs += int(ni);
        }
        if same && a == b {
            rhs -= BigRational::one();
        }
        row[width] = rhs;
        system.push(row);
    }

    let solution = gauss_unique(system, width).ok_or(Error::InconsistentBlockSystem(ij.0, ij.1))?;
    let mut block = vec![vec![BigRational::zero(); bj.n]; bi.n];
    for (k, &a) in unknowns.iter().enumerate() {
        block[(a - 1) as usize][(a + d - 1) as usize] = solution[k].clone();
    }
    Ok(block)
}

/// Exact row reduction; `None` unless the system has exactly one solution.
fn gauss_unique(mut rows: Vec<Vec<BigRational>>, width: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return None;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..=width {
                    let delta = &f * &rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[width].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][width].clone()).collect())
}

pub fn build_x(lambda: &Partition) -> Result<RationalMatrix> {
    let blocks = hook_blocks(lambda)?;
    let offs = offsets(&blocks);
    let mut x = RationalMatrix::zeros(lambda.size(), lambda.size());
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            let block = solve_block(bi, bj, i == j, (i, j))?;
            for (a, row) in block.into_iter().enumerate() {
                for (b, val) in row.into_iter().enumerate() {
                    if !val.is_zero() {
                        x.set(offs[i] + a, offs[j] + b, val);
                    }
                }
            }
        }
    }
    // uniqueness is claimed but cheap to confirm
    let z = build_z(lambda)?;
    let (v, w) = build_vw(lambda)?;
    let lhs = x.commutator(&z)?.add(&RationalMatrix::identity(lambda.size()))?;
    if lhs != v.mul(&w)? {
        return Err(Error::InconsistentBlockSystem(0, 0));
    }
    Ok(x)
}

/// Column `v` (block `n_i e_{r_i}`) and row `w` (block `e_{r_j}^T`).
pub fn build_vw(lambda: &Partition) -> Result<(RationalMatrix, RationalMatrix)> {
    let blocks = hook_blocks(lambda)?;
    let n = lambda.size();
    let mut v = RationalMatrix::zeros(n, 1);
    let mut w = RationalMatrix::zeros(1, n);
    for (b, o) in blocks.iter().zip(offsets(&blocks)) {
        v.set(o + b.r - 1, 0, int(b.n as i64));
        w.set(0, o + b.r - 1, BigRational::one());
    }
    Ok((v, w))
}

pub fn build_m(lambda: &Partition) -> Result<RationalMatrix> {
    let blocks = hook_blocks(lambda)?;
    let mut m = RationalMatrix::zeros(lambda.size(), lambda.size());
    for (b, o) in blocks.iter().zip(offsets(&blocks)) {
        for a in 0..b.n {
            m.set(o + a, o + a, int(a as i64 + 1 - b.r as i64));
        }
    }
    Ok(m)
}

/// `(X, Z) = (½(L + Q), L - Q)`.
pub fn nu_map(l: &RationalMatrix, q: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix)> {
    Ok((l.add(q)?.scale(&rat(1, 2)), l.sub(q)?))
}

/// `(L, Q) = (X + ½Z, X - ½Z)`.
pub fn nu_inverse(x: &RationalMatrix, z: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix)> {
    let half_z = z.scale(&rat(1, 2));
    Ok((x.add(&half_z)?, x.sub(&half_z)?))
}

/// The full fixed-point data attached to a nonempty partition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WilsonData {
    pub partition: Partition,
    pub hooks: Vec<HookBlock>,
    pub x: RationalMatrix,
    pub z: RationalMatrix,
    pub m: RationalMatrix,
    pub v: RationalMatrix,
    pub w: RationalMatrix,
}

impl WilsonData {
    pub fn new(lambda: &Partition) -> Result<Self> {
        let (v, w) = build_vw(lambda)?;
        Ok(WilsonData {
            partition: lambda.clone(),
            hooks: hook_blocks(lambda)?,
            x: build_x(lambda)?,
            z: build_z(lambda)?,
            m: build_m(lambda)?,
            v,
            w,
        })
    }

    /// `(L, Q)`.
    pub fn lq(&self) -> (RationalMatrix, RationalMatrix) {
        nu_inverse(&self.x, &self.z).expect("X and Z share a shape")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Outcome of each exact relation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    /// `[X, Z] + I = vw`
    pub wilson: bool,
    /// `[L, Q] = I - vw`
    pub rel_i: bool,
    /// `[M, Q] = L`
    pub rel_ii: bool,
    /// `[M, L] = Q`
    pub rel_iii: bool,
    /// `Mv = 0` and `wM = 0`
    pub rel_iv: bool,
    /// `[M, X] = X`
    pub m_x: bool,
    /// `[M, Z] = -Z`
    pub m_z: bool,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.wilson && self.rel_i && self.rel_ii && self.rel_iii && self.rel_iv && self.m_x && self.m_z
    }
}

pub fn verify_relations(d: &WilsonData) -> RelationReport {
    let check = |f: &dyn Fn() -> Result<bool>| f().unwrap_or(false);
    let n = d.x.shape().0;
    let id = RationalMatrix::identity(n);
    let (l, q) = d.lq();
    let vw = || d.v.mul(&d.w);
    RelationReport {
        wilson: check(&|| Ok(d.x.commutator(&d.z)?.add(&id)? == vw()?)),
        rel_i: check(&|| Ok(l.commutator(&q)? == id.sub(&vw()?)?)),
        rel_ii: check(&|| Ok(d.m.commutator(&q)? == l)),
        rel_iii: check(&|| Ok(d.m.commutator(&l)? == q)),
        rel_iv: check(&|| Ok(d.m.mul(&d.v)?.is_zero() && d.w.mul(&d.m)?.is_zero())),
        m_x: check(&|| Ok(d.m.commutator(&d.x)? == d.x)),
        m_z: check(&|| Ok(d.m.commutator(&d.z)? == d.z.scale(&int(-1)))),
    }
}

/// Diagonal of `M` as an integer multiset.
pub fn m_diagonal_multiset(m: &RationalMatrix) -> IntegerMultiset {
    m.diagonal()
        .iter()
        .map(|x| {
            use num_traits::ToPrimitive;
            x.to_integer().to_i64().expect("diagonal entries are small integers")
        })
        .collect()
}

/// `det(zI - A)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(a: &RationalMatrix) -> Result<ExactPoly> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "characteristic polynomial of a non-square matrix".into(),
        ));
    }
    let n = a.shape().0;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let id = RationalMatrix::identity(n);
    let mut mk = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        mk = a.mul(&mk)?.add(&id.scale(&coeffs[n - k + 1]))?;
        coeffs[n - k] = -a.mul(&mk)?.trace() / int(k as i64);
    }
    Ok(ExactPoly::new(coeffs))
}

/// Characteristic polynomial of `Q_λ = X_λ - ½Z_λ`.
pub fn charpoly_q(lambda: &Partition) -> Result<ExactPoly> {
    let (_, q) = nu_inverse(&build_x(lambda)?, &build_z(lambda)?)?;
    charpoly(&q)
}

/// `A` with `W_λ = A · det(zI - Q_λ)`, or `None` if the two are not proportional.
pub fn charpoly_constant(lambda: &Partition) -> Result<Option<BigRational>> {
    let cp = charpoly_q(lambda)?;
    let w = wronskian_for_partition(lambda);
    let a = w.leading_coeff().cloned().unwrap_or_else(BigRational::zero);
    Ok((cp.scale(&a) == w).then_some(a))
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExpressionReport, PositivityError};
use crate::label::{all_minors, ChamberLabel};

/// Square matrix with exact rational entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix { n, entries: vec![BigRational::zero(); n * n] };
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RationalMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    /// Symmetric Pascal matrix, entry `(i, j)` = C(i + j, i) (0-based).
    pub fn binomial(n: usize) -> Self {
        let mut m = RationalMatrix { n, entries: vec![BigRational::one(); n * n] };
        for i in 1..n {
            for j in 1..n {
                let v = m.get(i - 1, j).clone() + m.get(i, j - 1);
                m.entries[i * n + j] = v;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.n + col]
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        RationalMatrix { n, entries }
    }

    /// Determinant of the submatrix on 1-based `rows` and `cols`, by
    /// fraction-exact Gaussian elimination.
    pub fn submatrix_det(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        let mut a: Vec<Vec<BigRational>> =
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r - 1, c - 1).clone()).collect()).collect();
        let mut det = BigRational::one();
        for col in 0..k {
            let Some(pivot) = (col..k).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..k {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                let (upper, lower) = a.split_at_mut(r);
                for (x, y) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    /// The minor with rows `r` (red part) and columns `b` (blue part);
    /// `(∅,∅)` is 1.
    pub fn minor(&self, label: ChamberLabel) -> BigRational {
        if label.is_empty() {
            return BigRational::one();
        }
        self.submatrix_det(&label.red_elements(), &label.blue_elements())
    }

    /// Checks every minor; returns the first that is not positive.
    pub fn first_nonpositive_minor(&self) -> Option<ChamberLabel> {
        all_minors(self.n).into_iter().find(|&l| !self.minor(l).is_positive())
    }

    /// Returns `self` if every minor is positive.
    pub fn try_totally_positive(self) -> Result<Self, PositivityError> {
        match self.first_nonpositive_minor() {
            Some(l) => Err(PositivityError::NotTotallyPositive(l)),
            None => Ok(self),
        }
    }
}

impl std::fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A totally positive matrix: `L · D · U` with `L` and `U` products of
/// elementary bidiagonal factors along a reduced word of the longest
/// permutation and `D` diagonal, all parameters positive random rationals.
/// The result is checked minor by minor before it is returned.
pub fn tp_matrix(n: usize, seed: u64) -> Result<RationalMatrix, PositivityError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut param = || BigRational::new(BigInt::from(rng.gen_range(1..=9)), BigInt::from(rng.gen_range(1..=9)));
    // s_1..s_{n-1}, s_1..s_{n-2}, ..., s_1
    let word: Vec<usize> = (1..n).rev().flat_map(|k| 0..k).collect();
    let mut lower = RationalMatrix::identity(n);
    for &i in &word {
        let mut e = RationalMatrix::identity(n);
        e.entries[(i + 1) * n + i] = param();
        lower = lower.mul(&e);
    }
    let mut diag = RationalMatrix::identity(n);
    for i in 0..n {
        diag.entries[i * n + i] = param();
    }
    let mut upper = RationalMatrix::identity(n);
    for &i in &word {
        let mut e = RationalMatrix::identity(n);
        e.entries[i * n + i + 1] = param();
        upper = upper.mul(&e);
    }
    lower.mul(&diag).mul(&upper).try_totally_positive()
}

/// Evaluates the report's expression at the base chamber minors of `m` and
/// compares with the target minor of `m`.
pub fn numeric_check(report: &ExpressionReport, m: &RationalMatrix) -> Result<bool, PositivityError> {
    let point: Vec<BigRational> = report.expression.vars().labels().iter().map(|&l| m.minor(l)).collect();
    let value = report.expression.eval(&point)?;
    Ok(value == m.minor(report.target.label()))
}

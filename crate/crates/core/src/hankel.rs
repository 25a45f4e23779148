//! Exact dense matrices, reciprocal Hankel construction, the fraction-free
//! inversion oracle, and the denominator-cleared polynomial identity check.
//!
//! Math-facing indices are 1-based throughout, as in every entry formula.

use std::fmt;
use std::time::{Duration, Instant};

use num_integer::Integer as _;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::closedform::MatrixSpec;
use crate::error::{domain, Error, Result};
use crate::exact::{IntPoly, Integer, Rational};
use crate::sequences::{family_term, fibonacci_poly_table, fibonacci_poly_table_at, FamilySpec, Term};

/// Ring element stored in an [`ExactMatrix`].
pub trait Element: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
}

impl Element for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Element for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// Dense row-major matrix over an exact element type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Element> ExactMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrices must be at least 1x1".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds a matrix from a 1-based entry function.
    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<T>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j)?);
            }
        }
        Self::new(rows, cols, entries)
    }

    /// Like [`Self::try_from_fn`] but evaluates entries concurrently. The
    /// result does not depend on scheduling; the reported error is the one
    /// at the first failing position in row-major order.
    pub fn par_try_from_fn(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Result<T> + Sync,
    ) -> Result<Self> {
        let entries = (0..rows * cols)
            .into_par_iter()
            .map(|idx| f(idx / cols + 1, idx % cols + 1))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![T::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = T::one();
        }
        ExactMatrix { rows: n, cols: n, entries }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry `(i, j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &T {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "entry ({i}, {j}) outside a {}x{} matrix",
            self.rows,
            self.cols
        );
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.cols)
    }

    pub fn map<U: Element>(&self, f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Element>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<ExactMatrix<U>> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 1..=self.cols {
            for i in 1..=self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (1..=self.rows).all(|i| (i + 1..=self.cols).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// First 1-based position (row-major) where `self` differs from the
    /// identity.
    pub fn first_non_identity(&self) -> Option<(usize, usize)> {
        let one = T::one();
        let zero = T::zero();
        (1..=self.rows)
            .flat_map(|i| (1..=self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.entry(i, j) != if i == j { &one } else { &zero })
    }
}

/// Exact matrix product.
pub fn mat_mul<T: Element>(a: &ExactMatrix<T>, b: &ExactMatrix<T>) -> Result<ExactMatrix<T>> {
    if a.cols != b.rows {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let entries = (0..a.rows * b.cols)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / b.cols, idx % b.cols);
            (0..a.cols).fold(T::zero(), |acc, k| {
                let x = &a.entries[i * a.cols + k];
                let y = &b.entries[k * b.cols + j];
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    acc.add_ref(&x.mul_ref(y))
                }
            })
        })
        .collect();
    Ok(ExactMatrix {
        rows: a.rows,
        cols: b.cols,
        entries,
    })
}

/// `R_n(a_k)`: the `n x n` matrix with entry `(i, j)` equal to
/// `1 / a_{i+j-1}`.
pub fn build_reciprocal_hankel(spec: &FamilySpec, n: usize) -> Result<ExactMatrix<Rational>> {
    if n == 0 {
        return Err(domain("matrix size must be at least 1"));
    }
    if spec.is_polynomial() {
        return Err(Error::UnsupportedElementKind(spec.name().into()));
    }
    let terms = (1..2 * n)
        .map(|k| match family_term(spec, k as i64)? {
            Term::Int(v) => Rational::from_integer(v).inv(),
            Term::Poly(_) => Err(Error::UnsupportedElementKind(spec.name().into())),
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::try_from_fn(n, n, |i, j| Ok(terms[i + j - 2].clone()))
}

/// The Fibonacci-polynomial reciprocal Hankel matrix with `x` specialised to
/// an integer.
pub fn fibpoly_hankel_at(n: usize, x: &Integer) -> Result<ExactMatrix<Rational>> {
    if n == 0 {
        return Err(domain("matrix size must be at least 1"));
    }
    let f = fibonacci_poly_table_at(2 * n, x);
    ExactMatrix::try_from_fn(n, n, |i, j| Rational::from_integer(f[i + j - 1].clone()).inv())
}

fn exact_quotient(num: Integer, den: &Integer) -> Result<Integer> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Internal("fraction-free elimination step was not exact".into()));
    }
    Ok(q)
}

/// Inverse by fraction-free (Bareiss) Gauss-Jordan elimination.
///
/// Rows are first scaled to integers (`D m` with `D` diagonal), the
/// augmented system `[D m | I]` is reduced without fractions until the left
/// block is `det * I`, and the right block, an adjugate, is divided back.
/// The result is accepted only after `m * inv = I` has been checked exactly.
pub fn bareiss_inverse(m: &ExactMatrix<Rational>) -> Result<ExactMatrix<Rational>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "cannot invert a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let width = 2 * n;

    let scales: Vec<Integer> = m
        .rows_iter()
        .map(|row| row.iter().fold(Integer::one(), |acc, q| acc.lcm(q.denom())))
        .collect();
    let mut aug: Vec<Vec<Integer>> = m
        .rows_iter()
        .zip(&scales)
        .enumerate()
        .map(|(i, (row, s))| {
            let mut out: Vec<Integer> = row.iter().map(|q| q.numer() * (s / q.denom())).collect();
            out.extend((0..n).map(|j| if i == j { Integer::one() } else { Integer::zero() }));
            out
        })
        .collect();

    let mut prev = Integer::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !aug[r][k].is_zero()).ok_or(Error::Singular)?;
        aug.swap(k, pivot);
        let pivot_row = aug[k].clone();
        let pk = pivot_row[k].clone();
        let updated: Vec<(usize, Vec<Integer>)> = (0..n)
            .into_par_iter()
            .filter(|&i| i != k)
            .map(|i| {
                let row = &aug[i];
                let factor = &row[k];
                let new_row = (0..width)
                    .map(|j| exact_quotient(&pk * &row[j] - factor * &pivot_row[j], &prev))
                    .collect::<Result<Vec<_>>>()?;
                Ok((i, new_row))
            })
            .collect::<Result<_>>()?;
        for (i, row) in updated {
            aug[i] = row;
        }
        prev = pk;
    }

    let det = prev;
    if (0..n).any(|i| aug[i][i] != det) {
        return Err(Error::Internal("elimination did not reach a scalar diagonal".into()));
    }
    let inverse = ExactMatrix::try_from_fn(n, n, |i, j| {
        Rational::new(&aug[i - 1][n + j - 1] * &scales[j - 1], det.clone())
    })?;
    if mat_mul(m, &inverse)?.first_non_identity().is_some() {
        return Err(Error::Internal("oracle inverse failed m * inv = I".into()));
    }
    Ok(inverse)
}

/// Either kind of matrix entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Rational(Rational),
    Poly(IntPoly),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Rational(q) => q.fmt(f),
            Entry::Poly(p) => p.fmt(f),
        }
    }
}

/// First position where a product failed to match the identity.
///
/// For numeric checks `value` is the offending product entry. For the
/// cleared polynomial check it is the residual `sum - delta * P_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub i: usize,
    pub m: usize,
    pub value: Entry,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub spec: MatrixSpec,
    pub n: usize,
    pub identity_holds: bool,
    pub first_failure: Option<Failure>,
    /// For a failed numeric check, the first entry of the candidate that
    /// differs from the oracle inverse.
    pub first_entry_mismatch: Option<(usize, usize)>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub(crate) fn from_failure(spec: MatrixSpec, first_failure: Option<Failure>, start: Instant) -> Self {
        VerificationReport {
            spec,
            n: spec.n,
            identity_holds: first_failure.is_none(),
            first_failure,
            first_entry_mismatch: None,
            elapsed: start.elapsed(),
        }
    }
}

/// Checks `inv * R_n(f_k(x)) = I` as a polynomial identity with denominators
/// cleared.
///
/// With `P_m = prod_{j=1..n} f_{j+m-1}`, entry `(i, m)` of the product is
/// `1` iff `sum_j inv(i, j) * (P_m / f_{j+m-1}) = delta_{im} * P_m`, and every
/// quotient `P_m / f_{j+m-1}` is itself an exact polynomial.
pub fn cleared_identity_check(
    spec: &MatrixSpec,
    inv_entry: impl Fn(usize, usize) -> Result<IntPoly> + Sync,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if !spec.family.is_polynomial() {
        return Err(domain(format!(
            "cleared identity check applies to fibpoly, not {}",
            spec.family
        )));
    }
    let n = spec.n;
    if n == 0 {
        return Err(domain("matrix size must be at least 1"));
    }
    let inverse = ExactMatrix::par_try_from_fn(n, n, &inv_entry)?;
    let f = fibonacci_poly_table(2 * n);

    // cofactors[m-1][j-1] = P_m / f_{j+m-1}
    let cleared: Vec<(IntPoly, Vec<IntPoly>)> = (1..=n)
        .into_par_iter()
        .map(|m| {
            let product = (1..=n).fold(IntPoly::one(), |acc, j| &acc * &f[j + m - 1]);
            let cofactors = (1..=n)
                .map(|j| product.exact_div(&f[j + m - 1]))
                .collect::<Result<Vec<_>>>()?;
            Ok((product, cofactors))
        })
        .collect::<Result<_>>()?;

    let first_failure = (1..=n)
        .into_par_iter()
        .map(|i| {
            (1..=n).find_map(|m| {
                let (product, cofactors) = &cleared[m - 1];
                let sum = (1..=n).fold(IntPoly::zero(), |acc, j| {
                    &acc + &(inverse.entry(i, j) * &cofactors[j - 1])
                });
                let residual = if i == m { &sum - product } else { sum };
                (!residual.is_zero()).then_some(Failure {
                    i,
                    m,
                    value: Entry::Poly(residual),
                })
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();

    Ok(VerificationReport::from_failure(*spec, first_failure, start))
}

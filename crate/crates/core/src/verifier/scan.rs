use num_integer::Integer as _;
use num_traits::One;
use rayon::prelude::*;

use crate::closedform::{assemble_inverse, MatrixSpec, SignVariant};
use crate::error::{domain, Result};
use crate::exact::{Integer, Rational};
use crate::hankel::{bareiss_inverse, build_reciprocal_hankel, ExactMatrix};
use crate::sequences::FamilySpec;

use super::first_difference;

/// The maximal prime powers `p^a` with `p^a | r` and `p^(a+1)` not dividing
/// `r`, in increasing order of `p`.
pub fn maximal_prime_powers(mut r: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= r {
        if r.is_multiple_of(p) {
            let mut q = 1;
            while r.is_multiple_of(p) {
                r /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if r > 1 {
        out.push(r);
    }
    out
}

/// Predicted integrality of the inverse of `R_n(C(k+r-1, r))`: for every
/// maximal prime power `q` dividing `r`, `n = 0` or `n = 1 (mod q)`.
///
/// Requiring the congruence for every prime power dividing `r`, maximal or
/// not, gives the same predicate: `n = 0, 1 (mod p^a)` implies the same
/// residues modulo any `p^b` with `b <= a`.
pub fn integrality_predicate(n: u64, r: u64) -> bool {
    maximal_prime_powers(r)
        .into_iter()
        .all(|q| matches!(n % q, 0 | 1))
}

/// One cell of the integrality scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub n: usize,
    pub r: u32,
    pub is_integral: bool,
    pub max_denominator: Integer,
    pub predicted_integral: bool,
    pub agrees: bool,
    /// Every denominator of the inverse divides `r`.
    pub denominators_divide_r: bool,
}

fn denominator_stats(m: &ExactMatrix<Rational>) -> (Integer, Integer) {
    m.entries().iter().fold((Integer::one(), Integer::one()), |(max, lcm), q| {
        let d = q.denom();
        (if d > &max { d.clone() } else { max }, lcm.lcm(d))
    })
}

pub fn integrality_cell(n: usize, r: u32) -> Result<ScanRow> {
    if n == 0 || r == 0 {
        return Err(domain("scan cells need n >= 1 and r >= 1"));
    }
    let inverse = bareiss_inverse(&build_reciprocal_hankel(&FamilySpec::B { r }, n)?)?;
    let (max_denominator, lcm) = denominator_stats(&inverse);
    let is_integral = max_denominator.is_one();
    let predicted_integral = integrality_predicate(n as u64, r as u64);
    Ok(ScanRow {
        n,
        r,
        is_integral,
        max_denominator,
        predicted_integral,
        agrees: is_integral == predicted_integral,
        denominators_divide_r: (Integer::from(r) % lcm) == Integer::from(0),
    })
}

/// Streams the scan rows to `sink` in `(r, n)` order. Cells of one `r` are
/// computed concurrently and emitted once that `r` is complete.
pub fn integrality_scan_with(n_max: usize, r_max: u32, mut sink: impl FnMut(&ScanRow)) -> Result<()> {
    if n_max == 0 || r_max == 0 {
        return Err(domain("scan bounds must be at least 1"));
    }
    for r in 1..=r_max {
        let rows = (1..=n_max)
            .into_par_iter()
            .map(|n| integrality_cell(n, r))
            .collect::<Result<Vec<_>>>()?;
        rows.iter().for_each(&mut sink);
    }
    Ok(())
}

pub fn integrality_scan(n_max: usize, r_max: u32) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    integrality_scan_with(n_max, r_max, |row| rows.push(row.clone()))?;
    Ok(rows)
}

/// One cell of the Fibonomial scan for a single sign variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibonomialScanRow {
    pub n: usize,
    pub r: u32,
    pub sign_variant: SignVariant,
    pub formula_matches: bool,
    pub first_mismatch: Option<(usize, usize)>,
    pub is_integral: bool,
    pub max_denominator: Integer,
    pub binomial_is_integral: bool,
    /// Observation only: whether integrality coincides with the binomial
    /// family at the same `(n, r)`.
    pub integrality_matches_binomial: bool,
}

fn d_oracle(n: usize, r: u32) -> Result<ExactMatrix<Rational>> {
    bareiss_inverse(&build_reciprocal_hankel(&FamilySpec::D { r }, n)?)
}

fn closed_d(n: usize, r: u32, variant: SignVariant) -> Result<ExactMatrix<Rational>> {
    let spec = MatrixSpec::new(FamilySpec::D { r }, n, variant)?;
    Ok(assemble_inverse(&spec)?.as_rational().cloned().expect("numeric family"))
}

pub fn fibonomial_cell(n: usize, r: u32, variant: SignVariant) -> Result<FibonomialScanRow> {
    let oracle = d_oracle(n, r)?;
    let first_mismatch = first_difference(&closed_d(n, r, variant)?, &oracle);
    let (max_denominator, _) = denominator_stats(&oracle);
    let is_integral = max_denominator.is_one();
    let binomial_is_integral = integrality_cell(n, r)?.is_integral;
    Ok(FibonomialScanRow {
        n,
        r,
        sign_variant: variant,
        formula_matches: first_mismatch.is_none(),
        first_mismatch,
        is_integral,
        max_denominator,
        binomial_is_integral,
        integrality_matches_binomial: is_integral == binomial_is_integral,
    })
}

/// Compares the Fibonomial closed form against the elimination oracle for
/// `1 <= n <= n_max`, `2 <= r <= r_max`, rows in `(r, n)` order.
pub fn fibonomial_scan(n_max: usize, r_max: u32, variant: SignVariant) -> Result<Vec<FibonomialScanRow>> {
    if n_max == 0 || r_max < 2 {
        return Err(domain("Fibonomial scan needs n_max >= 1 and r_max >= 2"));
    }
    let cells: Vec<(u32, usize)> = (2..=r_max).flat_map(|r| (1..=n_max).map(move |n| (r, n))).collect();
    cells
        .into_par_iter()
        .map(|(r, n)| fibonomial_cell(n, r, variant))
        .collect()
}

/// Which sign variants reproduce the oracle inverse at one `(n, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantCell {
    pub n: usize,
    pub r: u32,
    pub validating: Vec<SignVariant>,
}

/// Tries every sign variant against one oracle inverse per cell.
pub fn sign_variant_survey(n_max: usize, r_max: u32) -> Result<Vec<VariantCell>> {
    if n_max == 0 || r_max < 2 {
        return Err(domain("survey needs n_max >= 1 and r_max >= 2"));
    }
    let cells: Vec<(u32, usize)> = (2..=r_max).flat_map(|r| (1..=n_max).map(move |n| (r, n))).collect();
    cells
        .into_par_iter()
        .map(|(r, n)| {
            let oracle = d_oracle(n, r)?;
            let validating = SignVariant::ALL
                .into_iter()
                .filter_map(|v| match closed_d(n, r, v) {
                    Ok(m) => first_difference(&m, &oracle).is_none().then_some(Ok(v)),
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(VariantCell { n, r, validating })
        })
        .collect()
}

/// The variant that validates every cell, provided exactly one does.
pub fn consistent_variant(cells: &[VariantCell]) -> Option<SignVariant> {
    if cells.is_empty() {
        return None;
    }
    let universal: Vec<SignVariant> = SignVariant::ALL
        .into_iter()
        .filter(|v| cells.iter().all(|c| c.validating.contains(v)))
        .collect();
    match universal.as_slice() {
        [v] => Some(*v),
        _ => None,
    }
}

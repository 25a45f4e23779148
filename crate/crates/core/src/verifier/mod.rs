//! End-to-end verification of the closed forms, the two conjecture scans, and
//! pointwise checks of the recurrences and telescoping certificates behind
//! the inverse theorems.

mod certificates;
mod scan;

use std::time::Instant;

pub use certificates::{
    check_certificate, check_certificate_with, BoundaryCheck, CertGrid, CertReport, CertificateId,
    CheckOptions, Reading, Violation,
};
pub use scan::{
    consistent_variant, fibonomial_cell, fibonomial_scan, integrality_cell, integrality_predicate,
    integrality_scan, integrality_scan_with, maximal_prime_powers, sign_variant_survey,
    FibonomialScanRow, ScanRow, VariantCell,
};

use crate::closedform::{assemble_inverse, AnyMatrix, MatrixSpec};
use crate::error::Result;
use crate::exact::Rational;
use crate::hankel::{
    bareiss_inverse, build_reciprocal_hankel, cleared_identity_check, mat_mul, Entry, ExactMatrix,
    Failure, VerificationReport,
};
use crate::sequences::FamilySpec;

fn first_failure(product: &ExactMatrix<Rational>) -> Option<Failure> {
    product.first_non_identity().map(|(i, m)| Failure {
        i,
        m,
        value: Entry::Rational(product.entry(i, m).clone()),
    })
}

/// Checks that the closed-form inverse really is the inverse.
///
/// Numeric families are checked exactly in both orders, `inv * R` first.
/// `fibpoly` goes through [`cleared_identity_check`].
pub fn verify_inverse(spec: &MatrixSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    match assemble_inverse(spec)? {
        AnyMatrix::Poly(v) => cleared_identity_check(spec, |i, j| Ok(v.entry(i, j).clone())),
        AnyMatrix::Rational(inv) => {
            let r = build_reciprocal_hankel(&spec.family, spec.n)?;
            verify_against_from(spec, &inv, &r, start)
        }
    }
}

/// Checks a supplied candidate inverse against `R_n` of the requested family.
pub fn verify_matrix(spec: &MatrixSpec, candidate: &ExactMatrix<Rational>) -> Result<VerificationReport> {
    let start = Instant::now();
    let r = build_reciprocal_hankel(&spec.family, spec.n)?;
    verify_against_from(spec, candidate, &r, start)
}

/// Checks `inv` against an explicitly given matrix `r`, e.g. `R_n(f_k(x))`
/// at a fixed `x`. `spec` only labels the report.
pub fn verify_against(
    spec: &MatrixSpec,
    inv: &ExactMatrix<Rational>,
    r: &ExactMatrix<Rational>,
) -> Result<VerificationReport> {
    verify_against_from(spec, inv, r, Instant::now())
}

fn verify_against_from(
    spec: &MatrixSpec,
    inv: &ExactMatrix<Rational>,
    r: &ExactMatrix<Rational>,
    start: Instant,
) -> Result<VerificationReport> {
    let failure = match first_failure(&mat_mul(inv, r)?) {
        Some(f) => Some(f),
        None => first_failure(&mat_mul(r, inv)?),
    };
    let mut report = VerificationReport::from_failure(*spec, failure, start);
    if !report.identity_holds {
        let oracle = bareiss_inverse(r)?;
        report.first_entry_mismatch = first_difference(inv, &oracle);
        report.elapsed = start.elapsed();
    }
    Ok(report)
}

/// Outcome of comparing the closed form against the elimination oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub spec: MatrixSpec,
    pub matches: bool,
    /// First 1-based position where the two differ.
    pub first_mismatch: Option<(usize, usize)>,
}

/// Compares [`assemble_inverse`] with [`bareiss_inverse`] entrywise. For
/// `fibpoly` the comparison is made after specialising at `x = 1, 2, 3`.
pub fn compare_with_oracle(spec: &MatrixSpec) -> Result<OracleComparison> {
    let closed = assemble_inverse(spec)?;
    let pairs: Vec<(ExactMatrix<Rational>, ExactMatrix<Rational>)> = match &closed {
        AnyMatrix::Rational(m) => {
            let oracle = bareiss_inverse(&build_reciprocal_hankel(&spec.family, spec.n)?)?;
            vec![(m.clone(), oracle)]
        }
        AnyMatrix::Poly(_) => (1..=3)
            .map(|x| {
                let x = crate::exact::Integer::from(x);
                let oracle = bareiss_inverse(&crate::hankel::fibpoly_hankel_at(spec.n, &x)?)?;
                Ok((closed.eval_at(&x), oracle))
            })
            .collect::<Result<_>>()?,
    };
    let first_mismatch = pairs.iter().find_map(|(a, b)| first_difference(a, b));
    Ok(OracleComparison {
        spec: *spec,
        matches: first_mismatch.is_none(),
        first_mismatch,
    })
}

pub(crate) fn first_difference(a: &ExactMatrix<Rational>, b: &ExactMatrix<Rational>) -> Option<(usize, usize)> {
    if a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols() {
        return Some((1, 1));
    }
    (1..=a.n_rows())
        .flat_map(|i| (1..=a.n_cols()).map(move |j| (i, j)))
        .find(|&(i, j)| a.entry(i, j) != b.entry(i, j))
}

/// Sign-block layout found in the Filbert inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignBlocks {
    pub holds: bool,
    /// `1` when the blocks are `{2a-1, 2a}`, `0` when they are `{2a, 2a+1}`
    /// (with `{1}` on its own). `None` when no alignment works.
    pub offset: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub spec: MatrixSpec,
    pub symmetric: bool,
    /// Only computed for the `fibonacci` family.
    pub sign_blocks: Option<SignBlocks>,
}

impl StructuralReport {
    pub fn holds(&self) -> bool {
        self.symmetric && self.sign_blocks.is_none_or(|b| b.holds)
    }
}

/// Whether the signs of the nonzero entries are constant on 2x2 blocks and
/// flip between horizontally or vertically adjacent blocks, for a given
/// block alignment.
pub fn sign_blocks_with_offset(m: &ExactMatrix<Rational>, offset: usize) -> bool {
    let block = |i: usize| (i + offset) / 2;
    let mut reference: Option<bool> = None;
    for i in 1..=m.n_rows() {
        for j in 1..=m.n_cols() {
            let v = m.entry(i, j);
            if v.is_zero() {
                continue;
            }
            // normalise away the checkerboard of blocks
            let flipped = (block(i) + block(j)) % 2 == 1;
            let normalised = v.is_negative() != flipped;
            match reference {
                None => reference = Some(normalised),
                Some(r) if r != normalised => return false,
                Some(_) => {}
            }
        }
    }
    true
}

pub fn structural_checks(spec: &MatrixSpec) -> Result<StructuralReport> {
    let inverse = assemble_inverse(spec)?;
    let sign_blocks = match (&spec.family, &inverse) {
        (FamilySpec::Fibonacci, AnyMatrix::Rational(w)) => {
            let offset = [1, 0].into_iter().find(|&o| sign_blocks_with_offset(w, o));
            Some(SignBlocks {
                holds: offset.is_some(),
                offset,
            })
        }
        _ => None,
    };
    Ok(StructuralReport {
        spec: *spec,
        symmetric: inverse.is_symmetric(),
        sign_blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::SignVariant;

    #[test]
    fn verify_examples() {
        let fib5 = verify_inverse(&MatrixSpec::of(FamilySpec::Fibonacci, 5).unwrap()).unwrap();
        assert!(fib5.identity_holds);
        assert!(fib5.first_failure.is_none());

        let d = MatrixSpec::new(FamilySpec::D { r: 2 }, 2, SignVariant::PrintedK).unwrap();
        let rep = verify_inverse(&d).unwrap();
        assert!(!rep.identity_holds);
        // the product is already wrong at (1,1); the bad entry itself is D_12
        assert_eq!(rep.first_failure.as_ref().map(|f| (f.i, f.m)), Some((1, 1)));
        assert_eq!(rep.first_entry_mismatch, Some((1, 2)));

        let poly1 = verify_inverse(&MatrixSpec::of(FamilySpec::FibPoly, 1).unwrap()).unwrap();
        assert!(poly1.identity_holds);
    }

    #[test]
    fn verify_matrix_flags_perturbation() {
        let spec = MatrixSpec::of(FamilySpec::Hilbert, 3).unwrap();
        let good = assemble_inverse(&spec).unwrap().as_rational().unwrap().clone();
        assert!(verify_matrix(&spec, &good).unwrap().identity_holds);
        let mut entries = good.entries().to_vec();
        entries[4] = &entries[4] + &Rational::one();
        let bad = ExactMatrix::new(3, 3, entries).unwrap();
        let rep = verify_matrix(&spec, &bad).unwrap();
        assert!(!rep.identity_holds);
        assert_eq!(rep.first_failure.unwrap().i, 2);
    }

    #[test]
    fn structural_examples() {
        let rep = structural_checks(&MatrixSpec::of(FamilySpec::Fibonacci, 4).unwrap()).unwrap();
        assert!(rep.symmetric);
        assert_eq!(rep.sign_blocks, Some(SignBlocks { holds: true, offset: Some(0) }));

        let rep = structural_checks(&MatrixSpec::of(FamilySpec::Fibonacci, 5).unwrap()).unwrap();
        assert_eq!(rep.sign_blocks, Some(SignBlocks { holds: true, offset: Some(1) }));

        let rep = structural_checks(&MatrixSpec::of(FamilySpec::B { r: 3 }, 5).unwrap()).unwrap();
        assert!(rep.symmetric);
        assert!(rep.sign_blocks.is_none());

        let rep = structural_checks(&MatrixSpec::of(FamilySpec::Fibonacci, 1).unwrap()).unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn sign_blocks_reject_checkerboard() {
        let h = assemble_inverse(&MatrixSpec::of(FamilySpec::Hilbert, 4).unwrap()).unwrap();
        let h = h.as_rational().unwrap();
        assert!(!sign_blocks_with_offset(h, 0));
        assert!(!sign_blocks_with_offset(h, 1));
    }

    #[test]
    fn oracle_comparison_small() {
        for spec in [
            MatrixSpec::of(FamilySpec::Fibonacci, 4).unwrap(),
            MatrixSpec::of(FamilySpec::FibPoly, 3).unwrap(),
            MatrixSpec::of(FamilySpec::B { r: 3 }, 4).unwrap(),
        ] {
            assert!(compare_with_oracle(&spec).unwrap().matches, "{spec}");
        }
        let printed = MatrixSpec::new(FamilySpec::D { r: 2 }, 2, SignVariant::PrintedK).unwrap();
        assert_eq!(compare_with_oracle(&printed).unwrap().first_mismatch, Some((1, 2)));
    }
}

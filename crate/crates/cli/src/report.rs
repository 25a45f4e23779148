use std::time::Duration;

use filbert_core::hankel::{Entry, Failure as ProductFailure};
use filbert_core::verifier::{BoundaryCheck, CertReport, FibonomialScanRow, ScanRow, Violation};
use filbert_core::{FamilySpec, SignVariant, VerificationReport};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::doc::{poly_cell, CellJson};

/// Violations listed per certificate; the full count is always reported.
pub const MAX_LISTED_VIOLATIONS: usize = 20;

pub fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn cell(e: &Entry) -> CellJson {
    match e {
        Entry::Rational(q) => CellJson::Scalar(q.to_string()),
        Entry::Poly(p) => poly_cell(p),
    }
}

#[derive(Serialize)]
pub struct FailureJson {
    pub i: usize,
    pub m: usize,
    pub value: CellJson,
}

impl From<&ProductFailure> for FailureJson {
    fn from(f: &ProductFailure) -> Self {
        FailureJson {
            i: f.i,
            m: f.m,
            value: cell(&f.value),
        }
    }
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub family: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_variant: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<i64>,
    pub identity_holds: bool,
    pub first_failure: Option<FailureJson>,
    pub first_entry_mismatch: Option<[usize; 2]>,
    pub elapsed_ms: f64,
}

impl VerifyJson {
    pub fn new(report: &VerificationReport, sign_variant: Option<SignVariant>, x: Option<i64>) -> Self {
        VerifyJson {
            family: report.spec.family.name(),
            n: report.n,
            r: report.spec.family.r(),
            sign_variant: sign_variant.map(|v| v.name()),
            x,
            identity_holds: report.identity_holds,
            first_failure: report.first_failure.as_ref().map(FailureJson::from),
            first_entry_mismatch: report.first_entry_mismatch.map(|(i, j)| [i, j]),
            elapsed_ms: millis(report.elapsed),
        }
    }
}

#[derive(Serialize)]
pub struct ScanRowJson {
    pub n: usize,
    pub r: u32,
    pub is_integral: bool,
    pub max_denominator: String,
    pub predicted_integral: bool,
    pub agrees: bool,
    pub denominators_divide_r: bool,
}

impl From<&ScanRow> for ScanRowJson {
    fn from(row: &ScanRow) -> Self {
        ScanRowJson {
            n: row.n,
            r: row.r,
            is_integral: row.is_integral,
            max_denominator: row.max_denominator.to_string(),
            predicted_integral: row.predicted_integral,
            agrees: row.agrees,
            denominators_divide_r: row.denominators_divide_r,
        }
    }
}

pub const SCAN_HEADER: [&str; 7] = [
    "n",
    "r",
    "is_integral",
    "max_denominator",
    "predicted_integral",
    "agrees",
    "denominators_divide_r",
];

impl ScanRowJson {
    pub fn csv_record(&self) -> [String; 7] {
        [
            self.n.to_string(),
            self.r.to_string(),
            self.is_integral.to_string(),
            self.max_denominator.clone(),
            self.predicted_integral.to_string(),
            self.agrees.to_string(),
            self.denominators_divide_r.to_string(),
        ]
    }
}

#[derive(Serialize)]
pub struct FibRowJson {
    pub n: usize,
    pub r: u32,
    pub sign_variant: &'static str,
    pub formula_matches: bool,
    pub first_mismatch: Option<[usize; 2]>,
    pub is_integral: bool,
    pub max_denominator: String,
    pub binomial_is_integral: bool,
    pub integrality_matches_binomial: bool,
}

impl From<&FibonomialScanRow> for FibRowJson {
    fn from(row: &FibonomialScanRow) -> Self {
        FibRowJson {
            n: row.n,
            r: row.r,
            sign_variant: row.sign_variant.name(),
            formula_matches: row.formula_matches,
            first_mismatch: row.first_mismatch.map(|(i, j)| [i, j]),
            is_integral: row.is_integral,
            max_denominator: row.max_denominator.to_string(),
            binomial_is_integral: row.binomial_is_integral,
            integrality_matches_binomial: row.integrality_matches_binomial,
        }
    }
}

pub const FIB_HEADER: [&str; 9] = [
    "n",
    "r",
    "sign_variant",
    "formula_matches",
    "first_mismatch",
    "is_integral",
    "max_denominator",
    "binomial_is_integral",
    "integrality_matches_binomial",
];

impl FibRowJson {
    pub fn csv_record(&self) -> [String; 9] {
        [
            self.n.to_string(),
            self.r.to_string(),
            self.sign_variant.to_string(),
            self.formula_matches.to_string(),
            self.first_mismatch.map_or(String::new(), |[i, j]| format!("{i} {j}")),
            self.is_integral.to_string(),
            self.max_denominator.clone(),
            self.binomial_is_integral.to_string(),
            self.integrality_matches_binomial.to_string(),
        ]
    }
}

/// Named grid point, serialized as an object in index order.
pub struct PointJson(pub Vec<(&'static str, i64)>);

impl Serialize for PointJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
pub struct ViolationJson {
    pub relation: &'static str,
    pub point: PointJson,
    pub residual: String,
}

impl From<&Violation> for ViolationJson {
    fn from(v: &Violation) -> Self {
        ViolationJson {
            relation: v.relation,
            point: PointJson(v.point.clone()),
            residual: v.residual.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct BoundaryJson {
    pub label: &'static str,
    pub point: PointJson,
    pub value: String,
    pub expected: String,
    pub holds: bool,
}

impl From<&BoundaryCheck> for BoundaryJson {
    fn from(b: &BoundaryCheck) -> Self {
        BoundaryJson {
            label: b.label,
            point: PointJson(b.point.clone()),
            value: b.value.to_string(),
            expected: b.expected.to_string(),
            holds: b.holds(),
        }
    }
}

#[derive(Serialize)]
pub struct CertJson {
    pub certificate: &'static str,
    pub reading: &'static str,
    pub n_max: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_values: Option<Vec<i64>>,
    pub mutated: bool,
    pub evaluations: usize,
    pub holds: bool,
    pub violation_count: usize,
    pub violations: Vec<ViolationJson>,
    pub boundary: Vec<BoundaryJson>,
}

impl From<&CertReport> for CertJson {
    fn from(rep: &CertReport) -> Self {
        CertJson {
            certificate: rep.id.name(),
            reading: rep.reading.name(),
            n_max: rep.grid.n_max,
            r_max: rep.id.uses_r().then_some(rep.grid.r_max),
            x_values: rep.id.uses_x().then(|| rep.x_values.clone()),
            mutated: rep.mutated,
            evaluations: rep.evaluations,
            holds: rep.holds(),
            violation_count: rep.violations.len(),
            violations: rep
                .violations
                .iter()
                .take(MAX_LISTED_VIOLATIONS)
                .map(ViolationJson::from)
                .collect(),
            boundary: rep.boundary.iter().map(BoundaryJson::from).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CertSuiteJson {
    pub certificates: Vec<CertJson>,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct BenchJson {
    pub family: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_variant: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<i64>,
    pub closed_ms: f64,
    pub bareiss_ms: f64,
    pub entries_equal: bool,
    pub first_mismatch: Option<[usize; 2]>,
}

pub fn family_sign(family: &FamilySpec, variant: SignVariant) -> Option<&'static str> {
    matches!(family, FamilySpec::D { .. }).then(|| variant.name())
}

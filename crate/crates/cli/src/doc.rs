//! Matrix documents: the JSON and CSV forms of a matrix, and their parsers.
//!
//! Every exact value is a string. Rationals are always written `p/q` in
//! lowest terms with `q > 0`; polynomials are arrays of decimal coefficient
//! strings, constant term first, with no trailing zeros.

use std::str::FromStr;

use filbert_core::closedform::AnyMatrix;
use filbert_core::{Error, ExactMatrix, FamilySpec, IntPoly, Integer, Rational, Result, SignVariant};
use serde::{Deserialize, Serialize};

/// One serialized matrix entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellJson {
    Scalar(String),
    Poly(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    family: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sign_variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<i64>,
    entries: Vec<Vec<CellJson>>,
}

/// A matrix together with the labels it is written with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDoc {
    pub family: FamilySpec,
    /// Set for closed-form inverses of family `d`.
    pub sign_variant: Option<SignVariant>,
    /// Set when a `fibpoly` matrix was evaluated at a point.
    pub x: Option<i64>,
    pub matrix: AnyMatrix,
}

impl MatrixDoc {
    pub fn n(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn to_json(&self) -> String {
        let entries = match &self.matrix {
            AnyMatrix::Rational(m) => m
                .rows_iter()
                .map(|row| row.iter().map(|q| CellJson::Scalar(q.to_string())).collect())
                .collect(),
            AnyMatrix::Poly(m) => m
                .rows_iter()
                .map(|row| row.iter().map(poly_cell).collect())
                .collect(),
        };
        let doc = MatrixJson {
            family: self.family.name().to_string(),
            n: self.n(),
            r: self.family.r(),
            sign_variant: self.sign_variant.map(|v| v.name().to_string()),
            x: self.x,
            entries,
        };
        serde_json::to_string(&doc).expect("matrix documents always serialize")
    }

    /// Rows of canonical strings. Polynomial matrices have no CSV form.
    pub fn to_csv(&self) -> Result<String> {
        let m = self
            .matrix
            .as_rational()
            .ok_or_else(|| Error::UnsupportedElementKind("CSV output is only available for numeric matrices".into()))?;
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        for row in m.rows_iter() {
            w.write_record(row.iter().map(ToString::to_string))
                .map_err(|e| Error::Internal(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV of ASCII strings"))
    }
}

pub fn poly_cell(p: &IntPoly) -> CellJson {
    CellJson::Poly(p.coeffs().iter().map(ToString::to_string).collect())
}

/// Parses a rational written `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s)
}

/// Parses an optionally negative decimal integer with no other decoration.
pub fn parse_integer(s: &str) -> Result<Integer> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("malformed integer {s:?}")));
    }
    Integer::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses an ascending coefficient array. Trailing zeros are dropped.
pub fn parse_poly_coeffs<S: AsRef<str>>(coeffs: &[S]) -> Result<IntPoly> {
    coeffs
        .iter()
        .map(|c| parse_integer(c.as_ref()))
        .collect::<Result<Vec<_>>>()
        .map(IntPoly::new)
}

/// Parses a JSON matrix document, validating its labels against its shape.
pub fn parse_matrix_doc(text: &str) -> Result<MatrixDoc> {
    let doc: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let family = FamilySpec::from_name(&doc.family, doc.r)?;
    let sign_variant = match &doc.sign_variant {
        Some(s) if matches!(family, FamilySpec::D { .. }) => Some(s.parse::<SignVariant>()?),
        Some(_) => return Err(Error::Parse("sign_variant is only meaningful for family d".into())),
        None => None,
    };
    if doc.x.is_some() && !family.is_polynomial() {
        return Err(Error::Parse("x is only meaningful for family fibpoly".into()));
    }
    let n = doc.n;
    if n == 0 || doc.entries.len() != n || doc.entries.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension(format!("entries must form an {n} x {n} array with n >= 1")));
    }
    let cells: Vec<&CellJson> = doc.entries.iter().flatten().collect();
    let matrix = if cells.iter().all(|c| matches!(c, CellJson::Scalar(_))) {
        let values = cells
            .iter()
            .map(|c| match c {
                CellJson::Scalar(s) => parse_rational(s),
                CellJson::Poly(_) => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        if family.is_polynomial() && doc.x.is_none() {
            return Err(Error::Parse("numeric fibpoly entries need x".into()));
        }
        AnyMatrix::Rational(ExactMatrix::new(n, n, values)?)
    } else if cells.iter().all(|c| matches!(c, CellJson::Poly(_))) {
        if !family.is_polynomial() || doc.x.is_some() {
            return Err(Error::Parse("polynomial entries need family fibpoly without x".into()));
        }
        let values = cells
            .iter()
            .map(|c| match c {
                CellJson::Poly(p) => parse_poly_coeffs(p),
                CellJson::Scalar(_) => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        AnyMatrix::Poly(ExactMatrix::new(n, n, values)?)
    } else {
        return Err(Error::Parse("entries mix numbers and polynomials".into()));
    };
    Ok(MatrixDoc {
        family,
        sign_variant,
        x: doc.x,
        matrix,
    })
}

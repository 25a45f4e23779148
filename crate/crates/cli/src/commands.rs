use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use filbert_core::closedform::AnyMatrix;
use filbert_core::hankel::{cleared_identity_check, fibpoly_hankel_at};
use filbert_core::verifier::{
    check_certificate_with, fibonomial_scan, integrality_scan_with, verify_against, verify_inverse, verify_matrix,
    CertGrid, CertificateId, CheckOptions, Reading,
};
use filbert_core::{
    assemble_inverse, bareiss_inverse, build_reciprocal_hankel, ExactMatrix, FamilySpec, Integer, MatrixSpec, Rational,
    SignVariant,
};
use rayon::prelude::*;

use crate::args::{
    BenchArgs, CertifyArgs, Cli, Command, Conjecture, Format, GenArgs, InvArgs, MatrixArgs, Method, OutputArgs,
    ScanArgs, VerifyArgs,
};
use crate::doc::{parse_matrix_doc, MatrixDoc};
use crate::report::{
    family_sign, millis, BenchJson, CertJson, CertSuiteJson, FibRowJson, ScanRowJson, VerifyJson, FIB_HEADER,
    SCAN_HEADER,
};
use crate::Failure;

type Outcome = Result<bool, Failure>;

pub(crate) fn dispatch(cli: Cli, out: &mut (dyn Write + Send)) -> Outcome {
    match cli.command {
        Command::Gen(a) => gen(a, out),
        Command::Inv(a) => inv(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Scan(a) => scan(a, out),
        Command::Certify(a) => certify(a, out),
        Command::Bench(a) => bench(a, out),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn spec_from(m: &MatrixArgs) -> Result<MatrixSpec, Failure> {
    let family = FamilySpec::from_name(&m.family, m.r)?;
    let variant = match &m.sign_variant {
        Some(s) => s.parse::<SignVariant>()?,
        None => SignVariant::default(),
    };
    let n = usize::try_from(m.n).map_err(|_| usage("--n is too large"))?;
    Ok(MatrixSpec::new(family, n, variant)?)
}

fn check_x(family: &FamilySpec, x: Option<i64>, required: bool) -> Result<(), Failure> {
    match (family.is_polynomial(), x) {
        (false, Some(_)) => Err(usage("--x only applies to family fibpoly")),
        (true, None) if required => Err(usage("this command needs --x for family fibpoly")),
        _ => Ok(()),
    }
}

/// Runs `body` against the chosen destination and flushes it.
fn with_output(path: &Option<PathBuf>, out: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Outcome) -> Outcome {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            let result = body(&mut w);
            w.flush()?;
            result
        }
        None => {
            let result = body(out);
            out.flush()?;
            result
        }
    }
}

fn write_json<T: serde::Serialize>(value: &T, path: &Option<PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure::Runtime(e.to_string()))?;
    with_output(path, out, |w| {
        writeln!(w, "{text}")?;
        Ok(true)
    })
    .map(|_| ())
}

fn emit_doc(doc: &MatrixDoc, output: &OutputArgs, out: &mut dyn Write) -> Outcome {
    let text = match output.format {
        Format::Json => doc.to_json() + "\n",
        Format::Csv => doc.to_csv()?,
    };
    with_output(&output.output, out, |w| {
        w.write_all(text.as_bytes())?;
        Ok(true)
    })
}

fn check_csv(format: Format, numeric: bool) -> Result<(), Failure> {
    if format == Format::Csv && !numeric {
        return Err(usage("CSV output is only available for numeric matrices"));
    }
    Ok(())
}

fn hankel_for(spec: &MatrixSpec, x: Option<i64>) -> Result<ExactMatrix<Rational>, Failure> {
    Ok(match x {
        Some(x) => fibpoly_hankel_at(spec.n, &Integer::from(x))?,
        None => build_reciprocal_hankel(&spec.family, spec.n)?,
    })
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Outcome {
    let spec = spec_from(&a.matrix)?;
    check_x(&spec.family, a.x, true)?;
    let doc = MatrixDoc {
        family: spec.family,
        sign_variant: None,
        x: a.x,
        matrix: AnyMatrix::Rational(hankel_for(&spec, a.x)?),
    };
    emit_doc(&doc, &a.output, out)
}

fn inv(a: InvArgs, out: &mut dyn Write) -> Outcome {
    let spec = spec_from(&a.matrix)?;
    check_x(&spec.family, a.x, a.method == Method::Bareiss)?;
    check_csv(a.output.format, !spec.family.is_polynomial() || a.x.is_some())?;
    let (matrix, sign_variant) = match a.method {
        Method::Closed => {
            let m = assemble_inverse(&spec)?;
            let m = match a.x {
                Some(x) => AnyMatrix::Rational(m.eval_at(&Integer::from(x))),
                None => m,
            };
            let variant = matches!(spec.family, FamilySpec::D { .. }).then_some(spec.sign_variant);
            (m, variant)
        }
        Method::Bareiss => {
            if a.matrix.sign_variant.is_some() {
                return Err(usage("--sign-variant has no effect with --method bareiss"));
            }
            (AnyMatrix::Rational(bareiss_inverse(&hankel_for(&spec, a.x)?)?), None)
        }
    };
    let doc = MatrixDoc {
        family: spec.family,
        sign_variant,
        x: a.x,
        matrix,
    };
    emit_doc(&doc, &a.output, out)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let json = match &a.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            verify_doc(&parse_matrix_doc(&text)?)?
        }
        None => {
            let m = MatrixArgs {
                family: a.family.clone().expect("required by the grammar"),
                n: a.n.expect("required by the grammar"),
                r: a.r,
                sign_variant: a.sign_variant.clone(),
            };
            let spec = spec_from(&m)?;
            let report = verify_inverse(&spec)?;
            VerifyJson::new(&report, family_sign_variant(&spec), None)
        }
    };
    let holds = json.identity_holds;
    write_json(&json, &a.output, out)?;
    Ok(holds)
}

fn family_sign_variant(spec: &MatrixSpec) -> Option<SignVariant> {
    matches!(spec.family, FamilySpec::D { .. }).then_some(spec.sign_variant)
}

fn verify_doc(doc: &MatrixDoc) -> Result<VerifyJson, Failure> {
    let spec = MatrixSpec::new(doc.family, doc.n(), doc.sign_variant.unwrap_or_default())?;
    let report = match (&doc.matrix, doc.x) {
        (AnyMatrix::Poly(v), _) => cleared_identity_check(&spec, |i, j| Ok(v.entry(i, j).clone()))?,
        (AnyMatrix::Rational(m), Some(x)) => verify_against(&spec, m, &fibpoly_hankel_at(spec.n, &Integer::from(x))?)?,
        (AnyMatrix::Rational(m), None) => verify_matrix(&spec, m)?,
    };
    Ok(VerifyJson::new(&report, doc.sign_variant, doc.x))
}

fn scan(a: ScanArgs, out: &mut dyn Write) -> Outcome {
    let n_max = usize::try_from(a.n_max).map_err(|_| usage("--n-max is too large"))?;
    let format = a.output.format;
    match a.conjecture {
        Conjecture::Integrality => {
            if a.sign_variant.is_some() {
                return Err(usage("--sign-variant only applies to the fibonomial scan"));
            }
            with_output(&a.output.output, out, |w| scan_integrality(n_max, a.r_max, format, w))
        }
        Conjecture::Fibonomial => {
            if a.r_max < 2 {
                return Err(usage("the fibonomial scan needs --r-max >= 2"));
            }
            let variant = match &a.sign_variant {
                Some(s) => s.parse::<SignVariant>()?,
                None => SignVariant::default(),
            };
            let rows: Vec<FibRowJson> = fibonomial_scan(n_max, a.r_max, variant)?
                .iter()
                .map(FibRowJson::from)
                .collect();
            let all_match = rows.iter().all(|r| r.formula_matches);
            with_output(&a.output.output, out, |w| {
                match format {
                    Format::Json => {
                        write!(
                            w,
                            "{{\"conjecture\":\"fibonomial\",\"n_max\":{n_max},\"r_max\":{},\"sign_variant\":\"{}\",\"rows\":[",
                            a.r_max,
                            variant.name()
                        )?;
                        for (idx, row) in rows.iter().enumerate() {
                            if idx > 0 {
                                w.write_all(b",")?;
                            }
                            w.write_all(to_json(row)?.as_bytes())?;
                        }
                        writeln!(w, "],\"all_match\":{all_match}}}")?;
                    }
                    Format::Csv => {
                        let mut csv = csv::Writer::from_writer(w);
                        csv.write_record(FIB_HEADER).map_err(csv_err)?;
                        for row in &rows {
                            csv.write_record(row.csv_record()).map_err(csv_err)?;
                        }
                        csv.flush()?;
                    }
                }
                Ok(all_match)
            })
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure::Runtime(e.to_string()))
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Runtime(e.to_string())
}

fn scan_integrality(n_max: usize, r_max: u32, format: Format, w: &mut dyn Write) -> Outcome {
    let mut all_agree = true;
    let mut write_error: Option<Failure> = None;
    let mut first = true;
    match format {
        Format::Json => {
            write!(w, "{{\"conjecture\":\"integrality\",\"n_max\":{n_max},\"r_max\":{r_max},\"rows\":[")?;
            integrality_scan_with(n_max, r_max, |row| {
                all_agree &= row.agrees && row.denominators_divide_r;
                if write_error.is_some() {
                    return;
                }
                let sep = if first { "" } else { "," };
                first = false;
                let line = to_json(&ScanRowJson::from(row)).map(|s| format!("{sep}{s}"));
                let res = line.and_then(|s| w.write_all(s.as_bytes()).and_then(|_| w.flush()).map_err(Failure::from));
                if let Err(e) = res {
                    write_error = Some(e);
                }
            })?;
            if let Some(e) = write_error {
                return Err(e);
            }
            writeln!(w, "],\"all_agree\":{all_agree}}}")?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(SCAN_HEADER).map_err(csv_err)?;
            integrality_scan_with(n_max, r_max, |row| {
                all_agree &= row.agrees && row.denominators_divide_r;
                if write_error.is_some() {
                    return;
                }
                let res = csv
                    .write_record(ScanRowJson::from(row).csv_record())
                    .map_err(csv_err)
                    .and_then(|_| csv.flush().map_err(Failure::from));
                if let Err(e) = res {
                    write_error = Some(e);
                }
            })?;
            if let Some(e) = write_error {
                return Err(e);
            }
        }
    }
    Ok(all_agree)
}

fn certify(a: CertifyArgs, out: &mut dyn Write) -> Outcome {
    let ids: Vec<CertificateId> = if a.cert == "all" {
        CertificateId::ALL.to_vec()
    } else {
        vec![a.cert.parse::<CertificateId>()?]
    };
    let reading = match &a.reading {
        Some(_) if ids.len() > 1 => return Err(usage("--reading needs a single --cert")),
        Some(s) => {
            let reading = s.parse::<Reading>()?;
            if !ids[0].readings().contains(&reading) {
                return Err(usage(format!("{} has no {reading} reading", ids[0])));
            }
            Some(reading)
        }
        None => None,
    };
    if let Some(id) = ids.iter().find(|id| id.uses_r()) {
        if a.r_max.is_none() {
            return Err(usage(format!("--r-max is required for {id}")));
        }
    }
    if ids.iter().any(CertificateId::uses_x) {
        if a.x.is_empty() {
            return Err(usage("--x needs at least one value"));
        }
        if let Some(bad) = a.x.iter().find(|&&x| x < 1) {
            return Err(usage(format!("--x values must be >= 1, got {bad}")));
        }
    }
    let grid = CertGrid {
        n_max: a.n_max,
        r_max: a.r_max.unwrap_or(1),
    };
    let reports = ids
        .par_iter()
        .map(|&id| {
            let options = CheckOptions {
                reading: reading.unwrap_or(id.default_reading()),
                flip_first_term: a.mutate,
            };
            check_certificate_with(id, grid, &a.x, options)
        })
        .collect::<filbert_core::Result<Vec<_>>>()?;
    let suite = CertSuiteJson {
        holds: reports.iter().all(|r| r.holds()),
        certificates: reports.iter().map(CertJson::from).collect(),
    };
    write_json(&suite, &a.output, out)?;
    Ok(suite.holds)
}

fn first_difference(a: &ExactMatrix<Rational>, b: &ExactMatrix<Rational>) -> Option<[usize; 2]> {
    if a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols() {
        return Some([1, 1]);
    }
    let idx = a.entries().iter().zip(b.entries()).position(|(p, q)| p != q)?;
    Some([idx / a.n_cols() + 1, idx % a.n_cols() + 1])
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> Outcome {
    let spec = spec_from(&a.matrix)?;
    check_x(&spec.family, a.x, true)?;
    let x = a.x.map(Integer::from);

    let start = Instant::now();
    let closed = assemble_inverse(&spec)?;
    let closed = match &x {
        Some(x) => closed.eval_at(x),
        None => closed.as_rational().cloned().expect("numeric family"),
    };
    let closed_ms = millis(start.elapsed());

    let start = Instant::now();
    let oracle = bareiss_inverse(&hankel_for(&spec, a.x)?)?;
    let bareiss_ms = millis(start.elapsed());

    let first_mismatch = first_difference(&closed, &oracle);
    let json = BenchJson {
        family: spec.family.name(),
        n: spec.n,
        r: spec.family.r(),
        sign_variant: family_sign(&spec.family, spec.sign_variant),
        x: a.x,
        closed_ms,
        bareiss_ms,
        entries_equal: first_mismatch.is_none(),
        first_mismatch,
    };
    write_json(&json, &a.output, out)?;
    Ok(json.entries_equal)
}

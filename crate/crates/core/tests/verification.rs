use filbert_core::verifier::{
    check_certificate, check_certificate_with, compare_with_oracle, consistent_variant, fibonomial_scan,
    integrality_scan, sign_variant_survey, structural_checks, verify_inverse, CertGrid, CertificateId, CheckOptions,
    Reading,
};
use filbert_core::{FamilySpec, Integer, MatrixSpec, SignVariant};

const XS: [i64; 3] = [1, 2, 3];

fn small_grid(id: CertificateId) -> CertGrid {
    match id {
        CertificateId::HRec | CertificateId::ZRec => CertGrid { n_max: 4, r_max: 2 },
        _ => CertGrid { n_max: 5, r_max: 3 },
    }
}

#[test]
fn every_certificate_holds_in_its_default_reading() {
    for id in CertificateId::ALL {
        let rep = check_certificate(id, small_grid(id), &XS).unwrap();
        assert!(rep.holds(), "{id}: {:?}", rep.violations.first());
        assert!(rep.evaluations > 0, "{id}");
    }
}

#[test]
fn every_certificate_catches_a_sign_mutation() {
    for id in CertificateId::ALL {
        let options = CheckOptions {
            reading: id.default_reading(),
            flip_first_term: true,
        };
        let rep = check_certificate_with(id, small_grid(id), &XS, options).unwrap();
        assert!(!rep.violations.is_empty(), "{id} missed the mutation");
    }
}

#[test]
fn printed_readings_that_fail() {
    for (id, reading) in [
        (CertificateId::FilRec, Reading::Printed),
        (CertificateId::FilSum, Reading::Printed),
        (CertificateId::Pn1m, Reading::Printed),
        (CertificateId::Pn1m, Reading::PrintedFreeIndex),
        (CertificateId::YTel, Reading::Printed),
    ] {
        let options = CheckOptions {
            reading,
            flip_first_term: false,
        };
        let rep = check_certificate_with(id, small_grid(id), &XS, options).unwrap();
        assert!(!rep.holds(), "{id} {reading} unexpectedly holds");
    }
}

#[test]
fn y_tel_printed_initial_sum_fails_only_in_boundary() {
    let options = CheckOptions {
        reading: Reading::Printed,
        flip_first_term: false,
    };
    let rep = check_certificate_with(CertificateId::YTel, CertGrid { n_max: 4, r_max: 2 }, &[], options).unwrap();
    assert!(rep.boundary.iter().any(|b| !b.holds()));
    assert!(rep.violations.iter().all(|v| v.relation == "sum over j"));
}

#[test]
fn boundary_values_of_the_telescoping_certificates() {
    let g2 = check_certificate(CertificateId::G2, CertGrid { n_max: 10, r_max: 1 }, &[1]).unwrap();
    let ones: Vec<_> = g2.boundary.iter().filter(|b| b.label == "p(n,1,1)").collect();
    assert_eq!(ones.len(), 10);
    assert!(ones.iter().all(|b| b.holds() && b.value.is_one()));

    let g1 = check_certificate(CertificateId::G1, CertGrid { n_max: 8, r_max: 1 }, &XS).unwrap();
    let zeros: Vec<_> = g1.boundary.iter().filter(|b| b.label == "p(m,1,m)").collect();
    assert_eq!(zeros.len(), 7 * XS.len());
    assert!(zeros.iter().all(|b| b.holds() && b.value.is_zero()));
}

#[test]
fn certificate_domain_errors_come_before_evaluation() {
    assert!(check_certificate(CertificateId::MZero, CertGrid { n_max: 3, r_max: 1 }, &[2, -1]).is_err());
    assert!(check_certificate(CertificateId::TSymm, CertGrid { n_max: 3, r_max: 0 }, &[]).is_err());
}

#[test]
fn scan_rows_respect_their_invariants() {
    for row in integrality_scan(8, 6).unwrap() {
        assert_eq!(row.is_integral, row.max_denominator == Integer::from(1));
        assert_eq!(row.agrees, row.is_integral == row.predicted_integral);
        assert!(row.agrees, "({}, {})", row.n, row.r);
        assert!(row.denominators_divide_r);
    }
}

#[test]
fn fibonomial_scan_rows() {
    let rows = fibonomial_scan(5, 4, SignVariant::Corrected).unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r.formula_matches));
    let printed = fibonomial_scan(3, 2, SignVariant::PrintedK).unwrap();
    assert_eq!(printed[1].first_mismatch, Some((1, 2)));
}

#[test]
fn sign_variant_survey_names_one_variant() {
    let cells = sign_variant_survey(6, 4).unwrap();
    assert_eq!(consistent_variant(&cells), Some(SignVariant::Corrected));
    for cell in &cells {
        assert!(!cell.validating.contains(&SignVariant::PrintedK));
        if cell.n >= 3 {
            assert_eq!(cell.validating, vec![SignVariant::Corrected]);
        }
    }
}

#[test]
fn verification_of_every_family() {
    for n in [1, 4, 7] {
        for family in [
            FamilySpec::Fibonacci,
            FamilySpec::FibPoly,
            FamilySpec::Hilbert,
            FamilySpec::A,
            FamilySpec::B { r: 1 },
            FamilySpec::B { r: 4 },
            FamilySpec::C,
            FamilySpec::D { r: 3 },
        ] {
            let spec = MatrixSpec::of(family, n).unwrap();
            assert!(verify_inverse(&spec).unwrap().identity_holds, "{spec}");
            assert!(compare_with_oracle(&spec).unwrap().matches, "{spec}");
            assert!(structural_checks(&spec).unwrap().holds(), "{spec}");
        }
    }
}

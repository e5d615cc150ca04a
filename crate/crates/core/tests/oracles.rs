use qpoly_core::gram::build_gram_by_expansion;
use qpoly_core::numeric::pow10_neg;
use qpoly_core::params::{compute_parameter_table_along, RecursionAxis};
use qpoly_core::spectral::{build_transition_matrices, krein_table_at, q_polynomial_generators};
use qpoly_core::*;
use num_traits::Zero;

/// Primitive arrays with their known status.
const PRIMITIVE: &[(&str, &str, bool)] = &[
    ("H(3,3)", "6,4,2;1,2,3", true),
    ("H(3,4)", "9,6,3;1,2,3", true),
    ("H(4,3)", "8,6,4,2;1,2,3,4", true),
    ("J(7,3)", "12,6,2;1,4,9", true),
    ("J(8,3)", "15,8,3;1,4,9", true),
    ("C7", "2,1,1;1,1,1", true),
    ("C11", "2,1,1,1,1;1,1,1,1,1", true),
    ("O4", "4,3,3;1,1,2", true),
    ("folded 7-cube", "7,6,5;1,2,3", true),
    ("halved 7-cube", "21,10,3;1,6,15", true),
    ("Coxeter", "3,2,2,1;1,1,1,2", false),
    ("Sylvester", "5,4,2;1,1,4", false),
    ("Perkel", "6,5,2;1,1,3", false),
    ("GH(2,1)", "4,2,2;1,1,2", false),
    ("Doro", "10,6,4;1,2,5", false),
];

fn table(text: &str) -> (IntersectionArray, ParameterTable) {
    let a = parse_array(text).unwrap();
    let pt = compute_parameter_table(&a).unwrap();
    (a, pt)
}

#[test]
fn determinant_agrees_with_krein_oracle() {
    for &(name, text, q_poly) in PRIMITIVE {
        let (a, pt) = table(text);
        let verdict = decide_q_polynomial(&a).unwrap();
        assert_eq!(verdict.is_q_polynomial, Some(q_poly), "{name}: det = {}", verdict.det_g);
        let out = run_oracle(&a, &pt, &pow10_neg(20), &SpectralConfig::default()).unwrap();
        assert_eq!(out.ordering.is_some(), q_poly, "{name}");
        assert!(out.spectral.certify_isolation(), "{name}");
        assert!(out.spectral.primitivity_witness(), "{name}");
    }
}

#[test]
fn gram_routes_agree() {
    for &(name, text, _) in PRIMITIVE {
        let (a, pt) = table(text);
        let g = build_gram(&pt);
        assert!(g.is_symmetric(), "{name}");
        assert_eq!(g, build_gram_by_expansion(&pt), "{name}");
        let pt2 = compute_parameter_table_along(&a, RecursionAxis::Second).unwrap();
        assert_eq!(pt, pt2, "{name}");
        assert!(certify_psd(g.matrix()), "{name}");
    }
}

#[test]
fn graph_oracle_agrees_with_formula() {
    let cases = [
        ("hamming:3:3", true),
        ("johnson:7:3", true),
        ("cycle:7", true),
        ("odd:4", true),
        ("folded-cube:7", true),
        ("hamming:3:2", false),
        ("cycle:9", false),
        ("cycle:15", false),
    ];
    for (fam, primitive) in cases {
        let g = construct(&fam.parse().unwrap()).unwrap();
        let s = extract_scheme(&g).unwrap();
        let a = s.intersection_array().unwrap();
        let pt = compute_parameter_table(&a).unwrap();
        assert_eq!(s.is_primitive(), primitive, "{fam}");
        assert_eq!(is_primitive(&a), primitive, "{fam}");
        assert_eq!(brute_force_gram(&s, 0).unwrap(), build_gram(&pt), "{fam}");
    }
}

#[test]
fn refinement_keeps_nonzero_flags() {
    for text in ["3,2,2,1;1,1,1,2", "2,1,1;1,1,1", "5,4,2;1,1,4"] {
        let (a, pt) = table(text);
        let zero_width = pow10_neg(30);
        let mut sd = isolate_eigenvalues(&a, &pow10_neg(12)).unwrap();
        let before = krein_table_at(&sd, &pt, &zero_width);
        sd.refine(&pow10_neg(24)).unwrap();
        let after = krein_table_at(&sd, &pt, &zero_width);
        let d = a.diameter();
        for h in 0..=d {
            for i in 0..=d {
                for j in 0..=d {
                    if before.flag(h, i, j).is_nonzero() {
                        assert!(after.flag(h, i, j).is_nonzero(), "{text}: q^{h}_{i}{j}");
                    }
                }
            }
        }
    }
}

#[test]
fn heptagon_has_three_generators() {
    let (a, pt) = table("2,1,1;1,1,1");
    let out = run_oracle(&a, &pt, &pow10_neg(20), &SpectralConfig::default()).unwrap();
    assert_eq!(q_polynomial_generators(&out.krein).unwrap(), vec![1, 2, 3]);
}

#[test]
fn transition_matrices_are_inverse_pairs() {
    for &(name, text, _) in PRIMITIVE {
        let (a, _) = table(text);
        let sd = isolate_eigenvalues(&a, &pow10_neg(20)).unwrap();
        let tm = build_transition_matrices(&sd);
        assert!(tm.inverse_pairs_hold(), "{name}");
        assert!(tm.s_alt_rows_nonzero(), "{name}");
    }
}

#[test]
fn imprimitive_arrays_still_assessed() {
    // Line graph of Petersen: antipodal, singular G, no Q-ordering.
    let a = parse_array("4,2,1;1,1,4").unwrap();
    let v = assess(&a).unwrap();
    assert!(v.det_g.is_zero());
    assert!(!v.primitive());
    assert!(matches!(decide_q_polynomial(&a), Err(Error::Hypothesis { .. })));

    // J(8,4): complementary 4-sets are the antipodal pairs.
    let a = parse_array("16,9,4,1;1,4,9,16").unwrap();
    assert_eq!(a.valency(4), &BigInt::from(1));
    assert!(!is_primitive(&a));
}

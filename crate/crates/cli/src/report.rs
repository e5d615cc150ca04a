//! JSON reports. Exact integers and rationals are strings, intervals are
//! `"[lo, hi]"` strings, and objects use sorted keys, so serialising a
//! parsed report reproduces it byte for byte.

use std::time::Instant;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use qpoly_core::params::{compute_parameter_table, primitivity};
use qpoly_core::spectral::{
    build_b_blocks, build_transition_matrices, check_det_factorization, q_polynomial_generators,
    run_oracle, OracleOutcome, SpectralConfig, SpectralData,
};
use qpoly_core::{
    assess, isolate_eigenvalues_with, parse_array, Error, IntersectionArray, QPolyVerdict,
    Rational,
};

use crate::precision::format_width;

pub const TOOL_NAME: &str = "qpoly";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
pub mod exit {
    pub const Q_POLYNOMIAL: i32 = 0;
    pub const NOT_Q_POLYNOMIAL: i32 = 1;
    pub const HYPOTHESIS: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

/// Settings shared by every subcommand that touches the spectral path.
#[derive(Clone, Debug)]
pub struct Settings {
    pub width: Rational,
    pub spectral: SpectralConfig,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            width: qpoly_core::numeric::pow10_neg(20),
            spectral: SpectralConfig::default(),
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Diameter(_) => "diameter",
        Error::Feasibility(_) => "feasibility",
        Error::Hypothesis { .. } => "hypothesis",
        Error::Precision(_) => "precision",
        Error::Domain(_) => "domain",
        Error::NotDistanceRegular(_) => "not-distance-regular",
        Error::Unsupported(_) => "unsupported",
        Error::Internal(_) => "internal",
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Precision(_) | Error::Internal(_) | Error::Domain(_) => exit::INTERNAL,
        _ => exit::HYPOTHESIS,
    }
}

pub fn error_value(e: &Error) -> Value {
    json!({ "kind": error_kind(e), "message": e.to_string() })
}

pub fn tool_value() -> Value {
    json!({ "name": TOOL_NAME, "version": TOOL_VERSION })
}

fn micros(start: Instant) -> Value {
    Value::from(start.elapsed().as_micros() as u64)
}

pub fn spectrum_value(sd: &SpectralData) -> Value {
    json!({
        "eigenvalues": sd.theta.iter().map(|t| t.to_bracket_string()).collect::<Vec<_>>(),
        "multiplicities": sd.m.iter().map(|m| m.to_bracket_string()).collect::<Vec<_>>(),
        "width": format_width(&sd.max_theta_width()),
    })
}

fn oracle_value(
    arr: &IntersectionArray,
    verdict: &QPolyVerdict,
    settings: &Settings,
) -> (Value, Option<Error>) {
    let pt = match compute_parameter_table(arr) {
        Ok(pt) => pt,
        Err(e) => return (json!({ "error": error_value(&e) }), Some(e)),
    };
    let out: OracleOutcome = match run_oracle(arr, &pt, &settings.width, &settings.spectral) {
        Ok(o) => o,
        Err(e) => return (json!({ "error": error_value(&e) }), Some(e)),
    };
    let generators = q_polynomial_generators(&out.krein).unwrap_or_default();
    let found = out.ordering.is_some();
    let mut obj = Map::new();
    obj.insert("ordering".into(), json!(out.ordering));
    obj.insert("generators".into(), json!(generators));
    obj.insert("q_polynomial".into(), json!(found));
    obj.insert("zero_width".into(), json!(format_width(&settings.spectral.zero_width)));
    obj.insert("final_width".into(), json!(format_width(&out.spectral.max_theta_width())));
    let agrees = verdict.is_q_polynomial.map(|q| q == found);
    obj.insert("agrees".into(), json!(agrees));
    let mut failure = None;
    if verdict.primitive() {
        let tm = build_transition_matrices(&out.spectral);
        let blocks = build_b_blocks(&out.spectral, &pt);
        match check_det_factorization(&verdict.gram, &tm, &blocks) {
            Ok(ok) => {
                obj.insert("factorization_encloses_det".into(), json!(ok));
            }
            Err(e) => {
                obj.insert("factorization_encloses_det".into(), Value::Null);
                obj.insert("factorization_error".into(), error_value(&e));
            }
        }
        if agrees == Some(false) {
            failure = Some(Error::Internal(format!(
                "oracle disagrees: det(G) = {}, ordering found = {found}",
                verdict.det_g
            )));
        }
    }
    (Value::Object(obj), failure)
}

/// The report behind `check`, plus its exit code.
pub fn check_report(text: &str, oracle: bool, settings: &Settings) -> (Value, i32) {
    let start = Instant::now();
    let mut r = Map::new();
    r.insert("tool".into(), tool_value());
    r.insert("input".into(), json!(text));
    let arr = match parse_array(text) {
        Ok(a) => a,
        Err(e) => return fail(r, e, start),
    };
    r.insert("array".into(), json!(arr.to_text()));
    let verdict = match assess(&arr) {
        Ok(v) => v,
        Err(e) => return fail(r, e, start),
    };
    r.insert("feasibility".into(), feasibility_value(true, std::iter::empty()));
    r.insert("primitivity".into(), json!(verdict.primitivity.describe()));
    r.insert("det_g".into(), json!(verdict.det_g.to_string()));
    r.insert("is_q_polynomial".into(), json!(verdict.is_q_polynomial));
    r.insert(
        "gram".into(),
        json!({
            "dimension": 4 * arr.diameter(),
            "rank": verdict.diagnostics.rank,
            "psd": verdict.diagnostics.psd,
        }),
    );
    let gram_us = micros(start);

    let spec_start = Instant::now();
    let spectrum = match isolate_eigenvalues_with(&arr, &settings.width, &settings.spectral) {
        Ok(sd) => spectrum_value(&sd),
        Err(e) => json!({ "error": error_value(&e) }),
    };
    r.insert("spectrum".into(), spectrum);

    let mut failure = None;
    if oracle {
        let (v, f) = oracle_value(&arr, &verdict, settings);
        r.insert("oracle".into(), v);
        failure = f;
    }
    let spectral_us = micros(spec_start);
    r.insert(
        "timing_us".into(),
        json!({ "gram": gram_us, "spectral": spectral_us }),
    );

    let hypothesis = (!verdict.primitive()).then(|| Error::Hypothesis {
        reason: verdict.primitivity.describe().into(),
        det_g: verdict.det_g.clone(),
    });
    let (err, code) = match (&failure, &hypothesis, verdict.is_q_polynomial) {
        (Some(e), _, _) => (Some(e), exit::INTERNAL),
        (None, Some(h), _) => (Some(h), exit::HYPOTHESIS),
        (None, None, Some(true)) => (None, exit::Q_POLYNOMIAL),
        (None, None, _) => (None, exit::NOT_Q_POLYNOMIAL),
    };
    finish(r, err, code, start)
}

fn feasibility_value(ok: bool, violations: impl Iterator<Item = (&'static str, String)>) -> Value {
    let v: Vec<Value> = violations
        .map(|(rule, detail)| json!({ "rule": rule, "detail": detail }))
        .collect();
    json!({ "ok": ok, "violations": v })
}

fn fail(mut r: Map<String, Value>, e: Error, start: Instant) -> (Value, i32) {
    if let Error::Feasibility(rep) = &e {
        let violations = rep.violations.iter().map(|v| (v.rule, v.detail.clone()));
        r.insert("feasibility".into(), feasibility_value(false, violations));
    }
    finish(r, Some(&e), exit_code_for(&e), start)
}

fn finish(mut r: Map<String, Value>, err: Option<&Error>, code: i32, start: Instant) -> (Value, i32) {
    r.insert("error".into(), err.map_or(Value::Null, error_value));
    r.insert("exit_code".into(), json!(code));
    r.entry("timing_us").or_insert_with(|| json!({}));
    if let Some(Value::Object(t)) = r.get_mut("timing_us") {
        t.insert("total".into(), micros(start));
    }
    (Value::Object(r), code)
}

/// Params report: valencies, `a, b, c` and the full `p^h_ij` table.
pub fn params_value(arr: &IntersectionArray) -> Result<Value, Error> {
    let pt = compute_parameter_table(arr)?;
    let d = arr.diameter();
    let table: Vec<Vec<Vec<String>>> = (0..=d)
        .map(|h| {
            (0..=d)
                .map(|i| (0..=d).map(|j| pt.p(h, i, j).to_string()).collect())
                .collect()
        })
        .collect();
    Ok(json!({
        "tool": tool_value(),
        "array": arr.to_text(),
        "diameter": d,
        "order": arr.order().to_string(),
        "valencies": arr.valencies().iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "a": arr.a_values(),
        "b": arr.b_values(),
        "c": arr.c_values(),
        "primitivity": primitivity(arr).describe(),
        "p": table,
    }))
}

/// `p^h_ij = v` lines for every nonzero entry.
pub fn params_text(arr: &IntersectionArray) -> Result<String, Error> {
    let pt = compute_parameter_table(arr)?;
    let d = arr.diameter();
    let mut s = format!("array {arr}\norder {}\n", arr.order());
    let ks: Vec<String> = arr.valencies().iter().map(|k| k.to_string()).collect();
    s += &format!("valencies {}\n", ks.join(" "));
    for h in 0..=d {
        for i in 0..=d {
            for j in 0..=d {
                let v = pt.p(h, i, j);
                if !v.is_zero() {
                    s += &format!("p^{h}_{i}{j} = {v}\n");
                }
            }
        }
    }
    Ok(s)
}

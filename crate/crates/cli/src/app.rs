//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use qpoly_core::graph::{brute_force_gram, construct, extract_scheme, from_edge_list, GraphFamily};
use qpoly_core::gram::{Family, CANONICAL_ORDER};
use qpoly_core::spectral::{krein_parameters, q_polynomial_generators, find_q_ordering, ZeroFlag};
use qpoly_core::{
    build_gram, compute_parameter_table, isolate_eigenvalues_with, parse_array, Error,
};

use crate::cache::{cache_key, Cache, CACHE_ENV};
use crate::catalog::{self, CatalogEntry, Expectation};
use crate::precision::{format_width, parse_width};
use crate::report::{self, check_report, error_value, exit, Settings};

#[derive(Parser, Debug)]
#[command(name = "qpoly", version, about = "Decide Q-polynomiality of primitive distance-regular graphs from their intersection arrays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether an array is Q-polynomial (exit 0 yes, 1 no, 2 hypothesis or input failure, 3 internal or precision failure).
    Check(CheckArgs),
    /// Print the intersection numbers p^h_ij.
    Params(ArrayArgs),
    /// Print the Gram matrix G.
    Gram(GramArgs),
    /// Print eigenvalue enclosures, multiplicities and optionally Krein parameters.
    Spectrum(SpectrumArgs),
    /// Build an explicit graph and compare its brute-force G with the formula.
    Scheme(SchemeArgs),
    /// Work with the bundled catalog of arrays.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Debug)]
struct ArrayArgs {
    /// Intersection array, e.g. "6,4,2;1,2,3" or "{6,4,2;1,2,3}".
    #[arg(long)]
    array: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct PrecisionArgs {
    /// Eigenvalue enclosure width to start from (1e-20, 1/1000, 0.001).
    #[arg(long, default_value = "1e-20")]
    precision: String,
    /// Enclosures of Krein parameters at most this wide that contain 0 count as 0.
    #[arg(long, default_value = "1e-30")]
    zero_width: String,
}

impl PrecisionArgs {
    fn settings(&self) -> Result<Settings, Error> {
        let mut s = Settings {
            width: parse_width(&self.precision)?,
            ..Settings::default()
        };
        s.spectral.zero_width = parse_width(&self.zero_width)?;
        Ok(s)
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    array: ArrayArgs,
    /// Also run the Krein-parameter oracle and report agreement.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    precision: PrecisionArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MatrixFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct GramArgs {
    #[arg(long)]
    array: String,
    #[arg(long, value_enum, default_value = "text")]
    format: MatrixFormat,
    /// Shorthand for --format csv.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    /// Shorthand for --format json.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    array: ArrayArgs,
    /// Include the Krein parameter table and Q-polynomial orderings.
    #[arg(long)]
    krein: bool,
    #[command(flatten)]
    precision: PrecisionArgs,
}

#[derive(Args, Debug)]
struct SchemeArgs {
    /// Named construction, e.g. hamming:3:3, johnson:7:3, cycle:7, odd:4,
    /// folded-cube:7, halved-cube:7.
    #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
    family: Option<String>,
    /// File of "u v" lines with 0-indexed vertices.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Base vertex for the dual idempotents.
    #[arg(long, default_value_t = 0)]
    base: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Check every entry (with the oracle) and print one JSON line each.
    Run(CatalogRunArgs),
    /// List entries.
    List {
        #[arg(long)]
        filter: Option<String>,
        /// Read this catalog file instead of the bundled one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CatalogRunArgs {
    /// Only entries carrying this tag (or with this exact name).
    #[arg(long)]
    filter: Option<String>,
    /// Directory for the result cache.
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Ignore and do not update the cache.
    #[arg(long)]
    no_cache: bool,
    /// Read this catalog file instead of the bundled one.
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[command(flatten)]
    precision: PrecisionArgs,
}

/// Run the tool with explicit arguments and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::HYPOTHESIS } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check(a) => cmd_check(a, out),
        Command::Params(a) => cmd_params(a, out),
        Command::Gram(a) => cmd_gram(a, out),
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Scheme(a) => cmd_scheme(a, out),
        Command::Catalog(CatalogCommand::Run(a)) => cmd_catalog_run(a, out, err),
        Command::Catalog(CatalogCommand::List { filter, catalog }) => {
            cmd_catalog_list(filter, catalog, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(CliError::Core(e, json_mode)) => {
            if json_mode {
                let v = json!({ "tool": report::tool_value(), "error": error_value(&e) });
                let _ = writeln!(out, "{v}");
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            report::exit_code_for(&e)
        }
        // A closed pipe (`qpoly gram ... | head`) is not worth a message.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit::INTERNAL
        }
    }
}

enum CliError {
    /// A library error and whether output is in JSON mode.
    Core(Error, bool),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<i32, CliError>;

fn core(json: bool) -> impl Fn(Error) -> CliError {
    move |e| CliError::Core(e, json)
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> CliResult {
    let settings = a.precision.settings().map_err(core(a.array.json))?;
    let (report, code) = check_report(&a.array.array, a.oracle, &settings);
    if a.array.json {
        writeln!(out, "{report}")?;
    } else {
        write!(out, "{}", check_text(&report))?;
    }
    Ok(code)
}

fn field<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get(key).unwrap_or(&Value::Null)
}

fn check_text(r: &Value) -> String {
    let mut s = String::new();
    let line = |s: &mut String, k: &str, v: &dyn std::fmt::Display| {
        s.push_str(&format!("{k:<13}{v}\n"));
    };
    if let Some(a) = r.get("array").and_then(Value::as_str) {
        line(&mut s, "array", &format!("{{{a}}}"));
    }
    if let Some(p) = r.get("primitivity").and_then(Value::as_str) {
        line(&mut s, "primitivity", &p);
    }
    if let Some(d) = r.get("det_g").and_then(Value::as_str) {
        line(&mut s, "det(G)", &d);
    }
    let verdict = match field(r, "is_q_polynomial") {
        Value::Bool(true) => "Q-polynomial",
        Value::Bool(false) => "not Q-polynomial",
        _ => "no verdict",
    };
    if r.get("det_g").is_some() {
        line(&mut s, "verdict", &verdict);
    }
    if let Some(o) = r.get("oracle") {
        let text = if let Some(e) = o.get("error") {
            format!("error: {}", field(e, "message").as_str().unwrap_or_default())
        } else {
            let ord = match field(o, "ordering") {
                Value::Array(v) => format!(
                    "ordering {}",
                    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                ),
                _ => "no Q-polynomial ordering".into(),
            };
            match field(o, "agrees") {
                Value::Bool(true) => format!("{ord} (agrees)"),
                Value::Bool(false) => format!("{ord} (DISAGREES)"),
                _ => ord,
            }
        };
        line(&mut s, "oracle", &text);
    }
    if let Some(e) = r.get("error").filter(|e| !e.is_null()) {
        line(
            &mut s,
            "error",
            &format!(
                "{} ({})",
                field(e, "message").as_str().unwrap_or_default(),
                field(e, "kind").as_str().unwrap_or_default()
            ),
        );
    }
    s
}

fn cmd_params(a: ArrayArgs, out: &mut dyn Write) -> CliResult {
    let arr = parse_array(&a.array).map_err(core(a.json))?;
    if a.json {
        let v = report::params_value(&arr).map_err(core(true))?;
        writeln!(out, "{v}")?;
    } else {
        write!(out, "{}", report::params_text(&arr).map_err(core(false))?)?;
    }
    Ok(0)
}

fn gram_labels(d: usize) -> Vec<String> {
    CANONICAL_ORDER
        .iter()
        .flat_map(|f: &Family| (1..=d).map(move |i| format!("{}{i}", f.name())))
        .collect()
}

fn cmd_gram(a: GramArgs, out: &mut dyn Write) -> CliResult {
    let format = if a.csv {
        MatrixFormat::Csv
    } else if a.json {
        MatrixFormat::Json
    } else {
        a.format
    };
    let json_mode = format == MatrixFormat::Json;
    let arr = parse_array(&a.array).map_err(core(json_mode))?;
    let pt = compute_parameter_table(&arr).map_err(core(json_mode))?;
    let g = build_gram(&pt);
    let m = g.matrix();
    let rows: Vec<Vec<String>> = (0..m.dim())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    match format {
        MatrixFormat::Csv => {
            for r in &rows {
                writeln!(out, "{}", r.join(","))?;
            }
        }
        MatrixFormat::Json => {
            let v = json!({
                "tool": report::tool_value(),
                "array": arr.to_text(),
                "labels": gram_labels(arr.diameter()),
                "rows": rows,
            });
            writeln!(out, "{v}")?;
        }
        MatrixFormat::Text => {
            let labels = gram_labels(arr.diameter());
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1).max(3);
            write!(out, "{:>4}", "")?;
            for l in &labels {
                write!(out, " {l:>width$}")?;
            }
            writeln!(out)?;
            for (l, r) in labels.iter().zip(&rows) {
                write!(out, "{l:>4}")?;
                for x in r {
                    write!(out, " {x:>width$}")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(0)
}

fn flag_text(f: &ZeroFlag) -> String {
    match f {
        ZeroFlag::CertNonzero => "nonzero".into(),
        ZeroFlag::NumericZero(w) => format!("zero (width {})", format_width(w)),
        ZeroFlag::Indeterminate(w) => format!("undecided (width {})", format_width(w)),
    }
}

fn cmd_spectrum(a: SpectrumArgs, out: &mut dyn Write) -> CliResult {
    let json_mode = a.array.json;
    let settings = a.precision.settings().map_err(core(json_mode))?;
    let arr = parse_array(&a.array.array).map_err(core(json_mode))?;
    let pt = compute_parameter_table(&arr).map_err(core(json_mode))?;
    let mut sd =
        isolate_eigenvalues_with(&arr, &settings.width, &settings.spectral).map_err(core(json_mode))?;
    let mut value = report::spectrum_value(&sd);
    let mut krein_lines = Vec::new();
    if a.krein {
        let kt = krein_parameters(&mut sd, &pt, &settings.spectral).map_err(core(json_mode))?;
        value = report::spectrum_value(&sd);
        let d = arr.diameter();
        let mut table = Vec::new();
        for h in 0..=d {
            for i in 0..=d {
                for j in 0..=d {
                    let q = kt.q(h, i, j);
                    let flag = flag_text(kt.flag(h, i, j));
                    krein_lines.push(format!("q^{h}_{i}{j} {:<12} {}", flag, q.to_bracket_string()));
                    table.push(json!({
                        "h": h, "i": i, "j": j,
                        "enclosure": q.to_bracket_string(),
                        "flag": flag,
                    }));
                }
            }
        }
        let ordering = find_q_ordering(&kt).map_err(core(json_mode))?;
        let generators = q_polynomial_generators(&kt).map_err(core(json_mode))?;
        if let Value::Object(obj) = &mut value {
            obj.insert("krein".into(), Value::Array(table));
            obj.insert("ordering".into(), json!(ordering));
            obj.insert("generators".into(), json!(generators));
        }
        krein_lines.push(match ordering {
            Some(o) => format!("Q-polynomial ordering {o:?}, generators {generators:?}"),
            None => "no Q-polynomial ordering".into(),
        });
    }
    if json_mode {
        if let Value::Object(obj) = &mut value {
            obj.insert("tool".into(), report::tool_value());
            obj.insert("array".into(), json!(arr.to_text()));
        }
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "array {arr}")?;
        for (j, (t, m)) in sd.theta.iter().zip(&sd.m).enumerate() {
            writeln!(out, "theta_{j} {}  m_{j} {}", t.to_bracket_string(), m.to_bracket_string())?;
        }
        for l in krein_lines {
            writeln!(out, "{l}")?;
        }
    }
    Ok(0)
}

fn cmd_scheme(a: SchemeArgs, out: &mut dyn Write) -> CliResult {
    let j = a.json;
    let graph = match (&a.family, &a.edges) {
        (Some(f), _) => {
            let fam: GraphFamily = f.parse().map_err(core(j))?;
            construct(&fam).map_err(core(j))?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            from_edge_list(&text).map_err(core(j))?
        }
        (None, None) => unreachable!("clap requires one of --family / --edges"),
    };
    let scheme = extract_scheme(&graph).map_err(core(j))?;
    let arr = scheme.intersection_array().map_err(core(j))?;
    let pt = compute_parameter_table(&arr).map_err(core(j))?;
    let brute = brute_force_gram(&scheme, a.base).map_err(core(j))?;
    let matches = brute == build_gram(&pt);
    let table_ok = scheme.check_parameter_table(&pt, a.base);
    let poly_ok = scheme.check_distance_polynomials();
    let disconnected = scheme.disconnected_distance_graphs();
    if j {
        let v = json!({
            "tool": report::tool_value(),
            "graph": graph.family().to_string(),
            "vertices": graph.vertex_count(),
            "edges": graph.edge_count(),
            "array": arr.to_text(),
            "primitive": disconnected.is_empty(),
            "disconnected_distance_graphs": disconnected,
            "gram_matches_formula": matches,
            "parameter_table_matches": table_ok,
            "distance_polynomials_hold": poly_ok,
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "graph        {} ({} vertices, {} edges)", graph.family(), graph.vertex_count(), graph.edge_count())?;
        writeln!(out, "array        {arr}")?;
        writeln!(out, "primitive    {}", if disconnected.is_empty() { "yes".to_string() } else { format!("no (distance graphs {disconnected:?} disconnected)") })?;
        writeln!(out, "G matches    {matches}")?;
        writeln!(out, "p^h_ij match {table_ok}")?;
        writeln!(out, "v_i(A) = A_i {poly_ok}")?;
    }
    Ok(if matches && table_ok && poly_ok { 0 } else { exit::INTERNAL })
}

fn load_catalog(path: Option<PathBuf>) -> Result<Vec<CatalogEntry>, CliError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            catalog::parse_catalog(&text).map_err(core(false))
        }
        None => Ok(catalog::bundled()),
    }
}

fn cmd_catalog_list(filter: Option<String>, path: Option<PathBuf>, out: &mut dyn Write) -> CliResult {
    for e in load_catalog(path)? {
        if filter.as_deref().is_none_or(|f| e.matches(f)) {
            writeln!(out, "{:<30} {{{}}}  {}", e.name, e.array.to_text(), e.tags.join(","))?;
        }
    }
    Ok(0)
}

/// The full catalog report for one entry, without the `cached` flag.
pub fn catalog_entry_report(entry: &CatalogEntry, settings: &Settings) -> Value {
    let text = entry.array.to_text();
    let (mut report, _) = check_report(&text, true, settings);
    let obj = report.as_object_mut().expect("reports are objects");
    obj.insert("name".into(), json!(entry.name));
    obj.insert("tags".into(), json!(entry.tags));
    if let Some(fam) = entry.realization() {
        obj.insert("graph_oracle".into(), graph_oracle_value(&fam, &text));
    }
    report
}

fn graph_oracle_value(fam: &GraphFamily, expected_array: &str) -> Value {
    let start = Instant::now();
    let run = || -> Result<Value, Error> {
        let scheme = extract_scheme(&construct(fam)?)?;
        let arr = scheme.intersection_array()?;
        let pt = compute_parameter_table(&arr)?;
        Ok(json!({
            "graph": fam.to_string(),
            "array_matches": arr.to_text() == expected_array,
            "gram_matches_formula": brute_force_gram(&scheme, 0)? == build_gram(&pt),
            "primitive": scheme.is_primitive(),
        }))
    };
    let mut v = run().unwrap_or_else(|e| json!({ "graph": fam.to_string(), "error": error_value(&e) }));
    if let Value::Object(o) = &mut v {
        o.insert("timing_us".into(), json!(start.elapsed().as_micros() as u64));
    }
    v
}

/// Whether the report satisfies the entry's expectation. `None` when there
/// is nothing to assert.
pub fn expectation_met(entry: &CatalogEntry, report: &Value) -> Option<bool> {
    if !entry.oracle_derived() {
        return None;
    }
    let expected = entry.expectation()?;
    let primitive = field(report, "primitivity").as_str() == Some("primitive");
    let q = field(report, "is_q_polynomial").as_bool();
    Some(match expected {
        Expectation::Imprimitive => !primitive,
        Expectation::QPolynomial => q == Some(true),
        Expectation::NotQPolynomial => q == Some(false),
    })
}

fn cmd_catalog_run(a: CatalogRunArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let settings = a.precision.settings().map_err(core(true))?;
    let entries: Vec<CatalogEntry> = load_catalog(a.catalog)?
        .into_iter()
        .filter(|e| a.filter.as_deref().is_none_or(|f| e.matches(f)))
        .collect();
    let cache_dir = a.cache_dir.unwrap_or_else(|| PathBuf::from(".qpoly-cache"));
    let mut cache = (!a.no_cache).then(|| Cache::open(&cache_dir));

    let keys: Vec<String> = entries
        .iter()
        .map(|e| cache_key(&e.array.to_text(), &settings))
        .collect();
    let cached: Vec<Option<Value>> = keys
        .iter()
        .map(|k| cache.as_ref().and_then(|c| c.get(k).cloned()))
        .collect();
    let fresh: Vec<Option<Value>> = entries
        .par_iter()
        .zip(&cached)
        .map(|(e, c)| c.is_none().then(|| catalog_entry_report(e, &settings)))
        .collect();

    let (mut disagreements, mut failures, mut mismatches, mut hits) = (0, 0, 0, 0);
    for (i, entry) in entries.iter().enumerate() {
        let (mut report, was_cached) = match (&cached[i], &fresh[i]) {
            (Some(v), _) => (v.clone(), true),
            (None, Some(v)) => (v.clone(), false),
            (None, None) => unreachable!(),
        };
        if !was_cached {
            if let Some(c) = cache.as_mut() {
                c.insert(keys[i].clone(), report.clone());
            }
        } else {
            hits += 1;
        }
        let oracle = field(&report, "oracle");
        if field(oracle, "agrees") == &Value::Bool(false) {
            disagreements += 1;
        }
        if field(&report, "exit_code").as_i64() == Some(exit::INTERNAL as i64) {
            failures += 1;
        }
        let met = expectation_met(entry, &report);
        if met == Some(false) {
            mismatches += 1;
        }
        let obj = report.as_object_mut().expect("reports are objects");
        obj.insert("cached".into(), json!(was_cached));
        obj.insert(
            "expectation".into(),
            json!({
                "expected": entry.expectation().map(|x| x.to_string()),
                "asserted": entry.oracle_derived(),
                "met": met,
            }),
        );
        writeln!(out, "{report}")?;
    }
    if let Some(c) = cache.as_mut() {
        if let Err(e) = c.save() {
            writeln!(err, "warning: could not write cache {}: {e}", c.path().display())?;
        }
    }
    writeln!(
        err,
        "{} entries, {disagreements} oracle disagreements, {mismatches} expectation mismatches, {failures} internal failures, {hits} cached",
        entries.len()
    )?;
    Ok(if disagreements + failures > 0 {
        exit::INTERNAL
    } else if mismatches > 0 {
        exit::NOT_Q_POLYNOMIAL
    } else {
        0
    })
}

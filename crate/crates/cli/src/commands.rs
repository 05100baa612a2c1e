use std::fs;
use std::path::Path;

use dbe_core::curve::{build_theorem3_curve_with, check_dbe_property, sample, CurveSpec, Theorem3Curve};
use dbe_core::estimate::{box_count_series, certify, polyline_length, run_lemma_suite, DEFAULT_EXTRA_DEPTH};
use dbe_core::family::{max_family, near_pencil, unique_intersection};
use dbe_core::Error;
use serde_json::{json, Value};

use crate::args::{CertifyArgs, CurveArgs, EmitArgs, Format, VerifyArgs};

pub const SCHEMA_VERSION: u32 = 1;

/// Decimal places for lengths in emitted tables.
const TABLE_DIGITS: usize = 20;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameters; exit code 2.
    Usage(String),
    /// A computation could not complete; exit code 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Parse(_) | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

pub enum Output {
    Json(Value),
    Table { header: Vec<String>, rows: Vec<Vec<String>> },
}

pub struct Outcome {
    pub output: Output,
    pub passed: bool,
}

fn json_only(format: Format, doc: Value, passed: bool) -> Result<Outcome, Failure> {
    if format == Format::Csv {
        return Err(Failure::Usage("this command only writes JSON".into()));
    }
    Ok(Outcome { output: Output::Json(doc), passed })
}

fn build(c: &CurveArgs) -> Result<Theorem3Curve, Failure> {
    Ok(build_theorem3_curve_with(c.n, &c.a, c.mappers, &c.alpha, c.staircase_depth)?)
}

/// Curve from `--spec` (a `construct` document or a bare curve spec) or
/// from the curve flags.
fn load_curve(spec: Option<&Path>, c: &CurveArgs) -> Result<CurveSpec, Failure> {
    let Some(path) = spec else {
        return Ok(build(c)?.spec);
    };
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let Some(v) = doc.get("schema_version") {
        if v != SCHEMA_VERSION {
            return Err(Failure::Usage(format!("unsupported schema_version {v}")));
        }
    }
    let inner = doc.pointer("/curve/spec").cloned().unwrap_or(doc);
    serde_json::from_value(inner).map_err(|e| Failure::Usage(format!("{}: not a curve spec: {e}", path.display())))
}

pub fn construct(c: &CurveArgs, format: Format) -> Result<Outcome, Failure> {
    let curve = build(c)?;
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "params": { "n": c.n, "a": c.a, "M": c.mappers, "alpha": c.alpha, "staircase_depth": c.staircase_depth },
        "curve": curve,
    });
    json_only(format, doc, true)
}

pub fn certify_cmd(args: &CertifyArgs, format: Format) -> Result<Outcome, Failure> {
    let curve = load_curve(args.spec.as_deref(), &args.curve)?;
    let cert = certify(&curve, args.d, args.precision)?;
    let view = cert.view();
    let passed = view.valid;
    json_only(format, json!({ "schema_version": SCHEMA_VERSION, "n": curve.n, "certificate": view }), passed)
}

pub fn verify(args: &VerifyArgs, format: Format) -> Result<Outcome, Failure> {
    if !(args.dbe || args.family || args.lemmas) {
        return Err(Failure::Usage("select at least one of --dbe, --family, --lemmas".into()));
    }
    let mut suites = serde_json::Map::new();
    let mut passed = true;
    if args.dbe {
        let curve = build(&args.curve)?;
        let rep = check_dbe_property(&sample(&curve.spec, args.d)?)?;
        passed &= rep.ok;
        suites.insert("dbe".into(), json!({ "n": args.curve.n, "d": args.d, "ok": rep.ok, "report": rep }));
    }
    if args.family {
        let n = args.curve.n as u32;
        let best = max_family(n)?;
        let mut ok = unique_intersection(&best) && best.len() == n as usize;
        let mut witness = Value::Null;
        if n >= 3 {
            let np = near_pencil(n)?;
            ok &= unique_intersection(&np) && np.len() == n as usize;
            witness = serde_json::to_value(&np).map_err(Error::from)?;
        }
        passed &= ok;
        suites.insert(
            "family".into(),
            json!({ "n": n, "max": best.len(), "family": best, "near_pencil": witness, "ok": ok }),
        );
    }
    if args.lemmas {
        let rep = run_lemma_suite(args.trials, args.seed);
        let ok = rep.ok();
        passed &= ok;
        suites.insert("lemmas".into(), json!({ "ok": ok, "report": rep }));
    }
    let doc = json!({ "schema_version": SCHEMA_VERSION, "ok": passed, "suites": suites });
    json_only(format, doc, passed)
}

fn table(format: Format, header: Vec<String>, rows: Vec<Vec<String>>, extra: Value) -> Outcome {
    let output = match format {
        Format::Csv => Output::Table { header, rows },
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                .collect();
            let mut doc = json!({ "schema_version": SCHEMA_VERSION, "rows": records });
            if let (Value::Object(d), Value::Object(e)) = (&mut doc, extra) {
                d.extend(e);
            }
            Output::Json(doc)
        }
    };
    Outcome { output, passed: true }
}

pub fn emit(args: &EmitArgs, format: Format) -> Result<Outcome, Failure> {
    let curve = load_curve(args.spec.as_deref(), &args.curve)?;
    let sel = &args.select;
    if sel.samples {
        let d = args.d.single().ok_or_else(|| Failure::Usage("--samples takes a single depth".into()))?;
        let pts = sample(&curve, d)?;
        let header = (1..=curve.n).map(|i| format!("x{i}")).collect();
        let rows = pts.iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect();
        return Ok(table(format, header, rows, json!({ "kind": "samples", "d": d })));
    }
    if sel.length_series {
        let mut rows = Vec::new();
        for d in args.d.range() {
            let p = polyline_length(&curve, d, args.precision)?;
            rows.push(vec![
                d.to_string(),
                p.value.to_decimal(TABLE_DIGITS),
                p.error_radius.to_decimal_up(TABLE_DIGITS),
            ]);
        }
        let header = ["depth", "length", "error_radius"].map(String::from).to_vec();
        return Ok(table(format, header, rows, json!({ "kind": "length_series" })));
    }
    let series = box_count_series(&curve, args.levels.range(), DEFAULT_EXTRA_DEPTH)?;
    let rows = series.counts.iter().map(|b| vec![b.m.to_string(), b.delta.to_string(), b.count.to_string()]).collect();
    let header = ["m", "delta", "count"].map(String::from).to_vec();
    Ok(table(format, header, rows, json!({ "kind": "boxcount", "slope_estimate": series.slope_estimate })))
}

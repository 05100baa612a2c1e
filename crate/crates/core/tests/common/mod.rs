#![allow(dead_code)]

use std::str::FromStr;

use dbe_core::curve::build_theorem3_curve;
use dbe_core::estimate::{cantor_graph_length, collapsed_riesz_nagy_length, grid_length, PolylineLength};
use dbe_core::numeric::{Interval, IntervalUnion, Rational};
use dbe_core::partition::{cover_sum, greedy_partition};
use dbe_core::singular::{eval_cantor, eval_riesz_nagy, image_measure, MonotoneFn};
use serde::Deserialize;
use serde_json::Value;

pub const PRECISION: u32 = 64;

#[derive(Debug, Deserialize)]
pub struct Corpus {
    pub schema_version: u32,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
pub struct Entry {
    pub name: String,
    pub kind: String,
    pub params: Value,
    pub expected: Value,
    pub tolerance: String,
    pub source: String,
}

pub fn corpus() -> Corpus {
    let raw = include_str!("../fixtures/regression.json");
    serde_json::from_str(raw).expect("regression corpus parses")
}

fn rat(v: &Value) -> Rational {
    Rational::from_str(v.as_str().expect("rational string")).expect("valid rational")
}

fn num(v: &Value) -> f64 {
    v.as_str().expect("float string").parse().expect("valid float")
}

fn depth(e: &Entry) -> u32 {
    e.params["depth"].as_u64().expect("depth") as u32
}

fn within(e: &Entry, est: &PolylineLength) -> Result<(), String> {
    let expected = num(&e.expected);
    let tol: f64 = e.tolerance.parse().unwrap();
    let gap = (est.value.to_f64() - expected).abs();
    let allowed = tol + est.error_radius.to_f64();
    if gap <= allowed {
        Ok(())
    } else {
        Err(format!("{}: estimator {} vs oracle {expected}, gap {gap:e} > {allowed:e}", e.name, est.value.to_f64()))
    }
}

fn exact(e: &Entry, got: Rational) -> Result<(), String> {
    let want = rat(&e.expected);
    if got == want {
        Ok(())
    } else {
        Err(format!("{}: got {got}, oracle {want}", e.name))
    }
}

/// Runs one corpus entry against the optimized implementation.
pub fn check_entry(e: &Entry) -> Result<(), String> {
    let p = &e.params;
    let err = |x: dbe_core::Error| format!("{}: {x}", e.name);
    match e.kind.as_str() {
        "collapsed_polyline" => {
            within(e, &collapsed_riesz_nagy_length(&rat(&p["a"]), depth(e), PRECISION).map_err(err)?)
        }
        "grid_polyline" => {
            let n = p["n"].as_u64().unwrap() as usize;
            let m = p["M"].as_u64().unwrap() as usize;
            let curve = build_theorem3_curve(n, &rat(&p["a"]), m, &rat(&p["alpha"])).map_err(err)?;
            within(e, &grid_length(&curve.spec, depth(e), PRECISION).map_err(err)?)
        }
        "cantor_polyline" => within(e, &cantor_graph_length(depth(e), PRECISION).map_err(err)?),
        "cantor_value" => exact(e, eval_cantor(&rat(&p["x"])).map_err(err)?),
        "riesz_nagy_value" => exact(e, eval_riesz_nagy(&rat(&p["a"]), &rat(&p["x"])).map_err(err)?),
        "image_measure" => {
            let (a, b) = (rat(&p["lo"]), rat(&p["hi"]));
            let f = MonotoneFn::riesz_nagy(rat(&p["a"]));
            let (got_lo, got_hi) = if a.is_dyadic() && b.is_dyadic() {
                let u = IntervalUnion::from_interval(Interval::closed(a, b));
                let v = image_measure(&f, &u).map_err(err)?;
                (v.clone(), v)
            } else {
                let (fa_lo, fa_hi) = f.eval_or_enclose(&a, 96).map_err(err)?;
                let (fb_lo, fb_hi) = f.eval_or_enclose(&b, 96).map_err(err)?;
                (fb_lo - fa_hi, fb_hi - fa_lo)
            };
            let (lo, hi) = (rat(&e.expected["lower"]), rat(&e.expected["upper"]));
            if lo <= got_hi && got_lo <= hi {
                Ok(())
            } else {
                Err(format!("{}: [{got_lo}, {got_hi}] misses oracle bracket [{lo}, {hi}]", e.name))
            }
        }
        "cover_sum" => {
            let parts = p["union"]
                .as_array()
                .unwrap()
                .iter()
                .map(|pair| Interval::closed(rat(&pair[0]), rat(&pair[1])))
                .collect();
            let u = IntervalUnion::from_intervals(parts);
            let part = greedy_partition(&u, &rat(&p["delta"])).map_err(err)?;
            exact(e, cover_sum(&part).value)
        }
        other => Err(format!("{}: unknown kind {other}", e.name)),
    }
}

//! JSON encodings of balls, cheeses, cells and reports.

use serde_json::{json, Map, Value};
use vdistal_core::ball::{Ball, BallKind};
use vdistal_core::cheese::SwissCheese;
use vdistal_core::distal::{Cell, Source, UshdReport, Verdict};
use vdistal_core::field::{FieldContext, FieldElement};
use vdistal_core::qf1::parse_element;
use vdistal_core::ExtInt;

use crate::error::CliError;

pub const SCHEMA: &str = "vdistal/1";

pub fn radius(r: ExtInt) -> Value {
    match r {
        ExtInt::Fin(n) => json!(n),
        other => json!(other.to_string()),
    }
}

pub fn ball(b: &Ball) -> Value {
    json!({ "kind": b.kind().as_str(), "center": b.center().to_string(), "radius": radius(b.radius()) })
}

pub fn cheese(s: &SwissCheese) -> Value {
    Value::Array(
        s.cheeses()
            .iter()
            .map(|c| json!({ "round": ball(&c.round), "holes": c.holes.iter().map(ball).collect::<Vec<_>>() }))
            .collect(),
    )
}

pub fn source(s: Source) -> Value {
    match s {
        Source::Top => json!("top"),
        Source::Join(i, j) => json!([i, j]),
    }
}

pub fn cell(c: &Cell) -> Value {
    json!({
        "round": ball(&c.round),
        "holes": c.holes.iter().map(ball).collect::<Vec<_>>(),
        "round_source": source(c.round_source),
        "hole_sources": c.hole_sources.iter().map(|s| source(*s)).collect::<Vec<_>>(),
    })
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Inside => "inside",
        Verdict::Outside => "outside",
        Verdict::Cut => "cut",
    }
}

pub fn ushd_report(r: &UshdReport) -> Value {
    json!({
        "cell_count": r.cell_count,
        "max_holes": r.max_holes,
        "clean": r.is_clean(),
        "verdicts": r.verdicts.iter().map(|row| row.iter().map(|v| verdict(*v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "cuts": r.cuts,
        "sample_mismatches": r.sample_mismatches,
    })
}

fn parse_radius(v: &Value) -> Result<ExtInt, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(ExtInt::Fin).ok_or_else(|| CliError::Parse(format!("radius {n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|e| CliError::Parse(format!("{e}"))),
        other => Err(CliError::Parse(format!("radius must be an integer or \"+inf\"/\"-inf\", got {other}"))),
    }
}

pub fn parse_ball(ctx: &FieldContext, v: &Value) -> Result<Ball, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::Parse(format!("a ball must be an object, got {v}")))?;
    let field = |k: &str| obj.get(k).ok_or_else(|| CliError::Parse(format!("ball is missing \"{k}\": {v}")));
    let kind = match field("kind")?.as_str() {
        Some("closed") => BallKind::Closed,
        Some("open") => BallKind::Open,
        _ => return Err(CliError::Parse(format!("ball kind must be \"closed\" or \"open\": {v}"))),
    };
    let center = match field("center")? {
        Value::String(s) => element(ctx, s)?,
        Value::Number(n) => element(ctx, &n.to_string())?,
        other => return Err(CliError::Parse(format!("ball center must be a string, got {other}"))),
    };
    Ok(Ball::new(ctx, kind, &center, parse_radius(field("radius")?)?))
}

pub fn element(ctx: &FieldContext, s: &str) -> Result<FieldElement, CliError> {
    parse_element(ctx, s).map_err(|e| CliError::Parse(format!("bad element {s:?}: {e}")))
}

/// A list of parameter tuples: `[["0"], ["1+t"]]` or, for one parameter,
/// `["0", "1+t"]`.
pub fn parse_params(ctx: &FieldContext, v: &Value) -> Result<Vec<Vec<FieldElement>>, CliError> {
    let list = v.as_array().ok_or_else(|| CliError::Parse("parameters must be a JSON array".into()))?;
    list.iter()
        .map(|item| match item {
            Value::Array(xs) => xs.iter().map(|x| scalar(ctx, x)).collect(),
            x => Ok(vec![scalar(ctx, x)?]),
        })
        .collect()
}

fn scalar(ctx: &FieldContext, v: &Value) -> Result<FieldElement, CliError> {
    match v {
        Value::String(s) => element(ctx, s),
        Value::Number(n) => element(ctx, &n.to_string()),
        other => Err(CliError::Parse(format!("expected an element, got {other}"))),
    }
}

/// `{"schema", "config", ...fields}` with keys in insertion order.
pub fn document(config: &Value, fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("config".into(), config.clone());
    for (k, v) in fields {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

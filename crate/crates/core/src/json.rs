//! Canonical JSON rendering and the PointSet file format.
//!
//! Floats are written with 17 significant digits in `%g` style, object keys
//! keep insertion order, and arrays of scalars stay on one line, so equal
//! inputs always render to identical bytes.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// `%.17g`-style rendering of a finite float.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        // not representable in JSON
        return "null".into();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Render a value canonically (two-space indent, scalar arrays inline).
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn write_scalar(out: &mut String, v: &Value) {
    match v {
        Value::Number(num) => match (num.as_i64(), num.as_u64()) {
            (Some(i), _) => out.push_str(&i.to_string()),
            (_, Some(u)) => out.push_str(&u.to_string()),
            _ => out.push_str(&fmt_num(num.as_f64().unwrap_or(f64::NAN))),
        },
        other => out.push_str(&serde_json::to_string(other).expect("scalar")),
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if is_flat(v) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_scalar(out, x);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
        scalar => write_scalar(out, scalar),
    }
}

/// Float as a JSON value (non-finite becomes null).
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// The `{"dim", "sphere_radius", "points"}` object, followed by `extras`.
pub fn point_set_value(ps: &PointSet, extras: Vec<(String, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("dim".into(), Value::from(ps.dim()));
    m.insert("sphere_radius".into(), ps.sphere_radius().map_or(Value::Null, num));
    m.insert(
        "points".into(),
        Value::Array(
            ps.points()
                .iter()
                .map(|p| Value::Array(p.iter().map(|&x| num(x)).collect()))
                .collect(),
        ),
    );
    for (k, v) in extras {
        m.insert(k, v);
    }
    Value::Object(m)
}

pub fn point_set_to_json(ps: &PointSet) -> String {
    render(&point_set_value(ps, Vec::new()))
}

/// Parse a PointSet file; unknown top-level fields are ignored.
pub fn point_set_from_json(text: &str) -> Result<PointSet> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    point_set_from_value(&v)
}

pub fn point_set_from_value(v: &Value) -> Result<PointSet> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer field \"dim\"".into()))? as usize;
    let radius = match obj.get("sphere_radius") {
        None | Some(Value::Null) => None,
        Some(r) => Some(
            r.as_f64()
                .ok_or_else(|| Error::Parse("\"sphere_radius\" must be a number or null".into()))?,
        ),
    };
    let raw = obj
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field \"points\"".into()))?;
    let mut points = Vec::with_capacity(raw.len());
    for (i, p) in raw.iter().enumerate() {
        let coords = p
            .as_array()
            .ok_or_else(|| Error::Parse(format!("point {i} is not an array")))?;
        let coords: Option<Vec<f64>> = coords.iter().map(Value::as_f64).collect();
        points.push(coords.ok_or_else(|| Error::Parse(format!("point {i} has a non-numeric coordinate")))?);
    }
    match radius {
        Some(r) => PointSet::on_sphere(dim, r, points),
        None => PointSet::new(dim, points),
    }
}

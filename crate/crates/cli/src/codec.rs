//! JSON encoding of rationals, number fields, polynomials and presentations.

use serde_json::{json, Map, Value};

use qrank_core::arith::{format_rational, parse_rational, Rational};
use qrank_core::groups::{Ambient, CompanionPresentation};
use qrank_core::numfield::{KPoly, NfElem, NumberField};
use qrank_core::poly::{Poly, QPoly};
use qrank_core::{Error, Result};

pub fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// The object's fields, rejecting keys outside `allowed`.
pub fn object<'a>(v: &'a Value, what: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let m = v.as_object().ok_or_else(|| parse_error(format!("{what} must be a JSON object")))?;
    if let Some(k) = m.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(parse_error(format!("unexpected field {k:?} in {what}")));
    }
    Ok(m)
}

pub fn field<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| parse_error(format!("{what} is missing {key:?}")))
}

pub fn parse_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| parse_error(format!("{what} must be a non-negative integer")))
}

pub fn parse_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_error(format!("{what} must be an integer")))
}

pub fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    usize::try_from(parse_u64(v, what)?).map_err(|_| parse_error(format!("{what} is too large")))
}

/// A rational given as "p", "p/q" or a JSON integer.
pub fn parse_rat(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => Err(parse_error(format!("expected a rational string, got {v}"))),
    }
}

pub fn rat_json(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn rat_list(v: &Value, what: &str) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| parse_error(format!("{what} must be an array")))?
        .iter()
        .map(parse_rat)
        .collect()
}

/// {"coeffs": [...]} with rational entries.
pub fn parse_qpoly(v: &Value) -> Result<QPoly> {
    let m = object(v, "polynomial", &["coeffs"])?;
    Ok(Poly::new(rat_list(field(m, "coeffs", "polynomial")?, "coeffs")?))
}

pub fn qpoly_json(p: &QPoly) -> Value {
    json!({ "coeffs": p.coeffs().iter().map(rat_json).collect::<Vec<_>>() })
}

/// "Q" or {"min_poly": {"coeffs": [...]}}.
pub fn parse_field(v: &Value) -> Result<NumberField> {
    if v.as_str() == Some("Q") {
        return Ok(NumberField::rationals());
    }
    let m = object(v, "number field", &["min_poly"])?;
    NumberField::new(parse_qpoly(field(m, "min_poly", "number field")?)?)
}

pub fn field_json(k: &NumberField) -> Value {
    if k.is_rationals() {
        Value::String("Q".into())
    } else {
        json!({ "min_poly": qpoly_json(k.min_poly()) })
    }
}

/// A field element: {"coords": [...]}, a bare coordinate array, or a rational.
pub fn parse_elem(k: &NumberField, v: &Value) -> Result<NfElem> {
    let coords = match v {
        Value::Object(_) => {
            let m = object(v, "element", &["coords"])?;
            rat_list(field(m, "coords", "element")?, "coords")?
        }
        Value::Array(_) => rat_list(v, "coords")?,
        _ => vec![parse_rat(v)?],
    };
    if coords.len() > k.degree() {
        return Err(parse_error(format!(
            "element has {} coordinates but the field has degree {}",
            coords.len(),
            k.degree()
        )));
    }
    Ok(k.elem(coords))
}

fn coords_json(k: &NumberField, a: &NfElem) -> Vec<Value> {
    (0..k.degree())
        .map(|i| a.coords.get(i).map_or_else(|| Value::String("0".into()), rat_json))
        .collect()
}

pub fn elem_json(k: &NumberField, a: &NfElem) -> Value {
    json!({ "coords": coords_json(k, a) })
}

/// A polynomial over K; coefficients follow the element encoding.
pub fn parse_kpoly(k: &NumberField, v: &Value) -> Result<KPoly> {
    let m = object(v, "polynomial", &["coeffs"])?;
    let cs = field(m, "coeffs", "polynomial")?
        .as_array()
        .ok_or_else(|| parse_error("coeffs must be an array"))?;
    Ok(Poly::new(cs.iter().map(|c| parse_elem(k, c)).collect::<Result<_>>()?))
}

/// Over Q coefficients are rational strings; otherwise coordinate arrays.
pub fn kpoly_json(k: &NumberField, p: &KPoly) -> Value {
    let coeffs: Vec<Value> = if k.is_rationals() {
        p.coeffs().iter().map(|c| rat_json(&c.coords[0])).collect()
    } else {
        p.coeffs().iter().map(|c| Value::Array(coords_json(k, c))).collect()
    };
    json!({ "coeffs": coeffs })
}

fn parse_ambient(v: Option<&Value>) -> Result<Ambient> {
    match v {
        None => Ok(Ambient::Multiplicative),
        Some(v) => serde_json::from_value(v.clone())
            .map_err(|_| parse_error(format!("ambient must be \"multiplicative\" or \"cm_elliptic\", got {v}"))),
    }
}

pub const PRESENTATION_KEYS: &[&str] = &["ring", "char_poly", "last_row", "size", "ambient"];

/// {"ring", "char_poly"} or {"ring", "last_row", "size"}, optional "ambient".
/// `extra` lists further keys the caller accepts in the same object.
pub fn parse_presentation(v: &Value, extra: &[&str]) -> Result<CompanionPresentation> {
    let allowed: Vec<&str> = PRESENTATION_KEYS.iter().chain(extra).copied().collect();
    let m = object(v, "presentation", &allowed)?;
    let ring = parse_field(field(m, "ring", "presentation")?)?;
    let ambient = parse_ambient(m.get("ambient"))?;
    let from_row = match m.get("last_row") {
        Some(row) => {
            let row: Vec<NfElem> = row
                .as_array()
                .ok_or_else(|| parse_error("last_row must be an array"))?
                .iter()
                .map(|e| parse_elem(&ring, e))
                .collect::<Result<_>>()?;
            let size = parse_usize(field(m, "size", "presentation with last_row")?, "size")?;
            if size != row.len() {
                return Err(parse_error(format!("size {size} does not match last_row length {}", row.len())));
            }
            Some(CompanionPresentation::from_last_row(ring.clone(), row, ambient)?)
        }
        None => None,
    };
    let from_poly = match m.get("char_poly") {
        Some(p) => Some(CompanionPresentation::new(ring.clone(), parse_kpoly(&ring, p)?, ambient)?),
        None => None,
    };
    match (from_row, from_poly) {
        (Some(a), Some(b)) if a != b => Err(parse_error("char_poly and last_row disagree")),
        (Some(g), _) | (None, Some(g)) => Ok(g),
        (None, None) => Err(parse_error("presentation needs char_poly or last_row")),
    }
}

pub fn presentation_json(g: &CompanionPresentation) -> Value {
    let ambient = serde_json::to_value(g.ambient).expect("ambient serializes");
    json!({
        "ring": field_json(&g.ring),
        "char_poly": kpoly_json(&g.ring, &g.char_poly),
        "last_row": g.last_row().iter().map(|e| elem_json(&g.ring, e)).collect::<Vec<_>>(),
        "size": g.size(),
        "ambient": ambient,
    })
}

//! Human-readable rendering of JSON reports.

use std::fmt::Write as _;

use serde_json::Value;

/// A coefficient as text: a rational string, or a power-basis combination
/// of the field generator `a`.
fn coefficient(c: &Value) -> Option<String> {
    match c {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Array(coords) => {
            let terms: Vec<String> = coords
                .iter()
                .enumerate()
                .filter_map(|(i, x)| {
                    let s = x.as_str()?;
                    (s != "0").then(|| match i {
                        0 => s.to_string(),
                        1 => format!("{s}*a"),
                        _ => format!("{s}*a^{i}"),
                    })
                })
                .collect();
            Some(if terms.is_empty() { "0".into() } else { terms.join(" + ") })
        }
        Value::Object(m) => coefficient(m.get("coords")?),
        _ => None,
    }
}

/// Renders {"coeffs": [...]} as a polynomial in x, highest degree first.
pub fn polynomial(v: &Value) -> Option<String> {
    let cs = v.as_object().filter(|m| m.len() == 1)?.get("coeffs")?.as_array()?;
    let mut terms = Vec::new();
    for (i, c) in cs.iter().enumerate().rev() {
        let c = coefficient(c)?;
        if c == "0" {
            continue;
        }
        let compound = c.contains(" + ");
        let (sign, mag) = match c.strip_prefix('-') {
            Some(rest) if !compound => ("-", rest.to_string()),
            _ => ("+", if compound { format!("({c})") } else { c }),
        };
        let mono = match (i, mag.as_str()) {
            (0, _) => mag.clone(),
            (1, "1") => "x".into(),
            (_, "1") => format!("x^{i}"),
            (1, _) => format!("{mag}*x"),
            _ => format!("{mag}*x^{i}"),
        };
        terms.push((sign, mono));
    }
    if terms.is_empty() {
        return Some("0".into());
    }
    let mut out = String::new();
    for (k, (sign, mono)) in terms.iter().enumerate() {
        match (k, *sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            (_, s) => out.push_str(&format!(" {s} ")),
        }
        out.push_str(mono);
    }
    Some(out)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(_) => polynomial(v).or_else(|| {
            let m = v.as_object()?;
            (m.len() == 1 && m.contains_key("coords")).then(|| coefficient(v)).flatten()
        }),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|x| if x.is_object() || x.is_array() { polynomial(x) } else { scalar(x) })
                .collect();
            parts.map(|p| p.join(", "))
        }
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                write_value(out, k, x, indent + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                write_value(out, &format!("[{i}]"), x, indent + 1);
            }
        }
        _ => unreachable!("scalars are rendered inline"),
    }
}

/// Text form of a report, or of an array of reports.
pub fn render(report: &Value) -> String {
    let mut out = String::new();
    match report {
        Value::Array(items) => {
            for (i, r) in items.iter().enumerate() {
                let _ = writeln!(out, "== task {i} ==");
                out.push_str(&render(r));
            }
        }
        Value::Object(m) => {
            for key in ["status", "command", "error", "result", "certificates", "engine_version", "config", "input"] {
                if let Some(v) = m.get(key) {
                    write_value(&mut out, key, v, 0);
                }
            }
        }
        other => write_value(&mut out, "report", other, 0),
    }
    out
}

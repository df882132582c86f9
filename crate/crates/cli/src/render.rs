//! Plain-text rendering of command output.

use std::fmt::Write;

use serde_json::{Map, Value};

/// `1 + 2t + 2t^2` for coefficients `[1, 2, 2]`; zero terms are skipped.
pub fn polynomial(coefficients: &[u64]) -> String {
    let terms: Vec<String> = coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match i {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn text(body: &Value) -> String {
    let mut out = String::new();
    if let Some(s) = body["semigroup"].as_object() {
        let gens: Vec<String> = s["generators"]
            .as_array()
            .into_iter()
            .flatten()
            .map(Value::to_string)
            .collect();
        let _ = writeln!(
            out,
            "semigroup <{}>  multiplicity {}  frobenius {}",
            gens.join(","),
            s["multiplicity"],
            s["frobenius"]
        );
        let _ = writeln!(out, "gaps: {}", inline(&s["gaps"]));
    }
    if let Some(result) = body["result"].as_object() {
        for (key, value) in result {
            let _ = writeln!(out, "{key}: {}", inline(value));
        }
    }
    if let Some(d) = body["diagnostics"].as_object() {
        let parts: Vec<String> = d
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect();
        let _ = writeln!(out, "diagnostics: {}", parts.join(" "));
    }
    out
}

fn is_ideal(map: &Map<String, Value>) -> bool {
    map.len() == 3
        && ["min", "conductor", "members"]
            .iter()
            .all(|k| map.contains_key(*k))
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(map) if is_ideal(map) => format!(
            "{{min={}, conductor={}, members={}}}",
            map["min"],
            map["conductor"],
            inline(&map["members"])
        ),
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}={}", inline(v)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(polynomial(&[1, 2, 2]), "1 + 2t + 2t^2");
        assert_eq!(polynomial(&[1, 1]), "1 + t");
        assert_eq!(polynomial(&[1]), "1");
        assert_eq!(polynomial(&[1, 2, 3, 3, 2]), "1 + 2t + 3t^2 + 3t^3 + 2t^4");
    }
}

//! Rendering reports as JSON, CSV or text. Objects keep sorted keys, so
//! output depends only on the values.

use serde_json::Value;

use crate::config::Format;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| x.is_number()) => a
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn columns(items: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for it in items {
        if let Value::Object(m) = it {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

fn csv(items: &[Value]) -> String {
    let cols = columns(items);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&cols).expect("write to memory");
    for it in items {
        let row: Vec<String> = cols
            .iter()
            .map(|c| it.get(c).map(cell).unwrap_or_default())
            .collect();
        w.write_record(&row).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf8 fields")
}

fn text(items: &[Value]) -> String {
    let mut out = String::new();
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match it {
            Value::Object(m) => {
                for (k, v) in m {
                    out.push_str(&format!("{k}: {}\n", cell(v)));
                }
            }
            other => out.push_str(&format!("{}\n", cell(other))),
        }
    }
    out
}

/// One report, or an array when the input was a batch.
pub fn render(format: Format, items: &[Value], batch: bool) -> String {
    match format {
        Format::Json => {
            let v = if batch {
                Value::Array(items.to_vec())
            } else {
                items[0].clone()
            };
            serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
        }
        Format::Csv => csv(items),
        Format::Text => text(items),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_flattens() {
        let items = [
            json!({"a": 1, "b": [1, 2], "c": null}),
            json!({"a": 2, "d": {"x": 1}}),
        ];
        assert_eq!(csv(&items), "a,b,c,d\n1,1 2,,\n2,,,\"{\"\"x\"\":1}\"\n");
    }
}

//! Text and JSON rendering with a fixed number of significant digits.

use qcorr::dynamics::format_value;
use qcorr::ComplexMatrix;
use serde::Serialize;
use serde_json::Value;

/// Serialises `value` with every non-integer number rounded to `precision`
/// significant digits.
pub fn to_json<T: Serialize>(value: &T, precision: usize) -> String {
    let mut v = serde_json::to_value(value).expect("serialisable output");
    round_numbers(&mut v, precision);
    serde_json::to_string_pretty(&v).expect("valid JSON")
}

fn round_numbers(v: &mut Value, precision: usize) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(x) = n.as_f64() {
                let r: f64 = format_value(x, precision).parse().expect("round trip");
                if let Some(num) = serde_json::Number::from_f64(r) {
                    *n = num;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_numbers(x, precision)),
        Value::Object(map) => map.values_mut().for_each(|x| round_numbers(x, precision)),
        _ => {}
    }
}

/// Matrix as aligned rows; complex entries print as `a+bi`.
pub fn matrix_text(m: &ComplexMatrix, precision: usize) -> String {
    let n = m.dim();
    let cells: Vec<String> = (0..n * n)
        .map(|k| {
            let z = m[(k / n, k % n)];
            let re = format_value(z.re, precision);
            if format_value(z.im, precision) == "0" {
                re
            } else {
                let im = format_value(z.im.abs(), precision);
                format!("{re}{}{im}i", if z.im < 0.0 { '-' } else { '+' })
            }
        })
        .collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells.chunks(n) {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str("  ");
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

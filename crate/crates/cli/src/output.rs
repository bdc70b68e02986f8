//! Number formatting shared by the CSV and JSON renderings.
//!
//! Every float is rounded to 12 significant digits and then printed with the
//! shortest representation that parses back to the rounded value, so both
//! renderings of a run carry identical numbers.

use serde::Serializer;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// CSV/JSON text for one number.
pub fn num(x: f64) -> String {
    serde_json::to_string(&round_sig(x)).expect("finite floats serialize")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "none".into())
}

pub fn opt_int(x: Option<u32>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "none".into())
}

pub fn ser12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub fn ser12_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig(*v)),
        None => s.serialize_none(),
    }
}

/// Joins a header and rows into CSV text with a trailing newline.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

//! Serialization of spectra and reports.

use margulis_core::{MarkedSpectrum, VElement};
use nalgebra::DMatrix;
use serde_json::{json, Value};

/// Seventeen significant digits; `-0` prints as `0`.
pub fn csv_number(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

pub fn spectrum_csv(s: &MarkedSpectrum) -> String {
    let n = s.model.n();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["word".to_string(), "len".to_string()];
    header.extend((1..n).map(|i| format!("m_{i}")));
    header.push("q".to_string());
    header.extend((1..=n).map(|i| format!("jd_{i}")));
    w.write_record(&header).expect("writing to memory");
    for (word, e) in &s.entries {
        let mut row = vec![word.render(), word.len().to_string()];
        row.extend(e.invariant.iter().map(|&m| csv_number(m)));
        row.push(csv_number(e.q));
        row.extend(e.jd.iter().map(|&t| csv_number(t)));
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ASCII output")
}

pub fn spectrum_json(s: &MarkedSpectrum) -> Value {
    let entries: Vec<Value> = s
        .entries
        .iter()
        .map(|(word, e)| {
            json!({
                "word": word.render(),
                "len": word.len(),
                "m": e.invariant.as_slice(),
                "q": e.q,
                "jd": e.jd,
            })
        })
        .collect();
    json!({
        "model": { "family": s.model.family(), "n": s.model.n() },
        "generators": s.k,
        "max_word_len": s.max_len,
        "entries": entries,
        "skipped": s.skipped.iter().map(|w| w.render()).collect::<Vec<_>>(),
    })
}

pub fn matrix_json(m: &DMatrix<f64>) -> Value {
    Value::from(
        m.row_iter()
            .map(|r| r.iter().map(|&x| x + 0.0).collect::<Vec<f64>>())
            .collect::<Vec<_>>(),
    )
}

pub fn velement_json(x: &VElement) -> Value {
    matrix_json(x.mat())
}

/// Pretty JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_numbers_have_seventeen_digits() {
        assert_eq!(csv_number(1.0), "1.0000000000000000e0");
        assert_eq!(csv_number(-0.0), "0.0000000000000000e0");
        assert_eq!(csv_number(0.1), "1.0000000000000001e-1");
        let x = -1.2345678901234567e-5;
        assert_eq!(csv_number(x).parse::<f64>().unwrap(), x);
    }
}

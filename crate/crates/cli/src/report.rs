//! The report every command produces, rendered as canonical JSON or as
//! aligned text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use shadowlab::{BoundReport, Direction};

/// Significant digits used for every real number in a report.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats a real with [`SIGNIFICANT_DIGITS`] significant digits, dropping
/// trailing zeros. Very large or small magnitudes use exponent notation.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&exp) {
        let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub quantity: String,
    /// Exact value when the quantity is combinatorial.
    pub computed: String,
    pub bound: String,
    pub ratio: String,
    pub direction: String,
    pub satisfied: bool,
    pub conjecture: bool,
    pub source: String,
    pub parameter: Option<String>,
}

impl From<&BoundReport> for BoundEntry {
    fn from(b: &BoundReport) -> Self {
        let computed = match &b.computed {
            shadowlab::Quantity::Real(x) => format_real(*x),
            exact => exact.to_string(),
        };
        BoundEntry {
            quantity: b.quantity.clone(),
            computed,
            bound: format_real(b.bound),
            ratio: format_real(b.ratio),
            direction: match b.direction {
                Direction::Upper => "upper".into(),
                Direction::Lower => "lower".into(),
            },
            satisfied: b.satisfied,
            conjecture: b.conjecture,
            source: b.source.clone(),
            parameter: b.parameter.map(format_real),
        }
    }
}

impl BoundEntry {
    pub fn is_violation(&self) -> bool {
        !self.satisfied && !self.conjecture
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    /// `sha256:<hex>` of the input files, in argument order.
    pub input_digest: Option<String>,
    pub quantities: BTreeMap<String, String>,
    pub bounds: Vec<BoundEntry>,
    pub status: String,
    pub exit_code: i32,
    pub message: Option<String>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            input_digest: None,
            quantities: BTreeMap::new(),
            bounds: Vec::new(),
            status: "ok".into(),
            exit_code: 0,
            message: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.quantities.insert(key.to_string(), value.to_string());
    }

    pub fn set_real(&mut self, key: &str, x: f64) {
        self.set(key, format_real(x));
    }

    pub fn bound(&mut self, b: &BoundReport) {
        self.bounds.push(b.into());
    }

    pub fn has_violation(&self) -> bool {
        self.bounds.iter().any(BoundEntry::is_violation)
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), self.command.join(" "))];
        if let Some(d) = &self.input_digest {
            rows.push(("input".into(), d.clone()));
        }
        rows.extend(self.quantities.iter().map(|(k, v)| (k.clone(), v.clone())));
        rows.push(("status".into(), self.status.clone()));
        if let Some(m) = &self.message {
            rows.push(("message".into(), m.clone()));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        if !self.bounds.is_empty() {
            out.push_str("bounds:\n");
            for b in &self.bounds {
                let rel = if b.direction == "upper" { "<=" } else { ">=" };
                let verdict = match (b.satisfied, b.conjecture) {
                    (true, false) => "ok",
                    (true, true) => "ok (conjecture)",
                    (false, true) => "exceeds conjecture",
                    (false, false) => "VIOLATED: proven bound fails (bug or counterexample)",
                };
                let param = b.parameter.as_ref().map(|t| format!(" at t = {t}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "  {} = {} {rel} {}{param}  [{verdict}]  {}",
                    b.quantity, b.computed, b.bound, b.source
                );
            }
        }
        out
    }
}

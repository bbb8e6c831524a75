//! Record tables rendered as CSV, JSON or plain text.
//!
//! Floats are written as the shortest decimal that round-trips to the same
//! binary64 value unless a fixed number of digits is requested.

use clap::ValueEnum;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    /// Numeric text formatted by the producer; emitted verbatim.
    Fixed(String),
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

pub fn format_float(x: f64, digits: Option<usize>) -> String {
    match digits {
        Some(d) => format!("{x:.d$}"),
        None => format!("{x}"),
    }
}

impl Value {
    fn text(&self, digits: Option<usize>) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => format_float(*v, digits),
            Value::Bool(v) => v.to_string(),
            Value::Text(s) | Value::Fixed(s) => s.clone(),
        }
    }

    fn json(&self, digits: Option<usize>) -> Json {
        match self {
            Value::Int(v) => Json::from(*v),
            Value::Float(v) if !v.is_finite() => Json::Null,
            Value::Float(v) => match digits {
                None => Number::from_f64(*v).map_or(Json::Null, Json::Number),
                Some(_) => numeric(&format_float(*v, digits)),
            },
            Value::Bool(v) => Json::Bool(*v),
            Value::Text(s) => Json::String(s.clone()),
            Value::Fixed(s) => numeric(s),
        }
    }
}

fn numeric(text: &str) -> Json {
    serde_json::from_str::<Number>(text).map_or_else(|_| Json::String(text.to_owned()), Json::Number)
}

/// Rows under a header, plus `key=value` metadata (emitted as `#` comments in CSV).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Records {
    pub meta: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// In plain text, print the first column of a single-row table bare.
    pub bare_first: bool,
}

impl Records {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), ..Self::default() }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.push((key.to_owned(), value.into()));
        self
    }

    pub fn bare_first(mut self) -> Self {
        self.bare_first = true;
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, digits: Option<usize>) -> String {
        match format {
            Format::Csv => self.csv(digits),
            Format::Json => self.json(digits),
            Format::Plain => self.plain(digits),
        }
    }

    fn csv(&self, digits: Option<usize>) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={}\n", v.text(digits)));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.text(digits))).expect("in-memory write");
        }
        let body = w.into_inner().expect("in-memory flush");
        out.push_str(std::str::from_utf8(&body).expect("utf-8 records"));
        out
    }

    fn json(&self, digits: Option<usize>) -> String {
        let records: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Json> =
                    self.columns.iter().cloned().zip(row.iter().map(|v| v.json(digits))).collect();
                Json::Object(obj)
            })
            .collect();
        let mut root = Map::new();
        if !self.meta.is_empty() {
            let meta: Map<String, Json> = self.meta.iter().map(|(k, v)| (k.clone(), v.json(digits))).collect();
            root.insert("meta".into(), Json::Object(meta));
        }
        root.insert("records".into(), Json::Array(records));
        let mut s = serde_json::to_string_pretty(&Json::Object(root)).expect("serializable");
        s.push('\n');
        s
    }

    fn plain(&self, digits: Option<usize>) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("{k}={}\n", v.text(digits)));
        }
        if self.rows.len() == 1 {
            let row = &self.rows[0];
            let mut parts = Vec::with_capacity(row.len());
            for (i, (c, v)) in self.columns.iter().zip(row).enumerate() {
                if i == 0 && self.bare_first {
                    parts.push(v.text(digits));
                } else {
                    parts.push(format!("{c}={}", v.text(digits)));
                }
            }
            out.push_str(&parts.join(" "));
            out.push('\n');
            return out;
        }
        let cells: Vec<Vec<String>> = std::iter::once(self.columns.clone())
            .chain(self.rows.iter().map(|r| r.iter().map(|v| v.text(digits)).collect()))
            .collect();
        let widths: Vec<usize> =
            (0..self.columns.len()).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
        for row in cells {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Records {
        let mut r = Records::new(["word", "width"]).meta("seed", 7u64);
        r.push(vec![Value::Text("2,1,1,1".into()), Value::Float(0.015625)]);
        r
    }

    #[test]
    fn csv_quotes_words_and_keeps_comments() {
        assert_eq!(sample().render(Format::Csv, None), "# seed=7\nword,width\n\"2,1,1,1\",0.015625\n");
    }

    #[test]
    fn json_mirrors_records() {
        let v: Json = serde_json::from_str(&sample().render(Format::Json, None)).unwrap();
        assert_eq!(v["meta"]["seed"], 7);
        assert_eq!(v["records"][0]["word"], "2,1,1,1");
        assert_eq!(v["records"][0]["width"], 0.015625);
    }

    #[test]
    fn plain_single_row() {
        assert_eq!(sample().bare_first().render(Format::Plain, None), "seed=7\n2,1,1,1 width=0.015625\n");
        assert_eq!(sample().render(Format::Plain, Some(3)), "seed=7\nword=2,1,1,1 width=0.016\n");
    }

    #[test]
    fn shortest_round_trip() {
        for x in [0.1, 1.0 / 3.0, 6.0 / (std::f64::consts::PI * std::f64::consts::PI), 1e-300, 0.6942419136306174] {
            let s = format_float(x, None);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let json = Value::Float(x).json(None).to_string();
            assert_eq!(json.parse::<f64>().unwrap(), x);
        }
        assert_eq!(Value::Float(f64::NAN).json(None), Json::Null);
    }
}

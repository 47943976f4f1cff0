//! Tabular output in CSV or JSON.
//!
//! Rationals are written as `"num/den"` strings in both formats. Decimals are
//! rounded to 12 significant digits before serialisation, so the CSV and JSON
//! renderings of one table carry the same values.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Value as Json};
use w3cft::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rational(Rational),
    Decimal(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }
}

/// `"num/den"`, also for integers.
pub fn rational_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn decimal_string(x: f64) -> String {
    if x.is_finite() {
        Json::from(round12(x)).to_string()
    } else {
        x.to_string()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| match v {
                Value::Rational(r) => rational_string(r),
                Value::Decimal(x) => decimal_string(*x),
                Value::Int(n) => n.to_string(),
                Value::Bool(b) => b.to_string(),
                Value::Text(s) => s.clone(),
            }))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                Json::Array(
                    row.iter()
                        .map(|v| match v {
                            Value::Rational(r) => Json::String(rational_string(r)),
                            Value::Decimal(x) if x.is_finite() => json!(round12(*x)),
                            Value::Decimal(x) => Json::String(x.to_string()),
                            Value::Int(n) => json!(n),
                            Value::Bool(b) => json!(b),
                            Value::Text(s) => json!(s),
                        })
                        .collect(),
                )
            })
            .collect();
        json!({ "columns": self.columns, "rows": rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use w3cft::rational::rat;

    #[test]
    fn rounding() {
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(0.0), 0.0);
        assert_eq!(round12(-2.0 / 3.0 * 1e-7), -6.66666666667e-8);
    }

    #[test]
    fn csv_rendering() {
        let mut t = Table::new(["h", "x", "name"]);
        t.push(vec![
            Value::Rational(rat(1, 15)),
            Value::Decimal(2.0 / 3.0),
            Value::text("a, b"),
        ]);
        t.push(vec![Value::Rational(rat(2, 1)), Value::Int(3), Value::text("c")]);
        let mut buf = Vec::new();
        t.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "h,x,name\n1/15,0.666666666667,\"a, b\"\n2/1,3,c\n"
        );
    }

    #[test]
    fn empty_table_keeps_header() {
        let t = Table::new(["a", "b"]);
        let mut buf = Vec::new();
        t.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n");
    }
}

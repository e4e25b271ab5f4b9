//! Report rendering: JSON, CSV and plain text.

use std::io::Write;
use std::str::FromStr;

use clap::ValueEnum;
use qlidstone::qcore::QContext;
use qlidstone::symlaurent::{change_basis, Basis};
use qlidstone::{Scalar, SymPoly};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `"num/den"` (or `"n"` for integers).
pub fn rational(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// 17 significant digits.
pub fn float_str(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::Number::from_str(&float_str(x)).map(Value::Number).unwrap_or(Value::Null)
}

/// Coefficient list tagged with its basis.
pub fn poly(ctx: &QContext, p: &SymPoly, basis: PolyBasis) -> Value {
    json!({ "basis": basis.name(), "coeffs": poly_coeffs(ctx, p, basis).iter().map(rational).collect::<Vec<_>>() })
}

pub fn poly_coeffs(ctx: &QContext, p: &SymPoly, basis: PolyBasis) -> Vec<Scalar> {
    match basis {
        PolyBasis::Monomial => change_basis(ctx, p, Basis::Monomial),
        PolyBasis::Rho => change_basis(ctx, p, Basis::Rho),
        PolyBasis::Laurent => p.coeffs().to_vec(),
    }
}

/// How polynomials are written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyBasis {
    /// Powers of `x`.
    Monomial,
    /// `ρ_n(x)`.
    Rho,
    /// `c_0 + Σ c_k (z^k + z^{-k})`.
    Laurent,
}

impl PolyBasis {
    pub fn name(self) -> &'static str {
        match self {
            PolyBasis::Monomial => "monomial",
            PolyBasis::Rho => "rho",
            PolyBasis::Laurent => "laurent",
        }
    }
}

/// A command result: JSON fields plus a flat table for CSV and text.
#[derive(Debug, Default)]
pub struct Report {
    pub command: &'static str,
    pub fields: Map<String, Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Summary lines shown above the table in text mode.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, ..Default::default() }
    }

    pub fn field(&mut self, key: &str, v: Value) {
        self.fields.insert(key.to_string(), v);
    }

    pub fn write(&self, format: Format, config: Value, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let mut top = Map::new();
                top.insert("schema_version".into(), json!(SCHEMA_VERSION));
                top.insert("command".into(), json!(self.command));
                top.insert("config".into(), config);
                top.extend(self.fields.clone());
                serde_json::to_writer_pretty(&mut *out, &Value::Object(top))?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Text => {
                for n in &self.notes {
                    writeln!(out, "{n}")?;
                }
                if self.header.is_empty() {
                    return Ok(());
                }
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.len());
                    }
                }
                let line = |cells: Vec<&str>| {
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ")
                };
                writeln!(out, "{}", line(self.header.clone()).trim_end())?;
                for r in &self.rows {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect()).trim_end())?;
                }
                Ok(())
            }
        }
    }
}

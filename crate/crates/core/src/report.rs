//! Tabular results with deterministic CSV and JSON rendering.
//!
//! Floats are written as `%.6e` (`1.234560e+10`) so that identical inputs
//! give byte-identical output.

use crate::barrier::{charged_validity, crossover, BarrierScenario, CrossoverResult};
use crate::error::{Error, Result};
use crate::sampling::SamplingSpec;
use crate::tail::{exact_exponents, tail_coefficients, OperatorKind};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// C-style `%.6e`: six mantissa digits, signed exponent of at least two digits.
pub fn fmt_sci(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.6e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_sci(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
            Cell::Text(t) => t.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(v) => json!(fmt_sci(*v)),
            Cell::Int(i) => json!(i),
            Cell::Text(t) => json!(t),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Number of rows whose computation failed.
    pub row_errors: usize,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            row_errors: 0,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let doc = json!({ "columns": self.header, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}

/// A sampling parameter, remembered as a fraction when given as one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaValue {
    pub value: f64,
    pub exact: Option<(i64, i64)>,
}

impl AlphaValue {
    pub fn fraction(num: i64, den: i64) -> Self {
        Self {
            value: num as f64 / den as f64,
            exact: Some((num, den)),
        }
    }

    /// Accepts `"1/3"` or a decimal such as `"0.27"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse alpha `{text}`"));
        if let Some((n, d)) = text.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d <= 0 {
                return Err(bad());
            }
            return Ok(Self::fraction(n, d));
        }
        let value: f64 = text.parse().map_err(|_| bad())?;
        Ok(Self { value, exact: None })
    }

    pub fn label(&self) -> String {
        match self.exact {
            Some((n, d)) => format!("{n}/{d}"),
            None => fmt_sci(self.value),
        }
    }
}

/// The three sampling parameters of the coefficient tables.
pub fn standard_alphas() -> Vec<AlphaValue> {
    vec![AlphaValue::fraction(1, 2), AlphaValue::fraction(1, 3), AlphaValue::fraction(1, 4)]
}

/// Rows `(α, c, b, a, c0, 1+b-c, ln(c0/(ac)))`; the exponents are exact
/// fractions whenever α is.
pub fn coefficient_table(kind: &OperatorKind, f0: f64, alphas: &[AlphaValue]) -> Table {
    let mut t = Table::new(["alpha", "c", "b", "a", "c0", "1+b-c", "ln(c0/(ac))", "status"]);
    for alpha in alphas {
        let coeff = SamplingSpec::with_f0(alpha.value, f0).and_then(|s| tail_coefficients(&s, kind));
        let coeff = match coeff {
            Ok(c) => c,
            Err(e) => {
                t.row_errors += 1;
                let mut row = vec![Cell::Text(alpha.label())];
                row.extend(std::iter::repeat(Cell::Empty).take(6));
                row.push(Cell::Text(format!("error: {e}")));
                t.push(row);
                continue;
            }
        };
        let exact = alpha.exact.and_then(|(n, d)| exact_exponents(n, d, kind.p).ok());
        let (c, b, e) = match exact {
            Some((c, b, e)) => (Cell::Text(c.to_string()), Cell::Text(b.to_string()), Cell::Text(e.to_string())),
            None => (coeff.c.into(), coeff.b.into(), coeff.exceedance_power().into()),
        };
        t.push(vec![
            Cell::Text(alpha.label()),
            c,
            b,
            coeff.a.into(),
            coeff.c0.into(),
            e,
            coeff.ln_prefactor().into(),
            "ok".into(),
        ]);
    }
    t
}

/// The six `(α, v0)` cases of the charged-particle crossover table.
pub fn crossover_cases() -> Vec<(AlphaValue, f64)> {
    let mut v = Vec::new();
    for alpha in standard_alphas() {
        for v0 in [0.5, 0.1] {
            v.push((alpha, v0));
        }
    }
    v
}

/// Rows `(α, v0, G, d/λ_C, x, s⁻³, dominance)` from the crossover solver.
pub fn crossover_table(cases: &[(AlphaValue, f64)], z: u32, d_range: (f64, f64)) -> Table {
    let mut t = Table::new(["alpha", "v0", "G", "d_over_lambda_c", "x", "s_inv3", "dominance", "status"]);
    for &(alpha, v0) in cases {
        let row = crossover(alpha.value, v0, z, d_range).and_then(|r| crossover_row(&r, alpha.value, v0, z));
        match row {
            Ok(cells) => {
                let mut row = vec![Cell::Text(alpha.label()), v0.into()];
                row.extend(cells);
                row.push("ok".into());
                t.push(row);
            }
            Err(e) => {
                t.row_errors += 1;
                let mut row = vec![Cell::Text(alpha.label()), v0.into()];
                row.extend(std::iter::repeat(Cell::Empty).take(5));
                row.push(Cell::Text(format!("error: {e}")));
                t.push(row);
            }
        }
    }
    t
}

fn crossover_row(r: &CrossoverResult, alpha: f64, v0: f64, z: u32) -> Result<Vec<Cell>> {
    let s_inv3 = match r.d_star {
        Some(d) => Some(charged_validity(&BarrierScenario::new(v0, d, z, alpha)?).s_inv3),
        None => None,
    };
    Ok(vec![
        r.common_value.into(),
        r.d_star.into(),
        r.x_star.into(),
        s_inv3.into(),
        r.dominance.as_str().into(),
    ])
}

/// `(d, F, G)` rows for plotting.
pub fn curve_table(points: &[(f64, f64, f64)], d_label: &str) -> Table {
    let mut t = Table::new([d_label, "F", "G"]);
    for &(d, f, g) in points {
        t.push(vec![d.into(), f.into(), g.into()]);
    }
    t
}

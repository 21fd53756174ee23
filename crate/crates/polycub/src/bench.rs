//! Built-in test functions, their reference integrals, the benchmark-table
//! driver behind `polycub bench`, and a high-resolution reference
//! integrator used to confirm the non-closed-form reference values.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::Serialize;

use crate::cubature::{CubatureRule, SampleGrid};
use crate::error::{Error, Result};
use crate::gauss::gauss_legendre;
use crate::spline::RadialKnots;
use crate::weight::{BuiltinWeight, WeightFourier};

/// The five test integrands used by the benchmark tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    /// `1 + x⁴ + y³` — a degree-4 polynomial.
    F0,
    /// `1 + x³/√(x²+y²) + y⁷/(x²+y²)` — not smooth at the origin; its value
    /// there is 1, since both singular terms carry positive radial degree.
    F1,
    /// `cos(10x + 20y)` — oscillatory.
    F2,
    /// `30x¹²`.
    F3,
    /// `|y|`.
    F4,
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f0" => Ok(Self::F0),
            "f1" => Ok(Self::F1),
            "f2" => Ok(Self::F2),
            "f3" => Ok(Self::F3),
            "f4" => Ok(Self::F4),
            other => Err(Error::InvalidParameters(format!(
                "unknown test function {other:?}; expected f0..f4"
            ))),
        }
    }
}

impl TestFunction {
    pub fn name(&self) -> &'static str {
        match self {
            Self::F0 => "f0",
            Self::F1 => "f1",
            Self::F2 => "f2",
            Self::F3 => "f3",
            Self::F4 => "f4",
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Self::F0 => 1.0 + x.powi(4) + y.powi(3),
            Self::F1 => {
                let r2 = x * x + y * y;
                if r2 == 0.0 {
                    1.0
                } else {
                    1.0 + x.powi(3) / r2.sqrt() + y.powi(7) / r2
                }
            }
            Self::F2 => (10.0 * x + 20.0 * y).cos(),
            Self::F3 => 30.0 * x.powi(12),
            Self::F4 => y.abs(),
        }
    }

    /// The weight each function is benchmarked against.
    pub fn paired_weight(&self) -> BuiltinWeight {
        match self {
            Self::F0 | Self::F1 | Self::F2 => BuiltinWeight::W1,
            Self::F3 | Self::F4 => BuiltinWeight::W2,
        }
    }

    /// Reference value of `I_w(f)` on the unit disc for the paired weight;
    /// `None` for unpaired combinations, which have no published value.
    pub fn reference(&self, weight: BuiltinWeight) -> Option<f64> {
        match (self, weight) {
            (Self::F0, BuiltinWeight::W1) => Some(43.0 / 20.0 * PI),
            (Self::F1, BuiltinWeight::W1) => Some(35.0 / 16.0 * PI),
            (Self::F2, BuiltinWeight::W1) => Some(0.301310995335215),
            (Self::F3, BuiltinWeight::W2) => Some(8.0 / 13.0),
            (Self::F4, BuiltinWeight::W2) => Some(PI / 4.0),
            _ => None,
        }
    }
}

/// Closed form of a built-in weight in polar coordinates; only the
/// reference integrator below uses it (everything else works from the
/// harmonic expansion).
fn closed_form_weight(id: BuiltinWeight, r: f64, phi: f64) -> f64 {
    match id {
        BuiltinWeight::W1 => 1.0 / r + phi.cos(),
        BuiltinWeight::W2 => r * phi.sin().abs(),
    }
}

/// High-resolution tensor-product Gauss-Legendre evaluation of
/// `I_w(f) = ∫₀^{2π} ∫₀^R f·w·r dr dφ` against the closed-form weight.
///
/// The angular range is split at `π` so that the `|sin φ|` kink of `w2`
/// falls on a panel boundary; `n_r × n_phi` counts the total grid.
pub fn reference_oracle(f: TestFunction, weight: BuiltinWeight, radius: f64, n_r: usize, n_phi: usize) -> f64 {
    let (rx, rw) = gauss_legendre(n_r);
    let (px, pw) = gauss_legendre(n_phi / 2);
    let mut total = 0.0;
    for (panel_start, panel_end) in [(0.0, PI), (PI, 2.0 * PI)] {
        let half_span = 0.5 * (panel_end - panel_start);
        let mid = 0.5 * (panel_start + panel_end);
        for (pxi, pwi) in px.iter().zip(&pw) {
            let phi = mid + half_span * pxi;
            let (sin, cos) = phi.sin_cos();
            let mut radial = 0.0;
            for (rxi, rwi) in rx.iter().zip(&rw) {
                let r = 0.5 * radius * (rxi + 1.0);
                radial += rwi
                    * f.eval(r * cos, r * sin)
                    * closed_form_weight(weight, r, phi)
                    * r;
            }
            total += pwi * half_span * radial * 0.5 * radius;
        }
    }
    total
}

/// One benchmark table: hybrid-cubature values over an `N × M` parameter
/// grid, with the error column `value − reference` carried unrounded.
#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkTable {
    pub weight: String,
    pub function: String,
    pub k: u32,
    pub reference: f64,
    pub n_values: Vec<usize>,
    pub m_values: Vec<usize>,
    /// `values[i][j]` is the cell for `n_values[i]`, `m_values[j]`.
    pub values: Vec<Vec<f64>>,
    pub errors: Vec<Vec<f64>>,
}

/// Runs the hybrid rule for every `(N, M)` pair, with `N₁ = N` sampling
/// circles on uniform knots.
pub fn run_benchmark(
    weight: &WeightFourier,
    function: TestFunction,
    n_list: &[usize],
    m_list: &[usize],
    k: u32,
    reference: f64,
) -> Result<BenchmarkTable> {
    let mut values = Vec::with_capacity(n_list.len());
    let mut errors = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let knots = RadialKnots::uniform(weight.radius(), n)?;
        let mut row = Vec::with_capacity(m_list.len());
        for &m in m_list {
            let rule = CubatureRule::assemble(weight, n, m, k, knots.clone())?;
            let samples = SampleGrid::from_fn(&rule, |x, y| function.eval(x, y));
            row.push(rule.integrate(&samples)?);
        }
        errors.push(row.iter().map(|v| v - reference).collect());
        values.push(row);
    }
    Ok(BenchmarkTable {
        weight: weight.name().to_string(),
        function: function.name().to_string(),
        k,
        reference,
        n_values: n_list.to_vec(),
        m_values: m_list.to_vec(),
        values,
        errors,
    })
}

impl BenchmarkTable {
    /// Paper-style markdown: a value table and an error table.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# {} / {} (K = {}), reference = {:.15}\n\n",
            self.function, self.weight, self.k, self.reference
        ));
        for (title, rows) in [("values", &self.values), ("errors", &self.errors)] {
            out.push_str(&format!("## {title}\n\n"));
            out.push_str("| N \\ M |");
            for m in &self.m_values {
                out.push_str(&format!(" {m} |"));
            }
            out.push('\n');
            out.push_str("|---|");
            for _ in &self.m_values {
                out.push_str("---|");
            }
            out.push('\n');
            for (i, n) in self.n_values.iter().enumerate() {
                out.push_str(&format!("| {n} |"));
                for cell in &rows[i] {
                    out.push_str(&format!(" {:.15} |", cell));
                }
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }

    /// Machine-readable CSV, one row per cell, floats at 17 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,function,K,N,M,value,error,reference\n");
        for (i, n) in self.n_values.iter().enumerate() {
            for (j, m) in self.m_values.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    self.weight,
                    self.function,
                    self.k,
                    n,
                    m,
                    crate::io::format_float(self.values[i][j]),
                    crate::io::format_float(self.errors[i][j]),
                    crate::io::format_float(self.reference),
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

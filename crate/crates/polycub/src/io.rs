//! File formats spoken by the CLI: rule exports (CSV and JSON), integrand
//! sample files (CSV), and the float formatting shared by all of them.
//!
//! All floats are written with 17 significant digits, which is enough for a
//! binary64 value to survive a decimal round trip bit for bit; lines end in
//! LF and the decimal separator is always `.`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cubature::{CenterPolicy, CubatureRule, SampleGrid};
use crate::error::{Error, Result};

/// 17-significant-digit scientific form; round-trips every finite f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rule file contents, independent of which on-disk format they came from.
///
/// Carries everything needed to apply the rule: node positions, node
/// weights, and the center weight.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedRule {
    pub weight_name: String,
    pub ring_count: usize,
    pub angle_count: usize,
    /// Ring radii `R_1..R_{N₁}`.
    pub radii: Vec<f64>,
    /// Grid angles `φ_1..φ_M`.
    pub angles: Vec<f64>,
    /// Node weights, row-major over `(m, s)`.
    pub weights: Vec<f64>,
    pub center_weight: f64,
    /// Cartesian node positions, row-major over `(m, s)`.
    pub positions: Vec<(f64, f64)>,
}

impl LoadedRule {
    /// Applies the rule to a matching sample grid, ascending `(m, s)` plus
    /// the center term.
    pub fn integrate(&self, samples: &SampleGrid) -> Result<f64> {
        if samples.ring_count() != self.ring_count || samples.angle_count() != self.angle_count {
            return Err(Error::DimensionMismatch {
                expected: self.ring_count * self.angle_count,
                got: samples.ring_count() * samples.angle_count(),
            });
        }
        let mut acc = 0.0;
        for (value, weight) in samples.values().iter().zip(&self.weights) {
            acc += value * weight;
        }
        Ok(acc + self.center_weight * samples.center())
    }

    /// Evaluates `f` at the stored node positions and integrates.
    pub fn integrate_fn(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for ((x, y), weight) in self.positions.iter().zip(&self.weights) {
            acc += f(*x, *y) * weight;
        }
        acc + self.center_weight * f(0.0, 0.0)
    }
}

impl From<&CubatureRule> for LoadedRule {
    fn from(rule: &CubatureRule) -> Self {
        let radii = rule.knots().values()[1..].to_vec();
        let angles = rule.grid().angles().to_vec();
        let mut positions = Vec::with_capacity(radii.len() * angles.len());
        for &r in &radii {
            for &phi in &angles {
                positions.push((r * phi.cos(), r * phi.sin()));
            }
        }
        Self {
            weight_name: rule.weight_name().to_string(),
            ring_count: rule.ring_count(),
            angle_count: rule.angle_count(),
            radii,
            angles,
            weights: rule.weights().to_vec(),
            center_weight: rule.center_weight(),
            positions,
        }
    }
}

/// Serializes a rule as CSV: header `m,s,r,phi,x,y,weight`, one row per
/// grid node in ascending `(m, s)`, and a final center row
/// `0,0,0,0,0,0,<center_weight>`.
pub fn rule_to_csv(rule: &LoadedRule) -> String {
    let mut out = String::from("m,s,r,phi,x,y,weight\n");
    for m in 1..=rule.ring_count {
        for s in 1..=rule.angle_count {
            let i = (m - 1) * rule.angle_count + (s - 1);
            let (x, y) = rule.positions[i];
            let _ = writeln!(
                out,
                "{m},{s},{},{},{},{},{}",
                format_float(rule.radii[m - 1]),
                format_float(rule.angles[s - 1]),
                format_float(x),
                format_float(y),
                format_float(rule.weights[i]),
            );
        }
    }
    let _ = writeln!(out, "0,0,0,0,0,0,{}", format_float(rule.center_weight));
    out
}

pub fn write_rule_csv(rule: &LoadedRule, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, rule_to_csv(rule))?;
    Ok(())
}

pub fn read_rule_csv(path: impl AsRef<Path>) -> Result<LoadedRule> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let display = path.display().to_string();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "m,s,r,phi,x,y,weight" => {}
        Some((_, header)) => {
            return Err(Error::ParseError {
                path: display,
                line: 1,
                message: format!("expected header m,s,r,phi,x,y,weight, got {header:?}"),
            })
        }
        None => {
            return Err(Error::ParseError {
                path: display,
                line: 1,
                message: "empty rule file".into(),
            })
        }
    }

    struct Row {
        m: usize,
        s: usize,
        r: f64,
        phi: f64,
        x: f64,
        y: f64,
        weight: f64,
    }
    let mut rows: Vec<Row> = Vec::new();
    let mut center: Option<f64> = None;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::ParseError {
                path: display,
                line: lineno + 1,
                message: format!("expected 7 fields, got {}", fields.len()),
            });
        }
        let parse_int = |field: &str, name: &str| {
            field.trim().parse::<usize>().map_err(|e| Error::ParseError {
                path: display.clone(),
                line: lineno + 1,
                message: format!("bad {name} {field:?}: {e}"),
            })
        };
        let parse_f = |field: &str, name: &str| {
            field.trim().parse::<f64>().map_err(|e| Error::ParseError {
                path: display.clone(),
                line: lineno + 1,
                message: format!("bad {name} {field:?}: {e}"),
            })
        };
        let m = parse_int(fields[0], "m")?;
        let s = parse_int(fields[1], "s")?;
        if m == 0 && s == 0 {
            if center.is_some() {
                return Err(Error::ParseError {
                    path: display,
                    line: lineno + 1,
                    message: "duplicate center row".into(),
                });
            }
            center = Some(parse_f(fields[6], "weight")?);
            continue;
        }
        rows.push(Row {
            m,
            s,
            r: parse_f(fields[2], "r")?,
            phi: parse_f(fields[3], "phi")?,
            x: parse_f(fields[4], "x")?,
            y: parse_f(fields[5], "y")?,
            weight: parse_f(fields[6], "weight")?,
        });
    }
    let center_weight = center.ok_or_else(|| Error::BadRuleFile {
        path: display.clone(),
        message: "missing center row 0,0,...".into(),
    })?;
    let ring_count = rows.iter().map(|row| row.m).max().unwrap_or(0);
    let angle_count = rows.iter().map(|row| row.s).max().unwrap_or(0);
    if ring_count == 0 || angle_count == 0 || rows.len() != ring_count * angle_count {
        return Err(Error::BadRuleFile {
            path: display,
            message: format!(
                "expected {ring_count}×{angle_count} grid rows, got {}",
                rows.len()
            ),
        });
    }
    rows.sort_by_key(|row| (row.m, row.s));
    let mut radii = vec![f64::NAN; ring_count];
    let mut angles = vec![f64::NAN; angle_count];
    let mut weights = Vec::with_capacity(rows.len());
    let mut positions = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let (expect_m, expect_s) = (i / angle_count + 1, i % angle_count + 1);
        if row.m != expect_m || row.s != expect_s {
            return Err(Error::BadRuleFile {
                path: display,
                message: format!(
                    "grid cell ({expect_m},{expect_s}) is missing or duplicated (found ({},{}))",
                    row.m, row.s
                ),
            });
        }
        radii[row.m - 1] = row.r;
        angles[row.s - 1] = row.phi;
        weights.push(row.weight);
        positions.push((row.x, row.y));
    }
    Ok(LoadedRule {
        weight_name: String::new(),
        ring_count,
        angle_count,
        radii,
        angles,
        weights,
        center_weight,
        positions,
    })
}

/// JSON rule file: a parameters block, the knot vector, the flat weight
/// table, and the center weight.
#[derive(Debug, Serialize, Deserialize)]
pub struct RuleFileJson {
    pub weight: String,
    pub parameters: RuleParameters,
    pub knots: Vec<f64>,
    pub weights: Vec<f64>,
    pub center_weight: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RuleParameters {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(rename = "N1")]
    pub n1: usize,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(default)]
    pub center: CenterPolicy,
}

pub fn rule_to_json(rule: &CubatureRule) -> Result<String> {
    let file = RuleFileJson {
        weight: rule.weight_name().to_string(),
        parameters: RuleParameters {
            n: rule.gauss_point_count(),
            m: rule.angle_count(),
            k: rule.harmonic_truncation(),
            n1: rule.ring_count(),
            r: rule.radius(),
            center: rule.center_policy(),
        },
        knots: rule.knots().values().to_vec(),
        weights: rule.weights().to_vec(),
        center_weight: rule.center_weight(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn write_rule_json(rule: &CubatureRule, path: impl AsRef<Path>) -> Result<()> {
    let mut text = rule_to_json(rule)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_rule_json(path: impl AsRef<Path>) -> Result<LoadedRule> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let file: RuleFileJson = serde_json::from_str(&text)?;
    let n1 = file.parameters.n1;
    let m = file.parameters.m;
    if file.knots.len() != n1 + 1 {
        return Err(Error::BadRuleFile {
            path: path.display().to_string(),
            message: format!("knot count {} does not match N1 = {n1}", file.knots.len()),
        });
    }
    if file.weights.len() != n1 * m {
        return Err(Error::BadRuleFile {
            path: path.display().to_string(),
            message: format!(
                "weight count {} does not match N1·M = {}",
                file.weights.len(),
                n1 * m
            ),
        });
    }
    let radii = file.knots[1..].to_vec();
    let angles: Vec<f64> = (1..=m)
        .map(|s| 2.0 * std::f64::consts::PI * s as f64 / m as f64)
        .collect();
    let mut positions = Vec::with_capacity(n1 * m);
    for &r in &radii {
        for &phi in &angles {
            positions.push((r * phi.cos(), r * phi.sin()));
        }
    }
    Ok(LoadedRule {
        weight_name: file.weight,
        ring_count: n1,
        angle_count: m,
        radii,
        angles,
        weights: file.weights,
        center_weight: file.center_weight,
        positions,
    })
}

/// Reads a samples CSV (`m,s,value` header, one row per grid cell, center
/// row `0,0,<f(0)>`). Every cell of the inferred `N₁ × M` grid must be
/// present exactly once.
pub fn read_samples_csv(path: impl AsRef<Path>) -> Result<SampleGrid> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let display = path.display().to_string();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "m,s,value" => {}
        Some((_, header)) => {
            return Err(Error::ParseError {
                path: display,
                line: 1,
                message: format!("expected header m,s,value, got {header:?}"),
            })
        }
        None => {
            return Err(Error::ParseError {
                path: display,
                line: 1,
                message: "empty samples file".into(),
            })
        }
    }
    let mut cells: Vec<(usize, usize, f64)> = Vec::new();
    let mut center: Option<f64> = None;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::ParseError {
                path: display,
                line: lineno + 1,
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let m: usize = fields[0].trim().parse().map_err(|e| Error::ParseError {
            path: display.clone(),
            line: lineno + 1,
            message: format!("bad m {:?}: {e}", fields[0]),
        })?;
        let s: usize = fields[1].trim().parse().map_err(|e| Error::ParseError {
            path: display.clone(),
            line: lineno + 1,
            message: format!("bad s {:?}: {e}", fields[1]),
        })?;
        let value: f64 = fields[2].trim().parse().map_err(|e| Error::ParseError {
            path: display.clone(),
            line: lineno + 1,
            message: format!("bad value {:?}: {e}", fields[2]),
        })?;
        if m == 0 && s == 0 {
            if center.is_some() {
                return Err(Error::ParseError {
                    path: display,
                    line: lineno + 1,
                    message: "duplicate center row".into(),
                });
            }
            center = Some(value);
        } else if m == 0 || s == 0 {
            return Err(Error::ParseError {
                path: display,
                line: lineno + 1,
                message: format!("indices must both be positive or both 0, got ({m},{s})"),
            });
        } else {
            cells.push((m, s, value));
        }
    }
    let center = center.ok_or_else(|| Error::BadSamplesFile {
        path: display.clone(),
        message: "missing center row 0,0,<f(0)>".into(),
    })?;
    let n1 = cells.iter().map(|c| c.0).max().unwrap_or(0);
    let m = cells.iter().map(|c| c.1).max().unwrap_or(0);
    if n1 == 0 || m == 0 {
        return Err(Error::BadSamplesFile {
            path: display,
            message: "no grid cells".into(),
        });
    }
    let mut values = vec![f64::NAN; n1 * m];
    let mut seen = vec![false; n1 * m];
    for (mi, si, value) in cells {
        let i = (mi - 1) * m + (si - 1);
        if seen[i] {
            return Err(Error::BadSamplesFile {
                path: display,
                message: format!("cell ({mi},{si}) appears more than once"),
            });
        }
        seen[i] = true;
        values[i] = value;
    }
    if let Some(missing) = seen.iter().position(|&ok| !ok) {
        return Err(Error::BadSamplesFile {
            path: display,
            message: format!(
                "cell ({},{}) is missing",
                missing / m + 1,
                missing % m + 1
            ),
        });
    }
    SampleGrid::new(n1, m, values, center)
}

/// Writes a samples CSV in the layout read back by [`read_samples_csv`].
pub fn write_samples_csv(samples: &SampleGrid, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::from("m,s,value\n");
    for m in 1..=samples.ring_count() {
        for s in 1..=samples.angle_count() {
            let _ = writeln!(out, "{m},{s},{}", format_float(samples.value(m, s)));
        }
    }
    let _ = writeln!(out, "0,0,{}", format_float(samples.center()));
    std::fs::write(path, out)?;
    Ok(())
}

//! Weights on the disc given through their circular-harmonic radial
//! coefficients.
//!
//! A weight enters the pipeline as a finite list of radial profiles
//! `w_(k,ℓ)(r)` on `[0, R]`, one per harmonic. Every profile must keep a
//! single sign on `[0, R]` (pseudo-definiteness); that is what makes the
//! per-harmonic Gaussian rules of [`crate::gauss`] possible. Two built-in
//! weights are provided:
//!
//! * `w1(x, y) = (1 + x)/√(x² + y²)`, whose expansion has exactly the two
//!   terms `√(2π)·r⁻¹` at `(0,1)` and `√π` at `(1,1)`;
//! * `w2(x, y) = |y|`, whose expansion has the term `(2√2/√π)·r` at `(0,1)`
//!   and `−(4/√π)/(4k²−1)·r` at `(2k,1)` for every `k ≥ 1`, truncated at a
//!   caller-chosen even degree.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::HarmonicIndex;

/// One radial coefficient `w_(k,ℓ)(r)` on `[0, R]`.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialProfile {
    /// `r ↦ c · r^γ` with `γ > −2` so that `|c| r^γ · r` stays integrable.
    PowerLaw { c: f64, gamma: f64 },
    /// Piecewise-linear interpolant of `values` sampled on the uniform mesh
    /// `r_i = R·i/(n−1)`, `i = 0..n`. The samples define the profile; all
    /// integrals of a tabulated profile are integrals of this interpolant.
    Tabulated { values: Vec<f64> },
}

impl RadialProfile {
    pub fn power_law(c: f64, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= -2.0 {
            return Err(Error::DivergentProfile(gamma));
        }
        Ok(Self::PowerLaw { c, gamma })
    }

    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewSamples(values.len()));
        }
        let profile = Self::Tabulated { values };
        check_pseudo_definite(&profile, 1.0)?;
        Ok(profile)
    }

    /// Profile value at `r ∈ [0, R]`.
    ///
    /// Power laws with negative exponent are left unevaluated at `r = 0`
    /// (the quadrature machinery never asks for that point).
    pub fn value(&self, r: f64, radius: f64) -> f64 {
        match self {
            Self::PowerLaw { c, gamma } => c * r.powf(*gamma),
            Self::Tabulated { values } => {
                let n = values.len() - 1;
                let x = (r / radius * n as f64).clamp(0.0, n as f64);
                let i = (x.floor() as usize).min(n - 1);
                let t = x - i as f64;
                values[i] * (1.0 - t) + values[i + 1] * t
            }
        }
    }

    /// `∫₀^R |w(r)| r dr`, the term's contribution to the weight norm.
    ///
    /// Closed form for power laws; for tabulated profiles each mesh segment
    /// is integrated with a 2-point Gauss-Legendre rule, exact for the
    /// quadratic integrand `(linear) · r`.
    pub fn radial_norm(&self, radius: f64) -> f64 {
        match self {
            Self::PowerLaw { c, gamma } => c.abs() * radius.powf(gamma + 2.0) / (gamma + 2.0),
            Self::Tabulated { values } => {
                let n = values.len() - 1;
                let h = radius / n as f64;
                let offset = 0.5 / 3.0_f64.sqrt();
                let mut total = 0.0;
                for i in 0..n {
                    let mid = (i as f64 + 0.5) * h;
                    for u in [mid - offset * h, mid + offset * h] {
                        total += 0.5 * h * self.value(u, radius) * u;
                    }
                }
                total.abs()
            }
        }
    }

    /// True when every sample (or the coefficient) is exactly zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Self::PowerLaw { c, .. } => *c == 0.0,
            Self::Tabulated { values } => values.iter().all(|v| *v == 0.0),
        }
    }
}

/// Sign of a pseudo-definite profile on `[0, R]`: `+1`, `−1`, or `0` when
/// identically zero. A profile that changes sign is rejected, since the
/// method's premise fails for it.
pub fn check_pseudo_definite(profile: &RadialProfile, radius: f64) -> Result<i8> {
    match profile {
        RadialProfile::PowerLaw { c, .. } => Ok(if *c > 0.0 {
            1
        } else if *c < 0.0 {
            -1
        } else {
            0
        }),
        RadialProfile::Tabulated { values } => {
            let mut sign = 0i8;
            let n = values.len() - 1;
            for (i, v) in values.iter().enumerate() {
                let here = if *v > 0.0 {
                    1
                } else if *v < 0.0 {
                    -1
                } else {
                    0
                };
                if here != 0 {
                    if sign == 0 {
                        sign = here;
                    } else if here != sign {
                        return Err(Error::SignChange(radius * i as f64 / n as f64));
                    }
                }
            }
            Ok(sign)
        }
    }
}

/// Identifier of a built-in weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinWeight {
    /// `(1 + x)/√(x² + y²)`
    W1,
    /// `|y|`
    W2,
}

impl FromStr for BuiltinWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w1" => Ok(Self::W1),
            "w2" => Ok(Self::W2),
            other => Err(Error::UnknownWeight(other.to_string())),
        }
    }
}

impl BuiltinWeight {
    pub fn name(&self) -> &'static str {
        match self {
            Self::W1 => "w1",
            Self::W2 => "w2",
        }
    }
}

/// A weight on the disc of radius `R`, held as its harmonic term list.
///
/// Immutable after construction; terms are kept sorted by `(k, ℓ)` so that
/// every iteration over the weight is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFourier {
    radius: f64,
    terms: BTreeMap<HarmonicIndex, RadialProfile>,
    name: String,
}

impl WeightFourier {
    pub fn new(
        radius: f64,
        terms: impl IntoIterator<Item = (HarmonicIndex, RadialProfile)>,
        name: impl Into<String>,
    ) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidRadius(radius));
        }
        let terms: BTreeMap<_, _> = terms.into_iter().collect();
        for profile in terms.values() {
            check_pseudo_definite(profile, radius)?;
            if let RadialProfile::PowerLaw { gamma, .. } = profile {
                if !gamma.is_finite() || *gamma <= -2.0 {
                    return Err(Error::DivergentProfile(*gamma));
                }
            }
        }
        Ok(Self {
            radius,
            terms,
            name: name.into(),
        })
    }

    /// Built-in weight `id` on the disc of radius `radius`, truncated at
    /// harmonic degree `k_trunc`.
    ///
    /// `w1` needs `k_trunc ≥ 1` (its expansion ends at `k = 1`); `w2` needs
    /// an even `k_trunc` since only even harmonics appear in `|y|`.
    pub fn builtin(id: BuiltinWeight, radius: f64, k_trunc: u32) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidRadius(radius));
        }
        let mut terms = BTreeMap::new();
        match id {
            BuiltinWeight::W1 => {
                if k_trunc < 1 {
                    return Err(Error::InvalidTruncation {
                        id: "w1",
                        k_trunc,
                        reason: "the expansion of w1 ends at k = 1; K_trunc must be >= 1",
                    });
                }
                terms.insert(
                    HarmonicIndex::new(0, 1)?,
                    RadialProfile::power_law((2.0 * PI).sqrt(), -1.0)?,
                );
                terms.insert(
                    HarmonicIndex::new(1, 1)?,
                    RadialProfile::power_law(PI.sqrt(), 0.0)?,
                );
            }
            BuiltinWeight::W2 => {
                if !k_trunc.is_multiple_of(2) {
                    return Err(Error::InvalidTruncation {
                        id: "w2",
                        k_trunc,
                        reason: "|y| has only even harmonics; K_trunc must be even",
                    });
                }
                terms.insert(
                    HarmonicIndex::new(0, 1)?,
                    RadialProfile::power_law(2.0 * 2.0_f64.sqrt() / PI.sqrt(), 1.0)?,
                );
                for k in 1..=(k_trunc / 2) {
                    let denom = 4.0 * f64::from(k) * f64::from(k) - 1.0;
                    terms.insert(
                        HarmonicIndex::new(2 * k, 1)?,
                        RadialProfile::power_law(-4.0 / (PI.sqrt() * denom), 1.0)?,
                    );
                }
            }
        }
        Self::new(radius, terms, id.name())
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Terms in ascending `(k, ℓ)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&HarmonicIndex, &RadialProfile)> {
        self.terms.iter()
    }

    pub fn term(&self, idx: HarmonicIndex) -> Option<&RadialProfile> {
        self.terms.get(&idx)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest harmonic degree present.
    pub fn k_max(&self) -> u32 {
        self.terms.keys().map(|idx| idx.k()).max().unwrap_or(0)
    }

    /// `‖w‖ = Σ_(k,ℓ) ∫₀^R |w_(k,ℓ)(r)| r dr`.
    pub fn norm(&self) -> f64 {
        self.terms
            .values()
            .map(|profile| profile.radial_norm(self.radius))
            .sum()
    }

    /// Partial norm over the terms with `k ≤ k_max` only.
    pub fn norm_truncated(&self, k_max: u32) -> f64 {
        self.terms
            .iter()
            .filter(|(idx, _)| idx.k() <= k_max)
            .map(|(_, profile)| profile.radial_norm(self.radius))
            .sum()
    }

    /// Reads a weight description file; see the JSON schema accepted by
    /// [`WeightFile`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: WeightFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self) -> Result<String> {
        let file = WeightFile::from(self);
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Exact norm of the untruncated `w2 = |y|` on the unit disc:
/// `2(√2 + 1)/(3√π)` from the telescoping sum `Σ_{k≥1} 1/(4k²−1) = 1/2`.
pub fn w2_norm_limit() -> f64 {
    2.0 * (2.0_f64.sqrt() + 1.0) / (3.0 * PI.sqrt())
}

/// Norm of the `w2` tail dropped by truncation at even `k_trunc`:
/// `2 / (3√π (k_trunc + 1))`.
pub fn w2_truncation_tail(k_trunc: u32) -> f64 {
    2.0 / (3.0 * PI.sqrt() * f64::from(k_trunc + 1))
}

/// On-disk weight description:
///
/// ```json
/// { "R": 1.0,
///   "terms": [ { "k": 0, "ell": 1, "kind": "power", "c": 2.5, "gamma": -1.0 },
///              { "k": 2, "ell": 1, "kind": "table", "values": [0.0, 0.5, 1.0] } ] }
/// ```
#[derive(Debug, Serialize, Deserialize)]
pub struct WeightFile {
    #[serde(rename = "R")]
    pub r: f64,
    pub terms: Vec<WeightFileTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WeightFileTerm {
    pub k: u32,
    pub ell: u32,
    #[serde(flatten)]
    pub profile: ProfileSpec,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProfileSpec {
    Power { c: f64, gamma: f64 },
    Table { values: Vec<f64> },
}

impl TryFrom<WeightFile> for WeightFourier {
    type Error = Error;

    fn try_from(file: WeightFile) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for term in file.terms {
            let idx = HarmonicIndex::new(term.k, term.ell)?;
            let profile = match term.profile {
                ProfileSpec::Power { c, gamma } => RadialProfile::power_law(c, gamma)?,
                ProfileSpec::Table { values } => RadialProfile::tabulated(values)?,
            };
            terms.insert(idx, profile);
        }
        WeightFourier::new(file.r, terms, "custom")
    }
}

impl From<&WeightFourier> for WeightFile {
    fn from(w: &WeightFourier) -> Self {
        let terms = w
            .terms()
            .map(|(idx, profile)| WeightFileTerm {
                k: idx.k(),
                ell: idx.ell(),
                profile: match profile {
                    RadialProfile::PowerLaw { c, gamma } => ProfileSpec::Power {
                        c: *c,
                        gamma: *gamma,
                    },
                    RadialProfile::Tabulated { values } => ProfileSpec::Table {
                        values: values.clone(),
                    },
                },
            })
            .collect();
        WeightFile { r: w.radius(), terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn w1_has_the_two_expected_terms() {
        let w = WeightFourier::builtin(BuiltinWeight::W1, 1.0, 1).unwrap();
        assert_eq!(w.term_count(), 2);
        match w.term(HarmonicIndex::new(0, 1).unwrap()).unwrap() {
            RadialProfile::PowerLaw { c, gamma } => {
                assert_abs_diff_eq!(*c, (2.0 * PI).sqrt(), epsilon = 1e-15);
                assert_eq!(*gamma, -1.0);
            }
            other => panic!("unexpected profile {other:?}"),
        }
        match w.term(HarmonicIndex::new(1, 1).unwrap()).unwrap() {
            RadialProfile::PowerLaw { c, gamma } => {
                assert_abs_diff_eq!(*c, PI.sqrt(), epsilon = 1e-15);
                assert_eq!(*gamma, 0.0);
            }
            other => panic!("unexpected profile {other:?}"),
        }
    }

    #[test]
    fn w2_truncations() {
        let w = WeightFourier::builtin(BuiltinWeight::W2, 1.0, 2).unwrap();
        assert_eq!(w.term_count(), 2);
        match w.term(HarmonicIndex::new(0, 1).unwrap()).unwrap() {
            RadialProfile::PowerLaw { c, gamma } => {
                assert_abs_diff_eq!(*c, 1.5957691216057308, epsilon = 1e-15);
                assert_eq!(*gamma, 1.0);
            }
            other => panic!("unexpected profile {other:?}"),
        }
        match w.term(HarmonicIndex::new(2, 1).unwrap()).unwrap() {
            RadialProfile::PowerLaw { c, gamma } => {
                assert_abs_diff_eq!(*c, -0.7522527780636750, epsilon = 1e-15);
                assert_eq!(*gamma, 1.0);
            }
            other => panic!("unexpected profile {other:?}"),
        }

        let w22 = WeightFourier::builtin(BuiltinWeight::W2, 1.0, 22).unwrap();
        assert_eq!(w22.term_count(), 12);
        assert_eq!(w22.k_max(), 22);

        assert!(WeightFourier::builtin(BuiltinWeight::W2, 1.0, 3).is_err());
        assert!(WeightFourier::builtin(BuiltinWeight::W1, 1.0, 0).is_err());
    }

    #[test]
    fn pseudo_definite_signs() {
        let pos = RadialProfile::power_law(PI.sqrt(), 0.0).unwrap();
        assert_eq!(check_pseudo_definite(&pos, 1.0).unwrap(), 1);

        let neg = RadialProfile::power_law(-4.0 / (3.0 * PI.sqrt()), 1.0).unwrap();
        assert_eq!(check_pseudo_definite(&neg, 1.0).unwrap(), -1);

        let zero = RadialProfile::power_law(0.0, 2.0).unwrap();
        assert_eq!(check_pseudo_definite(&zero, 1.0).unwrap(), 0);

        // r − 0.5 on [0, 1] changes sign at r = 0.5.
        let values: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0 - 0.5).collect();
        let err = RadialProfile::tabulated(values).unwrap_err();
        assert!(matches!(err, Error::SignChange(_)));

        let all_nonneg = RadialProfile::tabulated(vec![0.0, 0.0, 1.0, 2.0]).unwrap();
        assert_eq!(check_pseudo_definite(&all_nonneg, 1.0).unwrap(), 1);
    }

    #[test]
    fn gamma_bound_is_enforced_at_construction() {
        assert!(RadialProfile::power_law(1.0, -2.0).is_err());
        assert!(RadialProfile::power_law(1.0, -2.5).is_err());
        assert!(RadialProfile::power_law(1.0, -1.999).is_ok());
    }

    #[test]
    fn norm_of_w1() {
        let w = WeightFourier::builtin(BuiltinWeight::W1, 1.0, 1).unwrap();
        let expected = (2.0 * PI).sqrt() + PI.sqrt() / 2.0;
        assert_abs_diff_eq!(w.norm(), expected, epsilon = 1e-14);
        // the coarse magnitude quoted alongside the error bounds
        assert!((w.norm() - 3.4).abs() < 0.01);
    }

    #[test]
    fn norm_of_single_constant_term() {
        let term = RadialProfile::power_law((2.0 * PI).sqrt(), 0.0).unwrap();
        let w = WeightFourier::new(1.0, [(HarmonicIndex::new(0, 1).unwrap(), term)], "t").unwrap();
        assert_abs_diff_eq!(w.norm(), (2.0 * PI).sqrt() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn w2_norm_approaches_telescoped_limit() {
        let limit = w2_norm_limit();
        assert_abs_diff_eq!(limit, 0.9080494295670808, epsilon = 1e-12);

        let mut last = 0.0;
        for k_trunc in [0u32, 2, 10, 22, 100] {
            let w = WeightFourier::builtin(BuiltinWeight::W2, 1.0, k_trunc).unwrap();
            let n = w.norm();
            assert!(n >= last - 1e-15, "norm must grow with the truncation");
            assert!(n <= limit + 1e-15);
            assert_abs_diff_eq!(n + w2_truncation_tail(k_trunc), limit, epsilon = 1e-13);
            last = n;
        }
    }

    #[test]
    fn norm_is_additive_and_homogeneous() {
        let w = WeightFourier::builtin(BuiltinWeight::W2, 1.0, 6).unwrap();
        let scaled_terms: Vec<_> = w
            .terms()
            .map(|(idx, profile)| {
                let RadialProfile::PowerLaw { c, gamma } = profile else {
                    unreachable!()
                };
                (*idx, RadialProfile::power_law(3.0 * c, *gamma).unwrap())
            })
            .collect();
        let scaled = WeightFourier::new(1.0, scaled_terms, "scaled").unwrap();
        assert_abs_diff_eq!(scaled.norm(), 3.0 * w.norm(), epsilon = 1e-13);

        let partial: f64 = w
            .terms()
            .map(|(_, profile)| profile.radial_norm(1.0))
            .sum();
        assert_abs_diff_eq!(partial, w.norm(), epsilon = 1e-15);
        assert_abs_diff_eq!(w.norm_truncated(2) + w2_truncation_tail(2), w2_norm_limit(), epsilon = 1e-13);
    }

    #[test]
    fn tabulated_norm_matches_power_law() {
        // r ↦ r on [0,1], tabulated densely, against the closed form 1/3.
        let values: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
        let table = RadialProfile::tabulated(values).unwrap();
        // piecewise-linear interpolant of r is r itself, so this is exact
        assert_abs_diff_eq!(table.radial_norm(1.0), 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn weight_file_round_trip() {
        let json = r#"{
            "R": 1.0,
            "terms": [
                { "k": 0, "ell": 1, "kind": "power", "c": 2.5066282746310002, "gamma": -1.0 },
                { "k": 1, "ell": 1, "kind": "power", "c": 1.7724538509055160, "gamma": 0.0 }
            ]
        }"#;
        let w = WeightFourier::from_json(json).unwrap();
        assert_eq!(w.term_count(), 2);
        assert_abs_diff_eq!(w.norm(), (2.0 * PI).sqrt() + PI.sqrt() / 2.0, epsilon = 1e-13);

        let text = w.to_json().unwrap();
        let reread = WeightFourier::from_json(&text).unwrap();
        assert_eq!(w.term_count(), reread.term_count());
        assert_eq!(w.norm().to_bits(), reread.norm().to_bits());
    }

    #[test]
    fn weight_file_rejects_sign_changes() {
        let json = r#"{
            "R": 1.0,
            "terms": [ { "k": 0, "ell": 1, "kind": "table", "values": [-0.5, 0.5] } ]
        }"#;
        assert!(WeightFourier::from_json(json).is_err());
    }
}

//! Orthonormal circular harmonics, equispaced angular grids, and the
//! discrete Fourier transform of ring samples.
//!
//! The harmonics are `Y_(0,1) = 1/√(2π)`, `Y_(k,1) = cos(kφ)/√π` and
//! `Y_(k,2) = sin(kφ)/√π` for `k ≥ 1`; they are orthonormal on the circle
//! and stay orthonormal under the discrete inner product on any odd-size
//! equispaced grid, as long as the degrees involved do not alias.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index `(k, ℓ)` of a circular harmonic.
///
/// `k = 0` has the single branch `ℓ = 1` (the constant); every `k ≥ 1` has
/// the cosine branch `ℓ = 1` and the sine branch `ℓ = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HarmonicIndex {
    k: u32,
    ell: u32,
}

impl HarmonicIndex {
    pub fn new(k: u32, ell: u32) -> Result<Self> {
        if ell == 0 || ell > Self::branch_count(k) {
            return Err(Error::InvalidHarmonicIndex { k, ell });
        }
        Ok(Self { k, ell })
    }

    /// Number of branches `a_k`: 1 for `k = 0`, 2 otherwise.
    pub fn branch_count(k: u32) -> u32 {
        if k == 0 {
            1
        } else {
            2
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Evaluates the orthonormal harmonic `Y_(k,ℓ)` at the angle `phi`.
    pub fn eval(&self, phi: f64) -> f64 {
        let kphi = f64::from(self.k) * phi;
        match (self.k, self.ell) {
            (0, _) => 1.0 / (2.0 * PI).sqrt(),
            (_, 1) => kphi.cos() / PI.sqrt(),
            _ => kphi.sin() / PI.sqrt(),
        }
    }
}

impl std::fmt::Display for HarmonicIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.k, self.ell)
    }
}

/// The equispaced angles `φ_s = 2πs/M` for `s = 1..=M`, `M` odd.
///
/// The index `s` is carried 1-based throughout so that sample files and
/// weight tables line up without off-by-one bookkeeping; `φ_M = 2π` rather
/// than `0`, matching how the grid is generated.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid {
    m: usize,
    angles: Vec<f64>,
}

impl AngularGrid {
    /// Builds the grid; `m` must be odd and at least 3.
    pub fn new(m: usize) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) {
            return Err(Error::InvalidAngularGrid(m));
        }
        let angles = (1..=m).map(|s| 2.0 * PI * s as f64 / m as f64).collect();
        Ok(Self { m, angles })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All angles, ordered by `s = 1..=M`.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Angle `φ_s` for 1-based `s`.
    pub fn angle(&self, s: usize) -> f64 {
        self.angles[s - 1]
    }

    /// Discrete Fourier coefficient of ring samples:
    /// `(2π/M) Σ_s f(φ_s) Y_(k,ℓ)(φ_s)`.
    ///
    /// For a trigonometric polynomial of degree `d` with `2d < M` this equals
    /// the continuous Fourier coefficient; higher degrees alias.
    pub fn dft_coefficient(&self, samples: &[f64], idx: HarmonicIndex) -> Result<f64> {
        if samples.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: samples.len(),
            });
        }
        let mut acc = 0.0;
        for (sample, phi) in samples.iter().zip(&self.angles) {
            acc += sample * idx.eval(*phi);
        }
        Ok(acc * 2.0 * PI / self.m as f64)
    }
}

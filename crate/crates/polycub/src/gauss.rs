//! Per-harmonic Gaussian rules for the radial measures
//! `ρ^{k/2} w_(k,ℓ)(√ρ) dρ` on `[0, R²]`.
//!
//! Power-law profiles produce shifted Jacobi measures whose three-term
//! recurrence coefficients are known in closed form; tabulated profiles go
//! through a Stieltjes procedure on a composite Gauss-Legendre
//! discretization of the measure. Either way the nodes and weights come out
//! of the Golub-Welsch eigensolve of the symmetric tridiagonal recurrence
//! matrix. Raw-moment (Hankel) constructions are avoided on purpose: they
//! lose all accuracy long before the N = 50 rules needed here.
//!
//! Sign handling: the rule is built for the positive measure `|w|` and the
//! profile's sign is multiplied into the stored weights afterwards, so the
//! exactness identity `Σ λ_j t_j^s = μ_s` holds verbatim for signed
//! profiles too.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::harmonics::HarmonicIndex;
use crate::weight::{check_pseudo_definite, RadialProfile};

/// Relative stabilization target for the discretized Stieltjes recurrence
/// coefficients under panel doubling.
const STIELTJES_TOL: f64 = 1e-13;

/// N-point Gaussian rule for `ρ^{k/2} w_(k,ℓ)(√ρ) dρ` on `[0, R²]`.
///
/// Nodes are strictly increasing and strictly inside `(0, R²)`; the weights
/// all carry the profile's sign and satisfy `Σ_j λ_j t_j^s = μ_s` for
/// `0 ≤ s ≤ 2N−1`, with `μ_s` as returned by [`radial_moments`].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRadialRule {
    idx: HarmonicIndex,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    sign: i8,
}

impl GaussRadialRule {
    pub fn idx(&self) -> HarmonicIndex {
        self.idx
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// The pairs `(√t_j, λ_j · t_j^{−k/2})` consumed by the cubature
    /// assembly. The `t^{−k/2}` factor is applied in the log domain so that
    /// large `k` with nodes near zero cannot overflow prematurely.
    pub fn radial_factors(&self) -> Vec<(f64, f64)> {
        let half_k = f64::from(self.idx.k()) / 2.0;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &lambda)| (t.sqrt(), lambda * (-half_k * t.ln()).exp()))
            .collect()
    }
}

/// Moments `μ_s = ∫₀^{R²} ρ^{s+k/2} w(√ρ) dρ` for `s = 0..=s_max`.
///
/// Power laws use the closed form `c · R^{2s+k+γ+2} / (s + (k+γ)/2 + 1)`;
/// tabulated profiles are integrated segment by segment in the original
/// radial variable, where the integrand is a polynomial.
pub fn radial_moments(
    idx: HarmonicIndex,
    profile: &RadialProfile,
    radius: f64,
    s_max: usize,
) -> Result<Vec<f64>> {
    let k = idx.k();
    match profile {
        RadialProfile::PowerLaw { c, gamma } => {
            let alpha = (f64::from(k) + gamma) / 2.0;
            if alpha <= -1.0 {
                return Err(Error::DivergentMoment {
                    s: 0,
                    k,
                    ell: idx.ell(),
                    exponent: alpha,
                });
            }
            let length = radius * radius;
            Ok((0..=s_max)
                .map(|s| {
                    let exponent = s as f64 + alpha + 1.0;
                    c * length.powf(exponent) / exponent
                })
                .collect())
        }
        RadialProfile::Tabulated { values } => {
            // μ_s = 2 ∫₀^R r^{2s+k+1} w(r) dr; per mesh segment the
            // integrand has degree 2s+k+2, so pick the panel order to make
            // composite Gauss-Legendre exact for the largest s.
            let degree = 2 * s_max + k as usize + 2;
            let points = (degree / 2 + 2).min(120);
            let (glx, glw) = gauss_legendre(points);
            let n = values.len() - 1;
            let h = radius / n as f64;
            let mut moments = vec![0.0; s_max + 1];
            for i in 0..n {
                let a = i as f64 * h;
                for (x, w) in glx.iter().zip(&glw) {
                    let r = a + 0.5 * h * (x + 1.0);
                    let base = 2.0 * profile.value(r, radius) * r * 0.5 * h * w;
                    let r2 = r * r;
                    let mut pow = r.powi(k as i32);
                    for moment in moments.iter_mut() {
                        *moment += base * pow;
                        pow *= r2;
                    }
                }
            }
            Ok(moments)
        }
    }
}

/// Builds the N-point Gaussian rule for the radial measure of `(idx,
/// profile)` on the disc of radius `radius`.
pub fn build_gauss_rule(
    idx: HarmonicIndex,
    profile: &RadialProfile,
    radius: f64,
    n: usize,
) -> Result<GaussRadialRule> {
    if n == 0 {
        return Err(Error::EmptyRule);
    }
    let sign = check_pseudo_definite(profile, radius)?;
    if sign == 0 || profile.is_zero() {
        return Err(Error::EmptyMeasure {
            k: idx.k(),
            ell: idx.ell(),
        });
    }
    let recurrence = match profile {
        RadialProfile::PowerLaw { c, gamma } => {
            shifted_jacobi_recurrence(idx.k(), *gamma, c.abs(), radius, n)
        }
        RadialProfile::Tabulated { .. } => stieltjes_recurrence(idx, profile, radius, n)?,
    };
    let (nodes, mut weights) = golub_welsch(&recurrence)?;
    if sign < 0 {
        for w in &mut weights {
            *w = -*w;
        }
    }
    let length = radius * radius;
    debug_assert!(nodes.windows(2).all(|p| p[0] < p[1]));
    debug_assert!(nodes.iter().all(|&t| t > 0.0 && t < length));
    Ok(GaussRadialRule {
        idx,
        nodes,
        weights,
        sign,
    })
}

/// Checks the Chebyshev-type stability bound of a built rule:
/// returns `∫₀^R |w(r)| r dr − ½ Σ_j |λ_j| t_j^{−k/2}`, which is
/// nonnegative up to roundoff. (The stored weights integrate the measure on
/// `[0, R²]`, which is twice the radial integral `∫ r^{2s+k} w r dr`; the ½
/// puts the sum on the radial scale the bound speaks about.)
pub fn chebyshev_bound_check(rule: &GaussRadialRule, profile: &RadialProfile, radius: f64) -> f64 {
    let bound = profile.radial_norm(radius);
    let half_k = f64::from(rule.idx().k()) / 2.0;
    let sum: f64 = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&t, &lambda)| lambda.abs() * (-half_k * t.ln()).exp())
        .sum();
    bound - 0.5 * sum
}

/// Three-term recurrence data for an orthonormal polynomial family:
/// `√β_{j+1} q_{j+1}(x) = (x − α_j) q_j(x) − √β_j q_{j−1}(x)`, plus the
/// total mass `β₀` of the (positive) measure.
struct Recurrence {
    diag: Vec<f64>,
    off_diag: Vec<f64>,
    mass: f64,
}

/// Closed-form recurrence for the measure `|c| ρ^α dρ` on `[0, R²]` with
/// `α = (k + γ)/2`: shifted Jacobi with exponents `(0, α)`, mapped from
/// `[−1, 1]` onto the target interval.
fn shifted_jacobi_recurrence(k: u32, gamma: f64, c_abs: f64, radius: f64, n: usize) -> Recurrence {
    let b = (f64::from(k) + gamma) / 2.0;
    let length = radius * radius;
    let half = 0.5 * length;

    let mut diag = Vec::with_capacity(n);
    let mut off_diag = Vec::with_capacity(n.saturating_sub(1));
    diag.push(half * (b / (b + 2.0) + 1.0));
    for j in 1..n {
        let j = j as f64;
        let denom = 2.0 * j + b;
        diag.push(half * (b * b / (denom * (denom + 2.0)) + 1.0));
        let beta = 4.0 * j * j * (j + b) * (j + b) / (denom * denom * (denom + 1.0) * (denom - 1.0));
        off_diag.push(half * beta.sqrt());
    }
    let mass = c_abs * length.powf(b + 1.0) / (b + 1.0);
    Recurrence {
        diag,
        off_diag,
        mass,
    }
}

/// Stieltjes procedure over a composite Gauss-Legendre discretization of
/// the positive measure, refined until the recurrence coefficients are
/// stable under panel doubling.
fn stieltjes_recurrence(
    idx: HarmonicIndex,
    profile: &RadialProfile,
    radius: f64,
    n: usize,
) -> Result<Recurrence> {
    let segments: Vec<f64> = match profile {
        RadialProfile::Tabulated { values } => {
            let m = values.len() - 1;
            (0..=m).map(|i| radius * i as f64 / m as f64).collect()
        }
        RadialProfile::PowerLaw { .. } => vec![0.0, radius],
    };
    let mut sub = 1usize.max(2 * n / (30 * (segments.len() - 1)) + 1);
    let mut previous: Option<Recurrence> = None;
    loop {
        let current = stieltjes_on_grid(idx, profile, radius, &segments, sub, n)?;
        if let Some(prev) = &previous {
            let scale = radius * radius;
            let stable = prev
                .diag
                .iter()
                .zip(&current.diag)
                .all(|(a, b)| (a - b).abs() <= STIELTJES_TOL * scale)
                && prev
                    .off_diag
                    .iter()
                    .zip(&current.off_diag)
                    .all(|(a, b)| (a - b).abs() <= STIELTJES_TOL * scale)
                && (prev.mass - current.mass).abs() <= STIELTJES_TOL * prev.mass.abs().max(1.0);
            if stable || sub >= 4096 {
                return Ok(current);
            }
        }
        previous = Some(current);
        sub *= 2;
    }
}

fn stieltjes_on_grid(
    idx: HarmonicIndex,
    profile: &RadialProfile,
    radius: f64,
    segments: &[f64],
    sub: usize,
    n: usize,
) -> Result<Recurrence> {
    let k = idx.k();
    let (glx, glw) = gauss_legendre(30);

    // Discrete approximation of the positive measure ρ^{k/2} |w(√ρ)| dρ,
    // accumulated in the radial variable: x = r², weight = |w(r)| r^{k+1} · 2 dr.
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for pair in segments.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let h = (b - a) / sub as f64;
        for p in 0..sub {
            let left = a + p as f64 * h;
            for (x, w) in glx.iter().zip(&glw) {
                let r = left + 0.5 * h * (x + 1.0);
                let density = profile.value(r, radius).abs() * r.powi(k as i32 + 1) * 2.0;
                xs.push(r * r);
                ws.push(0.5 * h * w * density);
            }
        }
    }

    let mass: f64 = ws.iter().sum();
    if mass <= 0.0 {
        return Err(Error::EmptyMeasure {
            k,
            ell: idx.ell(),
        });
    }

    let points = xs.len();
    let mut q_prev = vec![0.0; points];
    let mut q = vec![1.0 / mass.sqrt(); points];
    let mut diag = Vec::with_capacity(n);
    let mut off_diag = Vec::with_capacity(n.saturating_sub(1));
    let mut sqrt_beta = 0.0;
    for j in 0..n {
        let alpha: f64 = (0..points).map(|i| ws[i] * xs[i] * q[i] * q[i]).sum();
        diag.push(alpha);
        if j + 1 == n {
            break;
        }
        let mut next = vec![0.0; points];
        for i in 0..points {
            next[i] = (xs[i] - alpha) * q[i] - sqrt_beta * q_prev[i];
        }
        let beta: f64 = (0..points).map(|i| ws[i] * next[i] * next[i]).sum();
        if beta <= 0.0 {
            return Err(Error::EigenFailure);
        }
        sqrt_beta = beta.sqrt();
        for v in &mut next {
            *v /= sqrt_beta;
        }
        off_diag.push(sqrt_beta);
        q_prev = q;
        q = next;
    }
    Ok(Recurrence {
        diag,
        off_diag,
        mass,
    })
}

/// Golub-Welsch: eigenvalues of the symmetric tridiagonal recurrence matrix
/// are the nodes; the squared first eigenvector components, scaled by the
/// measure's mass, are the weights.
fn golub_welsch(recurrence: &Recurrence) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = recurrence.diag.len();
    if n == 1 {
        return Ok((vec![recurrence.diag[0]], vec![recurrence.mass]));
    }
    let mut jacobi = DMatrix::zeros(n, n);
    for (j, &a) in recurrence.diag.iter().enumerate() {
        jacobi[(j, j)] = a;
    }
    for (j, &b) in recurrence.off_diag.iter().enumerate() {
        jacobi[(j, j + 1)] = b;
        jacobi[(j + 1, j)] = b;
    }
    let eigen = jacobi
        .try_symmetric_eigen(f64::EPSILON, 100_000)
        .ok_or(Error::EigenFailure)?;
    let mut pairs: Vec<(f64, f64)> = eigen
        .eigenvalues
        .iter()
        .copied()
        .zip(eigen.eigenvectors.row(0).iter().map(|v| v * v))
        .collect();
    pairs.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    let nodes = pairs.iter().map(|p| p.0).collect();
    let weights = pairs.iter().map(|p| p.1 * recurrence.mass).collect();
    Ok((nodes, weights))
}

/// Gauss-Legendre nodes and weights on `[−1, 1]`, by Newton iteration on
/// the Legendre recurrence. Used for the composite discretizations here and
/// for the high-resolution reference integrator in [`crate::bench`].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    if n == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let j = j as f64;
        let p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    let derivative = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, derivative)
}

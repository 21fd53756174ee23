//! Not-a-knot cubic splines on the radial knots, including the cardinal
//! basis used to flatten the hybrid cubature into a plain weight table.

use crate::error::{Error, Result};

/// Radial knots `0 = R₀ < R₁ < … < R_{N₁} = R`.
///
/// At least five intervals are required; the spline error bound behind the
/// hybrid rule assumes it, so shorter knot vectors are rejected outright.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialKnots {
    values: Vec<f64>,
}

impl RadialKnots {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 6 {
            return Err(Error::InvalidKnots(format!(
                "need N1 >= 5 intervals, got {}",
                values.len().saturating_sub(1)
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidKnots(format!(
                "first knot must be exactly 0, got {}",
                values[0]
            )));
        }
        if !values.windows(2).all(|p| p[0] < p[1]) {
            return Err(Error::InvalidKnots("knots must be strictly increasing".into()));
        }
        let last = *values.last().expect("nonempty");
        if !last.is_finite() || last <= 0.0 {
            return Err(Error::InvalidKnots(format!("last knot {last} must be positive")));
        }
        Ok(Self { values })
    }

    /// Uniform knots `R_j = R·j/N₁`.
    pub fn uniform(radius: f64, n1: usize) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidRadius(radius));
        }
        let values = (0..=n1).map(|j| radius * j as f64 / n1 as f64).collect();
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Interval count `N₁`.
    pub fn interval_count(&self) -> usize {
        self.values.len() - 1
    }

    pub fn radius(&self) -> f64 {
        *self.values.last().expect("nonempty")
    }

    /// `h = max_i (R_{i+1} − R_i)`.
    pub fn max_spacing(&self) -> f64 {
        self.values
            .windows(2)
            .map(|p| p[1] - p[0])
            .fold(0.0, f64::max)
    }
}

/// A C² piecewise cubic with not-a-knot end conditions (the third
/// derivative is continuous across the first and last interior knots).
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    // per-interval coefficients of y = c0 + c1 u + c2 u² + c3 u³, u = r − R_j
    coeffs: Vec<[f64; 4]>,
}

impl CubicSpline {
    /// Interpolates `data` at the knots under not-a-knot conditions.
    ///
    /// The second derivatives solve the standard tridiagonal system with the
    /// two corner rows eliminated through the not-a-knot relations, so the
    /// reduced solve is a plain Thomas sweep.
    pub fn not_a_knot(knots: &RadialKnots, data: &[f64]) -> Result<Self> {
        Self::on_points(knots.values(), data)
    }

    /// Same construction on a bare strictly-increasing knot slice. The
    /// ring-only cubature assembly splines over `R₁..R_{N₁}` without the
    /// center knot, which is not a valid [`RadialKnots`] vector.
    pub(crate) fn on_points(x: &[f64], data: &[f64]) -> Result<Self> {
        let n = x.len() - 1;
        if n < 3 {
            return Err(Error::InvalidKnots(format!(
                "not-a-knot interpolation needs at least 3 intervals, got {n}"
            )));
        }
        if !x.windows(2).all(|p| p[0] < p[1]) {
            return Err(Error::InvalidKnots("knots must be strictly increasing".into()));
        }
        if data.len() != n + 1 {
            return Err(Error::SplineDataMismatch {
                expected: n + 1,
                got: data.len(),
            });
        }
        let h: Vec<f64> = x.windows(2).map(|p| p[1] - p[0]).collect();
        let slope: Vec<f64> = (0..n).map(|j| (data[j + 1] - data[j]) / h[j]).collect();

        // Reduced system for the interior second derivatives M₁..M_{n−1}.
        // Interior row j: (h_{j−1}/6) M_{j−1} + ((h_{j−1}+h_j)/3) M_j + (h_j/6) M_{j+1}
        //               = slope_j − slope_{j−1},
        // with M₀ = (1+r₀)M₁ − r₀M₂ and M_n = (1+rₙ)M_{n−1} − rₙM_{n−2}
        // substituted into the first and last rows (r₀ = h₀/h₁, rₙ = h_{n−1}/h_{n−2}).
        let size = n - 1;
        let mut lower = vec![0.0; size];
        let mut diag = vec![0.0; size];
        let mut upper = vec![0.0; size];
        let mut rhs = vec![0.0; size];
        for j in 1..n {
            let i = j - 1;
            lower[i] = h[j - 1] / 6.0;
            diag[i] = (h[j - 1] + h[j]) / 3.0;
            upper[i] = h[j] / 6.0;
            rhs[i] = slope[j] - slope[j - 1];
        }
        let r0 = h[0] / h[1];
        diag[0] += lower[0] * (1.0 + r0);
        upper[0] -= lower[0] * r0;
        lower[0] = 0.0;
        let rn = h[n - 1] / h[n - 2];
        diag[size - 1] += upper[size - 1] * (1.0 + rn);
        lower[size - 1] -= upper[size - 1] * rn;
        upper[size - 1] = 0.0;

        let interior = solve_tridiagonal(&lower, &mut diag, &upper, &mut rhs)?;

        let mut second = vec![0.0; n + 1];
        second[1..n].copy_from_slice(&interior);
        second[0] = (1.0 + r0) * second[1] - r0 * second[2];
        second[n] = (1.0 + rn) * second[n - 1] - rn * second[n - 2];

        let coeffs = (0..n)
            .map(|j| {
                let b = slope[j] - h[j] * (2.0 * second[j] + second[j + 1]) / 6.0;
                [
                    data[j],
                    b,
                    second[j] / 2.0,
                    (second[j + 1] - second[j]) / (6.0 * h[j]),
                ]
            })
            .collect();
        Ok(Self { x: x.to_vec(), coeffs })
    }

    /// Knot abscissas.
    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    /// Spline value at `r` inside the knot range.
    ///
    /// Values within `1e−14·max(1, R)` outside the ends are clamped to the
    /// end; this absorbs `√(t)` landing a rounding step past `R` when a
    /// Gauss node sits at the boundary of `[0, R²]`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        let lo = self.x[0];
        let hi = *self.x.last().expect("nonempty");
        let eps = 1e-14 * hi.abs().max(1.0);
        let r = if r < lo && r >= lo - eps {
            lo
        } else if r > hi && r <= hi + eps {
            hi
        } else {
            r
        };
        if !(lo..=hi).contains(&r) {
            return Err(Error::OutOfDomain(r, hi));
        }
        Ok(self.eval_extrapolated(r))
    }

    /// Piecewise evaluation with the piece index clamped to the ends, so
    /// values outside the knot range continue the first or last cubic. The
    /// ring-only cubature assembly uses this to reach radii below `R₁`.
    pub(crate) fn eval_extrapolated(&self, r: f64) -> f64 {
        let j = self
            .x
            .partition_point(|&knot| knot <= r)
            .clamp(1, self.x.len() - 1)
            - 1;
        let u = r - self.x[j];
        let [c0, c1, c2, c3] = self.coeffs[j];
        c0 + u * (c1 + u * (c2 + u * c3))
    }
}

/// Cardinal not-a-knot splines `S_m`, `m = 0..=N₁`, with `S_m(R_s) = δ_{m,s}`.
///
/// Any interpolant then flattens as `SPL[V](r) = Σ_m S_m(r) V_m`, which is
/// what turns the hybrid cubature into a single weight per grid node.
pub fn cardinal_basis(knots: &RadialKnots) -> Result<Vec<CubicSpline>> {
    cardinal_basis_on(knots.values())
}

/// Cardinal splines over a bare knot slice; see [`CubicSpline::on_points`].
pub(crate) fn cardinal_basis_on(x: &[f64]) -> Result<Vec<CubicSpline>> {
    let count = x.len();
    let mut data = vec![0.0; count];
    let mut basis = Vec::with_capacity(count);
    for m in 0..count {
        data[m] = 1.0;
        basis.push(CubicSpline::on_points(x, &data)?);
        data[m] = 0.0;
    }
    Ok(basis)
}

/// Thomas sweep; `diag` and `rhs` are consumed as scratch.
fn solve_tridiagonal(
    lower: &[f64],
    diag: &mut [f64],
    upper: &[f64],
    rhs: &mut [f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    for i in 1..n {
        if diag[i - 1] == 0.0 {
            return Err(Error::InvalidKnots("singular spline system".into()));
        }
        let factor = lower[i] / diag[i - 1];
        diag[i] -= factor * upper[i - 1];
        rhs[i] -= factor * rhs[i - 1];
    }
    if diag[n - 1] == 0.0 {
        return Err(Error::InvalidKnots("singular spline system".into()));
    }
    let mut out = vec![0.0; n];
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for i in (0..n - 1).rev() {
        out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
    }
    Ok(out)
}

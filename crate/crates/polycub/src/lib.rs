//! Weighted cubature on the planar disc via circular harmonics.
//!
//! The integrals handled here have the form
//!
//! ```text
//! I_w(f) = ∫_{D_R} f(x, y) w(x, y) dx dy
//! ```
//!
//! where the weight `w` is known through the radial coefficients of its
//! circular-harmonic expansion and each coefficient keeps one sign on
//! `[0, R]`. Splitting the integral harmonic by harmonic reduces it to
//! one-dimensional integrals against the measures `ρ^{k/2} w_{(k,ℓ)}(√ρ) dρ`
//! on `[0, R²]`, each of which gets its own Gaussian rule. Two cubatures are
//! built on top of that reduction:
//!
//! * a *discrete* rule that samples the integrand on rings through the Gauss
//!   radii and recovers the harmonic coefficients with an equispaced DFT
//!   ([`cubature::integrate_dpc`]), and
//! * a *hybrid* rule that instead samples on `N₁` concentric circles and
//!   transports the ring data to the Gauss radii with not-a-knot cubic
//!   splines, which flattens into an ordinary node/weight table on the polar
//!   grid ([`cubature::CubatureRule`]).
//!
//! The hybrid rule costs `N₁·M + 1` point evaluations and comes with an
//! a-priori error bound driven by the spline mesh width
//! ([`cubature::hybrid_error_bound`]).
//!
//! The `polycub` binary exposes rule export, integration from sample files,
//! and the benchmark tables for the two built-in weights.

pub mod bench;
pub mod cubature;
pub mod error;
pub mod gauss;
pub mod harmonics;
pub mod io;
pub mod spline;
pub mod weight;

pub use cubature::{CubatureRule, SampleGrid};
pub use error::{Error, Result};
pub use gauss::GaussRadialRule;
pub use harmonics::{AngularGrid, HarmonicIndex};
pub use spline::{CubicSpline, RadialKnots};
pub use weight::{BuiltinWeight, RadialProfile, WeightFourier};

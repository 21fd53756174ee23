//! C ABI for the polycub disc-cubature library.
//!
//! Handles are opaque pointers created and released by `pc_*` calls; every
//! fallible function returns a [`PcStatus`] and writes its result through
//! an out pointer. The generated header lives at `include/polycub.h`.
//!
//! Typical use from C:
//!
//! ```c
//! PcWeight *w = NULL;
//! PcRule *rule = NULL;
//! pc_weight_builtin("w1", 1.0, 1, &w);
//! pc_rule_build(w, 50, 25, 1, 50, false, &rule);
//! /* sample f on the rule's nodes, then */
//! double value;
//! pc_rule_integrate(rule, samples, n1 * m, f0, &value);
//! pc_rule_free(rule);
//! pc_weight_free(w);
//! ```

use std::ffi::{c_char, CStr};
use std::str::FromStr;

use polycub::cubature::{CenterPolicy, CubatureRule, SampleGrid};
use polycub::io::{write_rule_csv, write_rule_json, LoadedRule};
use polycub::spline::RadialKnots;
use polycub::weight::{BuiltinWeight, WeightFourier};
use polycub::Error;

/// Result of every fallible `pc_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Parameters violate a precondition (bad weight id, even M, ...).
    InvalidArgument = 2,
    /// A numerical procedure failed to converge.
    Numerical = 3,
    /// Malformed weight JSON or rule/sample file contents.
    Parse = 4,
    /// Filesystem error.
    Io = 5,
}

fn status_of(err: &Error) -> PcStatus {
    match err {
        Error::Io(_) => PcStatus::Io,
        Error::Json(_)
        | Error::ParseError { .. }
        | Error::BadRuleFile { .. }
        | Error::BadSamplesFile { .. } => PcStatus::Parse,
        Error::EigenFailure | Error::DivergentMoment { .. } => PcStatus::Numerical,
        _ => PcStatus::InvalidArgument,
    }
}

/// Opaque weight handle.
pub struct PcWeight {
    inner: WeightFourier,
}

/// Opaque cubature-rule handle.
pub struct PcRule {
    inner: CubatureRule,
}

/// Static name of a status code, for diagnostics.
#[no_mangle]
pub extern "C" fn pc_status_name(status: PcStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        PcStatus::Ok => b"ok\0",
        PcStatus::NullArgument => b"null argument\0",
        PcStatus::InvalidArgument => b"invalid argument\0",
        PcStatus::Numerical => b"numerical failure\0",
        PcStatus::Parse => b"parse error\0",
        PcStatus::Io => b"io error\0",
    };
    name.as_ptr().cast()
}

/// Builds a built-in weight (`"w1"` or `"w2"`) on the disc of radius
/// `radius`, truncated at harmonic degree `k_trunc`.
///
/// # Safety
/// `id` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns the weight until [`pc_weight_free`].
#[no_mangle]
pub unsafe extern "C" fn pc_weight_builtin(
    id: *const c_char,
    radius: f64,
    k_trunc: u32,
    out: *mut *mut PcWeight,
) -> PcStatus {
    if id.is_null() || out.is_null() {
        return PcStatus::NullArgument;
    }
    let Ok(id) = CStr::from_ptr(id).to_str() else {
        return PcStatus::InvalidArgument;
    };
    let Ok(id) = BuiltinWeight::from_str(id) else {
        return PcStatus::InvalidArgument;
    };
    match WeightFourier::builtin(id, radius, k_trunc) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(PcWeight { inner }));
            PcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Parses a weight description from JSON text (the same schema the CLI
/// accepts for `--weight <file>`).
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pc_weight_from_json(
    json: *const c_char,
    out: *mut *mut PcWeight,
) -> PcStatus {
    if json.is_null() || out.is_null() {
        return PcStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return PcStatus::InvalidArgument;
    };
    match WeightFourier::from_json(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(PcWeight { inner }));
            PcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Weight norm `‖w‖ = Σ ∫ |w_(k,ℓ)| r dr`.
///
/// # Safety
/// `weight` must come from a `pc_weight_*` constructor; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pc_weight_norm(weight: *const PcWeight, out: *mut f64) -> PcStatus {
    if weight.is_null() || out.is_null() {
        return PcStatus::NullArgument;
    }
    *out = (*weight).inner.norm();
    PcStatus::Ok
}

/// Releases a weight handle. Null is ignored.
///
/// # Safety
/// `weight` must be null or a pointer obtained from a `pc_weight_*`
/// constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_weight_free(weight: *mut PcWeight) {
    if !weight.is_null() {
        drop(Box::from_raw(weight));
    }
}

/// Builds the hybrid cubature rule with `n`-point radial rules, an odd
/// `m`-point angular grid, harmonic truncation `k`, and `n1` uniform
/// sampling circles. `center_node` selects the center policy: `false` is
/// the table-reproducing default (center weight 0), `true` folds the
/// center knot into a node that weights `f(0)`.
///
/// # Safety
/// `weight` must be a live weight handle; `out` must be valid. On success
/// `*out` owns the rule until [`pc_rule_free`].
#[no_mangle]
pub unsafe extern "C" fn pc_rule_build(
    weight: *const PcWeight,
    n: u32,
    m: u32,
    k: u32,
    n1: u32,
    center_node: bool,
    out: *mut *mut PcRule,
) -> PcStatus {
    if weight.is_null() || out.is_null() {
        return PcStatus::NullArgument;
    }
    let weight = &(*weight).inner;
    let policy = if center_node {
        CenterPolicy::CenterNode
    } else {
        CenterPolicy::Extrapolate
    };
    let build = RadialKnots::uniform(weight.radius(), n1 as usize).and_then(|knots| {
        CubatureRule::assemble_with_policy(weight, n as usize, m as usize, k, knots, policy)
    });
    match build {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(PcRule { inner }));
            PcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Number of sampling circles `N₁`; 0 when `rule` is null.
///
/// # Safety
/// `rule` must be null or a live rule handle.
#[no_mangle]
pub unsafe extern "C" fn pc_rule_ring_count(rule: *const PcRule) -> u32 {
    if rule.is_null() {
        0
    } else {
        (*rule).inner.ring_count() as u32
    }
}

/// Angular grid size `M`; 0 when `rule` is null.
///
/// # Safety
/// `rule` must be null or a live rule handle.
#[no_mangle]
pub unsafe extern "C" fn pc_rule_angle_count(rule: *const PcRule) -> u32 {
    if rule.is_null() {
        0
    } else {
        (*rule).inner.angle_count() as u32
    }
}

/// Copies the `N₁·M` node weights into `buffer`, row-major over `(m, s)`.
/// `len` must be exactly `N₁·M`.
///
/// # Safety
/// `rule` must be a live rule handle; `buffer` must point to `len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pc_rule_weights(
    rule: *const PcRule,
    buffer: *mut f64,
    len: usize,
) -> PcStatus {
    if rule.is_null() || buffer.is_null() {
        return PcStatus::NullArgument;
    }
    let weights = (*rule).inner.weights();
    if len != weights.len() {
        return PcStatus::InvalidArgument;
    }
    std::ptr::copy_nonoverlapping(weights.as_ptr(), buffer, len);
    PcStatus::Ok
}

/// Weight attached to the single center evaluation `f(0)` (zero under the
/// default policy).
///
/// # Safety
/// `rule` must be a live rule handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pc_rule_center_weight(rule: *const PcRule, out: *mut f64) -> PcStatus {
    if rule.is_null() || out.is_null() {
        return PcStatus::NullArgument;
    }
    *out = (*rule).inner.center_weight();
    PcStatus::Ok
}

/// Cartesian position and weight of the 1-based grid node `(ring, angle)`.
///
/// # Safety
/// `rule` must be a live rule handle; the three out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pc_rule_node(
    rule: *const PcRule,
    ring: u32,
    angle: u32,
    out_x: *mut f64,
    out_y: *mut f64,
    out_weight: *mut f64,
) -> PcStatus {
    if rule.is_null() || out_x.is_null() || out_y.is_null() || out_weight.is_null() {
        return PcStatus::NullArgument;
    }
    let inner = &(*rule).inner;
    let (ring, angle) = (ring as usize, angle as usize);
    if ring == 0 || ring > inner.ring_count() || angle == 0 || angle > inner.angle_count() {
        return PcStatus::InvalidArgument;
    }
    let r = inner.knots().values()[ring];
    let phi = inner.grid().angle(angle);
    *out_x = r * phi.cos();
    *out_y = r * phi.sin();
    *out_weight = inner.weight(ring, angle);
    PcStatus::Ok
}

/// Applies the rule to integrand samples laid out row-major over `(m, s)`
/// (`len == N₁·M`), plus the center value `f(0)`.
///
/// # Safety
/// `rule` must be a live rule handle; `samples` must point to `len`
/// readable doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pc_rule_integrate(
    rule: *const PcRule,
    samples: *const f64,
    len: usize,
    center_value: f64,
    out: *mut f64,
) -> PcStatus {
    if rule.is_null() || samples.is_null() || out.is_null() {
        return PcStatus::NullArgument;
    }
    let inner = &(*rule).inner;
    if len != inner.ring_count() * inner.angle_count() {
        return PcStatus::InvalidArgument;
    }
    let values = std::slice::from_raw_parts(samples, len).to_vec();
    let grid = match SampleGrid::new(inner.ring_count(), inner.angle_count(), values, center_value)
    {
        Ok(grid) => grid,
        Err(e) => return status_of(&e),
    };
    match inner.integrate(&grid) {
        Ok(value) => {
            *out = value;
            PcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the rule to `path` as CSV (`format = 0`) or JSON (`format = 1`),
/// in the same layouts the CLI emits.
///
/// # Safety
/// `rule` must be a live rule handle; `path` must be a valid
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pc_rule_save(
    rule: *const PcRule,
    path: *const c_char,
    format: u32,
) -> PcStatus {
    if rule.is_null() || path.is_null() {
        return PcStatus::NullArgument;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return PcStatus::InvalidArgument;
    };
    let inner = &(*rule).inner;
    let result = match format {
        0 => write_rule_csv(&LoadedRule::from(inner), path),
        1 => write_rule_json(inner, path),
        _ => return PcStatus::InvalidArgument,
    };
    match result {
        Ok(()) => PcStatus::Ok,
        Err(e) => status_of(&e),
    }
}

/// Releases a rule handle. Null is ignored.
///
/// # Safety
/// `rule` must be null or a pointer obtained from [`pc_rule_build`], not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_rule_free(rule: *mut PcRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

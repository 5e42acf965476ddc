//! Hybrid absolute/relative comparisons.

use num_complex::Complex64;

/// Default absolute floor.
pub const ATOL: f64 = 1e-12;
/// Default relative tolerance.
pub const RTOL: f64 = 1e-9;

/// `|x − y| ≤ atol + rtol·max(|x|, |y|)`.
pub fn close(x: f64, y: f64, atol: f64, rtol: f64) -> bool {
    (x - y).abs() <= atol + rtol * x.abs().max(y.abs())
}

pub fn close_c(x: Complex64, y: Complex64, atol: f64, rtol: f64) -> bool {
    (x - y).norm() <= atol + rtol * x.norm().max(y.norm())
}

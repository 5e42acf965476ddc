//! Deformed uncertainty relation `Δx·ΔP = (ħ/2)(1 + 3β(ΔP)²)` and the
//! static dispersion `E = P²/2m`.

use crate::error::{GupError, Result};
use crate::params::GupParams;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Position spread saturating the deformed relation at momentum spread `ΔP`.
pub fn uncertainty_product(delta_p: f64, params: &GupParams) -> Result<f64> {
    if !(delta_p.is_finite() && delta_p > 0.0) {
        return Err(GupError::domain(format!("momentum spread must be > 0, got {delta_p}")));
    }
    Ok(0.5 * params.hbar() * (1.0 / delta_p + 3.0 * params.beta() * delta_p))
}

/// `√(3β)·ħ`.
pub fn minimal_length(params: &GupParams) -> f64 {
    (3.0 * params.beta()).sqrt() * params.hbar()
}

/// Numerical minimum of [`uncertainty_product`] over `ΔP ∈ (0, ∞)`.
///
/// Brackets the minimum by doubling outward from `ΔP = 1`, then runs golden
/// section search in `ln ΔP`. Returns `(argmin ΔP, min Δx)`.
pub fn numeric_minimal_length(params: &GupParams) -> (f64, f64) {
    let f = |t: f64| 0.5 * params.hbar() * ((-t).exp() + 3.0 * params.beta() * t.exp());

    let mut lo = -1.0;
    let mut hi = 1.0;
    while f(lo) < f(0.5 * (lo + hi)) {
        lo -= 2.0 * (hi - lo);
    }
    while f(hi) < f(0.5 * (lo + hi)) {
        hi += 2.0 * (hi - lo);
    }

    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > 1e-13 * (1.0 + lo.abs().max(hi.abs())) {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let t = 0.5 * (lo + hi);
    (t.exp(), f(t))
}

/// `P²/2m`.
pub fn dispersion(p: f64, mass: f64) -> Result<f64> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(GupError::domain(format!("mass must be > 0, got {mass}")));
    }
    Ok(p * p / (2.0 * mass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::forward_map;
    use num_complex::Complex64;

    #[test]
    fn direct_substitution() {
        let p = GupParams::with_beta(0.1).unwrap();
        assert!((uncertainty_product(1.0, &p).unwrap() - 0.65).abs() < 1e-15);
        let p = GupParams::with_beta(1.0 / 3.0).unwrap();
        assert!((uncertainty_product(1.0, &p).unwrap() - 1.0).abs() < 1e-15);
        assert!((minimal_length(&p) - 1.0).abs() < 1e-15);
        assert!((minimal_length(&GupParams::with_beta(3.0).unwrap()) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn non_positive_spread_rejected() {
        let p = GupParams::with_beta(0.1).unwrap();
        assert!(uncertainty_product(0.0, &p).is_err());
        assert!(uncertainty_product(-1.0, &p).is_err());
    }

    #[test]
    fn golden_section_finds_the_floor() {
        let p = GupParams::with_beta(0.02).unwrap();
        let (arg, min) = numeric_minimal_length(&p);
        assert!((min - 0.06f64.sqrt()).abs() < 1e-12);
        assert!((arg - 1.0 / 0.06f64.sqrt()).abs() < 1e-5);
    }

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion(2.0, 1.0).unwrap(), 2.0);
        assert_eq!(dispersion(0.0, 5.0).unwrap(), 0.0);
        let big_p = forward_map(Complex64::new(1.0, 0.0), &GupParams::with_beta(0.1).unwrap())
            .unwrap()
            .re;
        assert!((dispersion(big_p, 0.5).unwrap() - 1.21).abs() < 1e-12);
        assert!(dispersion(1.0, 0.0).is_err());
    }
}

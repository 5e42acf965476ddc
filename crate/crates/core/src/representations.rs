//! Position and momentum representations of a generalized-momentum
//! eigenstate `|P⟩ = Σ αₖ |p = pₖ⟩` over the root triple of `P`.
//!
//! The two complex roots give plane waves whose modulus grows or decays as
//! `exp(−Im(pₖ)·x/ħ)`. They are evaluated as they are, and any exponent beyond
//! ±700 is reported as a [`GupError::Range`] instead of overflowing.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};
use crate::params::GupParams;
use crate::roots::RootTriple;

/// Largest `|Im(p)·x/ħ|` accepted by [`plane_wave`].
pub const MAX_EXPONENT: f64 = 700.0;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Expansion amplitudes over the three branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector(pub [Complex64; 3]);

impl CoefficientVector {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self([c1, c2, c3])
    }

    pub fn real(c1: f64, c2: f64, c3: f64) -> Self {
        Self([c1.into(), c2.into(), c3.into()])
    }

    /// `(1/√3, 1/√3, 1/√3)`.
    pub fn uniform() -> Self {
        let c = 1.0 / 3f64.sqrt();
        Self::real(c, c, c)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn get(&self, k: usize) -> Complex64 {
        self.0[k]
    }

    /// Multiply every entry by a unit phase `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = Complex64::from_polar(1.0, theta);
        Self(self.0.map(|c| c * phase))
    }
}

/// Result of [`validate_coefficients`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalized {
    pub coeffs: CoefficientVector,
    /// Factor the input was multiplied by.
    pub scale: f64,
}

/// Rescale so that `Σ|cₖ|² = 1`.
///
/// Inputs already normalized to within a few ulps are returned untouched
/// with `scale = 1`, which makes the operation exactly idempotent.
pub fn validate_coefficients(coeffs: &CoefficientVector) -> Result<Normalized> {
    if coeffs.0.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(GupError::domain("coefficients must be finite"));
    }
    let largest = coeffs.0.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if largest == 0.0 {
        return Err(GupError::Degenerate("all expansion coefficients are zero".into()));
    }
    let norm_sqr = coeffs.norm_sqr();
    if (norm_sqr - 1.0).abs() <= 4.0 * f64::EPSILON {
        return Ok(Normalized { coeffs: *coeffs, scale: 1.0 });
    }
    // Pre-scale by the largest modulus so the sum of squares cannot overflow.
    let pre: [Complex64; 3] = coeffs.0.map(|c| c / largest);
    let norm = pre.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let scale = 1.0 / (largest * norm);
    Ok(Normalized {
        coeffs: CoefficientVector(pre.map(|c| c / norm)),
        scale,
    })
}

/// Roots, amplitudes and `ħ` defining `⟨x|P⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionSpec {
    pub roots: RootTriple,
    pub coeffs: CoefficientVector,
    pub hbar: f64,
}

impl EigenfunctionSpec {
    pub fn new(roots: RootTriple, coeffs: CoefficientVector, hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(GupError::domain(format!("hbar must be > 0, got {hbar}")));
        }
        Ok(Self { roots, coeffs, hbar })
    }
}

/// `⟨x|p⟩ = exp(ipx/ħ)/√(2πħ)` for possibly complex `p`.
pub fn plane_wave(x: f64, p: Complex64, hbar: f64) -> Result<Complex64> {
    if !(x.is_finite() && p.re.is_finite() && p.im.is_finite() && hbar.is_finite() && hbar > 0.0) {
        return Err(GupError::domain("plane wave inputs must be finite with hbar > 0"));
    }
    let growth = -p.im * x / hbar;
    if growth.abs() > MAX_EXPONENT {
        return Err(GupError::Range(format!(
            "plane wave exponent {growth:.3e} exceeds ±{MAX_EXPONENT}"
        )));
    }
    let phase = p.re * x / hbar;
    let norm = 1.0 / (2.0 * std::f64::consts::PI * hbar).sqrt();
    Ok(Complex64::from_polar(growth.exp() * norm, phase))
}

/// `⟨x|P⟩ = (2πħ)^{-1/2} Σ cₖ exp(i pₖ x/ħ)`.
pub fn eigenfunction(x: f64, spec: &EigenfunctionSpec) -> Result<Complex64> {
    let mut psi = Complex64::new(0.0, 0.0);
    for (c, p) in spec.coeffs.0.iter().zip(spec.roots.as_array()) {
        psi += c * plane_wave(x, p, spec.hbar)?;
    }
    Ok(psi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "step")]
pub enum ResidualMode {
    Analytic,
    /// Second-order central stencils with step `h`.
    FiniteDifference(f64),
}

/// `|−iħψ′ + iβħ³ψ‴ − Pψ|` at `x`.
pub fn ode_residual(spec: &EigenfunctionSpec, p: f64, x: f64, beta: f64, mode: ResidualMode) -> Result<f64> {
    let hbar = spec.hbar;
    match mode {
        ResidualMode::Analytic => {
            let mut total = Complex64::new(0.0, 0.0);
            for (c, root) in spec.coeffs.0.iter().zip(spec.roots.as_array()) {
                let term = c * plane_wave(x, root, hbar)?;
                let d1 = I * root / hbar;
                let d3 = d1 * d1 * d1;
                total += (-I * hbar * d1 + I * beta * hbar.powi(3) * d3 - p) * term;
            }
            Ok(total.norm())
        }
        ResidualMode::FiniteDifference(h) => {
            if !(h.is_finite() && h > 0.0) {
                return Err(GupError::domain(format!("stencil step must be > 0, got {h}")));
            }
            let f = |k: f64| eigenfunction(x + k * h, spec);
            let (m2, m1, c0, p1, p2) = (f(-2.0)?, f(-1.0)?, f(0.0)?, f(1.0)?, f(2.0)?);
            let d1 = (p1 - m1) / (2.0 * h);
            let d3 = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
            Ok((-I * hbar * d1 + I * beta * hbar.powi(3) * d3 - p * c0).norm())
        }
    }
}

/// `|−iħ∂ₓ φ − p·φ|` for a single plane wave `φ = exp(ipx/ħ)`: the term is
/// an eigenfunction of the canonical momentum with eigenvalue `p`.
pub fn canonical_term_residual(p: Complex64, x: f64, hbar: f64) -> Result<f64> {
    let phi = plane_wave(x, p, hbar)?;
    let derivative = I * p / hbar * phi;
    Ok((-I * hbar * derivative - p * phi).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombTerm {
    pub amplitude: Complex64,
    /// `Re(pₖ)`, where the regularized delta sits on the real axis.
    pub center: f64,
    /// `Im(pₖ)`, dropped by the real-axis regularization.
    pub imag_offset: f64,
}

/// Gaussian-regularized `⟨p|P⟩ = Σ cₖ δ(p − pₖ)`, kept term by term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombValue {
    pub terms: [CombTerm; 3],
}

impl CombValue {
    pub fn total(&self) -> Complex64 {
        self.terms.iter().map(|t| t.amplitude).sum()
    }

    /// `Σₖ |termₖ|²`, the branch-resolved density.
    pub fn branch_density(&self) -> f64 {
        self.terms.iter().map(|t| t.amplitude.norm_sqr()).sum()
    }
}

/// Evaluate the regularized comb at `p_query` using unit-mass Gaussians of
/// standard deviation `width`.
///
/// The conjugate pair shares the real part `−p₁/2`, so branches 2 and 3 always
/// land on the same center; [`CombValue::terms`] keeps them apart.
pub fn momentum_comb(p_query: f64, spec: &EigenfunctionSpec, width: f64) -> Result<CombValue> {
    if !(width.is_finite() && width > 0.0) {
        return Err(GupError::domain(format!("comb width must be > 0, got {width}")));
    }
    let norm = 1.0 / (width * (2.0 * std::f64::consts::PI).sqrt());
    let roots = spec.roots.as_array();
    let terms = std::array::from_fn(|k| {
        let d = (p_query - roots[k].re) / width;
        CombTerm {
            amplitude: spec.coeffs.0[k] * (norm * (-0.5 * d * d).exp()),
            center: roots[k].re,
            imag_offset: roots[k].im,
        }
    });
    Ok(CombValue { terms })
}

/// Identity-resolution weight `1/(1 + βP²)`; `∫ dP/(1+βP²) = π/√β`.
///
/// This weight carries `β`, while the commutator `[x, P] = iħ(1 + 3βP²)`
/// behind [`crate::uncertainty_product`] carries `3β`. Both are implemented
/// as stated; they are not reconciled here.
pub fn measure_weight(p: f64, params: &GupParams) -> f64 {
    1.0 / (1.0 + params.beta() * p * p)
}

use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};

/// Deformation strength and unit scale shared by every operation.
///
/// `beta` carries units of inverse momentum squared. With the Planck length
/// set to one, the minimal length `√(3β)ħ` equals `√β₀`, so `β₀ = 3βħ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GupParams {
    beta: f64,
    hbar: f64,
}

impl GupParams {
    pub fn new(beta: f64, hbar: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(GupError::domain(format!("beta must be finite and > 0, got {beta}")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(GupError::domain(format!("hbar must be finite and > 0, got {hbar}")));
        }
        Ok(Self { beta, hbar })
    }

    /// `ħ = 1` units.
    pub fn with_beta(beta: f64) -> Result<Self> {
        Self::new(beta, 1.0)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Planck-unit deformation parameter, `l_p = 1`.
    pub fn beta0(&self) -> f64 {
        3.0 * self.beta * self.hbar * self.hbar
    }
}

//! Two-particle state with zero total generalized momentum,
//! `Σᵢ αᵢγᵢ |pᵢ, −pᵢ⟩` up to normalization, and its entanglement content.
//!
//! The three branches `|pᵢ⟩` are treated as an orthonormal three-level basis
//! for each particle, including the two complex labels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};
use crate::params::GupParams;
use crate::representations::{validate_coefficients, CoefficientVector};
use crate::roots::{cardano_roots, negate_spectrum, RootTriple};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoParticleState {
    /// Triple of the first particle's generalized momentum `P`.
    pub roots: RootTriple,
    pub alpha: CoefficientVector,
    pub gamma: CoefficientVector,
    /// `cᵢ = αᵢγᵢ / N`.
    pub c: [Complex64; 3],
    /// `N = √Σ|αᵢγᵢ|²`.
    pub norm_constant: f64,
    /// Momentum of particle 2 paired with branch `i` of particle 1.
    pub partner: [Complex64; 3],
}

impl TwoParticleState {
    /// Born weights `|cᵢ|²`.
    pub fn probabilities(&self) -> [f64; 3] {
        self.c.map(|c| c.norm_sqr())
    }

    /// Coefficient matrix in the product basis `|pᵢ⟩ ⊗ |−pⱼ⟩`.
    ///
    /// Fails if a partner momentum is not one of the negated roots.
    pub fn coefficient_matrix(&self) -> Result<[[Complex64; 3]; 3]> {
        let basis2 = self.roots.as_array().map(|r| -r);
        let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (i, partner) in self.partner.iter().enumerate() {
            let j = basis2
                .iter()
                .position(|b| tolerance::close_c(*b, *partner, tolerance::ATOL, tolerance::RTOL))
                .ok_or_else(|| {
                    GupError::InvariantViolation(format!(
                        "partner momentum {partner} of branch {} is not a root for -P",
                        i + 1
                    ))
                })?;
            m[i][j] += self.c[i];
        }
        Ok(m)
    }
}

/// Build the normalized pair state for generalized momentum `P` of particle 1.
pub fn build_entangled_state(
    p: f64,
    alpha: &CoefficientVector,
    gamma: &CoefficientVector,
    params: &GupParams,
) -> Result<TwoParticleState> {
    let roots = cardano_roots(p, params)?;
    let alpha = validate_coefficients(alpha)?.coeffs;
    let gamma = validate_coefficients(gamma)?.coeffs;
    let products: [Complex64; 3] = std::array::from_fn(|i| alpha.0[i] * gamma.0[i]);
    let largest = products.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if largest == 0.0 {
        return Err(GupError::Degenerate(
            "every product alpha_i * gamma_i vanishes; the pair state does not exist".into(),
        ));
    }
    let norm_constant = products.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let c = products.map(|z| z / norm_constant);
    let partner = [Complex64::new(-roots.p1, 0.0), -roots.p2, -roots.p3];
    Ok(TwoParticleState { roots, alpha, gamma, c, norm_constant, partner })
}

/// Schmidt spectrum and von Neumann entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtData {
    /// Descending.
    pub lambdas: Vec<f64>,
    pub entropy_nats: f64,
    pub entropy_bits: f64,
}

impl SchmidtData {
    fn from_weights(mut lambdas: Vec<f64>) -> Self {
        lambdas.sort_by(|a, b| b.total_cmp(a));
        let entropy_nats = shannon_entropy(&lambdas);
        Self {
            lambdas,
            entropy_nats,
            entropy_bits: entropy_nats / std::f64::consts::LN_2,
        }
    }
}

/// `−Σ pᵢ ln pᵢ` with `0·ln 0 = 0`.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    let s: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    // Adding +0 turns a −0 from the all-mass-on-one-branch case into +0.
    s.max(0.0) + 0.0
}

/// For the diagonal pair state the Schmidt coefficients are `|cᵢ|²`.
pub fn schmidt(state: &TwoParticleState) -> SchmidtData {
    SchmidtData::from_weights(state.probabilities().to_vec())
}

/// `(|+,−⟩ ± |−,+⟩)/√2`: two equal Schmidt weights, one bit of entropy.
pub fn bell_benchmark() -> SchmidtData {
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    SchmidtData::from_weights(vec![amp * amp, amp * amp])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    /// Particle-2 momenta carrying non-zero weight.
    pub particle2_support: Vec<Complex64>,
    /// Particle 2 lives on the negated root triple.
    pub support_is_negated_triple: bool,
    /// Each branch `i` has one partner outcome, `−pᵢ`.
    pub deterministic_partner: bool,
    /// `H(outcome₂ | outcome₁)` in nats.
    pub conditional_entropy_nats: f64,
    /// `I(outcome₁ ; outcome₂)` in nats.
    pub mutual_information_nats: f64,
    /// Per branch, `pᵢ + partnerᵢ = 0` (canonical momentum conservation).
    pub branch_conservation: [bool; 3],
    /// Per branch, `partnerᵢ·(1 + β partnerᵢ²) = −P`.
    pub partner_maps_to_minus_p: [bool; 3],
}

/// Check the correlation structure of the pair state.
pub fn correlation_structure(state: &TwoParticleState) -> Result<CorrelationReport> {
    let m = state.coefficient_matrix()?;
    let joint: [[f64; 3]; 3] = m.map(|row| row.map(|z| z.norm_sqr()));
    for (i, row) in joint.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            if i != j && w > 0.0 {
                return Err(GupError::InvariantViolation(format!(
                    "state has off-diagonal support at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let total: f64 = joint.iter().flatten().sum();
    let marginal2: Vec<f64> = (0..3).map(|j| joint.iter().map(|r| r[j]).sum::<f64>() / total).collect();
    // H(2|1) = Σᵢ p(i)·H(row i), summed row by row so a one-entry row gives exactly 0.
    let conditional: f64 = joint
        .iter()
        .filter_map(|row| {
            let weight: f64 = row.iter().sum();
            (weight > 0.0).then(|| {
                let cond: Vec<f64> = row.iter().map(|w| w / weight).collect();
                weight / total * shannon_entropy(&cond)
            })
        })
        .sum::<f64>()
        + 0.0;
    let h2 = shannon_entropy(&marginal2);

    let beta = state.roots.beta;
    let minus_p = -state.roots.source_p;
    let roots = state.roots.as_array();
    let branch_conservation = std::array::from_fn(|i| (roots[i] + state.partner[i]).norm() == 0.0);
    let partner_maps_to_minus_p = std::array::from_fn(|i| {
        let q = state.partner[i];
        let image = q * (1.0 + beta * q * q);
        (image - minus_p).norm() <= 1e-9 * minus_p.abs().max(1.0)
    });

    let negated = negate_spectrum(&state.roots).as_array();
    let support_is_negated_triple = state
        .partner
        .iter()
        .all(|q| negated.iter().any(|n| tolerance::close_c(*n, *q, tolerance::ATOL, tolerance::RTOL)));
    let particle2_support = (0..3)
        .filter(|&i| state.c[i].norm_sqr() > 0.0)
        .map(|i| state.partner[i])
        .collect();

    Ok(CorrelationReport {
        particle2_support,
        support_is_negated_triple,
        deterministic_partner: conditional == 0.0,
        conditional_entropy_nats: conditional,
        mutual_information_nats: h2 - conditional,
        branch_conservation,
        partner_maps_to_minus_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> GupParams {
        GupParams::with_beta(1.0).unwrap()
    }

    #[test]
    fn single_branch_is_separable() {
        let a = CoefficientVector::real(1.0, 0.0, 0.0);
        let s = build_entangled_state(1.0, &a, &a, &params()).unwrap();
        assert_eq!(s.c[0], Complex64::new(1.0, 0.0));
        let data = schmidt(&s);
        assert_eq!(data.entropy_nats, 0.0);
        assert!(data.entropy_nats.is_sign_positive());
    }

    #[test]
    fn uniform_is_maximal() {
        let u = CoefficientVector::uniform();
        let s = build_entangled_state(1.0, &u, &u, &params()).unwrap();
        for c in s.c {
            assert!((c.re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        let data = schmidt(&s);
        assert!((data.entropy_nats - 3f64.ln()).abs() < 1e-12);
        assert!(data.entropy_nats > bell_benchmark().entropy_nats);
    }

    #[test]
    fn disjoint_supports_are_degenerate() {
        let a = CoefficientVector::real(1.0, 0.0, 0.0);
        let g = CoefficientVector::real(0.0, 1.0, 1.0);
        let err = build_entangled_state(1.0, &a, &g, &params()).unwrap_err();
        assert!(matches!(err, GupError::Degenerate(_)));
    }

    #[test]
    fn bell_values() {
        let b = bell_benchmark();
        assert_eq!(b.lambdas.len(), 2);
        assert!(b.lambdas.iter().all(|l| (l - 0.5).abs() < 1e-15));
        assert!((b.entropy_bits - 1.0).abs() < 1e-15);
        assert!((b.entropy_nats - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn swapped_partners_violate_the_invariant() {
        let u = CoefficientVector::uniform();
        let mut s = build_entangled_state(1.0, &u, &u, &params()).unwrap();
        s.partner.swap(0, 1);
        assert!(matches!(correlation_structure(&s), Err(GupError::InvariantViolation(_))));
        s.partner[0] = Complex64::new(42.0, 0.0);
        assert!(matches!(correlation_structure(&s), Err(GupError::InvariantViolation(_))));
    }

    #[test]
    fn uniform_mutual_information() {
        let u = CoefficientVector::uniform();
        let s = build_entangled_state(0.7, &u, &u, &params()).unwrap();
        let r = correlation_structure(&s).unwrap();
        assert_eq!(r.conditional_entropy_nats, 0.0);
        assert!((r.mutual_information_nats - 3f64.ln()).abs() < 1e-12);
        assert!(r.support_is_negated_triple && r.deterministic_partner);
        assert_eq!(r.branch_conservation, [true; 3]);
        assert_eq!(r.partner_maps_to_minus_p, [true; 3]);
    }
}

//! Numerics for the first-order minimal-length momentum algebra.
//!
//! The generalized momentum `P = p(1 + βp²)` maps each canonical momentum to
//! one value of `P`, while each `P` pulls back to three canonical momenta: one
//! real root and a complex-conjugate pair of `βp³ + p − P = 0`. This crate
//! solves that cubic two independent ways, builds the position and momentum
//! representations of `|P⟩`, forms the correlated two-particle state over the
//! three branches, and samples measurement outcomes from it.
//!
//! Modules:
//! - [`params`], [`roots`], [`uncertainty`]: the cubic and the deformed
//!   uncertainty relation.
//! - [`representations`]: plane waves, eigenfunctions, ODE residuals, the
//!   regularized delta comb, the identity-resolution measure.
//! - [`entanglement`]: the pair state, Schmidt data and correlation report.
//! - [`measurement`]: seeded Born-rule sampling.
//! - [`quadrature`]: adaptive Gauss–Kronrod integration used by the checks.

pub mod entanglement;
pub mod error;
pub mod measurement;
pub mod params;
pub mod quadrature;
pub mod representations;
pub mod roots;
pub mod tolerance;
pub mod uncertainty;

pub use entanglement::{
    bell_benchmark, build_entangled_state, correlation_structure, schmidt, CorrelationReport,
    SchmidtData, TwoParticleState,
};
pub use error::{GupError, Result};
pub use measurement::{
    p_basis_vs_big_p_basis, sample, verify_correlation, BasisContrast, MeasurementRecord,
    SampleSummary, Sampler,
};
pub use num_complex::Complex64;
pub use params::GupParams;
pub use representations::{
    eigenfunction, measure_weight, momentum_comb, ode_residual, plane_wave,
    validate_coefficients, CoefficientVector, CombValue, EigenfunctionSpec, ResidualMode,
};
pub use roots::{
    cardano_roots, forward_map, negate_spectrum, oracle_roots, root_sum_identity, RootMethod,
    RootTriple, VietaResiduals,
};
pub use uncertainty::{dispersion, minimal_length, numeric_minimal_length, uncertainty_product};

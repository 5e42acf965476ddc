//! Root triples of the generalized-momentum cubic `βp³ + p − P = 0`.
//!
//! For `β > 0` the discriminant is always negative, so every real `P` has
//! exactly one real preimage `p₁` and a complex-conjugate pair
//! `p₂,₃ = −p₁/2 ± i·y`. Two independent solvers are provided:
//!
//! - [`cardano_roots`]: the closed form built on
//!   `A = ∛((108P + 12√3·√((27P²β + 4)/β))·β²)`, `p₁ = A/(6β) − 2/A`,
//!   `y = (√3/2)(A/(6β) + 2/A)`, switching to a series + Newton path when
//!   `βP²` is small enough for `A/(6β) − 2/A` to cancel.
//! - [`oracle_roots`]: Durand–Kerner on a rescaled monic cubic, polished by
//!   Newton. It never touches the closed form.
//!
//! The imaginary part of the printed closed form is sometimes quoted as
//! `(√3/2)(p₁/2 + 4/A)`; that bracket fails Vieta's relations for every
//! `P ≠ 0`. See [`printed_bracket_discrepancy`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};
use crate::params::GupParams;
use crate::tolerance;

/// Below this value of `βP²` the closed form is replaced by the series path.
///
/// The closed form loses about `ε/√(3βP²)` relative accuracy in `p₁`; at
/// `1e-5` that is ~4e-14, while the series with Newton polishing is exact to
/// rounding for every smaller value.
pub const SERIES_THRESHOLD: f64 = 1e-5;

const SQRT3: f64 = 1.732_050_807_568_877_2;
const DK_MAX_ITER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMethod {
    /// `P = 0`, solved by exact factorization.
    Exact,
    ClosedForm,
    Series,
    Oracle,
}

impl RootMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootMethod::Exact => "exact",
            RootMethod::ClosedForm => "closed_form",
            RootMethod::Series => "series",
            RootMethod::Oracle => "oracle",
        }
    }
}

/// The three canonical momenta mapping to one generalized momentum.
///
/// Canonical order: real root, conjugate with `Im > 0`, conjugate with
/// `Im < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootTriple {
    pub p1: f64,
    /// `p₁ − P`, formed without cancelling against `P` on the series path.
    pub p1_offset: f64,
    pub p2: Complex64,
    pub p3: Complex64,
    pub source_p: f64,
    pub beta: f64,
    pub method: RootMethod,
}

/// Vieta relation residuals of a [`RootTriple`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VietaResiduals {
    /// `|p₁ + p₂ + p₃|`.
    pub sum: f64,
    /// `|p₁p₂p₃ − P/β| / max(1, |P/β|)`.
    pub product: f64,
    /// `|p₁p₂ + p₁p₃ + p₂p₃ − 1/β| · β`.
    pub pairwise: f64,
}

impl RootTriple {
    fn from_parts(p1: f64, p1_offset: f64, imag: f64, params: &GupParams, source_p: f64, method: RootMethod) -> Self {
        let re = -0.5 * p1;
        let imag = imag.abs();
        Self {
            p1,
            p1_offset,
            p2: Complex64::new(re, imag),
            p3: Complex64::new(re, -imag),
            source_p,
            beta: params.beta(),
            method,
        }
    }

    pub fn as_array(&self) -> [Complex64; 3] {
        [Complex64::new(self.p1, 0.0), self.p2, self.p3]
    }

    /// Root `k` in `1..=3`.
    pub fn get(&self, k: usize) -> Option<Complex64> {
        match k {
            1 => Some(Complex64::new(self.p1, 0.0)),
            2 => Some(self.p2),
            3 => Some(self.p3),
            _ => None,
        }
    }

    pub fn vieta_residuals(&self) -> VietaResiduals {
        let [a, b, c] = self.as_array();
        let q = self.source_p / self.beta;
        VietaResiduals {
            sum: (a + b + c).norm(),
            product: (a * b * c - q).norm() / q.abs().max(1.0),
            pairwise: (a * b + a * c + b * c - 1.0 / self.beta).norm() * self.beta,
        }
    }

    /// `max_k |forward_map(p_k) − P|`.
    pub fn forward_residual(&self) -> f64 {
        self.as_array()
            .iter()
            .map(|&p| (forward_map_unchecked(p, self.beta) - self.source_p).norm())
            .fold(0.0, f64::max)
    }

    /// Match against `other` over all six permutations, hybrid tolerance per root.
    pub fn agrees_with(&self, other: &RootTriple, atol: f64, rtol: f64) -> bool {
        let a = self.as_array();
        let b = other.as_array();
        PERMUTATIONS.iter().any(|perm| {
            (0..3).all(|i| tolerance::close_c(a[i], b[perm[i]], atol, rtol))
        })
    }

    /// Largest root-wise distance under the best permutation.
    pub fn max_distance(&self, other: &RootTriple) -> f64 {
        let a = self.as_array();
        let b = other.as_array();
        PERMUTATIONS
            .iter()
            .map(|perm| (0..3).map(|i| (a[i] - b[perm[i]]).norm()).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn check_inputs(p: f64) -> Result<()> {
    if !p.is_finite() {
        return Err(GupError::domain(format!("generalized momentum must be finite, got {p}")));
    }
    Ok(())
}

fn exact_zero(params: &GupParams) -> RootTriple {
    let imag = 1.0 / params.beta().sqrt();
    RootTriple::from_parts(0.0, 0.0, imag, params, 0.0, RootMethod::Exact)
}

/// Imaginary part of the conjugate pair from `p₁p₂ + p₁p₃ + p₂p₃ = 1/β`.
fn pair_imag(p1: f64, beta: f64) -> f64 {
    (1.0 / beta + 0.75 * p1 * p1).sqrt()
}

/// Intermediate `A` of the closed form, for `P ≥ 0`.
pub fn closed_form_a(p: f64, beta: f64) -> f64 {
    let radical = ((27.0 * p * p * beta + 4.0) / beta).sqrt();
    ((108.0 * p + 12.0 * SQRT3 * radical) * beta * beta).cbrt()
}

/// Solve `βp³ + p − P = 0` through the closed form (or its series fallback).
pub fn cardano_roots(p: f64, params: &GupParams) -> Result<RootTriple> {
    check_inputs(p)?;
    if p == 0.0 {
        return Ok(exact_zero(params));
    }
    let beta = params.beta();
    let magnitude = p.abs();
    let sign = p.signum();

    let (p1, offset, imag, method) = if beta * magnitude * magnitude < SERIES_THRESHOLD {
        // Work with δ = p₁ − |P|, which solves δ + β(|P| + δ)³ = 0.
        let mut delta = -beta * magnitude.powi(3) + 3.0 * beta * beta * magnitude.powi(5);
        for _ in 0..2 {
            let x = magnitude + delta;
            delta -= (delta + beta * x * x * x) / (1.0 + 3.0 * beta * x * x);
        }
        let x = magnitude + delta;
        (x, delta, pair_imag(x, beta), RootMethod::Series)
    } else {
        let a = closed_form_a(magnitude, beta);
        let u = a / (6.0 * beta);
        let v = 2.0 / a;
        let x = u - v;
        (x, x - magnitude, 0.5 * SQRT3 * (u + v), RootMethod::ClosedForm)
    };

    Ok(RootTriple::from_parts(sign * p1, sign * offset, imag, params, p, method))
}

/// Compare the printed bracket `(√3/2)(p₁/2 + 4/A)` with the Vieta-consistent
/// `(√3/2)(p₁ + 4/A)`. Returns `(printed, consistent)` for `P ≥ 0` evaluated
/// at `|P|`.
pub fn printed_bracket_discrepancy(p: f64, params: &GupParams) -> Result<(f64, f64)> {
    check_inputs(p)?;
    let beta = params.beta();
    let a = closed_form_a(p.abs(), beta);
    let p1 = a / (6.0 * beta) - 2.0 / a;
    let printed = 0.5 * SQRT3 * (0.5 * p1 + 4.0 / a);
    let consistent = 0.5 * SQRT3 * (p1 + 4.0 / a);
    Ok((printed, consistent))
}

/// Solve the same cubic by Durand–Kerner with Newton polishing.
///
/// The variable is rescaled to `z = p/s` with `s = max(∛|P/β|, 1/√β)` so the
/// monic cubic `z³ + a·z + b` has coefficients of order one.
pub fn oracle_roots(p: f64, params: &GupParams) -> Result<RootTriple> {
    check_inputs(p)?;
    let beta = params.beta();
    let scale = (p / beta).abs().cbrt().max(1.0 / beta.sqrt());
    let a = 1.0 / (beta * scale * scale);
    let b = -p / (beta * scale * scale * scale);

    let poly = |z: Complex64| z * z * z + a * z + b;
    let dpoly = |z: Complex64| 3.0 * z * z + a;

    let seed = Complex64::new(0.4, 0.9);
    let mut z = [seed, seed * seed, seed * seed * seed];
    let mut converged = false;
    for _ in 0..DK_MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..3 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = poly(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    let residuals: Vec<f64> = z.iter().map(|&zi| poly(zi).norm()).collect();
    if !converged || z.iter().any(|zi| !zi.re.is_finite() || !zi.im.is_finite()) {
        return Err(GupError::Numeric {
            message: format!("Durand-Kerner did not converge in {DK_MAX_ITER} sweeps"),
            residuals,
        });
    }

    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = dpoly(*zi);
            if d.norm() == 0.0 {
                break;
            }
            *zi -= poly(*zi) / d;
        }
    }

    // Real root: smallest |Im|, then polish in real arithmetic where the
    // relative accuracy is not limited by the scale of the complex pair.
    z.sort_by(|l, r| l.im.abs().total_cmp(&r.im.abs()));
    let mut x = z[0].re;
    for _ in 0..8 {
        let f = x * x * x + a * x + b;
        let df = 3.0 * x * x + a;
        let step = f / df;
        x -= step;
        if step.abs() <= f64::EPSILON * x.abs() {
            break;
        }
    }
    let (upper, lower) = if z[1].im >= 0.0 { (z[1], z[2]) } else { (z[2], z[1]) };
    let pair = 0.5 * (upper + lower.conj());

    let p1 = x * scale;
    let imag = pair.im.abs() * scale;
    let re = pair.re * scale;
    let triple = RootTriple {
        p1,
        p1_offset: p1 - p,
        p2: Complex64::new(re, imag),
        p3: Complex64::new(re, -imag),
        source_p: p,
        beta,
        method: RootMethod::Oracle,
    };
    let check = triple.forward_residual();
    if check.is_nan() || check > 1e-6 * p.abs().max(1.0) {
        return Err(GupError::Numeric {
            message: "oracle roots fail the forward-map check".into(),
            residuals: triple
                .as_array()
                .iter()
                .map(|&r| (forward_map_unchecked(r, beta) - p).norm())
                .collect(),
        });
    }
    Ok(triple)
}

fn forward_map_unchecked(p: Complex64, beta: f64) -> Complex64 {
    p * (1.0 + beta * p * p)
}

/// `P = p(1 + βp²)`.
pub fn forward_map(p: Complex64, params: &GupParams) -> Result<Complex64> {
    if !(p.re.is_finite() && p.im.is_finite()) {
        return Err(GupError::domain(format!("momentum must be finite, got {p}")));
    }
    Ok(forward_map_unchecked(p, params.beta()))
}

/// The triple for `−P`: every root negated, canonical order kept.
pub fn negate_spectrum(roots: &RootTriple) -> RootTriple {
    RootTriple {
        p1: -roots.p1,
        p1_offset: -roots.p1_offset,
        p2: -roots.p3,
        p3: -roots.p2,
        source_p: -roots.source_p,
        beta: roots.beta,
        method: roots.method,
    }
}

/// `max_k |p_l + p_m + p_k|` over the three assignments `−p_k = p_l + p_m`.
pub fn root_sum_identity(roots: &RootTriple) -> f64 {
    let r = roots.as_array();
    (0..3)
        .map(|k| {
            let l = (k + 1) % 3;
            let m = (k + 2) % 3;
            ((r[l] + r[m]) + r[k]).norm()
        })
        .fold(0.0, f64::max)
}

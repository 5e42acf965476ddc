//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use gupnl_core::{
    bell_benchmark, build_entangled_state, cardano_roots, schmidt, CoefficientVector, Complex64,
    GupParams, Sampler,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest grid the page may request.
pub const MAX_STEPS: u32 = 5000;
pub const MAX_DRAWS: u32 = 10_000_000;

fn coefficients(parts: &[f64]) -> Result<CoefficientVector, String> {
    if parts.len() != 6 {
        return Err(format!("expected 6 numbers (re, im per coefficient), got {}", parts.len()));
    }
    Ok(CoefficientVector(std::array::from_fn(|k| Complex64::new(parts[2 * k], parts[2 * k + 1]))))
}

/// Roots of the cubic over an even grid of `P`.
pub fn roots_curve_json(beta: f64, p_min: f64, p_max: f64, steps: u32) -> Result<String, String> {
    if p_min.is_nan() || p_max.is_nan() || p_min >= p_max {
        return Err("need P min < P max".into());
    }
    if !(2..=MAX_STEPS).contains(&steps) {
        return Err(format!("steps must be in 2..={MAX_STEPS}"));
    }
    let params = GupParams::with_beta(beta).map_err(|e| e.to_string())?;
    let last = f64::from(steps - 1);
    let mut p = Vec::new();
    let mut p1 = Vec::new();
    let mut re = Vec::new();
    let mut im = Vec::new();
    for i in 0..steps {
        let x = (p_min * (last - f64::from(i)) + p_max * f64::from(i)) / last;
        let r = cardano_roots(x, &params).map_err(|e| e.to_string())?;
        p.push(x);
        p1.push(r.p1);
        re.push(r.p2.re);
        im.push(r.p2.im);
    }
    Ok(json!({ "P": p, "p1": p1, "pair_re": re, "pair_im": im }).to_string())
}

/// Schmidt spectrum and entropy of the pair state.
pub fn entanglement_json(beta: f64, p: f64, alpha: &[f64], gamma: &[f64]) -> Result<String, String> {
    let params = GupParams::with_beta(beta).map_err(|e| e.to_string())?;
    let state = build_entangled_state(p, &coefficients(alpha)?, &coefficients(gamma)?, &params)
        .map_err(|e| e.to_string())?;
    let data = schmidt(&state);
    Ok(json!({
        "probabilities": state.probabilities(),
        "entropy_nats": data.entropy_nats,
        "entropy_bits": data.entropy_bits,
        "bell_bits": bell_benchmark().entropy_bits,
        "max_bits": 3f64.log2(),
    })
    .to_string())
}

/// Branch counts for `n` seeded draws.
pub fn sample_histogram_json(beta: f64, p: f64, alpha: &[f64], n: u32, seed: u32) -> Result<String, String> {
    if !(1..=MAX_DRAWS).contains(&n) {
        return Err(format!("n must be in 1..={MAX_DRAWS}"));
    }
    let params = GupParams::with_beta(beta).map_err(|e| e.to_string())?;
    let a = coefficients(alpha)?;
    let state = build_entangled_state(p, &a, &a, &params).map_err(|e| e.to_string())?;
    let summary = Sampler::new(&state, u64::from(seed))
        .map_err(|e| e.to_string())?
        .count(0, u64::from(n));
    Ok(json!({
        "counts": summary.counts,
        "expected": summary.expected_probs,
        "chi_square": summary.chi_square,
        "warnings": summary.warnings,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn roots_curve(beta: f64, p_min: f64, p_max: f64, steps: u32) -> Result<String, JsValue> {
    roots_curve_json(beta, p_min, p_max, steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn entanglement(beta: f64, p: f64, alpha: &[f64], gamma: &[f64]) -> Result<String, JsValue> {
    entanglement_json(beta, p, alpha, gamma).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sample_histogram(beta: f64, p: f64, alpha: &[f64], n: u32, seed: u32) -> Result<String, JsValue> {
    sample_histogram_json(beta, p, alpha, n, seed).map_err(|e| JsValue::from_str(&e))
}

//! Born-rule sampling of correlated outcome pairs from a [`TwoParticleState`].
//!
//! Randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64(seed)`. Draw `k` consumes the 64-bit word at stream
//! position `2k`, so any contiguous range of draws can be produced
//! independently with [`Sampler::records`]; concatenating partitions gives
//! the same records as one serial run. A word `w` becomes the uniform
//! `u = (w >> 11)·2⁻⁵³` and branch `i` is the first with `u < Σ_{j≤i} |c_j|²`.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::entanglement::{shannon_entropy, TwoParticleState};
use crate::error::{GupError, Result};

/// Expected counts below this trigger a small-sample warning.
pub const SMALL_EXPECTED_COUNT: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    /// 1-based branch.
    pub branch_index: u8,
    pub outcome_1: Complex64,
    pub outcome_2: Complex64,
    pub draw_ordinal: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub counts: [u64; 3],
    pub empirical_freqs: [f64; 3],
    pub expected_probs: [f64; 3],
    pub chi_square: f64,
    /// Number of branches with non-zero probability, minus one.
    pub degrees_of_freedom: u32,
    pub seed: u64,
    pub n: u64,
    pub warnings: Vec<String>,
}

impl SampleSummary {
    pub fn from_counts(counts: [u64; 3], expected_probs: [f64; 3], seed: u64) -> Self {
        let n: u64 = counts.iter().sum();
        let nf = n as f64;
        let empirical_freqs = counts.map(|c| if n == 0 { 0.0 } else { c as f64 / nf });
        let mut chi_square = 0.0;
        let mut warnings = Vec::new();
        let mut support = 0;
        for i in 0..3 {
            let expected = expected_probs[i] * nf;
            if expected_probs[i] > 0.0 {
                support += 1;
                let d = counts[i] as f64 - expected;
                chi_square += d * d / expected;
                if expected < SMALL_EXPECTED_COUNT {
                    warnings.push(format!(
                        "branch {} has expected count {expected:.3} < {SMALL_EXPECTED_COUNT}; chi-square is unreliable",
                        i + 1
                    ));
                }
            } else if counts[i] > 0 {
                chi_square = f64::INFINITY;
            }
        }
        Self {
            counts,
            empirical_freqs,
            expected_probs,
            chi_square,
            degrees_of_freedom: support.max(1) - 1,
            seed,
            n,
            warnings,
        }
    }

    /// Combine summaries of disjoint partitions of the same run.
    pub fn merge(&self, other: &SampleSummary) -> Result<SampleSummary> {
        if self.seed != other.seed || self.expected_probs != other.expected_probs {
            return Err(GupError::domain("cannot merge summaries of different runs"));
        }
        let counts = std::array::from_fn(|i| self.counts[i] + other.counts[i]);
        Ok(Self::from_counts(counts, self.expected_probs, self.seed))
    }

    /// Shannon entropy of the empirical branch frequencies, in nats.
    pub fn empirical_entropy(&self) -> f64 {
        shannon_entropy(&self.empirical_freqs)
    }
}

/// `q`-quantile of the chi-square distribution with two degrees of freedom.
pub fn chi_square_df2_quantile(q: f64) -> f64 {
    -2.0 * (1.0 - q).ln()
}

/// Deterministic sampler over one state and seed.
#[derive(Debug, Clone)]
pub struct Sampler {
    outcomes: [Complex64; 3],
    partners: [Complex64; 3],
    probs: [f64; 3],
    cumulative: [f64; 3],
    last_supported: usize,
    seed: u64,
}

impl Sampler {
    pub fn new(state: &TwoParticleState, seed: u64) -> Result<Self> {
        let raw = state.probabilities();
        let total: f64 = raw.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(GupError::Degenerate("state has no probability mass".into()));
        }
        let probs = raw.map(|p| p / total);
        let mut cumulative = [0.0; 3];
        let mut acc = 0.0;
        for i in 0..3 {
            acc += probs[i];
            cumulative[i] = acc;
        }
        let last_supported = (0..3).rev().find(|&i| probs[i] > 0.0).unwrap_or(0);
        let outcomes = state.roots.as_array();
        Ok(Self {
            outcomes,
            partners: outcomes.map(|o| -o),
            probs,
            cumulative,
            last_supported,
            seed,
        })
    }

    pub fn probabilities(&self) -> [f64; 3] {
        self.probs
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn branch_for(&self, word: u64) -> usize {
        let u = (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        (0..3)
            .find(|&i| self.probs[i] > 0.0 && u < self.cumulative[i])
            .unwrap_or(self.last_supported)
    }

    /// Records for draws `start .. start + len`.
    pub fn records(&self, start: u64, len: u64) -> impl Iterator<Item = MeasurementRecord> + '_ {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_word_pos(2 * u128::from(start));
        (start..start + len).map(move |ordinal| {
            let i = self.branch_for(rng.next_u64());
            MeasurementRecord {
                branch_index: (i + 1) as u8,
                outcome_1: self.outcomes[i],
                outcome_2: self.partners[i],
                draw_ordinal: ordinal,
            }
        })
    }

    /// Count branches over `start .. start + len` without materializing records.
    pub fn count(&self, start: u64, len: u64) -> SampleSummary {
        let mut counts = [0u64; 3];
        for r in self.records(start, len) {
            counts[usize::from(r.branch_index - 1)] += 1;
        }
        SampleSummary::from_counts(counts, self.probs, self.seed)
    }
}

/// Draw `n` outcome pairs from `state`.
pub fn sample(state: &TwoParticleState, n: u64, seed: u64) -> Result<(Vec<MeasurementRecord>, SampleSummary)> {
    if n == 0 {
        return Err(GupError::domain("sample size must be at least 1"));
    }
    let sampler = Sampler::new(state, seed)?;
    let records: Vec<MeasurementRecord> = sampler.records(0, n).collect();
    let mut counts = [0u64; 3];
    for r in &records {
        counts[usize::from(r.branch_index - 1)] += 1;
    }
    let summary = SampleSummary::from_counts(counts, sampler.probabilities(), seed);
    Ok((records, summary))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationCheck {
    pub holds: bool,
    pub counterexample: Option<MeasurementRecord>,
}

/// Every record must pair `outcome_2 = −outcome_1` exactly.
pub fn verify_correlation<'a, I>(records: I) -> Result<CorrelationCheck>
where
    I: IntoIterator<Item = &'a MeasurementRecord>,
{
    let mut seen = false;
    for r in records {
        seen = true;
        if r.outcome_2 != -r.outcome_1 {
            return Ok(CorrelationCheck { holds: false, counterexample: Some(*r) });
        }
    }
    if !seen {
        return Err(GupError::domain("no records to verify"));
    }
    Ok(CorrelationCheck { holds: true, counterexample: None })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisOutcome {
    pub outcome_1: Complex64,
    pub outcome_2: Complex64,
    pub probability: f64,
}

/// Measuring in the generalized-momentum basis versus the canonical one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisContrast {
    pub big_p_basis: Vec<BasisOutcome>,
    pub big_p_entropy_nats: f64,
    pub p_basis: Vec<BasisOutcome>,
    pub p_basis_entropy_nats: f64,
}

/// `|P, −P⟩` gives one certain outcome; the canonical basis resolves it into
/// the three branches with Born weights `|cᵢ|²`.
pub fn p_basis_vs_big_p_basis(state: &TwoParticleState) -> BasisContrast {
    let p = state.roots.source_p;
    let probs = state.probabilities();
    let roots = state.roots.as_array();
    BasisContrast {
        big_p_basis: vec![BasisOutcome {
            outcome_1: p.into(),
            outcome_2: (-p).into(),
            probability: 1.0,
        }],
        big_p_entropy_nats: shannon_entropy(&[1.0]),
        p_basis: (0..3)
            .map(|i| BasisOutcome {
                outcome_1: roots[i],
                outcome_2: -roots[i],
                probability: probs[i],
            })
            .collect(),
        p_basis_entropy_nats: shannon_entropy(&probs),
    }
}

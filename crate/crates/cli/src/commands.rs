use gupnl_core::measurement::chi_square_df2_quantile;
use gupnl_core::tolerance::{ATOL, RTOL};
use gupnl_core::{
    bell_benchmark, build_entangled_state, cardano_roots, correlation_structure, minimal_length,
    numeric_minimal_length, oracle_roots, p_basis_vs_big_p_basis, schmidt, uncertainty_product,
    CoefficientVector, Complex64, GupParams, RootTriple, Sampler, TwoParticleState,
};
use serde_json::{json, Map, Value};

use crate::args::StateArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{Column, Emitter, Report, Table};

/// A rendered-ready result plus diagnostics for stderr.
pub struct Outcome<'a> {
    pub report: Report<'a>,
    pub warnings: Vec<String>,
}

impl<'a> From<Report<'a>> for Outcome<'a> {
    fn from(report: Report<'a>) -> Self {
        Self { report, warnings: Vec::new() }
    }
}

fn params(beta: f64, cfg: &RunConfig) -> CliResult<GupParams> {
    Ok(GupParams::new(beta, cfg.hbar)?)
}

fn finite(name: &str, x: f64) -> CliResult<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::usage(format!("{name} must be finite, got {x}")))
    }
}

fn triple_json(e: &Emitter, r: &RootTriple) -> Value {
    json!({
        "p1": e.complex(Complex64::new(r.p1, 0.0)),
        "p2": e.complex(r.p2),
        "p3": e.complex(r.p3),
    })
}

/// Per-root distances between two triples under the best matching.
fn matched_differences(a: &RootTriple, b: &RootTriple) -> [f64; 3] {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let x = a.as_array();
    let y = b.as_array();
    PERMS
        .iter()
        .map(|p| std::array::from_fn(|i| (x[i] - y[p[i]]).norm()))
        .min_by(|d: &[f64; 3], e: &[f64; 3]| {
            let m = |v: &[f64; 3]| v.iter().copied().fold(0.0, f64::max);
            m(d).total_cmp(&m(e))
        })
        .expect("six permutations")
}

pub fn roots(p: f64, cfg: &RunConfig) -> CliResult<Outcome<'static>> {
    let e = Emitter::new(cfg.precision);
    let p = finite("P", p)?;
    let beta = cfg.require_beta()?;
    let params = params(beta, cfg)?;
    let closed = cardano_roots(p, &params)?;
    let oracle = oracle_roots(p, &params)?;
    let diffs = matched_differences(&closed, &oracle);
    let scale = closed.as_array().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let max_diff = diffs.iter().copied().fold(0.0, f64::max);
    let v = closed.vieta_residuals();
    let doc = json!({
        "P": e.num(p),
        "beta": e.num(beta),
        "hbar": e.num(cfg.hbar),
        "method": closed.method.as_str(),
        "roots": triple_json(&e, &closed),
        "p1_minus_P": e.num(closed.p1_offset),
        "oracle_roots": triple_json(&e, &oracle),
        "cross_check": {
            "differences": e.nums(&diffs),
            "max_relative": e.num(max_diff / scale),
            "agree": closed.agrees_with(&oracle, ATOL, RTOL),
        },
        "vieta_residuals": {
            "sum": e.num(v.sum),
            "pairwise": e.num(v.pairwise),
            "product": e.num(v.product),
        },
        "forward_residual": e.num(closed.forward_residual()),
    });
    Ok(Report::Document(doc).into())
}

/// `steps` points from `lo` to `hi`, exactly antisymmetric when `lo = −hi`.
fn even_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| (lo * (last - i as f64) + hi * i as f64) / last)
        .collect()
}

pub fn scan(p_min: f64, p_max: f64, steps: i64, cfg: &RunConfig) -> CliResult<Outcome<'static>> {
    let e = Emitter::new(cfg.precision);
    let (p_min, p_max) = (finite("P-min", p_min)?, finite("P-max", p_max)?);
    if p_min >= p_max {
        return Err(CliError::usage(format!("need P-min < P-max, got {p_min} >= {p_max}")));
    }
    if steps < 2 {
        return Err(CliError::usage(format!("steps must be at least 2, got {steps}")));
    }
    let params = params(cfg.require_beta()?, cfg)?;
    let rows = even_grid(p_min, p_max, steps as usize)
        .into_iter()
        .map(|p| {
            let r = cardano_roots(p, &params)?;
            let v = r.vieta_residuals();
            Ok(vec![
                e.num(p),
                Value::from(r.method.as_str()),
                e.complex(Complex64::new(r.p1, 0.0)),
                e.complex(r.p2),
                e.complex(r.p3),
                e.num(v.sum),
                e.num(v.pairwise),
                e.num(v.product),
                e.num(r.forward_residual()),
            ])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let columns = vec![
        Column::real("P"),
        Column::real("method"),
        Column::complex("p1"),
        Column::complex("p2"),
        Column::complex("p3"),
        Column::real("vieta_sum"),
        Column::real("vieta_pairwise"),
        Column::real("vieta_product"),
        Column::real("forward_residual"),
    ];
    let mut meta = Map::new();
    meta.insert("beta".into(), e.num(params.beta()));
    Ok(Report::Table { meta, table: Table { columns, rows: Box::new(rows.into_iter()) } }.into())
}

/// Three comma-separated complex numbers such as `1,0.5-0.5i,2i`.
pub fn parse_coefficients(s: &str) -> CliResult<CoefficientVector> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!("expected three comma-separated coefficients, got '{s}'")));
    }
    let mut c = [Complex64::new(0.0, 0.0); 3];
    for (slot, part) in c.iter_mut().zip(&parts) {
        *slot = part
            .parse::<Complex64>()
            .map_err(|_| CliError::usage(format!("cannot parse complex number '{part}'")))?;
        if !(slot.re.is_finite() && slot.im.is_finite()) {
            return Err(CliError::usage(format!("coefficient '{part}' is not finite")));
        }
    }
    Ok(CoefficientVector(c))
}

fn build_state(args: &StateArgs, cfg: &RunConfig) -> CliResult<TwoParticleState> {
    let p = finite("P", args.p)?;
    let alpha = match &args.alpha {
        Some(s) => parse_coefficients(s)?,
        None => CoefficientVector::uniform(),
    };
    let gamma = match &args.gamma {
        Some(s) => parse_coefficients(s)?,
        None => alpha,
    };
    let params = params(cfg.require_beta()?, cfg)?;
    Ok(build_entangled_state(p, &alpha, &gamma, &params)?)
}

pub fn entangle(args: &StateArgs, cfg: &RunConfig) -> CliResult<Outcome<'static>> {
    let e = Emitter::new(cfg.precision);
    let state = build_state(args, cfg)?;
    let data = schmidt(&state);
    let bell = bell_benchmark();
    let corr = correlation_structure(&state)?;
    let contrast = p_basis_vs_big_p_basis(&state);
    let doc = json!({
        "P": e.num(state.roots.source_p),
        "beta": e.num(state.roots.beta),
        "roots": triple_json(&e, &state.roots),
        "alpha": e.complexes(&state.alpha.0),
        "gamma": e.complexes(&state.gamma.0),
        "norm_constant": e.num(state.norm_constant),
        "c": e.complexes(&state.c),
        "probabilities": e.nums(&state.probabilities()),
        "schmidt": {
            "lambdas": e.nums(&data.lambdas),
            "entropy_nats": e.num(data.entropy_nats),
            "entropy_bits": e.num(data.entropy_bits),
        },
        "bell": {
            "lambdas": e.nums(&bell.lambdas),
            "entropy_nats": e.num(bell.entropy_nats),
            "entropy_bits": e.num(bell.entropy_bits),
            "entropy_excess_nats": e.num(data.entropy_nats - bell.entropy_nats),
            "exceeds_bell": data.entropy_nats > bell.entropy_nats,
        },
        "correlation": {
            "particle2_support": e.complexes(&corr.particle2_support),
            "support_is_negated_triple": corr.support_is_negated_triple,
            "deterministic_partner": corr.deterministic_partner,
            "conditional_entropy_nats": e.num(corr.conditional_entropy_nats),
            "mutual_information_nats": e.num(corr.mutual_information_nats),
            "branch_conservation": corr.branch_conservation,
            "partner_maps_to_minus_p": corr.partner_maps_to_minus_p,
        },
        "measurement_bases": {
            "big_p_entropy_nats": e.num(contrast.big_p_entropy_nats),
            "p_entropy_nats": e.num(contrast.p_basis_entropy_nats),
        },
    });
    Ok(Report::Document(doc).into())
}

const SAMPLE_CHUNK: u64 = 4096;

pub fn sample(args: &StateArgs, n: i64, real_part_only: bool, cfg: &RunConfig) -> CliResult<Outcome<'static>> {
    let e = Emitter::new(cfg.precision);
    if n < 1 {
        return Err(CliError::usage(format!("n must be at least 1, got {n}")));
    }
    let n = n as u64;
    let state = build_state(args, cfg)?;
    let sampler = Sampler::new(&state, cfg.seed)?;
    let summary = sampler.count(0, n);
    let correlated = sampler.records(0, n).all(|r| r.outcome_2 == -r.outcome_1);

    let summary_json = json!({
        "seed": summary.seed,
        "n": summary.n,
        "P": e.num(state.roots.source_p),
        "beta": e.num(state.roots.beta),
        "expected_probs": e.nums(&summary.expected_probs),
        "counts": summary.counts,
        "empirical_freqs": e.nums(&summary.empirical_freqs),
        "empirical_entropy_nats": e.num(summary.empirical_entropy()),
        "chi_square": e.num(summary.chi_square),
        "degrees_of_freedom": summary.degrees_of_freedom,
        "chi_square_critical_0999": e.num(chi_square_df2_quantile(0.999)),
        "correlation_holds": correlated,
        "warnings": summary.warnings,
    });

    let outcome = move |z: Complex64| if real_part_only { e.num(z.re) } else { e.complex(z) };
    let rows = (0..n.div_ceil(SAMPLE_CHUNK))
        .flat_map(move |k| {
            let start = k * SAMPLE_CHUNK;
            sampler.records(start, SAMPLE_CHUNK.min(n - start)).collect::<Vec<_>>()
        })
        .map(move |r| {
            vec![
                Value::from(r.draw_ordinal),
                Value::from(r.branch_index),
                outcome(r.outcome_1),
                outcome(r.outcome_2),
            ]
        });
    let col = |name| if real_part_only { Column::real(name) } else { Column::complex(name) };
    let columns = vec![Column::real("draw"), Column::real("branch"), col("outcome_1"), col("outcome_2")];
    Ok(Outcome {
        report: Report::Stream { table: Table { columns, rows: Box::new(rows) }, summary: summary_json },
        warnings: summary.warnings,
    })
}

/// `START:STOP:COUNT`.
pub fn parse_grid(spec: &str, linear: bool) -> CliResult<Vec<f64>> {
    let bad = || CliError::usage(format!("grid must be START:STOP:COUNT, got '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    for v in [start, stop] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::usage(format!("grid values must be positive, got {v}")));
        }
    }
    match count {
        0 => Err(CliError::usage("grid needs at least one point")),
        1 if start == stop => Ok(vec![start]),
        1 => Err(CliError::usage("a one-point grid needs START = STOP")),
        _ if start >= stop => Err(CliError::usage(format!("need START < STOP, got {start} >= {stop}"))),
        _ if linear => Ok(even_grid(start, stop, count)),
        _ => Ok(even_grid(start.ln(), stop.ln(), count).into_iter().map(f64::exp).collect()),
    }
}

pub fn uncertainty(grid: &str, linear: bool, cfg: &RunConfig) -> CliResult<Outcome<'static>> {
    let e = Emitter::new(cfg.precision);
    let grid = parse_grid(grid, linear)?;
    let params = params(cfg.require_beta()?, cfg)?;
    let rows = grid
        .into_iter()
        .map(|dp| Ok(vec![e.num(dp), e.num(uncertainty_product(dp, &params)?)]))
        .collect::<CliResult<Vec<_>>>()?;
    let analytic = minimal_length(&params);
    let (argmin, numeric) = numeric_minimal_length(&params);
    let mut meta = Map::new();
    meta.insert("beta".into(), e.num(params.beta()));
    meta.insert("hbar".into(), e.num(params.hbar()));
    meta.insert("minimal_length_analytic".into(), e.num(analytic));
    meta.insert("minimal_length_numeric".into(), e.num(numeric));
    meta.insert("relative_difference".into(), e.num((numeric - analytic).abs() / analytic));
    meta.insert("delta_p_at_minimum_analytic".into(), e.num(1.0 / (3.0 * params.beta()).sqrt()));
    meta.insert("delta_p_at_minimum_numeric".into(), e.num(argmin));
    let columns = vec![Column::real("delta_P"), Column::real("delta_x")];
    Ok(Report::Table { meta, table: Table { columns, rows: Box::new(rows.into_iter()) } }.into())
}

pub fn limit(p: f64, beta_start: f64, decades: i64, per_decade: u32, cfg: &RunConfig) -> CliResult<Outcome<'static>> {
    let e = Emitter::new(cfg.precision);
    let p = finite("P", p)?;
    if decades < 1 {
        return Err(CliError::usage(format!("decades must be at least 1, got {decades}")));
    }
    if per_decade < 1 {
        return Err(CliError::usage("per-decade must be at least 1"));
    }
    let steps = decades as u64 * u64::from(per_decade);
    let rows = (0..=steps)
        .map(|k| {
            let beta = beta_start * 10f64.powf(-(k as f64) / f64::from(per_decade));
            let r = cardano_roots(p, &params(beta, cfg)?)?;
            Ok(vec![
                e.num(beta),
                Value::from(r.method.as_str()),
                e.num(r.p1),
                e.num(r.p1_offset),
                e.num(r.p2.im),
                e.num(r.p2.im * beta.sqrt()),
            ])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let columns = vec![
        Column::real("beta"),
        Column::real("method"),
        Column::real("p1"),
        Column::real("p1_minus_P"),
        Column::real("im_p2"),
        Column::real("im_p2_sqrt_beta"),
    ];
    let mut meta = Map::new();
    meta.insert("P".into(), e.num(p));
    Ok(Report::Table { meta, table: Table { columns, rows: Box::new(rows.into_iter()) } }.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_grid_is_exactly_odd() {
        let g = even_grid(-1.7, 1.7, 9);
        for i in 0..9 {
            assert_eq!(g[i], -g[8 - i]);
        }
        assert_eq!(g[4], 0.0);
    }

    #[test]
    fn coefficient_parsing() {
        let c = parse_coefficients("1, 0.5-0.5i ,2i").unwrap();
        assert_eq!(c.0[1], Complex64::new(0.5, -0.5));
        assert_eq!(c.0[2], Complex64::new(0.0, 2.0));
        assert!(parse_coefficients("1,2").is_err());
        assert!(parse_coefficients("1,2,x").is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0.1:10:3", false).unwrap();
        assert!((g[1] - 1.0).abs() < 1e-15);
        assert_eq!(parse_grid("1:3:3", true).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(parse_grid("0:1:3", false).is_err());
        assert!(parse_grid("-1:1:3", true).is_err());
        assert!(parse_grid("1:2", true).is_err());
    }
}

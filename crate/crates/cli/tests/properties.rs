use gupnl_cli::args::{Format, StateArgs};
use gupnl_cli::commands;
use gupnl_cli::config::RunConfig;
use gupnl_cli::output::render;
use proptest::prelude::*;
use serde_json::Value;

fn config(beta: f64, precision: usize, seed: u64) -> RunConfig {
    RunConfig { beta: Some(beta), hbar: 1.0, seed, format: Format::Json, precision, out: None }
}

fn emit(outcome: commands::Outcome<'_>, format: Format) -> String {
    let mut out = Vec::new();
    let mut side = Vec::new();
    render(outcome.report, format, &mut out, &mut side).unwrap();
    String::from_utf8(out).unwrap()
}

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_json_round_trips(p in -1e4f64..1e4, beta in log_uniform(1e-10, 1e4), precision in 6usize..=17) {
        let text = emit(commands::roots(p, &config(beta, precision, 0)).unwrap(), Format::Json);
        let v: Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    }

    #[test]
    fn scan_real_column_is_odd(hi in 0.01f64..1e3, half in 1usize..12, beta in log_uniform(1e-6, 1e3)) {
        let steps = 2 * half as i64 + 1;
        let text = emit(commands::scan(-hi, hi, steps, &config(beta, 17, 0)).unwrap(), Format::Json);
        let v: Value = serde_json::from_str(&text).unwrap();
        let rows = v["rows"].as_array().unwrap();
        let p1: Vec<f64> = rows.iter().map(|r| r["p1"]["re"].as_f64().unwrap()).collect();
        for i in 0..p1.len() {
            prop_assert_eq!(p1[i], -p1[p1.len() - 1 - i]);
        }
        prop_assert_eq!(rows[half]["P"].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn sample_output_is_a_function_of_the_flags(seed in any::<u64>(), n in 1i64..200, format_ix in 0usize..3) {
        let format = [Format::Json, Format::Csv, Format::Text][format_ix];
        let state = StateArgs { p: 0.8, alpha: Some("1,0.5i,0.25".into()), gamma: None };
        let cfg = config(0.5, 12, seed);
        let a = emit(commands::sample(&state, n, false, &cfg).unwrap(), format);
        let b = emit(commands::sample(&state, n, false, &cfg).unwrap(), format);
        prop_assert_eq!(a, b);
    }
}

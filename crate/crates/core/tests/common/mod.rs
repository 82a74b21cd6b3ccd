#![allow(dead_code)]

use proptest::prelude::*;
use riccati_planar::registry::case_spec;
use riccati_planar::{CaseId, CaseParams, State};

pub fn cp(case: u32, values: &[f64]) -> CaseParams {
    CaseParams::new(CaseId::new(case).unwrap(), values).unwrap()
}

pub fn st(x: f64, y: f64) -> State {
    State::new(x, y).unwrap()
}

/// Log-uniform on `[lo, hi]`.
pub fn log_range(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

pub fn arb_case() -> impl Strategy<Value = CaseId> {
    proptest::sample::select(CaseId::all().collect::<Vec<_>>())
}

/// Any case with every parameter log-uniform on `[0.1, 10]`.
pub fn arb_params() -> impl Strategy<Value = CaseParams> {
    arb_case().prop_flat_map(|case| {
        let n = case_spec(case).param_names.len();
        proptest::collection::vec(log_range(0.1, 10.0), n)
            .prop_map(move |v| CaseParams::new(case, &v).unwrap())
    })
}

pub fn arb_params_for(case: u32) -> impl Strategy<Value = CaseParams> {
    let case = CaseId::new(case).unwrap();
    let n = case_spec(case).param_names.len();
    proptest::collection::vec(log_range(0.1, 10.0), n)
        .prop_map(move |v| CaseParams::new(case, &v).unwrap())
}

pub fn arb_state() -> impl Strategy<Value = State> {
    (log_range(1e-2, 1e2), log_range(1e-2, 1e2)).prop_map(|(x, y)| st(x, y))
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

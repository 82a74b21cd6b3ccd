//! Random parameter and initial-condition draws, region by region.
//!
//! Free parameters are log-uniform on `[0.1, 10]`. The parameter that selects a
//! region is drawn at least a factor [`MARGIN`] away from its boundary.

use rand::Rng;
use serde::Serialize;

use crate::model::{CaseId, CaseParams, State, Symbol};
use crate::registry::case_spec;

pub const MARGIN: f64 = 1.1;
pub const PARAM_RANGE: (f64, f64) = (0.1, 10.0);
pub const IC_RANGE: (f64, f64) = (1e-2, 1e2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    /// The case has a single region.
    Whole,
    Stable,
    Divergent,
    Saddle,
    Continuum,
}

/// Regions of a case.
pub fn regions(case: CaseId) -> &'static [Region] {
    match case.index() {
        3 | 24 | 19 => &[Region::Stable, Region::Divergent],
        4 => &[Region::Saddle, Region::Continuum, Region::Stable],
        13 => &[Region::Stable, Region::Saddle],
        _ => &[Region::Whole],
    }
}

pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Parameters for `case` drawn inside `region`.
///
/// Panics if `region` is not one of [`regions`]`(case)`.
pub fn draw_params<R: Rng + ?Sized>(rng: &mut R, case: CaseId, region: Region) -> CaseParams {
    assert!(
        regions(case).contains(&region),
        "{case} has no region {region:?}"
    );
    let spec = case_spec(case);
    let (lo, hi) = PARAM_RANGE;
    let mut values: Vec<f64> = spec
        .param_names
        .iter()
        .map(|_| log_uniform(rng, lo, hi))
        .collect();
    let mut set = |sym: Symbol, v: f64| {
        let i = spec
            .param_names
            .iter()
            .position(|s| *s == sym)
            .expect("symbol in signature");
        values[i] = v;
    };
    match (case.index(), region) {
        (3 | 24, _) => {
            let alpha2 = log_uniform(rng, lo, hi);
            let f = match region {
                Region::Stable => log_uniform(rng, MARGIN, 10.0),
                _ => log_uniform(rng, 0.1, 1.0 / MARGIN),
            };
            set(Symbol::Alpha2, alpha2);
            set(Symbol::Alpha1, alpha2 * f);
        }
        (4 | 19, Region::Stable) => set(Symbol::Gamma2, log_uniform(rng, 0.1, 1.0 / MARGIN)),
        (4 | 19, Region::Saddle | Region::Divergent) => {
            set(Symbol::Gamma2, log_uniform(rng, MARGIN, 3.0))
        }
        (4, Region::Continuum) => set(Symbol::Gamma2, 1.0),
        (13, Region::Stable) => set(Symbol::A2, log_uniform(rng, MARGIN, 10.0)),
        (13, Region::Saddle) => set(Symbol::A2, log_uniform(rng, 0.05, 1.0 / MARGIN)),
        _ => {}
    }
    CaseParams::new(case, &values).expect("drawn parameters are positive")
}

/// A strictly positive initial condition, log-uniform in both coordinates.
pub fn draw_ic<R: Rng + ?Sized>(rng: &mut R) -> State {
    let (lo, hi) = IC_RANGE;
    State::new(log_uniform(rng, lo, hi), log_uniform(rng, lo, hi)).expect("positive")
}

/// An initial condition on the x-axis.
pub fn draw_axis_ic<R: Rng + ?Sized>(rng: &mut R) -> State {
    let (lo, hi) = IC_RANGE;
    State::new(log_uniform(rng, lo, hi), 0.0).expect("nonnegative")
}

/// `n` initial conditions for `cp`; saddle regions get axis points in every
/// other slot.
pub fn draw_ics<R: Rng + ?Sized>(rng: &mut R, cp: &CaseParams, n: usize) -> Vec<State> {
    let saddle = matches!(
        crate::behavior::predict(cp).behavior,
        crate::behavior::Behavior::SaddleWithManifold { .. }
    );
    (0..n)
        .map(|i| {
            if saddle && i % 2 == 0 {
                draw_axis_ic(rng)
            } else {
                draw_ic(rng)
            }
        })
        .collect()
}

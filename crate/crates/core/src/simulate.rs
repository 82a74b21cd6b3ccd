//! Orbit iteration with detection of the asymptotic behaviors, and the harness
//! that checks [`crate::behavior::predict`] against simulated orbits.

use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::behavior::{predict, Behavior, BehaviorPrediction};
use crate::error::{Error, Result};
use crate::model::{step_case, CaseId, CaseParams, State};
use crate::registry::case_spec;

/// A candidate cycle must have drift below this fraction of its amplitude.
/// Orbits spiralling slowly into a fixed point have drift/amplitude of order
/// `1 − |λ|^p`; exact cycles sit at rounding level.
pub const CYCLE_DRIFT_RATIO: f64 = 1e-6;

/// Consecutive sub-tolerance steps required to declare convergence.
pub const CONVERGENCE_RUN: usize = 3;

/// Full cycles a candidate period must be sustained for.
pub const PERIOD_CYCLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimOptions {
    pub max_iters: usize,
    pub conv_tol: f64,
    pub period_tol: f64,
    pub diverge_y: f64,
    pub diverge_x: f64,
    /// Largest period searched for.
    pub window: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            max_iters: 100_000,
            conv_tol: 1e-9,
            period_tol: 1e-9,
            diverge_y: 1e10,
            diverge_x: 1e-10,
            window: 8,
        }
    }
}

impl SimOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("conv_tol", self.conv_tol),
            ("period_tol", self.period_tol),
            ("diverge_y", self.diverge_y),
            ("diverge_x", self.diverge_x),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidOptions(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidOptions("max_iters must be positive".into()));
        }
        if self.window < 2 {
            return Err(Error::InvalidOptions("window must be at least 2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "reason")]
pub enum StopReason {
    Converged {
        limit: State,
    },
    Periodic {
        period: usize,
        cycle: Vec<State>,
    },
    Diverged,
    MaxIters,
    /// A later step left the domain (zero denominator or overflow).
    HitForbiddenSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbit {
    pub states: Vec<State>,
    pub stop_reason: StopReason,
}

impl Orbit {
    pub fn last(&self) -> State {
        *self.states.last().expect("orbits are nonempty")
    }

    /// CSV with header `n,x,y`.
    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["n", "x", "y"])?;
        for (n, s) in self.states.iter().enumerate() {
            wr.write_record([n.to_string(), s.x().to_string(), s.y().to_string()])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "states": self.states,
            "stop_reason": self.stop_reason,
        })
    }
}

/// Index of the first state from which the orbit is bitwise constant.
fn constant_from(states: &[State]) -> usize {
    let last = states[states.len() - 1];
    let mut k = states.len() - 1;
    while k > 0 && states[k - 1] == last {
        k -= 1;
    }
    k
}

fn detect_period(states: &[State], opts: &SimOptions) -> Option<usize> {
    let len = states.len();
    for p in 2..=opts.window {
        let span = PERIOD_CYCLES * p;
        if len < span + 1 {
            break;
        }
        let start = len - 1 - span;
        let mut drift = 0.0f64;
        let mut ok = true;
        for m in (start..len - p).rev() {
            let d = states[m + p].sup_dist(&states[m]);
            if d > opts.period_tol {
                ok = false;
                break;
            }
            drift = drift.max(d);
        }
        if !ok {
            continue;
        }
        let amplitude = states[len - p..]
            .windows(2)
            .map(|w| w[1].sup_dist(&w[0]))
            .chain(std::iter::once(states[len - 1].sup_dist(&states[len - p])))
            .fold(0.0f64, f64::max);
        if amplitude > opts.conv_tol && drift <= CYCLE_DRIFT_RATIO * amplitude {
            return Some(p);
        }
    }
    None
}

/// A step of size `d` counts towards convergence when `d ≤ conv_tol` and the
/// geometric tail `d·q/(1 − q)` is also within `conv_tol`, with the contraction
/// rate `q` estimated from two-step ratios of the previous step sizes (so
/// alternating and rotating modes are handled). Steps at rounding level always
/// count.
fn step_is_settled(d: f64, previous: &[f64], scale: f64, conv_tol: f64) -> bool {
    if d > conv_tol {
        return false;
    }
    if d <= 16.0 * f64::EPSILON * scale.max(1.0) {
        return true;
    }
    let n = previous.len();
    if n < 3 {
        return false;
    }
    // previous[n-1] is the step just before d
    let r1 = d / previous[n - 2];
    let r2 = previous[n - 1] / previous[n - 3];
    let q = r1.max(r2).sqrt();
    q < 1.0 && d * q / (1.0 - q) <= conv_tol
}

/// Iterates `cp` from `ic` until convergence, a sustained cycle, divergence to
/// `(0, ∞)`, or `max_iters` steps.
///
/// Convergence needs [`CONVERGENCE_RUN`] consecutive settled steps (see
/// [`step_is_settled`]); a cycle of period `p ≤ window` must repeat within
/// `period_tol` over [`PERIOD_CYCLES`] cycles, move by more than `conv_tol`
/// within the cycle, and drift by less than [`CYCLE_DRIFT_RATIO`] of that
/// amplitude; divergence needs `y > diverge_y` and `x < diverge_x` at once.
pub fn iterate(cp: &CaseParams, ic: State, opts: &SimOptions) -> Result<Orbit> {
    opts.validate()?;
    if case_spec(cp.case()).forbidden_initials.contains(&ic) {
        return Err(Error::ForbiddenInitial {
            case: cp.case(),
            x: ic.x(),
            y: ic.y(),
        });
    }
    let mut states = Vec::with_capacity(opts.max_iters.min(4096) + 1);
    states.push(ic);
    let mut small_steps = 0usize;
    let mut step_sizes: Vec<f64> = Vec::with_capacity(4);

    for n in 0..opts.max_iters {
        let cur = states[n];
        let next = match step_case(cp, cur) {
            Ok(s) => s,
            Err(e) if n == 0 => return Err(e),
            Err(_) => {
                return Ok(Orbit {
                    states,
                    stop_reason: StopReason::HitForbiddenSet,
                })
            }
        };
        states.push(next);

        if next.y() > opts.diverge_y && next.x() < opts.diverge_x {
            return Ok(Orbit {
                states,
                stop_reason: StopReason::Diverged,
            });
        }
        let d = next.sup_dist(&cur);
        let settled = step_is_settled(d, &step_sizes, next.sup_norm(), opts.conv_tol);
        if step_sizes.len() == 4 {
            step_sizes.remove(0);
        }
        step_sizes.push(d);
        if settled {
            small_steps += 1;
            if small_steps >= CONVERGENCE_RUN {
                return Ok(Orbit {
                    states,
                    stop_reason: StopReason::Converged { limit: next },
                });
            }
        } else {
            small_steps = 0;
        }
        if let Some(period) = detect_period(&states, opts) {
            let cycle = states[states.len() - period..].to_vec();
            return Ok(Orbit {
                states,
                stop_reason: StopReason::Periodic { period, cycle },
            });
        }
    }
    Ok(Orbit {
        states,
        stop_reason: StopReason::MaxIters,
    })
}

/// What an orbit was seen to do.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum ObservedBehavior {
    /// Bitwise constant from step `within_steps` on (at most two).
    FiniteTimeEquilibrium {
        within_steps: u32,
        limit: State,
    },
    ConvergesTo {
        limit: State,
    },
    Periodic {
        period: usize,
        cycle: Vec<State>,
    },
    DivergesToZeroInfinity,
    Undetermined,
}

impl ObservedBehavior {
    pub fn label(&self) -> &'static str {
        match self {
            ObservedBehavior::FiniteTimeEquilibrium { .. } => "FiniteTimeEquilibrium",
            ObservedBehavior::ConvergesTo { .. } => "ConvergesTo",
            ObservedBehavior::Periodic { period: 2, .. } => "EventuallyPeriodic2",
            ObservedBehavior::Periodic { .. } => "Periodic",
            ObservedBehavior::DivergesToZeroInfinity => "DivergesToZeroInfinity",
            ObservedBehavior::Undetermined => "Undetermined",
        }
    }

    pub fn limit(&self) -> Option<State> {
        match self {
            ObservedBehavior::FiniteTimeEquilibrium { limit, .. }
            | ObservedBehavior::ConvergesTo { limit } => Some(*limit),
            _ => None,
        }
    }
}

pub fn observe(o: &Orbit, _opts: &SimOptions) -> ObservedBehavior {
    match &o.stop_reason {
        StopReason::Converged { limit } => {
            let k = constant_from(&o.states);
            if k <= 2 {
                ObservedBehavior::FiniteTimeEquilibrium {
                    within_steps: k as u32,
                    limit: *limit,
                }
            } else {
                ObservedBehavior::ConvergesTo { limit: *limit }
            }
        }
        StopReason::Periodic { period, cycle } => ObservedBehavior::Periodic {
            period: *period,
            cycle: cycle.clone(),
        },
        StopReason::Diverged => ObservedBehavior::DivergesToZeroInfinity,
        StopReason::MaxIters | StopReason::HitForbiddenSet => ObservedBehavior::Undetermined,
    }
}

/// Whether a limit point matches a predicted equilibrium within `10·conv_tol`,
/// scaled by `max(1, ‖eq‖∞)`.
pub fn limit_matches(limit: &State, eq: &State, opts: &SimOptions) -> bool {
    limit.sup_dist(eq) <= 10.0 * opts.conv_tol * eq.sup_norm().max(1.0)
}

/// Whether `observed`, from initial condition `ic`, is what `predicted` claims.
pub fn compatible(
    cp: &CaseParams,
    predicted: &Behavior,
    observed: &ObservedBehavior,
    ic: &State,
    opts: &SimOptions,
) -> bool {
    let converges_to = |eq: &State| {
        observed
            .limit()
            .is_some_and(|l| limit_matches(&l, eq, opts))
    };
    match predicted {
        Behavior::FiniteTimeEquilibrium {
            within_steps,
            equilibrium,
        } => matches!(
            observed,
            ObservedBehavior::FiniteTimeEquilibrium { within_steps: k, limit }
                if k <= within_steps && limit_matches(limit, equilibrium, opts)
        ),
        Behavior::EventuallyPeriodic2 { equilibrium } => match observed {
            ObservedBehavior::Periodic { period: 2, .. } => true,
            // degenerate cycle at y₀ = √α₂
            _ => converges_to(equilibrium),
        },
        Behavior::GloballyAsymptoticallyStable { equilibrium } => converges_to(equilibrium),
        Behavior::DivergesToZeroInfinity => {
            matches!(observed, ObservedBehavior::DivergesToZeroInfinity)
        }
        Behavior::SaddleWithManifold {
            saddle,
            interior_attractor,
            ..
        } => {
            if ic.y() == 0.0 {
                converges_to(saddle)
            } else {
                match interior_attractor {
                    Some(a) => converges_to(a),
                    None => matches!(observed, ObservedBehavior::DivergesToZeroInfinity),
                }
            }
        }
        Behavior::ContinuumOfEquilibria => {
            match State::new(cp.alpha1() / (cp.a1() + ic.y()), ic.y()) {
                Ok(p) => converges_to(&p),
                Err(_) => false,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub ic: State,
    pub observed: ObservedBehavior,
    pub agree: bool,
    /// Set when the orbit could not be started.
    pub error: Option<String>,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionReport {
    pub case: CaseId,
    pub params: Vec<f64>,
    pub prediction: BehaviorPrediction,
    pub rows: Vec<CheckRow>,
}

impl PredictionReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn agreement_rate(&self) -> f64 {
        if self.rows.is_empty() {
            return 1.0;
        }
        self.rows.iter().filter(|r| r.agree).count() as f64 / self.rows.len() as f64
    }

    pub fn undetermined(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.observed == ObservedBehavior::Undetermined)
            .count()
    }
}

/// Simulates every initial condition (in parallel, results in input order) and
/// compares each observation with the prediction for `cp`.
pub fn check_prediction(
    cp: &CaseParams,
    ic_samples: &[State],
    opts: &SimOptions,
) -> PredictionReport {
    let prediction = predict(cp);
    let rows = ic_samples
        .par_iter()
        .map(|ic| match iterate(cp, *ic, opts) {
            Ok(orbit) => {
                let observed = observe(&orbit, opts);
                let agree = compatible(cp, &prediction.behavior, &observed, ic, opts);
                CheckRow {
                    ic: *ic,
                    observed,
                    agree,
                    error: None,
                    steps: orbit.states.len() - 1,
                }
            }
            Err(e) => CheckRow {
                ic: *ic,
                observed: ObservedBehavior::Undetermined,
                agree: false,
                error: Some(e.to_string()),
                steps: 0,
            },
        })
        .collect();
    PredictionReport {
        case: cp.case(),
        params: cp.values().to_vec(),
        prediction,
        rows,
    }
}

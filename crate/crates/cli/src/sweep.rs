//! One-parameter sweeps and the location of behavior changes along them.

use std::fmt::Write as _;

use rayon::prelude::*;
use riccati_planar::registry::case_spec;
use riccati_planar::simulate::{compatible, iterate, observe, ObservedBehavior};
use riccati_planar::{predict, CaseId, CaseParams, SimOptions, State, Symbol};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{CliError, CliResult, ParamArgs};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub case: CaseId,
    pub varying: Symbol,
    /// `(lo, hi, steps)`; `lo == hi` gives a single point.
    pub range: (f64, f64, usize),
    /// Values in signature order; the slot of `varying` is overwritten.
    pub fixed: Vec<f64>,
    pub ics: Vec<State>,
}

impl SweepSpec {
    pub fn new(
        case: CaseId,
        varying: Symbol,
        range: (f64, f64, usize),
        fixed: Vec<f64>,
        ics: Vec<State>,
    ) -> CliResult<Self> {
        let spec = case_spec(case);
        if !spec.param_names.contains(&varying) {
            return Err(CliError::Validation(format!(
                "{varying} is not a parameter of case {case}"
            )));
        }
        if fixed.len() != spec.param_names.len() {
            return Err(riccati_planar::Error::ArityMismatch {
                case,
                expected: spec.param_names.len(),
                got: fixed.len(),
            }
            .into());
        }
        let (lo, hi, steps) = range;
        if !(lo > 0.0 && hi.is_finite() && hi >= lo) {
            return Err(CliError::Validation(format!(
                "sweep needs 0 < lo <= hi, got [{lo}, {hi}]"
            )));
        }
        if lo < hi && steps < 2 {
            return Err(CliError::Validation(format!(
                "sweep needs at least 2 steps, got {steps}"
            )));
        }
        let ics = if ics.is_empty() {
            vec![State::new(1.0, 1.0).expect("valid")]
        } else {
            ics
        };
        for ic in &ics {
            if spec.forbidden_initials.contains(ic) {
                return Err(riccati_planar::Error::ForbiddenInitial {
                    case,
                    x: ic.x(),
                    y: ic.y(),
                }
                .into());
            }
        }
        let s = SweepSpec {
            case,
            varying,
            range,
            fixed,
            ics,
        };
        // every other parameter is checked once here rather than per row
        s.params_at(lo)?;
        Ok(s)
    }

    pub fn from_args(
        case: CaseId,
        params: &ParamArgs,
        varying: Symbol,
        range: (f64, f64, usize),
        ics: Vec<State>,
    ) -> CliResult<Self> {
        let fixed = params.values_for(case, Some((varying, range.0)))?;
        SweepSpec::new(case, varying, range, fixed, ics)
    }

    /// Grid values, ascending; the endpoints are exact.
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi, steps) = self.range;
        if lo == hi {
            return vec![lo];
        }
        let last = steps - 1;
        (0..steps)
            .map(|i| {
                if i == last {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / last as f64
                }
            })
            .collect()
    }

    pub fn params_at(&self, value: f64) -> CliResult<CaseParams> {
        let pos = case_spec(self.case)
            .param_names
            .iter()
            .position(|&s| s == self.varying)
            .expect("checked in new");
        let mut v = self.fixed.clone();
        v[pos] = value;
        Ok(CaseParams::new(self.case, &v)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: f64,
    pub ic: State,
    pub predicted: &'static str,
    pub observed: ObservedBehavior,
    pub agree: bool,
}

impl SweepRow {
    pub fn limit(&self) -> Option<State> {
        self.observed.limit()
    }

    /// Coarse observed regime used to find flips; `None` when undetermined.
    /// Convergent orbits are split by whether the limit lies on the x-axis.
    pub fn regime(&self, opts: &SimOptions) -> Option<String> {
        match &self.observed {
            ObservedBehavior::FiniteTimeEquilibrium { limit, .. }
            | ObservedBehavior::ConvergesTo { limit } => {
                let on_axis = limit.y() <= 10.0 * opts.conv_tol;
                Some(
                    if on_axis {
                        "converges (axis)"
                    } else {
                        "converges (interior)"
                    }
                    .to_string(),
                )
            }
            ObservedBehavior::Periodic { period, .. } => Some(format!("periodic({period})")),
            ObservedBehavior::DivergesToZeroInfinity => Some("diverges".into()),
            ObservedBehavior::Undetermined => None,
        }
    }
}

/// A change of behavior between two consecutive determined grid values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flip {
    /// `"predicted"` or `"observed"`.
    pub source: &'static str,
    /// Initial condition, for observed flips.
    pub ic: Option<State>,
    pub from: String,
    pub to: String,
    pub lo: f64,
    pub hi: f64,
}

impl Flip {
    pub fn location(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub opts: SimOptions,
    /// Ordered by parameter value, then by initial condition.
    pub rows: Vec<SweepRow>,
}

/// Runs the sweep; grid points are evaluated in parallel.
pub fn cmd_sweep(spec: &SweepSpec, opts: &SimOptions) -> CliResult<SweepReport> {
    opts.validate()?;
    let jobs: Vec<(f64, State)> = spec
        .grid()
        .into_iter()
        .flat_map(|v| spec.ics.iter().map(move |ic| (v, *ic)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(v, ic)| {
            let cp = spec.params_at(v)?;
            let prediction = predict(&cp).behavior;
            let orbit = iterate(&cp, ic, opts)?;
            let observed = observe(&orbit, opts);
            let agree = compatible(&cp, &prediction, &observed, &ic, opts);
            Ok(SweepRow {
                param: v,
                ic,
                predicted: prediction.label(),
                observed,
                agree,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SweepReport {
        spec: spec.clone(),
        opts: *opts,
        rows,
    })
}

fn flips_along(
    points: impl Iterator<Item = (f64, Option<String>)>,
    source: &'static str,
    ic: Option<State>,
    out: &mut Vec<Flip>,
) {
    let mut last: Option<(f64, String)> = None;
    for (v, regime) in points {
        let Some(r) = regime else { continue };
        if let Some((lv, lr)) = &last {
            if *lr != r {
                out.push(Flip {
                    source,
                    ic,
                    from: lr.clone(),
                    to: r.clone(),
                    lo: *lv,
                    hi: v,
                });
            }
        }
        last = Some((v, r));
    }
}

impl SweepReport {
    /// Flips of the predicted kind along the grid, then flips of the observed
    /// regime for each initial condition. Undetermined rows are skipped.
    pub fn flips(&self) -> Vec<Flip> {
        let mut out = Vec::new();
        let first_ic = self.spec.ics[0];
        flips_along(
            self.rows
                .iter()
                .filter(|r| r.ic == first_ic)
                .map(|r| (r.param, Some(r.predicted.to_string()))),
            "predicted",
            None,
            &mut out,
        );
        for ic in &self.spec.ics {
            flips_along(
                self.rows
                    .iter()
                    .filter(|r| r.ic == *ic)
                    .map(|r| (r.param, r.regime(&self.opts))),
                "observed",
                Some(*ic),
                &mut out,
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["param", "predicted", "observed", "limit_x", "limit_y"])
            .expect("in-memory write");
        for r in &self.rows {
            let (lx, ly) = match r.limit() {
                Some(l) => (l.x().to_string(), l.y().to_string()),
                None => (String::new(), String::new()),
            };
            w.write_record([
                r.param.to_string(),
                r.predicted.to_string(),
                r.observed.label().to_string(),
                lx,
                ly,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "case": self.spec.case,
            "varying": self.spec.varying,
            "range": self.spec.range,
            "rows": self.rows,
            "flips": self.flips(),
        })
    }

    pub fn flip_summary(&self) -> String {
        let mut s = String::new();
        for f in self.flips() {
            let who = match f.ic {
                Some(ic) => format!("observed from {ic}"),
                None => "predicted".to_string(),
            };
            let _ = writeln!(
                s,
                "flip {who}: {} -> {} between {}={} and {}={}",
                f.from, f.to, self.spec.varying, f.lo, self.spec.varying, f.hi
            );
        }
        let disagree = self.rows.iter().filter(|r| !r.agree).count();
        if disagree > 0 {
            let _ = writeln!(
                s,
                "{disagree} of {} rows disagree with the prediction",
                self.rows.len()
            );
        }
        s
    }
}

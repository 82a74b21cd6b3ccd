//! Text and JSON renderings of `classify` and `verify`.

use std::fmt::Write as _;

use num_complex::Complex64;
use riccati_planar::conjugacy::{is_conjugate_case, log_grid, verify_conjugacy};
use riccati_planar::registry::case_spec;
use riccati_planar::simulate::ObservedBehavior;
use riccati_planar::stability::closed_form_is_tabulated;
use riccati_planar::{
    classify_local, equilibria, predict, spectrum_closed, spectrum_numeric, BehaviorPrediction,
    CaseParams, EquilibriumSet, LocalClass, Spectrum, State,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::CliResult;

/// Heights at which a continuum of equilibria is sampled.
const CONTINUUM_SAMPLES: [f64; 3] = [0.0, 1.0, 10.0];

pub fn params_json(cp: &CaseParams) -> Value {
    let names = case_spec(cp.case()).param_names;
    let map: serde_json::Map<String, Value> = names
        .iter()
        .zip(cp.values())
        .map(|(s, v)| (s.name().to_string(), json!(v)))
        .collect();
    Value::Object(map)
}

fn params_text(cp: &CaseParams) -> String {
    case_spec(cp.case())
        .param_names
        .iter()
        .zip(cp.values())
        .map(|(s, v)| format!("{}={v}", s.name()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn complex_text(z: Complex64) -> String {
    // drop the sign of zero
    let z = Complex64::new(z.re + 0.0, z.im + 0.0);
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}-{}i", z.re, -z.im)
    }
}

fn spectrum_text(s: &Spectrum) -> String {
    format!(
        "{{{}, {}}}",
        complex_text(s.lambda1),
        complex_text(s.lambda2)
    )
}

/// Points at which spectra are reported: the isolated equilibria, or a few
/// samples of a continuum.
fn report_points(set: &EquilibriumSet) -> Vec<State> {
    match set {
        EquilibriumSet::Continuum { .. } => CONTINUUM_SAMPLES
            .iter()
            .filter_map(|&v| set.continuum_point(v))
            .collect(),
        other => other.points(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointSpectrum {
    pub point: State,
    pub spectrum: Spectrum,
    pub class: LocalClass,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub params: CaseParams,
    pub prediction: BehaviorPrediction,
    pub equilibria: EquilibriumSet,
    pub spectra: Vec<PointSpectrum>,
}

pub fn classify(cp: &CaseParams) -> CliResult<Classification> {
    let eq = equilibria(cp);
    let spectra = report_points(&eq)
        .into_iter()
        .map(|p| {
            let s = spectrum_numeric(cp, p)?;
            Ok(PointSpectrum {
                point: p,
                spectrum: s,
                class: classify_local(&s),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Classification {
        params: cp.clone(),
        prediction: predict(cp),
        equilibria: eq,
        spectra,
    })
}

impl Classification {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "case": self.params.case(),
            "params": params_json(&self.params),
            "prediction": self.prediction,
            "equilibria": self.equilibria,
            "spectra": self.spectra,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let spec = case_spec(self.params.case());
        let _ = writeln!(s, "case        {}  {}", spec.id, spec.reduced_form);
        let _ = writeln!(s, "params      {}", params_text(&self.params));
        let _ = writeln!(s, "kind        {}", self.prediction.behavior.label());
        let _ = writeln!(s, "region      {}", self.prediction.region_note);
        for p in self.prediction.behavior.points() {
            let _ = writeln!(s, "at          {p}");
        }
        match &self.equilibria {
            EquilibriumSet::None => {
                let _ = writeln!(s, "equilibria  none");
            }
            EquilibriumSet::Continuum { alpha1, a1 } => {
                let _ = writeln!(s, "equilibria  continuum ({alpha1}/({a1}+v), v), v >= 0");
            }
            other => {
                for p in other.points() {
                    let _ = writeln!(s, "equilibrium {p}");
                }
            }
        }
        for ps in &self.spectra {
            let _ = writeln!(
                s,
                "spectrum    {} at {}  {:?}",
                spectrum_text(&ps.spectrum),
                ps.point,
                ps.class
            );
        }
        s
    }
}

/// One-line description of an observed behavior, e.g. `Periodic(2)`.
pub fn observed_summary(o: &ObservedBehavior) -> String {
    match o {
        ObservedBehavior::FiniteTimeEquilibrium {
            within_steps,
            limit,
        } => {
            format!("FiniteTimeEquilibrium({within_steps}) at {limit}")
        }
        ObservedBehavior::ConvergesTo { limit } => format!("ConvergesTo {limit}"),
        ObservedBehavior::Periodic { period, .. } => format!("Periodic({period})"),
        ObservedBehavior::DivergesToZeroInfinity => "DivergesToZeroInfinity".into(),
        ObservedBehavior::Undetermined => "Undetermined".into(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyCheck {
    pub grid: usize,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumCheck {
    pub point: State,
    pub closed: Spectrum,
    pub numeric: Spectrum,
    pub distance: f64,
    /// Whether the closed form is case-specific rather than generic.
    pub tabulated: bool,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub params: CaseParams,
    pub conjugacy: Option<ConjugacyCheck>,
    pub note: Option<&'static str>,
    pub spectra: Vec<SpectrumCheck>,
    pub eig_tol: f64,
    pub pass: bool,
}

fn not_applicable(cp: &CaseParams) -> &'static str {
    match cp.case().index() {
        1 | 5 | 9 => "constant y-equation; conjugacy check not applicable",
        _ => "autonomous Riccati; conjugacy check not applicable",
    }
}

/// Conjugacy residual on a `grid × grid` log grid (conjugate cases only) and
/// closed-form against numeric spectra at every reported equilibrium.
pub fn verify(
    cp: &CaseParams,
    grid: usize,
    conj_tol: f64,
    eig_tol: f64,
) -> CliResult<VerifyReport> {
    if grid == 0 {
        return Err(crate::CliError::Validation(
            "--grid must be positive".into(),
        ));
    }
    let (conjugacy, note) = if is_conjugate_case(cp.case()) {
        let residual = verify_conjugacy(cp, &log_grid(cp, grid))?;
        (
            Some(ConjugacyCheck {
                grid,
                residual,
                tol: conj_tol,
                pass: residual <= conj_tol,
            }),
            None,
        )
    } else {
        (None, Some(not_applicable(cp)))
    };
    let tabulated = closed_form_is_tabulated(cp);
    let spectra = report_points(&equilibria(cp))
        .into_iter()
        .map(|p| {
            let closed = spectrum_closed(cp, p)?;
            let numeric = spectrum_numeric(cp, p)?;
            let distance = closed.distance(&numeric);
            Ok(SpectrumCheck {
                point: p,
                closed,
                numeric,
                distance,
                tabulated,
                pass: distance <= eig_tol,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let pass = conjugacy.as_ref().is_none_or(|c| c.pass) && spectra.iter().all(|s| s.pass);
    Ok(VerifyReport {
        params: cp.clone(),
        conjugacy,
        note,
        spectra,
        eig_tol,
        pass,
    })
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "case": self.params.case(),
            "params": params_json(&self.params),
            "conjugacy": self.conjugacy,
            "note": self.note,
            "spectra": self.spectra,
            "eig_tol": self.eig_tol,
            "pass": self.pass,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "case        {}", self.params.case());
        let _ = writeln!(s, "params      {}", params_text(&self.params));
        match (&self.conjugacy, self.note) {
            (Some(c), _) => {
                let verdict = if c.pass { "ok" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "conjugacy   max residual {:e} on {}x{} grid (tol {:e}) {verdict}",
                    c.residual, c.grid, c.grid, c.tol
                );
            }
            (None, Some(note)) => {
                let _ = writeln!(s, "conjugacy   {note}");
            }
            (None, None) => {}
        }
        if self.spectra.is_empty() {
            let _ = writeln!(s, "spectra     no equilibrium");
        }
        for c in &self.spectra {
            let verdict = if c.pass { "ok" } else { "FAIL" };
            let _ = writeln!(
                s,
                "spectrum    at {}: closed {} numeric {} diff {:e} (tol {:e}) {verdict}",
                c.point,
                spectrum_text(&c.closed),
                spectrum_text(&c.numeric),
                c.distance,
                self.eig_tol
            );
        }
        let _ = writeln!(s, "result      {}", if self.pass { "pass" } else { "FAIL" });
        s
    }
}

//! States, parameters and the forward map of the planar system
//!
//! ```text
//! x' = alpha1 / (A1 + y)
//! y' = (alpha2 + beta2 x + gamma2 y) / (A2 + B2 x + C2 y)
//! ```
//!
//! together with its Jacobian. Each special case is evaluated from its own
//! reduced y-map; [`step_general`] evaluates the full eight-coefficient form
//! and agrees with [`step_case`] under [`CaseParams::embedded`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registry::{self, YMapKind};

/// Coefficient symbols of the general system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    #[serde(rename = "alpha1")]
    Alpha1,
    A1,
    #[serde(rename = "alpha2")]
    Alpha2,
    #[serde(rename = "beta2")]
    Beta2,
    #[serde(rename = "gamma2")]
    Gamma2,
    A2,
    B2,
    C2,
}

impl Symbol {
    pub const ALL: [Symbol; 8] = [
        Symbol::Alpha1,
        Symbol::A1,
        Symbol::Alpha2,
        Symbol::Beta2,
        Symbol::Gamma2,
        Symbol::A2,
        Symbol::B2,
        Symbol::C2,
    ];

    /// ASCII name, as used by the CLI flags and JSON output.
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Alpha1 => "alpha1",
            Symbol::A1 => "A1",
            Symbol::Alpha2 => "alpha2",
            Symbol::Beta2 => "beta2",
            Symbol::Gamma2 => "gamma2",
            Symbol::A2 => "A2",
            Symbol::B2 => "B2",
            Symbol::C2 => "C2",
        }
    }

    pub fn greek(self) -> &'static str {
        match self {
            Symbol::Alpha1 => "α₁",
            Symbol::A1 => "A₁",
            Symbol::Alpha2 => "α₂",
            Symbol::Beta2 => "β₂",
            Symbol::Gamma2 => "γ₂",
            Symbol::A2 => "A₂",
            Symbol::B2 => "B₂",
            Symbol::C2 => "C₂",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symbol::ALL
            .into_iter()
            .find(|sym| sym.name() == s || sym.greek() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown parameter symbol '{s}'")))
    }
}

/// Identifier of one of the seventeen Riccati-reducible special cases `(11,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct CaseId(u8);

impl CaseId {
    pub const INDICES: [u8; 17] = [1, 2, 3, 4, 5, 7, 9, 10, 11, 13, 17, 19, 20, 22, 24, 28, 32];

    pub fn new(index: u32) -> Result<Self> {
        if Self::INDICES.iter().any(|&i| u32::from(i) == index) {
            Ok(CaseId(index as u8))
        } else {
            Err(Error::UnknownCase(index))
        }
    }

    /// Caller guarantees `index` is one of [`CaseId::INDICES`].
    pub(crate) const fn from_raw(index: u8) -> Self {
        CaseId(index)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = CaseId> {
        Self::INDICES.into_iter().map(CaseId)
    }
}

impl TryFrom<u32> for CaseId {
    type Error = Error;

    fn try_from(v: u32) -> Result<Self> {
        CaseId::new(v)
    }
}

impl From<CaseId> for u32 {
    fn from(c: CaseId) -> u32 {
        u32::from(c.0)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(11,{})", self.0)
    }
}

/// Accepts `"11,19"`, `"(11,19)"` and the bare index `"19"`.
impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let idx = match t.split_once(',') {
            Some((sys, k)) if sys.trim() == "11" => k.trim(),
            Some(_) => {
                return Err(Error::InvalidParameters(format!(
                    "not a system #11 case: '{s}'"
                )))
            }
            None => t,
        };
        let index: u32 = idx
            .parse()
            .map_err(|_| Error::InvalidParameters(format!("cannot parse case id '{s}'")))?;
        CaseId::new(index)
    }
}

/// A point of the closed nonnegative quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct State {
    x: f64,
    y: f64,
}

#[derive(Deserialize)]
struct RawState {
    x: f64,
    y: f64,
}

impl TryFrom<RawState> for State {
    type Error = Error;

    fn try_from(r: RawState) -> Result<Self> {
        State::new(r.x, r.y)
    }
}

impl State {
    /// Rejects negative, NaN and infinite coordinates.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && x >= 0.0 && y >= 0.0 {
            // normalise -0.0
            Ok(State {
                x: x + 0.0,
                y: y + 0.0,
            })
        } else {
            Err(Error::InvalidState { x, y })
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn sup_norm(&self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    /// `‖self − other‖∞`.
    pub fn sup_dist(&self, other: &State) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Coefficients of the general eight-parameter system.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FullParams {
    pub alpha1: f64,
    pub a1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub gamma2: f64,
    pub a2: f64,
    pub b2: f64,
    pub c2: f64,
}

impl FullParams {
    /// Checks the sign conditions of the general system.
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.alpha1,
            self.a1,
            self.alpha2,
            self.beta2,
            self.gamma2,
            self.a2,
            self.b2,
            self.c2,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameters(
                "coefficients must be finite".into(),
            ));
        }
        if !(self.alpha1 > 0.0 && self.a1 > 0.0) {
            return Err(Error::InvalidParameters(
                "alpha1 and A1 must be positive".into(),
            ));
        }
        if all[2..].iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidParameters(
                "alpha2, beta2, gamma2, A2, B2, C2 must be nonnegative".into(),
            ));
        }
        if self.alpha2 + self.beta2 + self.gamma2 <= 0.0 {
            return Err(Error::InvalidParameters(
                "alpha2 + beta2 + gamma2 must be positive".into(),
            ));
        }
        if self.a2 + self.b2 + self.c2 <= 0.0 {
            return Err(Error::InvalidParameters(
                "A2 + B2 + C2 must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Row-major 2×2 Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jacobian2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Jacobian2 {
    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }
}

/// The validated coefficients of one special case, in the order of the case's
/// parameter signature (see [`crate::registry::case_spec`]).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseParams {
    case: CaseId,
    values: Vec<f64>,
    #[serde(skip)]
    embedded: FullParams,
}

impl CaseParams {
    /// Shorthand for [`registry::validate`].
    pub fn new(case: CaseId, values: &[f64]) -> Result<Self> {
        registry::validate(case, values)
    }

    pub(crate) fn from_validated(case: CaseId, values: Vec<f64>) -> Self {
        let embedded = embed(case, &values);
        CaseParams {
            case,
            values,
            embedded,
        }
    }

    pub fn case(&self) -> CaseId {
        self.case
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value of `sym`, if it belongs to this case's signature.
    pub fn get(&self, sym: Symbol) -> Option<f64> {
        registry::case_spec(self.case)
            .param_names
            .iter()
            .position(|&s| s == sym)
            .map(|i| self.values[i])
    }

    /// Copy of these parameters with `sym` replaced.
    pub fn with(&self, sym: Symbol, value: f64) -> Result<Self> {
        let pos = registry::case_spec(self.case)
            .param_names
            .iter()
            .position(|&s| s == sym)
            .ok_or_else(|| {
                Error::InvalidParameters(format!("{sym} is not a parameter of case {}", self.case))
            })?;
        let mut values = self.values.clone();
        values[pos] = value;
        registry::validate(self.case, &values)
    }

    /// The general-system coefficients reproducing this case's reduced form.
    /// Absent coefficients are zero; a bare variable in a denominator or a
    /// missing denominator gets coefficient one.
    pub fn embedded(&self) -> &FullParams {
        &self.embedded
    }

    pub fn alpha1(&self) -> f64 {
        self.embedded.alpha1
    }

    pub fn a1(&self) -> f64 {
        self.embedded.a1
    }

    /// Right edge of the x-range: every image has `x ∈ (0, alpha1/A1]`.
    pub fn x_max(&self) -> f64 {
        self.embedded.alpha1 / self.embedded.a1
    }

    /// Evaluates the case map on raw coordinates, without requiring them to be
    /// nonnegative. Used for finite differences straddling the boundary.
    pub fn eval(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        let p = &self.embedded;
        let x_next = p.alpha1 / (p.a1 + y);
        Ok((x_next, self.eval_y(x, y)?))
    }

    fn eval_y(&self, x: f64, y: f64) -> Result<f64> {
        let p = &self.embedded;
        let zero = || Error::ZeroDenominator {
            case: Some(self.case),
        };
        let v = match registry::case_spec(self.case).y_map {
            YMapKind::Constant => match self.case.index() {
                1 => p.alpha2 / p.a2,
                5 => p.beta2 / p.b2,
                _ => p.gamma2 / p.c2,
            },
            YMapKind::ReciprocalY => {
                if y == 0.0 {
                    return Err(zero());
                }
                p.alpha2 / y
            }
            YMapKind::ReciprocalX => {
                if x == 0.0 {
                    return Err(zero());
                }
                p.alpha2 / x
            }
            YMapKind::LinearY => p.gamma2 * y,
            YMapKind::LinearX => p.beta2 * x,
            YMapKind::RiccatiY => p.alpha2 / (p.a2 + y),
            YMapKind::RiccatiXnum => p.alpha2 / (p.a2 + x),
            YMapKind::RiccatiYfull => (p.alpha2 + p.gamma2 * y) / (p.a2 + y),
            YMapKind::RiccatiXfull => (p.alpha2 + x) / (p.a2 + x),
            YMapKind::AffineY => p.alpha2 + p.gamma2 * y,
            YMapKind::AffineX => p.alpha2 + x,
            YMapKind::RatioY => {
                if y == 0.0 {
                    return Err(zero());
                }
                (p.alpha2 + p.gamma2 * y) / y
            }
            YMapKind::RatioX => {
                if x == 0.0 {
                    return Err(zero());
                }
                (p.alpha2 + x) / x
            }
            YMapKind::SaturatingY => y / (p.a2 + y),
            YMapKind::SaturatingX => x / (p.a2 + x),
        };
        Ok(v)
    }

    /// Partial derivatives `(∂y'/∂x, ∂y'/∂y)` of the reduced y-map.
    fn y_partials(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        let p = &self.embedded;
        let zero = || Error::ZeroDenominator {
            case: Some(self.case),
        };
        let d = match registry::case_spec(self.case).y_map {
            YMapKind::Constant => (0.0, 0.0),
            YMapKind::ReciprocalY => {
                if y == 0.0 {
                    return Err(zero());
                }
                (0.0, -p.alpha2 / (y * y))
            }
            YMapKind::ReciprocalX => {
                if x == 0.0 {
                    return Err(zero());
                }
                (-p.alpha2 / (x * x), 0.0)
            }
            YMapKind::LinearY => (0.0, p.gamma2),
            YMapKind::LinearX => (p.beta2, 0.0),
            YMapKind::RiccatiY => (0.0, -p.alpha2 / ((p.a2 + y) * (p.a2 + y))),
            YMapKind::RiccatiXnum => (-p.alpha2 / ((p.a2 + x) * (p.a2 + x)), 0.0),
            YMapKind::RiccatiYfull => (
                0.0,
                (p.gamma2 * p.a2 - p.alpha2) / ((p.a2 + y) * (p.a2 + y)),
            ),
            YMapKind::RiccatiXfull => ((p.a2 - p.alpha2) / ((p.a2 + x) * (p.a2 + x)), 0.0),
            YMapKind::AffineY => (0.0, p.gamma2),
            YMapKind::AffineX => (1.0, 0.0),
            YMapKind::RatioY => {
                if y == 0.0 {
                    return Err(zero());
                }
                (0.0, -p.alpha2 / (y * y))
            }
            YMapKind::RatioX => {
                if x == 0.0 {
                    return Err(zero());
                }
                (-p.alpha2 / (x * x), 0.0)
            }
            YMapKind::SaturatingY => (0.0, p.a2 / ((p.a2 + y) * (p.a2 + y))),
            YMapKind::SaturatingX => (p.a2 / ((p.a2 + x) * (p.a2 + x)), 0.0),
        };
        Ok(d)
    }
}

fn embed(case: CaseId, values: &[f64]) -> FullParams {
    let spec = registry::case_spec(case);
    let mut p = FullParams::default();
    for (&sym, &v) in spec.param_names.iter().zip(values) {
        match sym {
            Symbol::Alpha1 => p.alpha1 = v,
            Symbol::A1 => p.a1 = v,
            Symbol::Alpha2 => p.alpha2 = v,
            Symbol::Beta2 => p.beta2 = v,
            Symbol::Gamma2 => p.gamma2 = v,
            Symbol::A2 => p.a2 = v,
            Symbol::B2 => p.b2 = v,
            Symbol::C2 => p.c2 = v,
        }
    }
    match spec.y_map {
        YMapKind::Constant => {}
        YMapKind::ReciprocalY | YMapKind::RatioY => p.c2 = 1.0,
        YMapKind::ReciprocalX => p.b2 = 1.0,
        YMapKind::LinearY | YMapKind::LinearX | YMapKind::AffineY => p.a2 = 1.0,
        YMapKind::RiccatiY | YMapKind::RiccatiYfull => p.c2 = 1.0,
        YMapKind::RiccatiXnum => p.b2 = 1.0,
        YMapKind::RiccatiXfull => {
            p.beta2 = 1.0;
            p.b2 = 1.0;
        }
        YMapKind::AffineX => {
            p.beta2 = 1.0;
            p.a2 = 1.0;
        }
        YMapKind::RatioX => {
            p.beta2 = 1.0;
            p.b2 = 1.0;
        }
        YMapKind::SaturatingY => {
            p.gamma2 = 1.0;
            p.c2 = 1.0;
        }
        YMapKind::SaturatingX => {
            p.beta2 = 1.0;
            p.b2 = 1.0;
        }
    }
    p
}

fn finite_state(x: f64, y: f64) -> Result<State> {
    State::new(x, y)
}

/// One step of the general system.
pub fn step_general(p: &FullParams, s: State) -> Result<State> {
    let den = p.a2 + p.b2 * s.x + p.c2 * s.y;
    if den == 0.0 {
        return Err(Error::ZeroDenominator { case: None });
    }
    let x = p.alpha1 / (p.a1 + s.y);
    let y = (p.alpha2 + p.beta2 * s.x + p.gamma2 * s.y) / den;
    finite_state(x, y)
}

/// One step of a special case, evaluated from its reduced form.
pub fn step_case(cp: &CaseParams, s: State) -> Result<State> {
    let (x, y) = cp.eval(s.x, s.y)?;
    finite_state(x, y)
}

/// Jacobian of the case map at `s`. `a11` is always zero since `x'` does not
/// depend on `x`.
pub fn jacobian(cp: &CaseParams, s: State) -> Result<Jacobian2> {
    jacobian_at(cp, s.x, s.y)
}

pub(crate) fn jacobian_at(cp: &CaseParams, x: f64, y: f64) -> Result<Jacobian2> {
    let (a21, a22) = cp.y_partials(x, y)?;
    let den = cp.a1() + y;
    Ok(Jacobian2 {
        a11: 0.0,
        a12: -cp.alpha1() / (den * den),
        a21,
        a22,
    })
}

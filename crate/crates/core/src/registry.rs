//! Static table of the seventeen special cases: parameter signatures, the
//! shape of the y-map, forbidden initial conditions, and the rescaling that
//! brings the four-parameter form of `(11,22)` to its three-parameter form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{step_general, CaseId, CaseParams, FullParams, State, Symbol};

/// Shape of the second equation of a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum YMapKind {
    /// `y' = c`
    Constant,
    /// `y' = α₂/y`
    ReciprocalY,
    /// `y' = α₂/x`
    ReciprocalX,
    /// `y' = γ₂y`
    LinearY,
    /// `y' = β₂x`
    LinearX,
    /// `y' = α₂/(A₂+y)`
    RiccatiY,
    /// `y' = (α₂+γ₂y)/(A₂+y)`
    RiccatiYfull,
    /// `y' = α₂/(A₂+x)`
    RiccatiXnum,
    /// `y' = (α₂+x)/(A₂+x)`
    RiccatiXfull,
    /// `y' = α₂+γ₂y`
    AffineY,
    /// `y' = α₂+x`
    AffineX,
    /// `y' = (α₂+γ₂y)/y`
    RatioY,
    /// `y' = (α₂+x)/x`
    RatioX,
    /// `y' = y/(A₂+y)`
    SaturatingY,
    /// `y' = x/(A₂+x)`
    SaturatingX,
}

/// Initial conditions at which the first step is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Forbidden {
    Nothing,
    YZero,
    XZero,
}

impl Forbidden {
    pub fn contains(self, s: &State) -> bool {
        match self {
            Forbidden::Nothing => false,
            Forbidden::YZero => s.y() == 0.0,
            Forbidden::XZero => s.x() == 0.0,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Forbidden::Nothing => "none",
            Forbidden::YZero => "y0 = 0",
            Forbidden::XZero => "x0 = 0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseSpec {
    pub id: CaseId,
    pub param_names: &'static [Symbol],
    pub y_map: YMapKind,
    /// The y-equation in ASCII.
    pub reduced_form: &'static str,
    pub forbidden_initials: Forbidden,
}

use Symbol::{Alpha1, Alpha2, Beta2, Gamma2, A1, A2, B2, C2};

const fn spec(
    id: u8,
    param_names: &'static [Symbol],
    y_map: YMapKind,
    reduced_form: &'static str,
    forbidden_initials: Forbidden,
) -> CaseSpec {
    CaseSpec {
        id: CaseId::from_raw(id),
        param_names,
        y_map,
        reduced_form,
        forbidden_initials,
    }
}

static TABLE: [CaseSpec; 17] = [
    spec(
        1,
        &[Alpha1, A1, Alpha2, A2],
        YMapKind::Constant,
        "y' = alpha2/A2",
        Forbidden::Nothing,
    ),
    spec(
        2,
        &[Alpha1, A1, Alpha2],
        YMapKind::ReciprocalY,
        "y' = alpha2/y",
        Forbidden::YZero,
    ),
    spec(
        3,
        &[Alpha1, A1, Alpha2],
        YMapKind::ReciprocalX,
        "y' = alpha2/x",
        Forbidden::XZero,
    ),
    spec(
        4,
        &[Alpha1, A1, Gamma2],
        YMapKind::LinearY,
        "y' = gamma2*y",
        Forbidden::Nothing,
    ),
    spec(
        5,
        &[Alpha1, A1, Beta2, B2],
        YMapKind::Constant,
        "y' = beta2/B2",
        Forbidden::Nothing,
    ),
    spec(
        7,
        &[Alpha1, A1, Beta2],
        YMapKind::LinearX,
        "y' = beta2*x",
        Forbidden::Nothing,
    ),
    spec(
        9,
        &[Alpha1, A1, Gamma2, C2],
        YMapKind::Constant,
        "y' = gamma2/C2",
        Forbidden::Nothing,
    ),
    spec(
        10,
        &[Alpha1, A1, Alpha2, A2],
        YMapKind::RiccatiY,
        "y' = alpha2/(A2 + y)",
        Forbidden::Nothing,
    ),
    spec(
        11,
        &[Alpha1, A1, Alpha2, A2],
        YMapKind::RiccatiXnum,
        "y' = alpha2/(A2 + x)",
        Forbidden::Nothing,
    ),
    spec(
        13,
        &[Alpha1, A1, A2],
        YMapKind::SaturatingY,
        "y' = y/(A2 + y)",
        Forbidden::Nothing,
    ),
    spec(
        17,
        &[Alpha1, A1, A2],
        YMapKind::SaturatingX,
        "y' = x/(A2 + x)",
        Forbidden::Nothing,
    ),
    spec(
        19,
        &[Alpha1, A1, Alpha2, Gamma2],
        YMapKind::AffineY,
        "y' = alpha2 + gamma2*y",
        Forbidden::Nothing,
    ),
    spec(
        20,
        &[Alpha1, A1, Alpha2, Gamma2],
        YMapKind::RatioY,
        "y' = (alpha2 + gamma2*y)/y",
        Forbidden::YZero,
    ),
    spec(
        22,
        &[Alpha1, A1, Alpha2],
        YMapKind::AffineX,
        "y' = alpha2 + x",
        Forbidden::Nothing,
    ),
    spec(
        24,
        &[Alpha1, A1, Alpha2],
        YMapKind::RatioX,
        "y' = (alpha2 + x)/x",
        Forbidden::XZero,
    ),
    spec(
        28,
        &[Alpha1, A1, Alpha2, Gamma2, A2],
        YMapKind::RiccatiYfull,
        "y' = (alpha2 + gamma2*y)/(A2 + y)",
        Forbidden::Nothing,
    ),
    spec(
        32,
        &[Alpha1, A1, Alpha2, A2],
        YMapKind::RiccatiXfull,
        "y' = (alpha2 + x)/(A2 + x)",
        Forbidden::Nothing,
    ),
];

/// The x-equation shared by every case.
pub const X_MAP: &str = "x' = alpha1/(A1 + y)";

pub fn case_spec(id: CaseId) -> &'static CaseSpec {
    TABLE
        .iter()
        .find(|s| s.id == id)
        .expect("every CaseId has a table entry")
}

/// Looks up a case by its raw index.
pub fn case_spec_by_index(index: u32) -> Result<&'static CaseSpec> {
    CaseId::new(index).map(case_spec)
}

pub fn all_specs() -> &'static [CaseSpec] {
    &TABLE
}

/// Checks arity and strict positivity of `values` against the case signature.
pub fn validate(id: CaseId, values: &[f64]) -> Result<CaseParams> {
    let spec = case_spec(id);
    if values.len() != spec.param_names.len() {
        return Err(Error::ArityMismatch {
            case: id,
            expected: spec.param_names.len(),
            got: values.len(),
        });
    }
    for (&symbol, &value) in spec.param_names.iter().zip(values) {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveParameter { symbol, value });
        }
    }
    Ok(CaseParams::from_validated(id, values.to_vec()))
}

#[derive(Serialize)]
struct TableEntry {
    id: String,
    index: u8,
    param_names: Vec<&'static str>,
    x_map: &'static str,
    y_map: &'static str,
    y_map_kind: YMapKind,
    forbidden_initials: &'static str,
}

/// The case table as a versioned JSON document.
pub fn case_table_json() -> serde_json::Value {
    let cases: Vec<TableEntry> = TABLE
        .iter()
        .map(|s| TableEntry {
            id: s.id.to_string(),
            index: s.id.index(),
            param_names: s.param_names.iter().map(|p| p.name()).collect(),
            x_map: X_MAP,
            y_map: s.reduced_form,
            y_map_kind: s.y_map,
            forbidden_initials: s.forbidden_initials.describe(),
        })
        .collect();
    serde_json::json!({ "schema": 1, "cases": cases })
}

/// `(11,22)` before rescaling: `x' = α₁/(A₁+y)`, `y' = α₂ + β₂x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Case22WithGain {
    pub alpha1: f64,
    pub a1: f64,
    pub alpha2: f64,
    pub beta2: f64,
}

impl Case22WithGain {
    pub fn new(alpha1: f64, a1: f64, alpha2: f64, beta2: f64) -> Result<Self> {
        for (symbol, value) in [(Alpha1, alpha1), (A1, a1), (Alpha2, alpha2), (Beta2, beta2)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveParameter { symbol, value });
            }
        }
        Ok(Case22WithGain {
            alpha1,
            a1,
            alpha2,
            beta2,
        })
    }

    pub fn full_params(&self) -> FullParams {
        FullParams {
            alpha1: self.alpha1,
            a1: self.a1,
            alpha2: self.alpha2,
            beta2: self.beta2,
            a2: 1.0,
            ..FullParams::default()
        }
    }

    pub fn step(&self, s: State) -> Result<State> {
        step_general(&self.full_params(), s)
    }

    /// Image of `s` under the change of variables `(x, y) ↦ (β₂x, y)`.
    pub fn scale_state(&self, s: State) -> Result<State> {
        State::new(self.beta2 * s.x(), s.y())
    }
}

/// Rescales `x` by `β₂`, turning the gain form of `(11,22)` into the
/// three-parameter form `(α₁β₂, A₁, α₂)`.
pub fn normalize_1122(p: &Case22WithGain) -> Result<CaseParams> {
    validate(CaseId::from_raw(22), &[p.alpha1 * p.beta2, p.a1, p.alpha2])
}

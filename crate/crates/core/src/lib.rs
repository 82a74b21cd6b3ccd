//! Riccati-reducible special cases of the planar rational system
//!
//! ```text
//! x(n+1) = α₁ / (A₁ + y(n))
//! y(n+1) = (α₂ + β₂ x(n) + γ₂ y(n)) / (A₂ + B₂ x(n) + C₂ y(n))
//! ```
//!
//! For each of the seventeen cases `(11,k)` the crate provides closed-form
//! equilibria, linearized spectra, the predicted global behavior, the
//! conjugacy to a scalar Riccati or affine recurrence, and an orbit simulator
//! that checks every prediction numerically.

pub mod behavior;
pub mod conjugacy;
pub mod equilibria;
pub mod error;
pub mod model;
pub mod oracle;
pub mod registry;
pub mod sample;
pub mod simulate;
pub mod stability;

pub use behavior::{predict, Behavior, BehaviorPrediction};
pub use equilibria::{equilibria, EquilibriumSet};
pub use error::{Error, Result};
pub use model::{
    jacobian, step_case, step_general, CaseId, CaseParams, FullParams, Jacobian2, State, Symbol,
};
pub use registry::{case_spec, validate};
pub use simulate::{
    check_prediction, iterate, observe, ObservedBehavior, Orbit, SimOptions, StopReason,
};
pub use stability::{classify_local, spectrum_closed, spectrum_numeric, LocalClass, Spectrum};

//! Linearized stability at equilibria.
//!
//! Because `x'` does not depend on `x`, every Jacobian has `a11 = 0` and the
//! characteristic polynomial reduces to `λ² − a22·λ − a12·a21`.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{jacobian, step_case, CaseParams, Jacobian2, State};

/// `| |λ| − 1 |` at or below this counts as on the unit circle.
pub const NONHYPERBOLIC_TOL: f64 = 1e-9;

/// Scaled fixed-point residual accepted by the spectrum routines.
pub const FIXED_POINT_TOL: f64 = 1e-8;

/// Eigenvalue pair sorted by modulus (ties broken by real, then imaginary part).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spectrum {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
}

impl Spectrum {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        let key = |z: &Complex64| (z.norm(), z.re, z.im);
        let (ka, kb) = (key(&a), key(&b));
        if matches!(ka.partial_cmp(&kb), Some(Ordering::Greater)) {
            Spectrum {
                lambda1: b,
                lambda2: a,
            }
        } else {
            Spectrum {
                lambda1: a,
                lambda2: b,
            }
        }
    }

    pub fn real(a: f64, b: f64) -> Self {
        Spectrum::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
    }

    pub fn moduli(&self) -> (f64, f64) {
        (self.lambda1.norm(), self.lambda2.norm())
    }

    /// Largest componentwise distance to `other` under the better of the two
    /// pairings, so equal-modulus pairs compare stably.
    pub fn distance(&self, other: &Spectrum) -> f64 {
        let straight = (self.lambda1 - other.lambda1)
            .norm()
            .max((self.lambda2 - other.lambda2).norm());
        let crossed = (self.lambda1 - other.lambda2)
            .norm()
            .max((self.lambda2 - other.lambda1).norm());
        straight.min(crossed)
    }
}

/// Roots of `λ² − t·λ + d = 0`, computed without cancellation.
pub(crate) fn roots_from_trace_det(t: f64, d: f64) -> Spectrum {
    let disc = t * t - 4.0 * d;
    if disc >= 0.0 {
        if t == 0.0 {
            let r = (-d).sqrt();
            return Spectrum::real(-r, r);
        }
        let q = 0.5 * (t + t.signum() * disc.sqrt());
        Spectrum::real(q, d / q)
    } else {
        let im = 0.5 * (-disc).sqrt();
        Spectrum::new(Complex64::new(0.5 * t, -im), Complex64::new(0.5 * t, im))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocalClass {
    LocallyAsymptoticallyStable,
    Saddle,
    Nonhyperbolic,
    Unstable,
}

fn check_fixed_point(cp: &CaseParams, eq: State) -> Result<()> {
    let next = step_case(cp, eq)?;
    let residual = next.sup_dist(&eq) / eq.sup_norm().max(1.0);
    if residual <= FIXED_POINT_TOL {
        Ok(())
    } else {
        Err(Error::NotAFixedPoint { residual })
    }
}

/// Eigenvalues of the Jacobian at `eq` from its trace and determinant.
pub fn spectrum_numeric(cp: &CaseParams, eq: State) -> Result<Spectrum> {
    check_fixed_point(cp, eq)?;
    let j = jacobian(cp, eq)?;
    Ok(roots_from_trace_det(j.trace(), j.det()))
}

/// Coefficients `(c1, c0)` of `λ² + c1·λ + c0`.
pub fn char_poly(j: &Jacobian2) -> (f64, f64) {
    (-j.trace(), j.det())
}

/// `±√q` when `q ≥ 0`, `±i√(−q)` otherwise.
fn plus_minus_sqrt(q: f64) -> Spectrum {
    if q >= 0.0 {
        let r = q.sqrt();
        Spectrum::real(-r, r)
    } else {
        let r = (-q).sqrt();
        Spectrum::new(Complex64::new(0.0, -r), Complex64::new(0.0, r))
    }
}

/// Whether the case's closed-form spectrum comes from its own
/// characteristic polynomial. For the constant-y cases and `(11,32)` it is
/// derived from the Jacobian pattern instead.
pub fn closed_form_is_tabulated(cp: &CaseParams) -> bool {
    !matches!(cp.case().index(), 1 | 5 | 9 | 32)
}

/// Closed-form eigenvalues at the equilibrium `eq`, one formula per case.
pub fn spectrum_closed(cp: &CaseParams, eq: State) -> Result<Spectrum> {
    check_fixed_point(cp, eq)?;
    let p = cp.embedded();
    let (x, y) = (eq.x(), eq.y());
    let a1 = p.a1;
    let s = match cp.case().index() {
        1 | 5 | 9 => Spectrum::real(0.0, 0.0),
        2 => Spectrum::real(0.0, -1.0),
        3 => plus_minus_sqrt(p.alpha2 / p.alpha1),
        4 | 19 => Spectrum::real(0.0, p.gamma2),
        // λ² + ȳ/(A₁+ȳ) = 0
        7 => plus_minus_sqrt(-y / (a1 + y)),
        10 => Spectrum::real(0.0, -y / (p.a2 + y)),
        // λ² − x̄ȳ/((A₁+ȳ)(A₂+x̄)) = 0
        11 => plus_minus_sqrt(x * y / ((a1 + y) * (p.a2 + x))),
        13 => Spectrum::real(0.0, (1.0 - y) / (p.a2 + y)),
        // λ² + A₂ȳ/((A₁+ȳ)(A₂+x̄)) = 0
        17 => plus_minus_sqrt(-p.a2 * y / ((a1 + y) * (p.a2 + x))),
        20 => Spectrum::real(0.0, (p.gamma2 - y) / y),
        // λ² + x̄/(A₁+α₂+x̄) = 0
        22 => plus_minus_sqrt(-x / (a1 + p.alpha2 + x)),
        // λ² + (1−ȳ)/(A₁+ȳ) = 0
        24 => plus_minus_sqrt((y - 1.0) / (a1 + y)),
        28 => Spectrum::real(0.0, (p.gamma2 - y) / (p.a2 + y)),
        // λ² − (x̄ȳ − x̄)/((A₁+ȳ)(A₂+x̄)) = 0, same pattern as (11,17)
        32 => plus_minus_sqrt((x * y - x) / ((a1 + y) * (p.a2 + x))),
        other => unreachable!("case index {other} is not registered"),
    };
    Ok(s)
}

pub fn classify_local(s: &Spectrum) -> LocalClass {
    classify_local_with_tol(s, NONHYPERBOLIC_TOL)
}

pub fn classify_local_with_tol(s: &Spectrum, tol: f64) -> LocalClass {
    let (m1, m2) = s.moduli();
    if (m1 - 1.0).abs() <= tol || (m2 - 1.0).abs() <= tol {
        LocalClass::Nonhyperbolic
    } else if m2 < 1.0 {
        LocalClass::LocallyAsymptoticallyStable
    } else if m1 < 1.0 {
        LocalClass::Saddle
    } else {
        LocalClass::Unstable
    }
}

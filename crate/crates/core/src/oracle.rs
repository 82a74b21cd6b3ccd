//! Brute-force cross-checks for the closed forms. Nothing here reads the
//! equilibrium or spectrum formulas; only the forward map is used.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{step_case, CaseParams, State};
use crate::stability::Spectrum;

pub const ORACLE_TOL: f64 = 1e-13;
pub const ORACLE_MAX_ITERS: usize = 1_000_000;

/// Limit of the orbit from `ic`, declared once three consecutive steps move
/// less than `1e-13·max(1, ‖s‖∞)`.
pub fn fixed_point_by_iteration(cp: &CaseParams, ic: State) -> Result<State> {
    fixed_point_with(cp, ic, ORACLE_TOL, ORACLE_MAX_ITERS)
}

pub fn fixed_point_with(cp: &CaseParams, ic: State, tol: f64, max_iters: usize) -> Result<State> {
    let mut s = ic;
    let mut run = 0;
    for _ in 0..max_iters {
        let next = step_case(cp, s).map_err(|_| Error::NoConvergence { iters: max_iters })?;
        if next.sup_dist(&s) <= tol * next.sup_norm().max(1.0) {
            run += 1;
            if run == 3 {
                return Ok(next);
            }
        } else {
            run = 0;
        }
        s = next;
    }
    Err(Error::NoConvergence { iters: max_iters })
}

/// Central-difference Jacobian of the raw map, row-major.
pub fn finite_difference_jacobian(
    cp: &CaseParams,
    x: f64,
    y: f64,
    h: f64,
) -> Result<[[f64; 2]; 2]> {
    let hx = h * x.abs().max(1.0);
    let hy = h * y.abs().max(1.0);
    let xp = cp.eval(x + hx, y)?;
    let xm = cp.eval(x - hx, y)?;
    let yp = cp.eval(x, y + hy)?;
    let ym = cp.eval(x, y - hy)?;
    Ok([
        [(xp.0 - xm.0) / (2.0 * hx), (yp.0 - ym.0) / (2.0 * hy)],
        [(xp.1 - xm.1) / (2.0 * hx), (yp.1 - ym.1) / (2.0 * hy)],
    ])
}

/// Eigenvalues of the finite-difference Jacobian at `eq`, from the quadratic
/// formula in complex arithmetic.
pub fn eigen_by_finite_difference(cp: &CaseParams, eq: State) -> Result<Spectrum> {
    let j = finite_difference_jacobian(cp, eq.x(), eq.y(), 1e-6)?;
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let root = Complex64::new(tr * tr - 4.0 * det, 0.0).sqrt();
    let half = Complex64::new(0.5, 0.0);
    let t = Complex64::new(tr, 0.0);
    Ok(Spectrum::new((t - root) * half, (t + root) * half))
}

//! Change of variables `h(x, y) = (y, α₁/x − A₁)` taking the planar map `f`
//! on `(0, α₁/A₁) × (0, ∞)` to a map `g` on `(0, ∞)²` that acts on pairs
//! `(u_n, u_{n−1})` of a scalar recurrence, with `h⁻¹ ∘ g ∘ h = f`.
//!
//! For ten of the cases the scalar recurrence is a Riccati (or affine) map in
//! either `u_n` or `u_{n−1}`. In the second situation the even- and
//! odd-indexed subsequences each follow the first-order map on their own;
//! [`riccati_split`] separates them.
//!
//! The GAS arguments for the lag-two reductions also rely on the Riccati
//! number `(bc − ad)/(b + c)²` of `u ↦ (a + bu)/(c + du)` being nonzero. It is
//! not used as a gate here: convergence of the decoupled maps is checked by
//! iteration instead.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{step_case, CaseId, CaseParams, State};

/// Cases with an explicit `h`/`g` pair.
pub const CONJUGATE_CASES: [u8; 10] = [3, 7, 10, 11, 13, 17, 19, 22, 24, 32];

pub fn is_conjugate_case(case: CaseId) -> bool {
    CONJUGATE_CASES.contains(&case.index())
}

fn require_conjugate(cp: &CaseParams) -> Result<()> {
    if is_conjugate_case(cp.case()) {
        Ok(())
    } else {
        Err(Error::NotConjugateCase(cp.case()))
    }
}

fn in_domain_f(cp: &CaseParams, s: &State) -> bool {
    s.x() > 0.0 && s.x() < cp.x_max() && s.y() > 0.0
}

fn in_domain_g(t: &State) -> bool {
    t.x() > 0.0 && t.y() > 0.0
}

fn out_of(map: &'static str, s: &State) -> Error {
    Error::DomainViolation {
        map,
        x: s.x(),
        y: s.y(),
    }
}

/// `h(x, y) = (y, α₁/x − A₁)`.
pub fn h_map(cp: &CaseParams, s: State) -> Result<State> {
    if !in_domain_f(cp, &s) {
        return Err(out_of("h", &s));
    }
    let t = State::new(s.y(), cp.alpha1() / s.x() - cp.a1()).map_err(|_| out_of("h", &s))?;
    Ok(t)
}

/// `h⁻¹(x, y) = (α₁/(A₁ + y), x)`.
pub fn h_inv_map(cp: &CaseParams, t: State) -> Result<State> {
    if !in_domain_g(&t) {
        return Err(out_of("h_inv", &t));
    }
    State::new(cp.alpha1() / (cp.a1() + t.y()), t.x()).map_err(|_| out_of("h_inv", &t))
}

/// The lifted map `g(x, y) = (φ(x, y), x)` of a conjugate case.
pub fn g_map(cp: &CaseParams, t: State) -> Result<State> {
    require_conjugate(cp)?;
    if !in_domain_g(&t) {
        return Err(out_of("g", &t));
    }
    let p = cp.embedded();
    let (x, y) = (t.x(), t.y());
    // the x-coordinate that h⁻¹ recovers from the lagged slot
    let w = p.alpha1 / (p.a1 + y);
    let first = match cp.case().index() {
        3 => p.alpha2 / w,
        7 => p.beta2 * w,
        10 => p.alpha2 / (p.a2 + x),
        11 => p.alpha2 / (p.a2 + w),
        13 => x / (p.a2 + x),
        17 => w / (p.a2 + w),
        19 => p.alpha2 + p.gamma2 * x,
        22 => p.alpha2 + w,
        24 => (p.alpha2 + w) / w,
        32 => (p.alpha2 + w) / (p.a2 + w),
        other => unreachable!("case {other} was checked to be conjugate"),
    };
    State::new(first, x).map_err(|_| out_of("g", &t))
}

/// Bundles `f`, `g`, `h`, `h⁻¹` for one conjugate case.
#[derive(Debug, Clone)]
pub struct ConjugacyTriple {
    params: CaseParams,
}

impl ConjugacyTriple {
    pub fn new(cp: &CaseParams) -> Result<Self> {
        require_conjugate(cp)?;
        Ok(ConjugacyTriple { params: cp.clone() })
    }

    pub fn case(&self) -> CaseId {
        self.params.case()
    }

    /// `(0, α₁/A₁) × (0, ∞)` as `(x_max, ∞)`.
    pub fn domain_f_x_max(&self) -> f64 {
        self.params.x_max()
    }

    pub fn f(&self, s: State) -> Result<State> {
        if !in_domain_f(&self.params, &s) {
            return Err(out_of("f", &s));
        }
        step_case(&self.params, s)
    }

    pub fn g(&self, t: State) -> Result<State> {
        g_map(&self.params, t)
    }

    pub fn h(&self, s: State) -> Result<State> {
        h_map(&self.params, s)
    }

    pub fn h_inv(&self, t: State) -> Result<State> {
        h_inv_map(&self.params, t)
    }

    /// Scaled sup-norm defect of `h⁻¹(g(h(s)))` against `f(s)`.
    pub fn residual_at(&self, s: State) -> Result<f64> {
        let lifted = self.h_inv(self.g(self.h(s)?)?)?;
        let direct = self.f(s)?;
        let scale = 1f64.max(s.sup_norm()).max(direct.sup_norm());
        Ok(lifted.sup_dist(&direct) / scale)
    }
}

/// Largest defect of `h⁻¹ ∘ g ∘ h = f` over `grid`.
pub fn verify_conjugacy(cp: &CaseParams, grid: &[State]) -> Result<f64> {
    let triple = ConjugacyTriple::new(cp)?;
    grid.iter()
        .try_fold(0.0f64, |acc, &s| Ok(acc.max(triple.residual_at(s)?)))
}

/// `n × n` grid in `(0, α₁/A₁) × (0, ∞)`, log-spaced in both directions:
/// `x ∈ [10⁻³, 1 − 10⁻³]·α₁/A₁`, `y ∈ [10⁻³, 10³]`.
pub fn log_grid(cp: &CaseParams, n: usize) -> Vec<State> {
    let xm = cp.x_max();
    let axis = |lo: f64, hi: f64| -> Vec<f64> {
        if n == 1 {
            return vec![(lo * hi).sqrt()];
        }
        let (l, h) = (lo.ln(), hi.ln());
        (0..n)
            .map(|i| (l + (h - l) * i as f64 / (n - 1) as f64).exp())
            .collect()
    };
    let xs = axis(1e-3 * xm, (1.0 - 1e-3) * xm);
    let ys = axis(1e-3, 1e3);
    xs.iter()
        .flat_map(|&x| {
            ys.iter()
                .map(move |&y| State::new(x, y).expect("grid point"))
        })
        .collect()
}

/// Coefficients of `u ↦ (a + b·u)/(c + d·u)`; `d = 0` is the affine case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiccatiCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RiccatiCoeffs {
    pub fn eval(&self, u: f64) -> f64 {
        (self.a + self.b * u) / (self.c + self.d * u)
    }

    pub fn is_linear(&self) -> bool {
        self.d == 0.0
    }
}

/// The scalar recurrence behind `g`: `u_{n+1} = φ(u_{n+1−lag})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reduction {
    pub coeffs: RiccatiCoeffs,
    /// 1 when `φ` acts on `u_n`, 2 when it acts on `u_{n−1}`.
    pub lag: u8,
}

pub fn riccati_coeffs(cp: &CaseParams) -> Result<Reduction> {
    require_conjugate(cp)?;
    let p = cp.embedded();
    let (al1, a1, al2, a2) = (p.alpha1, p.a1, p.alpha2, p.a2);
    let r = |a, b, c, d, lag| Reduction {
        coeffs: RiccatiCoeffs { a, b, c, d },
        lag,
    };
    Ok(match cp.case().index() {
        3 => r(al2 * a1, al2, al1, 0.0, 2),
        7 => r(p.beta2 * al1, 0.0, a1, 1.0, 2),
        10 => r(al2, 0.0, a2, 1.0, 1),
        11 => r(al2 * a1, al2, a1 * a2 + al1, a2, 2),
        13 => r(0.0, 1.0, a2, 1.0, 1),
        17 => r(al1, 0.0, a1 * a2 + al1, a2, 2),
        19 => r(al2, p.gamma2, 1.0, 0.0, 1),
        22 => r(al2 * a1 + al1, al2, a1, 1.0, 2),
        24 => r(al1 + al2 * a1, al2, al1, 0.0, 2),
        32 => r(al2 * a1 + al1, al2, a2 * a1 + al1, a2, 2),
        other => unreachable!("case {other} was checked to be conjugate"),
    })
}

/// Even- and odd-indexed subsequences of `u`.
pub fn riccati_split<T: Copy>(u: &[T]) -> (Vec<T>, Vec<T>) {
    let even = u.iter().step_by(2).copied().collect();
    let odd = u.iter().skip(1).step_by(2).copied().collect();
    (even, odd)
}

/// The scalar sequence `u_0, u_1, …` carried by the first slot of `g`'s orbit
/// from `h(s0)`, prefixed by the lagged value `u_{−1}`.
pub fn lifted_sequence(cp: &CaseParams, s0: State, steps: usize) -> Result<Vec<f64>> {
    let triple = ConjugacyTriple::new(cp)?;
    let mut t = triple.h(s0)?;
    let mut u = vec![t.y(), t.x()];
    for _ in 0..steps {
        t = triple.g(t)?;
        u.push(t.x());
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(case: u32, values: &[f64]) -> CaseParams {
        CaseParams::new(CaseId::new(case).unwrap(), values).unwrap()
    }

    fn st(x: f64, y: f64) -> State {
        State::new(x, y).unwrap()
    }

    #[test]
    fn h_and_inverse() {
        let c = cp(7, &[2.0, 1.0, 1.0]);
        assert_eq!(h_map(&c, st(1.0, 3.0)).unwrap(), st(3.0, 1.0));
        assert_eq!(h_inv_map(&c, st(3.0, 1.0)).unwrap(), st(1.0, 3.0));
        for eps in [1e-3, 1e-6, 1e-9] {
            let t = h_map(&c, st(2.0 - eps, 1.0)).unwrap();
            assert!(t.y() > 0.0 && t.y() < 2.0 * eps);
        }
    }

    #[test]
    fn domain_violations() {
        let c = cp(7, &[2.0, 1.0, 1.0]);
        assert!(matches!(
            h_map(&c, st(2.0, 1.0)),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            h_map(&c, st(0.0, 1.0)),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            h_map(&c, st(1.0, 0.0)),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            h_inv_map(&c, st(0.0, 1.0)),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            g_map(&c, st(1.0, 0.0)),
            Err(Error::DomainViolation { .. })
        ));
        assert!(verify_conjugacy(&c, &[st(3.0, 1.0)]).is_err());
    }

    #[test]
    fn g_examples() {
        assert_eq!(
            g_map(&cp(10, &[1.0, 1.0, 4.0, 1.0]), st(1.0, 7.0)).unwrap(),
            st(2.0, 1.0)
        );
        assert_eq!(
            g_map(&cp(3, &[2.0, 1.0, 1.0]), st(3.0, 5.0)).unwrap(),
            st(3.0, 3.0)
        );
        let c = cp(19, &[1.0, 1.0, 1.0, 0.5]);
        assert_eq!(g_map(&c, st(4.0, 9.0)).unwrap(), st(3.0, 4.0));
    }

    #[test]
    fn non_conjugate_cases_are_rejected() {
        for case in [1, 2, 4, 5, 9, 20, 28] {
            let spec = crate::registry::case_spec(CaseId::new(case).unwrap());
            let c = cp(case, &vec![1.0; spec.param_names.len()]);
            assert_eq!(
                verify_conjugacy(&c, &[]),
                Err(Error::NotConjugateCase(c.case()))
            );
            assert!(riccati_coeffs(&c).is_err());
        }
    }

    #[test]
    fn single_point_identity() {
        for &case in &CONJUGATE_CASES {
            let spec = crate::registry::case_spec(CaseId::new(case.into()).unwrap());
            let mut vals = vec![1.3; spec.param_names.len()];
            vals[0] = 2.1;
            let c = cp(case.into(), &vals);
            let s = st(c.x_max() / 2.0, 1.0);
            assert!(verify_conjugacy(&c, &[s]).unwrap() <= 1e-14, "case {case}");
        }
    }

    #[test]
    fn coefficient_examples() {
        let r = riccati_coeffs(&cp(10, &[1.0, 1.0, 3.0, 2.0])).unwrap();
        assert_eq!(
            r.coeffs,
            RiccatiCoeffs {
                a: 3.0,
                b: 0.0,
                c: 2.0,
                d: 1.0
            }
        );
        assert_eq!(r.lag, 1);

        let r = riccati_coeffs(&cp(24, &[3.0, 1.0, 1.0])).unwrap();
        assert!(r.coeffs.is_linear());
        assert!((r.coeffs.eval(0.0) - 4.0 / 3.0).abs() < 1e-15);
        assert!((r.coeffs.eval(3.0) - 7.0 / 3.0).abs() < 1e-15);

        let r = riccati_coeffs(&cp(22, &[2.0, 1.5, 0.5])).unwrap();
        assert_eq!(
            r.coeffs,
            RiccatiCoeffs {
                a: 0.5 * 1.5 + 2.0,
                b: 0.5,
                c: 1.5,
                d: 1.0
            }
        );
        assert_eq!(r.lag, 2);

        for case in [3, 19, 24] {
            let spec = crate::registry::case_spec(CaseId::new(case).unwrap());
            let c = cp(case, &vec![1.0; spec.param_names.len()]);
            assert!(riccati_coeffs(&c).unwrap().coeffs.is_linear());
        }
    }

    #[test]
    fn split_by_parity() {
        let (e, o) = riccati_split(&[0, 1, 2, 3, 4]);
        assert_eq!(e, vec![0, 2, 4]);
        assert_eq!(o, vec![1, 3]);
        let (e, o) = riccati_split(&[7.5; 6]);
        assert!(e.iter().chain(&o).all(|&v| v == 7.5));
        let (e, o) = riccati_split::<f64>(&[]);
        assert!(e.is_empty() && o.is_empty());
    }

    #[test]
    fn case_7_subsequences_follow_phi() {
        let c = cp(7, &[2.0, 1.0, 1.5]);
        let red = riccati_coeffs(&c).unwrap();
        let u = lifted_sequence(&c, st(0.3, 4.0), 40).unwrap();
        let (even, odd) = riccati_split(&u);
        for seq in [&even, &odd] {
            for w in seq.windows(2) {
                assert!((red.coeffs.eval(w[0]) - w[1]).abs() <= 1e-12 * w[1].max(1.0));
            }
        }
    }
}

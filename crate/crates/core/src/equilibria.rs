//! Closed-form equilibrium sets.
//!
//! Every quadratic is solved for its nonnegative root using the
//! cancellation-free form: for `a·t² + b·t − c = 0` with `a, c > 0` the
//! positive root is `(−b + √D)/(2a)` when `b ≤ 0` and `2c/(b + √D)` otherwise.

use serde::Serialize;

use crate::model::{CaseParams, State, Symbol};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum EquilibriumSet {
    None,
    One {
        point: State,
    },
    /// Only `(11,13)` with `A₂ < 1`.
    Two {
        saddle: State,
        stable: State,
    },
    /// Only `(11,4)` with `γ₂ = 1`: the curve `v ↦ (α₁/(A₁+v), v)`, `v ≥ 0`.
    Continuum {
        alpha1: f64,
        a1: f64,
    },
}

impl EquilibriumSet {
    /// Isolated equilibria; empty for `None` and `Continuum`.
    pub fn points(&self) -> Vec<State> {
        match self {
            EquilibriumSet::None | EquilibriumSet::Continuum { .. } => Vec::new(),
            EquilibriumSet::One { point } => vec![*point],
            EquilibriumSet::Two { saddle, stable } => vec![*saddle, *stable],
        }
    }

    /// Point of the continuum at height `v`.
    pub fn continuum_point(&self, v: f64) -> Option<State> {
        match self {
            EquilibriumSet::Continuum { alpha1, a1 } => State::new(alpha1 / (a1 + v), v).ok(),
            _ => None,
        }
    }
}

/// Positive root of `a·t² + b·t − c = 0` for `a > 0`, `c > 0`.
pub(crate) fn positive_root(a: f64, b: f64, c: f64) -> f64 {
    let sq = (b * b + 4.0 * a * c).sqrt();
    if b <= 0.0 {
        (sq - b) / (2.0 * a)
    } else {
        2.0 * c / (b + sq)
    }
}

fn point(x: f64, y: f64) -> State {
    State::new(x, y).expect("closed-form equilibria are finite and nonnegative")
}

/// The equilibrium set of `cp`.
pub fn equilibria(cp: &CaseParams) -> EquilibriumSet {
    let p = cp.embedded();
    let (al1, a1) = (p.alpha1, p.a1);
    // x̄ from ȳ through the first equation
    let x_of = |y: f64| al1 / (a1 + y);
    let one = |x: f64, y: f64| EquilibriumSet::One { point: point(x, y) };

    match cp.case().index() {
        1 => {
            let (al2, a2) = (p.alpha2, p.a2);
            one(a2 * al1 / (a2 * a1 + al2), al2 / a2)
        }
        5 => {
            let (b2, bb2) = (p.beta2, p.b2);
            one(bb2 * al1 / (bb2 * a1 + b2), b2 / bb2)
        }
        9 => {
            let (g2, c2) = (p.gamma2, p.c2);
            one(c2 * al1 / (c2 * a1 + g2), g2 / c2)
        }
        2 => {
            let y = p.alpha2.sqrt();
            one(x_of(y), y)
        }
        3 => {
            let al2 = p.alpha2;
            if al1 > al2 {
                let d = al1 - al2;
                one(al1 * d / (a1 * d + al2 * a1), al2 * a1 / d)
            } else {
                EquilibriumSet::None
            }
        }
        4 => {
            if p.gamma2 == 1.0 {
                EquilibriumSet::Continuum { alpha1: al1, a1 }
            } else {
                one(al1 / a1, 0.0)
            }
        }
        7 => {
            // ȳ² + A₁ȳ − β₂α₁ = 0
            let y = positive_root(1.0, a1, p.beta2 * al1);
            one(y / p.beta2, y)
        }
        10 => {
            // ȳ² + A₂ȳ − α₂ = 0
            let y = positive_root(1.0, p.a2, p.alpha2);
            one(x_of(y), y)
        }
        11 => {
            // A₁x̄² + (A₁A₂ + α₂ − α₁)x̄ − α₁A₂ = 0
            let (al2, a2) = (p.alpha2, p.a2);
            let x = positive_root(a1, a1 * a2 + al2 - al1, al1 * a2);
            one(x, al2 / (a2 + x))
        }
        13 => {
            let saddle = point(al1 / a1, 0.0);
            if p.a2 < 1.0 {
                let y = 1.0 - p.a2;
                EquilibriumSet::Two {
                    saddle,
                    stable: point(al1 / (a1 + y), y),
                }
            } else {
                EquilibriumSet::One { point: saddle }
            }
        }
        17 => {
            // (A₁+1)x̄² + (A₁A₂ − α₁)x̄ − α₁A₂ = 0
            let a2 = p.a2;
            let x = positive_root(a1 + 1.0, a1 * a2 - al1, al1 * a2);
            one(x, x / (a2 + x))
        }
        19 => {
            let g2 = p.gamma2;
            if g2 < 1.0 {
                let al2 = p.alpha2;
                one((al1 - al1 * g2) / (a1 - a1 * g2 + al2), al2 / (1.0 - g2))
            } else {
                EquilibriumSet::None
            }
        }
        20 => {
            // ȳ² − γ₂ȳ − α₂ = 0
            let y = positive_root(1.0, -p.gamma2, p.alpha2);
            one(x_of(y), y)
        }
        22 => {
            // x̄² + (α₂ + A₁)x̄ − α₁ = 0, then ȳ = α₂ + x̄
            let x = positive_root(1.0, p.alpha2 + a1, al1);
            one(x, p.alpha2 + x)
        }
        24 => {
            let al2 = p.alpha2;
            if al1 > al2 {
                one((al1 - al2) / (a1 + 1.0), (al1 + al2 * a1) / (al1 - al2))
            } else {
                EquilibriumSet::None
            }
        }
        28 => {
            // ȳ² + (A₂ − γ₂)ȳ − α₂ = 0
            let y = positive_root(1.0, p.a2 - p.gamma2, p.alpha2);
            one(x_of(y), y)
        }
        32 => {
            // (1+A₁)x̄² + (A₁A₂ + α₂ − α₁)x̄ − α₁A₂ = 0
            let (al2, a2) = (p.alpha2, p.a2);
            let x = positive_root(1.0 + a1, a1 * a2 + al2 - al1, al1 * a2);
            one(x, (al2 + x) / (a2 + x))
        }
        other => unreachable!("case index {other} is not registered"),
    }
}

/// The region-selecting parameter of a multi-region case and its boundary.
pub fn region_boundary(cp: &CaseParams) -> Option<(Symbol, f64)> {
    match cp.case().index() {
        3 | 24 => Some((Symbol::Alpha1, cp.get(Symbol::Alpha2)?)),
        4 => Some((Symbol::Gamma2, 1.0)),
        13 => Some((Symbol::A2, 1.0)),
        19 => Some((Symbol::Gamma2, 1.0)),
        _ => None,
    }
}

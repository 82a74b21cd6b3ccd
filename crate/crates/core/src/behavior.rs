//! Predicted global behavior for a parameter point, one region table per case.
//!
//! Region boundaries are sharp: each belongs to one stated side and is
//! compared without tolerance.

use serde::Serialize;

use crate::equilibria::{equilibria, EquilibriumSet};
use crate::model::{CaseParams, State};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Manifold {
    /// `[0, ∞) × {0}`
    XAxis,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Behavior {
    FiniteTimeEquilibrium {
        within_steps: u32,
        equilibrium: State,
    },
    /// Every orbit satisfies `s(n+2) = s(n)` for `n ≥ 1`; the period may be 1.
    EventuallyPeriodic2 {
        equilibrium: State,
    },
    GloballyAsymptoticallyStable {
        equilibrium: State,
    },
    /// `(x_n, y_n) → (0, ∞)` for every initial condition.
    DivergesToZeroInfinity,
    /// Orbits starting on the manifold reach the saddle; the rest converge to
    /// the interior attractor if there is one, and diverge to `(0, ∞)` if not.
    SaddleWithManifold {
        saddle: State,
        manifold: Manifold,
        interior_attractor: Option<State>,
    },
    /// Every orbit is constant from step one, at `(α₁/(A₁+y₀), y₀)`.
    ContinuumOfEquilibria,
}

impl Behavior {
    pub fn label(&self) -> &'static str {
        match self {
            Behavior::FiniteTimeEquilibrium { .. } => "FiniteTimeEquilibrium",
            Behavior::EventuallyPeriodic2 { .. } => "EventuallyPeriodic2",
            Behavior::GloballyAsymptoticallyStable { .. } => "GloballyAsymptoticallyStable",
            Behavior::DivergesToZeroInfinity => "DivergesToZeroInfinity",
            Behavior::SaddleWithManifold { .. } => "SaddleWithManifold",
            Behavior::ContinuumOfEquilibria => "ContinuumOfEquilibria",
        }
    }

    /// Equilibria embedded in the prediction.
    pub fn points(&self) -> Vec<State> {
        match self {
            Behavior::FiniteTimeEquilibrium { equilibrium, .. }
            | Behavior::EventuallyPeriodic2 { equilibrium }
            | Behavior::GloballyAsymptoticallyStable { equilibrium } => vec![*equilibrium],
            Behavior::SaddleWithManifold {
                saddle,
                interior_attractor,
                ..
            } => std::iter::once(*saddle)
                .chain(*interior_attractor)
                .collect(),
            Behavior::DivergesToZeroInfinity | Behavior::ContinuumOfEquilibria => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BehaviorPrediction {
    #[serde(flatten)]
    pub behavior: Behavior,
    /// The inequality that selected the region.
    pub region_note: String,
}

fn single(set: &EquilibriumSet) -> State {
    match set {
        EquilibriumSet::One { point } => *point,
        other => panic!("expected a unique equilibrium, got {other:?}"),
    }
}

/// Predicted behavior of `cp`.
pub fn predict(cp: &CaseParams) -> BehaviorPrediction {
    let p = cp.embedded();
    let eq = equilibria(cp);
    let gas = |note: &str| BehaviorPrediction {
        behavior: Behavior::GloballyAsymptoticallyStable {
            equilibrium: single(&eq),
        },
        region_note: note.to_string(),
    };
    let diverges = |note: &str| BehaviorPrediction {
        behavior: Behavior::DivergesToZeroInfinity,
        region_note: note.to_string(),
    };

    match cp.case().index() {
        1 | 5 | 9 => BehaviorPrediction {
            behavior: Behavior::FiniteTimeEquilibrium {
                within_steps: 2,
                equilibrium: single(&eq),
            },
            region_note: "all parameters: y is constant from step one".into(),
        },
        2 => BehaviorPrediction {
            behavior: Behavior::EventuallyPeriodic2 {
                equilibrium: single(&eq),
            },
            region_note: "all parameters: y(n+2) = y(n)".into(),
        },
        3 | 24 => {
            if p.alpha1 > p.alpha2 {
                gas("alpha1 > alpha2")
            } else {
                diverges("alpha1 <= alpha2")
            }
        }
        4 => {
            let saddle = State::new(p.alpha1 / p.a1, 0.0).expect("positive coordinates");
            if p.gamma2 > 1.0 {
                BehaviorPrediction {
                    behavior: Behavior::SaddleWithManifold {
                        saddle,
                        manifold: Manifold::XAxis,
                        interior_attractor: None,
                    },
                    region_note: "gamma2 > 1".into(),
                }
            } else if p.gamma2 == 1.0 {
                BehaviorPrediction {
                    behavior: Behavior::ContinuumOfEquilibria,
                    region_note: "gamma2 = 1".into(),
                }
            } else {
                gas("gamma2 < 1")
            }
        }
        13 => match eq {
            EquilibriumSet::Two { saddle, stable } => BehaviorPrediction {
                behavior: Behavior::SaddleWithManifold {
                    saddle,
                    manifold: Manifold::XAxis,
                    interior_attractor: Some(stable),
                },
                region_note: "A2 < 1".into(),
            },
            _ => gas("A2 >= 1"),
        },
        19 => {
            if p.gamma2 < 1.0 {
                gas("gamma2 < 1")
            } else {
                diverges("gamma2 >= 1")
            }
        }
        7 | 10 | 11 | 17 | 20 | 22 | 28 | 32 => gas("all parameters"),
        other => unreachable!("case index {other} is not registered"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CaseId;

    fn cp(case: u32, values: &[f64]) -> CaseParams {
        CaseParams::new(CaseId::new(case).unwrap(), values).unwrap()
    }

    #[test]
    fn examples() {
        let b = predict(&cp(19, &[1.0, 1.0, 1.0, 1.5])).behavior;
        assert_eq!(b, Behavior::DivergesToZeroInfinity);

        let b = predict(&cp(28, &[1.0, 1.0, 1.0, 1.0, 1.0])).behavior;
        assert_eq!(
            b,
            Behavior::GloballyAsymptoticallyStable {
                equilibrium: State::new(0.5, 1.0).unwrap()
            }
        );

        let b = predict(&cp(1, &[3.0, 0.2, 1.1, 9.0])).behavior;
        assert!(matches!(
            b,
            Behavior::FiniteTimeEquilibrium {
                within_steps: 2,
                ..
            }
        ));

        let b = predict(&cp(13, &[2.0, 4.0, 1.0])).behavior;
        assert_eq!(
            b,
            Behavior::GloballyAsymptoticallyStable {
                equilibrium: State::new(0.5, 0.0).unwrap()
            }
        );
    }

    #[test]
    fn boundaries_belong_to_one_side() {
        assert_eq!(
            predict(&cp(3, &[1.0, 1.0, 1.0])).behavior,
            Behavior::DivergesToZeroInfinity
        );
        assert_eq!(
            predict(&cp(24, &[1.0, 2.0, 1.0])).behavior,
            Behavior::DivergesToZeroInfinity
        );
        assert_eq!(
            predict(&cp(19, &[1.0, 2.0, 1.0, 1.0])).behavior,
            Behavior::DivergesToZeroInfinity
        );
        assert_eq!(
            predict(&cp(4, &[1.0, 2.0, 1.0])).behavior,
            Behavior::ContinuumOfEquilibria
        );
    }

    #[test]
    fn case_13_saddle_region() {
        match predict(&cp(13, &[1.0, 1.0, 0.5])).behavior {
            Behavior::SaddleWithManifold {
                saddle,
                interior_attractor: Some(a),
                ..
            } => {
                assert_eq!(saddle, State::new(1.0, 0.0).unwrap());
                assert_eq!(a.y(), 0.5);
            }
            other => panic!("{other:?}"),
        }
        match predict(&cp(4, &[1.0, 1.0, 1.5])).behavior {
            Behavior::SaddleWithManifold {
                interior_attractor: None,
                ..
            } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn serializes_with_kind_tag() {
        let v = serde_json::to_value(predict(&cp(7, &[2.0, 1.0, 1.0]))).unwrap();
        assert_eq!(v["kind"], "GloballyAsymptoticallyStable");
        assert_eq!(v["equilibrium"]["x"], 1.0);
        assert_eq!(v["region_note"], "all parameters");
    }
}

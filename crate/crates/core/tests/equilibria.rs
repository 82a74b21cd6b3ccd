mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riccati_planar::oracle::fixed_point_by_iteration;
use riccati_planar::sample::{draw_ic, draw_params, regions};
use riccati_planar::{equilibria, step_case, CaseId, EquilibriumSet, State};

fn residual(c: &riccati_planar::CaseParams, p: State) -> f64 {
    step_case(c, p).unwrap().sup_dist(&p)
}

#[test]
fn returned_points_are_fixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for case in CaseId::all() {
        for &region in regions(case) {
            for _ in 0..200 {
                let c = draw_params(&mut rng, case, region);
                let set = equilibria(&c);
                for p in set.points() {
                    assert!(p.x() >= 0.0 && p.y() >= 0.0);
                    assert!(residual(&c, p) <= 1e-12, "{case} {:?} {p}", c.values());
                }
                if let EquilibriumSet::Continuum { .. } = set {
                    for k in 0..20 {
                        let v = 10f64.powf(-3.0 + 6.0 * k as f64 / 19.0);
                        let p = set.continuum_point(v).unwrap();
                        assert!(residual(&c, p) <= 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn region_gating_on_a_straddling_grid() {
    for k in 0..=40 {
        let r = 0.5 + k as f64 / 40.0; // [0.5, 1.5], hits 1.0 exactly
        for case in [3, 24] {
            let set = equilibria(&cp(case, &[r * 2.0, 1.3, 2.0]));
            assert_eq!(
                matches!(set, EquilibriumSet::One { .. }),
                r > 1.0,
                "{case} {r}"
            );
            assert_eq!(set == EquilibriumSet::None, r <= 1.0);
        }
        let set = equilibria(&cp(19, &[1.0, 1.0, 2.0, r]));
        assert_eq!(matches!(set, EquilibriumSet::One { .. }), r < 1.0, "19 {r}");
        let set = equilibria(&cp(13, &[1.0, 1.0, r]));
        assert_eq!(matches!(set, EquilibriumSet::Two { .. }), r < 1.0, "13 {r}");
        let set = equilibria(&cp(4, &[1.0, 1.0, r]));
        assert_eq!(
            matches!(set, EquilibriumSet::Continuum { .. }),
            r == 1.0,
            "4 {r}"
        );
    }
}

/// Limits found by plain iteration from random starts match the closed forms.
#[test]
fn oracle_limits_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in [1, 5, 7, 9, 10, 11, 17, 20, 22, 28, 32] {
        let id = CaseId::new(case).unwrap();
        for _ in 0..20 {
            let c = draw_params(&mut rng, id, regions(id)[0]);
            let closed = equilibria(&c).points()[0];
            let found = fixed_point_by_iteration(&c, draw_ic(&mut rng)).unwrap();
            assert!(
                found.sup_dist(&closed) <= 1e-9 * closed.sup_norm().max(1.0),
                "{case} {:?}: {found} vs {closed}",
                c.values()
            );
        }
    }
}

#[test]
fn cancellation_prone_quadratics_stay_accurate() {
    // α₁ ≪ α₂ + A₁A₂: the naive formula loses every digit of x̄
    let c = cp(32, &[1e-8, 1.0, 1e4, 1.0]);
    let p = equilibria(&c).points()[0];
    assert!(p.x() > 0.0);
    assert!(residual(&c, p) <= 1e-12 * p.sup_norm().max(1.0));
    let c = cp(22, &[1e-9, 10.0, 10.0]);
    let p = equilibria(&c).points()[0];
    assert!(p.x() > 0.0 && residual(&c, p) <= 1e-12 * p.sup_norm().max(1.0));
}

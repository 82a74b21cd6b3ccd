mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riccati_planar::conjugacy::{
    lifted_sequence, log_grid, riccati_coeffs, riccati_split, verify_conjugacy, ConjugacyTriple,
    CONJUGATE_CASES,
};
use riccati_planar::sample::{draw_params, log_uniform, regions};
use riccati_planar::{equilibria, CaseId, CaseParams, Error, State};

fn conjugate_draws(rng: &mut ChaCha8Rng, per_region: usize) -> Vec<CaseParams> {
    let mut out = Vec::new();
    for &case in &CONJUGATE_CASES {
        let id = CaseId::new(case as u32).unwrap();
        for &region in regions(id) {
            for _ in 0..per_region {
                out.push(draw_params(rng, id, region));
            }
        }
    }
    out
}

fn domain_point(rng: &mut ChaCha8Rng, c: &CaseParams) -> State {
    let x = c.x_max() * rng.gen_range(1e-3..1.0 - 1e-3);
    st(x, log_uniform(rng, 1e-3, 1e3))
}

#[test]
fn identity_holds_on_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for c in conjugate_draws(&mut rng, 10) {
        let r = verify_conjugacy(&c, &log_grid(&c, 20)).unwrap();
        assert!(r <= 1e-12, "{} {:?}: {r:e}", c.case(), c.values());
    }
}

#[test]
fn h_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for c in conjugate_draws(&mut rng, 5) {
        let t = ConjugacyTriple::new(&c).unwrap();
        for _ in 0..200 {
            let s = domain_point(&mut rng, &c);
            let back = t.h_inv(t.h(s).unwrap()).unwrap();
            assert!(rel_err(back.x(), s.x()) <= 1e-12 && rel_err(back.y(), s.y()) <= 1e-12);
            let u = st(
                log_uniform(&mut rng, 1e-3, 1e3),
                log_uniform(&mut rng, 1e-3, 1e3),
            );
            // α₁/x − A₁ cancels when y ≪ A₁, so this direction is scaled like the residuals
            let back = t.h(t.h_inv(u).unwrap()).unwrap();
            assert!(back.sup_dist(&u) <= 1e-12 * u.sup_norm().max(1.0));
        }
    }
}

#[test]
fn orbits_are_transported() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for c in conjugate_draws(&mut rng, 3) {
        let t = ConjugacyTriple::new(&c).unwrap();
        for _ in 0..100 {
            let mut s = domain_point(&mut rng, &c);
            let mut u = t.h(s).unwrap();
            for n in 0..30 {
                s = riccati_planar::step_case(&c, s).unwrap();
                u = t.g(u).unwrap();
                // compared through h⁻¹: orbits tending to (α₁/A₁, 0) round onto the
                // edge of the domain of h
                let back = t.h_inv(u).unwrap();
                let d = back.sup_dist(&s) / s.sup_norm().max(1.0);
                assert!(
                    d <= 1e-10,
                    "{} {:?} step {n}: {back} vs {s}",
                    c.case(),
                    c.values()
                );
                if let Ok(hs) = t.h(s) {
                    let d = hs.sup_dist(&u) / hs.sup_norm().max(1.0);
                    assert!(
                        d <= 1e-10,
                        "{} {:?} step {n}: {hs} vs {u}",
                        c.case(),
                        c.values()
                    );
                }
            }
        }
    }
}

#[test]
fn split_subsequences_follow_the_reduced_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for c in conjugate_draws(&mut rng, 5) {
        let red = riccati_coeffs(&c).unwrap();
        let s = domain_point(&mut rng, &c);
        let u = lifted_sequence(&c, s, 40).unwrap();
        let chains: Vec<Vec<f64>> = if red.lag == 2 {
            let (even, odd) = riccati_split(&u);
            vec![even, odd]
        } else {
            // u₋₁ only seeds the lagged slot
            vec![u[1..].to_vec()]
        };
        for chain in chains {
            for w in chain.windows(2) {
                let phi = red.coeffs.eval(w[0]);
                assert!(
                    rel_err(phi, w[1]) <= 1e-12,
                    "{} {phi} vs {}",
                    c.case(),
                    w[1]
                );
            }
        }
    }
}

#[test]
fn equilibria_map_to_diagonal_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for c in conjugate_draws(&mut rng, 10) {
        let t = ConjugacyTriple::new(&c).unwrap();
        for p in equilibria(&c).points() {
            // (α₁/A₁, 0) lies on the boundary of the domain of h
            if p.y() == 0.0 {
                continue;
            }
            let u = t.h(p).unwrap();
            let g = t.g(u).unwrap();
            let scale = u.sup_norm().max(1.0);
            assert!((u.x() - u.y()).abs() <= 1e-10 * scale, "{} {u}", c.case());
            assert!(g.sup_dist(&u) <= 1e-10 * scale);
        }
    }
}

#[test]
fn non_conjugate_cases_are_rejected() {
    for case in [1, 2, 4, 5, 9, 20, 28] {
        let id = CaseId::new(case).unwrap();
        let c = draw_params(&mut ChaCha8Rng::seed_from_u64(0), id, regions(id)[0]);
        assert!(matches!(
            ConjugacyTriple::new(&c),
            Err(Error::NotConjugateCase(_))
        ));
        assert!(matches!(
            verify_conjugacy(&c, &[]),
            Err(Error::NotConjugateCase(_))
        ));
    }
}

#[test]
fn case_7_reduction_example() {
    // u(n+1) = β₂α₁/(A₁ + u(n−1))
    let c = cp(7, &[2.0, 1.0, 3.0]);
    let red = riccati_coeffs(&c).unwrap();
    assert_eq!(red.lag, 2);
    assert_eq!(red.coeffs.eval(1.0), 3.0);
}

mod common;

use common::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riccati_planar::oracle::eigen_by_finite_difference;
use riccati_planar::sample::{draw_params, regions, Region};
use riccati_planar::stability::{char_poly, closed_form_is_tabulated, Spectrum};
use riccati_planar::{
    classify_local, equilibria, jacobian, predict, spectrum_closed, spectrum_numeric, Behavior,
    CaseId, LocalClass,
};

#[test]
fn closed_and_numeric_spectra_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in CaseId::all() {
        for &region in regions(case) {
            for _ in 0..200 {
                let c = draw_params(&mut rng, case, region);
                let eqs = equilibria(&c);
                let pts = match eqs.continuum_point(1.0) {
                    Some(p) => vec![p],
                    None => eqs.points(),
                };
                for p in pts {
                    let closed = spectrum_closed(&c, p).unwrap();
                    let numeric = spectrum_numeric(&c, p).unwrap();
                    assert!(
                        closed.distance(&numeric) <= 1e-9,
                        "{case} {:?} at {p}: {closed:?} vs {numeric:?}",
                        c.values()
                    );
                }
            }
        }
    }
}

#[test]
fn finite_difference_oracle_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in CaseId::all() {
        for &region in regions(case) {
            for _ in 0..20 {
                let c = draw_params(&mut rng, case, region);
                for p in equilibria(&c).points() {
                    if !closed_form_is_tabulated(&c) {
                        continue;
                    }
                    let fd = eigen_by_finite_difference(&c, p).unwrap();
                    let closed = spectrum_closed(&c, p).unwrap();
                    let scale = closed.lambda2.norm().max(1.0);
                    assert!(
                        fd.distance(&closed) <= 1e-5 * scale,
                        "{case} {fd:?} vs {closed:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn stable_equilibria_are_locally_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in CaseId::all() {
        for &region in regions(case) {
            for _ in 0..50 {
                let c = draw_params(&mut rng, case, region);
                let stable = match predict(&c).behavior {
                    Behavior::GloballyAsymptoticallyStable { equilibrium } => equilibrium,
                    Behavior::SaddleWithManifold {
                        interior_attractor: Some(a),
                        saddle,
                        ..
                    } => {
                        let s = spectrum_numeric(&c, saddle).unwrap();
                        assert_eq!(classify_local(&s), LocalClass::Saddle, "{case}");
                        a
                    }
                    _ => continue,
                };
                let s = spectrum_numeric(&c, stable).unwrap();
                assert_eq!(
                    classify_local(&s),
                    LocalClass::LocallyAsymptoticallyStable,
                    "{case} {:?} {s:?}",
                    c.values()
                );
            }
        }
    }
}

#[test]
fn characteristic_polynomial_has_zero_a11_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in CaseId::all() {
        let c = draw_params(&mut rng, case, regions(case)[0]);
        let s = riccati_planar::sample::draw_ic(&mut rng);
        let j = jacobian(&c, s).unwrap();
        let (c1, c0) = char_poly(&j);
        assert!((c1 + j.a22).abs() <= 1e-12 * j.a22.abs().max(1.0));
        assert!((c0 + j.a12 * j.a21).abs() <= 1e-12 * (j.a12 * j.a21).abs().max(1.0));
    }
}

#[test]
fn exact_spectra_for_cases_2_and_4() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let c = draw_params(&mut rng, CaseId::new(2).unwrap(), Region::Whole);
        let p = equilibria(&c).points()[0];
        let s = spectrum_numeric(&c, p).unwrap();
        assert!(s.distance(&Spectrum::real(0.0, -1.0)) <= 1e-12);
        assert_eq!(classify_local(&s), LocalClass::Nonhyperbolic);

        let c = draw_params(&mut rng, CaseId::new(4).unwrap(), Region::Stable);
        let g = c.get(riccati_planar::Symbol::Gamma2).unwrap();
        let p = equilibria(&c).points()[0];
        let s = spectrum_numeric(&c, p).unwrap();
        assert!(s.distance(&Spectrum::real(0.0, g)) <= 1e-12);
    }
    // every continuum point is nonhyperbolic
    let c = cp(4, &[2.0, 3.0, 1.0]);
    let s = spectrum_numeric(&c, equilibria(&c).continuum_point(0.7).unwrap()).unwrap();
    assert_eq!(classify_local(&s), LocalClass::Nonhyperbolic);
    assert_eq!(s.lambda2, Complex64::new(1.0, 0.0));
}

mod common;

use common::*;
use proptest::prelude::*;
use riccati_planar::registry::{
    all_specs, case_spec, case_table_json, normalize_1122, validate, Case22WithGain, Forbidden,
};
use riccati_planar::{step_case, CaseId, Error};

#[test]
fn every_case_accepts_ones() {
    for case in CaseId::all() {
        let n = case_spec(case).param_names.len();
        let p = validate(case, &vec![1.0; n]).unwrap();
        assert_eq!(p.values().len(), n);
        assert!(matches!(
            validate(case, &vec![1.0; n + 1]),
            Err(Error::ArityMismatch { .. })
        ));
    }
    assert_eq!(all_specs().len(), 17);
}

#[test]
fn forbidden_sets() {
    for spec in all_specs() {
        let expected = match spec.id.index() {
            2 | 20 => Forbidden::YZero,
            3 | 24 => Forbidden::XZero,
            _ => Forbidden::Nothing,
        };
        assert_eq!(spec.forbidden_initials, expected, "{}", spec.id);
    }
}

#[test]
fn rejects_nonpositive() {
    let c = CaseId::new(7).unwrap();
    for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(matches!(
            validate(c, &[1.0, bad, 1.0]),
            Err(Error::NonPositiveParameter { .. })
        ));
    }
}

#[test]
fn table_json_has_schema() {
    let v = case_table_json();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cases"].as_array().unwrap().len(), 17);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// First steps stay in the open quadrant wherever they are defined.
    #[test]
    fn first_step_is_positive(cp in arb_params(), s in arb_state()) {
        let next = step_case(&cp, s).unwrap();
        prop_assert!(next.x() > 0.0 && next.y() > 0.0);
    }

    #[test]
    fn normalization_scales_orbits(
        a1 in log_range(0.1, 10.0),
        big_a1 in log_range(0.1, 10.0),
        a2 in log_range(0.1, 10.0),
        b2 in log_range(0.1, 10.0),
        s in arb_state(),
    ) {
        let gain = Case22WithGain::new(a1, big_a1, a2, b2).unwrap();
        let norm = normalize_1122(&gain).unwrap();
        let mut orig = s;
        let mut scaled = gain.scale_state(s).unwrap();
        for _ in 0..50 {
            orig = gain.step(orig).unwrap();
            scaled = step_case(&norm, scaled).unwrap();
            prop_assert!(rel_err(b2 * orig.x(), scaled.x()) <= 1e-12);
            prop_assert!(rel_err(orig.y(), scaled.y()) <= 1e-12);
        }
    }
}

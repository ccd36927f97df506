use lacuna::alpha::{alpha_closed, alpha_closed_printed, alpha_series};
use lacuna::analytic::numeric_errata;
use lacuna::verify::{errata_suite, verify_two_interval, TwoIntervalVariant};

#[test]
fn exact_errata_are_confirmed() {
    let cases = errata_suite().unwrap();
    let ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
    for id in [
        "doubling_factorial",
        "mzv_phase",
        "inv_sqrt2_sign",
        "prop_main_exponent",
        "barnes_constant",
        "integral_example_constant",
        "alpha_a_normalization",
    ] {
        assert!(ids.contains(&id), "missing {id}");
    }
    for c in &cases {
        assert!(c.confirmed(), "{}: printed {:?} corrected {:?}", c.id, c.printed.status, c.corrected.status);
    }
}

#[test]
fn numeric_errata_are_confirmed() {
    let cases = numeric_errata().unwrap();
    assert_eq!(cases.len(), 3);
    for c in &cases {
        assert!(c.confirmed(), "{}: {:?} / {:?}", c.id, c.printed, c.corrected);
    }
}

#[test]
fn printed_phase_disagrees_for_three_intervals() {
    let table = alpha_series(3, 3).unwrap();
    for k in 0..=3 {
        assert_eq!(alpha_closed(3, k).unwrap(), table.values[k]);
        assert_ne!(alpha_closed_printed(3, k).unwrap(), table.values[k]);
    }
}

#[test]
fn printed_sign_fails_only_for_inverse_sqrt2() {
    for n in 0..=4 {
        assert!(!verify_two_interval(n, TwoIntervalVariant::InvSqrt2, true).passed());
        assert!(verify_two_interval(n, TwoIntervalVariant::InvSqrt2, false).passed());
    }
}

mod common;

use common::{brute_theta, catalogued_forms};
use ternary_theta::arith::{hurwitz_rep_of_square, HurwitzForm};
use ternary_theta::classify::{excluded, CatalogId};
use ternary_theta::lattice::{RestrictedPreset, TernaryForm};

#[test]
fn enumeration_matches_brute_force() {
    for form in catalogued_forms() {
        let fast = form.theta_series(500).unwrap();
        assert_eq!(fast.coeffs(), brute_theta(&form, 500, None).as_slice(), "{form}");
    }
}

#[test]
fn skewed_forms_match_brute_force() {
    // Reduced but far from diagonal, including negative cross terms.
    for form in [
        TernaryForm::new(2, 3, 5, 1, -1, 1),
        TernaryForm::new(3, 3, 7, -2, 3, -3),
        TernaryForm::new(5, 6, 11, 6, 5, 4),
    ] {
        assert!(form.is_positive_definite());
        let fast = form.theta_series(300).unwrap();
        assert_eq!(fast.coeffs(), brute_theta(&form, 300, None).as_slice(), "{form}");
    }
}

#[test]
fn restricted_sums_match_brute_force() {
    for preset in RestrictedPreset::ALL {
        let fast = preset.theta(600).unwrap();
        let slow = brute_theta(&preset.form(), 600, Some(&preset.system()));
        assert_eq!(fast.coeffs(), slow.as_slice(), "{preset:?}");
    }
}

#[test]
fn closed_forms_match_lattice() {
    for id in HurwitzForm::ALL {
        let series: Vec<_> = id.forms().iter().map(|f| f.theta_series(60 * 60).unwrap()).collect();
        for n in 1..=60u64 {
            let lattice: i64 = series.iter().map(|s| s.coeffs()[(n * n) as usize]).sum();
            assert_eq!(hurwitz_rep_of_square(id, n).unwrap() as i64, lattice, "{id} n={n}");
        }
    }
}

#[test]
fn excluded_sets_match_counts() {
    for id in CatalogId::ALL {
        let theta = id.form().theta_series(3000).unwrap();
        for n in 1..=3000u64 {
            let v = excluded(id, n).unwrap();
            assert_eq!(v.excluded(), theta.coeffs()[n as usize] == 0, "{id} n={n} {:?}", v.reason);
        }
    }
}

#[test]
fn degenerate_forms_are_rejected() {
    for form in
        [TernaryForm::new(1, 1, 1, 0, 0, 4), TernaryForm::diagonal(1, 1, 0), TernaryForm::diagonal(-1, 1, 1)]
    {
        assert!(!form.is_positive_definite());
        assert!(form.theta_series(10).is_err());
    }
}

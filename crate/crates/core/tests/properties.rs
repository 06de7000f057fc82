mod common;

use proptest::prelude::*;

use common::unimodular;

use ternary_theta::arith::{factorize, kronecker};
use ternary_theta::lattice::BinaryForm;
use ternary_theta::theta::{classical, sum_side, ThetaKind};
use ternary_theta::QSeries;

fn series(max_len: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-50i64..50, 1..max_len).prop_map(|c| QSeries::from_coeffs(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binary_theta_is_unimodular_invariant(m in unimodular(), which in 0usize..4) {
        let form = [BinaryForm::new(1, 0, 1), BinaryForm::new(1, 1, 1),
                    BinaryForm::new(2, 1, 3), BinaryForm::new(1, 0, 3)][which];
        let moved = form.apply_unimodular(m).unwrap();
        prop_assert_eq!(form.theta_series(300).unwrap(), moved.theta_series(300).unwrap());
    }

    #[test]
    fn multiplication_commutes_and_divides_back(a in series(40), b in series(40)) {
        let n = a.trunc().min(b.trunc());
        let (a, b) = (a.truncate(n).unwrap(), b.truncate(n).unwrap());
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        // Dividing by a unit-constant series recovers the other factor.
        let unit = b.sub(&QSeries::monomial(b.coeffs()[0] - 1, 0, n)).unwrap();
        prop_assert_eq!(a.mul(&unit).unwrap().div(&unit).unwrap(), a);
    }

    #[test]
    fn projections_partition(a in series(60), t in 1usize..7) {
        let mut total = QSeries::zero(a.trunc());
        for r in 0..t {
            total = total.add(&a.project(t, r).unwrap()).unwrap();
        }
        prop_assert_eq!(total, a);
    }

    #[test]
    fn kronecker_is_multiplicative_in_the_top(a in -200i64..200, b in -200i64..200, n in 1i64..2000) {
        prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
    }

    #[test]
    fn factorization_round_trips(n in 1u64..u32::MAX as u64) {
        let f = factorize(n).unwrap();
        let back: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(back, n);
    }
}

#[test]
fn sum_and_product_sides_agree() {
    for kind in ThetaKind::ALL {
        for k in [1, 2, 3] {
            assert_eq!(sum_side(kind, k, 400).unwrap(), classical(kind, k, 400).unwrap(), "{kind} k={k}");
        }
    }
}

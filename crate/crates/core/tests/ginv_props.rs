mod support;

use proptest::prelude::*;
use support::triples::triples;
use wmha::exactla::{generalized_inverse, generalized_inverse_by_constraints};
use wmha::{LinAlgError, Matrix};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn four_identities_hold(x in triples()) {
        let r = generalized_inverse(&x.t, &x.e, &x.f).unwrap();
        prop_assert_eq!(x.t.mul(&r), x.e.clone());
        prop_assert_eq!(r.mul(&x.t), x.f.clone());
        prop_assert_eq!(x.t.mul(&r).mul(&x.t), x.t.clone());
        prop_assert_eq!(r.mul(&x.t).mul(&r), r.clone());
        prop_assert_eq!(r.rank(), x.rank);
    }

    #[test]
    fn both_constructions_agree(x in triples()) {
        let a = generalized_inverse(&x.t, &x.e, &x.f).unwrap();
        let b = generalized_inverse_by_constraints(&x.t, &x.e, &x.f).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn swapped_projections_are_rejected(x in triples()) {
        prop_assume!(x.rank < x.t.rows());
        let wrong = Matrix::identity(x.t.rows());
        let err = generalized_inverse(&x.t, &wrong, &x.f).unwrap_err();
        prop_assert!(matches!(err, LinAlgError::BadProjections(_)));
    }
}

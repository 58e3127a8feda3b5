use num_traits::{One, Zero};
use proptest::prelude::*;
use wmha::exactla::SparseOp;
use wmha::report::{matrix_doc, op_doc, parse_matrix, parse_op};
use wmha::{Matrix, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
        .prop_map(|(a, b, c, d)| &Scalar::from_frac(a, b) + &(&Scalar::from_frac(c, d) * &Scalar::i()))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(prop_oneof![2 => Just(Scalar::zero()), 3 => scalar()], rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone()))
}

fn square() -> impl Strategy<Value = (Matrix, Matrix, Matrix)> {
    (1usize..=5).prop_flat_map(|n| (matrix(n, n), matrix(n, n), matrix(n, n)))
}

proptest! {
    #[test]
    fn scalar_strings_round_trip(x in scalar()) {
        prop_assert_eq!(Scalar::parse_parts(&x.re_string(), &x.im_string()).unwrap(), x);
    }

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn matrix_product_is_associative((a, b, c) in square()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn rank_nullity(m in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (rank, image, kernel) = m.rank_image_kernel();
        prop_assert_eq!(rank + kernel.dim(), m.cols());
        prop_assert_eq!(image.dim(), rank);
        for v in kernel.basis() {
            prop_assert!(m.apply_sparse(v).is_zero());
        }
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in square()) {
        match a.inverse() {
            Some(inv) => {
                prop_assert!(a.mul(&inv).is_identity());
                prop_assert!(inv.mul(&a).is_identity());
            }
            None => prop_assert!(a.rank() < a.rows()),
        }
    }

    #[test]
    fn sparse_documents_round_trip(m in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let op = SparseOp::from_matrix(&m);
        let d = op_doc(&op);
        prop_assert_eq!(parse_op(d.rows, d.cols, &d.entries).unwrap(), op);
        let d = matrix_doc(&m);
        prop_assert_eq!(parse_matrix(d.rows, d.cols, &d.entries).unwrap(), m);
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use seidel_core::constructions::{join, reversal_det};
use seidel_core::SeidelMatrix;

fn matrix(max_n: usize) -> impl Strategy<Value = SeidelMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        let words = n * (n - 1) / 2;
        prop::collection::vec(any::<u64>(), words.div_ceil(64).max(1))
            .prop_map(move |w| SeidelMatrix::from_words(n, w))
    })
}

fn even_matrix(max_half: usize) -> impl Strategy<Value = SeidelMatrix> {
    (1..=max_half).prop_flat_map(|h| {
        prop::collection::vec(any::<u64>(), 1).prop_map(move |w| SeidelMatrix::from_words(2 * h, w))
    })
}

fn subset_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<bool>(), n)
        .prop_map(|m| m.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn switching_preserves_det_and_charpoly(
        (s, sub) in matrix(9).prop_flat_map(|s| { let n = s.order(); (Just(s), subset_of(n)) })
    ) {
        let t = s.switch(&sub).unwrap();
        prop_assert_eq!(t.determinant(), s.determinant());
        prop_assert_eq!(t.char_poly(), s.char_poly());
    }

    #[test]
    fn normal_form_is_a_class_invariant(
        (s, sub) in matrix(9).prop_flat_map(|s| { let n = s.order(); (Just(s), subset_of(n)) })
    ) {
        let t = s.switch(&sub).unwrap();
        let a = s.switch_normalize();
        prop_assert_eq!(&a, &t.switch_normalize());
        prop_assert!((1..s.order()).all(|j| a.entry(0, j) == 1));
    }

    #[test]
    fn pfaffian_squares_to_det(s in even_matrix(5)) {
        let pf = s.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, s.determinant());
    }

    #[test]
    fn odd_order_is_singular(s in matrix(9)) {
        if s.order() % 2 == 1 {
            prop_assert_eq!(s.determinant(), BigInt::from(0));
        } else {
            // even order: det is an odd square
            let pf = s.pfaffian().unwrap();
            prop_assert!(pf.bit(0));
        }
    }

    #[test]
    fn reversal_matches_inverse_entry(
        (s, i, j) in even_matrix(4).prop_flat_map(|s| {
            let n = s.order();
            (Just(s), 0..n, 1..n)
        })
    ) {
        let j = (i + j) % s.order();
        let r = reversal_det(&s, i, j).unwrap();
        prop_assert_eq!(&r.det, &r.matrix.determinant());
        let one = BigRational::from_integer(BigInt::from(1));
        let f = one + r.inverse_entry.clone() * BigInt::from(2);
        prop_assert_eq!(BigRational::from_integer(s.determinant()) * &f * &f, BigRational::from_integer(r.det));
    }

    #[test]
    fn join_is_multiplicative(a in matrix(6), b in even_matrix(3)) {
        prop_assert_eq!(join(&a, &b).determinant(), a.determinant() * b.determinant());
        prop_assert_eq!(join(&b, &a).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn inverse_is_skew(s in even_matrix(4)) {
        let inv = s.inverse().unwrap();
        let n = s.order();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(inv.get(i, j).clone(), -inv.get(j, i));
            }
        }
    }
}

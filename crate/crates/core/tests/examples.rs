use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use seidel_core::analysis::{expected_charpoly, expected_charpoly_graph};
use seidel_core::constructions::reversal_det;
use seidel_core::search::{enumerate_dets, representatives};
use seidel_core::{Graph, GraphSeidel, MatrixRecord, SeidelMatrix, Tournament};

// 1 -> 2, 1 -> 3, 1 -> 4, 2 -> 3, 3 -> 4, 4 -> 2
fn diamond() -> SeidelMatrix {
    Tournament::from_arcs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
        .unwrap()
        .seidel()
}

#[test]
fn diamond_reversal_drops_det_to_one() {
    let s = diamond();
    assert_eq!(s.determinant(), BigInt::from(9));
    let r = reversal_det(&s, 0, 1).unwrap();
    assert_eq!(r.det, BigInt::from(1));
    assert_eq!(r.matrix.determinant(), BigInt::from(1));
    assert_eq!(s.pfaffian().unwrap().magnitude(), &3u32.into());
    assert_eq!(s.char_poly().coeffs().to_vec(), [9, 0, 6, 0, 1].map(BigInt::from).to_vec());
}

#[test]
fn order_four_all_matrices_versus_representatives() {
    let mut all = BTreeSet::new();
    for code in 0u64..64 {
        all.insert(SeidelMatrix::from_words(4, vec![code]).determinant());
    }
    let reps: BTreeSet<BigInt> = representatives(4).map(|s| s.determinant()).collect();
    assert_eq!(all, reps);
    assert_eq!(all, [1, 9].into_iter().map(BigInt::from).collect());
    let report = enumerate_dets(4, 1).unwrap();
    assert_eq!(report.sqrt_dets, vec![1, 3]);
}

#[test]
fn expected_charpoly_is_the_average_at_order_six() {
    // sum over all 2^15 matrices divided by the count, coefficient by coefficient
    let total = 1u64 << 15;
    let mut sums = vec![BigInt::from(0); 7];
    for code in 0..total {
        let c = SeidelMatrix::from_words(6, vec![code]).char_poly();
        for (d, v) in c.coeffs().iter().enumerate() {
            sums[d] += v;
        }
    }
    let want = expected_charpoly(6);
    for (d, s) in sums.into_iter().enumerate() {
        let avg = BigRational::new(s, BigInt::from(total));
        assert_eq!(avg, BigRational::from_integer(want.coeff(d)), "degree {d}");
    }
}

#[test]
fn expected_charpoly_of_the_four_cycle() {
    let g = Graph::cycle(4);
    let mut sums = vec![BigInt::from(0); 5];
    for code in 0u64..16 {
        let c = GraphSeidel::from_code(g.clone(), code).char_poly();
        for (d, v) in c.coeffs().iter().enumerate() {
            sums[d] += v;
        }
    }
    // x^4 + 4x^2 + 2: four edges and two perfect matchings
    let want = expected_charpoly_graph(&g);
    let got: Vec<BigInt> = sums.into_iter().map(|s| s / 16).collect();
    assert_eq!(got, want.coeffs().to_vec());
    assert_eq!(want.coeffs().to_vec(), [2, 0, 4, 0, 1].map(BigInt::from).to_vec());
}

#[test]
fn record_roundtrip_through_json_line() {
    let s = diamond();
    let line = MatrixRecord::from(&s).to_json_line();
    let rec: MatrixRecord = serde_json::from_str(&line).unwrap();
    assert_eq!(SeidelMatrix::try_from(&rec).unwrap(), s);
}

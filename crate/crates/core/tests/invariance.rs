use alfeld::geometry::{alfeld_split, SimplicialComplex};
use alfeld::linalg::{rank, Limits};
use alfeld::poly::graded_dim;
use alfeld::spline::{spline_dim_affine, spline_dim_graded, SmoothnessProblem};
use alfeld::{Int, Matrix, Rational};
use proptest::prelude::*;

fn q(v: i64) -> Rational {
    Rational::from_integer(Int::from(v))
}

fn dims(k: &SimplicialComplex, r: u32, kmax: u32) -> Vec<usize> {
    let p = SmoothnessProblem::new(k.clone(), r);
    (0..=kmax).map(|d| spline_dim_graded(&p, d, &Limits::default()).unwrap()).collect()
}

fn permutation(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dimensions_invariant_under_affine_maps(
        a in prop::collection::vec(-3i64..=3, 4),
        b in prop::collection::vec(-5i64..=5, 2),
        r in 0u32..2,
    ) {
        prop_assume!(a[0] * a[3] - a[1] * a[2] != 0);
        let linear = vec![vec![q(a[0]), q(a[1])], vec![q(a[2]), q(a[3])]];
        let shift = vec![q(b[0]), q(b[1])];
        let base = alfeld_split(2);
        let moved = base.transformed(&linear, &shift).unwrap();
        prop_assert_eq!(dims(&base, r, 4), dims(&moved, r, 4));
    }

    #[test]
    fn dimensions_invariant_under_relabeling(
        perm in permutation(4),
        cells in permutation(3),
        r in 0u32..3,
    ) {
        let base = alfeld_split(2);
        let relabeled = base.relabeled(&perm, &cells).unwrap();
        prop_assert_eq!(dims(&base, r, 5), dims(&relabeled, r, 5));
    }

    #[test]
    fn three_dimensional_split_invariant_under_relabeling(perm in permutation(5), cells in permutation(4)) {
        let base = alfeld_split(3);
        let relabeled = base.relabeled(&perm, &cells).unwrap();
        prop_assert_eq!(dims(&base, 1, 3), dims(&relabeled, 1, 3));
    }

    #[test]
    fn rank_nullity_and_transpose(entries in prop::collection::vec(-4i64..=4, 20), cols in 1usize..6) {
        let rows = entries.len() / cols;
        let dense: Vec<Vec<Int>> = entries.chunks(cols).take(rows).map(|c| c.iter().map(|&v| Int::from(v)).collect()).collect();
        let m = Matrix::from_dense(cols, dense);
        let lim = Limits::default();
        let rk = rank(&m, &lim).unwrap();
        prop_assert!(rk <= rows.min(cols));
        prop_assert_eq!(rk, rank(&m.transpose(), &lim).unwrap());
        let mut flipped = m.clone();
        for i in (0..rows).step_by(2) {
            flipped.scale_row(i, &Int::from(-1));
        }
        prop_assert_eq!(rk, rank(&flipped, &lim).unwrap());
    }
}

#[test]
fn single_triangle_is_the_full_polynomial_space() {
    let t = SimplicialComplex::new(2, vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(1)]], vec![vec![0, 1, 2]]).unwrap();
    for r in 0..3 {
        assert_eq!(dims(&t, r, 6), (0..=6).map(|k| graded_dim(3, k)).collect::<Vec<_>>());
    }
}

#[test]
fn two_triangles_sharing_an_edge() {
    // S^r_k = P_k + L^{r+1} P_{k-r-1} for a single interior edge
    let k = SimplicialComplex::new(
        2,
        vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]],
        vec![vec![0, 1, 2], vec![1, 2, 3]],
    )
    .unwrap();
    for r in 0..3u32 {
        let p = SmoothnessProblem::new(k.clone(), r);
        for d in 0..7u32 {
            let expected = graded_dim(3, d as i64) + graded_dim(3, d as i64 - r as i64 - 1);
            assert_eq!(spline_dim_graded(&p, d, &Limits::default()).unwrap(), expected);
            assert_eq!(spline_dim_affine(&p, d, &Limits::default()).unwrap(), expected);
        }
    }
}

#[test]
fn complex_round_trips_through_json() {
    let base = alfeld_split(3);
    let text = serde_json::to_string(&alfeld::geometry::ComplexFile::from_complex(&base)).unwrap();
    let back = SimplicialComplex::from_json_str(&text).unwrap();
    assert_eq!(dims(&base, 1, 3), dims(&back, 1, 3));
}

#[test]
fn rational_coordinates_from_json() {
    let text = r#"{
        "dim": 2,
        "vertices": [["0", "0"], ["3", "0"], ["0", "3"], ["1/2", "2/3"]],
        "cells": [[0, 1, 3], [0, 2, 3], [1, 2, 3]]
    }"#;
    let k = SimplicialComplex::from_json_str(text).unwrap();
    // a generic interior point gives the same dimensions as the barycentric split
    assert_eq!(dims(&k, 1, 5), dims(&alfeld_split(2), 1, 5));
}

#[test]
fn malformed_json_is_rejected() {
    assert!(SimplicialComplex::from_json_str("{").is_err());
    let bad_coord = r#"{"dim": 1, "vertices": [["0"], ["x"]], "cells": [[0, 1]]}"#;
    assert!(SimplicialComplex::from_json_str(bad_coord).is_err());
    let degenerate = r#"{"dim": 2, "vertices": [["0","0"],["1","1"],["2","2"]], "cells": [[0,1,2]]}"#;
    assert!(SimplicialComplex::from_json_str(degenerate).is_err());
}

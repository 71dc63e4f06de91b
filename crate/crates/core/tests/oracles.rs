mod common;

use common::{abelian_group, determinant, invariant_factors_by_minors, seifert_h1};
use jdiagram::algebra::{abelianization, manifold_group, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

fn recorded(kind: &str) -> (usize, Vec<i128>) {
    let text = include_str!("data/seifert_oracle.txt");
    let line = text
        .lines()
        .find(|l| l.starts_with(kind))
        .unwrap_or_else(|| panic!("no {kind} line"));
    let nums: Vec<i128> = line.split_whitespace().skip(1).map(|t| t.parse().unwrap()).collect();
    (nums[0] as usize, nums[1..].to_vec())
}

#[test]
fn seifert_oracle_matches_recording() {
    let fibres = [(3, 1), (3, 1), (3, 1)];
    assert_eq!(seifert_h1(-1, &fibres, false), recorded("standard"));
    assert_eq!(seifert_h1(-1, &fibres, true), recorded("literal"));
}

#[test]
fn seifert_oracle_on_known_manifolds() {
    // (Oo0 | 0; ) with no fibres is S^2 x S^1.
    assert_eq!(seifert_h1(0, &[], false), (1, vec![]));
    // (Oo0 | -1; (2,1), (3,1), (5,1)) is the Poincare sphere.
    assert_eq!(seifert_h1(-1, &[(2, 1), (3, 1), (5, 1)], false), (0, vec![]));
}

#[test]
fn torus_fixture_matches_the_standard_convention_only() {
    let d = common::load("s333_torus");
    let h = abelianization(&manifold_group(&d).unwrap());
    let torsion: Vec<i128> = h.torsion.iter().map(|t| t.try_into().unwrap()).collect();
    assert_eq!((h.free_rank, torsion.clone()), recorded("standard"));
    assert_ne!((h.free_rank, torsion), recorded("literal"));
}

#[test]
fn minor_oracle_on_hand_examples() {
    assert_eq!(invariant_factors_by_minors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    assert_eq!(abelian_group(&[vec![3, 0], vec![0, 0]]), (1, vec![3]));
    assert_eq!(determinant(&[vec![1, 2], vec![3, 4]]), -2);
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

fn snf(m: &[Vec<i64>]) -> Vec<i128> {
    smith_normal_form(&IntMatrix::from_rows(m))
        .iter()
        .map(|x| i128::try_from(x.clone()).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn smith_form_matches_minor_oracle(m in matrix()) {
        let got = snf(&m);
        prop_assert_eq!(&got, &invariant_factors_by_minors(&m));
        for w in got.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        if m.len() == m[0].len() {
            let det = determinant(&m).abs();
            let prod: i128 = got.iter().product();
            prop_assert_eq!(if got.len() == m.len() { prod } else { 0 }, det);
        }
    }

    #[test]
    fn smith_form_ignores_unimodular_row_operations(m in matrix(), k in -3i64..=3) {
        let mut n = m.clone();
        if n.len() >= 2 {
            let first = n[0].clone();
            for (a, b) in n[1].iter_mut().zip(first) {
                *a += k * b;
            }
        }
        prop_assert_eq!(snf(&m), snf(&n));
    }
}

#[test]
fn big_entries_survive() {
    let m = IntMatrix::from_rows(&[vec![BigInt::from(i64::MAX) * 4]]);
    assert_eq!(smith_normal_form(&m), vec![BigInt::from(i64::MAX) * 4]);
}

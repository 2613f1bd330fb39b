//! The brute-force oracles against answers worked out by hand.

mod common;

use common::oracle::{commutator_quotient_dim, connes_dims, hochschild_dims};
use cychom::algebra::Algebra;

#[test]
fn ground_field_by_hand() {
    assert_eq!(hochschild_dims(&Algebra::ground_field(), 4), vec![1, 0, 0, 0, 0]);
    assert_eq!(connes_dims(&Algebra::ground_field(), 4), vec![1, 0, 1, 0, 1]);
}

#[test]
fn dual_numbers_classical() {
    assert_eq!(hochschild_dims(&Algebra::dual_numbers(), 4), vec![2, 1, 1, 1, 1]);
    // in characteristic zero the reduced part lives in even degrees only
    assert_eq!(connes_dims(&Algebra::dual_numbers(), 3), vec![2, 0, 2, 0]);
}

#[test]
fn separable_group_algebras() {
    for k in 1..=4 {
        let a = common::cyclic_group_algebra(k);
        let mut expected = vec![0; 5];
        expected[0] = k;
        assert_eq!(hochschild_dims(&a, 4), expected, "Z/{k}");
        assert_eq!(commutator_quotient_dim(&a), k);
    }
    assert_eq!(commutator_quotient_dim(&common::m2()), 1);
    assert_eq!(connes_dims(&common::m2(), 3), vec![1, 0, 1, 0]);
}

//! Hochschild homology does not see matrix amplification.

mod common;

use cychom::algebra::{matrix_algebra, Algebra};
use cychom::homology::{hochschild_homology, morita_compare};

#[test]
fn matrix_algebras_have_the_same_hochschild_homology() {
    for (name, a) in [
        ("ground field", Algebra::ground_field()),
        ("Z/2", common::cyclic_group_algebra(2)),
        ("dual numbers", Algebra::dual_numbers()),
    ] {
        let r = morita_compare(&a, 2, 3).unwrap();
        assert!(r.all_equal(), "{name}: {:?} vs {:?}", r.algebra, r.matrix_algebra);
        assert_eq!(r.algebra, hochschild_homology(&a, 3).unwrap().dims);
    }
}

#[test]
fn three_by_three_over_the_field() {
    let m3 = matrix_algebra(&Algebra::ground_field(), 3).unwrap();
    assert_eq!(hochschild_homology(&m3, 2).unwrap().dims, [1, 0, 0]);
    assert!(morita_compare(&common::cyclic_group_algebra(3), 3, 1).unwrap().all_equal());
}

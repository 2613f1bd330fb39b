//! Hecke towers: stage homology, induced maps and continuity.

mod common;

use cychom::algebra::{group_algebra, FiniteGroup};
use cychom::homology::{hochschild_homology, Theory};
use cychom::towers::{continuity_check, hecke_tower, homology_of_stages, hp_continuity_check, DirectSystem, TowerError};

fn s3_tower() -> (FiniteGroup, DirectSystem) {
    let g = FiniteGroup::symmetric(3);
    let chain = [g.subgroup(&[0, 1]).unwrap(), g.trivial_subgroup()];
    let ds = hecke_tower(&g, &chain).unwrap();
    (g, ds)
}

fn z4_tower() -> (FiniteGroup, DirectSystem) {
    let g = FiniteGroup::cyclic(4);
    let chain = [g.subgroup(&[0, 2]).unwrap(), g.trivial_subgroup()];
    let ds = hecke_tower(&g, &chain).unwrap();
    (g, ds)
}

#[test]
fn stage_dimensions() {
    for ((g, ds), hh0) in [(s3_tower(), [2, 3]), (z4_tower(), [2, 4])] {
        let r = continuity_check(&ds, Theory::HH, 2).unwrap();
        let got: Vec<usize> = r.stage_dims.iter().map(|d| d[0]).collect();
        assert_eq!(got, hh0);
        assert!(r.all_pass(), "{r:?}");
        // the last stage is the group algebra itself
        let direct = hochschild_homology(&group_algebra(&g), 2).unwrap().dims;
        assert_eq!(r.stage_dims.last().unwrap(), &direct);
        assert_eq!(ds.last().dim(), g.order());
    }
}

#[test]
fn last_stage_is_the_group_algebra() {
    for (g, ds) in [s3_tower(), z4_tower()] {
        let direct = group_algebra(&g);
        let last = ds.last();
        assert_eq!(last.dim(), direct.dim());
        assert_eq!(last.table(), direct.table());
        assert_eq!(last.unit(), direct.unit());
    }
}

#[test]
fn composites_are_multiplicative_and_injective() {
    let (_, ds) = s3_tower();
    let f = ds.composite(0, 1);
    assert!(f.multiplicativity_failure().is_none());
    assert!(f.is_injective());
    assert!(ds.composite(1, 1).is_injective());
}

#[test]
fn cyclic_filtration_is_monotone() {
    for (_, ds) in [s3_tower(), z4_tower()] {
        let r = continuity_check(&ds, Theory::HC, 3).unwrap();
        assert!(r.all_pass());
        for d in &r.degrees {
            assert!(d.monotone);
            assert_eq!(d.cumulative_dims.last(), Some(&d.final_dim));
        }
    }
}

#[test]
fn induced_maps_land_in_the_final_stage() {
    let (_, ds) = z4_tower();
    let sh = homology_of_stages(&ds, Theory::HH, 2).unwrap();
    assert_eq!(sh.reports.len(), 2);
    let m = &sh.to_final[0][0];
    assert_eq!((m.nrows(), m.ncols()), (4, 2));
    assert_eq!(cychom::linalg::rank(m), 2);
    assert_eq!(cychom::linalg::rank(&sh.to_final[1][0]), 4);
}

#[test]
fn periodic_continuity() {
    for ((_, ds), even) in [(s3_tower(), [2, 3]), (z4_tower(), [2, 4])] {
        let r = hp_continuity_check(&ds, 3).unwrap();
        assert_eq!(r.common_n, 0);
        assert_eq!(r.hp_even, even);
        assert_eq!(r.hp_odd, [0, 0]);
        assert!(r.pass);
    }
}

#[test]
fn refuses_without_certificates() {
    let ds = DirectSystem::constant(&cychom::algebra::Algebra::dual_numbers(), 2);
    assert!(matches!(hp_continuity_check(&ds, 4), Err(TowerError::CertMissing { stage: 0, .. })));
}

#[test]
fn rejects_bad_chains() {
    let g = FiniteGroup::symmetric(3);
    let k = g.subgroup(&[0, 1]).unwrap();
    assert!(hecke_tower(&g, &[g.trivial_subgroup(), k.clone()]).is_err());
    assert!(hecke_tower(&g, &[k]).is_err());
    assert!(matches!(hecke_tower(&g, &[]), Err(TowerError::Empty)));
}

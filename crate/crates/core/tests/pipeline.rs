use stone_groupoid::constructions::{skeletal_replacement, MorphismSet};
use stone_groupoid::generators::{action_tower, coset_action, cyclic_tower, translation_tower};
use stone_groupoid::realization::{pipeline, realize_finite, realize_tower, LimitWitness};
use stone_groupoid::{Error, FiniteGroup, FiniteGroupoid, FunctorMaps, GroupoidTower, DEFAULT_ORACLE_BOUND};

/// Stabilizer of the point 0 under `a . x = a + x mod p` in `Z/p^k`, by
/// enumeration.
fn stabilizer_order(p: usize, k: u32) -> usize {
    (0..p.pow(k)).filter(|a| a % p == 0).count()
}

#[test]
fn cyclic_tower_through_the_pipeline() {
    let out = pipeline(&cyclic_tower(2, 1..=3), None, DEFAULT_ORACLE_BOUND).unwrap();
    assert_eq!(out.presentation.group_orders(), vec![vec![2], vec![4], vec![8]]);
    let kernels: Vec<Vec<usize>> = out.trace.kernels.iter().map(|k| k.morphisms().to_vec()).collect();
    assert_eq!(kernels, vec![vec![0, 2, 4, 6], vec![0, 4], vec![0]]);
}

#[test]
fn translation_tower_gives_a_point() {
    let t = translation_tower(2, 3);
    let out = pipeline(&t, None, DEFAULT_ORACLE_BOUND).unwrap();
    assert!(out.presentation.levels.iter().all(|l| l.is_point()));
    // hand-built skeleton: one object with only its unit at every level
    let point = FiniteGroupoid::discrete(1);
    for n in 0..=t.depth() {
        assert_eq!(out.trace.skeleton.tower.level(n), &point);
        assert_eq!(out.presentation.levels[n], realize_finite(&point).unwrap());
    }
}

#[test]
fn action_tower_matches_stabilizers() {
    for p in [2, 3] {
        let t = action_tower(p, 3);
        let out = pipeline(&t, None, DEFAULT_ORACLE_BOUND).unwrap();
        for (n, level) in out.presentation.levels.iter().enumerate() {
            assert_eq!(level.components(), 1);
            let k = n as u32 + 1;
            assert_eq!(level.group_orders(), vec![stabilizer_order(p, k)]);
            assert!(level.groups[0].is_isomorphic(&FiniteGroup::cyclic(p.pow(k - 1))));
        }
        assert!(out.trace.limit.holds());
        assert!(out.trace.reconstruction.is_isomorphism());
    }
}

#[test]
fn single_level_is_realize_of_the_skeleton() {
    let s3 = FiniteGroup::symmetric(3);
    let order_two = s3.subgroups().into_iter().find(|h| h.len() == 2).unwrap();
    let g = coset_action(&s3, &order_two);
    let out = pipeline(&GroupoidTower::single(g.clone()), None, DEFAULT_ORACLE_BOUND).unwrap();
    let direct = realize_finite(&skeletal_replacement(&g).skeleton).unwrap();
    assert_eq!(out.presentation.levels, vec![direct]);
}

#[test]
fn pipeline_reports_the_failing_stage() {
    let point = FiniteGroupoid::discrete(1);
    let broken = GroupoidTower::new(
        vec![FiniteGroupoid::discrete(2), point],
        vec![FunctorMaps {
            obj_map: vec![0],
            mor_map: vec![0],
        }],
    )
    .unwrap();
    let err = pipeline(&broken, None, DEFAULT_ORACLE_BOUND).unwrap_err();
    assert!(matches!(err, Error::Stage { stage: "validate", .. }), "{err}");

    let t = cyclic_tower(2, 1..=2);
    let missing_unit = MorphismSet::from_indices(4, [1]).unwrap();
    let err = pipeline(&t, Some(&missing_unit), DEFAULT_ORACLE_BOUND).unwrap_err();
    assert!(matches!(err, Error::Stage { stage: "vandantzig", .. }), "{err}");
}

#[test]
fn presentation_of_the_hand_built_tower_agrees() {
    let hand = GroupoidTower::new(
        [2, 4, 8]
            .iter()
            .map(|&n| FiniteGroupoid::from_group(&FiniteGroup::cyclic(n)))
            .collect(),
        vec![
            FunctorMaps {
                obj_map: vec![0],
                mor_map: vec![0, 1, 0, 1],
            },
            FunctorMaps {
                obj_map: vec![0],
                mor_map: vec![0, 1, 2, 3, 0, 1, 2, 3],
            },
        ],
    )
    .unwrap();
    assert_eq!(hand, cyclic_tower(2, 1..=3));
    let out = pipeline(&hand, None, DEFAULT_ORACLE_BOUND).unwrap();
    assert_eq!(out.presentation, realize_tower(&hand).unwrap());
}

#[test]
fn limit_check_names_the_missing_element() {
    let bz2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
    let t = GroupoidTower::new(
        vec![bz2.clone(), bz2],
        vec![FunctorMaps {
            obj_map: vec![0],
            mor_map: vec![0, 0],
        }],
    )
    .unwrap();
    let check = stone_groupoid::realization::limit_commutation_check(&t, 1).unwrap();
    assert!(!check.holds());
    assert!(check
        .witnesses
        .contains(&LimitWitness::UnreachedElement { thread: vec![0, 0], level: 0, element: 1 }));
}

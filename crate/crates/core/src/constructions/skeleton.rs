//! Skeletal replacement of finite groupoids and of towers.

use crate::error::{Error, Result};
use crate::functor::{FunctorMaps, GroupoidFunctor};
use crate::groupoid::{FiniteGroupoid, ObjId};
use crate::tower::{validate_tower, GroupoidTower, TowerViolation};

/// A skeleton `X` of a groupoid `G`, with the inclusion `p: X -> G` and the
/// chosen section of `Obj(G) -> pi0(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonResult {
    pub skeleton: FiniteGroupoid,
    pub inclusion: FunctorMaps,
    /// `section[c]` is the object of `G` chosen in component `c`; object `c`
    /// of the skeleton is this object.
    pub section: Vec<ObjId>,
}

impl SkeletonResult {
    pub fn inclusion_functor<'a>(&'a self, parent: &'a FiniteGroupoid) -> GroupoidFunctor<'a> {
        GroupoidFunctor::new_unchecked(&self.skeleton, parent, &self.inclusion)
    }
}

/// Restricts `g` to the objects in `section` (one per component, listed by
/// component) and the loops at them.
fn skeleton_on(g: &FiniteGroupoid, section: Vec<ObjId>) -> SkeletonResult {
    let mut sorted = section.clone();
    sorted.sort_unstable();
    let morphisms: Vec<usize> = (0..g.num_morphisms())
        .filter(|&m| g.src(m) == g.tgt(m) && sorted.binary_search(&g.src(m)).is_ok())
        .collect();
    let restriction = g.restrict_unchecked(&sorted, &morphisms);
    // object c of the skeleton must be section[c]
    let mut position = vec![0; section.len()];
    for (c, x) in section.iter().enumerate() {
        position[sorted.binary_search(x).unwrap()] = c;
    }
    let skeleton = restriction
        .groupoid
        .relabel(&position, &(0..morphisms.len()).collect::<Vec<_>>())
        .expect("permutations are well formed");
    SkeletonResult {
        skeleton,
        inclusion: FunctorMaps {
            obj_map: section.clone(),
            mor_map: morphisms,
        },
        section,
    }
}

/// Skeleton on the least-index object of each component.
pub fn skeletal_replacement(g: &FiniteGroupoid) -> SkeletonResult {
    skeleton_on(g, g.pi0().representatives)
}

/// Level-wise skeletons of a tower, with sections chosen compatibly: each
/// level's representative maps onto the representative chosen one level
/// down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSkeleton {
    pub tower: GroupoidTower,
    pub levels: Vec<SkeletonResult>,
}

/// Skeletal replacement of a tower.
///
/// Level 0 uses least-index representatives. At level `n + 1` the
/// representative of a component is the least-index object of that component
/// lying over the representative already chosen for its image component.
/// Such an object exists whenever transitions are surjective on objects and
/// star-surjective.
pub fn skeletal_replacement_tower(t: &GroupoidTower) -> Result<TowerSkeleton> {
    if let Some(v) = validate_tower(t)
        .into_iter()
        .find(|v| matches!(v, TowerViolation::ObjectsNotCovered { .. }))
    {
        return Err(Error::SectionFailure {
            level: v.level(),
            reason: format!("transition misses object {}", v.witness()[0]),
        });
    }
    let mut levels: Vec<SkeletonResult> = vec![skeletal_replacement(t.level(0))];
    for n in 0..t.depth() {
        let upper = t.level(n + 1);
        let lower = t.level(n);
        let maps = t.transition_maps(n);
        let (up_parts, low_parts) = (upper.pi0(), lower.pi0());
        let below = &levels[n].section;
        let mut section = Vec::with_capacity(up_parts.count());
        for c in 0..up_parts.count() {
            let image = low_parts.component_of[maps.obj_map[up_parts.representatives[c]]];
            let wanted = below[image];
            let chosen = up_parts.members(c).find(|&x| maps.obj_map[x] == wanted).ok_or_else(|| {
                Error::SectionFailure {
                    level: n + 1,
                    reason: format!("no object of component {c} lies over representative {wanted}"),
                }
            })?;
            section.push(chosen);
        }
        levels.push(skeleton_on(upper, section));
    }

    let transitions = (0..t.depth())
        .map(|n| {
            let (up, low) = (&levels[n + 1], &levels[n]);
            let maps = t.transition_maps(n);
            let mut low_object = vec![usize::MAX; t.level(n).num_objects()];
            for (i, &x) in low.inclusion.obj_map.iter().enumerate() {
                low_object[x] = i;
            }
            let mut low_morphism = vec![usize::MAX; t.level(n).num_morphisms()];
            for (i, &g) in low.inclusion.mor_map.iter().enumerate() {
                low_morphism[g] = i;
            }
            FunctorMaps {
                obj_map: up.inclusion.obj_map.iter().map(|&x| low_object[maps.obj_map[x]]).collect(),
                mor_map: up.inclusion.mor_map.iter().map(|&g| low_morphism[maps.mor_map[g]]).collect(),
            }
        })
        .collect();
    let tower = GroupoidTower::new(levels.iter().map(|l| l.skeleton.clone()).collect(), transitions)
        .expect("transitions restrict to the chosen representatives");
    Ok(TowerSkeleton { tower, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{internal_essentially_surjective, internal_fully_faithful};
    use crate::group::FiniteGroup;

    #[test]
    fn pair_groupoid_skeleton() {
        let g = FiniteGroupoid::pair(2);
        let s = skeletal_replacement(&g);
        assert_eq!(s.section, vec![0]);
        assert_eq!(s.skeleton.num_objects(), 1);
        assert_eq!(s.skeleton.num_morphisms(), 1);
        let p = s.inclusion_functor(&g);
        assert!(internal_fully_faithful(&p));
        assert!(internal_essentially_surjective(&p));
    }

    #[test]
    fn skeletal_input_is_unchanged() {
        let z = |n| FiniteGroupoid::from_group(&FiniteGroup::cyclic(n));
        let g = FiniteGroupoid::disjoint_union(&[&z(2), &z(3)]);
        let s = skeletal_replacement(&g);
        assert_eq!(s.skeleton, g);
        assert_eq!(s.inclusion, FunctorMaps::identity(&g));
    }

    #[test]
    fn swap_action_skeleton_discards_the_swap() {
        let g = FiniteGroupoid::action(&FiniteGroup::cyclic(2), 2, |a, x| (a + x) % 2).unwrap();
        let s = skeletal_replacement(&g);
        assert_eq!(s.section, vec![0]);
        // loops at 0: only (identity, 0), morphism index 0
        let loops: Vec<usize> = (0..4).filter(|&m| g.src(m) == 0 && g.tgt(m) == 0).collect();
        assert_eq!(loops, vec![0]);
        assert_eq!(s.inclusion.mor_map, loops);
        assert!(s.skeleton.is_skeletal());
        assert_eq!(s.skeleton.isotropy(0).unwrap().order(), 1);
    }

    #[test]
    fn tower_sections_are_compatible() {
        // translation towers: pair groupoids on Z/2 <- Z/4 <- Z/8
        let levels: Vec<FiniteGroupoid> = [2, 4, 8].iter().map(|&n| FiniteGroupoid::pair(n)).collect();
        let transitions = (0..2)
            .map(|i| {
                let (lo, hi) = (2usize << i, 4usize << i);
                FunctorMaps {
                    obj_map: (0..hi).map(|x| x % lo).collect(),
                    mor_map: (0..hi * hi).map(|g| (g / hi % lo) * lo + g % hi % lo).collect(),
                }
            })
            .collect();
        let t = GroupoidTower::new(levels, transitions).unwrap();
        let s = skeletal_replacement_tower(&t).unwrap();
        for n in 0..=2 {
            assert!(s.tower.level(n).is_skeletal());
            assert_eq!(s.tower.level(n).num_morphisms(), 1);
        }
        assert_eq!(s.levels[2].section, vec![0]);
    }

    #[test]
    fn non_surjective_tower_has_no_section() {
        let point = FiniteGroupoid::discrete(1);
        let two = FiniteGroupoid::discrete(2);
        let t = GroupoidTower::new(
            vec![two, point],
            vec![FunctorMaps {
                obj_map: vec![0],
                mor_map: vec![0],
            }],
        )
        .unwrap();
        assert!(matches!(
            skeletal_replacement_tower(&t),
            Err(Error::SectionFailure { level: 0, .. })
        ));
    }
}

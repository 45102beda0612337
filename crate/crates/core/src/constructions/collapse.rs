//! Collapse maps and separating families of functors to finite groupoids.

use crate::error::Result;
use crate::functor::{FunctorMaps, GroupoidFunctor};
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, MorId, ObjId};

/// A functor out of a fixed source together with the groupoid it lands in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappedGroupoid {
    pub target: FiniteGroupoid,
    pub maps: FunctorMaps,
}

impl MappedGroupoid {
    pub fn functor<'a>(&'a self, source: &'a FiniteGroupoid) -> GroupoidFunctor<'a> {
        GroupoidFunctor::new_unchecked(source, &self.target, &self.maps)
    }
}

/// Retraction of a skeletal groupoid onto the isotropy group at `x`.
///
/// The target is the one-object groupoid whose morphism `i` is
/// `e.loops(x)[i]`. Loops at `x` go to themselves; every other morphism goes
/// to the identity.
pub fn collapse(e: &FiniteGroupoid, x: ObjId) -> Result<MappedGroupoid> {
    e.require_skeletal()?;
    let group = e.isotropy(x)?;
    let loops = e.loops(x);
    let target = FiniteGroupoid::from_group(&group);
    let identity = group.identity();
    let mut mor_map = vec![identity; e.num_morphisms()];
    for (i, &g) in loops.iter().enumerate() {
        mor_map[g] = i;
    }
    Ok(MappedGroupoid {
        target,
        maps: FunctorMaps {
            obj_map: vec![0; e.num_objects()],
            mor_map,
        },
    })
}

/// Which separating construction produced a family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatorKind {
    /// Objects in `block` go to object 0, the rest to object 1.
    Partition { block: Vec<ObjId> },
    Collapse { object: ObjId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub kind: SeparatorKind,
    pub mapped: MappedGroupoid,
}

/// Object count up to which every two-block partition is listed; beyond it
/// only partitions splitting off a single object are used.
pub const PARTITION_ENUMERATION_BOUND: usize = 16;

/// Functors to finite groupoids that separate objects and morphisms of a
/// skeletal groupoid: one functor to the two-object discrete groupoid for
/// each two-block partition of the objects, and the collapse at each object.
pub fn separating_family(e: &FiniteGroupoid) -> Result<Vec<Separator>> {
    e.require_skeletal()?;
    let n = e.num_objects();
    let blocks: Vec<Vec<ObjId>> = if n <= PARTITION_ENUMERATION_BOUND {
        // fix object 0 in the first block so each partition appears once
        (0u64..1 << n.saturating_sub(1))
            .map(|mask| {
                std::iter::once(0)
                    .chain((1..n).filter(|&x| mask >> (x - 1) & 1 == 1))
                    .collect::<Vec<_>>()
            })
            .filter(|block| block.len() < n)
            .collect()
    } else {
        (0..n).map(|x| vec![x]).collect()
    };
    let two_points = FiniteGroupoid::discrete(2);
    let mut family = Vec::with_capacity(blocks.len() + n);
    for block in blocks {
        let mut obj_map = vec![1; n];
        for &x in &block {
            obj_map[x] = 0;
        }
        let mor_map = (0..e.num_morphisms()).map(|g| obj_map[e.src(g)]).collect();
        family.push(Separator {
            kind: SeparatorKind::Partition { block },
            mapped: MappedGroupoid {
                target: two_points.clone(),
                maps: FunctorMaps { obj_map, mor_map },
            },
        });
    }
    for x in 0..n {
        family.push(Separator {
            kind: SeparatorKind::Collapse { object: x },
            mapped: collapse(e, x)?,
        });
    }
    Ok(family)
}

/// A pair of distinct elements identified by every member of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unseparated {
    Objects(ObjId, ObjId),
    Morphisms(MorId, MorId),
}

/// Checks that the product map `Theta` into all family targets is injective
/// on objects and on morphisms.
pub fn check_separation(e: &FiniteGroupoid, family: &[Separator]) -> Option<Unseparated> {
    let object_image = |x: ObjId| family.iter().map(|s| s.mapped.maps.obj_map[x]).collect::<Vec<_>>();
    let morphism_image = |g: MorId| family.iter().map(|s| s.mapped.maps.mor_map[g]).collect::<Vec<_>>();
    let mut seen = std::collections::HashMap::new();
    for x in 0..e.num_objects() {
        if let Some(&y) = seen.get(&object_image(x)) {
            return Some(Unseparated::Objects(y, x));
        }
        seen.insert(object_image(x), x);
    }
    let mut seen = std::collections::HashMap::new();
    for g in 0..e.num_morphisms() {
        if let Some(&h) = seen.get(&morphism_image(g)) {
            return Some(Unseparated::Morphisms(h, g));
        }
        seen.insert(morphism_image(g), g);
    }
    None
}

/// The isotropy group at `x` viewed as a group, for callers that want the
/// target of [`collapse`] as a [`FiniteGroup`].
pub fn collapse_group(e: &FiniteGroupoid, x: ObjId) -> Result<FiniteGroup> {
    e.isotropy(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::check_functor;

    fn bz(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(n))
    }

    #[test]
    fn collapse_onto_z2_component() {
        let e = FiniteGroupoid::disjoint_union(&[&bz(2), &bz(3)]);
        let phi = collapse(&e, 0).unwrap();
        // Z/2 loops are morphisms 0, 1; Z/3 loops are 2, 3, 4
        assert_eq!(phi.maps.mor_map, vec![0, 1, 0, 0, 0]);
        check_functor(&e, &phi.target, &phi.maps).unwrap();
    }

    #[test]
    fn collapse_is_a_section_of_the_inclusion() {
        let e = FiniteGroupoid::disjoint_union(&[&bz(3), &FiniteGroupoid::from_group(&FiniteGroup::symmetric(3))]);
        let phi = collapse(&e, 1).unwrap();
        for (i, g) in e.loops(1).into_iter().enumerate() {
            assert_eq!(phi.maps.mor_map[g], i);
        }
    }

    #[test]
    fn collapse_preserves_every_composite() {
        let e = FiniteGroupoid::disjoint_union(&[&bz(4), &bz(2), &FiniteGroupoid::from_group(&FiniteGroup::symmetric(3))]);
        assert_eq!(e.num_morphisms(), 12);
        for x in 0..3 {
            let phi = collapse(&e, x).unwrap();
            for (g, y) in e.composable_pairs() {
                let lhs = phi.maps.mor_map[e.compose(g, y)];
                let rhs = phi.target.compose(phi.maps.mor_map[g], phi.maps.mor_map[y]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn separation_of_two_copies() {
        let e = FiniteGroupoid::disjoint_union(&[&bz(2), &bz(2)]);
        let family = separating_family(&e).unwrap();
        let partitions = family
            .iter()
            .filter(|s| matches!(s.kind, SeparatorKind::Partition { .. }))
            .count();
        assert_eq!(partitions, 1);
        let split = &family[0].mapped.maps;
        assert_ne!(split.obj_map[0], split.obj_map[1]);
        // distinct loops at object 0 are told apart by the collapse there
        let phi = &family.iter().find(|s| s.kind == SeparatorKind::Collapse { object: 0 }).unwrap().mapped;
        assert_ne!(phi.maps.mor_map[0], phi.maps.mor_map[1]);
        assert_eq!(check_separation(&e, &family), None);
    }

    #[test]
    fn partition_family_alone_does_not_separate_loops() {
        let e = bz(3);
        let family: Vec<Separator> = separating_family(&e)
            .unwrap()
            .into_iter()
            .filter(|s| matches!(s.kind, SeparatorKind::Partition { .. }))
            .collect();
        assert_eq!(check_separation(&e, &family), Some(Unseparated::Morphisms(0, 1)));
    }
}

//! Functors between finite groupoids and the equivalence criteria.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, MorId, ObjId};

/// The object and morphism maps of a functor, detached from its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FunctorMaps {
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl FunctorMaps {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        FunctorMaps {
            obj_map: (0..g.num_objects()).collect(),
            mor_map: (0..g.num_morphisms()).collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FunctorMaps) -> FunctorMaps {
        FunctorMaps {
            obj_map: self.obj_map.iter().map(|&x| next.obj_map[x]).collect(),
            mor_map: self.mor_map.iter().map(|&g| next.mor_map[g]).collect(),
        }
    }
}

/// A functor between two borrowed groupoids.
#[derive(Debug, Clone, Copy)]
pub struct GroupoidFunctor<'a> {
    source: &'a FiniteGroupoid,
    target: &'a FiniteGroupoid,
    maps: &'a FunctorMaps,
}

impl<'a> GroupoidFunctor<'a> {
    /// Checks that `maps` commutes with source, target, unit, inverse and
    /// composition.
    pub fn new(source: &'a FiniteGroupoid, target: &'a FiniteGroupoid, maps: &'a FunctorMaps) -> Result<Self> {
        check_functor(source, target, maps)?;
        Ok(GroupoidFunctor { source, target, maps })
    }

    pub(crate) fn new_unchecked(
        source: &'a FiniteGroupoid,
        target: &'a FiniteGroupoid,
        maps: &'a FunctorMaps,
    ) -> Self {
        debug_assert!(check_functor(source, target, maps).is_ok());
        GroupoidFunctor { source, target, maps }
    }

    pub fn source(&self) -> &'a FiniteGroupoid {
        self.source
    }

    pub fn target(&self) -> &'a FiniteGroupoid {
        self.target
    }

    pub fn maps(&self) -> &'a FunctorMaps {
        self.maps
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.maps.obj_map[x]
    }

    pub fn mor(&self, g: MorId) -> MorId {
        self.maps.mor_map[g]
    }

    /// The induced map on components, indexed by source component.
    pub fn pi0_map(&self) -> Vec<usize> {
        let s = self.source.pi0();
        let t = self.target.pi0();
        s.representatives
            .iter()
            .map(|&x| t.component_of[self.obj(x)])
            .collect()
    }
}

/// Checks the functor laws, reporting the first failure.
pub fn check_functor(source: &FiniteGroupoid, target: &FiniteGroupoid, maps: &FunctorMaps) -> Result<()> {
    if maps.obj_map.len() != source.num_objects() {
        return Err(Error::TableLength {
            table: "obj_map",
            found: maps.obj_map.len(),
            expected: source.num_objects(),
        });
    }
    if maps.mor_map.len() != source.num_morphisms() {
        return Err(Error::TableLength {
            table: "mor_map",
            found: maps.mor_map.len(),
            expected: source.num_morphisms(),
        });
    }
    for (index, &x) in maps.obj_map.iter().enumerate() {
        if x >= target.num_objects() {
            return Err(Error::IndexOutOfRange {
                table: "obj_map",
                index,
                bound: target.num_objects(),
            });
        }
    }
    for (index, &g) in maps.mor_map.iter().enumerate() {
        if g >= target.num_morphisms() {
            return Err(Error::IndexOutOfRange {
                table: "mor_map",
                index,
                bound: target.num_morphisms(),
            });
        }
    }
    let f = |g: MorId| maps.mor_map[g];
    for g in 0..source.num_morphisms() {
        if target.src(f(g)) != maps.obj_map[source.src(g)] || target.tgt(f(g)) != maps.obj_map[source.tgt(g)] {
            return Err(Error::InvalidFunctor(format!("morphism {g} endpoints not preserved")));
        }
        if f(source.inv(g)) != target.inv(f(g)) {
            return Err(Error::InvalidFunctor(format!("inverse of morphism {g} not preserved")));
        }
    }
    for x in 0..source.num_objects() {
        if f(source.unit(x)) != target.unit(maps.obj_map[x]) {
            return Err(Error::InvalidFunctor(format!("unit of object {x} not preserved")));
        }
    }
    for (g, y) in source.composable_pairs() {
        if target.comp(f(g), f(y)) != Some(f(source.compose(g, y))) {
            return Err(Error::InvalidFunctor(format!("composite of ({g}, {y}) not preserved")));
        }
    }
    Ok(())
}

/// Internal full faithfulness: the square
/// `X1 -> (X0 x X0) x_(Y0 x Y0) Y1` is a pullback, i.e. every hom-set maps
/// bijectively onto the corresponding hom-set of the target.
pub fn internal_fully_faithful(f: &GroupoidFunctor<'_>) -> bool {
    let (s, t) = (f.source(), f.target());
    let mut target_hom_sizes: HashMap<(ObjId, ObjId), usize> = HashMap::new();
    for h in 0..t.num_morphisms() {
        *target_hom_sizes.entry((t.src(h), t.tgt(h))).or_default() += 1;
    }
    let hom_size = |a: ObjId, b: ObjId| target_hom_sizes.get(&(a, b)).copied().unwrap_or(0);
    for x in 0..s.num_objects() {
        let mut by_target: HashMap<ObjId, Vec<MorId>> = HashMap::new();
        for &g in s.out_star(x) {
            by_target.entry(s.tgt(g)).or_default().push(f.mor(g));
        }
        for x2 in 0..s.num_objects() {
            let images = by_target.remove(&x2).unwrap_or_default();
            let mut distinct = images.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != images.len() || images.len() != hom_size(f.obj(x), f.obj(x2)) {
                return false;
            }
        }
    }
    true
}

/// Internal essential surjectivity: `X0 x_(Y0) Y1 -> Y0`, `(x, h) -> tgt(h)`
/// is onto, i.e. every target object receives a morphism from the image.
pub fn internal_essentially_surjective(f: &GroupoidFunctor<'_>) -> bool {
    let t = f.target();
    let mut reached = vec![false; t.num_objects()];
    let mut image = vec![false; t.num_objects()];
    for x in 0..f.source().num_objects() {
        image[f.obj(x)] = true;
    }
    for y in (0..t.num_objects()).filter(|&y| image[y]) {
        for &h in t.out_star(y) {
            reached[t.tgt(h)] = true;
        }
    }
    reached.into_iter().all(|r| r)
}

/// Whitehead criterion for 1-types: bijective on components and an
/// isomorphism on the isotropy group at every source object.
pub fn whitehead_equivalence(f: &GroupoidFunctor<'_>) -> bool {
    let pi0 = f.pi0_map();
    let mut hit = vec![false; f.target().pi0().count()];
    for &c in &pi0 {
        if std::mem::replace(&mut hit[c], true) {
            return false;
        }
    }
    if !hit.into_iter().all(|h| h) {
        return false;
    }
    // the restriction of a functor to loops is a homomorphism, so an
    // isomorphism is the same as a bijection of loop sets
    (0..f.source().num_objects()).all(|x| {
        let loops = f.source().loops(x);
        let mut images: Vec<MorId> = loops.iter().map(|&g| f.mor(g)).collect();
        let expected = f.target().hom(f.obj(x), f.obj(x)).count();
        images.sort_unstable();
        images.dedup();
        images.len() == loops.len() && images.len() == expected
    })
}

/// Morphism-count cap of [`equivalence_oracle`] when no bound is configured.
pub const DEFAULT_ORACLE_BOUND: usize = 64;

/// Decides whether two groupoids are equivalent without looking for a
/// functor: it matches components so that isotropy groups are isomorphic,
/// with group isomorphism decided by exhaustive search.
pub fn equivalence_oracle(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Result<bool> {
    equivalence_oracle_with_bound(g, h, DEFAULT_ORACLE_BOUND)
}

/// [`equivalence_oracle`] with an explicit morphism-count bound; inputs
/// beyond it are refused rather than answered.
pub fn equivalence_oracle_with_bound(g: &FiniteGroupoid, h: &FiniteGroupoid, bound: usize) -> Result<bool> {
    for side in [g, h] {
        if side.num_morphisms() > bound {
            return Err(Error::OracleBoundExceeded {
                morphisms: side.num_morphisms(),
                bound,
            });
        }
    }
    let groups = |x: &FiniteGroupoid| -> Result<Vec<_>> {
        x.pi0()
            .representatives
            .iter()
            .map(|&r| x.isotropy(r))
            .collect()
    };
    let left = groups(g)?;
    let mut right = groups(h)?;
    if left.len() != right.len() {
        return Ok(false);
    }
    // isomorphism is an equivalence relation, so greedy matching is exact
    for a in &left {
        match right.iter().position(|b| a.is_isomorphic(b)) {
            Some(i) => {
                right.swap_remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

//! Finite-depth towers of finite sets and finite groupoids.
//!
//! A tower has levels `0..=depth`; transition `n` maps level `n + 1` down to
//! level `n`.

use crate::error::{Error, Result};
use crate::functor::{check_functor, FunctorMaps, GroupoidFunctor};
use crate::groupoid::FiniteGroupoid;

/// A compatible family of elements, one per level from 0 up to some depth.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Thread(pub Vec<usize>);

impl Thread {
    pub fn top(&self) -> usize {
        *self.0.last().expect("threads are never empty")
    }

    pub fn at(&self, level: usize) -> usize {
        self.0[level]
    }
}

/// A tower of finite sets `L_0 <- L_1 <- ... <- L_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetTower {
    sizes: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

impl SetTower {
    /// `maps[n]` sends level `n + 1` to level `n`.
    pub fn new(sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidParameter {
                field: "levels",
                reason: "a tower needs at least one level".into(),
            });
        }
        if maps.len() + 1 != sizes.len() {
            return Err(Error::TableLength {
                table: "transitions",
                found: maps.len(),
                expected: sizes.len() - 1,
            });
        }
        for (n, map) in maps.iter().enumerate() {
            if map.len() != sizes[n + 1] {
                return Err(Error::TableLength {
                    table: "transition",
                    found: map.len(),
                    expected: sizes[n + 1],
                }
                .at_level(n));
            }
            if let Some(index) = map.iter().position(|&e| e >= sizes[n]) {
                return Err(Error::IndexOutOfRange {
                    table: "transition",
                    index,
                    bound: sizes[n],
                }
                .at_level(n));
            }
        }
        Ok(SetTower { sizes, maps })
    }

    /// The tower with every level equal to `0..size` and identity maps.
    pub fn constant(size: usize, depth: usize) -> Self {
        SetTower {
            sizes: vec![size; depth + 1],
            maps: vec![(0..size).collect(); depth],
        }
    }

    pub fn depth(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, level: usize) -> usize {
        self.sizes[level]
    }

    pub fn map(&self, n: usize) -> &[usize] {
        &self.maps[n]
    }

    fn check_depth(&self, d: usize) -> Result<()> {
        if d > self.depth() {
            return Err(Error::DepthOutOfRange {
                depth: d,
                max: self.depth(),
            });
        }
        Ok(())
    }

    /// The first level element of level `n` that transition `n` misses, if
    /// any.
    pub fn unreached(&self, n: usize) -> Option<usize> {
        let mut hit = vec![false; self.sizes[n]];
        for &e in &self.maps[n] {
            hit[e] = true;
        }
        hit.iter().position(|&h| !h)
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.depth()).all(|n| self.unreached(n).is_none())
    }

    /// All compatible families `(e_0, ..., e_d)`, built upward from level 0
    /// and listed in lexicographic order.
    pub fn threads_at_depth(&self, d: usize) -> Result<Vec<Thread>> {
        self.check_depth(d)?;
        let mut threads: Vec<Vec<usize>> = (0..self.sizes[0]).map(|e| vec![e]).collect();
        for n in 0..d {
            let mut preimages = vec![Vec::new(); self.sizes[n]];
            for (e, &below) in self.maps[n].iter().enumerate() {
                preimages[below].push(e);
            }
            threads = threads
                .into_iter()
                .flat_map(|t| {
                    let last = *t.last().unwrap();
                    preimages[last].iter().map(move |&e| {
                        let mut next = t.clone();
                        next.push(e);
                        next
                    })
                })
                .collect();
        }
        threads.sort();
        Ok(threads.into_iter().map(Thread).collect())
    }

    /// Least-preimage section of every transition: `sections[n][e]` is the
    /// least element of level `n + 1` over `e`. Iterating these from a level-0
    /// element gives the thread whose level-`(n + 1)` entry is the least
    /// preimage of its level-`n` entry.
    pub fn tower_section(&self) -> Result<Vec<Vec<usize>>> {
        (0..self.depth())
            .map(|n| {
                let mut section = vec![usize::MAX; self.sizes[n]];
                for (e, &below) in self.maps[n].iter().enumerate() {
                    if section[below] == usize::MAX {
                        section[below] = e;
                    }
                }
                match section.iter().position(|&s| s == usize::MAX) {
                    Some(witness) => Err(Error::NotSurjective {
                        level: n,
                        what: "elements",
                        witness,
                    }),
                    None => Ok(section),
                }
            })
            .collect()
    }

    pub fn truncate(&self, d: usize) -> Result<Self> {
        self.check_depth(d)?;
        Ok(SetTower {
            sizes: self.sizes[..=d].to_vec(),
            maps: self.maps[..d].to_vec(),
        })
    }
}

/// A tower of finite groupoids `G^(0) <- G^(1) <- ... <- G^(d)` along
/// functors.
///
/// Construction only checks that each transition is a functor; surjectivity
/// and star-surjectivity are reported by [`validate_tower`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidTower {
    levels: Vec<FiniteGroupoid>,
    transitions: Vec<FunctorMaps>,
}

/// A failed tower condition, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TowerViolation {
    ObjectsNotCovered { level: usize, object: usize },
    MorphismsNotCovered { level: usize, morphism: usize },
    /// No morphism out of `object` (level `level + 1`) lifts `morphism`
    /// (level `level`).
    NotStarSurjective {
        level: usize,
        object: usize,
        morphism: usize,
    },
}

impl TowerViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            TowerViolation::ObjectsNotCovered { .. } => "object-surjectivity",
            TowerViolation::MorphismsNotCovered { .. } => "morphism-surjectivity",
            TowerViolation::NotStarSurjective { .. } => "star-surjectivity",
        }
    }

    pub fn level(&self) -> usize {
        match *self {
            TowerViolation::ObjectsNotCovered { level, .. }
            | TowerViolation::MorphismsNotCovered { level, .. }
            | TowerViolation::NotStarSurjective { level, .. } => level,
        }
    }

    pub fn witness(&self) -> Vec<usize> {
        match *self {
            TowerViolation::ObjectsNotCovered { object, .. } => vec![object],
            TowerViolation::MorphismsNotCovered { morphism, .. } => vec![morphism],
            TowerViolation::NotStarSurjective { object, morphism, .. } => vec![object, morphism],
        }
    }
}

impl GroupoidTower {
    pub fn new(levels: Vec<FiniteGroupoid>, transitions: Vec<FunctorMaps>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidParameter {
                field: "levels",
                reason: "a tower needs at least one level".into(),
            });
        }
        if transitions.len() + 1 != levels.len() {
            return Err(Error::TableLength {
                table: "transitions",
                found: transitions.len(),
                expected: levels.len() - 1,
            });
        }
        for (n, maps) in transitions.iter().enumerate() {
            check_functor(&levels[n + 1], &levels[n], maps).map_err(|e| e.at_level(n))?;
        }
        Ok(GroupoidTower { levels, transitions })
    }

    pub fn single(level: FiniteGroupoid) -> Self {
        GroupoidTower {
            levels: vec![level],
            transitions: Vec::new(),
        }
    }

    /// Every level equal to `g`, with identity transitions.
    pub fn constant(g: FiniteGroupoid, depth: usize) -> Self {
        let id = FunctorMaps::identity(&g);
        GroupoidTower {
            levels: vec![g; depth + 1],
            transitions: vec![id; depth],
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FiniteGroupoid {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[FiniteGroupoid] {
        &self.levels
    }

    pub fn top(&self) -> &FiniteGroupoid {
        self.levels.last().unwrap()
    }

    pub fn transition_maps(&self, n: usize) -> &FunctorMaps {
        &self.transitions[n]
    }

    /// Transition `n`, from level `n + 1` to level `n`.
    pub fn transition(&self, n: usize) -> GroupoidFunctor<'_> {
        GroupoidFunctor::new_unchecked(&self.levels[n + 1], &self.levels[n], &self.transitions[n])
    }

    /// The composite of transitions from the top level down to level `n`.
    pub fn projection_from_top(&self, n: usize) -> FunctorMaps {
        let mut maps = FunctorMaps::identity(self.top());
        for m in (n..self.depth()).rev() {
            maps = maps.then(&self.transitions[m]);
        }
        maps
    }

    pub fn object_tower(&self) -> SetTower {
        SetTower {
            sizes: self.levels.iter().map(FiniteGroupoid::num_objects).collect(),
            maps: self.transitions.iter().map(|t| t.obj_map.clone()).collect(),
        }
    }

    pub fn morphism_tower(&self) -> SetTower {
        SetTower {
            sizes: self.levels.iter().map(FiniteGroupoid::num_morphisms).collect(),
            maps: self.transitions.iter().map(|t| t.mor_map.clone()).collect(),
        }
    }

    /// Components at each level, with the induced maps.
    pub fn pi0_tower(&self) -> SetTower {
        let parts: Vec<_> = self.levels.iter().map(FiniteGroupoid::pi0).collect();
        SetTower {
            sizes: parts.iter().map(|p| p.count()).collect(),
            maps: (0..self.depth())
                .map(|n| {
                    parts[n + 1]
                        .representatives
                        .iter()
                        .map(|&x| parts[n].component_of[self.transitions[n].obj_map[x]])
                        .collect()
                })
                .collect(),
        }
    }

    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d > self.depth() {
            return Err(Error::DepthOutOfRange {
                depth: d,
                max: self.depth(),
            });
        }
        Ok(GroupoidTower {
            levels: self.levels[..=d].to_vec(),
            transitions: self.transitions[..d].to_vec(),
        })
    }
}

/// Reports every transition that fails to be surjective on objects or
/// morphisms, or fails star-surjectivity, with witnesses. Empty iff the tower
/// is valid.
pub fn validate_tower(t: &GroupoidTower) -> Vec<TowerViolation> {
    let mut out = Vec::new();
    for n in 0..t.depth() {
        let (upper, lower) = (t.level(n + 1), t.level(n));
        let maps = t.transition_maps(n);
        let mut hit = vec![false; lower.num_objects()];
        for &x in &maps.obj_map {
            hit[x] = true;
        }
        out.extend(
            hit.iter()
                .enumerate()
                .filter(|(_, &h)| !h)
                .map(|(object, _)| TowerViolation::ObjectsNotCovered { level: n, object }),
        );
        let mut hit = vec![false; lower.num_morphisms()];
        for &g in &maps.mor_map {
            hit[g] = true;
        }
        out.extend(
            hit.iter()
                .enumerate()
                .filter(|(_, &h)| !h)
                .map(|(morphism, _)| TowerViolation::MorphismsNotCovered { level: n, morphism }),
        );
        for x in 0..upper.num_objects() {
            let below = maps.obj_map[x];
            let mut lifted = vec![false; lower.out_star(below).len()];
            for &g in upper.out_star(x) {
                let h = maps.mor_map[g];
                if let Some(i) = lower.out_star(below).iter().position(|&k| k == h) {
                    lifted[i] = true;
                }
            }
            for (i, &l) in lifted.iter().enumerate() {
                if !l {
                    out.push(TowerViolation::NotStarSurjective {
                        level: n,
                        object: x,
                        morphism: lower.out_star(below)[i],
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn reduction_tower(p: usize, levels: usize) -> SetTower {
        let sizes: Vec<usize> = (1..=levels).map(|n| p.pow(n as u32)).collect();
        let maps = (0..levels - 1)
            .map(|n| (0..sizes[n + 1]).map(|e| e % sizes[n]).collect())
            .collect();
        SetTower::new(sizes, maps).unwrap()
    }

    fn bz(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(n))
    }

    #[test]
    fn threads_of_reduction_tower() {
        let t = reduction_tower(2, 3);
        let threads = t.threads_at_depth(2).unwrap();
        assert_eq!(threads.len(), 8);
        let mut tops: Vec<usize> = threads.iter().map(Thread::top).collect();
        tops.sort_unstable();
        assert_eq!(tops, (0..8).collect::<Vec<_>>());
        assert_eq!(
            t.threads_at_depth(3),
            Err(Error::DepthOutOfRange { depth: 3, max: 2 })
        );
    }

    #[test]
    fn constant_tower_threads() {
        assert_eq!(SetTower::constant(3, 5).threads_at_depth(5).unwrap().len(), 3);
    }

    #[test]
    fn non_surjective_tower_leaves_lower_elements_unthreaded() {
        // L_0 = {0, 1, 2}, L_1 = {0, 1}, both sent to 0
        let t = SetTower::new(vec![3, 2], vec![vec![0, 0]]).unwrap();
        let threads = t.threads_at_depth(1).unwrap();
        // exhaustive enumeration of all pairs (e0, e1) with tau(e1) = e0
        let brute: Vec<Thread> = (0..3)
            .flat_map(|e0| (0..2).map(move |e1| (e0, e1)))
            .filter(|&(e0, e1)| [0, 0][e1] == e0)
            .map(|(e0, e1)| Thread(vec![e0, e1]))
            .collect();
        assert_eq!(threads, brute);
        let bottoms: std::collections::BTreeSet<usize> = threads.iter().map(|t| t.at(0)).collect();
        assert_ne!(bottoms.len(), t.size(0));
        assert_eq!(t.unreached(0), Some(1));
    }

    #[test]
    fn least_preimage_sections() {
        let t = reduction_tower(2, 2);
        assert_eq!(t.tower_section().unwrap(), vec![vec![0, 1]]);
        let id = SetTower::constant(4, 2);
        assert_eq!(id.tower_section().unwrap(), vec![vec![0, 1, 2, 3]; 2]);
        let broken = SetTower::new(vec![2, 2], vec![vec![0, 0]]).unwrap();
        assert_eq!(
            broken.tower_section(),
            Err(Error::NotSurjective {
                level: 0,
                what: "elements",
                witness: 1
            })
        );
    }

    #[test]
    fn truncation() {
        let t = reduction_tower(3, 4);
        let short = t.truncate(1).unwrap();
        assert_eq!(short.depth(), 1);
        assert_eq!(t.truncate(3).unwrap(), t);
    }

    #[test]
    fn cyclic_group_tower_is_valid() {
        let tower = GroupoidTower::new(
            vec![bz(2), bz(4)],
            vec![FunctorMaps {
                obj_map: vec![0],
                mor_map: vec![0, 1, 0, 1],
            }],
        )
        .unwrap();
        assert!(validate_tower(&tower).is_empty());
        assert!(validate_tower(&GroupoidTower::constant(FiniteGroupoid::pair(3), 3)).is_empty());
    }

    #[test]
    fn missing_morphism_image_is_reported() {
        // two copies of BZ/2 collapsed onto one, with the second copy sent to
        // the unit and the first also sent to the unit
        let upper = FiniteGroupoid::disjoint_union(&[&bz(2), &bz(2)]);
        let tower = GroupoidTower::new(
            vec![bz(2), upper],
            vec![FunctorMaps {
                obj_map: vec![0, 0],
                mor_map: vec![0, 0, 0, 0],
            }],
        )
        .unwrap();
        let report = validate_tower(&tower);
        assert!(report.contains(&TowerViolation::MorphismsNotCovered { level: 0, morphism: 1 }));
        assert!(report.contains(&TowerViolation::NotStarSurjective {
            level: 0,
            object: 0,
            morphism: 1
        }));
    }
}

use std::fmt;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, MorId, Restriction};

/// A subset of the morphisms of a fixed groupoid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MorphismSet {
    member: Vec<bool>,
    len: usize,
}

impl MorphismSet {
    pub fn empty(universe: usize) -> Self {
        MorphismSet {
            member: vec![false; universe],
            len: 0,
        }
    }

    pub fn all(universe: usize) -> Self {
        MorphismSet {
            member: vec![true; universe],
            len: universe,
        }
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = MorId>) -> Result<Self> {
        let mut set = Self::empty(universe);
        for (index, g) in indices.into_iter().enumerate() {
            if g >= universe {
                return Err(Error::IndexOutOfRange {
                    table: "morphism set",
                    index,
                    bound: universe,
                });
            }
            set.insert(g);
        }
        Ok(set)
    }

    pub fn units(g: &FiniteGroupoid) -> Self {
        let mut set = Self::empty(g.num_morphisms());
        for x in 0..g.num_objects() {
            set.insert(g.unit(x));
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.member.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, g: MorId) -> bool {
        self.member[g]
    }

    pub fn insert(&mut self, g: MorId) -> bool {
        let fresh = !std::mem::replace(&mut self.member[g], true);
        self.len += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, g: MorId) -> bool {
        let present = std::mem::replace(&mut self.member[g], false);
        self.len -= present as usize;
        present
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = MorId> + '_ {
        self.member.iter().enumerate().filter(|(_, &m)| m).map(|(g, _)| g)
    }

    pub fn to_vec(&self) -> Vec<MorId> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &MorphismSet) -> bool {
        self.iter().all(|g| other.contains(g))
    }

    pub fn intersection(&self, other: &MorphismSet) -> MorphismSet {
        let mut out = Self::empty(self.universe());
        for g in self.iter().filter(|&g| other.contains(g)) {
            out.insert(g);
        }
        out
    }

    pub fn difference(&self, other: &MorphismSet) -> MorphismSet {
        let mut out = Self::empty(self.universe());
        for g in self.iter().filter(|&g| !other.contains(g)) {
            out.insert(g);
        }
        out
    }

    pub fn union(&self, other: &MorphismSet) -> MorphismSet {
        let mut out = self.clone();
        for g in other.iter() {
            out.insert(g);
        }
        out
    }

    /// `{ inv(g) : g in self }`.
    pub fn inverse(&self, g: &FiniteGroupoid) -> MorphismSet {
        let mut out = Self::empty(self.universe());
        for m in self.iter() {
            out.insert(g.inv(m));
        }
        out
    }
}

impl fmt::Debug for MorphismSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for MorphismSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by size, then lexicographically by members.
impl Ord for MorphismSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

/// A wide subgroupoid: all units, closed under composition and inversion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WideSubgroupoid {
    morphisms: MorphismSet,
}

impl WideSubgroupoid {
    pub fn new(parent: &FiniteGroupoid, morphisms: MorphismSet) -> Result<Self> {
        if morphisms.universe() != parent.num_morphisms() {
            return Err(Error::TableLength {
                table: "morphism set",
                found: morphisms.universe(),
                expected: parent.num_morphisms(),
            });
        }
        if let Some(x) = (0..parent.num_objects()).find(|&x| !morphisms.contains(parent.unit(x))) {
            return Err(Error::NotSubgroupoid(format!("unit of object {x} missing")));
        }
        for g in morphisms.iter() {
            if !morphisms.contains(parent.inv(g)) {
                return Err(Error::NotSubgroupoid(format!("inverse of {g} missing")));
            }
            for &y in parent.out_star(parent.tgt(g)) {
                if morphisms.contains(y) && !morphisms.contains(parent.compose(g, y)) {
                    return Err(Error::NotSubgroupoid(format!("composite of ({g}, {y}) missing")));
                }
            }
        }
        Ok(WideSubgroupoid { morphisms })
    }

    pub(crate) fn new_unchecked(morphisms: MorphismSet) -> Self {
        WideSubgroupoid { morphisms }
    }

    pub fn units(parent: &FiniteGroupoid) -> Self {
        WideSubgroupoid {
            morphisms: MorphismSet::units(parent),
        }
    }

    pub fn full(parent: &FiniteGroupoid) -> Self {
        WideSubgroupoid {
            morphisms: MorphismSet::all(parent.num_morphisms()),
        }
    }

    pub fn morphisms(&self) -> &MorphismSet {
        &self.morphisms
    }

    pub fn contains(&self, g: MorId) -> bool {
        self.morphisms.contains(g)
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    /// Whether this is just the units of `parent`.
    pub fn is_units(&self, parent: &FiniteGroupoid) -> bool {
        self.morphisms.len() == parent.num_objects()
    }

    /// The subgroupoid as a groupoid in its own right, on all objects of the
    /// parent.
    pub fn to_groupoid(&self, parent: &FiniteGroupoid) -> Restriction {
        let objects: Vec<usize> = (0..parent.num_objects()).collect();
        parent.restrict_unchecked(&objects, &self.morphisms.to_vec())
    }

    /// A conjugation that leaves the subgroupoid, as
    /// `(element, conjugator, result)`, or `None` if it is normal.
    ///
    /// Conjugation `g r g^-1` is considered for loops `r` and morphisms `g`
    /// with `tgt(g) == src(r)`.
    pub fn normality_witness(&self, parent: &FiniteGroupoid) -> Option<(MorId, MorId, MorId)> {
        for r in self.morphisms.iter() {
            let x = parent.src(r);
            if parent.tgt(r) != x {
                continue;
            }
            for g in (0..parent.num_morphisms()).filter(|&g| parent.tgt(g) == x) {
                let c = conjugate(parent, g, r);
                if !self.contains(c) {
                    return Some((r, g, c));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, parent: &FiniteGroupoid) -> bool {
        self.normality_witness(parent).is_none()
    }

    pub(crate) fn require_normal(&self, parent: &FiniteGroupoid) -> Result<()> {
        match self.normality_witness(parent) {
            Some((element, conjugator, result)) => Err(Error::NotNormal {
                element,
                conjugator,
                result,
            }),
            None => Ok(()),
        }
    }
}

/// `g r g^-1` for a loop `r` at `tgt(g)`.
pub fn conjugate(parent: &FiniteGroupoid, g: MorId, r: MorId) -> MorId {
    parent.compose(parent.compose(g, r), parent.inv(g))
}

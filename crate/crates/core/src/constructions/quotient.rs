//! Quotients of skeletal groupoids by normal wide subgroupoids.

use crate::constructions::subgroupoid::WideSubgroupoid;
use crate::error::Result;
use crate::functor::{FunctorMaps, GroupoidFunctor};
use crate::groupoid::{FiniteGroupoid, MorId};

/// The quotient `E = X/N` and the projection `q: X -> E`.
///
/// `q` is the identity on objects. Morphism `i` of `E` is the coset whose
/// least member is `representatives[i]`, and cosets are numbered in
/// increasing order of that member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: FiniteGroupoid,
    pub projection: FunctorMaps,
    pub representatives: Vec<MorId>,
}

impl QuotientResult {
    pub fn projection_functor<'a>(&'a self, x: &'a FiniteGroupoid) -> GroupoidFunctor<'a> {
        GroupoidFunctor::new_unchecked(x, &self.quotient, &self.projection)
    }

    /// The coset of `g`, as a sorted list of morphisms of `X`.
    pub fn coset(&self, g: MorId) -> Vec<MorId> {
        let c = self.projection.mor_map[g];
        (0..self.projection.mor_map.len())
            .filter(|&m| self.projection.mor_map[m] == c)
            .collect()
    }
}

/// `X/N` for a normal wide subgroupoid `N` of a skeletal groupoid `X`.
pub fn quotient(x: &FiniteGroupoid, n: &WideSubgroupoid) -> Result<QuotientResult> {
    x.require_skeletal()?;
    WideSubgroupoid::new(x, n.morphisms().clone())?;
    n.require_normal(x)?;

    // coset of g is g N_x; label it by its least member
    let m = x.num_morphisms();
    let mut label = vec![usize::MAX; m];
    let mut representatives = Vec::new();
    for g in 0..m {
        if label[g] != usize::MAX {
            continue;
        }
        let index = representatives.len();
        representatives.push(g);
        for &k in x.out_star(x.tgt(g)) {
            if n.contains(k) {
                label[x.compose(g, k)] = index;
            }
        }
    }
    let quotient = FiniteGroupoid::from_composition(
        x.num_objects(),
        representatives.iter().map(|&g| x.src(g)).collect(),
        representatives.iter().map(|&g| x.tgt(g)).collect(),
        (0..x.num_objects()).map(|o| label[x.unit(o)]).collect(),
        representatives.iter().map(|&g| label[x.inv(g)]).collect(),
        |a, b| label[x.compose(representatives[a], representatives[b])],
    );
    Ok(QuotientResult {
        quotient,
        projection: FunctorMaps {
            obj_map: (0..x.num_objects()).collect(),
            mor_map: label,
        },
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::subgroupoid::MorphismSet;
    use crate::error::Error;
    use crate::functor::{check_functor, whitehead_equivalence};
    use crate::group::FiniteGroup;
    use crate::groupoid::revalidate;

    fn bz(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(n))
    }

    fn sub(x: &FiniteGroupoid, members: &[usize]) -> WideSubgroupoid {
        WideSubgroupoid::new(x, MorphismSet::from_indices(x.num_morphisms(), members.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn z4_mod_2z4() {
        let x = bz(4);
        let q = quotient(&x, &sub(&x, &[0, 2])).unwrap();
        // cosets {0, 2} and {1, 3}
        assert_eq!(q.coset(0), vec![0, 2]);
        assert_eq!(q.coset(3), vec![1, 3]);
        assert_eq!(q.representatives, vec![0, 1]);
        assert!(revalidate(&q.quotient).is_valid());
        assert!(q.quotient.isotropy(0).unwrap().is_isomorphic(&FiniteGroup::cyclic(2)));
        check_functor(&x, &q.quotient, &q.projection).unwrap();
        assert!(!whitehead_equivalence(&q.projection_functor(&x)));
    }

    #[test]
    fn quotient_by_units_is_an_isomorphism() {
        let x = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
        let q = quotient(&x, &WideSubgroupoid::units(&x)).unwrap();
        assert_eq!(q.quotient, x);
        assert_eq!(q.projection, FunctorMaps::identity(&x));
        assert!(whitehead_equivalence(&q.projection_functor(&x)));
    }

    #[test]
    fn componentwise_quotient() {
        let x = FiniteGroupoid::disjoint_union(&[&bz(2), &bz(2)]);
        // units on the first component, everything on the second
        let q = quotient(&x, &sub(&x, &[0, 2, 3])).unwrap();
        assert_eq!(q.quotient.num_objects(), 2);
        assert_eq!(q.quotient.isotropy(0).unwrap().order(), 2);
        assert_eq!(q.quotient.isotropy(1).unwrap().order(), 1);
    }

    #[test]
    fn non_normal_subgroupoid_is_rejected() {
        let (g, perms) = FiniteGroup::symmetric_with_permutations(3);
        let x = FiniteGroupoid::from_group(&g);
        let t = perms.iter().position(|p| p == &[1, 0, 2]).unwrap();
        let err = quotient(&x, &sub(&x, &[0, t])).unwrap_err();
        let Error::NotNormal { element, conjugator, result } = err else {
            panic!("expected a normality witness, got {err:?}");
        };
        assert_eq!(element, t);
        assert_eq!(x.compose(x.compose(conjugator, element), x.inv(conjugator)), result);
        assert!(result != 0 && result != t);
    }
}

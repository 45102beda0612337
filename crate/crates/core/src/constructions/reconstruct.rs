//! Comparison of a skeletal groupoid with the limit of its quotients.

use std::collections::HashMap;

use crate::constructions::quotient::{quotient, QuotientResult};
use crate::constructions::subgroupoid::WideSubgroupoid;
use crate::error::Result;
use crate::groupoid::{FiniteGroupoid, MorId, ObjId};

/// Why the canonical map `X -> lim X/H` fails to be an isomorphism.
///
/// Families list one entry per basis member, in the order the basis was
/// given: an object index for object families and a coset label (a morphism
/// index of the quotient) for morphism families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReconstructionWitness {
    ObjectsIdentified(ObjId, ObjId),
    MorphismsIdentified(MorId, MorId),
    ObjectFamilyMissed(Vec<ObjId>),
    MorphismFamilyMissed(Vec<MorId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub object_families: usize,
    pub morphism_families: usize,
    pub witness: Option<ReconstructionWitness>,
}

impl Reconstruction {
    pub fn is_isomorphism(&self) -> bool {
        self.witness.is_none()
    }
}

/// Enumerates the compatible families over the basis poset and checks that
/// the canonical map from `x` hits each exactly once.
///
/// Members are ordered by reverse inclusion: `H ⊆ H'` gives the map
/// `X/H -> X/H'`. Compatibility is required along every such pair, so a basis
/// that is not directed simply yields a larger limit.
pub fn reconstruct(x: &FiniteGroupoid, basis: &[WideSubgroupoid]) -> Result<Reconstruction> {
    x.require_skeletal()?;
    let quotients: Vec<QuotientResult> = basis.iter().map(|n| quotient(x, n)).collect::<Result<_>>()?;
    let below: Vec<Vec<usize>> = (0..basis.len())
        .map(|j| {
            (0..j)
                .filter(|&i| {
                    basis[i].morphisms().is_subset(basis[j].morphisms())
                        || basis[j].morphisms().is_subset(basis[i].morphisms())
                })
                .collect()
        })
        .collect();
    let finer = |i: usize, j: usize| basis[i].morphisms().is_subset(basis[j].morphisms());

    // canonical image of an object or morphism of X
    let object_image = |o: ObjId| vec![o; basis.len()];
    let morphism_image = |g: MorId| quotients.iter().map(|q| q.projection.mor_map[g]).collect::<Vec<_>>();

    // the map X/H_i -> X/H_j for H_i ⊆ H_j sends a coset to the coset of its
    // representative
    let descend = |i: usize, j: usize, c: MorId| quotients[j].projection.mor_map[quotients[i].representatives[c]];
    let compatible = |family: &[usize], j: usize, c: usize, objects: bool| {
        below[j].iter().all(|&i| {
            if objects {
                family[i] == c
            } else if finer(i, j) {
                descend(i, j, family[i]) == c
            } else {
                descend(j, i, c) == family[i]
            }
        })
    };

    let object_families = enumerate(basis.len(), |_| x.num_objects(), |f, j, c| compatible(f, j, c, true));
    let morphism_families = enumerate(
        basis.len(),
        |j| quotients[j].quotient.num_morphisms(),
        |f, j, c| compatible(f, j, c, false),
    );

    let witness = first_failure(x.num_objects(), &object_families, object_image)
        .map(|w| match w {
            Failure::Identified(a, b) => ReconstructionWitness::ObjectsIdentified(a, b),
            Failure::Missed(f) => ReconstructionWitness::ObjectFamilyMissed(f),
        })
        .or_else(|| {
            first_failure(x.num_morphisms(), &morphism_families, morphism_image).map(|w| match w {
                Failure::Identified(a, b) => ReconstructionWitness::MorphismsIdentified(a, b),
                Failure::Missed(f) => ReconstructionWitness::MorphismFamilyMissed(f),
            })
        });
    Ok(Reconstruction {
        object_families: object_families.len(),
        morphism_families: morphism_families.len(),
        witness,
    })
}

enum Failure {
    Identified(usize, usize),
    Missed(Vec<usize>),
}

fn first_failure(count: usize, families: &[Vec<usize>], image: impl Fn(usize) -> Vec<usize>) -> Option<Failure> {
    let mut hit: HashMap<Vec<usize>, usize> = HashMap::new();
    for a in 0..count {
        let f = image(a);
        if let Some(&b) = hit.get(&f) {
            return Some(Failure::Identified(b, a));
        }
        hit.insert(f, a);
    }
    families.iter().find(|f| !hit.contains_key(*f)).cloned().map(Failure::Missed)
}

/// All tuples `f` with `f[j] < size(j)` accepted by `ok(prefix, j, f[j])`,
/// in lexicographic order.
fn enumerate(
    len: usize,
    size: impl Fn(usize) -> usize,
    ok: impl Fn(&[usize], usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(len);
    fn go(
        prefix: &mut Vec<usize>,
        len: usize,
        size: &dyn Fn(usize) -> usize,
        ok: &dyn Fn(&[usize], usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        let j = prefix.len();
        if j == len {
            out.push(prefix.clone());
            return;
        }
        for c in 0..size(j) {
            if ok(prefix, j, c) {
                prefix.push(c);
                go(prefix, len, size, ok, out);
                prefix.pop();
            }
        }
    }
    go(&mut prefix, len, &size, &ok, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::normal::normal_basis;
    use crate::constructions::subgroupoid::MorphismSet;
    use crate::group::FiniteGroup;

    fn bz(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(n))
    }

    #[test]
    fn full_basis_recovers_z4() {
        let x = bz(4);
        let r = reconstruct(&x, &normal_basis(&x).unwrap()).unwrap();
        assert!(r.is_isomorphism());
        assert_eq!(r.morphism_families, 4);
        assert_eq!(r.object_families, 1);
    }

    #[test]
    fn coarse_basis_identifies_1_and_3() {
        let x = bz(4);
        let basis = vec![
            WideSubgroupoid::new(&x, MorphismSet::from_indices(4, [0, 2]).unwrap()).unwrap(),
            WideSubgroupoid::full(&x),
        ];
        let r = reconstruct(&x, &basis).unwrap();
        assert_eq!(r.morphism_families, 2);
        // the first identified pair is 0 and 2; 1 and 3 share a family too
        assert_eq!(r.witness, Some(ReconstructionWitness::MorphismsIdentified(0, 2)));
        let q: Vec<_> = basis.iter().map(|n| quotient(&x, n).unwrap()).collect();
        assert!(q.iter().all(|q| q.projection.mor_map[1] == q.projection.mor_map[3]));
    }

    #[test]
    fn empty_basis_gives_the_terminal_groupoid() {
        assert!(reconstruct(&FiniteGroupoid::discrete(1), &[]).unwrap().is_isomorphism());
        let r = reconstruct(&FiniteGroupoid::discrete(2), &[]).unwrap();
        assert_eq!(r.witness, Some(ReconstructionWitness::ObjectsIdentified(0, 1)));
    }

    #[test]
    fn incomparable_members_give_a_product() {
        // Z/2 x Z/2 with the two coordinate subgroups: the limit is the
        // product of the quotients, which is the whole group again
        let x = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)));
        let first = WideSubgroupoid::new(&x, MorphismSet::from_indices(4, [0, 1]).unwrap()).unwrap();
        let second = WideSubgroupoid::new(&x, MorphismSet::from_indices(4, [0, 2]).unwrap()).unwrap();
        let r = reconstruct(&x, &[first, second]).unwrap();
        assert_eq!(r.morphism_families, 4);
        assert!(r.is_isomorphism());
    }
}

//! Pi-finite 1-types from skeletal groupoids, presentations of towers, and
//! the end-to-end pipeline from a groupoid tower to a presentation.

use crate::constructions::{
    quotient, reconstruct, skeletal_replacement_tower, tower_kernels, van_dantzig, MorphismSet, Reconstruction,
    TowerSkeleton, VanDantzigTrace, WideSubgroupoid,
};
use crate::error::{Error, Result};
use crate::functor::{check_functor, equivalence_oracle_with_bound, whitehead_equivalence, FunctorMaps, GroupoidFunctor};
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, MorId};
use crate::tower::{validate_tower, GroupoidTower, SetTower, Thread};

/// Components of a 1-type with the fundamental group of each, recorded at
/// the skeleton representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiFiniteOneType {
    pub groups: Vec<FiniteGroup>,
}

impl PiFiniteOneType {
    pub fn components(&self) -> usize {
        self.groups.len()
    }

    pub fn group_orders(&self) -> Vec<usize> {
        self.groups.iter().map(FiniteGroup::order).collect()
    }

    pub fn is_point(&self) -> bool {
        self.groups.len() == 1 && self.groups[0].order() == 1
    }

    /// Whether some bijection of components matches groups up to
    /// isomorphism.
    pub fn is_isomorphic(&self, other: &PiFiniteOneType) -> bool {
        if self.components() != other.components() {
            return false;
        }
        let mut used = vec![false; other.components()];
        self.groups.iter().all(|g| {
            let found = (0..other.components()).find(|&j| !used[j] && g.is_isomorphic(&other.groups[j]));
            found.map(|j| used[j] = true).is_some()
        })
    }
}

/// A map of 1-types: components go to components, and each group maps to
/// the group of its image component by a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneTypeMap {
    pub pi0: Vec<usize>,
    pub homomorphisms: Vec<Vec<usize>>,
}

/// A tower of pi-finite 1-types; transition `n` maps level `n + 1` to level
/// `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnimaPresentation {
    pub levels: Vec<PiFiniteOneType>,
    pub transitions: Vec<OneTypeMap>,
}

impl AnimaPresentation {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Group orders per level, one list of components each.
    pub fn group_orders(&self) -> Vec<Vec<usize>> {
        self.levels.iter().map(PiFiniteOneType::group_orders).collect()
    }

    pub fn pi0_surjective(&self) -> bool {
        self.pi0_tower().is_surjective()
    }

    pub fn pi0_tower(&self) -> SetTower {
        SetTower::new(
            self.levels.iter().map(PiFiniteOneType::components).collect(),
            self.transitions.iter().map(|t| t.pi0.clone()).collect(),
        )
        .expect("component maps land in the level below")
    }

    /// The tower of groups over a thread of components.
    pub fn group_tower(&self, components: &Thread) -> SetTower {
        let depth = components.0.len() - 1;
        SetTower::new(
            (0..=depth).map(|n| self.levels[n].groups[components.at(n)].order()).collect(),
            (0..depth).map(|n| self.transitions[n].homomorphisms[components.at(n + 1)].clone()).collect(),
        )
        .expect("homomorphisms land in the group below")
    }
}

/// The 1-type of a skeletal groupoid: one component per object, with the
/// isotropy group there.
pub fn realize_finite(x: &FiniteGroupoid) -> Result<PiFiniteOneType> {
    x.require_skeletal()?;
    let groups = (0..x.num_objects()).map(|o| x.isotropy(o)).collect::<Result<_>>()?;
    Ok(PiFiniteOneType { groups })
}

/// Level-wise [`realize_finite`], with transitions read off the tower's
/// functors.
pub fn realize_tower(t: &GroupoidTower) -> Result<AnimaPresentation> {
    let levels = t
        .levels()
        .iter()
        .enumerate()
        .map(|(n, x)| realize_finite(x).map_err(|e| e.at_level(n)))
        .collect::<Result<Vec<_>>>()?;
    let transitions = (0..t.depth())
        .map(|n| {
            let (upper, lower) = (t.level(n + 1), t.level(n));
            let maps = t.transition_maps(n);
            let homomorphisms = (0..upper.num_objects())
                .map(|o| {
                    let below = lower.loops(maps.obj_map[o]);
                    upper
                        .loops(o)
                        .into_iter()
                        .map(|g| below.binary_search(&maps.mor_map[g]).expect("functors send loops to loops"))
                        .collect()
                })
                .collect();
            OneTypeMap {
                pi0: maps.obj_map.clone(),
                homomorphisms,
            }
        })
        .collect();
    Ok(AnimaPresentation { levels, transitions })
}

/// A reason the limit of a presentation differs from its level-`d` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitWitness {
    /// A component at `level` lies under no thread of components.
    UnreachedComponent { level: usize, component: usize },
    /// An element of the group at `level` over a component thread lies under
    /// no thread of group elements.
    UnreachedElement {
        thread: Vec<usize>,
        level: usize,
        element: usize,
    },
    /// Componentwise multiplication of group threads does not agree with the
    /// group at the top level.
    NotIsomorphic { thread: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCommutation {
    pub depth: usize,
    pub component_threads: Vec<Thread>,
    /// Thread counts of the group towers, one per component thread.
    pub element_threads: Vec<usize>,
    pub witnesses: Vec<LimitWitness>,
}

impl LimitCommutation {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Compares threads of components and of group elements at depth `d` with
/// the level-`d` components and groups.
///
/// Threads are always in bijection with their top entries; what can fail is
/// coverage of the lower levels and, for groups, agreement of the
/// componentwise product with the product at the top.
pub fn limit_commutation_check(t: &GroupoidTower, d: usize) -> Result<LimitCommutation> {
    if d > t.depth() {
        return Err(Error::DepthOutOfRange {
            depth: d,
            max: t.depth(),
        });
    }
    let presentation = realize_tower(&t.truncate(d)?)?;
    let components = presentation.pi0_tower();
    let component_threads = components.threads_at_depth(d)?;
    let mut witnesses = Vec::new();
    for level in 0..d {
        for component in unreached(&component_threads, level, components.size(level)) {
            witnesses.push(LimitWitness::UnreachedComponent { level, component });
        }
    }

    let mut element_threads = Vec::with_capacity(component_threads.len());
    for thread in &component_threads {
        let groups = presentation.group_tower(thread);
        let elements = groups.threads_at_depth(d)?;
        element_threads.push(elements.len());
        for level in 0..d {
            for element in unreached(&elements, level, groups.size(level)) {
                witnesses.push(LimitWitness::UnreachedElement {
                    thread: thread.0.clone(),
                    level,
                    element,
                });
            }
        }
        let group_at = |n: usize| &presentation.levels[n].groups[thread.at(n)];
        if !threads_form_the_top_group(&elements, group_at, d) {
            witnesses.push(LimitWitness::NotIsomorphic {
                thread: thread.0.clone(),
            });
        }
    }
    Ok(LimitCommutation {
        depth: d,
        component_threads,
        element_threads,
        witnesses,
    })
}

fn unreached(threads: &[Thread], level: usize, size: usize) -> Vec<usize> {
    let mut hit = vec![false; size];
    for t in threads {
        hit[t.at(level)] = true;
    }
    (0..size).filter(|&e| !hit[e]).collect()
}

/// Multiplies threads entry by entry, checks the products are threads, and
/// checks the resulting group is isomorphic to the top group through the
/// top projection.
fn threads_form_the_top_group<'a>(threads: &[Thread], group_at: impl Fn(usize) -> &'a FiniteGroup, d: usize) -> bool {
    let top = group_at(d);
    if threads.len() != top.order() {
        return false;
    }
    let mut by_top = vec![usize::MAX; top.order()];
    for (i, t) in threads.iter().enumerate() {
        by_top[t.top()] = i;
    }
    let product = |a: &Thread, b: &Thread| Thread((0..=d).map(|n| group_at(n).mul(a.at(n), b.at(n))).collect());
    let closed = threads
        .iter()
        .all(|a| threads.iter().all(|b| threads.binary_search(&product(a, b)).is_ok()));
    if !closed {
        return false;
    }
    let thread_group = FiniteGroup::from_fn(threads.len(), |a, b| {
        threads.binary_search(&product(&threads[a], &threads[b])).unwrap()
    });
    let Ok(thread_group) = thread_group else {
        return false;
    };
    let projection: Vec<usize> = threads.iter().map(Thread::top).collect();
    thread_group.is_homomorphism(top, &projection) && by_top.iter().all(|&i| i != usize::MAX)
}

/// Comparison of `X_top / ker_n` with level `n` of the skeleton tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCheck {
    pub level: usize,
    pub kernel: WideSubgroupoid,
    pub quotient: FiniteGroupoid,
    /// The functor `X_top / ker_n -> X_n` induced by the projection.
    pub comparison: FunctorMaps,
    pub whitehead: bool,
    /// `None` when either side exceeds the oracle bound.
    pub oracle: Option<bool>,
}

/// Every intermediate object of a [`pipeline`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    /// Per level: the extracted subgroupoid and its trace, when a
    /// neighborhood was supplied.
    pub van_dantzig: Option<Vec<(WideSubgroupoid, VanDantzigTrace)>>,
    pub skeleton: TowerSkeleton,
    pub kernels: Vec<WideSubgroupoid>,
    pub quotients: Vec<QuotientCheck>,
    pub reconstruction: Reconstruction,
    pub limit: LimitCommutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutput {
    pub presentation: AnimaPresentation,
    pub trace: PipelineTrace,
}

/// Runs tower validation, optional van Dantzig extraction, skeletal
/// replacement, kernels, quotients and realization, in that order.
///
/// `neighborhood` is a set of top-level morphisms; level `n` uses its image
/// under the projection from the top. Errors name the stage that failed.
pub fn pipeline(t: &GroupoidTower, neighborhood: Option<&MorphismSet>, oracle_bound: usize) -> Result<PipelineOutput> {
    if let Some(v) = validate_tower(t).into_iter().next() {
        return Err(Error::InvalidTower {
            level: v.level(),
            condition: v.condition(),
            witness: v.witness(),
        }
        .in_stage("validate"));
    }

    let (working, van_dantzig_runs) = match neighborhood {
        None => (None, None),
        Some(u) => {
            let (tower, runs) = extract_tower(t, u).map_err(|e| e.in_stage("vandantzig"))?;
            (Some(tower), Some(runs))
        }
    };
    let working = working.as_ref().unwrap_or(t);

    let skeleton = skeletal_replacement_tower(working).map_err(|e| e.in_stage("skeleton"))?;
    let x = &skeleton.tower;
    let kernels = tower_kernels(x).map_err(|e| e.in_stage("basis"))?;

    let top = x.top();
    let mut quotients = Vec::with_capacity(kernels.len());
    for (n, kernel) in kernels.iter().enumerate() {
        let q = quotient(top, kernel).map_err(|e| e.at_level(n).in_stage("quotient"))?;
        let proj = x.projection_from_top(n);
        let comparison = FunctorMaps {
            obj_map: proj.obj_map.clone(),
            mor_map: q.representatives.iter().map(|&g| proj.mor_map[g]).collect(),
        };
        check_functor(&q.quotient, x.level(n), &comparison).map_err(|e| e.at_level(n).in_stage("quotient"))?;
        let functor = GroupoidFunctor::new_unchecked(&q.quotient, x.level(n), &comparison);
        let whitehead = whitehead_equivalence(&functor);
        let oracle = equivalence_oracle_with_bound(&q.quotient, x.level(n), oracle_bound).ok();
        quotients.push(QuotientCheck {
            level: n,
            kernel: kernel.clone(),
            quotient: q.quotient,
            comparison,
            whitehead,
            oracle,
        });
    }
    let reconstruction = reconstruct(top, &kernels).map_err(|e| e.in_stage("reconstruct"))?;

    let presentation = realize_tower(x).map_err(|e| e.in_stage("realize"))?;
    let limit = limit_commutation_check(x, x.depth()).map_err(|e| e.in_stage("realize"))?;
    Ok(PipelineOutput {
        presentation,
        trace: PipelineTrace {
            van_dantzig: van_dantzig_runs,
            skeleton,
            kernels,
            quotients,
            reconstruction,
            limit,
        },
    })
}

/// Runs [`van_dantzig`] at every level on the image of `u` and assembles the
/// extracted subgroupoids into a tower, which must again satisfy the tower
/// conditions.
fn extract_tower(
    t: &GroupoidTower,
    u: &MorphismSet,
) -> Result<(GroupoidTower, Vec<(WideSubgroupoid, VanDantzigTrace)>)> {
    if u.universe() != t.top().num_morphisms() {
        return Err(Error::TableLength {
            table: "neighborhood",
            found: u.universe(),
            expected: t.top().num_morphisms(),
        });
    }
    let runs = (0..=t.depth())
        .map(|n| {
            let proj = t.projection_from_top(n);
            let image = MorphismSet::from_indices(t.level(n).num_morphisms(), u.iter().map(|g| proj.mor_map[g]))?;
            van_dantzig(t.level(n), &image).map_err(|e| e.at_level(n))
        })
        .collect::<Result<Vec<_>>>()?;
    let restrictions: Vec<_> = (0..=t.depth()).map(|n| runs[n].0.to_groupoid(t.level(n))).collect();
    let mut transitions = Vec::with_capacity(t.depth());
    for n in 0..t.depth() {
        let maps = t.transition_maps(n);
        let lower = &restrictions[n].morphisms;
        let mor_map = restrictions[n + 1]
            .morphisms
            .iter()
            .map(|&g| {
                lower.binary_search(&maps.mor_map[g]).map_err(|_| Error::InvalidTower {
                    level: n,
                    condition: "transition maps extracted subgroupoid into the one below",
                    witness: vec![g],
                })
            })
            .collect::<Result<Vec<MorId>>>()?;
        transitions.push(FunctorMaps {
            obj_map: maps.obj_map.clone(),
            mor_map,
        });
    }
    let tower = GroupoidTower::new(restrictions.into_iter().map(|r| r.groupoid).collect(), transitions)?;
    if let Some(v) = validate_tower(&tower).into_iter().next() {
        return Err(Error::InvalidTower {
            level: v.level(),
            condition: v.condition(),
            witness: v.witness(),
        });
    }
    Ok((tower, runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::DEFAULT_ORACLE_BOUND;

    fn bz(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(n))
    }

    fn cyclic(orders: &[usize]) -> GroupoidTower {
        let transitions = orders
            .windows(2)
            .map(|w| FunctorMaps {
                obj_map: vec![0],
                mor_map: (0..w[1]).map(|a| a % w[0]).collect(),
            })
            .collect();
        GroupoidTower::new(orders.iter().map(|&n| bz(n)).collect(), transitions).unwrap()
    }

    #[test]
    fn realize_examples() {
        assert_eq!(realize_finite(&bz(4)).unwrap().group_orders(), vec![4]);
        assert_eq!(
            realize_finite(&FiniteGroupoid::pair(2)),
            Err(Error::NotSkeletal { witness: 1 })
        );
        let both = FiniteGroupoid::disjoint_union(&[&bz(2), &bz(3)]);
        assert_eq!(realize_finite(&both).unwrap().group_orders(), vec![2, 3]);
    }

    #[test]
    fn cyclic_tower_presentation() {
        let p = realize_tower(&cyclic(&[2, 4, 8])).unwrap();
        assert_eq!(p.group_orders(), vec![vec![2], vec![4], vec![8]]);
        assert!(p.pi0_surjective());
        assert_eq!(p.transitions[1].homomorphisms[0], vec![0, 1, 2, 3, 0, 1, 2, 3]);
    }

    #[test]
    fn constant_tower_presentation() {
        let p = realize_tower(&GroupoidTower::constant(bz(3), 2)).unwrap();
        assert_eq!(p.group_orders(), vec![vec![3]; 3]);
    }

    #[test]
    fn limit_commutation_on_cyclic_tower() {
        let t = cyclic(&[1, 2, 4, 8]);
        let check = limit_commutation_check(&t, 3).unwrap();
        assert!(check.holds());
        assert_eq!(check.element_threads, vec![8]);
        assert!(limit_commutation_check(&t, 4).is_err());
    }

    #[test]
    fn broken_tower_has_an_unreached_element() {
        let t = GroupoidTower::new(
            vec![bz(2), bz(2)],
            vec![FunctorMaps {
                obj_map: vec![0],
                mor_map: vec![0, 0],
            }],
        )
        .unwrap();
        let check = limit_commutation_check(&t, 1).unwrap();
        assert_eq!(
            check.witnesses,
            vec![LimitWitness::UnreachedElement {
                thread: vec![0, 0],
                level: 0,
                element: 1
            }]
        );
    }

    #[test]
    fn pipeline_on_cyclic_tower() {
        let out = pipeline(&cyclic(&[2, 4, 8]), None, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(out.presentation.group_orders(), vec![vec![2], vec![4], vec![8]]);
        assert!(out.trace.quotients.iter().all(|q| q.whitehead && q.oracle == Some(true)));
        assert!(out.trace.reconstruction.is_isomorphism());
        assert!(out.trace.limit.holds());
    }

    #[test]
    fn pipeline_with_full_neighborhood_matches_plain_run() {
        let t = cyclic(&[2, 4]);
        let plain = pipeline(&t, None, DEFAULT_ORACLE_BOUND).unwrap();
        let all = MorphismSet::all(4);
        let extracted = pipeline(&t, Some(&all), DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(plain.presentation, extracted.presentation);
    }

    #[test]
    fn pipeline_with_subgroup_neighborhood() {
        // {0, 2, 4, 6} in Z/8 projects onto {0, 2} in Z/4 and {0} in Z/2
        let t = cyclic(&[2, 4, 8]);
        let u = MorphismSet::from_indices(8, [0, 2, 4, 6]).unwrap();
        let out = pipeline(&t, Some(&u), DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(out.presentation.group_orders(), vec![vec![1], vec![2], vec![4]]);
    }

    #[test]
    fn single_level_pipeline_realizes_the_skeleton() {
        let g = FiniteGroupoid::pair(3).product(&bz(2));
        let out = pipeline(&GroupoidTower::single(g), None, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(out.presentation.levels.len(), 1);
        assert_eq!(out.presentation.group_orders(), vec![vec![2]]);
    }
}

//! Fixtures shared by the benchmarks.

use stone_groupoid::constructions::MorphismSet;
use stone_groupoid::generators::{
    action_tower, cyclic_tower, random_groupoid, random_skeletal, random_unit_neighborhood, seeded_rng,
};
use stone_groupoid::{FiniteGroup, FiniteGroupoid, GroupoidTower};

/// A random groupoid with at most `max_morphisms` morphisms spread over up
/// to four components.
pub fn groupoid(max_morphisms: usize) -> FiniteGroupoid {
    random_groupoid(&mut seeded_rng(max_morphisms as u64), max_morphisms, 4)
}

pub fn skeletal(max_morphisms: usize) -> FiniteGroupoid {
    random_skeletal(&mut seeded_rng(max_morphisms as u64), max_morphisms, 3)
}

/// A groupoid together with a neighborhood of its units.
pub fn with_neighborhood(max_morphisms: usize) -> (FiniteGroupoid, MorphismSet) {
    let mut rng = seeded_rng(max_morphisms as u64);
    let g = random_groupoid(&mut rng, max_morphisms, 3);
    let u = random_unit_neighborhood(&mut rng, &g);
    (g, u)
}

/// `BZ/p <- ... <- BZ/p^levels`.
pub fn cyclic(p: usize, levels: u32) -> GroupoidTower {
    cyclic_tower(p, 1..=levels)
}

pub fn action(p: usize, levels: usize) -> GroupoidTower {
    action_tower(p, levels)
}

/// Two objects joined by every morphism of `S_n`.
pub fn connected_symmetric(n: usize) -> FiniteGroupoid {
    FiniteGroupoid::pair(2).product(&FiniteGroupoid::from_group(&FiniteGroup::symmetric(n)))
}

//! Deterministic and seeded generators of groupoids, towers and functors.
//!
//! Random groupoids are disjoint unions of transitive action groupoids
//! `G ⋉ G/H` for groups `G` from a fixed catalog, so they satisfy the axioms
//! by construction. Everything seeded uses ChaCha8, which makes the output a
//! pure function of the seed.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{collapse, quotient, skeletal_replacement, MorphismSet, WideSubgroupoid};
use crate::error::{Error, Result};
use crate::functor::FunctorMaps;
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::tower::GroupoidTower;

pub const PRIMES: [usize; 4] = [2, 3, 5, 7];
pub const MAX_DEPTH: usize = 8;
/// Generated inputs may have at most this many composable pairs in total.
pub const COMPOSABLE_PAIR_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `BZ/p <- BZ/p^2 <- ... <- BZ/p^depth` by reduction.
    CyclicTower,
    /// The pair groupoid on `n` objects.
    Pair,
    /// `Z/p^k` acting on `Z/p` by reduction and translation, `k = 1..=depth`.
    Action,
    /// Pair groupoids on `Z/p^k`, `k = 1..=depth`, by reduction.
    TranslationTower,
    /// A disjoint union of at most `components` transitive action groupoids.
    Random,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::CyclicTower,
        GeneratorKind::Pair,
        GeneratorKind::Action,
        GeneratorKind::TranslationTower,
        GeneratorKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::CyclicTower => "cyclic-tower",
            GeneratorKind::Pair => "pair",
            GeneratorKind::Action => "action",
            GeneratorKind::TranslationTower => "translation-tower",
            GeneratorKind::Random => "random",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub p: usize,
    pub depth: usize,
    pub n: usize,
    pub seed: u64,
    pub components: usize,
    pub max_morphisms: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind) -> Self {
        GeneratorSpec {
            kind,
            p: 2,
            depth: 3,
            n: 3,
            seed: 0,
            components: 4,
            max_morphisms: 64,
        }
    }

    fn check(&self) -> Result<()> {
        let tower = matches!(
            self.kind,
            GeneratorKind::CyclicTower | GeneratorKind::Action | GeneratorKind::TranslationTower
        );
        if tower {
            if !PRIMES.contains(&self.p) {
                return Err(invalid("p", format!("{} is not one of 2, 3, 5, 7", self.p)));
            }
            if self.depth == 0 || self.depth > MAX_DEPTH {
                return Err(invalid("depth", format!("{} is outside 1..={MAX_DEPTH}", self.depth)));
            }
        }
        let pairs: u128 = match self.kind {
            GeneratorKind::CyclicTower => (1..=self.depth).map(|k| (self.p as u128).pow(2 * k as u32)).sum(),
            GeneratorKind::Action => (1..=self.depth)
                .map(|k| (self.p as u128).pow(2 * k as u32) * self.p as u128)
                .sum(),
            GeneratorKind::TranslationTower => (1..=self.depth).map(|k| (self.p as u128).pow(3 * k as u32)).sum(),
            GeneratorKind::Pair => (self.n as u128).pow(3),
            GeneratorKind::Random => {
                if self.components == 0 {
                    return Err(invalid("components", "must be at least 1".into()));
                }
                if self.max_morphisms == 0 {
                    return Err(invalid("max-morphisms", "must be at least 1".into()));
                }
                (self.max_morphisms as u128).pow(2)
            }
        };
        if pairs > COMPOSABLE_PAIR_CAP as u128 {
            let field = if self.kind == GeneratorKind::Pair {
                "n"
            } else if self.kind == GeneratorKind::Random {
                "max-morphisms"
            } else {
                "depth"
            };
            return Err(invalid(
                field,
                format!("output would have {pairs} composable pairs, above the cap {COMPOSABLE_PAIR_CAP}"),
            ));
        }
        Ok(())
    }
}

fn invalid(field: &'static str, reason: String) -> Error {
    Error::InvalidParameter { field, reason }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Groupoid(FiniteGroupoid),
    Tower(GroupoidTower),
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    spec.check()?;
    Ok(match spec.kind {
        GeneratorKind::CyclicTower => Generated::Tower(cyclic_tower(spec.p, 1..=spec.depth as u32)),
        GeneratorKind::Pair => Generated::Groupoid(FiniteGroupoid::pair(spec.n)),
        GeneratorKind::Action => Generated::Tower(action_tower(spec.p, spec.depth)),
        GeneratorKind::TranslationTower => Generated::Tower(translation_tower(spec.p, spec.depth)),
        GeneratorKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            Generated::Groupoid(random_groupoid(&mut rng, spec.max_morphisms, spec.components))
        }
    })
}

/// `BZ/p^a <- ... <- BZ/p^b` for `exponents = a..=b`, by reduction.
pub fn cyclic_tower(p: usize, exponents: std::ops::RangeInclusive<u32>) -> GroupoidTower {
    let orders: Vec<usize> = exponents.map(|k| p.pow(k)).collect();
    let levels = orders
        .iter()
        .map(|&n| FiniteGroupoid::from_group(&FiniteGroup::cyclic(n)))
        .collect();
    let transitions = orders
        .windows(2)
        .map(|w| FunctorMaps {
            obj_map: vec![0],
            mor_map: (0..w[1]).map(|a| a % w[0]).collect(),
        })
        .collect();
    GroupoidTower::new(levels, transitions).expect("reduction is a homomorphism")
}

/// Action groupoids of `Z/p^k` on `Z/p`, `a . x = a + x mod p`.
pub fn action_tower(p: usize, depth: usize) -> GroupoidTower {
    let orders: Vec<usize> = (1..=depth as u32).map(|k| p.pow(k)).collect();
    let levels = orders
        .iter()
        .map(|&n| FiniteGroupoid::action(&FiniteGroup::cyclic(n), p, |a, x| (a + x) % p).expect("translation action"))
        .collect();
    let transitions = orders
        .windows(2)
        .map(|w| FunctorMaps {
            obj_map: (0..p).collect(),
            mor_map: (0..w[1] * p).map(|i| (i / p % w[0]) * p + i % p).collect(),
        })
        .collect();
    GroupoidTower::new(levels, transitions).expect("reduction commutes with the action")
}

/// Pair groupoids on `Z/p^k` with reduction maps.
pub fn translation_tower(p: usize, depth: usize) -> GroupoidTower {
    let sizes: Vec<usize> = (1..=depth as u32).map(|k| p.pow(k)).collect();
    let levels = sizes.iter().map(|&n| FiniteGroupoid::pair(n)).collect();
    let transitions = sizes
        .windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            FunctorMaps {
                obj_map: (0..hi).map(|x| x % lo).collect(),
                mor_map: (0..hi * hi).map(|g| (g / hi % lo) * lo + g % hi % lo).collect(),
            }
        })
        .collect();
    GroupoidTower::new(levels, transitions).expect("reduction is a functor of pair groupoids")
}

/// Named groups of order at most `max_order`, without repeats of the same
/// construction.
pub fn group_catalog(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in 1..=max_order {
        out.push((format!("Z{n}"), FiniteGroup::cyclic(n)));
    }
    let z = FiniteGroup::cyclic;
    let products = [(2, 2), (2, 4), (3, 3), (2, 6), (2, 8), (4, 4), (2, 10), (2, 12), (3, 6)];
    for (a, b) in products {
        if a * b <= max_order {
            out.push((format!("Z{a}xZ{b}"), z(a).direct_product(&z(b))));
        }
    }
    if 8 <= max_order {
        out.push(("Z2^3".into(), z(2).direct_product(&z(2)).direct_product(&z(2))));
        out.push(("Q8".into(), FiniteGroup::quaternion()));
    }
    for n in 3..=max_order / 2 {
        out.push((format!("D{n}"), FiniteGroup::dihedral(n)));
    }
    for n in 3..=max_order / 4 {
        out.push((format!("Dic{n}"), FiniteGroup::dicyclic(n)));
    }
    if 12 <= max_order {
        out.push(("A4".into(), FiniteGroup::alternating(4)));
    }
    if 16 <= max_order {
        out.push(("Q8xZ2".into(), FiniteGroup::quaternion().direct_product(&z(2))));
        out.push(("Z2^2xZ4".into(), z(2).direct_product(&z(2)).direct_product(&z(4))));
    }
    if 18 <= max_order {
        out.push(("S3xZ3".into(), FiniteGroup::symmetric(3).direct_product(&z(3))));
    }
    if 24 <= max_order {
        out.push(("S4".into(), FiniteGroup::symmetric(4)));
        out.push(("A4xZ2".into(), FiniteGroup::alternating(4).direct_product(&z(2))));
        out.push(("S3xZ4".into(), FiniteGroup::symmetric(3).direct_product(&z(4))));
    }
    out
}

/// Number of isomorphism classes of groups of order `n`, for `n <= 24`.
pub const GROUP_COUNTS: [usize; 25] = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

/// Largest order for which [`small_groups`] is complete.
pub const SMALL_GROUP_BOUND: usize = 24;

/// `N ⋊ H` where `act(h, n)` is the automorphism `h` applied to `n`. Element
/// `(n, h)` has index `n * |H| + h` and `(n, h)(n', h') = (n act(h, n'), hh')`.
pub fn semidirect_product(n: &FiniteGroup, h: &FiniteGroup, act: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
    let m = h.order();
    FiniteGroup::from_fn(n.order() * m, |x, y| {
        let (a, b) = (x / m, x % m);
        let (c, d) = (y / m, y % m);
        n.mul(a, act(b, c)) * m + h.mul(b, d)
    })
}

/// One group of every isomorphism type of order at most `max_order`, which
/// may not exceed [`SMALL_GROUP_BOUND`]. Extends [`group_catalog`] with the
/// types it lacks; the test suite checks the counts against [`GROUP_COUNTS`].
pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    assert!(max_order <= SMALL_GROUP_BOUND, "small_groups is complete only up to order 24");
    let z = FiniteGroup::cyclic;
    let semi = |n: FiniteGroup, h: FiniteGroup, act: &dyn Fn(usize, usize) -> usize| {
        semidirect_product(&n, &h, act).expect("action by automorphisms")
    };
    let odd_inverts = |p: usize| move |b: usize, a: usize| if b % 2 == 1 { (p - a) % p } else { a };
    let power_action = |p: usize, r: usize| {
        move |b: usize, a: usize| (0..b).fold(a, |x, _| x * r % p)
    };
    let d4 = FiniteGroup::dihedral(4);
    let mut extra: Vec<(String, FiniteGroup)> = vec![
        ("Z2^4".into(), z(2).direct_product(&z(2)).direct_product(&z(2)).direct_product(&z(2))),
        ("Z2xD4".into(), z(2).direct_product(&d4)),
        ("Z4:Z4".into(), semi(z(4), z(4), &odd_inverts(4))),
        ("M16".into(), semi(z(8), z(2), &power_action(8, 5))),
        ("SD16".into(), semi(z(8), z(2), &power_action(8, 3))),
        // Z4 swaps the two factors of Z2 x Z2 (index 2x + y)
        (
            "Z2^2:Z4".into(),
            semi(z(2).direct_product(&z(2)), z(4), &|b, a| if b % 2 == 1 { (a % 2) * 2 + a / 2 } else { a }),
        ),
        ("Pauli".into(), pauli_group()),
        ("Z3^2:Z2".into(), semi(z(3).direct_product(&z(3)), z(2), &|b, a| {
            if b == 1 {
                (3 - a / 3) % 3 * 3 + (3 - a % 3) % 3
            } else {
                a
            }
        })),
        ("F20".into(), semi(z(5), z(4), &power_action(5, 2))),
        ("Z7:Z3".into(), semi(z(7), z(3), &power_action(7, 2))),
        ("Z2^2xZ6".into(), z(2).direct_product(&z(2)).direct_product(&z(6))),
        ("SL(2,3)".into(), special_linear_2_3()),
        ("Dic3xZ2".into(), FiniteGroup::dicyclic(3).direct_product(&z(2))),
        ("D4xZ3".into(), d4.direct_product(&z(3))),
        ("Q8xZ3".into(), FiniteGroup::quaternion().direct_product(&z(3))),
        ("D6xZ2".into(), FiniteGroup::dihedral(6).direct_product(&z(2))),
        ("Z3:Z8".into(), semi(z(3), z(8), &odd_inverts(3))),
        // D4 acts on Z3 through the quotient by <r^2, s>; r is the element 1
        ("Z3:D4".into(), semi(z(3), d4.clone(), &|b, a| if (b % 4) % 2 == 1 { (3 - a) % 3 } else { a })),
    ];
    extra.retain(|(_, g)| g.order() <= max_order);
    let mut out = group_catalog(max_order);
    out.extend(extra);
    out.sort_by_key(|(_, g)| g.order());
    out
}

/// `{ i^p X^a Z^b }` with `ZX = -XZ`; element index `4p + 2a + b`.
fn pauli_group() -> FiniteGroup {
    FiniteGroup::from_fn(16, |x, y| {
        let (p, a, b) = (x / 4, x / 2 % 2, x % 2);
        let (q, c, d) = (y / 4, y / 2 % 2, y % 2);
        // moving X^c left past Z^b costs a sign when both are present
        let phase = (p + q + 2 * b * c) % 4;
        phase * 4 + (a ^ c) * 2 + (b ^ d)
    })
    .expect("Pauli group table")
}

/// 2x2 matrices over F3 with determinant 1.
fn special_linear_2_3() -> FiniteGroup {
    let mul = |m: &[usize; 4], n: &[usize; 4]| {
        [
            (m[0] * n[0] + m[1] * n[2]) % 3,
            (m[0] * n[1] + m[1] * n[3]) % 3,
            (m[2] * n[0] + m[3] * n[2]) % 3,
            (m[2] * n[1] + m[3] * n[3]) % 3,
        ]
    };
    FiniteGroup::from_generators([1, 0, 0, 1], &[[1, 1, 0, 1], [1, 0, 1, 1]], mul).0
}

/// The left action of `group` on the left cosets of `subgroup`; coset `i`
/// is the one whose least member is the `i`-th such member found.
pub fn coset_action(group: &FiniteGroup, subgroup: &[usize]) -> FiniteGroupoid {
    let mut label = vec![usize::MAX; group.order()];
    let mut representatives = Vec::new();
    for a in 0..group.order() {
        if label[a] == usize::MAX {
            for &h in subgroup {
                label[group.mul(a, h)] = representatives.len();
            }
            representatives.push(a);
        }
    }
    FiniteGroupoid::action(group, representatives.len(), |g, x| label[group.mul(g, representatives[x])])
        .expect("left multiplication permutes left cosets")
}

/// A disjoint union of at most `components` transitive action groupoids with
/// at most `max_morphisms` morphisms in total (and at least one component).
pub fn random_groupoid(rng: &mut impl Rng, max_morphisms: usize, components: usize) -> FiniteGroupoid {
    let catalog = group_catalog(max_morphisms.min(24));
    let count = rng.random_range(1..=components.max(1));
    let mut budget = max_morphisms;
    let mut parts = Vec::new();
    for _ in 0..count {
        let choices: Vec<&(String, FiniteGroup)> = catalog.iter().filter(|(_, g)| g.order() <= budget).collect();
        let Some((_, group)) = choices.choose(rng) else {
            break;
        };
        let subgroups = group.subgroups();
        // the action groupoid has |G| * [G : H] morphisms
        let fitting: Vec<&Vec<usize>> = subgroups
            .iter()
            .filter(|h| group.order() * (group.order() / h.len()) <= budget)
            .collect();
        let h = fitting.choose(rng).expect("the whole group always fits");
        let part = coset_action(group, h);
        budget -= part.num_morphisms();
        parts.push(part);
        if budget == 0 {
            break;
        }
    }
    FiniteGroupoid::disjoint_union(&parts.iter().collect::<Vec<_>>())
}

/// A random skeletal groupoid: one-object components with catalog groups.
pub fn random_skeletal(rng: &mut impl Rng, max_morphisms: usize, components: usize) -> FiniteGroupoid {
    let catalog = group_catalog(max_morphisms.min(24));
    let count = rng.random_range(1..=components.max(1));
    let mut budget = max_morphisms;
    let mut parts = Vec::new();
    for _ in 0..count {
        let choices: Vec<&(String, FiniteGroup)> = catalog.iter().filter(|(_, g)| g.order() <= budget).collect();
        let Some((_, group)) = choices.choose(rng) else {
            break;
        };
        budget -= group.order();
        parts.push(FiniteGroupoid::from_group(group));
    }
    FiniteGroupoid::disjoint_union(&parts.iter().collect::<Vec<_>>())
}

/// A random neighborhood of the units: every unit plus each other morphism
/// with probability one half.
pub fn random_unit_neighborhood(rng: &mut impl Rng, g: &FiniteGroupoid) -> MorphismSet {
    let mut u = MorphismSet::units(g);
    for m in 0..g.num_morphisms() {
        if rng.random_bool(0.5) {
            u.insert(m);
        }
    }
    u
}

/// Random permutations of objects and morphisms, in the form taken by
/// [`FiniteGroupoid::relabel`].
pub fn random_relabeling(rng: &mut impl Rng, g: &FiniteGroupoid) -> (Vec<usize>, Vec<usize>) {
    use rand::seq::SliceRandom;
    let mut objects: Vec<usize> = (0..g.num_objects()).collect();
    let mut morphisms: Vec<usize> = (0..g.num_morphisms()).collect();
    objects.shuffle(rng);
    morphisms.shuffle(rng);
    (objects, morphisms)
}

/// A functor together with its source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledFunctor {
    pub kind: &'static str,
    pub source: FiniteGroupoid,
    pub target: FiniteGroupoid,
    pub maps: FunctorMaps,
}

/// A random functor between groupoids of at most `max_morphisms` morphisms,
/// drawn from a mix of constructions that includes equivalences and
/// non-equivalences of every kind the criteria distinguish.
pub fn random_functor(rng: &mut impl Rng, max_morphisms: usize) -> SampledFunctor {
    let budget = max_morphisms.max(4);
    match rng.random_range(0..9) {
        0 => {
            let g = random_groupoid(rng, budget, 3);
            let s = skeletal_replacement(&g);
            SampledFunctor {
                kind: "skeleton-inclusion",
                source: s.skeleton,
                target: g,
                maps: s.inclusion,
            }
        }
        1 => {
            let g = random_groupoid(rng, budget, 3);
            let (objects, morphisms) = random_relabeling(rng, &g);
            let target = g.relabel(&objects, &morphisms).expect("permutations");
            SampledFunctor {
                kind: "relabeling",
                source: g,
                target,
                maps: FunctorMaps {
                    obj_map: objects,
                    mor_map: morphisms,
                },
            }
        }
        2 => {
            let g = random_groupoid(rng, budget, 3);
            let objects: Vec<usize> = (0..g.num_objects()).filter(|_| rng.random_bool(0.6)).collect();
            let objects = if objects.is_empty() { vec![0] } else { objects };
            let r = g.full_subgroupoid(&objects).expect("objects exist");
            SampledFunctor {
                kind: "full-inclusion",
                source: r.groupoid,
                target: g,
                maps: FunctorMaps {
                    obj_map: r.objects,
                    mor_map: r.morphisms,
                },
            }
        }
        3 => {
            let x = random_skeletal(rng, budget.min(24), 2);
            let normals = crate::constructions::normal_basis(&x).expect("small skeletal groupoid");
            let n: &WideSubgroupoid = normals.choose(rng).expect("basis is never empty");
            let q = quotient(&x, n).expect("basis members are normal");
            SampledFunctor {
                kind: "quotient",
                source: x,
                target: q.quotient,
                maps: q.projection,
            }
        }
        4 => {
            let g = random_groupoid(rng, budget / 4, 2);
            let k = rng.random_range(1..=2usize);
            let target = g.product(&FiniteGroupoid::pair(k));
            let fixed = rng.random_range(0..k);
            SampledFunctor {
                kind: "pair-inclusion",
                maps: FunctorMaps {
                    obj_map: (0..g.num_objects()).map(|x| x * k + fixed).collect(),
                    mor_map: (0..g.num_morphisms()).map(|m| m * k * k + fixed * k + fixed).collect(),
                },
                source: g,
                target,
            }
        }
        5 => {
            let g = random_groupoid(rng, budget / 4, 2);
            let k = rng.random_range(1..=2usize);
            let source = g.product(&FiniteGroupoid::pair(k));
            SampledFunctor {
                kind: "pair-projection",
                maps: FunctorMaps {
                    obj_map: (0..source.num_objects()).map(|x| x / k).collect(),
                    mor_map: (0..source.num_morphisms()).map(|m| m / (k * k)).collect(),
                },
                source,
                target: g,
            }
        }
        6 => {
            let e = random_skeletal(rng, budget, 3);
            let x = rng.random_range(0..e.num_objects());
            let c = collapse(&e, x).expect("skeletal");
            SampledFunctor {
                kind: "collapse",
                source: e,
                target: c.target,
                maps: c.maps,
            }
        }
        7 => {
            let g = random_groupoid(rng, budget / 2, 2);
            let fold = FiniteGroupoid::disjoint_union(&[&g, &g]);
            SampledFunctor {
                kind: "fold",
                maps: FunctorMaps {
                    obj_map: (0..fold.num_objects()).map(|x| x % g.num_objects()).collect(),
                    mor_map: (0..fold.num_morphisms()).map(|m| m % g.num_morphisms()).collect(),
                },
                source: fold,
                target: g,
            }
        }
        _ => {
            // reduction Z/ab -> Z/a, or an inclusion Z/a -> Z/ab
            let a = rng.random_range(1..=6usize);
            let b = rng.random_range(1..=4usize);
            let (big, small) = (
                FiniteGroupoid::from_group(&FiniteGroup::cyclic(a * b)),
                FiniteGroupoid::from_group(&FiniteGroup::cyclic(a)),
            );
            if rng.random_bool(0.5) {
                SampledFunctor {
                    kind: "reduction",
                    maps: FunctorMaps {
                        obj_map: vec![0],
                        mor_map: (0..a * b).map(|m| m % a).collect(),
                    },
                    source: big,
                    target: small,
                }
            } else {
                SampledFunctor {
                    kind: "multiplication",
                    maps: FunctorMaps {
                        obj_map: vec![0],
                        mor_map: (0..a).map(|m| m * b).collect(),
                    },
                    source: small,
                    target: big,
                }
            }
        }
    }
}

/// A random skeletal tower of the given depth whose top level has at most
/// `max_morphisms` morphisms.
///
/// Going down, each component group is divided by a random normal subgroup,
/// and components whose quotients are isomorphic may be merged, so that
/// transitions are surjective on components and on every group.
pub fn random_skeletal_tower(rng: &mut impl Rng, max_morphisms: usize, depth: usize) -> GroupoidTower {
    let mut groups: Vec<Vec<FiniteGroup>> = vec![Vec::new(); depth + 1];
    let top = random_skeletal(rng, max_morphisms, 3);
    groups[depth] = (0..top.num_objects()).map(|x| top.isotropy(x).unwrap()).collect();

    // maps[n] = (component map, homomorphism per component), level n+1 -> n
    let mut maps: Vec<(Vec<usize>, Vec<Vec<usize>>)> = vec![(Vec::new(), Vec::new()); depth];
    for n in (0..depth).rev() {
        let mut lower: Vec<FiniteGroup> = Vec::new();
        let mut pi0 = Vec::new();
        let mut homs = Vec::new();
        for g in &groups[n + 1] {
            let normals: Vec<Vec<usize>> = g.subgroups().into_iter().filter(|h| g.is_normal(h)).collect();
            let normal = normals.choose(rng).expect("trivial subgroup is normal");
            let (q, projection) = g.quotient(normal).expect("normal subgroup");
            let merge = if rng.random_bool(0.5) {
                (0..lower.len()).find_map(|j| lower[j].find_isomorphism(&q).map(|iso| (j, iso)))
            } else {
                None
            };
            match merge {
                Some((j, iso)) => {
                    // iso: lower[j] -> q; invert it to land in lower[j]
                    let mut back = vec![0; q.order()];
                    for (a, &b) in iso.iter().enumerate() {
                        back[b] = a;
                    }
                    pi0.push(j);
                    homs.push(projection.iter().map(|&c| back[c]).collect());
                }
                None => {
                    pi0.push(lower.len());
                    homs.push(projection);
                    lower.push(q);
                }
            }
        }
        groups[n] = lower;
        maps[n] = (pi0, homs);
    }

    let levels: Vec<FiniteGroupoid> = groups
        .iter()
        .map(|gs| {
            let parts: Vec<FiniteGroupoid> = gs.iter().map(FiniteGroupoid::from_group).collect();
            FiniteGroupoid::disjoint_union(&parts.iter().collect::<Vec<_>>())
        })
        .collect();
    let offsets = |gs: &[FiniteGroup]| {
        gs.iter()
            .scan(0, |acc, g| {
                let start = *acc;
                *acc += g.order();
                Some(start)
            })
            .collect::<Vec<usize>>()
    };
    let transitions = (0..depth)
        .map(|n| {
            let (pi0, homs) = &maps[n];
            let down = offsets(&groups[n]);
            let mor_map = homs
                .iter()
                .enumerate()
                .flat_map(|(c, hom)| hom.iter().map(|&b| down[pi0[c]] + b).collect::<Vec<_>>())
                .collect();
            FunctorMaps {
                obj_map: pi0.clone(),
                mor_map,
            }
        })
        .collect();
    GroupoidTower::new(levels, transitions).expect("quotient maps and isomorphisms are homomorphisms")
}

/// `T x pair(k)` level-wise, with `(g, p) -> (t(g), p)`.
pub fn tower_times_pair(t: &GroupoidTower, k: usize) -> GroupoidTower {
    let pair = FiniteGroupoid::pair(k);
    let levels = t.levels().iter().map(|l| l.product(&pair)).collect();
    let transitions = (0..t.depth())
        .map(|n| {
            let maps = t.transition_maps(n);
            FunctorMaps {
                obj_map: (0..t.level(n + 1).num_objects() * k)
                    .map(|x| maps.obj_map[x / k] * k + x % k)
                    .collect(),
                mor_map: (0..t.level(n + 1).num_morphisms() * k * k)
                    .map(|m| maps.mor_map[m / (k * k)] * k * k + m % (k * k))
                    .collect(),
            }
        })
        .collect();
    GroupoidTower::new(levels, transitions).expect("products of functors are functors")
}

/// A seeded generator for callers that do not want to depend on `rand`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::revalidate;
    use crate::tower::validate_tower;

    #[test]
    fn cyclic_tower_orders() {
        let Generated::Tower(t) = generate(&GeneratorSpec::new(GeneratorKind::CyclicTower)).unwrap() else {
            panic!("expected a tower");
        };
        let orders: Vec<usize> = t.levels().iter().map(FiniteGroupoid::num_morphisms).collect();
        assert_eq!(orders, vec![2, 4, 8]);
        assert!(validate_tower(&t).is_empty());
    }

    #[test]
    fn pair_of_three() {
        let spec = GeneratorSpec {
            n: 3,
            ..GeneratorSpec::new(GeneratorKind::Pair)
        };
        let Generated::Groupoid(g) = generate(&spec).unwrap() else {
            panic!("expected a groupoid");
        };
        assert_eq!(g.num_morphisms(), 9);
    }

    #[test]
    fn random_is_reproducible() {
        let spec = GeneratorSpec {
            seed: 17,
            components: 4,
            ..GeneratorSpec::new(GeneratorKind::Random)
        };
        let (a, b) = (generate(&spec).unwrap(), generate(&spec).unwrap());
        assert_eq!(a, b);
        let Generated::Groupoid(g) = a else {
            panic!("expected a groupoid");
        };
        assert!(revalidate(&g).is_valid());
        assert!(g.pi0().count() <= 4);
        assert!(g.num_morphisms() <= 64);
    }

    #[test]
    fn parameters_are_checked() {
        let bad_p = GeneratorSpec {
            p: 4,
            ..GeneratorSpec::new(GeneratorKind::CyclicTower)
        };
        assert!(matches!(generate(&bad_p), Err(Error::InvalidParameter { field: "p", .. })));
        let deep = GeneratorSpec {
            depth: 9,
            ..GeneratorSpec::new(GeneratorKind::Action)
        };
        assert!(matches!(generate(&deep), Err(Error::InvalidParameter { field: "depth", .. })));
        let huge = GeneratorSpec {
            p: 7,
            depth: 8,
            ..GeneratorSpec::new(GeneratorKind::CyclicTower)
        };
        assert!(matches!(generate(&huge), Err(Error::InvalidParameter { field: "depth", .. })));
    }

    #[test]
    fn built_in_towers_are_valid() {
        for p in [2, 3] {
            for depth in 1..=3 {
                assert!(validate_tower(&action_tower(p, depth)).is_empty());
                assert!(validate_tower(&translation_tower(p, depth)).is_empty());
            }
        }
    }

    #[test]
    fn random_towers_are_valid_and_skeletal() {
        let mut rng = seeded_rng(5);
        for _ in 0..20 {
            let t = random_skeletal_tower(&mut rng, 16, 3);
            assert!(validate_tower(&t).is_empty());
            assert!(t.levels().iter().all(FiniteGroupoid::is_skeletal));
            assert!(validate_tower(&tower_times_pair(&t, 2)).is_empty());
        }
    }

    #[test]
    fn random_functors_are_functors() {
        let mut rng = seeded_rng(9);
        for _ in 0..100 {
            let f = random_functor(&mut rng, 64);
            crate::functor::check_functor(&f.source, &f.target, &f.maps).unwrap();
            assert!(f.source.num_morphisms() <= 64 && f.target.num_morphisms() <= 64, "{}", f.kind);
        }
    }

    #[test]
    fn small_groups_are_complete_and_distinct() {
        let groups = small_groups(SMALL_GROUP_BOUND);
        for n in 1..=SMALL_GROUP_BOUND {
            let of_order: Vec<_> = groups.iter().filter(|(_, g)| g.order() == n).collect();
            assert_eq!(of_order.len(), GROUP_COUNTS[n], "order {n}");
            for (i, (a, g)) in of_order.iter().enumerate() {
                for (b, h) in &of_order[i + 1..] {
                    assert!(!g.is_isomorphic(h), "{a} and {b}");
                }
            }
        }
    }

    #[test]
    fn coset_action_is_transitive() {
        let g = FiniteGroup::symmetric(3);
        let h = g.subgroups().into_iter().find(|h| h.len() == 2).unwrap();
        let x = coset_action(&g, &h);
        assert_eq!(x.num_objects(), 3);
        assert_eq!(x.pi0().count(), 1);
        assert_eq!(x.isotropy(0).unwrap().order(), 2);
    }
}

//! Normal cores and normal bases of skeletal groupoids.

use crate::constructions::subgroupoid::{conjugate, MorphismSet, WideSubgroupoid};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::tower::GroupoidTower;

/// Largest morphism count for which [`normal_basis`] enumerates the full
/// lattice of normal wide subgroupoids.
pub const LATTICE_BOUND: usize = 24;

/// `Core(H) = H \ H_bad`, where `H_bad` holds the loops of `H` that some
/// conjugation `g r g^-1` moves out of `H`.
pub fn normal_core(x: &FiniteGroupoid, h: &WideSubgroupoid) -> Result<WideSubgroupoid> {
    x.require_skeletal()?;
    WideSubgroupoid::new(x, h.morphisms().clone())?;
    let bad = bad_set(x, h);
    let core = h.morphisms().difference(&bad);
    let n = WideSubgroupoid::new(x, core).expect("the core of a subgroupoid is a subgroupoid");
    debug_assert!(n.is_normal(x));
    Ok(n)
}

/// `H_bad`: loops `r` of `H` with some `g`, `tgt(g) = src(r)`, and
/// `g r g^-1` outside `H`.
pub fn bad_set(x: &FiniteGroupoid, h: &WideSubgroupoid) -> MorphismSet {
    let mut bad = MorphismSet::empty(x.num_morphisms());
    for r in h.morphisms().iter() {
        let at = x.src(r);
        if x.tgt(r) != at {
            continue;
        }
        let escapes = (0..x.num_morphisms())
            .filter(|&g| x.tgt(g) == at)
            .any(|g| !h.contains(conjugate(x, g, r)));
        if escapes {
            bad.insert(r);
        }
    }
    bad
}

/// All normal wide subgroupoids of a skeletal groupoid with at most
/// [`LATTICE_BOUND`] morphisms, ordered by size and then by members.
///
/// The lattice is walked one object at a time: every subgroup of the
/// isotropy group is replaced by its normal core, and a normal wide
/// subgroupoid is a choice of one such core per object.
pub fn normal_basis(x: &FiniteGroupoid) -> Result<Vec<WideSubgroupoid>> {
    x.require_skeletal()?;
    if x.num_morphisms() > LATTICE_BOUND {
        return Err(Error::LatticeTooLarge {
            morphisms: x.num_morphisms(),
            bound: LATTICE_BOUND,
        });
    }
    let mut per_object: Vec<Vec<Vec<usize>>> = Vec::with_capacity(x.num_objects());
    for obj in 0..x.num_objects() {
        let loops = x.loops(obj);
        let group = x.isotropy(obj)?;
        let mut cores: Vec<Vec<usize>> = Vec::new();
        for subgroup in group.subgroups() {
            let mut set = MorphismSet::units(x);
            for &e in &subgroup {
                set.insert(loops[e]);
            }
            let h = WideSubgroupoid::new_unchecked(set);
            let core: Vec<usize> = normal_core(x, &h)?
                .morphisms()
                .iter()
                .filter(|&m| x.src(m) == obj)
                .collect();
            if !cores.contains(&core) {
                cores.push(core);
            }
        }
        per_object.push(cores);
    }

    let mut out = vec![MorphismSet::empty(x.num_morphisms())];
    for cores in &per_object {
        out = out
            .iter()
            .flat_map(|partial| {
                cores.iter().map(move |core| {
                    let mut next = partial.clone();
                    for &m in core {
                        next.insert(m);
                    }
                    next
                })
            })
            .collect();
    }
    let mut basis: Vec<WideSubgroupoid> = out.into_iter().map(WideSubgroupoid::new_unchecked).collect();
    basis.sort();
    Ok(basis)
}

/// Kernels of the projections of the top level of a skeletal tower:
/// entry `n` holds the top-level morphisms sent to units of level `n`.
/// The last entry is the unit subgroupoid, and the entries shrink as `n`
/// grows.
pub fn tower_kernels(t: &GroupoidTower) -> Result<Vec<WideSubgroupoid>> {
    for n in 0..=t.depth() {
        t.level(n).require_skeletal().map_err(|e| e.at_level(n))?;
    }
    let top = t.top();
    (0..=t.depth())
        .map(|n| {
            let proj = t.projection_from_top(n);
            let level = t.level(n);
            let kernel = MorphismSet::from_indices(
                top.num_morphisms(),
                (0..top.num_morphisms()).filter(|&g| level.is_unit(proj.mor_map[g])),
            )?;
            let k = WideSubgroupoid::new(top, kernel).map_err(|e| e.at_level(n))?;
            k.require_normal(top).map_err(|e| e.at_level(n))?;
            Ok(k)
        })
        .collect()
}

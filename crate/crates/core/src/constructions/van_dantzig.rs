//! Extraction of a wide subgroupoid inside a neighborhood of the units.

use crate::constructions::subgroupoid::{MorphismSet, WideSubgroupoid};
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, MorId};

/// Every intermediate set of a [`van_dantzig`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanDantzigTrace {
    pub neighborhood: MorphismSet,
    /// The compact open neighborhood; equal to the input at finite level.
    pub k: MorphismSet,
    /// Composable pairs of `k` whose product stays in `k`.
    pub w: Vec<(MorId, MorId)>,
    /// Symmetric shrinking of `k` with `m(F x F) ⊆ K`.
    pub f: MorphismSet,
    /// Composable pairs of `f` whose product leaves `f`.
    pub b: Vec<(MorId, MorId)>,
    /// First projection of `b`.
    pub m: MorphismSet,
    /// `m ∪ m^-1`.
    pub v: MorphismSet,
    /// `f \ v`.
    pub h1: MorphismSet,
}

/// A wide subgroupoid `H` with `units ⊆ H1 ⊆ U`, built through the sets
/// `K, W, F, B, M, V`.
///
/// `F` is grown from the units inside `K ∩ K^-1`, adding morphisms in index
/// order whenever every composable pair of the enlarged set still lands in
/// `K`, and is then intersected with its inverse.
pub fn van_dantzig(g: &FiniteGroupoid, neighborhood: &MorphismSet) -> Result<(WideSubgroupoid, VanDantzigTrace)> {
    if neighborhood.universe() != g.num_morphisms() {
        return Err(Error::TableLength {
            table: "neighborhood",
            found: neighborhood.universe(),
            expected: g.num_morphisms(),
        });
    }
    if let Some(object) = (0..g.num_objects()).find(|&x| !neighborhood.contains(g.unit(x))) {
        return Err(Error::MissingUnit { object });
    }

    let k = neighborhood.clone();
    let w: Vec<(MorId, MorId)> = g
        .composable_pairs()
        .filter(|&(a, b)| k.contains(a) && k.contains(b) && k.contains(g.compose(a, b)))
        .collect();

    let symmetric = k.intersection(&k.inverse(g));
    let mut f = MorphismSet::units(g);
    for candidate in symmetric.iter() {
        if f.contains(candidate) {
            continue;
        }
        f.insert(candidate);
        if !products_stay_in(g, &f, candidate, &k) {
            f.remove(candidate);
        }
    }
    let f = f.intersection(&f.inverse(g));

    let b: Vec<(MorId, MorId)> = g
        .composable_pairs()
        .filter(|&(a, c)| f.contains(a) && f.contains(c) && !f.contains(g.compose(a, c)))
        .collect();
    let m = MorphismSet::from_indices(g.num_morphisms(), b.iter().map(|&(a, _)| a))
        .expect("pairs index morphisms of g");
    let v = m.union(&m.inverse(g));
    let h1 = f.difference(&v);

    let h = WideSubgroupoid::new(g, h1.clone())
        .expect("H1 = F \\ (M ∪ M^-1) is a wide subgroupoid for symmetric F containing the units");
    Ok((
        h,
        VanDantzigTrace {
            neighborhood: neighborhood.clone(),
            k,
            w,
            f,
            b,
            m,
            v,
            h1,
        },
    ))
}

/// Whether every composable pair in `f` involving `added` has its product in
/// `k`, assuming this already held before `added` joined `f`.
fn products_stay_in(g: &FiniteGroupoid, f: &MorphismSet, added: MorId, k: &MorphismSet) -> bool {
    let after = g
        .out_star(g.tgt(added))
        .iter()
        .filter(|&&y| f.contains(y))
        .all(|&y| k.contains(g.compose(added, y)));
    let before = f
        .iter()
        .filter(|&x| g.tgt(x) == g.src(added))
        .all(|x| k.contains(g.compose(x, added)));
    after && before
}

/// Every relation a trace must satisfy; returns the first one that fails.
pub fn check_trace(g: &FiniteGroupoid, t: &VanDantzigTrace) -> std::result::Result<(), &'static str> {
    let units = MorphismSet::units(g);
    if !t.k.is_subset(&t.neighborhood) {
        return Err("K ⊆ U");
    }
    if !t.f.is_subset(&t.k) {
        return Err("F ⊆ K");
    }
    if t.f.inverse(g) != t.f {
        return Err("F = F^-1");
    }
    if !units.is_subset(&t.f) {
        return Err("units ⊆ F");
    }
    let expected_w: Vec<(MorId, MorId)> = g
        .composable_pairs()
        .filter(|&(a, b)| t.k.contains(a) && t.k.contains(b) && t.k.contains(g.compose(a, b)))
        .collect();
    if t.w != expected_w {
        return Err("W = m^-1(K) ∩ (K x_G0 K)");
    }
    let in_w = |p: &(MorId, MorId)| t.w.binary_search(p).is_ok();
    let f_pairs: Vec<(MorId, MorId)> = g
        .composable_pairs()
        .filter(|&(a, b)| t.f.contains(a) && t.f.contains(b))
        .collect();
    if !f_pairs.iter().all(in_w) {
        return Err("F x_G0 F ⊆ W");
    }
    let expected_b: Vec<(MorId, MorId)> = f_pairs
        .iter()
        .copied()
        .filter(|&(a, b)| !t.f.contains(g.compose(a, b)))
        .collect();
    if t.b != expected_b {
        return Err("B = pairs of F with product outside F");
    }
    if t.m != MorphismSet::from_indices(g.num_morphisms(), t.b.iter().map(|p| p.0)).unwrap() {
        return Err("M = p1(B)");
    }
    if t.v != t.m.union(&t.m.inverse(g)) {
        return Err("V = M ∪ M^-1");
    }
    if t.h1 != t.f.difference(&t.v) {
        return Err("H1 = F \\ V");
    }
    if !units.is_subset(&t.h1) || !t.h1.is_subset(&t.neighborhood) {
        return Err("units ⊆ H1 ⊆ U");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn bz4() -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(4))
    }

    /// Largest unit-containing subset of `u` closed under composition and
    /// inversion, by brute force over all subsets.
    fn brute_force_maximum(g: &FiniteGroupoid, u: &[usize]) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        for mask in 0u32..(1 << u.len()) {
            let subset: Vec<usize> = (0..u.len()).filter(|&i| mask >> i & 1 == 1).map(|i| u[i]).collect();
            let set = MorphismSet::from_indices(g.num_morphisms(), subset.iter().copied()).unwrap();
            if WideSubgroupoid::new(g, set).is_ok() && subset.len() > best.len() {
                best = subset;
            }
        }
        best
    }

    #[test]
    fn z4_with_subgroup_neighborhood() {
        let g = bz4();
        let u = MorphismSet::from_indices(4, [0, 2]).unwrap();
        let (h, trace) = van_dantzig(&g, &u).unwrap();
        assert_eq!(h.morphisms().to_vec(), vec![0, 2]);
        assert_eq!(brute_force_maximum(&g, &[0, 2]), vec![0, 2]);
        check_trace(&g, &trace).unwrap();
    }

    #[test]
    fn z4_with_generator_neighborhood() {
        let g = bz4();
        let u = MorphismSet::from_indices(4, [0, 1, 3]).unwrap();
        let (h, trace) = van_dantzig(&g, &u).unwrap();
        assert_eq!(h.morphisms().to_vec(), vec![0]);
        // hand execution: 1 + 1 = 2 and 3 + 3 = 2 leave K, so neither 1 nor 3
        // can join F, which stays the units
        assert_eq!(trace.f.to_vec(), vec![0]);
        assert!(trace.b.is_empty());
        assert_eq!(brute_force_maximum(&g, &[0, 1, 3]), vec![0]);
        check_trace(&g, &trace).unwrap();
    }

    #[test]
    fn full_neighborhood_gives_everything() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3)).product(&FiniteGroupoid::pair(2));
        let u = MorphismSet::all(g.num_morphisms());
        let (h, trace) = van_dantzig(&g, &u).unwrap();
        assert_eq!(h.len(), g.num_morphisms());
        check_trace(&g, &trace).unwrap();
    }

    #[test]
    fn missing_unit_is_rejected() {
        let g = FiniteGroupoid::pair(2);
        // units are 0 and 3
        let u = MorphismSet::from_indices(4, [0, 1, 2]).unwrap();
        assert_eq!(van_dantzig(&g, &u).unwrap_err(), Error::MissingUnit { object: 1 });
    }

    #[test]
    fn non_trivial_b_set() {
        // BZ/8 with U = {0, 1, 2, 6, 7}: 2 is rejected (2 + 1 = 3), 6 is
        // rejected (6 + 6 = 4), so F = {0, 1, 7}; then 1 + 1 = 2 and
        // 7 + 7 = 6 leave F
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(8));
        let u = MorphismSet::from_indices(8, [0, 1, 2, 6, 7]).unwrap();
        let (h, trace) = van_dantzig(&g, &u).unwrap();
        check_trace(&g, &trace).unwrap();
        assert_eq!(trace.f.to_vec(), vec![0, 1, 7]);
        assert_eq!(trace.b, vec![(1, 1), (7, 7)]);
        assert_eq!(trace.v.to_vec(), vec![1, 7]);
        assert_eq!(h.morphisms().to_vec(), vec![0]);
    }
}

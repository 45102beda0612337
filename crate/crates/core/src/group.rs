//! Finite groups given by explicit multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite group stored as a full multiplication table.
///
/// Elements are the indices `0..order()`. Groups built by the constructors in
/// this module always put the identity at index 0; groups read from tables may
/// put it anywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a square multiplication table, checking the group
    /// axioms.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty element set".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::TableLength {
                    table: "mul",
                    found: row.len(),
                    expected: n,
                });
            }
            for (b, c) in row.into_iter().enumerate() {
                if c >= n {
                    return Err(Error::IndexOutOfRange {
                        table: "mul",
                        index: a * n + b,
                        bound: n,
                    });
                }
                table.push(c);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(b);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
        })
    }

    /// Builds a group on `0..n` from a multiplication function, checking the
    /// axioms.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::IndexOutOfRange {
                        table: "mul",
                        index: a * n + b,
                        bound: n,
                    });
                }
                table.push(c);
            }
        }
        Self::from_flat(n, table)
    }

    /// Closes `generators` under `mul` and returns the resulting group together
    /// with the concrete element behind each index. Elements are numbered in
    /// breadth-first order from `identity`, so the identity is index 0.
    pub fn from_generators<T, F>(identity: T, generators: &[T], mul: F) -> (Self, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = mul(&elements[i], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&mul(a, b)]);
            }
        }
        let group = Self::from_flat(n, table).expect("closure of generators is a group");
        (group, elements)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The cyclic group Z/n with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup {
            order: n,
            table,
            identity: 0,
            inverse,
        }
    }

    /// Dihedral group of order `2n`; element `k + n*f` is `r^k s^f`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        Self::from_fn(2 * n, |a, b| {
            let (k1, f1) = (a % n, a / n);
            let (k2, f2) = (b % n, b / n);
            // s r^k = r^{-k} s
            let k = if f1 == 0 { k1 + k2 } else { k1 + n - k2 } % n;
            k + n * (f1 ^ f2)
        })
        .expect("dihedral table")
    }

    /// Dicyclic group of order `4n` (`n >= 2`); `dicyclic(2)` is the
    /// quaternion group. Element `k + 2n*f` is `a^k x^f` with `a` of order
    /// `2n`, `x^2 = a^n` and `x a x^{-1} = a^{-1}`.
    pub fn dicyclic(n: usize) -> Self {
        assert!(n >= 2);
        let m = 2 * n;
        Self::from_fn(2 * m, |a, b| {
            let (k1, f1) = (a % m, a / m);
            let (k2, f2) = (b % m, b / m);
            match (f1, f2) {
                (0, _) => (k1 + k2) % m + m * f2,
                (_, 0) => (k1 + m - k2) % m + m,
                _ => (k1 + m - k2 + n) % m,
            }
        })
        .expect("dicyclic table")
    }

    pub fn quaternion() -> Self {
        Self::dicyclic(2)
    }

    /// Symmetric group on `n` points. Elements are numbered by the
    /// lexicographic rank of their image vectors (identity first), and the
    /// product `ab` applies `a` first, then `b`.
    pub fn symmetric(n: usize) -> Self {
        Self::symmetric_with_permutations(n).0
    }

    /// Like [`FiniteGroup::symmetric`], also returning the permutation behind
    /// each element index.
    pub fn symmetric_with_permutations(n: usize) -> (Self, Vec<Vec<usize>>) {
        let perms = lexicographic_permutations(n);
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let group = Self::from_fn(perms.len(), |a, b| {
            let composed: Vec<usize> = perms[a].iter().map(|&i| perms[b][i]).collect();
            index[composed.as_slice()]
        })
        .expect("symmetric group table");
        (group, perms)
    }

    /// Alternating group on `n` points, as the even permutations in
    /// lexicographic order.
    pub fn alternating(n: usize) -> Self {
        let perms: Vec<Vec<usize>> = lexicographic_permutations(n)
            .into_iter()
            .filter(|p| is_even(p))
            .collect();
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        Self::from_fn(perms.len(), |a, b| {
            let composed: Vec<usize> = perms[a].iter().map(|&i| perms[b][i]).collect();
            index[composed.as_slice()]
        })
        .expect("alternating group table")
    }

    /// Direct product; element `(a, b)` has index `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.order;
        let n = self.order * m;
        let table = (0..n)
            .flat_map(|x| {
                (0..n).map(move |y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
            })
            .collect();
        let inverse = (0..n)
            .map(|x| self.inv(x / m) * m + other.inv(x % m))
            .collect();
        FiniteGroup {
            order: n,
            table,
            identity: self.identity * m + other.identity,
            inverse,
        }
    }

    /// `G/N` for a normal subgroup `N`, with the projection. Cosets are
    /// numbered by their least member.
    pub fn quotient(&self, normal: &[usize]) -> Result<(Self, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::InvalidGroup("quotient by a subset that is not a normal subgroup".into()));
        }
        let mut label = vec![usize::MAX; self.order];
        let mut representatives = Vec::new();
        for a in 0..self.order {
            if label[a] == usize::MAX {
                for &n in normal {
                    label[self.mul(a, n)] = representatives.len();
                }
                representatives.push(a);
            }
        }
        let q = Self::from_fn(representatives.len(), |x, y| {
            label[self.mul(representatives[x], representatives[y])]
        })?;
        Ok((q, label))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Rows of the multiplication table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut elements = vec![self.identity];
        let mut i = 0;
        while i < elements.len() {
            let a = elements[i];
            for &g in gens {
                let b = self.mul(a, g);
                if !member[b] {
                    member[b] = true;
                    elements.push(b);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        elements
    }

    /// Whether `subset` (any order, no duplicates) is a subgroup.
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &a in subset {
            member[a] = true;
        }
        member[self.identity]
            && subset
                .iter()
                .all(|&a| member[self.inv(a)] && subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Whether the subgroup `subset` is stable under conjugation.
    pub fn is_normal(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &a in subset {
            member[a] = true;
        }
        (0..self.order).all(|g| {
            subset
                .iter()
                .all(|&r| member[self.mul(self.mul(g, r), self.inv(g))])
        })
    }

    /// Every subgroup, as sorted element lists, ordered by size and then
    /// lexicographically. Found by repeatedly joining a known subgroup with a
    /// single new element, starting from the trivial subgroup.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let trivial = vec![self.identity];
        let mut seen = std::collections::HashSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        let mut out = Vec::new();
        while let Some(h) = queue.pop_front() {
            let mut member = vec![false; self.order];
            for &a in &h {
                member[a] = true;
            }
            for g in 0..self.order {
                if member[g] {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.subgroup_generated(&gens);
                if seen.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
            out.push(h);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Whether `map` (indexed by the elements of `self`) is a homomorphism
    /// into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&x| x < target.order)
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }

    /// Finds an isomorphism `self -> other` by exhaustive search.
    ///
    /// The search fixes a generating set of `self`, tries every assignment of
    /// images with matching element orders, and extends each assignment along
    /// the Cayley graph, abandoning it at the first inconsistency.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order
            || self.order_profile() != other.order_profile()
            || self.is_abelian() != other.is_abelian()
            || self.center().len() != other.center().len()
        {
            return None;
        }
        let gens = self.greedy_generators();
        let mut by_order: HashMap<usize, Vec<usize>> = HashMap::new();
        for b in 0..other.order {
            by_order.entry(other.element_order(b)).or_default().push(b);
        }
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                by_order
                    .get(&self.element_order(g))
                    .cloned()
                    .unwrap_or_default()
            })
            .collect();
        let mut images = Vec::with_capacity(gens.len());
        self.search_images(other, &gens, &candidates, &mut images)
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }

    fn search_images(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let depth = images.len();
        if depth == gens.len() {
            let map = self.extend_map(other, gens, images)?;
            let mut hit = vec![false; other.order];
            for &b in &map {
                if std::mem::replace(&mut hit[b], true) {
                    return None;
                }
            }
            return Some(map);
        }
        for &h in &candidates[depth] {
            images.push(h);
            // prune: the partial assignment must already be a well-defined
            // injective map on the subgroup it generates
            let ok = self.extend_map(other, &gens[..=depth], images).is_some();
            if ok {
                if let Some(found) = self.search_images(other, gens, candidates, images) {
                    return Some(found);
                }
            }
            images.pop();
        }
        None
    }

    /// Extends `gens[i] -> images[i]` to the subgroup generated by `gens`.
    /// Fails if the extension is ill-defined or not injective. The result is
    /// indexed by all elements; elements outside the subgroup map to
    /// `usize::MAX`.
    fn extend_map(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        let mut used = vec![false; other.order];
        map[self.identity] = other.identity;
        used[other.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let next = self.mul(a, g);
                let image = other.mul(map[a], h);
                if map[next] == usize::MAX {
                    if used[image] {
                        return None;
                    }
                    used[image] = true;
                    map[next] = image;
                    queue.push_back(next);
                } else if map[next] != image {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        while span.len() < self.order {
            let g = *by_order
                .iter()
                .find(|&&a| span.binary_search(&a).is_err())
                .expect("some element lies outside a proper subgroup");
            gens.push(g);
            span = self.subgroup_generated(&gens);
        }
        gens
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut profile: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        profile.sort_unstable();
        profile
    }
}

fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_have_expected_orders() {
        assert_eq!(FiniteGroup::cyclic(6).order(), 6);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert_eq!(FiniteGroup::dicyclic(3).order(), 12);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::alternating(4).order(), 12);
    }

    #[test]
    fn quaternion_and_dihedral_are_distinguished() {
        let q8 = FiniteGroup::quaternion();
        let d4 = FiniteGroup::dihedral(4);
        assert!(!q8.is_abelian() && !d4.is_abelian());
        assert!(!q8.is_isomorphic(&d4));
        // a single element of order 2 in Q8
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
    }

    #[test]
    fn isomorphism_search_finds_nontrivial_matches() {
        let z6 = FiniteGroup::cyclic(6);
        let z2z3 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        let iso = z6.find_isomorphism(&z2z3).unwrap();
        assert!(z6.is_homomorphism(&z2z3, &iso));

        assert!(FiniteGroup::symmetric(3).is_isomorphic(&FiniteGroup::dihedral(3)));
        assert!(!FiniteGroup::cyclic(4).is_isomorphic(&FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2))));
        assert!(!FiniteGroup::alternating(4).is_isomorphic(&FiniteGroup::dihedral(6)));
        assert!(!FiniteGroup::cyclic(2).is_isomorphic(&FiniteGroup::cyclic(3)));
    }

    #[test]
    fn subgroup_lattices() {
        assert_eq!(FiniteGroup::cyclic(4).subgroups(), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(FiniteGroup::symmetric(3).subgroups().len(), 6);
        assert_eq!(FiniteGroup::symmetric(4).subgroups().len(), 30);
        let klein = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert_eq!(klein.subgroups().len(), 5);
    }

    #[test]
    fn from_table_rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]),
            Err(Error::IndexOutOfRange { .. })
        ));
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2, FiniteGroup::cyclic(2));
    }

    #[test]
    fn from_generators_closes_permutations() {
        let compose = |a: &Vec<usize>, b: &Vec<usize>| a.iter().map(|&i| b[i]).collect::<Vec<_>>();
        let (group, elements) = FiniteGroup::from_generators(
            vec![0, 1, 2, 3],
            &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]],
            compose,
        );
        assert_eq!(group.order(), 8);
        assert_eq!(elements[0], vec![0, 1, 2, 3]);
        assert!(group.is_isomorphic(&FiniteGroup::dihedral(4)));
    }
}

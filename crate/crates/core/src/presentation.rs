//! Group presentations of groupoid components and Todd–Coxeter coset
//! enumeration.
//!
//! The presentation of the component of `base` has one generator per
//! morphism of the component and the relators
//!
//! * `g y (gy)^-1` for every composable pair,
//! * `1_x` for every object,
//! * `t` for every morphism `t` of a spanning tree rooted at `base`.
//!
//! Without the tree relators the presented group is the fundamental group
//! freely multiplied with one infinite cyclic factor per non-root object, so
//! enumeration only terminates for one-object components.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, MorId, ObjId};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<Letter>>,
}

/// A presentation together with the groupoid morphism behind each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPresentation {
    pub presentation: Presentation,
    pub base: ObjId,
    /// `morphisms[i]` is the morphism named by generator `i`.
    pub morphisms: Vec<MorId>,
    /// Tree morphisms set to the identity, one per non-root object.
    pub tree: Vec<MorId>,
}

impl ComponentPresentation {
    /// The presentation of the component of `base`, including tree relators.
    pub fn new(g: &FiniteGroupoid, base: ObjId) -> Result<Self> {
        Self::build(g, base, true)
    }

    /// The same presentation without the spanning tree relators.
    pub fn universal(g: &FiniteGroupoid, base: ObjId) -> Result<Self> {
        Self::build(g, base, false)
    }

    fn build(g: &FiniteGroupoid, base: ObjId, with_tree: bool) -> Result<Self> {
        g.check_object(base)?;
        let parts = g.pi0();
        let component = parts.component_of[base];
        let morphisms: Vec<MorId> = (0..g.num_morphisms())
            .filter(|&m| parts.component_of[g.src(m)] == component)
            .collect();
        let mut generator = vec![usize::MAX; g.num_morphisms()];
        for (i, &m) in morphisms.iter().enumerate() {
            generator[m] = i;
        }
        let letter = |m: MorId| Letter::new(generator[m]);

        let mut relators: Vec<Vec<Letter>> = Vec::new();
        for &a in &morphisms {
            for &b in g.out_star(g.tgt(a)) {
                relators.push(vec![letter(a), letter(b), letter(g.compose(a, b)).inv()]);
            }
        }
        let objects: Vec<ObjId> = parts.members(component).collect();
        relators.extend(objects.iter().map(|&x| vec![letter(g.unit(x))]));

        // breadth-first spanning tree from the base
        let mut tree = Vec::new();
        let mut reached = vec![false; g.num_objects()];
        reached[base] = true;
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            for &m in g.out_star(x) {
                let y = g.tgt(m);
                if !reached[y] {
                    reached[y] = true;
                    tree.push(m);
                    queue.push_back(y);
                }
            }
        }
        if with_tree {
            relators.extend(tree.iter().map(|&t| vec![letter(t)]));
        }
        Ok(ComponentPresentation {
            presentation: Presentation {
                generators: morphisms.len(),
                relators,
            },
            base,
            morphisms,
            tree,
        })
    }
}

/// Default cap on the number of cosets defined during an enumeration.
pub const DEFAULT_COSET_LIMIT: usize = 1 << 20;

/// A complete coset table of the trivial subgroup: the regular
/// representation of the presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    /// `table[c][2i]` is `c` times generator `i`; `table[c][2i + 1]` is `c`
    /// times its inverse.
    table: Vec<Vec<usize>>,
}

const UNDEFINED: usize = usize::MAX;

impl CosetTable {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.table[coset][letter.column()]
    }

    /// The presented group, with element `c` the coset `c`; coset 0 is the
    /// identity.
    pub fn to_group(&self) -> FiniteGroup {
        // a word reaching each coset from coset 0
        let mut word: Vec<Option<Vec<Letter>>> = vec![None; self.len()];
        word[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for column in 0..2 * self.generators {
                let d = self.table[c][column];
                if word[d].is_none() {
                    let mut w = word[c].clone().unwrap();
                    w.push(Letter {
                        generator: column / 2,
                        inverse: column % 2 == 1,
                    });
                    word[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        let words: Vec<Vec<Letter>> = word.into_iter().map(|w| w.expect("table is connected")).collect();
        FiniteGroup::from_fn(self.len(), |a, b| words[b].iter().fold(a, |c, &l| self.act(c, l)))
            .expect("a complete coset table of the trivial subgroup is a regular representation")
    }
}

/// Hasler–Lyndon–Trotter style enumeration of the cosets of the trivial
/// subgroup, with coincidence processing.
pub fn coset_enumeration(p: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    let mut e = Enumerator {
        columns: 2 * p.generators,
        table: vec![vec![UNDEFINED; 2 * p.generators]],
        parent: vec![0],
        queue: Vec::new(),
        limit: max_cosets,
    };
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| r.iter().map(|l| l.column()).collect())
        .filter(|r: &Vec<usize>| !r.is_empty())
        .collect();
    let mut c = 0;
    while c < e.table.len() {
        for r in &relators {
            if !e.live(c) {
                break;
            }
            e.scan_and_fill(c, r)?;
        }
        if e.live(c) {
            for x in 0..e.columns {
                if e.table[c][x] == UNDEFINED {
                    e.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    Ok(e.compact(p.generators))
}

struct Enumerator {
    columns: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    limit: usize,
}

fn inverse_column(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.limit {
            return Err(Error::CosetLimit { limit: self.limit });
        }
        let n = self.table.len();
        self.table.push(vec![UNDEFINED; self.columns]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][inverse_column(x)] = c;
        Ok(())
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j && self.table[f][w[i]] != UNDEFINED {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][inverse_column(w[j])] != UNDEFINED {
                b = self.table[b][inverse_column(w[j])];
                if j == 0 {
                    // the whole word was traced backwards
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.table[f][w[i]] = b;
                self.table[b][inverse_column(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut k = c;
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            self.queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut next = 0;
        while next < self.queue.len() {
            let dead = self.queue[next];
            next += 1;
            for x in 0..self.columns {
                let d = self.table[dead][x];
                if d == UNDEFINED {
                    continue;
                }
                if self.table[d][inverse_column(x)] == dead {
                    self.table[d][inverse_column(x)] = UNDEFINED;
                }
                let (mu, nu) = (self.rep(dead), self.rep(d));
                if self.table[mu][x] != UNDEFINED {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][inverse_column(x)] != UNDEFINED {
                    let t = self.table[nu][inverse_column(x)];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inverse_column(x)] = mu;
                }
            }
        }
    }

    fn compact(mut self, generators: usize) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.parent[c] == c).collect();
        let mut index = vec![UNDEFINED; self.table.len()];
        for (i, &c) in live.iter().enumerate() {
            index[c] = i;
        }
        let table = live
            .iter()
            .map(|&c| {
                (0..self.columns)
                    .map(|x| {
                        let d = self.table[c][x];
                        index[self.rep(d)]
                    })
                    .collect()
            })
            .collect();
        CosetTable { generators, table }
    }
}

/// The fundamental group at `base`, computed from the component's
/// presentation by coset enumeration.
pub fn fundamental_group(g: &FiniteGroupoid, base: ObjId, max_cosets: usize) -> Result<FiniteGroup> {
    let p = ComponentPresentation::new(g, base)?;
    Ok(coset_enumeration(&p.presentation, max_cosets)?.to_group())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(raw: &[&[i32]]) -> Vec<Vec<Letter>> {
        raw.iter()
            .map(|w| {
                w.iter()
                    .map(|&k| Letter {
                        generator: k.unsigned_abs() as usize - 1,
                        inverse: k < 0,
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn cyclic_presentation() {
        let p = Presentation {
            generators: 1,
            relators: words(&[&[1, 1, 1, 1, 1]]),
        };
        let g = coset_enumeration(&p, 100).unwrap().to_group();
        assert!(g.is_isomorphic(&FiniteGroup::cyclic(5)));
    }

    #[test]
    fn s3_from_coxeter_relations() {
        // a^2 = b^2 = (ab)^3 = 1
        let p = Presentation {
            generators: 2,
            relators: words(&[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]),
        };
        let g = coset_enumeration(&p, 1000).unwrap().to_group();
        assert!(g.is_isomorphic(&FiniteGroup::symmetric(3)));
    }

    #[test]
    fn quaternion_needs_coincidences() {
        // a^4 = 1, a^2 = b^2, b^-1 a b = a^-1
        let p = Presentation {
            generators: 2,
            relators: words(&[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]),
        };
        let g = coset_enumeration(&p, 1000).unwrap().to_group();
        assert!(g.is_isomorphic(&FiniteGroup::quaternion()));
    }

    #[test]
    fn infinite_group_hits_the_limit() {
        let p = Presentation {
            generators: 1,
            relators: Vec::new(),
        };
        assert_eq!(coset_enumeration(&p, 50), Err(Error::CosetLimit { limit: 50 }));
    }

    #[test]
    fn fundamental_group_of_a_product() {
        let g = FiniteGroupoid::pair(3).product(&FiniteGroupoid::from_group(&FiniteGroup::symmetric(3)));
        let pi1 = fundamental_group(&g, 2, DEFAULT_COSET_LIMIT).unwrap();
        assert!(pi1.is_isomorphic(&g.isotropy(2).unwrap()));
    }

    #[test]
    fn fundamental_group_ignores_other_components() {
        let z = |n| FiniteGroupoid::from_group(&FiniteGroup::cyclic(n));
        let g = FiniteGroupoid::disjoint_union(&[&z(4), &z(6)]);
        assert_eq!(fundamental_group(&g, 1, 1000).unwrap().order(), 6);
    }

    #[test]
    fn universal_presentation_is_infinite_with_two_objects() {
        let p = ComponentPresentation::universal(&FiniteGroupoid::pair(2), 0).unwrap();
        assert_eq!(p.tree, vec![1]);
        assert!(matches!(coset_enumeration(&p.presentation, 500), Err(Error::CosetLimit { .. })));
        // the tree relator makes it trivial
        let p = ComponentPresentation::new(&FiniteGroupoid::pair(2), 0).unwrap();
        assert_eq!(coset_enumeration(&p.presentation, 500).unwrap().len(), 1);
    }
}

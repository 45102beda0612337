//! Finite groupoids: storage, validation, standard constructions and the
//! homotopy invariants (components and isotropy groups).
//!
//! Composition is written in diagrammatic order: `comp(g, y)` is defined when
//! `tgt(g) == src(y)` and then runs from `src(g)` to `tgt(y)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub type ObjId = usize;
pub type MorId = usize;

/// Raw structure tables of a groupoid, as read from or written to a file.
///
/// Nothing is assumed about these tables; [`validate_groupoid`] checks them
/// and [`FiniteGroupoid::new`] turns them into a groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupoidTables {
    pub objects: usize,
    pub src: Vec<ObjId>,
    pub tgt: Vec<ObjId>,
    pub unit: Vec<MorId>,
    pub inv: Vec<MorId>,
    /// Triples `(g, y, gy)`.
    pub comp: Vec<(MorId, MorId, MorId)>,
}

/// A single violated groupoid axiom with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    UnitEndpoints { object: ObjId, unit: MorId },
    NotComposable { g: MorId, y: MorId },
    DuplicateComposite { g: MorId, y: MorId },
    MissingComposite { g: MorId, y: MorId },
    CompositeEndpoints { g: MorId, y: MorId, gy: MorId },
    LeftUnit { g: MorId },
    RightUnit { g: MorId },
    InverseEndpoints { g: MorId },
    LeftInverse { g: MorId },
    RightInverse { g: MorId },
    Associativity { g: MorId, h: MorId, k: MorId },
}

impl Violation {
    /// Short machine-friendly name of the violated axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::UnitEndpoints { .. } => "unit-endpoints",
            Violation::NotComposable { .. } => "composability",
            Violation::DuplicateComposite { .. } => "duplicate-composite",
            Violation::MissingComposite { .. } => "missing-composite",
            Violation::CompositeEndpoints { .. } => "composite-endpoints",
            Violation::LeftUnit { .. } => "left-unit",
            Violation::RightUnit { .. } => "right-unit",
            Violation::InverseEndpoints { .. } => "inverse-endpoints",
            Violation::LeftInverse { .. } => "left-inverse",
            Violation::RightInverse { .. } => "right-inverse",
            Violation::Associativity { .. } => "associativity",
        }
    }

    /// The witness tuple, in the order the variant names its fields.
    pub fn witness(&self) -> Vec<usize> {
        match *self {
            Violation::UnitEndpoints { object, unit } => vec![object, unit],
            Violation::NotComposable { g, y }
            | Violation::DuplicateComposite { g, y }
            | Violation::MissingComposite { g, y } => vec![g, y],
            Violation::CompositeEndpoints { g, y, gy } => vec![g, y, gy],
            Violation::LeftUnit { g }
            | Violation::RightUnit { g }
            | Violation::InverseEndpoints { g }
            | Violation::LeftInverse { g }
            | Violation::RightInverse { g } => vec![g],
            Violation::Associativity { g, h, k } => vec![g, h, k],
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.axiom(), self.witness())
    }
}

/// Every axiom violation found in a set of tables; empty iff valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_len(table: &'static str, found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::TableLength {
            table,
            found,
            expected,
        });
    }
    Ok(())
}

fn check_range(table: &'static str, values: impl IntoIterator<Item = usize>, bound: usize) -> Result<()> {
    for (index, v) in values.into_iter().enumerate() {
        if v >= bound {
            return Err(Error::IndexOutOfRange { table, index, bound });
        }
    }
    Ok(())
}

/// Checks raw tables against the groupoid axioms.
///
/// Out-of-range indices and mismatched table lengths are structural errors;
/// everything else is reported as a [`Violation`] with a witness.
pub fn validate_groupoid(t: &GroupoidTables) -> Result<ValidationReport> {
    let m = t.src.len();
    check_len("tgt", t.tgt.len(), m)?;
    check_len("inv", t.inv.len(), m)?;
    check_len("unit", t.unit.len(), t.objects)?;
    check_range("src", t.src.iter().copied(), t.objects)?;
    check_range("tgt", t.tgt.iter().copied(), t.objects)?;
    check_range("unit", t.unit.iter().copied(), m)?;
    check_range("inv", t.inv.iter().copied(), m)?;
    check_range("comp", t.comp.iter().flat_map(|&(a, b, c)| [a, b, c]), m)?;

    let mut violations = Vec::new();
    for (x, &u) in t.unit.iter().enumerate() {
        if t.src[u] != x || t.tgt[u] != x {
            violations.push(Violation::UnitEndpoints { object: x, unit: u });
        }
    }

    let mut comp: HashMap<(MorId, MorId), MorId> = HashMap::with_capacity(t.comp.len());
    for &(g, y, gy) in &t.comp {
        if t.tgt[g] != t.src[y] {
            violations.push(Violation::NotComposable { g, y });
            continue;
        }
        if comp.insert((g, y), gy).is_some() {
            violations.push(Violation::DuplicateComposite { g, y });
            continue;
        }
        if t.src[gy] != t.src[g] || t.tgt[gy] != t.tgt[y] {
            violations.push(Violation::CompositeEndpoints { g, y, gy });
        }
    }

    let mut out_star: Vec<Vec<MorId>> = vec![Vec::new(); t.objects];
    for g in 0..m {
        out_star[t.src[g]].push(g);
    }
    for g in 0..m {
        for &y in &out_star[t.tgt[g]] {
            if !comp.contains_key(&(g, y)) {
                violations.push(Violation::MissingComposite { g, y });
            }
        }
    }

    let lookup = |g: MorId, y: MorId| comp.get(&(g, y)).copied();
    for g in 0..m {
        if lookup(t.unit[t.src[g]], g) != Some(g) {
            violations.push(Violation::LeftUnit { g });
        }
        if lookup(g, t.unit[t.tgt[g]]) != Some(g) {
            violations.push(Violation::RightUnit { g });
        }
        let i = t.inv[g];
        if t.src[i] != t.tgt[g] || t.tgt[i] != t.src[g] {
            violations.push(Violation::InverseEndpoints { g });
            continue;
        }
        if lookup(g, i) != Some(t.unit[t.src[g]]) {
            violations.push(Violation::LeftInverse { g });
        }
        if lookup(i, g) != Some(t.unit[t.tgt[g]]) {
            violations.push(Violation::RightInverse { g });
        }
    }

    for g in 0..m {
        for &h in &out_star[t.tgt[g]] {
            let Some(gh) = lookup(g, h) else { continue };
            for &k in &out_star[t.tgt[h]] {
                let (Some(hk), true) = (lookup(h, k), t.tgt[gh] == t.src[k]) else {
                    continue;
                };
                let left = lookup(gh, k);
                let right = if t.tgt[g] == t.src[hk] { lookup(g, hk) } else { None };
                if left.is_none() || left != right {
                    violations.push(Violation::Associativity { g, h, k });
                }
            }
        }
    }

    Ok(ValidationReport { violations })
}

/// Connected components of a groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Component index of each object.
    pub component_of: Vec<usize>,
    /// Least object index in each component; components are numbered in
    /// increasing order of their representative.
    pub representatives: Vec<ObjId>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn members(&self, component: usize) -> impl Iterator<Item = ObjId> + '_ {
        self.component_of
            .iter()
            .enumerate()
            .filter(move |&(_, &c)| c == component)
            .map(|(x, _)| x)
    }
}

/// A validated finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    unit: Vec<MorId>,
    inv: Vec<MorId>,
    /// Morphisms with a given source, ascending.
    out_star: Vec<Vec<MorId>>,
    /// Position of each morphism inside the out-star of its source.
    star_pos: Vec<usize>,
    /// `comp[g][star_pos[y]]` is the composite `gy`.
    comp: Vec<Vec<MorId>>,
}

/// A sub-groupoid carved out of a parent, with the embedding maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub groupoid: FiniteGroupoid,
    /// Parent index of each object of `groupoid`.
    pub objects: Vec<ObjId>,
    /// Parent index of each morphism of `groupoid`.
    pub morphisms: Vec<MorId>,
}

impl FiniteGroupoid {
    /// Validates the tables and builds the groupoid.
    pub fn new(tables: &GroupoidTables) -> Result<Self> {
        let report = validate_groupoid(tables)?;
        if !report.is_valid() {
            return Err(Error::InvalidGroupoid(report));
        }
        let lookup: HashMap<(MorId, MorId), MorId> =
            tables.comp.iter().map(|&(g, y, gy)| ((g, y), gy)).collect();
        Ok(Self::from_composition(
            tables.objects,
            tables.src.clone(),
            tables.tgt.clone(),
            tables.unit.clone(),
            tables.inv.clone(),
            |g, y| lookup[&(g, y)],
        ))
    }

    /// Builds a groupoid whose axioms are known to hold by construction.
    pub(crate) fn from_composition(
        objects: usize,
        src: Vec<ObjId>,
        tgt: Vec<ObjId>,
        unit: Vec<MorId>,
        inv: Vec<MorId>,
        compose: impl Fn(MorId, MorId) -> MorId,
    ) -> Self {
        let m = src.len();
        let mut out_star = vec![Vec::new(); objects];
        let mut star_pos = vec![0; m];
        for g in 0..m {
            star_pos[g] = out_star[src[g]].len();
            out_star[src[g]].push(g);
        }
        let comp = (0..m)
            .map(|g| out_star[tgt[g]].iter().map(|&y| compose(g, y)).collect())
            .collect();
        FiniteGroupoid {
            src,
            tgt,
            unit,
            inv,
            out_star,
            star_pos,
            comp,
        }
    }

    /// The structure tables, with composition triples in ascending `(g, y)`
    /// order.
    pub fn to_tables(&self) -> GroupoidTables {
        let mut comp = Vec::new();
        for g in 0..self.num_morphisms() {
            for (i, &y) in self.out_star[self.tgt[g]].iter().enumerate() {
                comp.push((g, y, self.comp[g][i]));
            }
        }
        GroupoidTables {
            objects: self.num_objects(),
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            unit: self.unit.clone(),
            inv: self.inv.clone(),
            comp,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.unit.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, g: MorId) -> ObjId {
        self.src[g]
    }

    pub fn tgt(&self, g: MorId) -> ObjId {
        self.tgt[g]
    }

    pub fn unit(&self, x: ObjId) -> MorId {
        self.unit[x]
    }

    pub fn inv(&self, g: MorId) -> MorId {
        self.inv[g]
    }

    pub fn is_unit(&self, g: MorId) -> bool {
        self.unit[self.src[g]] == g
    }

    /// The composite `gy`, if `tgt(g) == src(y)`.
    pub fn comp(&self, g: MorId, y: MorId) -> Option<MorId> {
        (self.tgt[g] == self.src[y]).then(|| self.comp[g][self.star_pos[y]])
    }

    /// Composite of a composable pair. Panics otherwise.
    pub fn compose(&self, g: MorId, y: MorId) -> MorId {
        self.comp(g, y)
            .unwrap_or_else(|| panic!("morphisms {g} and {y} are not composable"))
    }

    /// Morphisms with source `x`, ascending.
    pub fn out_star(&self, x: ObjId) -> &[MorId] {
        &self.out_star[x]
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.out_star[x].iter().copied().filter(move |&g| self.tgt[g] == y)
    }

    /// Loops at `x`, ascending. Element `i` of [`FiniteGroupoid::isotropy`]
    /// is `loops(x)[i]`.
    pub fn loops(&self, x: ObjId) -> Vec<MorId> {
        self.hom(x, x).collect()
    }

    /// Composable pairs `(g, y)`, in ascending order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        (0..self.num_morphisms())
            .flat_map(move |g| self.out_star[self.tgt[g]].iter().map(move |&y| (g, y)))
    }

    pub fn check_object(&self, x: ObjId) -> Result<()> {
        if x >= self.num_objects() {
            return Err(Error::InvalidObject {
                object: x,
                count: self.num_objects(),
            });
        }
        Ok(())
    }

    /// Connected components, as the transitive closure of `src(g) ~ tgt(g)`.
    pub fn pi0(&self) -> ComponentPartition {
        let n = self.num_objects();
        let mut component_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(start);
            component_of[start] = c;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &g in &self.out_star[x] {
                    let y = self.tgt[g];
                    if component_of[y] == usize::MAX {
                        component_of[y] = c;
                        stack.push(y);
                    }
                }
            }
        }
        ComponentPartition {
            component_of,
            representatives,
        }
    }

    /// The isotropy group at `x`, with elements indexed as in
    /// [`FiniteGroupoid::loops`].
    pub fn isotropy(&self, x: ObjId) -> Result<FiniteGroup> {
        self.check_object(x)?;
        let loops = self.loops(x);
        let position: HashMap<MorId, usize> =
            loops.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        FiniteGroup::from_fn(loops.len(), |a, b| position[&self.compose(loops[a], loops[b])])
    }

    /// A morphism between distinct objects, if there is one.
    pub fn non_loop(&self) -> Option<MorId> {
        (0..self.num_morphisms()).find(|&g| self.src[g] != self.tgt[g])
    }

    pub fn is_skeletal(&self) -> bool {
        self.non_loop().is_none()
    }

    pub(crate) fn require_skeletal(&self) -> Result<()> {
        match self.non_loop() {
            Some(witness) => Err(Error::NotSkeletal { witness }),
            None => Ok(()),
        }
    }

    /// The sub-groupoid on the objects in `objects` and the morphisms in
    /// `morphisms`. The caller guarantees these form a subgroupoid: every
    /// morphism has endpoints in `objects`, and the set contains the units of
    /// `objects` and is closed under composition and inversion.
    pub(crate) fn restrict_unchecked(&self, objects: &[ObjId], morphisms: &[MorId]) -> Restriction {
        let mut obj_index = vec![usize::MAX; self.num_objects()];
        for (i, &x) in objects.iter().enumerate() {
            obj_index[x] = i;
        }
        let mut mor_index = vec![usize::MAX; self.num_morphisms()];
        for (i, &g) in morphisms.iter().enumerate() {
            mor_index[g] = i;
        }
        let groupoid = FiniteGroupoid::from_composition(
            objects.len(),
            morphisms.iter().map(|&g| obj_index[self.src[g]]).collect(),
            morphisms.iter().map(|&g| obj_index[self.tgt[g]]).collect(),
            objects.iter().map(|&x| mor_index[self.unit[x]]).collect(),
            morphisms.iter().map(|&g| mor_index[self.inv[g]]).collect(),
            |a, b| mor_index[self.compose(morphisms[a], morphisms[b])],
        );
        Restriction {
            groupoid,
            objects: objects.to_vec(),
            morphisms: morphisms.to_vec(),
        }
    }

    /// The full subgroupoid on a set of objects (given in any order; the
    /// result lists them ascending).
    pub fn full_subgroupoid(&self, objects: &[ObjId]) -> Result<Restriction> {
        let mut objects = objects.to_vec();
        objects.sort_unstable();
        objects.dedup();
        for &x in &objects {
            self.check_object(x)?;
        }
        let mut keep = vec![false; self.num_objects()];
        for &x in &objects {
            keep[x] = true;
        }
        let morphisms: Vec<MorId> = (0..self.num_morphisms())
            .filter(|&g| keep[self.src[g]] && keep[self.tgt[g]])
            .collect();
        Ok(self.restrict_unchecked(&objects, &morphisms))
    }

    /// Renumbers objects and morphisms: object `x` becomes `object_perm[x]`
    /// and morphism `g` becomes `morphism_perm[g]`.
    pub fn relabel(&self, object_perm: &[ObjId], morphism_perm: &[MorId]) -> Result<Self> {
        check_permutation("object permutation", object_perm)?;
        check_permutation("morphism permutation", morphism_perm)?;
        check_len("object permutation", object_perm.len(), self.num_objects())?;
        check_len("morphism permutation", morphism_perm.len(), self.num_morphisms())?;
        let m = self.num_morphisms();
        let mut back = vec![0; m];
        for (g, &h) in morphism_perm.iter().enumerate() {
            back[h] = g;
        }
        let mut unit = vec![0; self.num_objects()];
        for (x, &u) in self.unit.iter().enumerate() {
            unit[object_perm[x]] = morphism_perm[u];
        }
        Ok(FiniteGroupoid::from_composition(
            self.num_objects(),
            (0..m).map(|h| object_perm[self.src[back[h]]]).collect(),
            (0..m).map(|h| object_perm[self.tgt[back[h]]]).collect(),
            unit,
            (0..m).map(|h| morphism_perm[self.inv[back[h]]]).collect(),
            |a, b| morphism_perm[self.compose(back[a], back[b])],
        ))
    }

    /// The one-object groupoid `BG` with morphisms the elements of `group`.
    pub fn from_group(group: &FiniteGroup) -> Self {
        let n = group.order();
        FiniteGroupoid::from_composition(
            1,
            vec![0; n],
            vec![0; n],
            vec![group.identity()],
            (0..n).map(|a| group.inv(a)).collect(),
            |a, b| group.mul(a, b),
        )
    }

    /// `n` objects and nothing but their units.
    pub fn discrete(n: usize) -> Self {
        FiniteGroupoid::from_composition(
            n,
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            |a, _| a,
        )
    }

    /// The pair (indiscrete) groupoid on `n` objects: exactly one morphism
    /// `i -> j`, with index `i * n + j`.
    pub fn pair(n: usize) -> Self {
        FiniteGroupoid::from_composition(
            n,
            (0..n * n).map(|g| g / n).collect(),
            (0..n * n).map(|g| g % n).collect(),
            (0..n).map(|x| x * n + x).collect(),
            (0..n * n).map(|g| (g % n) * n + g / n).collect(),
            |a, b| (a / n) * n + b % n,
        )
    }

    /// Action groupoid of a left action of `group` on `0..points`.
    ///
    /// The morphism `(g, x) : x -> g.x` has index `g * points + x`, and
    /// `(g, x)` followed by `(h, g.x)` is `(hg, x)`.
    pub fn action(group: &FiniteGroup, points: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = group.order();
        let mut table = vec![0; n * points];
        for g in 0..n {
            for x in 0..points {
                let y = act(g, x);
                if y >= points {
                    return Err(Error::IndexOutOfRange {
                        table: "action",
                        index: g * points + x,
                        bound: points,
                    });
                }
                table[g * points + x] = y;
            }
        }
        let acts = |g: usize, x: usize| table[g * points + x];
        for x in 0..points {
            if acts(group.identity(), x) != x {
                return Err(Error::InvalidParameter {
                    field: "action",
                    reason: format!("identity moves point {x}"),
                });
            }
            for g in 0..n {
                for h in 0..n {
                    if acts(group.mul(h, g), x) != acts(h, acts(g, x)) {
                        return Err(Error::InvalidParameter {
                            field: "action",
                            reason: format!("not a left action at ({h}, {g}, {x})"),
                        });
                    }
                }
            }
        }
        let m = n * points;
        Ok(FiniteGroupoid::from_composition(
            points,
            (0..m).map(|i| i % points).collect(),
            (0..m).map(|i| acts(i / points, i % points)).collect(),
            (0..points).map(|x| group.identity() * points + x).collect(),
            (0..m)
                .map(|i| {
                    let (g, x) = (i / points, i % points);
                    group.inv(g) * points + acts(g, x)
                })
                .collect(),
            |a, b| group.mul(b / points, a / points) * points + a % points,
        ))
    }

    /// Disjoint union; objects and morphisms of later parts are shifted past
    /// those of earlier parts.
    pub fn disjoint_union(parts: &[&FiniteGroupoid]) -> Self {
        let mut obj_offset = Vec::with_capacity(parts.len());
        let mut mor_offset = Vec::with_capacity(parts.len());
        let (mut o, mut m) = (0, 0);
        for p in parts {
            obj_offset.push(o);
            mor_offset.push(m);
            o += p.num_objects();
            m += p.num_morphisms();
        }
        let mut owner = Vec::with_capacity(m);
        let (mut src, mut tgt, mut unit, mut inv) = (vec![], vec![], vec![], vec![]);
        for (i, p) in parts.iter().enumerate() {
            for g in 0..p.num_morphisms() {
                owner.push(i);
                src.push(p.src(g) + obj_offset[i]);
                tgt.push(p.tgt(g) + obj_offset[i]);
                inv.push(p.inv(g) + mor_offset[i]);
            }
            unit.extend((0..p.num_objects()).map(|x| p.unit(x) + mor_offset[i]));
        }
        FiniteGroupoid::from_composition(o, src, tgt, unit, inv, |a, b| {
            let i = owner[a];
            parts[i].compose(a - mor_offset[i], b - mor_offset[i]) + mor_offset[i]
        })
    }

    /// Product groupoid; object `(x, x')` has index `x * other.num_objects() + x'`
    /// and morphism `(g, g')` has index `g * other.num_morphisms() + g'`.
    pub fn product(&self, other: &FiniteGroupoid) -> Self {
        let (no, mo) = (other.num_objects(), other.num_morphisms());
        let m = self.num_morphisms() * mo;
        FiniteGroupoid::from_composition(
            self.num_objects() * no,
            (0..m).map(|g| self.src(g / mo) * no + other.src(g % mo)).collect(),
            (0..m).map(|g| self.tgt(g / mo) * no + other.tgt(g % mo)).collect(),
            (0..self.num_objects() * no)
                .map(|x| self.unit(x / no) * mo + other.unit(x % no))
                .collect(),
            (0..m).map(|g| self.inv(g / mo) * mo + other.inv(g % mo)).collect(),
            |a, b| self.compose(a / mo, b / mo) * mo + other.compose(a % mo, b % mo),
        )
    }
}

fn check_permutation(table: &'static str, perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for (index, &p) in perm.iter().enumerate() {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::IndexOutOfRange {
                table,
                index,
                bound: perm.len(),
            });
        }
    }
    Ok(())
}

/// Validates tables; a thin convenience over [`validate_groupoid`] for
/// already-built groupoids, used to check that constructions round-trip.
pub fn revalidate(g: &FiniteGroupoid) -> ValidationReport {
    validate_groupoid(&g.to_tables()).expect("tables of a groupoid are index-consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bz(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(n))
    }

    #[test]
    fn one_object_z2_validates() {
        assert!(revalidate(&bz(2)).is_valid());
    }

    #[test]
    fn pair_groupoid_validates() {
        let p = FiniteGroupoid::pair(2);
        assert_eq!(p.num_morphisms(), 4);
        assert!(revalidate(&p).is_valid());
    }

    #[test]
    fn composability_violation_has_witness() {
        let mut t = FiniteGroupoid::pair(2).to_tables();
        // morphism 1 is 0 -> 1, so (1, 1) is not composable
        t.comp.push((1, 1, 1));
        let report = validate_groupoid(&t).unwrap();
        assert!(report
            .violations
            .contains(&Violation::NotComposable { g: 1, y: 1 }));
    }

    #[test]
    fn out_of_range_index_is_structural() {
        let mut t = bz(2).to_tables();
        t.inv[1] = 7;
        assert_eq!(
            validate_groupoid(&t),
            Err(Error::IndexOutOfRange {
                table: "inv",
                index: 1,
                bound: 2
            })
        );
    }

    #[test]
    fn broken_tables_report_each_axiom() {
        let mut t = bz(3).to_tables();
        // drop a composite and corrupt an inverse
        t.comp.retain(|&(g, y, _)| (g, y) != (1, 1));
        t.inv[1] = 1;
        let report = validate_groupoid(&t).unwrap();
        let axioms: Vec<_> = report.violations.iter().map(Violation::axiom).collect();
        assert!(axioms.contains(&"missing-composite"));
        assert!(axioms.contains(&"left-inverse"));
        assert!(FiniteGroupoid::new(&t).is_err());
    }

    #[test]
    fn associativity_failure_detected() {
        // Z/3 table with a single corrupted product: 1*2 = 1 instead of 0
        let mut t = bz(3).to_tables();
        for triple in &mut t.comp {
            if (triple.0, triple.1) == (1, 2) {
                triple.2 = 1;
            }
        }
        let report = validate_groupoid(&t).unwrap();
        assert!(report.violations.iter().any(|v| v.axiom() == "associativity"));
    }

    #[test]
    fn tables_round_trip() {
        let g = FiniteGroupoid::action(&FiniteGroup::cyclic(4), 2, |g, x| (g + x) % 2).unwrap();
        assert_eq!(FiniteGroupoid::new(&g.to_tables()).unwrap(), g);
    }

    #[test]
    fn pi0_examples() {
        let p = FiniteGroupoid::pair(2).pi0();
        assert_eq!(p.count(), 1);
        assert_eq!(p.representatives, vec![0]);

        let two = FiniteGroupoid::disjoint_union(&[&bz(2), &bz(3)]).pi0();
        assert_eq!(two.count(), 2);
        assert_eq!(two.component_of, vec![0, 1]);
    }

    #[test]
    fn pi0_of_swap_action_matches_orbit_closure() {
        let g = FiniteGroupoid::action(&FiniteGroup::cyclic(2), 2, |g, x| (g + x) % 2).unwrap();
        // orbit of 0 under Z/2 by brute force
        let x = 0;
        let orbit: std::collections::BTreeSet<usize> = (0..2).map(|g| (g + x) % 2).collect();
        assert_eq!(orbit.len(), 2);
        assert_eq!(g.pi0().count(), 1);
    }

    #[test]
    fn isotropy_examples() {
        let pair = FiniteGroupoid::pair(3);
        for x in 0..3 {
            assert_eq!(pair.isotropy(x).unwrap().order(), 1);
        }
        let z4 = bz(4).isotropy(0).unwrap();
        assert!(z4.is_isomorphic(&FiniteGroup::cyclic(4)));

        // Z/4 acting on Z/2 through reduction: the stabilizer of 0 is {0, 2}
        let z4 = FiniteGroup::cyclic(4);
        let act = FiniteGroupoid::action(&z4, 2, |g, x| (g + x) % 2).unwrap();
        let x = 0;
        let stabilizer: Vec<usize> = (0..4).filter(|&g| (g + x) % 2 == x).collect();
        assert_eq!(stabilizer, vec![0, 2]);
        let loops: Vec<usize> = act.loops(0).iter().map(|&m| m / 2).collect();
        assert_eq!(loops, stabilizer);
        assert!(act.isotropy(0).unwrap().is_isomorphic(&FiniteGroup::cyclic(2)));

        assert_eq!(
            bz(2).isotropy(3),
            Err(Error::InvalidObject { object: 3, count: 1 })
        );
    }

    #[test]
    fn skeletal_examples() {
        assert!(!FiniteGroupoid::pair(2).is_skeletal());
        assert!(FiniteGroupoid::disjoint_union(&[&bz(2), &bz(5)]).is_skeletal());
    }

    #[test]
    fn constructions_validate() {
        let s3 = FiniteGroup::symmetric(3);
        let parts = [
            FiniteGroupoid::from_group(&s3),
            FiniteGroupoid::pair(3),
            FiniteGroupoid::discrete(2),
            bz(4).product(&FiniteGroupoid::pair(2)),
        ];
        for p in &parts {
            assert!(revalidate(p).is_valid());
        }
        let refs: Vec<&FiniteGroupoid> = parts.iter().collect();
        assert!(revalidate(&FiniteGroupoid::disjoint_union(&refs)).is_valid());
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = bz(2).product(&FiniteGroupoid::pair(2));
        let relabeled = g.relabel(&[1, 0], &[7, 6, 5, 4, 3, 2, 1, 0]).unwrap();
        assert!(revalidate(&relabeled).is_valid());
        assert_eq!(relabeled.pi0().count(), 1);
        assert!(relabeled.isotropy(0).unwrap().is_isomorphic(&FiniteGroup::cyclic(2)));
    }
}

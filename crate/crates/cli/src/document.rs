//! The JSON interchange format.
//!
//! Every document is an object with a `kind` tag and `"version": 1`.
//! Indices are 0-based; composition is stored sparsely as `[g, y, gy]`
//! triples in ascending `(g, y)` order.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use stone_groupoid::constructions::{MorphismSet, VanDantzigTrace, WideSubgroupoid};
use stone_groupoid::realization::{AnimaPresentation, OneTypeMap, PiFiniteOneType};
use stone_groupoid::{FiniteGroup, FiniteGroupoid, FunctorMaps, GroupoidTables, GroupoidTower};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Groupoid(GroupoidDocument),
    Tower(TowerDocument),
    Functor(FunctorDocument),
    Group(GroupDocument),
    Subset(SubsetDocument),
    Basis(BasisDocument),
    Partition(PartitionDocument),
    Threads(ThreadsDocument),
    Family(FamilyDocument),
    Vandantzig(VanDantzigDocument),
    Presentation(PresentationDocument),
    Report(ReportDocument),
    Trace(TraceDocument),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Groupoid(_) => "groupoid",
            Document::Tower(_) => "tower",
            Document::Functor(_) => "functor",
            Document::Group(_) => "group",
            Document::Subset(_) => "subset",
            Document::Basis(_) => "basis",
            Document::Partition(_) => "partition",
            Document::Threads(_) => "threads",
            Document::Family(_) => "family",
            Document::Vandantzig(_) => "vandantzig",
            Document::Presentation(_) => "presentation",
            Document::Report(_) => "report",
            Document::Trace(_) => "trace",
        }
    }

    fn version(&self) -> u32 {
        match self {
            Document::Groupoid(d) => d.version,
            Document::Tower(d) => d.version,
            Document::Functor(d) => d.version,
            Document::Group(d) => d.version,
            Document::Subset(d) => d.version,
            Document::Basis(d) => d.version,
            Document::Partition(d) => d.version,
            Document::Threads(d) => d.version,
            Document::Family(d) => d.version,
            Document::Vandantzig(d) => d.version,
            Document::Presentation(d) => d.version,
            Document::Report(d) => d.version,
            Document::Trace(d) => d.version,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Format(format!("invalid document: {e}")))?;
        if doc.version() != FORMAT_VERSION {
            return Err(CliError::Format(format!(
                "unsupported format version {} (expected {FORMAT_VERSION})",
                doc.version()
            )));
        }
        Ok(doc)
    }

    /// Indented JSON with a trailing newline. Arrays holding only numbers or
    /// strings stay on one line so tables diff row by row.
    pub fn render(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        let mut text = String::new();
        write_value(&mut text, &value, 0);
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDocument {
    pub version: u32,
    pub objects: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub unit: Vec<usize>,
    pub inv: Vec<usize>,
    pub comp: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupoidDocument {
    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let t = g.to_tables();
        GroupoidDocument {
            version: FORMAT_VERSION,
            objects: t.objects,
            src: t.src,
            tgt: t.tgt,
            unit: t.unit,
            inv: t.inv,
            comp: t.comp.into_iter().map(|(a, b, c)| [a, b, c]).collect(),
            names: None,
        }
    }

    pub fn tables(&self) -> GroupoidTables {
        GroupoidTables {
            objects: self.objects,
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            unit: self.unit.clone(),
            inv: self.inv.clone(),
            comp: self.comp.iter().map(|&[a, b, c]| (a, b, c)).collect(),
        }
    }

    pub fn to_groupoid(&self) -> Result<FiniteGroupoid, CliError> {
        if let Some(names) = &self.names {
            if names.len() != self.objects {
                return Err(CliError::Format(format!(
                    "names has length {}, expected {}",
                    names.len(),
                    self.objects
                )));
            }
        }
        FiniteGroupoid::new(&self.tables()).map_err(|e| CliError::domain("parse", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapsDocument {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl From<&FunctorMaps> for MapsDocument {
    fn from(m: &FunctorMaps) -> Self {
        MapsDocument {
            obj_map: m.obj_map.clone(),
            mor_map: m.mor_map.clone(),
        }
    }
}

impl From<&MapsDocument> for FunctorMaps {
    fn from(m: &MapsDocument) -> Self {
        FunctorMaps {
            obj_map: m.obj_map.clone(),
            mor_map: m.mor_map.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDocument {
    pub version: u32,
    /// Level 0 first.
    pub levels: Vec<GroupoidDocument>,
    /// Entry `n` maps level `n + 1` to level `n`.
    pub transitions: Vec<MapsDocument>,
}

impl TowerDocument {
    pub fn from_tower(t: &GroupoidTower) -> Self {
        TowerDocument {
            version: FORMAT_VERSION,
            levels: t.levels().iter().map(GroupoidDocument::from_groupoid).collect(),
            transitions: (0..t.depth()).map(|n| MapsDocument::from(t.transition_maps(n))).collect(),
        }
    }

    pub fn to_tower(&self) -> Result<GroupoidTower, CliError> {
        if self.levels.is_empty() {
            return Err(CliError::Format("a tower needs at least one level".into()));
        }
        if self.transitions.len() + 1 != self.levels.len() {
            return Err(CliError::Format(format!(
                "{} levels need {} transitions, found {}",
                self.levels.len(),
                self.levels.len() - 1,
                self.transitions.len()
            )));
        }
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(n, l)| l.to_groupoid().map_err(|e| e.at_level(n)))
            .collect::<Result<Vec<_>, _>>()?;
        GroupoidTower::new(levels, self.transitions.iter().map(FunctorMaps::from).collect())
            .map_err(|e| CliError::domain("parse", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDocument {
    pub version: u32,
    pub source: GroupoidDocument,
    pub target: GroupoidDocument,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl FunctorDocument {
    pub fn new(source: &FiniteGroupoid, target: &FiniteGroupoid, maps: &FunctorMaps) -> Self {
        FunctorDocument {
            version: FORMAT_VERSION,
            source: GroupoidDocument::from_groupoid(source),
            target: GroupoidDocument::from_groupoid(target),
            obj_map: maps.obj_map.clone(),
            mor_map: maps.mor_map.clone(),
        }
    }

    pub fn maps(&self) -> FunctorMaps {
        FunctorMaps {
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub version: u32,
    /// The object whose isotropy this is, when it came from a groupoid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<usize>,
    /// Morphism behind each element, when it came from a groupoid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<usize>>,
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupDocument {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDocument {
            version: FORMAT_VERSION,
            object: None,
            elements: None,
            order: g.order(),
            identity: g.identity(),
            table: g.table(),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, CliError> {
        if self.table.len() != self.order {
            return Err(CliError::Format(format!(
                "table has {} rows, expected {}",
                self.table.len(),
                self.order
            )));
        }
        let g = FiniteGroup::from_table(self.table.clone()).map_err(|e| CliError::domain("parse", e))?;
        if g.identity() != self.identity {
            return Err(CliError::Format(format!(
                "identity is {} but the table's identity is {}",
                self.identity,
                g.identity()
            )));
        }
        Ok(g)
    }
}

/// A set of morphisms of a groupoid with `universe` morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetDocument {
    pub version: u32,
    pub universe: usize,
    pub morphisms: Vec<usize>,
}

impl SubsetDocument {
    pub fn from_set(set: &MorphismSet) -> Self {
        SubsetDocument {
            version: FORMAT_VERSION,
            universe: set.universe(),
            morphisms: set.to_vec(),
        }
    }

    pub fn to_set(&self, expected_universe: usize) -> Result<MorphismSet, CliError> {
        subset(self.universe, &self.morphisms, expected_universe)
    }
}

fn subset(universe: usize, members: &[usize], expected: usize) -> Result<MorphismSet, CliError> {
    if universe != expected {
        return Err(CliError::Format(format!(
            "subset is over {universe} morphisms but the groupoid has {expected}"
        )));
    }
    MorphismSet::from_indices(universe, members.iter().copied()).map_err(|e| CliError::domain("parse", e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDocument {
    pub version: u32,
    pub universe: usize,
    pub members: Vec<Vec<usize>>,
}

impl BasisDocument {
    pub fn from_members(universe: usize, members: &[WideSubgroupoid]) -> Self {
        BasisDocument {
            version: FORMAT_VERSION,
            universe,
            members: members.iter().map(|m| m.morphisms().to_vec()).collect(),
        }
    }

    pub fn to_sets(&self, expected_universe: usize) -> Result<Vec<MorphismSet>, CliError> {
        self.members
            .iter()
            .map(|m| subset(self.universe, m, expected_universe))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDocument {
    pub version: u32,
    pub components: usize,
    pub component_of: Vec<usize>,
    pub representatives: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadsDocument {
    pub version: u32,
    pub depth: usize,
    /// Threads of objects, each listing levels `0..=depth`.
    pub objects: Vec<Vec<usize>>,
    /// Threads of components.
    pub components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorDocument {
    /// `partition` or `collapse`.
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<usize>,
    pub target: GroupoidDocument,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub version: u32,
    pub separates: bool,
    /// Two objects or two morphisms no member tells apart.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Finding>,
    pub members: Vec<SeparatorDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanDantzigSets {
    pub k: Vec<usize>,
    pub w: Vec<[usize; 2]>,
    pub f: Vec<usize>,
    pub b: Vec<[usize; 2]>,
    pub m: Vec<usize>,
    pub v: Vec<usize>,
    pub h1: Vec<usize>,
}

impl From<&VanDantzigTrace> for VanDantzigSets {
    fn from(t: &VanDantzigTrace) -> Self {
        VanDantzigSets {
            k: t.k.to_vec(),
            w: t.w.iter().map(|&(a, b)| [a, b]).collect(),
            f: t.f.to_vec(),
            b: t.b.iter().map(|&(a, b)| [a, b]).collect(),
            m: t.m.to_vec(),
            v: t.v.to_vec(),
            h1: t.h1.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanDantzigDocument {
    pub version: u32,
    pub universe: usize,
    pub neighborhood: Vec<usize>,
    pub subgroupoid: Vec<usize>,
    pub trace: VanDantzigSets,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDocument {
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneTypeDocument {
    pub components: Vec<ComponentDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneTypeMapDocument {
    pub pi0: Vec<usize>,
    pub homomorphisms: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDocument {
    pub version: u32,
    /// Level 0 first; component `c` of a level is its `c`-th skeleton object.
    pub levels: Vec<OneTypeDocument>,
    pub transitions: Vec<OneTypeMapDocument>,
}

impl PresentationDocument {
    pub fn from_presentation(p: &AnimaPresentation) -> Self {
        PresentationDocument {
            version: FORMAT_VERSION,
            levels: p.levels.iter().map(one_type).collect(),
            transitions: p
                .transitions
                .iter()
                .map(|t| OneTypeMapDocument {
                    pi0: t.pi0.clone(),
                    homomorphisms: t.homomorphisms.clone(),
                })
                .collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<AnimaPresentation, CliError> {
        if self.levels.is_empty() || self.transitions.len() + 1 != self.levels.len() {
            return Err(CliError::Format("presentation needs one transition per adjacent pair of levels".into()));
        }
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let groups = l
                    .components
                    .iter()
                    .map(|c| {
                        GroupDocument {
                            version: FORMAT_VERSION,
                            object: None,
                            elements: None,
                            order: c.order,
                            identity: c.identity,
                            table: c.table.clone(),
                        }
                        .to_group()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(PiFiniteOneType { groups })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        for (n, t) in self.transitions.iter().enumerate() {
            let (upper, lower) = (&levels[n + 1], &levels[n]);
            if t.pi0.len() != upper.components() || t.homomorphisms.len() != upper.components() {
                return Err(CliError::Format(format!("transition {n} has the wrong number of components")));
            }
            for (c, hom) in t.homomorphisms.iter().enumerate() {
                let image = t.pi0[c];
                if image >= lower.components() {
                    return Err(CliError::Format(format!("transition {n} sends component {c} out of range")));
                }
                if hom.len() != upper.groups[c].order() || hom.iter().any(|&b| b >= lower.groups[image].order()) {
                    return Err(CliError::Format(format!("transition {n}: map on component {c} is malformed")));
                }
                if !upper.groups[c].is_homomorphism(&lower.groups[image], hom) {
                    return Err(CliError::Domain {
                        stage: "parse",
                        message: format!("transition {n}: map on component {c} is not a homomorphism"),
                    });
                }
            }
        }
        Ok(AnimaPresentation {
            levels,
            transitions: self
                .transitions
                .iter()
                .map(|t| OneTypeMap {
                    pi0: t.pi0.clone(),
                    homomorphisms: t.homomorphisms.clone(),
                })
                .collect(),
        })
    }
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.push_str(&"  ".repeat(n));
    match value {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&v.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, v, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, v, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn one_type(t: &PiFiniteOneType) -> OneTypeDocument {
    OneTypeDocument {
        components: t
            .groups
            .iter()
            .map(|g| ComponentDocument {
                order: g.order(),
                identity: g.identity(),
                table: g.table(),
            })
            .collect(),
    }
}

/// One checked condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub condition: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Finding {
    pub fn new(condition: impl Into<String>, holds: bool) -> Self {
        Finding {
            condition: condition.into(),
            holds,
            level: None,
            witness: Vec::new(),
            detail: None,
        }
    }

    pub fn failed(condition: impl Into<String>, witness: Vec<usize>) -> Self {
        Finding {
            witness,
            ..Finding::new(condition, false)
        }
    }

    pub fn with_detail(self, detail: impl Into<String>) -> Self {
        Finding {
            detail: Some(detail.into()),
            ..self
        }
    }

    pub fn at(self, level: usize) -> Self {
        Finding {
            level: Some(level),
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: u32,
    /// What was checked, for example `validate groupoid` or `reconstruct`.
    pub check: String,
    pub passed: bool,
    pub findings: Vec<Finding>,
}

impl ReportDocument {
    pub fn new(check: impl Into<String>, findings: Vec<Finding>) -> Self {
        ReportDocument {
            version: FORMAT_VERSION,
            check: check.into(),
            passed: findings.iter().all(|f| f.holds),
            findings,
        }
    }
}

/// One intermediate object of a command, tagged with the stage that made it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStage {
    pub stage: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub document: Box<Document>,
}

/// Intermediate objects of a command run, in the order they were produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub version: u32,
    pub command: String,
    pub stages: Vec<TraceStage>,
}

impl TraceDocument {
    pub fn new(command: impl Into<String>) -> Self {
        TraceDocument {
            version: FORMAT_VERSION,
            command: command.into(),
            stages: Vec::new(),
        }
    }

    pub fn push(&mut self, stage: &str, level: Option<usize>, document: Document) {
        self.stages.push(TraceStage {
            stage: stage.to_string(),
            level,
            document: Box::new(document),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bz2() -> FiniteGroupoid {
        FiniteGroupoid::from_group(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn scalar_arrays_stay_on_one_line() {
        let text = Document::Groupoid(GroupoidDocument::from_groupoid(&bz2())).render();
        assert!(text.starts_with("{\n  \"kind\": \"groupoid\",\n  \"version\": 1,\n"));
        assert!(text.contains("\"inv\": [0, 1],"));
        assert!(text.contains("\"comp\": [\n    [0, 0, 0],\n"));
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn version_is_pinned() {
        let text = Document::Groupoid(GroupoidDocument::from_groupoid(&bz2())).render();
        assert!(Document::parse(&text).is_ok());
        let bumped = text.replace("\"version\": 1", "\"version\": 2");
        assert!(matches!(Document::parse(&bumped), Err(CliError::Format(_))));
        let missing = text.replace("\"version\": 1,", "");
        assert!(matches!(Document::parse(&missing), Err(CliError::Format(_))));
    }

    #[test]
    fn names_must_match_the_object_count() {
        let mut doc = GroupoidDocument::from_groupoid(&bz2());
        doc.names = Some(vec!["a".into(), "b".into()]);
        assert!(matches!(doc.to_groupoid(), Err(CliError::Format(_))));
    }

    #[test]
    fn tower_documents_round_trip() {
        let t = GroupoidTower::constant(bz2(), 2);
        assert_eq!(TowerDocument::from_tower(&t).to_tower().unwrap(), t);
    }

    #[test]
    fn presentations_reject_non_homomorphisms() {
        let p = AnimaPresentation {
            levels: vec![
                PiFiniteOneType {
                    groups: vec![FiniteGroup::cyclic(2)],
                },
                PiFiniteOneType {
                    groups: vec![FiniteGroup::cyclic(2)],
                },
            ],
            transitions: vec![OneTypeMap {
                pi0: vec![0],
                homomorphisms: vec![vec![1, 0]],
            }],
        };
        let doc = PresentationDocument::from_presentation(&p);
        assert!(matches!(doc.to_presentation(), Err(CliError::Domain { .. })));
    }
}

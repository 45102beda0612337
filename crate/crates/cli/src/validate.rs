//! Structural validation of every document kind.
//!
//! Groupoid and tower documents are checked against the groupoid axioms and
//! the tower conditions. Derived documents are checked for internal
//! consistency only, since they do not carry the groupoid they came from.

use stone_groupoid::{check_functor, validate_groupoid, validate_tower, FiniteGroupoid, FunctorMaps, GroupoidTower};

use crate::document::{
    BasisDocument, Document, FamilyDocument, Finding, FunctorDocument, GroupDocument, GroupoidDocument,
    PartitionDocument, ReportDocument, SubsetDocument, ThreadsDocument, TowerDocument, VanDantzigDocument,
};
use crate::error::CliError;

/// Checks `doc` and reports every failed condition. Index errors in the
/// tables themselves are format errors rather than findings.
pub fn validate(doc: &Document) -> Result<ReportDocument, CliError> {
    let findings = findings(doc)?;
    Ok(ReportDocument::new(format!("validate {}", doc.kind()), findings))
}

fn findings(doc: &Document) -> Result<Vec<Finding>, CliError> {
    match doc {
        Document::Groupoid(g) => groupoid(g).map(|(f, _)| f),
        Document::Tower(t) => tower(t),
        Document::Functor(f) => functor(f),
        Document::Group(g) => Ok(group(g)),
        Document::Subset(s) => Ok(subset(s)),
        Document::Basis(b) => Ok(basis(b)),
        Document::Partition(p) => Ok(partition(p)),
        Document::Threads(t) => Ok(threads(t)),
        Document::Family(f) => family(f),
        Document::Vandantzig(v) => Ok(van_dantzig(v)),
        Document::Presentation(p) => Ok(match p.to_presentation() {
            Ok(_) => Vec::new(),
            Err(e) => vec![Finding::new("presentation", false).with_detail(e.to_string())],
        }),
        Document::Report(r) => Ok(report(r)),
        Document::Trace(t) => {
            let mut out = Vec::new();
            for stage in &t.stages {
                for f in findings(&stage.document)? {
                    let f = Finding {
                        condition: format!("{}: {}", stage.stage, f.condition),
                        ..f
                    };
                    out.push(match (f.level, stage.level) {
                        (None, Some(n)) => f.at(n),
                        _ => f,
                    });
                }
            }
            Ok(out)
        }
    }
}

/// Axiom findings for a groupoid document, plus the groupoid when valid.
fn groupoid(doc: &GroupoidDocument) -> Result<(Vec<Finding>, Option<FiniteGroupoid>), CliError> {
    let report = validate_groupoid(&doc.tables()).map_err(|e| CliError::domain("validate", e))?;
    let mut out: Vec<Finding> = report
        .violations
        .iter()
        .map(|v| Finding::failed(v.axiom(), v.witness()))
        .collect();
    if let Some(names) = &doc.names {
        if names.len() != doc.objects {
            out.push(Finding::failed("names", vec![names.len()]));
        }
    }
    if !out.is_empty() {
        return Ok((out, None));
    }
    let g = doc.to_groupoid()?;
    Ok((out, Some(g)))
}

fn tower(doc: &TowerDocument) -> Result<Vec<Finding>, CliError> {
    if doc.levels.is_empty() || doc.transitions.len() + 1 != doc.levels.len() {
        return Err(CliError::Format(
            "a tower needs at least one level and one transition per adjacent pair".into(),
        ));
    }
    let mut out = Vec::new();
    let mut levels = Vec::new();
    for (n, level) in doc.levels.iter().enumerate() {
        let (found, g) = groupoid(level).map_err(|e| e.at_level(n))?;
        out.extend(found.into_iter().map(|f| f.at(n)));
        levels.extend(g);
    }
    if !out.is_empty() {
        return Ok(out);
    }
    let transitions: Vec<FunctorMaps> = doc.transitions.iter().map(FunctorMaps::from).collect();
    for (n, maps) in transitions.iter().enumerate() {
        if let Err(e) = check_functor(&levels[n + 1], &levels[n], maps) {
            let e = CliError::domain("validate", e).at_level(n);
            if let CliError::Format(_) = e {
                return Err(e);
            }
            out.push(Finding::new("functor", false).with_detail(e.to_string()).at(n));
        }
    }
    if !out.is_empty() {
        return Ok(out);
    }
    let t = GroupoidTower::new(levels, transitions).map_err(|e| CliError::domain("validate", e))?;
    Ok(validate_tower(&t)
        .into_iter()
        .map(|v| Finding::failed(v.condition(), v.witness()).at(v.level()))
        .collect())
}

fn functor(doc: &FunctorDocument) -> Result<Vec<Finding>, CliError> {
    let (mut out, source) = groupoid(&doc.source)?;
    for f in &mut out {
        f.condition = format!("source: {}", f.condition);
    }
    let (target_findings, target) = groupoid(&doc.target)?;
    out.extend(target_findings.into_iter().map(|f| Finding {
        condition: format!("target: {}", f.condition),
        ..f
    }));
    if let (Some(s), Some(t)) = (source, target) {
        if let Err(e) = check_functor(&s, &t, &doc.maps()) {
            match CliError::domain("validate", e) {
                e @ CliError::Format(_) => return Err(e),
                e => out.push(Finding::new("functor", false).with_detail(e.to_string())),
            }
        }
    }
    Ok(out)
}

fn group(doc: &GroupDocument) -> Vec<Finding> {
    let mut out = Vec::new();
    if let Err(e) = doc.to_group() {
        out.push(Finding::new("group-axioms", false).with_detail(e.to_string()));
    }
    if let Some(elements) = &doc.elements {
        if elements.len() != doc.order {
            out.push(Finding::failed("elements", vec![elements.len()]));
        }
    }
    out
}

/// Members must be in range and strictly ascending.
fn members(universe: usize, members: &[usize]) -> Option<Finding> {
    if let Some(&bad) = members.iter().find(|&&g| g >= universe) {
        return Some(Finding::failed("in-range", vec![bad]));
    }
    members
        .windows(2)
        .find(|w| w[0] >= w[1])
        .map(|w| Finding::failed("ascending", vec![w[0], w[1]]))
}

fn subset(doc: &SubsetDocument) -> Vec<Finding> {
    members(doc.universe, &doc.morphisms).into_iter().collect()
}

fn basis(doc: &BasisDocument) -> Vec<Finding> {
    doc.members
        .iter()
        .enumerate()
        .filter_map(|(i, m)| {
            members(doc.universe, m).map(|f| Finding {
                condition: format!("member {i}: {}", f.condition),
                ..f
            })
        })
        .collect()
}

fn partition(doc: &PartitionDocument) -> Vec<Finding> {
    let mut out = Vec::new();
    if doc.representatives.len() != doc.components {
        out.push(Finding::failed("representatives", vec![doc.representatives.len()]));
        return out;
    }
    if let Some((x, _)) = doc.component_of.iter().enumerate().find(|(_, &c)| c >= doc.components) {
        out.push(Finding::failed("component-range", vec![x]));
        return out;
    }
    for (c, &r) in doc.representatives.iter().enumerate() {
        let least = doc.component_of.iter().position(|&k| k == c);
        if least != Some(r) {
            out.push(Finding::failed("least-representative", vec![c, r]));
        }
    }
    out
}

fn threads(doc: &ThreadsDocument) -> Vec<Finding> {
    let mut out = Vec::new();
    for (i, t) in doc.objects.iter().chain(&doc.components).enumerate() {
        if t.len() != doc.depth + 1 {
            out.push(Finding::failed("thread-length", vec![i, t.len()]));
        }
    }
    for list in [&doc.objects, &doc.components] {
        if let Some(w) = list.windows(2).find(|w| w[0] >= w[1]) {
            out.push(Finding::failed("ascending", w[1].clone()));
        }
    }
    out
}

fn family(doc: &FamilyDocument) -> Result<Vec<Finding>, CliError> {
    let mut out = Vec::new();
    for (i, m) in doc.members.iter().enumerate() {
        let (found, _) = groupoid(&m.target)?;
        out.extend(found.into_iter().map(|f| Finding {
            condition: format!("member {i}: {}", f.condition),
            ..f
        }));
        let valid_kind = match m.construction.as_str() {
            "partition" => m.block.is_some() && m.object.is_none(),
            "collapse" => m.object.is_some() && m.block.is_none(),
            _ => false,
        };
        if !valid_kind {
            out.push(Finding::failed("construction", vec![i]));
        }
        if m.obj_map.iter().any(|&x| x >= m.target.objects) || m.mor_map.iter().any(|&g| g >= m.target.src.len()) {
            out.push(Finding::failed("map-range", vec![i]));
        }
    }
    let lengths = |f: fn(&crate::document::SeparatorDocument) -> usize| {
        doc.members.windows(2).all(|w| f(&w[0]) == f(&w[1]))
    };
    if !lengths(|m| m.obj_map.len()) || !lengths(|m| m.mor_map.len()) {
        out.push(Finding::new("common-source", false));
    }
    if doc.separates == doc.witness.is_some() {
        out.push(Finding::new("witness", false));
    }
    Ok(out)
}

fn van_dantzig(doc: &VanDantzigDocument) -> Vec<Finding> {
    let mut out: Vec<Finding> = [
        members(doc.universe, &doc.neighborhood),
        members(doc.universe, &doc.subgroupoid),
    ]
    .into_iter()
    .flatten()
    .collect();
    if let Some(&g) = doc.subgroupoid.iter().find(|g| doc.neighborhood.binary_search(g).is_err()) {
        out.push(Finding::failed("inside-neighborhood", vec![g]));
    }
    if doc.trace.h1 != doc.subgroupoid {
        out.push(Finding::new("trace-result", false));
    }
    out
}

fn report(doc: &ReportDocument) -> Vec<Finding> {
    if doc.passed == doc.findings.iter().all(|f| f.holds) {
        Vec::new()
    } else {
        vec![Finding::new("passed-flag", false)]
    }
}

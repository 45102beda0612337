use thiserror::Error;

use crate::groupoid::{MorId, ObjId, ValidationReport};

/// Errors raised by the groupoid library.
///
/// Precondition failures carry enough information to reproduce the problem:
/// the offending index, the level of a tower, or a witness morphism.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table `{table}` has index {index} out of range (bound {bound})")]
    IndexOutOfRange {
        table: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("table `{table}` has length {found}, expected {expected}")]
    TableLength {
        table: &'static str,
        found: usize,
        expected: usize,
    },

    #[error("groupoid axioms violated: {0}")]
    InvalidGroupoid(ValidationReport),

    #[error("group axioms violated: {0}")]
    InvalidGroup(String),

    #[error("functor is not structure preserving: {0}")]
    InvalidFunctor(String),

    #[error("object {object} does not exist (groupoid has {count} objects)")]
    InvalidObject { object: ObjId, count: usize },

    #[error("groupoid is not skeletal: morphism {witness} joins distinct objects")]
    NotSkeletal { witness: MorId },

    #[error("neighborhood does not contain the unit of object {object}")]
    MissingUnit { object: ObjId },

    #[error("morphism set is not a wide subgroupoid: {0}")]
    NotSubgroupoid(String),

    #[error(
        "subgroupoid is not normal: conjugating {element} by {conjugator} gives {result}, \
         which lies outside"
    )]
    NotNormal {
        element: MorId,
        conjugator: MorId,
        result: MorId,
    },

    #[error("transition {level} is not surjective on {what}: {witness} is not hit")]
    NotSurjective {
        level: usize,
        what: &'static str,
        witness: usize,
    },

    #[error("no compatible section exists at level {level}: {reason}")]
    SectionFailure { level: usize, reason: String },

    #[error("level {level}: {source}")]
    AtLevel {
        level: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("tower condition `{condition}` fails at level {level} (witness {witness:?})")]
    InvalidTower {
        level: usize,
        condition: &'static str,
        witness: Vec<usize>,
    },

    #[error("depth {depth} out of range (tower depth is {max})")]
    DepthOutOfRange { depth: usize, max: usize },

    #[error("oracle refused: {morphisms} morphisms exceeds the bound {bound}")]
    OracleBoundExceeded { morphisms: usize, bound: usize },

    #[error("subgroup lattice enumeration refused: {morphisms} morphisms exceeds {bound}")]
    LatticeTooLarge { morphisms: usize, bound: usize },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("coset enumeration exceeded {limit} cosets")]
    CosetLimit { limit: usize },

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_level(self, level: usize) -> Self {
        Error::AtLevel {
            level,
            source: Box::new(self),
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Finite groupoids, towers of finite groupoids, and the constructions that
//! turn a tower into a presentation by pi-finite 1-types.

pub mod constructions;
pub mod error;
pub mod functor;
pub mod generators;
pub mod group;
pub mod groupoid;
pub mod presentation;
pub mod realization;
pub mod tower;

pub use error::{Error, Result};
pub use functor::{
    check_functor, equivalence_oracle, equivalence_oracle_with_bound, internal_essentially_surjective,
    internal_fully_faithful, whitehead_equivalence, FunctorMaps, GroupoidFunctor, DEFAULT_ORACLE_BOUND,
};
pub use group::FiniteGroup;
pub use groupoid::{
    revalidate, validate_groupoid, ComponentPartition, FiniteGroupoid, GroupoidTables, MorId, ObjId,
    ValidationReport, Violation,
};
pub use tower::{validate_tower, GroupoidTower, SetTower, Thread, TowerViolation};

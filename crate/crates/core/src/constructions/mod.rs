//! Constructions on finite groupoids and towers.

pub mod collapse;
pub mod normal;
pub mod quotient;
pub mod reconstruct;
pub mod skeleton;
pub mod subgroupoid;
pub mod van_dantzig;

pub use collapse::{check_separation, collapse, separating_family, MappedGroupoid, Separator, SeparatorKind, Unseparated};
pub use normal::{bad_set, normal_basis, normal_core, tower_kernels, LATTICE_BOUND};
pub use quotient::{quotient, QuotientResult};
pub use reconstruct::{reconstruct, Reconstruction, ReconstructionWitness};
pub use skeleton::{skeletal_replacement, skeletal_replacement_tower, SkeletonResult, TowerSkeleton};
pub use subgroupoid::{conjugate, MorphismSet, WideSubgroupoid};
pub use van_dantzig::{check_trace, van_dantzig, VanDantzigTrace};

//! Finite-dimensional cochain DGAs, their DG modules and the basic
//! constructions on them.

mod algebra;
mod chain_map;
mod cohomology;
pub mod models;
mod module;
mod truncate;
mod validate;

pub use algebra::{DgaBuilder, FinDga};
pub use chain_map::{mapping_cone, ChainMap, LesRow, Triangle};
pub use cohomology::{algebra_cohomology, cohomology, ring_product, Cohomology, ModuleCohomology};
pub use module::{DgModule, Side};
pub use truncate::{truncate_above, truncate_below, Truncation};
pub use validate::{validate_dga, validate_module, Axiom, ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DgaError {
    #[error("unknown basis element {0:?}")]
    UnknownBasis(String),
    #[error("duplicate basis label")]
    DuplicateBasis,
    #[error("no unit declared")]
    MissingUnit,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("modules live on different sides")]
    SideMismatch,
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("basis change is singular in degree {0}")]
    Singular(i32),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("acyclic input: cohomology is zero")]
    Acyclic,
    #[error("cohomology bound is {found}, expected {expected}")]
    BoundMismatch { expected: i32, found: i32 },
}

#[cfg(test)]
mod tests;

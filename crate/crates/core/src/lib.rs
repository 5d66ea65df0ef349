//! Computations with finite-dimensional cochain DGAs: validation,
//! cohomology, minimal semi-free resolutions, Poincaré duality and
//! Auslander-Reiten theory, with the loop-algebra picture over spheres.

pub mod dga;
pub mod exactlin;
pub mod format;
pub mod graded;
pub mod loop_sphere;
pub mod poincare;
pub mod quiver;
pub mod report;
pub mod resolution;
pub mod selftest;

pub use dga::{ChainMap, DgModule, DgaBuilder, FinDga, Side};
pub use exactlin::{Field, Matrix, Scalar};
pub use graded::{BasisRef, GradedDims, GradedMap, GradedVectorSpace};

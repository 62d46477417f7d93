//! Coherent configurations and association schemes, their coherent closures
//! and wreath products, Terwilliger algebras as explicit matrix algebras, and
//! the central primitive idempotents of `T(S ≀ T)` when `(Y, T)` is
//! 3-equivalenced.

pub mod algebra;
pub mod catalog;
pub mod closure;
pub mod cmatrix;
pub mod equivalenced;
pub mod idempotents;
pub mod intmat;
pub mod io;
pub mod relation;
pub mod report;
pub mod terwilliger;
pub mod wreath;

pub use algebra::{generate_algebra, MatrixAlgebra, Provenance, Tolerances};
pub use catalog::CatalogSpec;
pub use closure::{coherent_closure, one_point_extension, ColorPartition};
pub use cmatrix::CMatrix;
pub use relation::{CoherentConfiguration, Color, Point, RelationError, Scheme};
pub use wreath::{wreath_product, WreathScheme};

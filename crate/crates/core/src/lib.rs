//! Combinatorial invariants of finite CAT(0) cube complexes and of truncation
//! systems standing in for infinite ones.

pub mod boundary;
pub mod cli;
pub mod complex;
pub mod dist;
pub mod error;
pub mod families;
pub mod geodesic;
pub mod graphs;
pub mod hyperplane;
pub mod io;
pub mod witness;

pub use complex::{CubeComplex, Orientation, OrientationClass, Vertex, WallId, WallMap, Wallspace};
pub use dist::Dist;
pub use error::{CubixError, Result};
pub use families::{make_family, FamilySpec, TruncationSystem};
pub use geodesic::GeodesicPath;
pub use graphs::{GraphKind, HypGraph};

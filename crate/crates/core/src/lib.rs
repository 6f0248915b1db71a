//! Cox rings of the extremal rational elliptic surfaces.
//!
//! The crate models the Picard lattice and the negative curves of each
//! surface, assembles a minimal set of Cox ring generators, and computes
//! the ideal of relations by elimination, rehomogenization and saturation.

pub mod catalog;
pub mod complexone;
pub mod contract;
pub mod curves;
pub mod generators;
pub mod linalg;
pub mod picard;
pub mod relations;
pub mod verify;

pub use catalog::{load_surface, validate_surface, Catalog, SurfaceDescriptor};
pub use picard::DivisorClass;

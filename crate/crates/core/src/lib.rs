//! Online exploration of hexagonal and triangular grid polygons.
//!
//! The library models simple grid polygons on two lattices, explores them
//! with depth-first strategies that only rely on locally visible cells, and
//! checks the resulting step counts against an exact offline oracle. The
//! `harness` module bundles the verification suites used by the CLI.

pub mod explore;
pub mod generate;
pub mod grid;
pub mod harness;
pub mod oracle;
pub mod polygon;
pub mod render;

pub use grid::{Cell, GridKind, Move};
pub use polygon::{GridPolygon, LayerMap, PolygonMetrics};

//! Exact piecewise-linear periodic maps of the integer plane.
//!
//! A map here is a fan of cones at the origin with one 2x2 integer matrix of
//! determinant +-1 per cone, continuous across the shared rays. The crate
//! builds and evaluates such maps, composes them with minimal piece counts,
//! detects periods exactly, computes rotation numbers and fundamental
//! polygons, converts polygons to and from their integer trace sequences,
//! enumerates the admissible sequences of a given order, encodes polygons as
//! pairs of rooted binary trees with a shear, classifies the two-piece
//! half-plane family over parameter grids, and renders figures as SVG.
//!
//! All arithmetic is exact 64-bit integer arithmetic with overflow checks in
//! every build profile. Every type is an immutable value and every operation
//! is pure, so anything here can be called freely from multiple threads.

pub mod catalog;
pub mod conemap;
pub mod document;
pub mod enumerate;
pub mod geom;
pub mod polygon;
pub mod svg;

pub use catalog::{
    classify_half_plane, half_plane_map, named_map, recurrence_orbit, ClassificationRow,
    HalfPlaneParams, NamedMap, RecurrenceKind, RecurrenceOrbit,
};
pub use conemap::{ConeFanMap, MapError, Orientation, PeriodOutcome, RotationNumber};
pub use document::Document;
pub use enumerate::{
    count_upper_configs, enumerate_admissible, insert_into_sequence, polygon_from_trees,
    tree_from_polygon, InsertionTree, PolygonCode, TreeNode,
};
pub use geom::{is_ccw_fan, lattice_points_in_triangle, LatticeVector, UnimodularMatrix};
pub use polygon::{FundamentalPolygon, PolygonError, TraceSequence};
pub use svg::{render_map, render_polygon, RenderOptions};

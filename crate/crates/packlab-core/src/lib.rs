//! Geometric kernel and analysis routines for 2D packing experiments.
//!
//! The crate is organized around a small set of value types — [`Body`],
//! [`Placement`], [`Packing`] — and pure functions over them:
//!
//! - [`geometry`]: overlap/gap/Hausdorff predicates for placed convex bodies,
//!   connectivity of unions, self-nesting witnesses.
//! - [`packing`]: finite packings over a torus or box window, area densities,
//!   and an element-matching distance between packings.
//! - [`saturation`]: resolution-bounded insertion and replacement search,
//!   the greedy connected-replacement iteration, and packing loosening.
//! - [`diffusion`]: discretized finite measures, diffused mass fields
//!   `mu * chi_P`, pairwise dominance verdicts, and replacement margins.
//! - [`recurrence`]: bounded-gap factor recurrence for symbol sequences and
//!   a translate-limit search between packings.
//! - [`voronoi`]: Voronoi cells of disc packings on a torus, deviation from
//!   the regular circumscribed hexagon, and equal-area cell truncation.
//! - [`constructions`]: deterministic generators for the packings used as
//!   fixtures throughout (hexagonal, defect, lattice, sparse random, strings
//!   of squares).
//!
//! Everything is `no_std`-compatible (with `alloc`); the companion `packlab`
//! crate adds file formats, rendering and a command line on top.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod body;
pub mod constructions;
pub mod diffusion;
pub mod geometry;
pub mod isometry;
pub mod packing;
pub mod recurrence;
pub mod saturation;
pub mod vec2;
pub mod voronoi;

mod convex;
mod matching;
mod quad;

pub use body::{Body, BodyError, PlacedBody, Placement};
pub use isometry::Isometry;
pub use packing::{Packing, PackingError, Window};
pub use vec2::{Point, Rect};

//! Quadric algebraic surfaces in parallel coordinates.
//!
//! A surface is treated as the envelope of its tangent planes; each tangent
//! plane maps to an indexed point in the dual projective plane, and the
//! surface becomes a planar region. For quadrics this crate computes the
//! exact boundary conic of that region by symbolic elimination, builds
//! numeric dual point clouds for cross-validation, and renders the result.
//!
//! Module map:
//!
//! * [`poly`] - exact multivariate polynomial arithmetic over big rationals
//! * [`ratfunc`] - rational functions with construction-aware cancellation
//! * [`parse`] - equation grammar, surfaces, axis spacings, canonical text
//! * [`dual`] - indexed points, tangent planes, dual map, contact polynomial
//! * [`boundary`] - the elimination pipeline producing the boundary conic
//! * [`sample`] - numeric surface sampling, dual clouds, validation
//! * [`render`] - parallel-axes SVG scenes and implicit-curve tracing

pub mod boundary;
pub mod dual;
mod error;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod render;
pub mod sample;

pub use error::{Error, Result};
pub use parse::{parse_spacing, parse_surface, AxisSpacing, QuadricSurface};
pub use poly::{Polynomial, Rat};
pub use ratfunc::RationalFunction;

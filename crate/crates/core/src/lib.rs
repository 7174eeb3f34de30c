//! Exact 3D convex polytopes and the analysis of translative coverings of a
//! cube by a regular tetrahedron.
//!
//! Everything here is exact: coordinates are rationals, irrational report
//! values live in Q(√2), and every predicate is decided without rounding.
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod bodies;
pub mod covering;
pub mod numeric;
pub mod polytope;

pub use numeric::{rat, QuadVal, Rat, RngStream, Vec3};
pub use polytope::{Halfspace, Polytope};

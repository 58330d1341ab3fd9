//! Exact polynomial-method incidence geometry.
//!
//! Everything here works over the rationals with arbitrary-precision
//! integers, so vanishing, divisibility and incidence are exact predicates.
//! The crate is `no_std` and only needs `alloc`.
//!
//! * [`algebra`]: rationals, sparse multivariate polynomials, nullspaces,
//!   resultants and Sturm sequences.
//! * [`geometry`]: points, lines and planes in 3-space and in the plane.
//! * [`fit`]: low-degree polynomials vanishing on point and line sets, and
//!   certified randomized degree reduction.
//! * [`flecnode`]: directional tangency forms, the flecnode eliminant and
//!   ruledness certificates.
//! * [`census`]: brute-force intersection, joint, concentration and planar
//!   incidence counts, plus fixture generators.
//! * [`motion`]: lines of planar rigid motions and distance quadruples.
//! * [`partition`]: iterated polynomial ham-sandwich partitioning.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod census;
pub mod fit;
pub mod flecnode;
pub mod geometry;
pub mod motion;
pub mod partition;

mod rng;

pub use algebra::{MultiPoly, Rat, UniPoly};

pub use geometry::{Line3, PlanarLine, PlanarPoint, Plane, Point3};

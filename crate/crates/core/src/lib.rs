//! Mechanized duality calculus of multiple (n-fold) vector bundles.
//!
//! A *decomposed* (trivial, split) n-fold vector bundle is described entirely
//! by combinatorial data: one building vector bundle per nonempty subset of
//! the n axes. Dualizing the bundle along an axis permutes these building
//! bundles, replaces some of them by their duals, and introduces signs. The
//! group generated by the n dualization operations is surprisingly rich:
//! it is the symmetric group S₃ (order 6) for n = 2, and a non-split
//! extension of order 72 for n = 3.
//!
//! This crate provides:
//!
//! - [`lattice`]: the decorated subset-lattice representation of decomposed
//!   bundles — slots, atoms, faces, cores, flips and DOT rendering;
//! - [`duality`]: the dualization operations, sign propagation, the concrete
//!   dualization groups by closure, and cotangent completion;
//! - [`fpgroup`]: finitely presented groups, Todd–Coxeter coset enumeration,
//!   and an independence certificate for the order-4 relator;
//! - [`paircalc`]: concrete fiberwise models with real coefficients — the
//!   canonical evaluations, the duals-pairing, tangent/cotangent local
//!   models, and an independent numeric oracle for the sign calculus;
//! - [`report`]: serializable verification reports.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything may be freely shared between threads.

pub mod duality;
pub mod error;
pub mod fpgroup;
pub mod lattice;
pub mod paircalc;
pub mod report;

pub use error::Error;

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

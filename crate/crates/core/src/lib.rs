//! Exact computational toolkit for representations of acyclic quivers.
//!
//! The crate is organized bottom-up:
//! - [`field`], [`matrix`], [`poly`]: exact linear algebra over a large prime
//!   field or the rationals, row-vector convention throughout.
//! - [`quiver`], [`lattice`]: the integer lattice of dimension vectors and
//!   weights with its Euler form and Coxeter transformation.
//! - [`rep`]: explicit representations, intertwiner systems, semi-invariants,
//!   universal maps, orthogonal projections and decomposition.
//! - [`stability`]: generic subdimension vectors, King stability of dimension
//!   vectors, the ample cone of weights and its walls.
//! - [`perp`]: orthogonal exceptional roots, the projected quiver and
//!   coordinate transport, the core of the ample cone.
//! - [`moduli`]: moduli-level invariants, blow-up and divisor reports,
//!   semi-invariant dimension estimation.

pub mod field;
pub mod lattice;
pub mod matrix;
pub mod moduli;
pub mod perp;
pub mod poly;
pub mod quiver;
pub mod rep;
pub mod stability;

/// Largest prime below 2^62; the default modulus for sampling runs.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

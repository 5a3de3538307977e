//! Operator-level invariants of conifold degenerations.
//!
//! From a vanishing-cycle configuration (a skew intersection lattice plus a
//! list of cycles) this crate computes:
//!
//! - the Picard-Lefschetz/Stokes operators `T_k = S_k = Id + N_k` with their
//!   exact commutator, braid, and group structure ([`operators`]);
//! - the rigid-flexible decomposition, its splitting criterion, the
//!   interaction graph, and the dimension-level Hodge/Clemens-Schmid
//!   bookkeeping ([`atoms`]);
//! - the resolved-conifold quantum connection: exact pole decomposition at
//!   q = -1 and numerical loop monodromy with Picard-Lefschetz diagnostics
//!   ([`dubrovin`]);
//! - the Gamma-class integral structure, outer-product Stokes matrix, and
//!   K-theoretic spherical twists with their decategorification check
//!   ([`integral`]);
//! - Fock-Goncharov cluster coordinates and their mutation ([`cluster`]).
//!
//! Identities that hold exactly are computed and verified in exact rational
//! arithmetic (`num-rational`); analytic quantities use controlled double
//! precision with explicit tolerances.
//!
//! Sign conventions: the pairing is `<a,b> = a^T P b`; flat sections solve
//! `Y' = -(1/z) A(q) Y`; loops around q = -1 run counterclockwise. The
//! Hurwitz move `d_i -> d_i - lambda_ij d_j` conjugates the operator as
//! `T_i -> T_j^{-1} T_i T_j` under these conventions (verified exactly at
//! every mutation).

pub mod atoms;
pub mod cluster;
pub mod cmat;
pub mod dubrovin;
pub mod error;
pub mod integral;
pub mod lattice;
pub mod operators;
pub mod presets;
pub mod qmat;

pub use error::{Error, Result};

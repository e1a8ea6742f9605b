//! Exact arithmetic in degenerate geometric algebras `G(p,q,r)`.
//!
//! The crate provides sparse multivectors over exact rationals (or Gaussian
//! rationals in complex mode), the named blade-spanned subspaces of the
//! algebra, membership predicates for the groups `P±`, `P`, `P±Λ`, `PΛ`,
//! `P±rad` and for the subspace-preserving groups `Γ`/`Γ̌`, their Lie
//! algebras, a Clifford–Jordan–Wigner embedding with fixed matrix
//! representations of three small algebras, and a text format for
//! multivectors.
//!
//! Everything here is pure and allocation-only; IO lives in the `degenga`
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod blade;
mod error;
pub mod expr;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod matrix_rep;
mod multivector;
pub mod sample;
mod scalar;
mod signature;
pub mod subspace;

pub use blade::{Blade, Metric};
pub use error::{Error, Result};
pub use expr::{parse, print, ParseError};
pub use group::{GroupId, MembershipReport, Unit, Witness};
pub use linalg::Matrix;
pub use multivector::Multivector;
pub use scalar::Scalar;
pub use signature::{Field, Signature};
pub use subspace::{Representation, SubspaceKind, SubspaceSpec};

//! Exact-arithmetic computer algebra for finite-dimensional hom-Lie-Rinehart
//! algebras over the rationals.
//!
//! The crate takes structure-constant presentations of a commutative algebra
//! `A` with an endomorphism `φ`, modules with a compatible twist `β`, and
//! hom-Lie-Rinehart brackets with anchors, and computes
//!
//! * spaces of `φⁿ`-derivations and of `(φ,β)`-multiderivations,
//! * the graded Lie bracket on multiderivations together with its symbol,
//! * deformation cohomology with exact Betti numbers and representatives,
//! * formal one-parameter deformations: jet checking, infinitesimals,
//!   equivalence transforms, obstruction classes, order-by-order extension,
//!   and rigidity certificates.
//!
//! Every computation is exact over `ℚ`; there are no floating-point numbers
//! and no tolerances anywhere. All pivoting and iteration orders are fixed,
//! so equal inputs produce byte-identical reports.
//!
//! The `examples/` directory demonstrates each capability on the shipped
//! fixture files; the `homdef` binary exposes the same entry points as a
//! small command-line tool.

// Indexed loops throughout mirror the summation conventions of the formulas
// they implement; rewriting them over iterators would obscure the indices.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod commands;
pub mod complex;
pub mod deform;
pub mod hlr;
pub mod io;
pub mod linalg;
pub mod mder;
pub mod rat;
pub mod report;
pub mod tensor;

pub use rat::Rat;

//! Bieberbach groups of real Bott towers.
//!
//! A Bott matrix is an upper-unitriangular 0/1 matrix encoding how each of n
//! commuting involutions acts on the n-torus. This crate builds the
//! associated Bieberbach group exactly, computes its diffeomorphism
//! invariants, searches for affine-conjugacy witnesses, and assembles the
//! classification of the towers into machine-checkable partitions with
//! certificates.
//!
//! Everything is exact: translations are dyadic rationals, linear parts are
//! integer matrices, and no floating point appears anywhere.

pub mod affine;
pub mod bott;
pub mod labels;
pub mod bieberbach;
pub mod lattice;

pub use affine::{AffineError, AffineMap, Dyadic, DyVec, IntMatrix};
pub use bott::{enumerate, lift_generators, matrix_conjugacy, orientable, torus_rank, BottMatrix};
pub use labels::LabelTable;

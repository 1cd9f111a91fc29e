//! Exact combinatorics of almost invariant colorings.
//!
//! The closed torus is modelled by primitive integer pairs up to sign, acted
//! on by `PSL(2,Z)` through the generators `S` and `R`. On top of that the
//! crate provides the labelled binary tree of positive primitive pairs, a
//! finite representation of almost invariant colorings together with their
//! defect sets, equivalence and normal forms, and a coordinate model of
//! Dehn twists on pants curves with lattice-coloring checks for the
//! future/past of interesting pairs.
//!
//! Everything here is pure and allocation-only; IO and file formats live in
//! the companion `aic` crate.

#![no_std]

extern crate alloc;

pub mod coloring;
pub mod dehn_thurston;
mod error;
pub mod lattice;
pub mod tree;

pub use coloring::{Color, DefectReport, StructuredColoring};
pub use dehn_thurston::{DTMulticurve, LatticeColoring, SurfaceSpec};
pub use error::{Error, Result};
pub use lattice::{Generator, GroupWord, IntMatrix2, Region, TorusCurve};
pub use tree::{TreeLetter, TreeVertex, TreeWord};

//! Orthogonal polynomials of compactly supported planar measures and the
//! Julia sets of their affine deformations.
//!
//! The crate is organized along the pipeline it implements:
//!
//! * [`measure`] builds discrete (quadrature or Monte-Carlo) approximations
//!   of probability measures in the plane and pushes them forward by affine
//!   maps.
//! * [`orthopoly`] orthonormalizes the monomials against such a measure,
//!   rescales and transports the resulting sequences, and reads capacity
//!   estimates off the leading coefficients.
//! * [`dynamics`] iterates polynomials: escape-time rasters of filled Julia
//!   sets, critical orbits, connectedness loci, Green's functions.
//! * [`geometry`] compares the resulting sets: Hausdorff distances, convex
//!   hulls, Leja-point capacity estimates and convergence tables.
//! * [`experiments`] wires the pieces into reproducible runs that write CSV
//!   and PGM files; the `orthojulia` binary is a thin front end over it.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod io;
pub mod measure;
pub mod orthopoly;
pub mod polynomial;

pub use error::{Error, Result};
pub use measure::{AffineMap, DiscreteMeasure};
pub use polynomial::{ComplexScalar, Polynomial};

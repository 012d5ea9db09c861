//! Archimedean tropical varieties of sparse Laurent polynomials.
//!
//! `ArchTrop(f)` is the set of log-norm vectors `w` where the maximum of
//! `|c_i e^{a_i·w}|` over the terms of `f` is attained at least twice. It is a
//! polyhedral complex lying within `log(t-1)` of the amoeba of `f`, which makes
//! it a cheap, certified stand-in for the amoeba: membership, cell and
//! distance queries reduce to linear programming whose right-hand sides are
//! rational combinations of logarithms. Those are handled exactly by
//! [`exact::LogLinearForm`] and its terminating sign oracle.
//!
//! The crate is `no_std` (it needs `alloc`). IO, file formats and the command
//! line live in the companion `archtrop-kit` crate.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod amoeba;
pub mod error;
pub mod exact;
pub mod hardness;
pub mod poly;
pub mod polyhedra;
pub mod startpoints;
pub mod tropical;

pub use error::{Error, Result};
pub use exact::{GaussianRational, LogLinearForm, Rational, Sign};
pub use poly::{LaurentPolynomial, Monomial, PolynomialSystem};
pub use polyhedra::{HPolyhedron, HalfSpace};

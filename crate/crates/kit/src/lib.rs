//! Command line, file formats and parallel sampling on top of
//! `archtrop-core`.

pub mod cli;
pub mod csv;
pub mod input;
pub mod json;
pub mod sampling;
pub mod svg;

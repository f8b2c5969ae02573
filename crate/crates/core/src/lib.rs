//! Exact verification of E8 sublattice, Griess algebra and Leech lattice
//! constructions underlying the McKay correspondence between the extended E8
//! diagram and 6-transposition classes of the Monster.

pub mod cli;
pub mod codes;
pub mod error;
pub mod griess;
pub mod lattice;
pub mod leech;
pub mod linalg;
pub mod mckay;
pub mod report;
pub mod rootsys;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};

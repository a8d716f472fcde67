//! Exact combinatorics of cylindric and row-flagged Schur functions.
//!
//! The crate is organised bottom-up: [`combinat`] and [`polyring`] provide
//! partitions and exact polynomials, [`qsym_poset`] handles oriented posets
//! and their quasisymmetric expansions, [`cylindric`] builds diagrams on the
//! cylinder, [`ribbon`] implements the Murnaghan-Nakayama rule, [`tiling`]
//! studies ribbon tilings and their parity, and [`flagged`] covers flagged
//! tableaux, contingency tables and Gelfand-Tsetlin patterns.

pub mod combinat;
pub mod config;
pub mod cylindric;
pub mod error;
pub mod flagged;
pub mod gt;
pub mod polyring;
pub mod qsym_poset;
pub mod ribbon;
pub mod saturation;
pub mod scenarios;
pub mod tiling;

pub use error::{Error, Result};

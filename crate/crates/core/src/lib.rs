//! Functigraphs `C(G, f)` and their domination numbers.

pub mod constructions;
pub mod domsolve;
pub mod error;
pub mod functigraph;
pub mod graphcore;
pub mod registry;
pub mod suite;
pub mod theorems;

pub use error::{Error, Result};

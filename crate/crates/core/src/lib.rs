//! Exact commutative-algebra engines for deciding when a Groebner
//! degeneration preserves all graded local cohomology modules.

pub mod cohomology;
pub mod criterion;
pub mod degeneration;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod hochster;
pub mod ideal;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod pieces;
pub mod poly;
pub mod resolution;
pub mod scalar;
pub mod tangent;

pub use error::{Error, Result};

//! Exact computations with graded modules over `F_p[x_1, ..., x_n]`: Gröbner bases,
//! minimal free resolutions, Betti tables, Castelnuovo–Mumford regularity, Koszul homology,
//! and checks of regularity bounds for Koszul homology modules.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod field;
pub mod groebner;
pub mod homological;
pub mod koszul;
pub mod poly;

pub use error::{Error, Result};

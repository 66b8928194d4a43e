//! Algebroid surfaces in Weierstrass form, their smooth equimultiple locus,
//! and how that locus behaves under quadratic and monoidal blow-ups.

pub mod blowup;
pub mod change;
pub mod driver;
pub mod error;
pub mod locus;
pub mod parse;
pub mod poly;
pub mod series;
pub mod surface;

pub use error::{Error, Result};

/// Working bounds shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Truncation degree for non-terminating series computations.
    pub precision: u32,
    /// Largest degree of `h` searched for in smooth curves `Y - h(X)`.
    pub degree_bound: u32,
    pub max_depth: u32,
    /// Largest shift tried when making an equation regular in `Z`.
    pub regularization_bound: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config { precision: 24, degree_bound: 8, max_depth: 12, regularization_bound: 5 }
    }
}

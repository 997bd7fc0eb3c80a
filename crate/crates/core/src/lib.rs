//! Goldbach-type decompositions of Laurent polynomials and structured
//! Laurent series over semidomains: every polynomial outside a few small
//! exceptional shapes is a sum of two irreducibles, with checkable
//! certificates for each summand.

pub mod cli;
pub mod config;
pub mod error;
pub mod goldbach_poly;
pub mod irreducibility;
pub mod laurent_poly;
pub mod laurent_series;
pub mod semidomain;
pub mod suite;
pub mod sweep;

pub use config::SearchConfig;
pub use error::{Error, Result};
pub use laurent_poly::{parse_poly, LaurentPoly};
pub use semidomain::{Element, Ring};

//! Dickson polynomials of arbitrary kind over odd-characteristic finite
//! fields, Dembowski-Ostrom classification of their monomial compositions,
//! planarity checks, and exact Weil-bound thresholds.

pub mod claims;
pub mod classify;
pub mod dickson;
pub mod error;
pub mod field;
pub mod logtab;
pub mod parse;
pub mod planarity;
pub mod poly;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use poly::{BivariatePoly, ParametricPoly, SparsePoly};
pub mod weil;

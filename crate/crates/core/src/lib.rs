//! Binary-field algebra for certifying that polynomials of degree
//! `m = 2^r (2^l + 1)` reach the maximal differential uniformity `m - 2`.

pub mod bounds;
pub mod error;
pub mod field;
pub mod io;
pub mod lalpha;
pub mod morse;
pub mod poly;
pub mod sample;
pub mod structure;
pub mod uniformity;

pub use error::{Error, Result};
pub use field::{Embedding, FieldCtx, FieldElem};
pub use lalpha::DerivativeBundle;
pub use poly::UPoly;

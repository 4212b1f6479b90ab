//! Newton-Taylor decomposition of univariate polynomials, Ritt collision
//! constructors, and density estimates for tubes around the varieties of
//! decomposable polynomials over the reals and the complex numbers.

pub mod cli;
pub mod collisions;
pub mod decompose;
pub mod density;
pub mod error;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};

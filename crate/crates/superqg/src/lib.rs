//! Exact computation in quantum Kac-Moody superalgebras and quiver Hecke superalgebras.

pub mod cartan;
pub mod coeffs;
pub mod error;
pub mod highest;
pub mod linalg;
pub mod params;
pub mod perfect;
pub mod qhs;
pub mod ring;
pub mod suite;
pub mod uminus;

pub use error::{Error, Result};

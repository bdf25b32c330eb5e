//! Rank-metric codes `C(σ, h, T)` over binary extension fields.
//!
//! The crate covers field arithmetic, exact linear algebra, skew polynomials,
//! code construction, Hartmann-Tzeng and Roos bound certificates, and
//! syndrome decoders (error span path, error locator path, interleaved).

pub mod bounds;
pub mod cli;
pub mod code;
pub mod decoder;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod skew;

mod error;

pub use error::{Error, Result};

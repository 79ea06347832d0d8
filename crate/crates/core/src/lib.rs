//! Segre, Chern-Fulton, Chern-Schwartz-MacPherson and Milnor classes of
//! subschemes of projective space.

pub mod chow;
pub mod classes;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod fscheme;
pub mod groebner;
pub mod poly;
pub mod segre;

pub use error::{Error, Result};

//! Exact Morse/GIT stratifications for torus and `SL(2)`/`SL(3)` actions on
//! products of projective spaces.

pub mod algebra;
pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod kirwan;
pub mod model;
pub mod perturbation;
pub mod residue;
pub mod series;

pub use error::{Error, Result};
pub use exact::{BilinearForm, LieVector, Rational};

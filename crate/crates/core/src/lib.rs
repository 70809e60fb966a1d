//! Exact dynamical statistics of rational maps on the projective line over
//! finite fields, fixed-point proportions of iterated wreath products, and
//! heights over the global fields `Q` and `F_q(s)`.

pub mod error;
pub mod family;
pub mod ffield;
pub mod height;
pub mod padyn;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};

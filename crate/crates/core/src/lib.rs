//! Rational points on the conic `x^2 + y^2 = z^2` over finite fields, the two
//! L-type series built from the counting error terms, and numerical checks of
//! the identities tying them to the circle's quarter period `pi/2`.

pub mod analysis;
pub mod arith;
pub mod config;
pub mod counting;
pub mod error;
pub mod field_arith;
pub mod lseries;
pub mod par;
pub mod quadrature;
pub mod report;
pub mod summation;
pub mod verify;

pub use error::{Error, Result};

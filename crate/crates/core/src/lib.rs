//! Load transfer from a creeping patch, through a thin glue layer, into a
//! creeping plate.
//!
//! The crate provides the hereditary (creep) operators of the three
//! materials, a Jacobi-polynomial spectral solver for the finite patch, the
//! closed-form Wiener–Hopf / Carleman constructions for a parabolic
//! semi-infinite patch and a wedge patch, and the endpoint-exponent
//! classification of the contact stress.

// validation is written `!(x > 0.0)` so that NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod integrate;
pub mod material;
pub mod quadrature;
pub mod scalar;
pub mod scenario;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision quadrature rule.
pub type QuadratureRule64 = quadrature::QuadratureRule<f64>;
/// Single-precision quadrature rule.
pub type QuadratureRule32 = quadrature::QuadratureRule<f32>;
/// Double-precision Jacobi parameters.
pub type JacobiParams64 = special::JacobiParams<f64>;
/// Single-precision Jacobi parameters.
pub type JacobiParams32 = special::JacobiParams<f32>;

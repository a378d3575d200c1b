//! Exact arithmetic for degenerate Stirling, Bell, Jindalrae and Gaenari
//! numbers and polynomials.
//!
//! λ is carried as a symbolic indeterminate throughout, so every identity
//! checked here is an identity of polynomials in λ; rational values of λ are
//! obtained by specialization.

// (n, k) index loops read like the sums they implement
#![allow(clippy::needless_range_loop)]

pub mod document;
pub mod error;
pub mod families;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod series;
pub mod suite;
pub mod triangles;
pub mod umbral;

pub use error::{Error, Result};
pub use poly::{deg_falling_factorial, falling_factorial, lambda_shifted_falling, LambdaPoly, Poly, XPoly};
pub use rational::{parse_rational, render_rational, Rational};
pub use ring::Coeff;
pub use series::Series;

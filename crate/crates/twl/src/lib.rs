//! Exact arithmetic over twisted Laurent rings D_τ = D[t, t⁻¹], elementary and Steinberg
//! groups of type A over them, affine Bruhat factorization, symbol groups and the
//! permutation-group construction of the central extension of E(n, D_τ).

pub mod bruhat;
pub mod cli;
pub mod error;
pub mod extension;
pub mod linear;
pub mod parse;
pub mod report;
pub mod ring;
pub mod roots;
pub mod sample;
pub mod steinberg;
pub mod symbols;

pub use error::{Result, TwlError};
pub use ring::{Elem, Poly, Ring, RingSpec, Unit};

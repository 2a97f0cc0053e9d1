//! Verification toolkit for the q-average of the 0-logarithm on real elliptic
//! curves.
//!
//! For a real elliptic curve `E` with a rational point `P` of order `N`, the
//! ratio `R = 2π·D₀,q(P) / Ω⁺` is a rational function of the modular
//! parameter. This crate computes every ingredient of that statement
//! independently and checks it:
//!
//! - [`arith`]: arbitrary-precision scalars (MPFR/MPC through `rug`) and exact
//!   arithmetic in the cyclotomic field ℚ(ζ_N).
//! - [`curve`] and [`families`]: exact Weierstrass models, the group law and the
//!   Kubert families with a marked point of order `N ∈ {3..10, 12}`.
//! - [`periods`]: the real period Ω⁺ by AGM and by tanh-sinh quadrature, the
//!   normalized lattice parameter τ, and the coset of the torsion point.
//! - [`zerolog`]: `D₀` and its certified q-average.
//! - [`eisenstein`]: exact q-expansion coefficients of the weight-one forms
//!   (Hecke's `α_n(a,b)`, `g_k`, `h_k`, the cusp-0 expansions), series
//!   evaluation, the Lang-style closed sums and the ℘ expansion.
//! - [`recognize`]: continued-fraction recognition of rationals.
//! - [`verify`]: the table of `2N·R`, the two-route computation of `R` and the
//!   report formats used by the `d0q` binary.

pub mod arith;
pub mod curve;
pub mod eisenstein;
mod error;
pub mod families;
pub mod periods;
pub mod recognize;
pub mod verify;
pub mod zerolog;

pub use error::{Error, Result};

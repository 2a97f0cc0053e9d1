//! Numeric and exact scalar layer.
//!
//! Real and complex numbers are MPFR/MPC floats carrying their own precision
//! in bits; every routine here takes the target precision explicitly and never
//! rounds an input to a coarser one. Exact values live in ℚ (GMP rationals) or
//! in the cyclotomic field ℚ(ζ_N) via [`CycloElem`].

mod cyclo;
mod real;

pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloElem};
pub use real::{
    agm, agm_with_steps, float_from_rational, log2_abs, parse_rational, parse_real, pi, q_frac_pow, reported_digits,
    to_decimal_string, two_pi_i, BigComplex, BigReal, DEFAULT_PREC, GUARD_BITS, MIN_PREC,
};
pub use rug::{Integer, Rational};

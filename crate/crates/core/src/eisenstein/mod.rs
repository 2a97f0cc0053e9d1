//! Weight-one Eisenstein q-expansions.
//!
//! All coefficients are stored divided by `2πi`, which puts them in ℚ(ζ_N)
//! exactly. The exponent grid of an expansion is `n/d` for a fixed `d`
//! (`d = 1` for `g_k`, `2` for `h_k`, `N` for Hecke's `G_{a,b}` and the
//! expansions at the cusp 0).

mod coeffs;
mod hecke;
mod lang;
mod series;
mod weierstrass;

pub use coeffs::{gk_coeff, gprime_cusp0_coeff, hk_coeff, Twist};
pub use hecke::{alpha_coeff, hurwitz_zeta_zero, HeckeIndex};
pub use lang::lang_f;
pub use series::{eval_series, roots_of_unity, terms_needed, QExpansion, SeriesKind};
pub use weierstrass::{wp_prime_qexp, wp_qexp};

/// Positive divisors of `n ≥ 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

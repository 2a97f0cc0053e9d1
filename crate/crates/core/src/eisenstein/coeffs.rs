use rug::Rational;

use super::divisors;
use crate::arith::CycloElem;
use crate::{Error, Result};

fn check_k(n: u32, k: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("level N = {n} must be at least 2")));
    }
    if k.rem_euclid(n as i64) == 0 {
        return Err(Error::InvalidArgument(format!("k = {k} must be nonzero mod {n}")));
    }
    Ok(())
}

/// Coefficient of `q^n` in `g_k(τ)/(2πi)`, where
/// `g_k = ½(ζ^k+1)/(ζ^k−1) − Σ_{n≥1} Σ_{m|n} (ζ^{km} − ζ^{−km}) q^n`.
pub fn gk_coeff(n_level: u32, k: i64, n: u64) -> Result<CycloElem> {
    check_k(n_level, k)?;
    if n == 0 {
        let z = CycloElem::zeta_pow(n_level, k);
        let one = CycloElem::one(n_level);
        let ratio = (&z + &one).div(&(&z - &one))?;
        return Ok(ratio.scale(&Rational::from((1, 2))));
    }
    let mut acc = CycloElem::zero(n_level);
    let minus = Rational::from(-1);
    let plus = Rational::from(1);
    for m in divisors(n) {
        let e = k * m as i64;
        acc.add_term(e, &minus);
        acc.add_term(-e, &plus);
    }
    Ok(acc)
}

/// Coefficient of `q^{n/2}` in `h_k(τ)/(2πi)` (`N` even):
/// `−Σ_{m | n, m odd} (ζ^{kn/m} − ζ^{−kn/m})`, constant term zero.
/// `k ≡ 0` is allowed and gives the zero series.
pub fn hk_coeff(n_level: u32, k: i64, n: u64) -> Result<CycloElem> {
    if !n_level.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("h_k needs even N, got {n_level}")));
    }
    let mut acc = CycloElem::zero(n_level);
    if n == 0 {
        return Ok(acc);
    }
    let minus = Rational::from(-1);
    let plus = Rational::from(1);
    for m in divisors(n).into_iter().filter(|m| m % 2 == 1) {
        let e = k * (n / m) as i64;
        acc.add_term(e, &minus);
        acc.add_term(-e, &plus);
    }
    Ok(acc)
}

/// Which Hecke-series combination is expanded at the cusp 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    /// `Σ_{a,b} ζ^{−ℓb} G_{a,b}`
    Plain,
    /// `Σ_{a,b} (−1)^a ζ^{−ℓb} G_{a,b}` (`N` even)
    Half,
}

/// Coefficient of `q^{n/N}` (divided by `2πi`) of the weight-one form
/// obtained from `g_ℓ` or `h_ℓ` by `τ ↦ −1/(Nτ)`, written as a Hecke sum.
///
/// Constant term `ℓ/N − ½` (`0 < ℓ < N`). For `n > 0` the plain twist
/// gives `−Σ sgn(m)` over signed divisors `m | n` with `m ≡ ℓ (mod N)`; the
/// half twist weights each term by `(−1)^{n/m}`.
pub fn gprime_cusp0_coeff(n_level: u32, ell: i64, twist: Twist, n: u64) -> Result<Rational> {
    check_k(n_level, ell)?;
    if twist == Twist::Half && !n_level.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "half twist needs even N, got {n_level}"
        )));
    }
    let big_n = n_level as i64;
    let ell = ell.rem_euclid(big_n);
    if n == 0 {
        return Ok(Rational::from((ell, big_n)) - Rational::from((1, 2)));
    }
    let mut total = 0i64;
    for d in divisors(n) {
        let d = d as i64;
        let sign_of_quotient = match twist {
            Twist::Plain => 1,
            Twist::Half => {
                if (n as i64 / d) % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        };
        if d.rem_euclid(big_n) == ell {
            total += sign_of_quotient;
        }
        if (-d).rem_euclid(big_n) == ell {
            total -= sign_of_quotient;
        }
    }
    Ok(Rational::from(-total))
}

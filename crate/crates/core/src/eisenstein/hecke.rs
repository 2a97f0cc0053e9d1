use rug::Rational;

use super::divisors;
use crate::arith::CycloElem;
use crate::{Error, Result};

/// `ζ(0, α) = ½ − α` for `0 < α ≤ 1` (at `α = 1` this is `ζ(0) = −½`).
pub fn hurwitz_zeta_zero(alpha: &Rational) -> Result<Rational> {
    if *alpha <= 0 || *alpha > 1 {
        return Err(Error::InvalidArgument(format!(
            "Hurwitz zeta at s = 0 needs 0 < α ≤ 1, got {alpha}"
        )));
    }
    Ok(Rational::from((1, 2)) - alpha)
}

/// Index `(a, b) mod N`, not both zero, of Hecke's `G_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeckeIndex {
    n: u32,
    a: u32,
    b: u32,
}

impl HeckeIndex {
    pub fn new(n: u32, a: i64, b: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("level N must be positive".into()));
        }
        let a = a.rem_euclid(n as i64) as u32;
        let b = b.rem_euclid(n as i64) as u32;
        if a == 0 && b == 0 {
            return Err(Error::InvalidArgument(
                "(a, b) ≡ (0, 0) mod N is not a valid Hecke index".into(),
            ));
        }
        Ok(HeckeIndex { n, a, b })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }
}

/// Representative of `x/N` in `(0, 1]`.
fn unit_interval_rep(x: u32, n: u32) -> Rational {
    if x == 0 {
        Rational::from(1)
    } else {
        Rational::from((x, n))
    }
}

/// Coefficient of `q^{n/N}` in `G_{a,b}(τ)/(2πi)`.
///
/// For `n > 0` this is `−(1/N) Σ sgn(m)·ζ^{bm}` over signed divisors
/// `m ∈ {±d : d | n}` with `n/m ≡ a (mod N)`. The constant term combines
/// the `s → 1` limit `ζ(s, b/N) − ζ(s, −b/N) → π·cot(πb/N)` (zero when
/// `b ≡ 0`) with the values of `ζ(0, ·)`.
pub fn alpha_coeff(idx: &HeckeIndex, n: u64) -> CycloElem {
    let level = idx.n;
    let big_n = level as i64;
    if n == 0 {
        let mut out = CycloElem::zero(level);
        if idx.a == 0 {
            // (1/N)·π·cot(πb/N)/(2πi) = (ζ^b + 1) / (2N(ζ^b − 1))
            let zb = CycloElem::zeta_pow(level, idx.b as i64);
            let one = CycloElem::one(level);
            let ratio = (&zb + &one).div(&(&zb - &one)).expect("ζ^b − 1 is a unit for b ≢ 0");
            out += &ratio.scale(&Rational::from((1, 2 * level)));
        }
        // −(πi/N)[ζ(0, a/N) − ζ(0, −a/N)] / (2πi)
        let plus = hurwitz_zeta_zero(&unit_interval_rep(idx.a, level)).unwrap();
        let minus = hurwitz_zeta_zero(&unit_interval_rep((level - idx.a) % level, level)).unwrap();
        let second = (plus - minus) * Rational::from((-1, 2 * level));
        out.add_term(0, &second);
        return out;
    }
    let mut acc = CycloElem::zero(level);
    let plus_one = Rational::from(1);
    let minus_one = Rational::from(-1);
    for d in divisors(n) {
        let d = d as i64;
        let quotient = n as i64 / d;
        if quotient.rem_euclid(big_n) == idx.a as i64 {
            acc.add_term(idx.b as i64 * d, &plus_one);
        }
        if (-quotient).rem_euclid(big_n) == idx.a as i64 {
            acc.add_term(-(idx.b as i64) * d, &minus_one);
        }
    }
    acc.scale(&Rational::from((-1, level)))
}

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::{Error, Result};

pub type BigReal = Float;
pub type BigComplex = Complex;

/// Working precision used when none is given (~115 decimal digits).
pub const DEFAULT_PREC: u32 = 384;
/// Bits withheld from reported results.
pub const GUARD_BITS: u32 = 32;
pub const MIN_PREC: u32 = 8;

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn two_pi_i(prec: u32) -> Complex {
    let two_pi = pi(prec) * 2u32;
    Complex::with_val(prec, (0, two_pi))
}

pub fn float_from_rational(r: &Rational, prec: u32) -> Float {
    Float::with_val(prec, r)
}

/// `log2 |x|`, with `-inf` for zero. Only used for diagnostics and tolerance
/// comparisons, so an `f64` is plenty.
pub fn log2_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (mant, exp) = x.to_f64_exp();
    mant.abs().log2() + exp as f64
}

/// Decimal digits carried by a result computed at `prec` bits.
pub fn reported_digits(prec: u32) -> usize {
    let bits = prec.saturating_sub(GUARD_BITS).max(MIN_PREC);
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn to_decimal_string(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits.max(1)))
}

pub fn parse_real(s: &str, prec: u32) -> Result<Float> {
    let parsed =
        Float::parse(s.trim()).map_err(|e| Error::InvalidArgument(format!("not a decimal number {s:?}: {e}")))?;
    Ok(Float::with_val(prec, parsed))
}

/// Parses `p`, `p/q` or a terminating decimal such as `-1.25` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits_int = int_part.trim_start_matches(['-', '+']);
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: Integer = if digits_int.is_empty() {
            Integer::new()
        } else {
            digits_int.parse().map_err(|_| bad())?
        };
        let scale = Integer::from(10u32).pow(frac_part.len() as u32);
        let frac: Integer = frac_part.parse().map_err(|_| bad())?;
        let mut value = Rational::from((whole * &scale + frac, scale));
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let value: Rational = s.parse().map_err(|_| bad())?;
    Ok(value)
}

/// Arithmetic–geometric mean of two positive reals.
pub fn agm(a: &Float, b: &Float, prec: u32) -> Result<Float> {
    agm_with_steps(a, b, prec).map(|(m, _)| m)
}

/// AGM together with the number of mean-pairs taken before convergence.
pub fn agm_with_steps(a: &Float, b: &Float, prec: u32) -> Result<(Float, u32)> {
    if !(a.is_finite() && b.is_finite()) || *a <= 0 || *b <= 0 {
        return Err(Error::Domain(format!(
            "agm needs positive arguments, got {} and {}",
            a.to_f64(),
            b.to_f64()
        )));
    }
    let work = prec + 16;
    let mut x = Float::with_val(work, a);
    let mut y = Float::with_val(work, b);
    let mut steps = 0u32;
    // relative gap below 2^-(work/2) means one more step lands at full precision
    let half = -((work / 2) as i32);
    loop {
        let gap = Float::with_val(work, &x - &y).abs() / &x;
        if gap.is_zero() {
            break;
        }
        let stop = gap.get_exp().is_none_or(|e| e < half);
        let mean = Float::with_val(work, &x + &y) / 2u32;
        let geo = Float::with_val(work, &x * &y).sqrt();
        x = mean;
        y = geo;
        steps += 1;
        if stop || steps > 4 * work {
            break;
        }
    }
    Ok((Float::with_val(prec, &x), steps))
}

/// `exp(2πi·τ·x)`. Fractional powers of `q = e^{2πiτ}` are always taken
/// through `τ`, so the branch is the one fixed by `τ`.
pub fn q_frac_pow(tau: &Complex, x: &Rational, prec: u32) -> Result<Complex> {
    if *tau.imag() <= 0 {
        return Err(Error::Domain("q-powers need Im τ > 0".into()));
    }
    if x.is_zero() {
        return Ok(Complex::with_val(prec, 1));
    }
    let work = prec + 16;
    let scale = Float::with_val(work, x);
    let arg = Complex::with_val(work, tau * two_pi_i(work)) * scale;
    Ok(Complex::with_val(prec, arg.exp()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agm_of_equal_arguments_is_the_argument() {
        let x = Float::with_val(200, 7) / 3u32;
        let m = agm(&x, &x, 200).unwrap();
        assert_eq!(m, x);
    }

    #[test]
    fn agm_matches_naive_iteration() {
        // independent oracle: plain iteration at generous precision, fixed step count
        let p = 300;
        let mut a = Float::with_val(p + 64, 1);
        let mut b = Float::with_val(p + 64, 0.5);
        for _ in 0..40 {
            let m = Float::with_val(p + 64, &a + &b) / 2u32;
            b = Float::with_val(p + 64, &a * &b).sqrt();
            a = m;
        }
        let got = agm(&Float::with_val(p, 1), &Float::with_val(p, 0.5), p).unwrap();
        let diff = Float::with_val(p, &got - &a).abs();
        assert!(log2_abs(&diff) < -(p as f64) + 2.0, "diff 2^{}", log2_abs(&diff));
    }

    #[test]
    fn agm_is_homogeneous_and_symmetric() {
        let p = 256;
        let a = Float::with_val(p, 3);
        let b = Float::with_val(p, 0.125);
        let m = agm(&a, &b, p).unwrap();
        let m_swapped = agm(&b, &a, p).unwrap();
        let m2 = agm(&(a.clone() * 2u32), &(b.clone() * 2u32), p).unwrap();
        let d1 = Float::with_val(p, &m - &m_swapped).abs();
        let d2 = Float::with_val(p, &m2 - &(m.clone() * 2u32)).abs();
        assert!(log2_abs(&d1) < -(p as f64) + 4.0);
        assert!(log2_abs(&d2) < -(p as f64) + 4.0);
    }

    #[test]
    fn agm_step_count_is_logarithmic_in_precision() {
        for p in [64u32, 128, 256, 512, 1024] {
            let (_, steps) = agm_with_steps(&Float::with_val(p, 1), &Float::with_val(p, 0.5), p).unwrap();
            let bound = 2 * (32 - p.leading_zeros()) + 4;
            assert!(steps <= bound, "p={p}: {steps} steps > {bound}");
        }
    }

    #[test]
    fn agm_rejects_non_positive() {
        let p = 64;
        assert!(agm(&Float::with_val(p, 0), &Float::with_val(p, 1), p).is_err());
        assert!(agm(&Float::with_val(p, -1), &Float::with_val(p, 1), p).is_err());
    }

    #[test]
    fn q_frac_pow_basics() {
        let p = 256;
        let tau = Complex::with_val(p, (0, 1));
        let one = q_frac_pow(&tau, &Rational::new(), p).unwrap();
        assert_eq!(one, Complex::with_val(p, 1));

        let q = q_frac_pow(&tau, &Rational::from(1), p).unwrap();
        let expected = Float::with_val(p, -(pi(p) * 2u32)).exp();
        let d = Float::with_val(p, q.real() - &expected).abs();
        assert!(log2_abs(&d) < -(p as f64) - 4.0);
        assert!(q.imag().is_zero() || log2_abs(q.imag()) < -(p as f64));

        let tau = Complex::with_val(p, (0.3, 0.7));
        let half = q_frac_pow(&tau, &Rational::from((1, 2)), p).unwrap();
        let q = q_frac_pow(&tau, &Rational::from(1), p).unwrap();
        let sq = Complex::with_val(p, half.square_ref());
        let d = Complex::with_val(p, sq - &q).abs().real().clone();
        assert!(log2_abs(&d) < -(p as f64) + 4.0);
    }

    #[test]
    fn q_frac_pow_rejects_lower_half_plane() {
        let tau = Complex::with_val(64, (0, -1));
        assert!(q_frac_pow(&tau, &Rational::from(1), 64).is_err());
    }

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::from((3, 4)));
        assert_eq!(parse_rational("-1.25").unwrap(), Rational::from((-5, 4)));
        assert_eq!(parse_rational("7").unwrap(), Rational::from(7));
        assert_eq!(parse_rational(".5").unwrap(), Rational::from((1, 2)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}

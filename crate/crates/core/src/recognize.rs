//! Recognition of a high-precision real as a rational of bounded height.

use rug::{Float, Integer, Rational};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Recognition {
    pub value: Rational,
    /// `|x − value|`
    pub residual: Float,
    /// `max(|numerator|, denominator)`
    pub height: Integer,
}

pub fn height(r: &Rational) -> Integer {
    let num = Integer::from(r.numer().abs_ref());
    num.max(r.denom().clone())
}

/// Finds `p/q` with `max(|p|, q) ≤ max_height` and `|x − p/q| ≤ tol`.
///
/// The continued fraction of `x` (exact, `x` being dyadic) is walked until
/// a partial quotient exceeds `2^{prec/2}` or denominators pass
/// `max_height`. With `tol < 1/(4·max_height²)` any qualifying rational is a
/// convergent and is unique; if two convergents qualify the tolerance was
/// too loose and an ambiguity error is returned.
pub fn recognize_rational(x: &Float, max_height: &Integer, tol: &Float) -> Result<Option<Recognition>> {
    if *max_height < 1 {
        return Err(Error::InvalidArgument("max_height must be at least 1".into()));
    }
    if !(tol.is_finite() && *tol > 0) {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let Some(exact) = x.to_rational() else {
        return Err(Error::InvalidArgument("value is not finite".into()));
    };
    let prec = x.prec();
    let quotient_cap = Integer::from(1) << (prec / 2);
    let work = prec + 64;

    let mut found: Option<Recognition> = None;
    let (mut h_prev, mut h) = (Integer::from(0), Integer::from(1));
    let (mut k_prev, mut k) = (Integer::from(1), Integer::from(0));
    let mut rest = exact;
    loop {
        let a = Integer::from(rest.floor_ref());
        // a huge partial quotient means x is a convergent to working precision
        if k != 0 && a > quotient_cap {
            break;
        }
        let h_next = Integer::from(&a * &h) + &h_prev;
        let k_next = Integer::from(&a * &k) + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if k > *max_height {
            break;
        }
        let candidate = Rational::from((h.clone(), k.clone()));
        let residual = Float::with_val(work, x - &candidate).abs();
        if height(&candidate) <= *max_height && residual <= *tol {
            if let Some(prev) = &found {
                return Err(Error::AmbiguousRecognition(format!(
                    "both {} and {} lie within the tolerance",
                    prev.value, candidate
                )));
            }
            found = Some(Recognition {
                height: height(&candidate),
                value: candidate,
                residual: Float::with_val(prec, residual),
            });
        }
        let frac = rest - a;
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    Ok(found)
}

/// Whether `2^{−prec/2}` is small enough for unique recognition up to
/// `max_height`, i.e. `2^{−prec/2} < 1/(4·max_height²)`.
pub fn precision_supports_height(prec: u32, max_height: &Integer) -> bool {
    let h2 = Integer::from(max_height.square_ref()) * 4u32;
    (h2.significant_bits() as u64) < (prec / 2) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn f(s: &str, prec: u32) -> Float {
        Float::with_val(prec, Float::parse(s).unwrap())
    }

    #[test]
    fn exact_quarter() {
        let x = Float::with_val(384, 0.25);
        let r = recognize_rational(&x, &Integer::from(1_000_000), &f("1e-100", 384))
            .unwrap()
            .unwrap();
        assert_eq!(r.value, Rational::from((1, 4)));
        assert_eq!(r.height, 4);
        assert!(r.residual.is_zero());
    }

    #[test]
    fn pi_is_not_recognized() {
        let pi = f("3.1415926535897932384626433832795028841971693993751", 384);
        let r = recognize_rational(&pi, &Integer::from(1_000_000), &f("1e-40", 384)).unwrap();
        assert!(r.is_none());
        let pi = Float::with_val(384, Constant::Pi);
        assert!(recognize_rational(&pi, &Integer::from(1_000_000), &f("1e-40", 384))
            .unwrap()
            .is_none());
    }

    #[test]
    fn negative_and_integer_values() {
        let prec = 256;
        let x = Float::with_val(prec, Rational::from((-2, 5)));
        let r = recognize_rational(&x, &Integer::from(100), &f("1e-50", prec))
            .unwrap()
            .unwrap();
        assert_eq!(r.value, Rational::from((-2, 5)));
        let x = Float::with_val(prec, -3);
        let r = recognize_rational(&x, &Integer::from(100), &f("1e-50", prec))
            .unwrap()
            .unwrap();
        assert_eq!(r.value, -3);
    }

    #[test]
    fn height_counts_numerator() {
        // 2001/2 has denominator 2 but height 2001
        let x = Float::with_val(128, 1000.5);
        assert!(recognize_rational(&x, &Integer::from(10), &f("1e-20", 128))
            .unwrap()
            .is_none());
        assert!(recognize_rational(&x, &Integer::from(2001), &f("1e-20", 128))
            .unwrap()
            .is_some());
    }

    #[test]
    fn loose_tolerance_is_ambiguous() {
        // 1/3 + 0.001: both 0/1 ... 1/3 convergents are within 0.5
        let x = Float::with_val(128, 0.334);
        let err = recognize_rational(&x, &Integer::from(10), &Float::with_val(128, 0.5)).unwrap_err();
        assert!(matches!(err, Error::AmbiguousRecognition(_)));
    }

    #[test]
    fn bad_arguments() {
        let x = Float::with_val(64, 0.5);
        assert!(recognize_rational(&x, &Integer::from(0), &Float::with_val(64, 1e-5)).is_err());
        assert!(recognize_rational(&x, &Integer::from(5), &Float::with_val(64, 0)).is_err());
    }

    #[test]
    fn precision_threshold() {
        assert!(precision_supports_height(384, &Integer::from(1_000_000_000_000u64)));
        assert!(!precision_supports_height(64, &Integer::from(1_000_000_000_000u64)));
    }
}

use rug::float::Constant;
use rug::{Float, Rational};

use crate::{Error, Result};

fn eval_cubic(coef: &[Float; 3], x: &Float, work: u32) -> (Float, Float) {
    let [a0, a1, a2] = coef;
    // Horner for f and f'
    let mut f = Float::with_val(work, x + a2);
    f *= x;
    f += a1;
    let mut df = Float::with_val(work, x * 3u32);
    df += Float::with_val(work, a2 * 2u32);
    df *= x;
    df += a1;
    f *= x;
    f += a0;
    (f, df)
}

/// Real roots of `x³ + A2·x² + A1·x + A0`, largest first. Exactly three or
/// one, depending on the sign of the discriminant; a repeated root is an
/// error.
pub fn cubic_real_roots(coeffs: &[Rational; 3], prec: u32) -> Result<Vec<Float>> {
    let [a0, a1, a2] = coeffs;
    // x = y − A2/3 gives y³ + p·y + q
    let shift = Rational::from(a2 / 3u32);
    let p = a1 - Rational::from(a2 * &shift);
    let q = Rational::from(&shift * &shift) * &shift * 2u32 - Rational::from(&shift * a1) + a0;
    let p3 = Rational::from(&p * &p) * &p;
    let disc = -(p3 * 4u32) - Rational::from(&q * &q) * 27u32;
    if disc == 0 {
        return Err(Error::SingularCurve);
    }

    let work = prec + 64;
    let pf = Float::with_val(work, &p);
    let qf = Float::with_val(work, &q);
    // m = √(|p|/3); the trigonometric/hyperbolic argument is (3q/(2p))·√(3/|p|)
    let abs_p_3 = Float::with_val(work, pf.abs_ref()) / 3u32;
    let m = Float::with_val(work, abs_p_3.sqrt_ref());
    let scaled_q = || -> Float {
        let ratio = Float::with_val(work, &qf * 3u32) / Float::with_val(work, &pf * 2u32);
        ratio / &m
    };
    let mut ys: Vec<Float> = if disc > 0 {
        // three real roots, p < 0
        let arg = scaled_q().clamp(&-1i32, &1i32);
        let theta = arg.acos() / 3u32;
        let two_pi_3 = Float::with_val(work, Constant::Pi) * 2u32 / 3u32;
        (0..3u32)
            .map(|j| {
                let angle = Float::with_val(work, &theta - Float::with_val(work, &two_pi_3 * j));
                Float::with_val(work, &m * 2u32) * angle.cos()
            })
            .collect()
    } else if p < 0 {
        let c = Float::with_val(work, scaled_q().abs_ref()).acosh() / 3u32;
        let sign = if q > 0 { -2i32 } else { 2i32 };
        vec![Float::with_val(work, &m * c.cosh()) * sign]
    } else if p > 0 {
        let arg = scaled_q();
        vec![Float::with_val(work, &m * (arg.asinh() / 3u32).sinh()) * -2i32]
    } else {
        vec![-qf.clone().cbrt()]
    };

    let shift_f = Float::with_val(work, &shift);
    let coef = [
        Float::with_val(work, a0),
        Float::with_val(work, a1),
        Float::with_val(work, a2),
    ];
    for y in ys.iter_mut() {
        let mut x = Float::with_val(work, &*y - &shift_f);
        for _ in 0..8 {
            let (f, df) = eval_cubic(&coef, &x, work);
            if f.is_zero() || df.is_zero() {
                break;
            }
            let step = f / df;
            let small = match (step.get_exp(), x.get_exp()) {
                (Some(es), Some(ex)) => es < ex - work as i32 + 8,
                _ => true,
            };
            x -= step;
            if small {
                break;
            }
        }
        *y = x;
    }
    ys.sort_by(|a, b| b.partial_cmp(a).expect("roots are finite"));
    Ok(ys.into_iter().map(|x| Float::with_val(prec, x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::log2_abs;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn assert_close(x: &Float, v: f64) {
        let d = Float::with_val(x.prec(), x - v);
        assert!(
            log2_abs(&d) < -(x.prec() as f64) + 8.0 || (x.to_f64() - v).abs() < 1e-300,
            "{x} vs {v}"
        );
    }

    #[test]
    fn three_real_roots() {
        // x³ − x
        let roots = cubic_real_roots(&[r(0), r(-1), r(0)], 200).unwrap();
        assert_eq!(roots.len(), 3);
        assert_close(&roots[0], 1.0);
        assert!(log2_abs(&roots[1]) < -190.0);
        assert_close(&roots[2], -1.0);
        // (x−1)(x−2)(x+3) = x³ − 7x + 6
        let roots = cubic_real_roots(&[r(6), r(-7), r(0)], 200).unwrap();
        assert_close(&roots[0], 2.0);
        assert_close(&roots[1], 1.0);
        assert_close(&roots[2], -3.0);
    }

    #[test]
    fn one_real_root_all_branches() {
        // x³ + x + 2 = (x + 1)(x² − x + 2): p > 0
        let roots = cubic_real_roots(&[r(2), r(1), r(0)], 200).unwrap();
        assert_eq!(roots.len(), 1);
        assert_close(&roots[0], -1.0);
        // x³ − 8: p = 0
        let roots = cubic_real_roots(&[r(-8), r(0), r(0)], 200).unwrap();
        assert_close(&roots[0], 2.0);
        // (x − 3)(x² + x + 1) = x³ − 2x² − 2x − 3: p < 0 after shifting
        let roots = cubic_real_roots(&[r(-3), r(-2), r(-2)], 200).unwrap();
        assert_eq!(roots.len(), 1);
        assert_close(&roots[0], 3.0);
    }

    #[test]
    fn repeated_root_is_singular() {
        // x²(x − 1)
        assert_eq!(
            cubic_real_roots(&[r(0), r(0), r(-1)], 100).unwrap_err(),
            Error::SingularCurve
        );
    }

    #[test]
    fn nearly_coincident_roots_are_polished() {
        // (x − 1)(x − 1 − 2^-40)(x + 5), exact rational coefficients
        let e = Rational::from((1, 1u64 << 40));
        let r1 = Rational::from(1);
        let r2 = Rational::from(1 + &e);
        let r3 = Rational::from(-5);
        let s1 = Rational::from(&r1 + &r2) + &r3;
        let s2 = Rational::from(&r1 * &r2) + Rational::from(&r1 * &r3) + Rational::from(&r2 * &r3);
        let s3 = Rational::from(&r1 * &r2) * &r3;
        let roots = cubic_real_roots(&[-s3, s2, -s1], 300).unwrap();
        let d = Float::with_val(300, &roots[0] - Float::with_val(300, &r2));
        assert!(log2_abs(&d) < -280.0);
        let d = Float::with_val(300, &roots[1] - 1u32);
        assert!(log2_abs(&d) < -280.0);
    }
}

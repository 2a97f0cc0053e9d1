use rug::float::Constant;
use rug::{Float, Rational};

use crate::{Error, Result};

/// Maximum number of step halvings before giving up.
const MAX_LEVELS: u32 = 14;

/// `∫_γ^∞ dx/√f(x)` for the monic cubic `f = x³ + A2·x² + A1·x + A0` with
/// largest real root `γ` (simple), to about `prec` bits.
///
/// With `f = (x − γ)·g(x)` and `x = γ + σ²v²/(1−v)²` the integral becomes
/// `∫_0^1 2σ/√(W² + B·W·p² + C·p⁴) dv` where `p = 1 − v`,
/// `W = γp² + σ²v²`, `g = x² + Bx + C`. That integrand is smooth on
/// `[0, 1]`; `σ = g(γ)^{1/4}` makes its end values equal. Evaluated with
/// tanh-sinh, halving the step until two levels agree.
pub fn period_integral(coeffs: &[Rational; 3], gamma: &Float, prec: u32) -> Result<Float> {
    let work = prec + 40;
    let [_, a1, a2] = coeffs;
    let gamma = Float::with_val(work, gamma);
    let b = Float::with_val(work, &gamma + Float::with_val(work, a2));
    let c = Float::with_val(work, &gamma * &b) + Float::with_val(work, a1);
    let g_gamma = Float::with_val(work, &gamma * &gamma) + Float::with_val(work, &b * &gamma) + &c;
    if g_gamma <= 0 {
        return Err(Error::Domain("largest root of the cubic is not simple".into()));
    }
    let sigma = g_gamma.sqrt().sqrt();
    let sigma_sq = Float::with_val(work, sigma.square_ref());
    let two_sigma = Float::with_val(work, &sigma * 2u32);

    let integrand = |v: &Float, p: &Float| -> Float {
        let p2 = Float::with_val(work, p.square_ref());
        let w = Float::with_val(work, &gamma * &p2) + Float::with_val(work, v.square_ref()) * &sigma_sq;
        let mut expr = Float::with_val(work, w.square_ref());
        expr += Float::with_val(work, &b * &w) * &p2;
        expr += Float::with_val(work, p2.square_ref()) * &c;
        Float::with_val(work, &two_sigma / expr.sqrt())
    };

    // complex roots of g land at v = ½ ± (i/2)·tan(φ/4), φ = arg(ρ − γ), which
    // can be close to the segment; splitting at ½ moves them to an endpoint
    let left = tanh_sinh_unit(
        |s, _| {
            let v = Float::with_val(work, s / 2u32);
            let p = Float::with_val(work, 1u32 - &v);
            integrand(&v, &p)
        },
        prec,
        work,
    )?;
    let right = tanh_sinh_unit(
        |_, comp| {
            let p = Float::with_val(work, comp / 2u32);
            let v = Float::with_val(work, 1u32 - &p);
            integrand(&v, &p)
        },
        prec,
        work,
    )?;
    Ok(Float::with_val(prec, (left + right) / 2u32))
}

/// Tanh-sinh on `[0, 1]`. The integrand receives `(x, 1 − x)` with both
/// computed directly so that neither end loses precision.
fn tanh_sinh_unit<F>(f: F, prec: u32, work: u32) -> Result<Float>
where
    F: Fn(&Float, &Float) -> Float,
{
    let half_pi = Float::with_val(work, Constant::Pi) / 2u32;
    // weights fall below 2^-(work+8) once (π/2)·sinh(t) > (work+8)·ln2/2
    let t_max = {
        let need = (work as f64 + 8.0) * std::f64::consts::LN_2 / std::f64::consts::PI;
        need.asinh() + 0.1
    };

    let node = |t: &Float| -> Float {
        let u = Float::with_val(work, t.sinh_ref()) * &half_pi;
        let e = Float::with_val(work, -(Float::with_val(work, &u * 2u32))).exp();
        let denom = Float::with_val(work, 1u32 + &e);
        let x = Float::with_val(work, denom.recip_ref());
        let one_minus = Float::with_val(work, &e / &denom);
        let w = Float::with_val(work, t.cosh_ref()) * &half_pi * 2u32 * &x * &one_minus;
        w * f(&x, &one_minus)
    };

    let sum_nodes = |h: &Float, step: usize, offset: usize| -> Float {
        let mut acc = Float::with_val(work, 0);
        let mut j = offset;
        loop {
            let t = Float::with_val(work, h * j as u32);
            if t.to_f64() > t_max {
                break;
            }
            if j == 0 {
                acc += node(&t);
            } else {
                acc += node(&t);
                acc += node(&-t);
            }
            j += step;
        }
        acc
    };

    let mut h = Float::with_val(work, 1);
    let mut sum = sum_nodes(&h, 1, 0);
    let mut estimate = Float::with_val(work, &sum * &h);
    let tol = -((prec as i32) + 16);
    let mut last_log2 = f64::INFINITY;
    for level in 1..=MAX_LEVELS {
        h /= 2u32;
        sum += sum_nodes(&h, 2, 1);
        let next = Float::with_val(work, &sum * &h);
        let diff = Float::with_val(work, &next - &estimate) / &next;
        estimate = next;
        last_log2 = crate::arith::log2_abs(&diff);
        if level >= 3 && (diff.is_zero() || last_log2 < tol as f64) {
            return Ok(Float::with_val(prec, estimate));
        }
    }
    Err(Error::QuadratureDiverged {
        levels: MAX_LEVELS,
        last_log2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::log2_abs;

    #[test]
    fn unit_interval_polynomial() {
        // ∫_0^1 3x² dx = 1
        let v = tanh_sinh_unit(|x, _| Float::with_val(200, x.square_ref()) * 3u32, 160, 200).unwrap();
        assert!(log2_abs(&Float::with_val(200, &v - 1u32)) < -150.0);
    }

    #[test]
    fn arctangent_integral() {
        // ∫_0^1 4/(1 + x²) dx = π
        let v = tanh_sinh_unit(
            |x, _| Float::with_val(200, 4u32) / (Float::with_val(200, x.square_ref()) + 1u32),
            160,
            200,
        )
        .unwrap();
        let pi = Float::with_val(200, Constant::Pi);
        assert!(log2_abs(&Float::with_val(200, &v - &pi)) < -150.0);
    }

    #[test]
    fn simple_cubic_against_beta_function() {
        // ∫_0^∞ dx/√(x³ + x) ... with f = x(x² + 1): closed form Γ(1/4)²/(2√π)
        let coeffs = [Rational::from(0), Rational::from(1), Rational::from(0)];
        let v = period_integral(&coeffs, &Float::with_val(256, 0), 200).unwrap();
        let g = Float::with_val(256, 0.25).gamma();
        let pi = Float::with_val(256, Constant::Pi);
        let expect = Float::with_val(256, g.square_ref()) / (pi.sqrt() * 2u32);
        assert!(log2_abs(&Float::with_val(256, &v - &expect)) < -190.0);
    }
}

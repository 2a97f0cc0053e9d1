use rug::{Complex, Float};

use super::series::power_tail_cutoff;
use crate::arith::log2_abs;
use crate::{Error, Result};

fn abs(z: &Complex, prec: u32) -> Float {
    Float::with_val(prec, z.abs_ref())
}

/// Lang's closed sum
/// `F(q, w) = −½ − w/(1−w) − Σ_{j≥1} q^j w/(1−q^j w) + Σ_{j≥1} q^j w^{−1}/(1−q^j w^{−1})`.
///
/// `F(q, ζ^k) = g_k(τ)/(2πi)` and `½ + F(q, q^{1/2} ζ^k) = h_k(τ)/(2πi)`.
/// Needs `|q| < 1` and `w` off the lattice `q^ℤ`.
pub fn lang_f(q: &Complex, w: &Complex, prec: u32) -> Result<Complex> {
    let work = prec + 32;
    let log2_q = log2_abs(&abs(q, work));
    if log2_q.is_nan() || log2_q >= 0.0 {
        return Err(Error::Domain("Lang's sum needs |q| < 1".into()));
    }
    if w.is_zero() {
        return Err(Error::Domain("w must be nonzero".into()));
    }
    let w = Complex::with_val(work, w);
    let w_inv = Complex::with_val(work, w.recip_ref());
    let log2_rho = log2_abs(&abs(&w, work)).abs();
    // terms are |q^j w^{±1}|/|1 − q^j w^{±1}| ≤ 2ρ|q|^j once ρ|q|^j ≤ ½
    let settle = ((1.0 + log2_rho) / -log2_q).ceil().max(1.0) as usize;
    let cutoff = power_tail_cutoff(log2_q, 0, 1.0 + log2_rho, (prec + 16) as f64)?.max(settle);
    let pole_tol = -((prec as f64) - 8.0);

    let one = Complex::with_val(work, 1);
    let term = |x: &Complex| -> Result<Complex> {
        let d = Complex::with_val(work, &one - x);
        if log2_abs(&abs(&d, work)) < pole_tol {
            return Err(Error::Pole("w lies on the lattice q^ℤ".into()));
        }
        Ok(Complex::with_val(work, x / &d))
    };

    let mut acc = Complex::with_val(work, -0.5);
    acc -= term(&w)?;
    let mut qj = Complex::with_val(work, q);
    for _ in 1..=cutoff {
        acc -= term(&Complex::with_val(work, &qj * &w))?;
        acc += term(&Complex::with_val(work, &qj * &w_inv))?;
        qj *= q;
    }
    Ok(Complex::with_val(prec, acc))
}

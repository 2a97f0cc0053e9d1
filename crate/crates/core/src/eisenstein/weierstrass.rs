use rug::{Complex, Float, Rational};

use super::series::power_tail_cutoff;
use crate::arith::{log2_abs, q_frac_pow, two_pi_i};
use crate::{Error, Result};

struct Setup {
    work: u32,
    q: Complex,
    w: Complex,
    w_inv: Complex,
    cutoff: usize,
}

/// `u = (rτ + s)/N` and `w = e^{2πiu}` with `0 ≤ r < N` after reduction
/// (`℘` is periodic, so `r` is taken mod `N`).
fn setup(tau: &Complex, r: i64, s: i64, n: u32, power: u32, prec: u32) -> Result<Setup> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let big_n = n as i64;
    let r = r.rem_euclid(big_n);
    let s = s.rem_euclid(big_n);
    if r == 0 && s == 0 {
        return Err(Error::Pole("(r, s) ≡ (0, 0): the point is a lattice point".into()));
    }
    let work = prec + 32;
    let q = q_frac_pow(tau, &Rational::from(1), work)?;
    let u_tau = Rational::from((r, big_n));
    let phase = Complex::with_val(
        work,
        two_pi_i(work) * Float::with_val(work, &Rational::from((s, big_n))),
    )
    .exp();
    let w = Complex::with_val(work, q_frac_pow(tau, &u_tau, work)? * phase);
    let w_inv = Complex::with_val(work, w.recip_ref());
    // |w^{±n} q^n| ≤ |q|^{n(1 − r/N)}, summed with weight n^power/(1 − |q|)
    let log2_q = log2_abs(&Float::with_val(work, q.abs_ref()));
    let decay = log2_q * (1.0 - r as f64 / n as f64);
    let log2_scale = 2.0 - (-(log2_q * std::f64::consts::LN_2).exp_m1()).log2();
    let cutoff = power_tail_cutoff(decay, power, log2_scale, (prec + 16) as f64)?;
    Ok(Setup {
        work,
        q,
        w,
        w_inv,
        cutoff,
    })
}

fn check_pole(d: &Complex, work: u32, prec: u32) -> Result<()> {
    if log2_abs(&Float::with_val(work, d.abs_ref())) < -((prec / 2) as f64) {
        return Err(Error::Pole("point is numerically on the lattice".into()));
    }
    Ok(())
}

/// `℘(u; ℤ + ℤτ)` at `u = (rτ + s)/N`:
/// `(2πi)²[1/12 + w/(1−w)² + Σ_n n qⁿ/(1−qⁿ)(wⁿ + w⁻ⁿ − 2)]`.
pub fn wp_qexp(tau: &Complex, r: i64, s: i64, n: u32, prec: u32) -> Result<Complex> {
    let Setup {
        work,
        q,
        w,
        w_inv,
        cutoff,
    } = setup(tau, r, s, n, 1, prec)?;
    let one_minus_w = Complex::with_val(work, 1 - &w);
    check_pole(&one_minus_w, work, prec)?;
    let mut acc = Complex::with_val(work, &w / Complex::with_val(work, one_minus_w.square_ref()));
    acc += Float::with_val(work, 12u32).recip();
    let mut qn = Complex::with_val(work, 1);
    let mut wn = Complex::with_val(work, 1);
    let mut wn_inv = Complex::with_val(work, 1);
    for m in 1..=cutoff {
        qn *= &q;
        wn *= &w;
        wn_inv *= &w_inv;
        let lam = Complex::with_val(work, &qn / Complex::with_val(work, 1 - &qn)) * m as u32;
        let bracket = Complex::with_val(work, &wn + &wn_inv) - 2u32;
        acc += lam * bracket;
    }
    let tpi = two_pi_i(work);
    let factor = Complex::with_val(work, tpi.square_ref());
    Ok(Complex::with_val(prec, acc * factor))
}

/// `℘′(u; ℤ + ℤτ)` at `u = (rτ + s)/N`:
/// `(2πi)³[w(1+w)/(1−w)³ + Σ_n n² qⁿ/(1−qⁿ)(wⁿ − w⁻ⁿ)]`.
pub fn wp_prime_qexp(tau: &Complex, r: i64, s: i64, n: u32, prec: u32) -> Result<Complex> {
    let Setup {
        work,
        q,
        w,
        w_inv,
        cutoff,
    } = setup(tau, r, s, n, 2, prec)?;
    let one_minus_w = Complex::with_val(work, 1 - &w);
    check_pole(&one_minus_w, work, prec)?;
    let cube = Complex::with_val(work, one_minus_w.square_ref()) * &one_minus_w;
    let mut acc = Complex::with_val(work, &w * Complex::with_val(work, 1 + &w)) / cube;
    let mut qn = Complex::with_val(work, 1);
    let mut wn = Complex::with_val(work, 1);
    let mut wn_inv = Complex::with_val(work, 1);
    for m in 1..=cutoff {
        qn *= &q;
        wn *= &w;
        wn_inv *= &w_inv;
        let lam = Complex::with_val(work, &qn / Complex::with_val(work, 1 - &qn)) * (m * m) as u32;
        acc += lam * Complex::with_val(work, &wn - &wn_inv);
    }
    let tpi = two_pi_i(work);
    let factor = Complex::with_val(work, tpi.square_ref()) * &tpi;
    Ok(Complex::with_val(prec, acc * factor))
}

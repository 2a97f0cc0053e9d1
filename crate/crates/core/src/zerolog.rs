//! `D₀(z) = Im(z/(1−z))` and its q-average `D₀,q(z) = Σ_{n∈ℤ} D₀(z·qⁿ)`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::arith::log2_abs;
use crate::periods::{TorsionCase, TorsionIndex};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct QAverageResult {
    pub value: Float,
    pub terms_used: usize,
    /// Bound on the neglected terms.
    pub tail_bound: Float,
}

/// `Im(z/(1−z))`, with `D₀(1) = 0`.
pub fn d0(z: &Complex, prec: u32) -> Float {
    let work = prec + 16;
    if *z == 1 {
        return Float::new(prec);
    }
    let denom = Complex::with_val(work, 1 - z);
    let ratio = Complex::with_val(work, z / &denom);
    Float::with_val(prec, ratio.imag())
}

fn abs_q(q: &Float) -> Result<Float> {
    let a = Float::with_val(q.prec(), q.abs_ref());
    if q.is_zero() || a >= 1 {
        return Err(Error::Domain("the q-average needs 0 < |q| < 1".into()));
    }
    Ok(a)
}

/// `2x^M/(1−x)²`.
fn tail(x: &Float, m: usize, work: u32) -> Float {
    let one_minus = Float::with_val(work, 1u32 - x);
    let num = Float::with_val(work, x.pow(m as u32)) * 2u32;
    num / Float::with_val(work, one_minus.square_ref())
}

/// Smallest `M` with `2|q|^M/(1−|q|)² < 2^{−(prec+16)}`.
pub fn truncation_terms(q: &Float, prec: u32) -> Result<usize> {
    let x = abs_q(q)?;
    let log2_x = log2_abs(&x);
    let log2_gap = log2_abs(&Float::with_val(x.prec(), 1u32 - &x));
    let target = -(prec as f64 + 16.0) - 1.0 + 2.0 * log2_gap;
    // M·log2 x < target
    Ok(((target / log2_x).floor() as usize + 1).max(1))
}

/// Replaces `z` by `z·q^j` with `|q| < |z| ≤ 1`; `D₀,q` is unchanged.
fn reduce_into_annulus(z: &Complex, q: &Float, work: u32) -> Result<Complex> {
    if z.is_zero() {
        return Err(Error::Domain("z must be nonzero".into()));
    }
    let log2_q = log2_abs(&Float::with_val(work, q.abs_ref()));
    let log2_z = log2_abs(&Float::with_val(work, z.abs_ref()));
    // shift by ⌊log|z|/log|q|⌋ first, then fix up rounding at the edges
    let mut z = Complex::with_val(work, z);
    let j = (log2_z / log2_q).floor();
    if j.abs() > 1e6 {
        return Err(Error::Domain("z is too far from the unit annulus".into()));
    }
    let qf = Float::with_val(work, q);
    let shift = |z: &mut Complex, by: i32| {
        let factor = Float::with_val(work, (&qf).pow(by));
        *z *= factor;
    };
    if j != 0.0 {
        shift(&mut z, -(j as i32));
    }
    for _ in 0..4 {
        let abs_z = Float::with_val(work, z.abs_ref());
        if abs_z > 1 {
            shift(&mut z, 1);
        } else if abs_z <= Float::with_val(work, qf.abs_ref()) {
            shift(&mut z, -1);
        } else {
            break;
        }
    }
    Ok(z)
}

/// `Σ_{n∈ℤ} D₀(z·qⁿ)` for real `q`, `0 < |q| < 1`, summed two-sided as
/// `Σ_{n≥0} D₀(z qⁿ) − Σ_{n≥1} D₀(z⁻¹ qⁿ)` after moving `z` into
/// `|q| < |z| ≤ 1`.
pub fn d0_q_average(z: &Complex, q: &Float, prec: u32) -> Result<QAverageResult> {
    let m = truncation_terms(q, prec)?;
    d0_q_average_truncated(z, q, m, prec)
}

/// As [`d0_q_average`] with an explicit number of terms `M ≥ 1` on each side.
pub fn d0_q_average_truncated(z: &Complex, q: &Float, m: usize, prec: u32) -> Result<QAverageResult> {
    let x = abs_q(q)?;
    if m == 0 {
        return Err(Error::InvalidArgument("at least one term is needed".into()));
    }
    let work = prec + 32;
    let z = reduce_into_annulus(z, q, work)?;
    let z_inv = Complex::with_val(work, z.recip_ref());
    let qf = Float::with_val(work, q);
    let mut acc = d0(&z, work);
    let mut fwd = z;
    let mut back = z_inv;
    for _ in 1..m {
        fwd *= &qf;
        back *= &qf;
        acc += d0(&fwd, work);
        acc -= d0(&back, work);
    }
    // back still needs its n = m term so both sides stop at the same |q|^M decay
    back *= &qf;
    acc -= d0(&back, work);
    Ok(QAverageResult {
        value: Float::with_val(prec, acc),
        terms_used: m,
        tail_bound: Float::with_val(prec, tail(&Float::with_val(work, &x), m, work)),
    })
}

/// `D₀,q(z₀)` for the coset of a real torsion point:
/// case A (`z₀ = ζ^k`): `D₀(z₀) + 2·Σ_{j≥1} D₀(z₀ qʲ)`;
/// case B (`z₀ = ζ^k q^{1/2}`, `q > 0`): `2·Σ_{j≥1} D₀(ζ^k q^{j−1/2})`.
pub fn d0_q_coset_average(index: &TorsionIndex, q: &Float, prec: u32) -> Result<QAverageResult> {
    let x = abs_q(q)?;
    let m = truncation_terms(q, prec)?;
    let work = prec + 32;
    let angle = Float::with_val(work, Constant::Pi) * 2u32 * index.k / index.n;
    let zeta = Complex::with_val(work, (angle.clone().cos(), angle.sin()));
    let qf = Float::with_val(work, q);
    let mut acc = Float::new(work);
    let mut w = zeta;
    match index.case {
        TorsionCase::A => {
            let head = d0(&w, work);
            for _ in 1..=m {
                w *= &qf;
                acc += d0(&w, work);
            }
            acc *= 2u32;
            acc += head;
        }
        TorsionCase::B => {
            if *q <= 0 {
                return Err(Error::Domain("case B needs q > 0".into()));
            }
            w *= Float::with_val(work, qf.sqrt_ref());
            for j in 1..=m {
                if j > 1 {
                    w *= &qf;
                }
                acc += d0(&w, work);
            }
            acc *= 2u32;
        }
    }
    Ok(QAverageResult {
        value: Float::with_val(prec, acc),
        terms_used: m,
        tail_bound: Float::with_val(prec, tail(&Float::with_val(work, &x), m, work)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q_frac_pow;
    use crate::eisenstein::{lang_f, roots_of_unity};
    use rug::Rational;

    fn c(re: f64, im: f64) -> Complex {
        Complex::with_val(128, (re, im))
    }

    #[test]
    fn d0_examples() {
        assert!(d0(&c(1.0, 0.0), 128).is_zero());
        assert!(d0(&c(0.3, 0.0), 128).is_zero());
        assert!(d0(&c(-7.0, 0.0), 128).is_zero());
        assert_eq!(d0(&c(0.0, 1.0), 128), 0.5);
    }

    #[test]
    fn d0_symmetries() {
        for (re, im) in [(0.3, 0.7), (-2.0, 0.1), (1.5, -3.0)] {
            let z = c(re, im);
            let conj = Complex::with_val(128, z.conj_ref());
            let inv = Complex::with_val(128, z.recip_ref());
            let a = d0(&z, 128);
            assert!(log2_abs(&(d0(&conj, 128) + &a)) < -120.0);
            assert!(log2_abs(&(d0(&inv, 128) + &a)) < -120.0);
        }
    }

    #[test]
    fn domain_checks() {
        let z = c(0.0, 1.0);
        assert!(d0_q_average(&z, &Float::with_val(64, 1), 64).is_err());
        assert!(d0_q_average(&z, &Float::with_val(64, -1.5), 64).is_err());
        assert!(d0_q_average(&z, &Float::with_val(64, 0), 64).is_err());
    }

    #[test]
    fn real_coset_averages_to_zero() {
        let q = Float::with_val(128, 0.2);
        let r = d0_q_average(&c(1.0, 0.0), &q, 100).unwrap();
        assert!(r.value.is_zero() || log2_abs(&r.value) < -100.0);
    }

    #[test]
    fn folded_matches_two_sided() {
        let prec = 200;
        for (n, q) in [(5u32, 0.3), (5, -0.4), (8, 0.05), (12, -0.7), (7, 0.9)] {
            let qf = Float::with_val(prec + 32, q);
            let roots = roots_of_unity(n, prec + 32);
            for k in 1..n {
                let idx = TorsionIndex {
                    n,
                    k,
                    case: TorsionCase::A,
                };
                let a = d0_q_coset_average(&idx, &qf, prec).unwrap();
                let b = d0_q_average(&roots[k as usize], &qf, prec).unwrap();
                let d = Float::with_val(prec, &a.value - &b.value);
                assert!(log2_abs(&d) < -(prec as f64) + 8.0, "N={n} k={k} q={q}");
            }
            if q > 0.0 && n % 2 == 0 {
                let sq = Float::with_val(prec + 32, qf.sqrt_ref());
                for k in 0..n {
                    let idx = TorsionIndex {
                        n,
                        k,
                        case: TorsionCase::B,
                    };
                    let z = Complex::with_val(prec + 32, &roots[k as usize] * &sq);
                    let a = d0_q_coset_average(&idx, &qf, prec).unwrap();
                    let b = d0_q_average(&z, &qf, prec).unwrap();
                    let d = Float::with_val(prec, &a.value - &b.value);
                    assert!(log2_abs(&d) < -(prec as f64) + 8.0, "B N={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn matches_lang_closed_sum() {
        // (1/i)·D₀,q(ζ^k) = g_k/(2πi) for real q
        let prec = 256;
        for tau in [Complex::with_val(prec, (0, 0.7)), Complex::with_val(prec, (0.5, 0.45))] {
            let q = q_frac_pow(&tau, &Rational::from(1), prec + 32).unwrap();
            let q_real = Float::with_val(prec + 32, q.real());
            let roots = roots_of_unity(7, prec + 32);
            for (k, root) in roots.iter().enumerate().skip(1) {
                let g = lang_f(&q, root, prec).unwrap();
                let avg = d0_q_average(root, &q_real, prec).unwrap();
                assert!(log2_abs(g.real()) < -(prec as f64) + 16.0);
                let d = Float::with_val(prec, &avg.value + g.imag());
                assert!(log2_abs(&d) < -(prec as f64) + 16.0, "k={k}");
            }
        }
    }

    #[test]
    fn shift_invariance_and_tail() {
        let prec = 160;
        let q = Float::with_val(prec + 32, -0.35);
        let z = c(0.2, 0.9);
        let a = d0_q_average(&z, &q, prec).unwrap();
        let zq = Complex::with_val(prec + 32, &z * &q);
        let b = d0_q_average(&zq, &q, prec).unwrap();
        let d = Float::with_val(prec, &a.value - &b.value);
        assert!(d.abs() <= Float::with_val(prec, &a.tail_bound * 2u32) + Float::with_val(prec, 1e-40));
        assert!(log2_abs(&a.tail_bound) < -(prec as f64 + 16.0));
        let doubled = d0_q_average_truncated(&z, &q, 2 * a.terms_used, prec).unwrap();
        let d = Float::with_val(prec, &doubled.value - &a.value).abs();
        assert!(d <= a.tail_bound);
    }
}

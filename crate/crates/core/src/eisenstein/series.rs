use std::fmt::Write as _;

use rug::{Complex, Rational};

use super::coeffs::{gk_coeff, gprime_cusp0_coeff, hk_coeff, Twist};
use super::hecke::{alpha_coeff, HeckeIndex};
use crate::arith::{q_frac_pow, two_pi_i, CycloElem};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Gk { k: i64 },
    Hk { k: i64 },
    Alpha { a: u32, b: u32 },
    Cusp0 { ell: i64, twist: Twist },
    Custom,
}

/// Truncated expansion `Σ_{n ≤ n_max} c_n q^{n/d}` with `c_n ∈ ℚ(ζ_N)`.
///
/// `coeff_bound` is a constant `B` with `|c_n| ≤ B·n` for every `n ≥ 1`
/// (including the coefficients that were not computed); it drives the tail
/// estimate in [`eval_series`].
#[derive(Clone, Debug)]
pub struct QExpansion {
    level: u32,
    denom: u32,
    coeffs: Vec<CycloElem>,
    coeff_bound: f64,
    kind: SeriesKind,
}

impl QExpansion {
    /// Every named family satisfies `|c_n| ≤ 2·σ_0(n) ≤ 2n`.
    const NAMED_BOUND: f64 = 2.0;

    pub fn gk(level: u32, k: i64, n_max: usize) -> Result<Self> {
        let coeffs = (0..=n_max as u64)
            .map(|n| gk_coeff(level, k, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(
            level,
            1,
            coeffs,
            Self::NAMED_BOUND,
            SeriesKind::Gk { k },
        ))
    }

    pub fn hk(level: u32, k: i64, n_max: usize) -> Result<Self> {
        let coeffs = (0..=n_max as u64)
            .map(|n| hk_coeff(level, k, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(
            level,
            2,
            coeffs,
            Self::NAMED_BOUND,
            SeriesKind::Hk { k },
        ))
    }

    pub fn alpha(idx: &HeckeIndex, n_max: usize) -> Self {
        let coeffs = (0..=n_max as u64).map(|n| alpha_coeff(idx, n)).collect();
        let kind = SeriesKind::Alpha { a: idx.a(), b: idx.b() };
        Self::assemble(idx.level(), idx.level(), coeffs, Self::NAMED_BOUND, kind)
    }

    pub fn cusp0(level: u32, ell: i64, twist: Twist, n_max: usize) -> Result<Self> {
        let coeffs = (0..=n_max as u64)
            .map(|n| gprime_cusp0_coeff(level, ell, twist, n).map(|c| CycloElem::from_rational(level, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(
            level,
            level,
            coeffs,
            Self::NAMED_BOUND,
            SeriesKind::Cusp0 { ell, twist },
        ))
    }

    /// Arbitrary coefficients on the grid `n/denom`; the caller vouches for
    /// `|c_n| ≤ coeff_bound·n`.
    pub fn from_coeffs(level: u32, denom: u32, coeffs: Vec<CycloElem>, coeff_bound: f64) -> Result<Self> {
        if denom == 0 || level == 0 {
            return Err(Error::InvalidArgument("level and denominator must be positive".into()));
        }
        if coeffs.iter().any(|c| c.conductor() != level) {
            return Err(Error::InvalidArgument(
                "coefficients live in a different cyclotomic field".into(),
            ));
        }
        if !(coeff_bound.is_finite() && coeff_bound >= 0.0) {
            return Err(Error::InvalidArgument(
                "coefficient bound must be finite and non-negative".into(),
            ));
        }
        Ok(Self::assemble(level, denom, coeffs, coeff_bound, SeriesKind::Custom))
    }

    fn assemble(level: u32, denom: u32, coeffs: Vec<CycloElem>, coeff_bound: f64, kind: SeriesKind) -> Self {
        QExpansion {
            level,
            denom,
            coeffs,
            coeff_bound,
            kind,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Exponents are `n / denom()`.
    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff_bound(&self) -> f64 {
        self.coeff_bound
    }

    pub fn kind(&self) -> &SeriesKind {
        &self.kind
    }

    /// One line per coefficient: `n/d<TAB>c_n` with `c_n` as a polynomial in
    /// `z = ζ_N` reduced mod `Φ_N`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{n}/{}\t{}", self.denom, c.to_poly_string());
        }
        out
    }
}

/// `[e^{2πi·j/N} for j in 0..N]`.
pub fn roots_of_unity(n: u32, prec: u32) -> Vec<Complex> {
    let step = Complex::with_val(prec, two_pi_i(prec) / n);
    (0..n).map(|j| Complex::with_val(prec, &step * j).exp()).collect()
}

/// Smallest `M` such that `scale·Σ_{n>M} n^power·x^n < 2^{−target_bits}`,
/// given `log2 x < 0`.
///
/// Once `n ≥ 2·power/(−ln x)` consecutive terms shrink by at least `√x`, so
/// the tail is at most `scale·(M+1)^power·x^{M+1}/(1 − √x)`.
pub(crate) fn power_tail_cutoff(log2_x: f64, power: u32, log2_scale: f64, target_bits: f64) -> Result<usize> {
    if log2_x.is_nan() || log2_x >= 0.0 {
        return Err(Error::Domain(format!("series ratio must be below 1 (log2 = {log2_x})")));
    }
    let ln_x = log2_x * std::f64::consts::LN_2;
    let log2_denom = (-(ln_x / 2.0).exp_m1()).log2();
    let start = ((2.0 * power as f64) / -ln_x).ceil().max(0.0) as usize;
    // the bound is eventually decreasing, so a linear scan from `start` works
    let mut m = start;
    loop {
        let m1 = (m + 1) as f64;
        let log2_tail = log2_scale + power as f64 * m1.log2() + m1 * log2_x - log2_denom;
        if log2_tail < -target_bits {
            return Ok(m);
        }
        m += 1;
        if m > 50_000_000 {
            return Err(Error::Domain("q is too close to the unit circle".into()));
        }
    }
}

fn log2_abs_q(tau: &Complex) -> Result<f64> {
    let im = tau.imag().to_f64();
    if im.is_nan() || im <= 0.0 {
        return Err(Error::Domain("q-expansions need Im τ > 0".into()));
    }
    Ok(-2.0 * std::f64::consts::PI * im * std::f64::consts::LOG2_E)
}

/// Number of coefficients (`n = 0..=M`) needed to evaluate `exp` at `τ` to
/// `prec` bits plus a 16-bit margin.
pub fn terms_needed(exp: &QExpansion, tau: &Complex, prec: u32) -> Result<usize> {
    let log2_x = log2_abs_q(tau)? / exp.denom as f64;
    let log2_scale = exp.coeff_bound.max(f64::MIN_POSITIVE).log2();
    power_tail_cutoff(log2_x, 1, log2_scale, (prec + 16) as f64).map(|m| m + 1)
}

/// `Σ_n c_n·q^{n/d}` at `q = e^{2πiτ}`, i.e. the form divided by `2πi`.
///
/// Fails with `InsufficientTruncation` if the expansion holds fewer
/// coefficients than the tail bound demands.
pub fn eval_series(exp: &QExpansion, tau: &Complex, prec: u32) -> Result<Complex> {
    let needed = terms_needed(exp, tau, prec)?;
    if exp.coeffs.len() < needed {
        return Err(Error::InsufficientTruncation {
            needed,
            available: exp.coeffs.len(),
        });
    }
    let work = prec + 32;
    let x = q_frac_pow(tau, &Rational::from((1, exp.denom)), work)?;
    let roots = roots_of_unity(exp.level, work);
    let mut acc = Complex::with_val(work, 0);
    for c in exp.coeffs[..needed].iter().rev() {
        acc *= &x;
        if !c.is_zero() {
            acc += c.embed_with_roots(&roots, work);
        }
    }
    Ok(Complex::with_val(prec, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::log2_abs;

    #[test]
    fn cutoff_controls_the_tail() {
        for (log2_x, power) in [(-0.5, 1u32), (-3.0, 2), (-0.05, 1), (-20.0, 2)] {
            let m = power_tail_cutoff(log2_x, power, 1.0, 100.0).unwrap();
            let x: f64 = log2_x.exp2();
            let mut tail = 0.0f64;
            for n in (m + 1)..(m + 200_000) {
                tail += 2.0 * (n as f64).powi(power as i32) * x.powi(n as i32);
            }
            assert!(
                tail.log2() < -100.0 || tail == 0.0,
                "x=2^{log2_x}: tail 2^{}",
                tail.log2()
            );
        }
        assert!(power_tail_cutoff(0.0, 1, 0.0, 10.0).is_err());
    }

    #[test]
    fn dump_format() {
        let g = QExpansion::gk(4, 1, 2).unwrap();
        let text = g.dump();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines, vec!["0/1\t-1/2*z", "1/1\t-2*z", "2/1\t-2*z"]);
    }

    #[test]
    fn truncation_is_checked() {
        let g = QExpansion::gk(5, 1, 3).unwrap();
        let tau = Complex::with_val(64, (0, 1));
        match eval_series(&g, &tau, 200) {
            Err(Error::InsufficientTruncation { needed, available }) => {
                assert_eq!(available, 4);
                assert!(needed > 4);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn roots_table() {
        let r = roots_of_unity(6, 128);
        let cube = Complex::with_val(128, &r[2] * &r[2]) * &r[2];
        let diff = Complex::with_val(128, cube - 1u32);
        assert!(log2_abs(&Float::with_val(128, diff.abs_ref())) < -120.0);
    }

    use rug::Float;
}

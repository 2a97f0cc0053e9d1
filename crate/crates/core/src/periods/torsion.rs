use rug::{Complex, Float, Rational};
use serde::Serialize;

use super::PeriodData;
use crate::arith::log2_abs;
use crate::curve::{CurveModel, CurvePoint};
use crate::eisenstein::{wp_prime_qexp, wp_qexp};
use crate::{Error, Result};

/// Position of a real `N`-torsion point in `ℂ/(ℤ + ℤτ)`:
/// `A` is `u = k/N`, `B` is `u = τ/2 + k/N` (two components, `N` even).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TorsionCase {
    A,
    B,
}

impl std::fmt::Display for TorsionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TorsionCase::A => "A",
            TorsionCase::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorsionIndex {
    pub n: u32,
    pub k: u32,
    pub case: TorsionCase,
}

impl TorsionIndex {
    /// `(r, s)` with `u = (rτ + s)/N`.
    pub fn lattice_coords(&self) -> (i64, i64) {
        match self.case {
            TorsionCase::A => (0, self.k as i64),
            TorsionCase::B => (self.n as i64 / 2, self.k as i64),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TorsionMatch {
    pub index: TorsionIndex,
    /// `log2` of the combined relative ℘/℘′ residual of the winner
    pub residual_log2: f64,
    /// same for the best rejected candidate
    pub runner_up_log2: f64,
}

/// Accepted residual (as `log2`) for the matching candidate.
pub fn match_tolerance_log2(prec: u32) -> f64 {
    -((prec as f64) - 48.0)
}

fn candidates(n: u32, q_positive: bool) -> Vec<TorsionIndex> {
    let mut out: Vec<_> = (1..n)
        .map(|k| TorsionIndex {
            n,
            k,
            case: TorsionCase::A,
        })
        .collect();
    if n.is_multiple_of(2) && q_positive {
        out.extend((0..n).map(|k| TorsionIndex {
            n,
            k,
            case: TorsionCase::B,
        }));
    }
    out
}

fn relative_residual(computed: &Complex, target: &Float, work: u32) -> f64 {
    let diff = Complex::with_val(work, computed - target);
    let scale = if log2_abs(target) > 0.0 { log2_abs(target) } else { 0.0 };
    log2_abs(&Float::with_val(work, diff.abs_ref())) - scale
}

/// Finds `(k, case)` with `℘(Ω⁺u) = x + b2/12` and `℘′(Ω⁺u) = 2y + a1x + a3`
/// by scanning the finitely many candidates `u`.
///
/// `pt` must be real, nonzero, and killed by `N`.
pub fn torsion_parameters(
    curve: &CurveModel,
    pt: &CurvePoint,
    n: u32,
    pd: &PeriodData,
    prec: u32,
) -> Result<TorsionMatch> {
    let Some((x, y)) = pt.coords() else {
        return Err(Error::InvalidArgument(
            "the point at infinity has no torsion coset".into(),
        ));
    };
    if n < 2 || !curve.scalar_mul(n as i64, pt).is_infinity() {
        return Err(Error::InvalidArgument(format!("point is not killed by N = {n}")));
    }
    let work = prec + 16;
    let inv = curve.invariants();
    let wp_target = Float::with_val(work, x + Rational::from(&inv.b2 / 12u32));
    let dwp_target = Float::with_val(work, curve.differential_denominator(x, y));
    let omega = Float::with_val(work, &pd.omega_plus);
    let omega2 = Float::with_val(work, omega.square_ref());
    let omega3 = Float::with_val(work, &omega2 * &omega);
    let tau = Complex::with_val(work, &pd.tau);

    let mut scored = Vec::new();
    for cand in candidates(n, pd.q > 0) {
        let (r, s) = cand.lattice_coords();
        let wp = wp_qexp(&tau, r, s, n, work)? / &omega2;
        let dwp = wp_prime_qexp(&tau, r, s, n, work)? / &omega3;
        let res = relative_residual(&wp, &wp_target, work).max(relative_residual(&dwp, &dwp_target, work));
        scored.push((res, cand));
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (best, index) = scored[0];
    let runner_up = scored.get(1).map_or(f64::INFINITY, |s| s.0);
    if best > match_tolerance_log2(prec) {
        return Err(Error::NoTorsionMatch { best_log2: best });
    }
    Ok(TorsionMatch {
        index,
        residual_log2: best,
        runner_up_log2: runner_up,
    })
}

use rug::float::Constant;
use rug::{Complex, Float};

use crate::arith::log2_abs;
use crate::curve::{CurveModel, CurvePoint};
use crate::eisenstein::{eval_series, terms_needed, QExpansion};
use crate::periods::{period_lattice, torsion_parameters, PeriodData, TorsionCase, TorsionIndex, TorsionMatch};
use crate::zerolog::d0_q_coset_average;
use crate::{Error, Result};

/// `R` with the data used to obtain it.
#[derive(Clone, Debug)]
pub struct RComputation {
    /// Path (i): from the folded q-average.
    pub r: Float,
    /// Path (ii): from the `g_k`/`h_k` q-series.
    pub r_series: Float,
    /// `log2 |r − r_series|`
    pub path_gap_log2: f64,
    pub index: TorsionIndex,
    pub torsion: TorsionMatch,
    pub period: PeriodData,
}

impl RComputation {
    pub fn case(&self) -> TorsionCase {
        self.index.case
    }
}

/// Tolerated `log2` gap between the two evaluations of `R`.
pub fn dual_path_tolerance_log2(prec: u32) -> f64 {
    -((prec as f64) - 64.0)
}

/// Normalized `D₀,q(z₀)·i` from the series at `τ`: `g_k` for case A, `h_k`
/// for case B (`−Im` of the series value).
fn series_average(index: &TorsionIndex, pd: &PeriodData, prec: u32) -> Result<Float> {
    let probe = match index.case {
        TorsionCase::A => QExpansion::gk(index.n, index.k as i64, 0)?,
        TorsionCase::B => QExpansion::hk(index.n, index.k as i64, 0)?,
    };
    let terms = terms_needed(&probe, &pd.tau, prec)?;
    let series = match index.case {
        TorsionCase::A => QExpansion::gk(index.n, index.k as i64, terms)?,
        TorsionCase::B => QExpansion::hk(index.n, index.k as i64, terms)?,
    };
    let value: Complex = eval_series(&series, &pd.tau, prec)?;
    Ok(-Float::with_val(prec, value.imag()))
}

/// `R = 2π·D₀,q(z₀)/Ω⁺` for the point `k·P`, where `z₀` is found by ℘
/// matching. Computed as a direct q-average and again from the q-series;
/// the two must agree to `2^{−(prec−64)}`.
pub fn compute_r(n: u32, k: i64, curve: &CurveModel, pt: &CurvePoint, prec: u32) -> Result<RComputation> {
    match curve.point_order(pt, n as u64) {
        Some(order) if order == n as u64 => {}
        _ => return Err(Error::InvalidArgument(format!("point does not have exact order {n}"))),
    }
    if k.rem_euclid(n as i64) == 0 {
        return Err(Error::InvalidArgument(format!("k = {k} is 0 mod {n}")));
    }
    let work = prec + 32;
    let pd = period_lattice(curve, work)?;
    let kp = curve.scalar_mul(k, pt);
    let torsion = torsion_parameters(curve, &kp, n, &pd, work)?;
    let index = torsion.index;

    let two_pi = Float::with_val(work, Constant::Pi) * 2u32;
    let scale = Float::with_val(work, &two_pi / &pd.omega_plus);
    let direct = d0_q_coset_average(&index, &pd.q, work)?;
    let r = Float::with_val(work, &direct.value * &scale);
    let r_series = series_average(&index, &pd, work)? * &scale;

    let gap = log2_abs(&Float::with_val(work, &r - &r_series));
    let tol = dual_path_tolerance_log2(prec);
    if gap > tol {
        return Err(Error::PathDisagreement {
            log2_diff: gap,
            log2_tol: tol,
        });
    }
    Ok(RComputation {
        r: Float::with_val(prec, r),
        r_series: Float::with_val(prec, r_series),
        path_gap_log2: gap,
        index,
        torsion,
        period: pd.with_torsion(index),
    })
}

//! Real period, normalized period lattice and torsion coset identification.
//!
//! Everything is computed for the differential `dx/(2y + a1·x + a3)` on the
//! completed-square model `y'² = f(x) = x³ + (b2/4)x² + (b4/2)x + b6/4`.

mod quadrature;
mod roots;
mod torsion;

use rug::float::Constant;
use rug::{Complex, Float};
use serde::Serialize;

use crate::arith::{agm, log2_abs};
use crate::curve::CurveModel;
use crate::{Error, Result};

pub use quadrature::period_integral;
pub use roots::cubic_real_roots;
pub use torsion::{match_tolerance_log2, torsion_parameters, TorsionCase, TorsionIndex, TorsionMatch};

/// Normalized period lattice `Ω⁺·(ℤ + ℤτ)` of a real curve.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub omega_plus: Float,
    /// `Ω⁺·τ`
    pub omega2: Complex,
    /// `Re τ ∈ {0, ½}`, `Im τ > 0`
    pub tau: Complex,
    /// `e^{2πiτ}`, real; positive iff there are two components
    pub q: Float,
    pub components: u8,
    /// `log2` of the relative gap between the AGM and quadrature values of `Ω⁺`
    pub dual_path_log2: f64,
    /// Filled in by [`PeriodData::with_torsion`].
    pub torsion: Option<TorsionIndex>,
}

impl PeriodData {
    pub fn with_torsion(mut self, index: TorsionIndex) -> Self {
        self.torsion = Some(index);
        self
    }

    pub fn precision(&self) -> u32 {
        self.omega_plus.prec()
    }
}

/// Which evaluation produced `Ω⁺`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PeriodPath {
    Agm,
    Quadrature,
}

struct AgmLattice {
    omega_plus: Float,
    tau: Complex,
}

fn agm_lattice(curve: &CurveModel, prec: u32) -> Result<AgmLattice> {
    let work = prec + 32;
    let coeffs = curve.completed_square_cubic();
    let roots = cubic_real_roots(&coeffs, work)?;
    let pi = Float::with_val(work, Constant::Pi);
    if roots.len() == 3 {
        let (e1, e2, e3) = (&roots[0], &roots[1], &roots[2]);
        let s13 = Float::with_val(work, e1 - e3).sqrt();
        let s12 = Float::with_val(work, e1 - e2).sqrt();
        let s23 = Float::with_val(work, e2 - e3).sqrt();
        let m1 = agm(&s13, &s12, work)?;
        let m2 = agm(&s13, &s23, work)?;
        let omega_plus = Float::with_val(work, &pi / &m1);
        let tau = Complex::with_val(work, (0, Float::with_val(work, &m1 / &m2)));
        Ok(AgmLattice { omega_plus, tau })
    } else {
        let e1 = &roots[0];
        let a2 = Float::with_val(work, &coeffs[2]);
        let a1 = Float::with_val(work, &coeffs[1]);
        let a = Float::with_val(work, e1 * 3u32) + &a2;
        // b = √f'(e1)
        let fp = Float::with_val(work, e1.square_ref()) * 3u32 + Float::with_val(work, &a2 * e1) * 2u32 + a1;
        let b = fp.sqrt();
        let two_sqrt_b = Float::with_val(work, b.sqrt_ref()) * 2u32;
        let plus = Float::with_val(work, &b * 2u32) + &a;
        let minus = Float::with_val(work, &b * 2u32) - &a;
        let omega_plus = Float::with_val(work, &pi * 2u32) / agm(&two_sqrt_b, &plus.sqrt(), work)?;
        let y = Float::with_val(work, &pi / agm(&two_sqrt_b, &minus.sqrt(), work)?);
        let tau = Complex::with_val(work, (0.5, y / &omega_plus));
        Ok(AgmLattice { omega_plus, tau })
    }
}

/// `Ω⁺` from the AGM of the roots of `f`.
pub fn real_period_agm(curve: &CurveModel, prec: u32) -> Result<Float> {
    Ok(Float::with_val(prec, agm_lattice(curve, prec)?.omega_plus))
}

/// `Ω⁺ = ∫_γ^∞ dx/√f(x)` by quadrature, `γ` the largest real root of `f`.
pub fn real_period_quadrature(curve: &CurveModel, prec: u32) -> Result<Float> {
    let coeffs = curve.completed_square_cubic();
    let roots = cubic_real_roots(&coeffs, prec + 64)?;
    period_integral(&coeffs, &roots[0], prec)
}

/// The path whose value [`real_period`] returns. With three real roots the
/// AGM formula is elementary; with one, quadrature avoids complex AGM
/// branches and the AGM value is the check.
pub fn primary_path(curve: &CurveModel) -> PeriodPath {
    if curve.real_components() == 2 {
        PeriodPath::Agm
    } else {
        PeriodPath::Quadrature
    }
}

fn relative_gap_log2(a: &Float, b: &Float) -> f64 {
    let d = Float::with_val(a.prec().max(b.prec()), a - b);
    log2_abs(&d) - log2_abs(b)
}

/// Largest tolerated gap (as `log2`) between the two `Ω⁺` evaluations.
pub fn dual_path_tolerance_log2(prec: u32) -> f64 {
    -((prec as f64) - 32.0)
}

/// Real period `Ω⁺ > 0`, cross-checked between AGM and quadrature.
pub fn real_period(curve: &CurveModel, prec: u32) -> Result<Float> {
    Ok(period_lattice(curve, prec)?.omega_plus)
}

/// Normalized lattice with `k` and the case left unset.
pub fn period_lattice(curve: &CurveModel, prec: u32) -> Result<PeriodData> {
    let agm_side = agm_lattice(curve, prec)?;
    let quad = real_period_quadrature(curve, prec + 16)?;
    let gap = relative_gap_log2(&quad, &agm_side.omega_plus);
    let tol = dual_path_tolerance_log2(prec);
    if gap > tol {
        return Err(Error::PathDisagreement {
            log2_diff: gap,
            log2_tol: tol,
        });
    }
    let omega_plus = match primary_path(curve) {
        PeriodPath::Agm => Float::with_val(prec, &agm_side.omega_plus),
        PeriodPath::Quadrature => Float::with_val(prec, &quad),
    };
    let work = prec + 32;
    let components = curve.real_components();
    let im = agm_side.tau.imag();
    let two_pi = Float::with_val(work, Constant::Pi) * 2u32;
    let mut q = Float::with_val(work, -(two_pi * im)).exp();
    if components == 1 {
        q = -q;
    }
    let omega2 = Complex::with_val(prec, &agm_side.tau * &omega_plus);
    Ok(PeriodData {
        omega_plus,
        omega2,
        tau: Complex::with_val(prec, &agm_side.tau),
        q: Float::with_val(prec, q),
        components,
        dual_path_log2: gap,
        torsion: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn curve(a: [i64; 5]) -> CurveModel {
        let [a1, a2, a3, a4, a6] = a.map(Rational::from);
        CurveModel::new(a1, a2, a3, a4, a6).unwrap()
    }

    #[test]
    fn congruent_number_curve() {
        // y² = x³ − x: Ω⁺ = ∫_1^∞ dx/√(x³ − x) = Γ(1/4)²/(2√(2π))
        let prec = 256;
        let pd = period_lattice(&curve([0, 0, 0, -1, 0]), prec).unwrap();
        let g = Float::with_val(prec, 0.25).gamma();
        let expect = Float::with_val(prec, g.square_ref()) / (Float::with_val(prec, Constant::Pi) * 2u32).sqrt() / 2u32;
        assert!(relative_gap_log2(&pd.omega_plus, &expect) < -(prec as f64) + 32.0);
        assert_eq!(pd.components, 2);
        assert!(pd.tau.real().is_zero());
        assert!(pd.q > 0);
        // square lattice: τ = i
        let d = Float::with_val(prec, pd.tau.imag() - 1u32);
        assert!(log2_abs(&d) < -200.0);
    }

    #[test]
    fn curve_11a3() {
        let prec = 384;
        let e = curve([0, -1, 1, 0, 0]);
        let pd = period_lattice(&e, prec).unwrap();
        assert_eq!(pd.components, 1);
        assert_eq!(pd.tau.real().to_f64(), 0.5);
        assert!(pd.q < 0 && pd.q > -1);
        assert!(pd.dual_path_log2 < dual_path_tolerance_log2(prec));
        // Ω⁺(11a3) = 6.34604652139...  (11a1 has Ω⁺/5, 11a3 has 5× that)
        assert!((pd.omega_plus.to_f64() - 6.346046521397767).abs() < 1e-12);
    }

    #[test]
    fn scaling_by_u() {
        // (x, y) → (4x, 8y) on y² = x³ − x gives y² = x³ − 16x with Ω⁺/2
        let prec = 200;
        let a = real_period(&curve([0, 0, 0, -1, 0]), prec).unwrap();
        let b = real_period(&curve([0, 0, 0, -16, 0]), prec).unwrap();
        let half = Float::with_val(prec, &a / 2u32);
        assert!(relative_gap_log2(&b, &half) < -160.0);
    }

    #[test]
    fn both_paths_on_both_signs() {
        let prec = 300;
        for a in [
            [0, 0, 0, -1, 0],
            [0, -1, 1, 0, 0],
            [1, 0, 1, -1, 0],
            [0, 0, 1, -7, 6],
            [1, -1, 1, -3, 3],
        ] {
            let e = curve(a);
            let x = real_period_agm(&e, prec).unwrap();
            let y = real_period_quadrature(&e, prec).unwrap();
            assert!(relative_gap_log2(&x, &y) < -(prec as f64) + 32.0, "{a:?}");
        }
    }
}

//! Reproduction of the table of `2N·R` on Kubert families.
//!
//! For each family instance `R = 2π·D₀,q(kP)/Ω⁺` is computed by two
//! independent routes, recognized as a rational and compared with the
//! table expression.

mod compute;
mod report;
mod table;

use std::time::Instant;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use crate::families::{admissible_samples, family_curve, rationals_by_height};
use crate::periods::TorsionCase;
use crate::recognize::{precision_supports_height, recognize_rational};
use crate::Result;

pub use compute::{compute_r, dual_path_tolerance_log2, RComputation};
pub use report::{ReportStatus, VerificationReport};
pub use table::{table_checksum, table_row, TableRow, TABLE};

/// Largest height accepted when recognizing `R`.
pub const MAX_HEIGHT: u64 = 1_000_000_000_000;

/// Parameters scanned when looking for a case-B instance.
pub const CASE_B_SCAN_LIMIT: usize = 400;

/// `2^{−prec/2}`, the tolerance for recognition and for the table match.
pub fn report_tolerance(prec: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
}

/// Verifies row `(n, k)` at a single parameter. Failures become reports.
pub fn verify_instance(row: &TableRow, t: &Rational, prec: u32) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        n: row.n,
        k: row.k,
        t: t.clone(),
        case: None,
        computed_r: None,
        recognized: None,
        expected: None,
        matched: false,
        residual: None,
        precision: prec,
        wall_time: 0.0,
        status: ReportStatus::Error,
        error: None,
    };
    let outcome = (|| -> Result<()> {
        report.expected = Some(row.expected_r(t)?);
        let (curve, pt) = family_curve(row.n, t)?;
        let comp = compute_r(row.n, row.k as i64, &curve, &pt, prec)?;
        report.case = Some(comp.case());
        let expected = report.expected.as_ref().unwrap();
        let residual = Float::with_val(prec, &comp.r - expected).abs();
        let tol = report_tolerance(prec);
        let max_height = Integer::from(MAX_HEIGHT);
        report.recognized = recognize_rational(&comp.r, &max_height, &tol)?.map(|r| r.value);
        report.matched = residual <= tol && report.recognized.as_ref() == Some(expected);
        report.residual = Some(residual);
        report.computed_r = Some(comp.r);
        report.status = if !precision_supports_height(prec, &max_height) {
            report.matched = false;
            ReportStatus::InsufficientPrecision
        } else if report.matched {
            ReportStatus::Match
        } else {
            ReportStatus::Mismatch
        };
        Ok(())
    })();
    if let Err(e) = outcome {
        report.error = Some(e.to_string());
        report.status = if precision_supports_height(prec, &Integer::from(MAX_HEIGHT)) {
            ReportStatus::Error
        } else {
            ReportStatus::InsufficientPrecision
        };
    }
    report.wall_time = start.elapsed().as_secs_f64();
    report
}

/// Record of the widened parameter search for a case-B instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseBScan {
    pub n: u32,
    pub k: u32,
    pub scanned: usize,
    pub found: Option<Rational>,
}

/// Whether `k·P_t` lies on the non-identity component of a two-component
/// real locus, i.e. is a case-B point.
pub fn is_case_b(n: u32, k: u32, t: &Rational) -> bool {
    let Ok((curve, pt)) = family_curve(n, t) else {
        return false;
    };
    curve.real_components() == 2 && !curve.on_identity_component(&curve.scalar_mul(k as i64, &pt))
}

/// The first `count` admissible parameters in height order. For even `N`,
/// if none of them is a case-B instance, further parameters are scanned
/// and the first case-B one is appended.
pub fn sample_parameters(row: &TableRow, count: usize) -> (Vec<Rational>, Option<CaseBScan>) {
    let mut params = admissible_samples(row.n, count);
    if count == 0 || !row.n.is_multiple_of(2) || params.iter().any(|t| is_case_b(row.n, row.k, t)) {
        return (params, None);
    }
    let mut scanned = 0;
    let mut found = None;
    for t in rationals_by_height().take(CASE_B_SCAN_LIMIT) {
        scanned += 1;
        if !params.contains(&t) && is_case_b(row.n, row.k, &t) {
            found = Some(t);
            break;
        }
    }
    if let Some(t) = &found {
        params.push(t.clone());
    }
    (
        params,
        Some(CaseBScan {
            n: row.n,
            k: row.k,
            scanned,
            found,
        }),
    )
}

fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| (a.n, a.k, &a.t).cmp(&(b.n, b.k, &b.t)));
}

/// All samples of one row, in parameter order.
pub fn verify_row(n: u32, k: u32, samples: usize, prec: u32) -> Result<(Vec<VerificationReport>, Option<CaseBScan>)> {
    let row = table_row(n, k)?;
    let (params, scan) = sample_parameters(row, samples);
    let mut reports: Vec<_> = params.par_iter().map(|t| verify_instance(row, t, prec)).collect();
    sort_reports(&mut reports);
    Ok((reports, scan))
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub reports: Vec<VerificationReport>,
    pub scans: Vec<CaseBScan>,
    pub checksum: String,
    pub precision: u32,
}

impl Summary {
    pub fn all_match(&self) -> bool {
        self.reports.iter().all(|r| r.matched)
    }

    pub fn count(&self, status: ReportStatus) -> usize {
        self.reports.iter().filter(|r| r.status == status).count()
    }

    pub fn case_b_count(&self) -> usize {
        self.reports.iter().filter(|r| r.case == Some(TorsionCase::B)).count()
    }

    /// 0 if everything matched, 1 on a mismatch or failed computation, 2
    /// if the precision was too low to decide.
    pub fn exit_code(&self) -> i32 {
        if self.all_match() {
            0
        } else if self
            .reports
            .iter()
            .any(|r| matches!(r.status, ReportStatus::Mismatch | ReportStatus::Error))
        {
            1
        } else {
            2
        }
    }
}

/// Every table row with `samples_per_row` parameters each (plus a case-B
/// instance for even `N` when needed). Reports are sorted by `(N, k, t)`.
pub fn run_all(prec: u32, samples_per_row: usize) -> Summary {
    let plans: Vec<_> = TABLE
        .iter()
        .map(|row| (row, sample_parameters(row, samples_per_row)))
        .collect();
    let jobs: Vec<_> = plans
        .iter()
        .flat_map(|(row, (params, _))| params.iter().map(move |t| (*row, t)))
        .collect();
    let mut reports: Vec<_> = jobs.par_iter().map(|(row, t)| verify_instance(row, t, prec)).collect();
    sort_reports(&mut reports);
    let scans = plans.into_iter().filter_map(|(_, (_, scan))| scan).collect();
    Summary {
        reports,
        scans,
        checksum: table_checksum(),
        precision: prec,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_a3_rows() {
        for (k, expect) in [(1u32, Rational::from((-1, 5))), (2, Rational::from((-2, 5)))] {
            let row = table_row(5, k).unwrap();
            let rep = verify_instance(row, &Rational::from(1), 256);
            assert_eq!(rep.status, ReportStatus::Match, "{:?}", rep.error);
            assert_eq!(rep.recognized, Some(expect));
            assert_eq!(rep.case, Some(TorsionCase::A));
        }
    }

    #[test]
    fn zero_samples_is_empty() {
        let s = run_all(128, 0);
        assert!(s.reports.is_empty());
        assert_eq!(s.exit_code(), 0);
    }

    #[test]
    fn low_precision_is_flagged() {
        let row = table_row(4, 1).unwrap();
        let rep = verify_instance(row, &Rational::from(1), 64);
        assert_eq!(rep.status, ReportStatus::InsufficientPrecision);
        assert!(!rep.matched);
    }

    #[test]
    fn bad_parameter_is_reported() {
        let row = table_row(8, 1).unwrap();
        let rep = verify_instance(row, &Rational::from(0), 256);
        assert_eq!(rep.status, ReportStatus::Error);
        assert!(rep.error.is_some());
    }
}

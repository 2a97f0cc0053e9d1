use std::fmt::Write as _;

use rug::{Float, Rational};
use serde_json::{json, Map, Value};

use crate::arith::{reported_digits, to_decimal_string};
use crate::periods::TorsionCase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportStatus {
    Match,
    Mismatch,
    /// The precision cannot separate rationals up to the recognition height.
    InsufficientPrecision,
    /// The computation itself failed; see `error`.
    Error,
}

impl ReportStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportStatus::Match => "match",
            ReportStatus::Mismatch => "mismatch",
            ReportStatus::InsufficientPrecision => "insufficient-precision",
            ReportStatus::Error => "error",
        }
    }
}

/// Outcome of verifying one family instance against its table row.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub n: u32,
    pub k: u32,
    pub t: Rational,
    pub case: Option<TorsionCase>,
    pub computed_r: Option<Float>,
    pub recognized: Option<Rational>,
    pub expected: Option<Rational>,
    pub matched: bool,
    pub residual: Option<Float>,
    pub precision: u32,
    /// seconds
    pub wall_time: f64,
    pub status: ReportStatus,
    pub error: Option<String>,
}

fn rational_str(r: &Rational) -> String {
    if *r.denom() == 1 {
        format!("{}/1", r.numer())
    } else {
        r.to_string()
    }
}

impl VerificationReport {
    fn real_str(&self, x: &Float) -> String {
        to_decimal_string(x, reported_digits(self.precision))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("N".into(), json!(self.n));
        m.insert("k".into(), json!(self.k));
        m.insert("t".into(), json!(rational_str(&self.t)));
        m.insert("case".into(), json!(self.case.map(|c| c.to_string())));
        m.insert(
            "computed_R".into(),
            json!(self.computed_r.as_ref().map(|x| self.real_str(x))),
        );
        m.insert("recognized".into(), json!(self.recognized.as_ref().map(rational_str)));
        m.insert("expected".into(), json!(self.expected.as_ref().map(rational_str)));
        m.insert("match".into(), json!(self.matched));
        m.insert(
            "residual".into(),
            json!(self.residual.as_ref().map(|x| to_decimal_string(x, 6))),
        );
        m.insert("precision".into(), json!(self.precision));
        m.insert("wall_time".into(), json!(self.wall_time));
        m.insert("status".into(), json!(self.status.as_str()));
        m.insert("error".into(), json!(self.error));
        Value::Object(m)
    }

    pub const CSV_HEADER: &'static str =
        "N,k,t,case,computed_R,recognized,expected,match,residual,precision,wall_time,status,error";

    pub fn to_csv(&self) -> String {
        let opt = |s: Option<String>| s.unwrap_or_default();
        let fields = [
            self.n.to_string(),
            self.k.to_string(),
            rational_str(&self.t),
            opt(self.case.map(|c| c.to_string())),
            opt(self.computed_r.as_ref().map(|x| self.real_str(x))),
            opt(self.recognized.as_ref().map(rational_str)),
            opt(self.expected.as_ref().map(rational_str)),
            self.matched.to_string(),
            opt(self.residual.as_ref().map(|x| to_decimal_string(x, 6))),
            self.precision.to_string(),
            format!("{:.3}", self.wall_time),
            self.status.as_str().to_string(),
            opt(self.error.clone()),
        ];
        fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "N={:<2} k={} t={:<8} case={} status={}",
            self.n,
            self.k,
            rational_str(&self.t),
            self.case.map_or("-".to_string(), |c| c.to_string()),
            self.status.as_str()
        );
        if let Some(e) = &self.expected {
            let _ = write!(s, " expected={}", rational_str(e));
        }
        if let Some(r) = &self.recognized {
            let _ = write!(s, " recognized={}", rational_str(r));
        }
        if let Some(res) = &self.residual {
            let _ = write!(s, " residual={}", to_decimal_string(res, 3));
        }
        let _ = write!(s, " ({:.2}s)", self.wall_time);
        if let Some(e) = &self.error {
            let _ = write!(s, " error: {e}");
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

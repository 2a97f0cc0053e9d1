//! Kubert's one-parameter families `(E_t, P_t)` with `P_t = (0,0)` of exact
//! order `N ∈ {3..10, 12}`.
//!
//! For `N ≥ 4` the curves are in Tate normal form
//! `E(b,c): y² + (1−c)xy − by = x³ − bx²`, with `(b,c)` rational in the
//! family parameter. `N = 3` uses `y² + t·xy + t·y = x³` (`a1 = a3 = t`).
//! Every instance is gated by an exact order computation.

use rug::Rational;

use crate::curve::{CurveModel, CurvePoint};
use crate::{Error, Result};

/// Orders with a rational family, in table order.
pub const FAMILY_ORDERS: [u32; 9] = [3, 4, 5, 6, 7, 8, 9, 10, 12];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub n: u32,
    pub param_name: &'static str,
    pub domain_exclusions: &'static str,
}

pub fn family_spec(n: u32) -> Result<FamilySpec> {
    let (param_name, domain_exclusions) = match n {
        3 => ("a1", "a1 = a3 = 0; a1 = 27 (Δ = t³(t − 27))"),
        4 => ("b", "b = 0, b = -1/16"),
        5 => ("c", "Δ(c) = 0: c = 0 and c² − 11c − 1 = 0 (no rational roots)"),
        6 => ("c", "c = 0, -1, -1/9"),
        7 => ("d", "d = 0, 1 and zeros of d³ − 8d² + 5d + 1"),
        8 => ("d", "d = 0 (pole), d = 1/2, 1 and zeros of 8d² − 8d + 1"),
        9 => ("f", "f = 0, 1 and zeros of f³ − 6f² + 3f + 1"),
        10 => ("f", "f = 0, 1/2, 1, poles f² − 3f + 1 = 0 and zeros of 4f² − 2f − 1"),
        12 => ("τ", "τ = 0, 1/2, 1 (pole) and zeros of 2τ² − 2τ + 1, 6τ² − 6τ + 1"),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no rational family for N = {n}; expected one of {FAMILY_ORDERS:?}"
            )))
        }
    };
    Ok(FamilySpec {
        n,
        param_name,
        domain_exclusions,
    })
}

fn inadmissible(n: u32, t: &Rational, reason: impl Into<String>) -> Error {
    Error::InadmissibleParameter {
        n,
        param: t.to_string(),
        reason: reason.into(),
    }
}

fn checked_div(n: u32, t: &Rational, num: Rational, den: Rational) -> Result<Rational> {
    if den.is_zero() {
        return Err(inadmissible(n, t, "parameter is a pole of the parametrization"));
    }
    Ok(num / den)
}

/// Tate normal form coefficients `(b, c)` for `N ≥ 4`.
pub fn kubert_bc(n: u32, t: &Rational) -> Result<(Rational, Rational)> {
    let one = || Rational::from(1);
    let sq = |x: &Rational| Rational::from(x.square_ref());
    let (b, c) = match n {
        4 => (t.clone(), Rational::new()),
        5 => (t.clone(), t.clone()),
        6 => (t + sq(t), t.clone()),
        7 => {
            let d = t;
            let c = sq(d) - d;
            let b = Rational::from(&c * d);
            (b, c)
        }
        8 => {
            let d = t;
            let b = (Rational::from(d * 2u32) - 1u32) * Rational::from(d - 1u32);
            let c = checked_div(n, t, b.clone(), d.clone())?;
            (b, c)
        }
        9 => {
            let f = t;
            let d = sq(f) - f + one();
            let c = f * Rational::from(&d - 1u32);
            let b = Rational::from(&c * &d);
            (b, c)
        }
        10 => {
            let f = t;
            let den = f - sq(&Rational::from(f - 1u32));
            let d = checked_div(n, t, sq(f), den)?;
            let c = f * Rational::from(&d - 1u32);
            let b = Rational::from(&c * &d);
            (b, c)
        }
        12 => {
            let tau = t;
            let m = checked_div(
                n,
                t,
                Rational::from(tau * 3u32) - sq(tau) * 3u32 - 1u32,
                Rational::from(tau - 1u32),
            )?;
            let f = checked_div(n, t, m.clone(), one() - tau)?;
            let d = Rational::from(&m + tau);
            let c = &f * Rational::from(&d - 1u32);
            let b = Rational::from(&c * &d);
            (b, c)
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no Tate normal form family for N = {n}"
            )))
        }
    };
    Ok((b, c))
}

/// `y² + (1−c)xy − by = x³ − bx²`.
pub fn tate_normal_form(b: &Rational, c: &Rational) -> Result<CurveModel> {
    CurveModel::new(
        Rational::from(1) - c,
        -b.clone(),
        -b.clone(),
        Rational::new(),
        Rational::new(),
    )
}

/// The curve and marked point of the order-`n` family at parameter `t`.
pub fn family_curve(n: u32, t: &Rational) -> Result<(CurveModel, CurvePoint)> {
    family_spec(n)?;
    let model = if n == 3 {
        CurveModel::new(t.clone(), 0, t.clone(), 0, 0)
    } else {
        let (b, c) = kubert_bc(n, t)?;
        tate_normal_form(&b, &c)
    };
    let e = model.map_err(|_| inadmissible(n, t, "discriminant vanishes"))?;
    let p = CurvePoint::affine(0, 0);
    match e.point_order(&p, 2 * n as u64) {
        Some(order) if order == n as u64 => Ok((e, p)),
        Some(order) => Err(inadmissible(n, t, format!("(0,0) has order {order}, not {n}"))),
        None => Err(inadmissible(n, t, format!("(0,0) has order > {}", 2 * n))),
    }
}

/// Rationals ordered by height `max(|p|, q)`, then denominator, then |p|,
/// positive before negative: `1, -1, 0, 2, -2, 1/2, -1/2, 3, ...`.
pub fn rationals_by_height() -> impl Iterator<Item = Rational> {
    (1u64..).flat_map(|h| {
        let mut level: Vec<(u64, u64)> = Vec::new();
        for q in 1..=h {
            for p in 0..=h {
                if p.max(q) == h && gcd(p, q) == 1 {
                    level.push((q, p));
                }
            }
        }
        level.sort_by_key(|&(q, p)| (q, p == 0, p));
        level.into_iter().flat_map(|(q, p)| {
            let pos = Rational::from((p, q));
            if p == 0 {
                vec![pos]
            } else {
                vec![pos.clone(), -pos]
            }
        })
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The first `count` admissible parameters in height order.
pub fn admissible_samples(n: u32, count: usize) -> Vec<Rational> {
    rationals_by_height()
        .filter(|t| family_curve(n, t).is_ok())
        .take(count)
        .collect()
}

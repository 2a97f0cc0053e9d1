//! Exact elliptic curves over ℚ in long Weierstrass form
//! `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
//!
//! No floating point enters here: the group law is exact, so `N·P = O` is a
//! ground truth that the numeric modules are checked against.

use std::fmt;

use rug::Rational;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub discriminant: Rational,
}

impl CurveInvariants {
    pub fn c4(&self) -> Rational {
        Rational::from(self.b2.square_ref()) - Rational::from(&self.b4 * 24u32)
    }

    pub fn c6(&self) -> Rational {
        let b2_cubed = Rational::from(self.b2.square_ref()) * &self.b2;
        -b2_cubed + Rational::from(&self.b2 * &self.b4) * 36u32 - Rational::from(&self.b6 * 216u32)
    }
}

impl CurvePoint {
    pub fn affine(x: impl Into<Rational>, y: impl Into<Rational>) -> Self {
        CurvePoint::Affine {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&Rational, &Rational)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl CurveModel {
    /// Builds a model, rejecting singular ones.
    pub fn new(
        a1: impl Into<Rational>,
        a2: impl Into<Rational>,
        a3: impl Into<Rational>,
        a4: impl Into<Rational>,
        a6: impl Into<Rational>,
    ) -> Result<Self> {
        let e = CurveModel {
            a1: a1.into(),
            a2: a2.into(),
            a3: a3.into(),
            a4: a4.into(),
            a6: a6.into(),
        };
        if e.invariants().discriminant.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(e)
    }

    pub fn invariants(&self) -> CurveInvariants {
        let CurveModel { a1, a2, a3, a4, a6 } = self;
        let a1a1 = Rational::from(a1.square_ref());
        let b2 = a1a1.clone() + Rational::from(a2 * 4u32);
        let b4 = Rational::from(a4 * 2u32) + Rational::from(a1 * a3);
        let b6 = Rational::from(a3.square_ref()) + Rational::from(a6 * 4u32);
        let b8 = Rational::from(&a1a1 * a6) + Rational::from(a2 * a6) * 4u32 - Rational::from(a1 * a3) * a4
            + Rational::from(a2 * a3) * a3
            - Rational::from(a4.square_ref());
        let b2_sq = Rational::from(b2.square_ref());
        let discriminant =
            -(b2_sq * &b8) - Rational::from(b4.square_ref()) * &b4 * 8u32 - Rational::from(b6.square_ref()) * 27u32
                + Rational::from(&b2 * &b4) * &b6 * 9u32;
        CurveInvariants {
            b2,
            b4,
            b6,
            b8,
            discriminant,
        }
    }

    /// Coefficients `[A0, A1, A2]` of the monic cubic
    /// `f(x) = x³ + A2·x² + A1·x + A0` of the model `y'² = f(x)`,
    /// `y' = y + (a1·x + a3)/2`.
    pub fn completed_square_cubic(&self) -> [Rational; 3] {
        let inv = self.invariants();
        [inv.b6 / 4u32, inv.b4 / 2u32, inv.b2 / 4u32]
    }

    /// Number of connected components of `E(ℝ)`.
    pub fn real_components(&self) -> u8 {
        if self.invariants().discriminant > 0 {
            2
        } else {
            1
        }
    }

    pub fn is_on_curve(&self, p: &CurvePoint) -> bool {
        let Some((x, y)) = p.coords() else {
            return true;
        };
        let lhs = Rational::from(y.square_ref()) + Rational::from(&self.a1 * x) * y + Rational::from(&self.a3 * y);
        let x2 = Rational::from(x.square_ref());
        let rhs = Rational::from(&x2 * x) + Rational::from(&self.a2 * &x2) + Rational::from(&self.a4 * x) + &self.a6;
        lhs == rhs
    }

    /// `2y + a1·x + a3`, the denominator of the invariant differential.
    pub fn differential_denominator(&self, x: &Rational, y: &Rational) -> Rational {
        Rational::from(y * 2u32) + Rational::from(&self.a1 * x) + &self.a3
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -(y + Rational::from(&self.a1 * x)) - &self.a3,
            },
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1) = match p.coords() {
            None => return q.clone(),
            Some(c) => c,
        };
        let (x2, y2) = match q.coords() {
            None => return p.clone(),
            Some(c) => c,
        };
        let (lambda, nu) = if x1 == x2 {
            let den = Rational::from(y1 + y2) + Rational::from(&self.a1 * x2) + &self.a3;
            if den.is_zero() {
                return CurvePoint::Infinity;
            }
            // tangent line; y1 = y2 here
            let den = self.differential_denominator(x1, y1);
            let x1_sq = Rational::from(x1.square_ref());
            let num = Rational::from(&x1_sq * 3u32) + Rational::from(&self.a2 * x1) * 2u32 + &self.a4
                - Rational::from(&self.a1 * y1);
            let nu_num = -Rational::from(&x1_sq * x1) + Rational::from(&self.a4 * x1) + Rational::from(&self.a6 * 2u32)
                - Rational::from(&self.a3 * y1);
            (num / &den, nu_num / den)
        } else {
            let dx = Rational::from(x2 - x1);
            let lambda = Rational::from(y2 - y1) / &dx;
            let nu = (Rational::from(y1 * x2) - Rational::from(y2 * x1)) / dx;
            (lambda, nu)
        };
        let x3 = Rational::from(lambda.square_ref()) + Rational::from(&self.a1 * &lambda) - &self.a2 - x1 - x2;
        let y3 = -Rational::from(&lambda + &self.a1) * &x3 - nu - &self.a3;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    /// `n·P` by double-and-add; negative `n` uses `−P`.
    pub fn scalar_mul(&self, n: i64, p: &CurvePoint) -> CurvePoint {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Smallest `n ≥ 1` with `n·P = O`, if it is at most `bound`.
    pub fn point_order(&self, p: &CurvePoint, bound: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// Whether a real point lies on the connected component of `E(ℝ)`
    /// containing `O`. With two components the identity component is
    /// `x ≥ e1`, which is exactly where `f' > 0` and `f'' > 0`.
    pub fn on_identity_component(&self, p: &CurvePoint) -> bool {
        let Some((x, _)) = p.coords() else {
            return true;
        };
        if self.real_components() == 1 {
            return true;
        }
        let [_, a1, a2] = self.completed_square_cubic();
        let x_sq = Rational::from(x.square_ref());
        let f1 = x_sq * 3u32 + Rational::from(&a2 * x) * 2u32 + a1;
        let f2 = Rational::from(x * 6u32) + a2 * 2u32;
        f1 > 0 && f2 > 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn curve_11a3() -> CurveModel {
        CurveModel::new(0, -1, -1, 0, 0).unwrap()
    }

    #[test]
    fn invariants_of_11a3() {
        let inv = curve_11a3().invariants();
        assert_eq!(inv.b2, r(-4));
        assert_eq!(inv.discriminant, r(-11));
        // 4·b8 = b2·b6 − b4²
        assert_eq!(
            Rational::from(&inv.b8 * 4u32),
            Rational::from(&inv.b2 * &inv.b6) - Rational::from(inv.b4.square_ref())
        );
        // 1728·Δ = c4³ − c6²
        let c4 = inv.c4();
        let c6 = inv.c6();
        assert_eq!(
            Rational::from(&inv.discriminant * 1728u32),
            Rational::from(c4.square_ref()) * &c4 - Rational::from(c6.square_ref())
        );
    }

    #[test]
    fn b2_of_y2_x3_plus_1() {
        let e = CurveModel::new(0, 0, 0, 0, 1).unwrap();
        assert_eq!(e.invariants().b2, r(0));
    }

    #[test]
    fn singular_model_is_rejected() {
        assert_eq!(CurveModel::new(0, 0, 0, 0, 0), Err(Error::SingularCurve));
        // y² = x³ + x²: node at the origin
        assert!(CurveModel::new(0, 1, 0, 0, 0).is_err());
    }

    #[test]
    fn group_law_on_11a3() {
        let e = curve_11a3();
        let p = CurvePoint::affine(0, 0);
        assert!(e.is_on_curve(&p));
        assert_eq!(e.add(&p, &CurvePoint::Infinity), p);
        assert_eq!(e.add(&p, &e.neg(&p)), CurvePoint::Infinity);
        // tangent at (0,0) is y = 0, meeting the curve again at (1,0)
        assert_eq!(e.double(&p), CurvePoint::affine(1, 1));
        assert_eq!(e.scalar_mul(3, &p), CurvePoint::affine(1, 0));
        assert_eq!(e.scalar_mul(4, &p), CurvePoint::affine(0, 1));
        assert_eq!(e.scalar_mul(0, &p), CurvePoint::Infinity);
        assert_eq!(e.scalar_mul(1, &p), p);
        assert_eq!(e.scalar_mul(5, &p), CurvePoint::Infinity);
        assert_eq!(e.scalar_mul(-1, &p), e.neg(&p));
        assert_eq!(e.point_order(&p, 20), Some(5));
        assert_eq!(e.point_order(&CurvePoint::Infinity, 1), Some(1));
        assert_eq!(e.point_order(&p, 4), None);
    }

    #[test]
    fn order_three_point() {
        let e = CurveModel::new(1, 0, 1, 0, 0).unwrap();
        let p = CurvePoint::affine(0, 0);
        assert_eq!(e.point_order(&p, 10), Some(3));
    }

    #[test]
    fn two_torsion_doubles_to_infinity() {
        // y² = x³ − x has full rational 2-torsion
        let e = CurveModel::new(0, 0, 0, -1, 0).unwrap();
        for x in [-1, 0, 1] {
            let p = CurvePoint::affine(x, 0);
            assert_eq!(e.double(&p), CurvePoint::Infinity);
            assert_eq!(e.point_order(&p, 5), Some(2));
        }
    }

    #[test]
    fn identity_component_test() {
        let e = CurveModel::new(0, 0, 0, -1, 0).unwrap();
        assert_eq!(e.real_components(), 2);
        assert!(e.on_identity_component(&CurvePoint::affine(1, 0)));
        assert!(!e.on_identity_component(&CurvePoint::affine(0, 0)));
        assert!(!e.on_identity_component(&CurvePoint::affine(-1, 0)));
        assert!(curve_11a3().on_identity_component(&CurvePoint::affine(0, 0)));
    }
}

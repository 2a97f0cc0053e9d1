use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Complex, Float, Integer, Rational};

use super::real::two_pi_i;
use crate::{Error, Result};

/// Element `Σ cᵢ ζ_N^i` of ℚ(ζ_N), `ζ_N = exp(2πi/N)`.
///
/// Coefficients are kept modulo `X^N − 1`, so multiplication by a power of
/// ζ is a rotation. Two elements are compared after reduction modulo the
/// cyclotomic polynomial Φ_N, which is what makes the representation
/// canonical.
#[derive(Clone, Debug)]
pub struct CycloElem {
    n: u32,
    coeffs: Vec<Rational>,
}

pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Integer>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Integer>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial,
/// from `Φ_n = (X^n − 1) / ∏_{d | n, d < n} Φ_d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<Integer>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![Integer::new(); n as usize + 1];
    num[0] = Integer::from(-1);
    num[n as usize] = Integer::from(1);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let divisor = cyclotomic_polynomial(d);
        num = exact_monic_div(&num, &divisor);
    }
    let poly = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, Arc::clone(&poly));
    poly
}

fn exact_monic_div(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![Integer::new(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= Integer::from(&c * dj);
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| *c == 0), "inexact cyclotomic division");
    quot
}

impl CycloElem {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        CycloElem {
            n,
            coeffs: vec![Rational::new(); n as usize],
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::from(1))
    }

    pub fn from_rational(n: u32, r: Rational) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[0] = r;
        e
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[k.rem_euclid(n as i64) as usize] = Rational::from(1);
        e
    }

    /// Builds `Σ cᵢ ζ^i`; exponents beyond `N` wrap around.
    pub fn from_coeffs(n: u32, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut e = Self::zero(n);
        for (i, c) in coeffs.into_iter().enumerate() {
            e.coeffs[i % n as usize] += c;
        }
        e
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Raw coefficients modulo `X^N − 1` (not necessarily canonical).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Adds `c·ζ^k` in place.
    pub fn add_term(&mut self, k: i64, c: &Rational) {
        let i = k.rem_euclid(self.n as i64) as usize;
        self.coeffs[i] += c;
    }

    /// Canonical representative modulo Φ_N (all coefficients of degree ≥ φ(N)
    /// are zero).
    pub fn reduce(&self) -> Self {
        let phi = cyclotomic_polynomial(self.n);
        let deg = phi.len() - 1;
        let mut c = self.coeffs.clone();
        for i in (deg..c.len()).rev() {
            if c[i].is_zero() {
                continue;
            }
            let lead = std::mem::take(&mut c[i]);
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if *pj != 0 {
                    c[i - deg + j] -= Rational::from(&lead * pj);
                }
            }
        }
        CycloElem { n: self.n, coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.reduce().coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational, if the element lies in ℚ.
    pub fn to_rational(&self) -> Option<Rational> {
        let r = self.reduce();
        if r.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(r.coeffs[0].clone())
        } else {
            None
        }
    }

    /// `ζ^k · self`.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.n as usize;
        let shift = k.rem_euclid(n as i64) as usize;
        let mut out = vec![Rational::new(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i + shift) % n] = c.clone();
        }
        CycloElem { n: self.n, coeffs: out }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * r)).collect(),
        }
    }

    /// Complex conjugate, i.e. `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut out = vec![Rational::new(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(n - i) % n] = c.clone();
        }
        CycloElem { n: self.n, coeffs: out }
    }

    pub fn inverse(&self) -> Result<Self> {
        let a = trim(self.reduce().coeffs);
        if a.is_empty() {
            return Err(Error::NotInvertible);
        }
        let m: Vec<Rational> = cyclotomic_polynomial(self.n).iter().map(Rational::from).collect();
        // extended Euclid in ℚ[X]: track s with s·a ≡ r (mod Φ_N)
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::from(1)]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s_next);
        }
        if r0.len() != 1 {
            return Err(Error::NotInvertible);
        }
        let unit = Rational::from(1) / &r0[0];
        let inv = s0.into_iter().map(|c| c * &unit);
        Ok(Self::from_coeffs(self.n, inv).reduce())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Numerical value in ℂ at `prec` bits.
    pub fn embed(&self, prec: u32) -> Complex {
        let work = prec + 16;
        let mut acc = Complex::with_val(work, 0);
        let step = Complex::with_val(work, two_pi_i(work) / self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = Complex::with_val(work, &step * i as u32).exp();
            acc += root * Float::with_val(work, c);
        }
        Complex::with_val(prec, acc)
    }

    /// Like [`embed`](Self::embed) but with `roots[i] = e^{2πi·i/N}` supplied,
    /// which avoids recomputing exponentials in hot loops.
    pub fn embed_with_roots(&self, roots: &[Complex], prec: u32) -> Complex {
        assert_eq!(roots.len(), self.n as usize, "root table has wrong length");
        let mut acc = Complex::with_val(prec, 0);
        for (c, root) in self.coeffs.iter().zip(roots) {
            if c.is_zero() {
                continue;
            }
            acc += Complex::with_val(prec, root * c);
        }
        acc
    }

    /// Reduced element written as a polynomial in `z = ζ_N`, highest degree
    /// first, e.g. `-z^3 + 2*z - 1/5`.
    pub fn to_poly_string(&self) -> String {
        let r = self.reduce();
        let mut out = String::new();
        for (i, c) in r.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let monomial = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if monomial.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&monomial);
            } else {
                out.push_str(&format!("{mag}*{monomial}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let db = b.len() - 1;
    let lead_inv = Rational::from(1) / b[db].clone();
    let mut quot = vec![Rational::new(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = Rational::from(&rem[i + db] * &lead_inv);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= Rational::from(&c * bj);
            }
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.reduce().coeffs == other.reduce().coeffs
    }
}

impl Eq for CycloElem {}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly_string())
    }
}

fn check_same(a: &CycloElem, b: &CycloElem) {
    assert_eq!(a.n, b.n, "mixing elements of different cyclotomic fields");
}

impl AddAssign<&CycloElem> for CycloElem {
    fn add_assign(&mut self, rhs: &CycloElem) {
        check_same(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycloElem> for CycloElem {
    fn sub_assign(&mut self, rhs: &CycloElem) {
        check_same(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Add<&CycloElem> for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CycloElem {
    type Output = CycloElem;
    fn add(mut self, rhs: CycloElem) -> CycloElem {
        self += &rhs;
        self
    }
}

impl Sub<&CycloElem> for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for CycloElem {
    type Output = CycloElem;
    fn sub(mut self, rhs: CycloElem) -> CycloElem {
        self -= &rhs;
        self
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

impl Mul<&CycloElem> for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        check_same(self, rhs);
        let n = self.n as usize;
        let mut out = vec![Rational::new(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % n] += Rational::from(a * b);
                }
            }
        }
        CycloElem { n: self.n, coeffs: out }
    }
}

impl Mul for CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: CycloElem) -> CycloElem {
        &self * &rhs
    }
}

impl Mul<&Rational> for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &Rational) -> CycloElem {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::log2_abs;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        let as_i64 = |n| -> Vec<i64> { cyclotomic_polynomial(n).iter().map(|c| c.to_i64().unwrap()).collect() };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn reduce_examples() {
        // ζ₄² = −1
        let x = &CycloElem::one(4) + &CycloElem::zeta_pow(4, 2);
        assert!(x.is_zero());
        // vanishing geometric sum
        let s = CycloElem::from_coeffs(5, (0..5).map(|_| Rational::from(1)));
        assert!(s.is_zero());
        // Φ₆ = X² − X + 1, so ζ² = ζ − 1
        let z2 = CycloElem::zeta_pow(6, 2).reduce();
        let expected = &CycloElem::zeta_pow(6, 1) - &CycloElem::one(6);
        assert_eq!(z2.coeffs(), expected.reduce().coeffs());
    }

    #[test]
    fn embed_examples() {
        let p = 128;
        let i = CycloElem::zeta_pow(4, 1).embed(p);
        assert!(log2_abs(i.real()) < -120.0);
        assert_eq!(Float::with_val(p, i.imag() - 1u32).to_f64(), 0.0);

        let s = (&CycloElem::zeta_pow(3, 1) + &CycloElem::zeta_pow(3, 2)).embed(p);
        let d = Float::with_val(p, s.real() + 1u32).abs();
        assert!(log2_abs(&d) < -120.0);

        let c = (&CycloElem::zeta_pow(5, 1) + &CycloElem::zeta_pow(5, 4)).embed(p);
        let two_cos = Float::with_val(p, crate::arith::pi(p) * 2u32 / 5u32).cos() * 2u32;
        let d = Float::with_val(p, c.real() - &two_cos).abs();
        assert!(log2_abs(&d) < -120.0);
    }

    #[test]
    fn inverse_and_division() {
        for n in [3u32, 4, 5, 7, 8, 9, 12] {
            let x = CycloElem::from_coeffs(n, (0..n as i64).map(|i| q(i * i - 3, i + 2)));
            if x.is_zero() {
                continue;
            }
            let inv = x.inverse().unwrap();
            assert_eq!(&x * &inv, CycloElem::one(n), "n = {n}");
        }
        assert!(CycloElem::zero(5).inverse().is_err());
        // (ζ+1)/(ζ−1) at N = 4 is −ζ
        let num = &CycloElem::zeta_pow(4, 1) + &CycloElem::one(4);
        let den = &CycloElem::zeta_pow(4, 1) - &CycloElem::one(4);
        assert_eq!(num.div(&den).unwrap(), -CycloElem::zeta_pow(4, 1));
    }

    #[test]
    fn rational_detection_and_printing() {
        let x = &CycloElem::zeta_pow(3, 1) + &CycloElem::zeta_pow(3, 2);
        assert_eq!(x.to_rational(), Some(Rational::from(-1)));
        assert_eq!(CycloElem::zeta_pow(5, 1).to_rational(), None);
        let y = CycloElem::from_coeffs(5, vec![q(-1, 5), q(2, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(y.to_poly_string(), "-z^3 + 2*z - 1/5");
        assert_eq!(CycloElem::zero(7).to_string(), "0");
        assert_eq!(CycloElem::zeta_pow(6, 2).to_string(), "z - 1");
    }

    #[test]
    fn conjugation_matches_embedding() {
        let p = 128;
        let x = CycloElem::from_coeffs(7, (0..7).map(|i| q(i + 1, 3)));
        let a = x.conj().embed(p);
        let b = x.embed(p);
        let d = Complex::with_val(p, a - b.conj()).abs().real().clone();
        assert!(log2_abs(&d) < -110.0);
    }
}

use rug::{Integer, Rational};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// One row of the table of `2N·R` as a rational function of the family
/// parameter. Polynomials are stored as integer coefficients, constant
/// term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u32,
    pub k: u32,
    pub param: &'static str,
    pub numer: &'static [i64],
    pub denom: &'static [i64],
}

const ONE: &[i64] = &[1];

/// `(1 − τ)³ = 1 − 3τ + 3τ² − τ³`
const ONE_MINUS_TAU_CUBED: &[i64] = &[1, -3, 3, -1];

pub const TABLE: [TableRow; 17] = [
    TableRow {
        n: 3,
        k: 1,
        param: "a1",
        numer: &[0, -1],
        denom: ONE,
    },
    TableRow {
        n: 4,
        k: 1,
        param: "b",
        numer: &[-2],
        denom: ONE,
    },
    TableRow {
        n: 5,
        k: 1,
        param: "c",
        numer: &[-3, 1],
        denom: ONE,
    },
    TableRow {
        n: 5,
        k: 2,
        param: "c",
        numer: &[-1, -3],
        denom: ONE,
    },
    TableRow {
        n: 6,
        k: 1,
        param: "c",
        numer: &[-4],
        denom: ONE,
    },
    TableRow {
        n: 7,
        k: 1,
        param: "d",
        numer: &[-3, -3, 1],
        denom: ONE,
    },
    TableRow {
        n: 7,
        k: 2,
        param: "d",
        numer: &[1, 1, -5],
        denom: ONE,
    },
    TableRow {
        n: 7,
        k: 3,
        param: "d",
        numer: &[5, -9, 3],
        denom: ONE,
    },
    TableRow {
        n: 8,
        k: 1,
        param: "d",
        numer: &[2, -8],
        denom: &[0, 1],
    },
    TableRow {
        n: 8,
        k: 3,
        param: "d",
        numer: &[6, -8],
        denom: &[0, 1],
    },
    TableRow {
        n: 9,
        k: 1,
        param: "f",
        numer: &[-5, 0, -3, 1],
        denom: ONE,
    },
    TableRow {
        n: 9,
        k: 2,
        param: "f",
        numer: &[-1, 0, 3, -7],
        denom: ONE,
    },
    TableRow {
        n: 9,
        k: 4,
        param: "f",
        numer: &[7, -18, 15, -5],
        denom: ONE,
    },
    TableRow {
        n: 10,
        k: 1,
        param: "f",
        numer: &[-4, -4],
        denom: ONE,
    },
    TableRow {
        n: 10,
        k: 3,
        param: "f",
        numer: &[8, -12],
        denom: ONE,
    },
    TableRow {
        n: 12,
        k: 1,
        param: "τ",
        numer: &[-10, 36, -48, 24],
        denom: ONE_MINUS_TAU_CUBED,
    },
    TableRow {
        n: 12,
        k: 5,
        param: "τ",
        numer: &[-2, 12, -24, 24],
        denom: ONE_MINUS_TAU_CUBED,
    },
];

fn eval_poly(coeffs: &[i64], t: &Rational) -> Rational {
    let mut acc = Rational::new();
    for &c in coeffs.iter().rev() {
        acc *= t;
        acc += Integer::from(c);
    }
    acc
}

fn poly_string(coeffs: &[i64], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let body = match (i, mag) {
            (0, _) => mag.to_string(),
            (_, 1) => var_pow(var, i),
            _ => format!("{mag}*{}", var_pow(var, i)),
        };
        let sign = if c < 0 { "-" } else { "+" };
        if terms.is_empty() {
            terms.push(if c < 0 { format!("-{body}") } else { body });
        } else {
            terms.push(format!("{sign} {body}"));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

fn var_pow(var: &str, i: usize) -> String {
    if i == 1 {
        var.to_string()
    } else {
        format!("{var}^{i}")
    }
}

impl TableRow {
    /// `2N·R` at parameter `t`.
    pub fn eval_2nr(&self, t: &Rational) -> Result<Rational> {
        let den = eval_poly(self.denom, t);
        if den.is_zero() {
            return Err(Error::InadmissibleParameter {
                n: self.n,
                param: t.to_string(),
                reason: "pole of the table expression".into(),
            });
        }
        Ok(eval_poly(self.numer, t) / den)
    }

    /// Expected `R = expr(t)/(2N)`.
    pub fn expected_r(&self, t: &Rational) -> Result<Rational> {
        Ok(self.eval_2nr(t)? / Integer::from(2 * self.n))
    }

    /// The expression for `2N·R`, e.g. `(24*τ^3 - 48*τ^2 + 36*τ - 10)/(-τ^3 + 3*τ^2 - 3*τ + 1)`.
    pub fn expr_string(&self) -> String {
        let num = poly_string(self.numer, self.param);
        if self.denom == ONE {
            num
        } else {
            format!("({num})/({})", poly_string(self.denom, self.param))
        }
    }
}

pub fn table_row(n: u32, k: u32) -> Result<&'static TableRow> {
    TABLE
        .iter()
        .find(|r| r.n == n && r.k == k)
        .ok_or_else(|| Error::InvalidArgument(format!("no table row for N = {n}, k = {k}")))
}

/// SHA-256 over one `N k numer | denom` line per row, hex-encoded.
pub fn table_checksum() -> String {
    let mut hasher = Sha256::new();
    for row in &TABLE {
        let line = format!("{} {} {:?} | {:?}\n", row.n, row.k, row.numer, row.denom);
        hasher.update(line.as_bytes());
    }
    hex::encode(hasher.finalize())
}

//! Exact Laurent polynomials in one variable `A` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

/// Exponent to coefficient; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · A^exp`.
    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// `d = −A² − A⁻²`, the value of a trivial circle.
    pub fn loop_value() -> Self {
        Self::from_terms([(-1, 2), (-1, -2)])
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i32)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `A → A⁻¹`.
    pub fn mirror(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Invariant under `A → A⁻¹`.
    pub fn is_palindromic(&self) -> bool {
        *self == self.mirror()
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Renders in `t = A⁻⁴`; exponents that are not multiples of 4 appear as
    /// fractions, e.g. `t^(1/2)`.
    pub fn to_t_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Lowest power of t first, i.e. highest power of A.
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let num = -e;
            let g = crate::lens::gcd(num as i64, 4) as i32;
            let (a, b) = (num / g, 4 / g);
            let var = match (a, b) {
                (0, _) => String::new(),
                (1, 1) => "t".to_string(),
                (a, 1) => format!("t^{a}"),
                (a, b) => format!("t^({a}/{b})"),
            };
            push_term(&mut out, i == 0, c, &var);
        }
        out
    }
}

fn push_term(out: &mut String, first: bool, c: i64, var: &str) {
    let sign = if c < 0 { '-' } else { '+' };
    if first {
        if c < 0 {
            out.push('-');
        }
    } else {
        out.push(' ');
        out.push(sign);
        out.push(' ');
    }
    let abs = c.unsigned_abs();
    if var.is_empty() {
        out.push_str(&abs.to_string());
    } else {
        if abs != 1 {
            out.push_str(&abs.to_string());
        }
        out.push_str(var);
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in decreasing exponent order, e.g. `-A^4 - A^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let var = match e {
                0 => String::new(),
                1 => "A".to_string(),
                e => format!("A^{e}"),
            };
            push_term(&mut out, i == 0, c, &var);
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse Laurent polynomial {0:?}")]
pub struct PolyParseError(String);

impl FromStr for LaurentPoly {
    type Err = PolyParseError;

    /// Accepts the [`Display`](fmt::Display) format.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PolyParseError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut poly = Self::zero();
        let bytes = compact.as_bytes();
        let mut start = 0;
        while start < bytes.len() {
            // A term ends at the next sign that does not follow `^`.
            let mut end = start + 1;
            while end < bytes.len() && !((bytes[end] == b'+' || bytes[end] == b'-') && bytes[end - 1] != b'^') {
                end += 1;
            }
            let (c, e) = parse_term(&compact[start..end]).ok_or_else(err)?;
            poly.add_term(c, e);
            start = end;
        }
        Ok(poly)
    }
}

fn parse_term(term: &str) -> Option<(i64, i32)> {
    let (sign, body) = match term.as_bytes().first()? {
        b'-' => (-1, &term[1..]),
        b'+' => (1, &term[1..]),
        _ => (1, term),
    };
    let Some(pos) = body.find('A') else {
        return Some((sign * body.parse::<i64>().ok()?, 0));
    };
    let coeff = match &body[..pos] {
        "" => 1,
        digits => digits.parse::<i64>().ok()?,
    };
    let exp = match &body[pos + 1..] {
        "" => 1,
        rest => rest.strip_prefix('^')?.parse::<i32>().ok()?,
    };
    Some((sign * coeff, exp))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term(c, e);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

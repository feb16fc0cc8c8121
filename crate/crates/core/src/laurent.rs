//! Exact Laurent polynomials with big-integer coefficients.
//!
//! [`LaurentPoly1`] carries a single variable `t` whose exponents may be
//! half-integers; exponents are stored doubled. [`LaurentPoly2`] carries the
//! two HOMFLY variables `v` and `z` with integer exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Polynomial in `t^(1/2)`. Keys are doubled exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coeff * t^(doubled_exp / 2)`
    pub fn monomial(doubled_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(doubled_exp, coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, doubled_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(doubled_exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&doubled_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, doubled_exp: i64) -> BigInt {
        self.terms.get(&doubled_exp).cloned().unwrap_or_default()
    }

    /// Largest doubled exponent, `None` for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply every exponent by `factor` (used for variable substitutions
    /// such as `t -> t^k`).
    pub fn scale_exponents(&self, factor: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * factor, c.clone())))
    }

    pub fn shift(&self, doubled_by: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e + doubled_by, c.clone())))
    }

    /// Evaluate at `t^(1/2) = x`, returning `None` when a negative power of
    /// zero would be required.
    pub fn eval_half(&self, x: &num_rational::BigRational) -> Option<num_rational::BigRational> {
        let mut acc = num_rational::BigRational::zero();
        for (e, c) in &self.terms {
            if x.is_zero() && *e < 0 {
                return None;
            }
            let p = pow_rational(x, *e);
            acc += p * num_rational::BigRational::from_integer(c.clone());
        }
        Some(acc)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in &self.terms {
            m.insert(e.to_string(), bigint_json(c));
        }
        Value::Object(m)
    }

    /// Parse the canonical text form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for raw in text.split(" + ") {
            let term = raw.trim();
            let (c, rest) = term
                .split_once("*t^(")
                .ok_or_else(|| Error::Parse(format!("bad polynomial term '{term}'")))?;
            let e = rest
                .strip_suffix("/2)")
                .ok_or_else(|| Error::Parse(format!("bad exponent in '{term}'")))?;
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient in '{term}'")))?;
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

pub(crate) fn pow_rational(x: &num_rational::BigRational, e: i64) -> num_rational::BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = num_rational::BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(c.to_string()),
    }
}

impl fmt::Display for LaurentPoly1 {
    /// Canonical form: `c*t^(e/2)` terms sorted by exponent, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*t^({e}/2)"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn neg(self) -> LaurentPoly1 {
        LaurentPoly1::from_terms(self.terms.iter().map(|(e, c)| (*e, -c.clone())))
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(LaurentPoly1, Add, add);
forward_owned!(LaurentPoly1, Sub, sub);
forward_owned!(LaurentPoly1, Mul, mul);

/// Polynomial in `v^±1, z^±1`, keyed by `(v_exp, z_exp)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(v: i64, z: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(v, z, coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for ((v, z), c) in terms {
            p.add_term(v, z, c.into());
        }
        p
    }

    pub fn add_term(&mut self, v: i64, z: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((v, z)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(v, z));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by the monomial `v^dv z^dz`.
    pub fn shift(&self, dv: i64, dz: i64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|((v, z), c)| ((v + dv, z + dz), c.clone())),
        )
    }

    /// Substitute `v = 1`.
    pub fn at_v_one(&self) -> LaurentPoly1 {
        // z exponents become doubled exponents of a one-variable polynomial in z.
        let mut out = LaurentPoly1::zero();
        for ((_, z), c) in &self.terms {
            out.add_term(2 * z, c.clone());
        }
        out
    }

    /// Largest z exponent, `None` for the zero polynomial.
    pub fn max_z(&self) -> Option<i64> {
        self.terms.keys().map(|(_, z)| *z).max()
    }

    /// Every z exponent has the given parity.
    pub fn z_parity_is(&self, parity: i64) -> bool {
        self.terms
            .keys()
            .all(|(_, z)| z.rem_euclid(2) == parity.rem_euclid(2))
    }

    /// Substitute `v = t`, `z = t^(1/2) - t^(-1/2)`, yielding a polynomial in
    /// `t` with doubled exponents. Negative powers of z are only exact when the
    /// result is a Laurent polynomial; callers use this on HOMFLY values of
    /// links, where z^-k terms always cancel against their partners.
    pub fn jones_specialization(&self) -> Option<LaurentPoly1> {
        let zpoly = LaurentPoly1::from_terms([(1, 1), (-1, -1)]);
        let min_z = self.terms.keys().map(|(_, z)| *z).min().unwrap_or(0);
        let lift = (-min_z).max(0);
        // P * z^lift has only non-negative z powers.
        let mut acc = LaurentPoly1::zero();
        for ((v, z), c) in &self.terms {
            let term = &zpoly.pow((z + lift) as u32) * &LaurentPoly1::monomial(2 * v, c.clone());
            acc = &acc + &term;
        }
        if lift == 0 {
            return Some(acc);
        }
        divide_exact(&acc, &zpoly.pow(lift as u32))
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .terms
            .iter()
            .map(|((v, z), c)| serde_json::json!({ "v": v, "z": z, "c": bigint_json(c) }))
            .collect();
        Value::Array(items)
    }
}

/// Exact division of Laurent polynomials; `None` when the division leaves a
/// remainder.
pub fn divide_exact(num: &LaurentPoly1, den: &LaurentPoly1) -> Option<LaurentPoly1> {
    if den.is_zero() {
        return None;
    }
    let den_top = den.max_exp().unwrap();
    let den_lead = den.coeff(den_top);
    let mut rem = num.clone();
    let mut quot = LaurentPoly1::zero();
    let floor = num.min_exp().unwrap_or(0) - den.min_exp().unwrap();
    while let Some(top) = rem.max_exp() {
        let shift = top - den_top;
        if shift < floor {
            return None;
        }
        let lead = rem.coeff(top);
        if (&lead % &den_lead) != BigInt::zero() {
            return None;
        }
        let q = &lead / &den_lead;
        let step = LaurentPoly1::monomial(shift, q);
        rem = &rem - &(&step * den);
        quot = &quot + &step;
    }
    Some(quot)
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((v, z), c)| format!("{c}*v^({v})*z^({z})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for ((v, z), c) in &rhs.terms {
            out.add_term(*v, *z, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for ((v, z), c) in &rhs.terms {
            out.add_term(*v, *z, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for ((v1, z1), c1) in &self.terms {
            for ((v2, z2), c2) in &rhs.terms {
                out.add_term(v1 + v2, z1 + z2, c1 * c2);
            }
        }
        out
    }
}

forward_owned!(LaurentPoly2, Add, add);
forward_owned!(LaurentPoly2, Sub, sub);
forward_owned!(LaurentPoly2, Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = LaurentPoly1::from_terms([(2, 1), (2, -1), (0, 3)]);
        assert_eq!(p, LaurentPoly1::monomial(0, 3));
    }

    #[test]
    fn canonical_text_round_trips() {
        let p = LaurentPoly1::from_terms([(-8, -1), (-6, 1), (-2, 1)]);
        let s = p.to_string();
        assert_eq!(s, "-1*t^(-8/2) + 1*t^(-6/2) + 1*t^(-2/2)");
        assert_eq!(LaurentPoly1::parse(&s).unwrap(), p);
        assert_eq!(LaurentPoly1::parse("0").unwrap(), LaurentPoly1::zero());
    }

    #[test]
    fn binomial_square() {
        // (t^(1/2) - t^(-1/2))^2 = t - 2 + t^-1
        let z = LaurentPoly1::from_terms([(1, 1), (-1, -1)]);
        assert_eq!(
            z.pow(2),
            LaurentPoly1::from_terms([(2, 1), (0, -2), (-2, 1)])
        );
    }

    #[test]
    fn exact_division() {
        let z = LaurentPoly1::from_terms([(1, 1), (-1, -1)]);
        let q = LaurentPoly1::from_terms([(4, 3), (0, -1)]);
        let prod = &z * &q;
        assert_eq!(divide_exact(&prod, &z), Some(q));
        assert_eq!(divide_exact(&LaurentPoly1::one(), &z), None);
    }

    #[test]
    fn jones_specialization_of_unlink_factor() {
        // delta = (v^-1 - v) z^-1 specializes to -t^(1/2) - t^(-1/2).
        let delta = LaurentPoly2::from_terms([((-1, -1), 1), ((1, -1), -1)]);
        let j = delta.jones_specialization().unwrap();
        assert_eq!(j, LaurentPoly1::from_terms([(1, -1), (-1, -1)]));
    }
}

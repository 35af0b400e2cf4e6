//! Bivariate Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, to_f64, Rational};
use super::univariate::UniPoly;
use super::PolyError;

/// Exponent pair `(i, j)`: the power of the first and second variable.
pub type Exponent = (i64, i64);

/// Largest exponent magnitude accepted anywhere in the crate.
pub const MAX_EXPONENT: i64 = 1 << 20;

/// Ordered pair of variable labels, e.g. `("m", "b")`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vars {
    pub first: String,
    pub second: String,
}

impl Vars {
    pub fn new(first: impl Into<String>, second: impl Into<String>) -> Self {
        Vars { first: first.into(), second: second.into() }
    }

    /// `("m", "b")`: eigenvalues of the meridian and a second basis class.
    pub fn mb() -> Self {
        Self::new("m", "b")
    }

    /// `("m", "l")`: meridian and longitude eigenvalues.
    pub fn ml() -> Self {
        Self::new("m", "l")
    }

    pub fn index_of(&self, label: &str) -> Option<Var> {
        if label == self.first {
            Some(Var::First)
        } else if label == self.second {
            Some(Var::Second)
        } else {
            None
        }
    }

    pub fn label(&self, var: Var) -> &str {
        match var {
            Var::First => &self.first,
            Var::Second => &self.second,
        }
    }
}

impl Default for Vars {
    fn default() -> Self {
        Self::mb()
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.second)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    First,
    Second,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::First => Var::Second,
            Var::Second => Var::First,
        }
    }
}

/// Monomial substitutions `(x, y) -> ...` used for symmetry and duality checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Substitution {
    NegateFirst,
    NegateSecond,
    NegateBoth,
    InvertFirst,
    InvertSecond,
    InvertBoth,
    /// `x -> c x`
    ScaleFirst(Rational),
}

/// A bivariate Laurent polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly2 {
    terms: BTreeMap<Exponent, Rational>,
    vars: Vars,
}

impl LaurentPoly2 {
    pub fn zero(vars: Vars) -> Self {
        LaurentPoly2 { terms: BTreeMap::new(), vars }
    }

    pub fn constant(c: Rational, vars: Vars) -> Self {
        Self::monomial(c, (0, 0), vars)
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(Rational::one(), vars)
    }

    pub fn monomial(c: Rational, exp: Exponent, vars: Vars) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly2 { terms, vars }
    }

    /// The first variable itself.
    pub fn first_var(vars: Vars) -> Self {
        Self::monomial(Rational::one(), (1, 0), vars)
    }

    pub fn second_var(vars: Vars) -> Self {
        Self::monomial(Rational::one(), (0, 1), vars)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats and dropping zeros.
    pub fn from_terms<I>(terms: I, vars: Vars) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(terms: &[((i64, i64), i64)], vars: Vars) -> Self {
        Self::from_terms(
            terms.iter().map(|&(e, c)| (e, Rational::from_integer(BigInt::from(c)))),
            vars,
        )
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Same terms under new labels.
    pub fn relabel(&self, vars: Vars) -> Self {
        LaurentPoly2 { terms: self.terms.clone(), vars }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, exp: Exponent) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// True if the only term is a constant (or there are none).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars.clone());
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Integer power. Negative powers are allowed only for monomials.
    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        if e.abs() > MAX_EXPONENT {
            return Err(PolyError::ExponentOverflow(e));
        }
        if e < 0 {
            let (&(i, j), c) = match (self.terms.len(), self.terms.iter().next()) {
                (1, Some(t)) => t,
                _ => return Err(PolyError::NonMonomialInverse),
            };
            let (ni, nj) = (checked_exp(i * e)?, checked_exp(j * e)?);
            let mut coeff = Rational::one();
            for _ in 0..-e {
                coeff *= c.recip();
            }
            return Ok(Self::monomial(coeff, (ni, nj), self.vars.clone()));
        }
        let mut acc = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        if let Some(&(i, j)) = acc.terms.keys().find(|(i, j)| i.abs() > MAX_EXPONENT || j.abs() > MAX_EXPONENT) {
            return Err(PolyError::ExponentOverflow(i.abs().max(j.abs())));
        }
        Ok(acc)
    }

    /// Multiplies by `x^i y^j`, shifting every exponent.
    pub fn mul_monomial(&self, shift: Exponent) -> Self {
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + shift.0, j + shift.1), c.clone()))
                .collect(),
            vars: self.vars.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        LaurentPoly2 {
            terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect(),
            vars: self.vars.clone(),
        }
    }

    /// Componentwise minimum exponents, `None` for zero.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let i = self.terms.keys().map(|e| e.0).min()?;
        let j = self.terms.keys().map(|e| e.1).min()?;
        Some((i, j))
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        let i = self.terms.keys().map(|e| e.0).max()?;
        let j = self.terms.keys().map(|e| e.1).max()?;
        Some((i, j))
    }

    /// Shifts by a monomial so the minimal exponent in each variable is 0.
    /// Returns the normalized polynomial and the shift that was applied.
    pub fn normalize(&self) -> (Self, Exponent) {
        match self.min_exponents() {
            None => (self.clone(), (0, 0)),
            Some((i, j)) => (self.mul_monomial((-i, -j)), (-i, -j)),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.min_exponents().is_none_or(|e| e == (0, 0))
    }

    /// Width of the exponent range in one variable (the degree once normalized).
    pub fn degree_in(&self, var: Var) -> u64 {
        match (self.min_exponents(), self.max_exponents()) {
            (Some(lo), Some(hi)) => match var {
                Var::First => (hi.0 - lo.0) as u64,
                Var::Second => (hi.1 - lo.1) as u64,
            },
            _ => 0,
        }
    }

    /// Applies a monomial substitution.
    pub fn substitute(&self, action: &Substitution) -> Result<Self, PolyError> {
        let mut out = Self::zero(self.vars.clone());
        for (&(i, j), c) in &self.terms {
            let (e, coeff) = match action {
                Substitution::NegateFirst => ((i, j), sign_pow(c, i)),
                Substitution::NegateSecond => ((i, j), sign_pow(c, j)),
                Substitution::NegateBoth => ((i, j), sign_pow(c, i + j)),
                Substitution::InvertFirst => ((-i, j), c.clone()),
                Substitution::InvertSecond => ((i, -j), c.clone()),
                Substitution::InvertBoth => ((-i, -j), c.clone()),
                Substitution::ScaleFirst(s) => {
                    if s.is_zero() {
                        return Err(PolyError::ZeroScale);
                    }
                    ((i, j), c * rational_pow(s, i))
                }
            };
            out.add_term(e, coeff);
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &Rational, y: &Rational) -> Result<Rational, PolyError> {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            if (i < 0 && x.is_zero()) || (j < 0 && y.is_zero()) {
                return Err(PolyError::ZeroWithNegativeExponent);
            }
            acc += c * rational_pow(x, i) * rational_pow(y, j);
        }
        Ok(acc)
    }

    /// Floating evaluation at a complex point.
    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Result<Complex64, PolyError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j), c) in &self.terms {
            if (i < 0 && x == Complex64::new(0.0, 0.0)) || (j < 0 && y == Complex64::new(0.0, 0.0)) {
                return Err(PolyError::ZeroWithNegativeExponent);
            }
            acc += to_f64(c) * x.powi(i as i32) * y.powi(j as i32);
        }
        Ok(acc)
    }

    /// Sum of `|c| |x|^i |y|^j`: the natural scale for residuals at `(x, y)`.
    pub fn abs_scale(&self, x: Complex64, y: Complex64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| to_f64(c).abs() * x.norm().powi(i as i32) * y.norm().powi(j as i32))
            .sum()
    }

    /// Partial derivative as a Laurent polynomial.
    pub fn derivative(&self, var: Var) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (&(i, j), c) in &self.terms {
            let (k, e) = match var {
                Var::First => (i, (i - 1, j)),
                Var::Second => (j, (i, j - 1)),
            };
            if k != 0 {
                out.add_term(e, c * Rational::from_integer(BigInt::from(k)));
            }
        }
        out
    }

    /// Fixes one variable at a rational value. The remaining Laurent polynomial is
    /// shifted to an ordinary polynomial; the shift (lowest remaining exponent) is
    /// returned alongside.
    pub fn specialize(&self, which: Var, value: &Rational) -> Result<(UniPoly, i64), PolyError> {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let (fixed, free) = match which {
                Var::First => (i, j),
                Var::Second => (j, i),
            };
            if fixed < 0 && value.is_zero() {
                return Err(PolyError::ZeroWithNegativeExponent);
            }
            *acc.entry(free).or_insert_with(Rational::zero) += c * rational_pow(value, fixed);
        }
        acc.retain(|_, c| !c.is_zero());
        let Some(&low) = acc.keys().next() else {
            return Ok((UniPoly::zero(), 0));
        };
        let high = *acc.keys().next_back().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (k, c) in acc {
            coeffs[(k - low) as usize] = c;
        }
        Ok((UniPoly::new(coeffs), low))
    }

    /// Specialization by label.
    pub fn specialize_label(&self, label: &str, value: &Rational) -> Result<(UniPoly, i64), PolyError> {
        let var = self
            .vars
            .index_of(label)
            .ok_or_else(|| PolyError::UnknownVariable { name: label.to_string(), pos: 0 })?;
        self.specialize(var, value)
    }

    /// Complex coefficients of the polynomial in `free` after fixing the other
    /// variable at `value`, lowest exponent first (shifted to start at 0).
    pub fn specialize_complex(&self, free: Var, value: Complex64) -> Vec<Complex64> {
        let mut acc: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let (fixed, deg) = match free {
                Var::Second => (i, j),
                Var::First => (j, i),
            };
            *acc.entry(deg).or_insert(Complex64::new(0.0, 0.0)) += to_f64(c) * value.powi(fixed as i32);
        }
        let Some(&low) = acc.keys().next() else {
            return Vec::new();
        };
        let high = *acc.keys().next_back().unwrap();
        let mut out = vec![Complex64::new(0.0, 0.0); (high - low + 1) as usize];
        for (k, c) in acc {
            out[(k - low) as usize] = c;
        }
        out
    }

    /// Views a normalized polynomial as one in `var` with coefficients in the
    /// other variable: entry `k` is the coefficient of `var^k`.
    pub fn coefficients_in(&self, var: Var) -> Vec<UniPoly> {
        let (p, _) = self.normalize();
        let deg = p.degree_in(var) as usize;
        let mut buckets: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (&(i, j), c) in &p.terms {
            let (k, other) = match var {
                Var::First => (i, j),
                Var::Second => (j, i),
            };
            buckets[k as usize].insert(other as usize, c.clone());
        }
        buckets
            .into_iter()
            .map(|b| {
                let n = b.keys().next_back().map_or(0, |&k| k + 1);
                let mut coeffs = vec![Rational::zero(); n];
                for (k, c) in b {
                    coeffs[k] = c;
                }
                UniPoly::new(coeffs)
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(var: Var, coeffs: &[UniPoly], vars: Vars) -> Self {
        let mut out = Self::zero(vars);
        for (k, u) in coeffs.iter().enumerate() {
            for (l, c) in u.coeffs().iter().enumerate() {
                let e = match var {
                    Var::First => (k as i64, l as i64),
                    Var::Second => (l as i64, k as i64),
                };
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Embeds a univariate polynomial in one of the variables.
    pub fn from_univariate(var: Var, p: &UniPoly, vars: Vars) -> Self {
        Self::from_terms(
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let e = match var {
                    Var::First => (k as i64, 0),
                    Var::Second => (0, k as i64),
                };
                (e, c.clone())
            }),
            vars,
        )
    }

    /// Leading term in graded-lex order (total degree, then first exponent).
    pub fn leading_term(&self) -> Option<(Exponent, Rational)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, i))
            .map(|(&e, c)| (e, c.clone()))
    }

    /// Division with remainder by a single polynomial using graded-lex order.
    /// The remainder is zero exactly when `divisor` divides `self` (for
    /// polynomials with nonnegative exponents).
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check_vars(divisor)?;
        if self.min_exponents().is_some_and(|(i, j)| i < 0 || j < 0)
            || divisor.min_exponents().is_some_and(|(i, j)| i < 0 || j < 0)
        {
            return Err(PolyError::NegativeExponent);
        }
        let (lead_e, lead_c) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let mut quotient = Self::zero(self.vars.clone());
        let mut remainder = Self::zero(self.vars.clone());
        let mut rest = self.clone();
        while let Some((e, c)) = rest.leading_term() {
            if e.0 >= lead_e.0 && e.1 >= lead_e.1 {
                let shift = (e.0 - lead_e.0, e.1 - lead_e.1);
                let factor = &c / &lead_c;
                rest = rest.try_sub(&divisor.mul_monomial(shift).scale(&factor))?;
                quotient.add_term(shift, factor);
            } else {
                rest.terms.remove(&e);
                remainder.add_term(e, c);
            }
        }
        Ok((quotient, remainder))
    }

    /// Exact quotient if `divisor` divides `self` in the polynomial ring.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Terms in canonical print order: descending total degree, then descending
    /// first exponent, then descending second exponent.
    pub fn canonical_terms(&self) -> Vec<(Exponent, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&e, c)| (e, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| (b.0 + b.1, b.0, b.1).cmp(&(a.0 + a.1, a.0, a.1)));
        v
    }
}

fn checked_exp(e: i64) -> Result<i64, PolyError> {
    if e.abs() > MAX_EXPONENT {
        Err(PolyError::ExponentOverflow(e))
    } else {
        Ok(e)
    }
}

fn sign_pow(c: &Rational, e: i64) -> Rational {
    if e.rem_euclid(2) == 1 {
        -c.clone()
    } else {
        c.clone()
    }
}

/// `x^e` for any integer `e` (caller guarantees `x != 0` when `e < 0`).
pub fn rational_pow(x: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

fn write_factor(out: &mut String, label: &str, e: i64) {
    match e {
        0 => {}
        1 => out.push_str(label),
        _ => {
            out.push_str(label);
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for ((i, j), c) in self.canonical_terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut body = String::new();
            write_factor(&mut body, &self.vars.first, i);
            if j != 0 && !body.is_empty() {
                body.push('*');
            }
            write_factor(&mut body, &self.vars.second, j);
            if body.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(&body);
            }
        }
        f.write_str(&out)
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
            vars: self.vars.clone(),
        }
    }
}

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        -&self
    }
}

// Operator forms panic on a label mismatch; use the `try_*` methods to handle it.
macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&LaurentPoly2> for &LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $method(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
                self.$try(rhs).expect("variable labels must match")
            }
        }
        impl $trait<LaurentPoly2> for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $method(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly2> for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $method(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rational::{int, rat};

    fn defining_p(c: i64) -> LaurentPoly2 {
        // b m^2 - b - C b^2 m + C m
        LaurentPoly2::from_int_terms(&[((2, 1), 1), ((0, 1), -1), ((1, 2), -c), ((1, 0), c)], Vars::mb())
    }

    #[test]
    fn product_matches_factored_form() {
        let v = Vars::mb();
        let m = LaurentPoly2::first_var(v.clone());
        let b = LaurentPoly2::second_var(v.clone());
        let one = LaurentPoly2::one(v.clone());
        let lhs = (&(&b * &m) + &one) * (&m - &b);
        assert_eq!(lhs, defining_p(1));
    }

    #[test]
    fn identities() {
        let p = defining_p(3);
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(&p * &LaurentPoly2::one(Vars::mb()), p);
    }

    #[test]
    fn label_mismatch_is_an_error() {
        let a = LaurentPoly2::first_var(Vars::mb());
        let b = LaurentPoly2::first_var(Vars::ml());
        assert!(matches!(a.try_add(&b), Err(PolyError::VarMismatch { .. })));
    }

    #[test]
    fn inversion_duality_of_defining_p() {
        // P(1/m, 1/b) * b^2 m^2 = -P
        let p = defining_p(2);
        let q = p.substitute(&Substitution::InvertBoth).unwrap().mul_monomial((2, 2));
        assert_eq!(q, -&p);
    }

    #[test]
    fn negation_is_an_involution() {
        let p = defining_p(5);
        let twice = p
            .substitute(&Substitution::NegateFirst)
            .unwrap()
            .substitute(&Substitution::NegateFirst)
            .unwrap();
        assert_eq!(twice, p);
        assert!(matches!(
            p.substitute(&Substitution::ScaleFirst(int(0))),
            Err(PolyError::ZeroScale)
        ));
    }

    #[test]
    fn evaluation() {
        for c in [-3, 1, 2, 7] {
            assert!(defining_p(c).eval_rational(&int(1), &int(1)).unwrap().is_zero());
        }
        let inv = LaurentPoly2::from_int_terms(&[((-1, 0), 1)], Vars::ml());
        assert!(matches!(
            inv.eval_rational(&int(0), &int(1)),
            Err(PolyError::ZeroWithNegativeExponent)
        ));
    }

    #[test]
    fn specialization_by_hand() {
        // C = 3, m = 2: 4b - b - 6b^2 + 6 = -6b^2 + 3b + 6
        let (u, shift) = defining_p(3).specialize(Var::First, &int(2)).unwrap();
        assert_eq!(shift, 0);
        assert_eq!(u, UniPoly::from_i64(&[6, 3, -6]));
        // all terms vanish
        let p = LaurentPoly2::from_int_terms(&[((1, 1), 1), ((0, 1), -1)], Vars::mb());
        let (z, _) = p.specialize(Var::First, &int(1)).unwrap();
        assert!(z.is_zero());
        let (half, _) = defining_p(3).specialize(Var::Second, &rat(1, 2)).unwrap();
        assert!(half.degree().unwrap() as u64 <= defining_p(3).degree_in(Var::First));
    }

    #[test]
    fn division_detects_factors() {
        let v = Vars::mb();
        let f = LaurentPoly2::from_int_terms(&[((1, 1), 1), ((0, 0), 1)], v.clone());
        let g = LaurentPoly2::from_int_terms(&[((1, 0), 1), ((0, 1), -1)], v);
        let p = &f * &g;
        assert_eq!(p.exact_div(&f).unwrap(), Some(g.clone()));
        assert_eq!(defining_p(2).exact_div(&g).unwrap(), None);
    }

    #[test]
    fn canonical_print() {
        assert_eq!(defining_p(3).to_string(), "m^2*b - 3*m*b^2 + 3*m - b");
        let p = LaurentPoly2::from_terms([((-1, 0), rat(1, 2)), ((0, 1), int(-1))], Vars::ml());
        assert_eq!(p.to_string(), "-l + 1/2*m^-1");
    }
}

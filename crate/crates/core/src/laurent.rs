//! Exact arithmetic in the Laurent polynomial ring `Q[t, t^-1]`.
//!
//! The ring is a PID whose units are exactly `c * t^k` with `c` a nonzero
//! rational. Orders of torsion modules are only defined up to such units, so
//! most comparisons in this crate go through [`LaurentPoly::normalize`]: the
//! representative with lowest exponent 0 and monic top coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// An element of `Q[t, t^-1]`, stored sparsely as exponent -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn monomial(exponent: i64, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Self { terms }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, Rational::from_integer(c.into()))
    }

    /// Builds `sum coeffs[k] * t^k` from integer coefficients, lowest degree first.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (k as i64, Rational::from_integer(c.into()))),
        )
    }

    /// Sums the given terms; repeated exponents accumulate and zeros are dropped.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            accumulate(&mut out, e, c);
        }
        Self { terms: out }
    }

    /// `t^m - 1`.
    pub fn t_pow_minus_one(m: u64) -> Self {
        Self::from_terms([(m as i64, Rational::one()), (0, -Rational::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exponent: i64) -> Rational {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exponent - min_exponent`, the degree of the polynomial part.
    /// Units have span 0; the zero polynomial has none.
    pub fn span(&self) -> Option<u64> {
        Some((self.max_exponent()? - self.min_exponent()?) as u64)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Is this `c * t^k` for some nonzero `c`?
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Value at `t = 1`, i.e. the sum of the coefficients.
    pub fn eval_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The unique unit multiple with lowest exponent 0 and leading coefficient 1.
    pub fn normalize(&self) -> Result<Self> {
        let shift = self.min_exponent().ok_or(Error::ZeroPolynomial)?;
        let lc = self.leading_coeff().ok_or(Error::ZeroPolynomial)?.recip();
        Ok(self.shift(-shift).scale(&lc))
    }

    /// Equality up to multiplication by `c * t^k`.
    pub fn is_unit_equivalent(&self, other: &Self) -> bool {
        match (self.normalize(), other.normalize()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Exact quotient `self / divisor` in the Laurent ring, or `None` when the
    /// divisor does not divide.
    pub fn checked_div(&self, divisor: &Self) -> Result<Option<Self>> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let (a_shift, a) = self.to_dense();
        let (b_shift, b) = divisor.to_dense();
        let (q, r) = dense_div_rem(&a, &b);
        if r.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        Ok(Some(Self::from_dense(a_shift - b_shift, q)))
    }

    /// Does `self` divide `other` in `Q[t, t^-1]`?
    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.checked_div(self)?.is_some())
    }

    /// Normalized greatest common divisor. `gcd(p, 0) = normalize(p)`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::ZeroGcd),
            (true, false) => return other.normalize(),
            (false, true) => return self.normalize(),
            _ => {}
        }
        let (_, mut a) = self.to_dense();
        let (_, mut b) = other.to_dense();
        while !b.is_empty() {
            let (_, r) = dense_div_rem(&a, &b);
            a = b;
            b = trim(r);
        }
        Self::from_dense(0, a).normalize()
    }

    /// Splits into `(lowest exponent, dense coefficients of the polynomial part)`.
    fn to_dense(&self) -> (i64, Vec<Rational>) {
        let Some(lo) = self.min_exponent() else {
            return (0, Vec::new());
        };
        let hi = self.max_exponent().unwrap_or(lo);
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            out[(e - lo) as usize] = c.clone();
        }
        (lo, out)
    }

    fn from_dense(shift: i64, coeffs: Vec<Rational>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (shift + k as i64, c)),
        )
    }
}

fn accumulate(map: &mut BTreeMap<i64, Rational>, e: i64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(e).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&e);
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Schoolbook long division of dense polynomials (lowest degree first).
/// `b` must have a nonzero top coefficient.
fn dense_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let top = r.len() - 1;
        let c = &r[top] * &lead_inv;
        let k = top - db;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r = trim(r);
    }
    (q, r)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            accumulate(&mut terms, e, c.clone());
        }
        LaurentPoly { terms }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            accumulate(&mut terms, e, -c.clone());
        }
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                accumulate(&mut terms, ea + eb, ca * cb);
            }
        }
        LaurentPoly { terms }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest degree first, e.g. `t^2 - t + 1`, `3/2*t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_owned(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// `[exponent, numerator, denominator]` triples in increasing exponent order.
pub(crate) fn to_triples(p: &LaurentPoly) -> Vec<(i64, BigInt, BigInt)> {
    p.terms
        .iter()
        .map(|(&e, c)| (e, c.numer().clone(), c.denom().clone()))
        .collect()
}

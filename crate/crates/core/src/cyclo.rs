//! Cyclotomic polynomials and the divisor calculus of roots of unity.
//!
//! A [`CycloDivisor`] is a formal integer combination `sum c_m * L_m`, where
//! `L_m` stands for the multiset of all `m`-th roots of unity (the divisor of
//! `t^m - 1`). Sums correspond to products of polynomials, and the product
//! `L_a * L_b = gcd(a, b) * L_lcm(a, b)` is the multiset of pairwise products
//! of roots. Characteristic polynomials of finite-order monodromies live in
//! this ring and are only expanded to [`LaurentPoly`] at the boundary.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Positive divisors of `n` in increasing order. Empty for `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient, the degree of the `n`-th cyclotomic polynomial.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
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

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn phi_cache() -> &'static Mutex<HashMap<u64, LaurentPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, LaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `e`-th cyclotomic polynomial, obtained from `t^e - 1 = prod_{f | e} Phi_f`
/// by exact division.
pub fn phi(e: u64) -> Result<LaurentPoly> {
    if e == 0 {
        return Err(Error::ZeroOrder);
    }
    if let Some(p) = phi_cache().lock().expect("phi cache poisoned").get(&e) {
        return Ok(p.clone());
    }
    let mut acc = LaurentPoly::t_pow_minus_one(e);
    for f in divisors(e).into_iter().filter(|&f| f < e) {
        let phi_f = phi(f)?;
        acc = acc
            .checked_div(&phi_f)?
            .expect("Phi_f divides t^e - 1 for every f | e");
    }
    phi_cache()
        .lock()
        .expect("phi cache poisoned")
        .insert(e, acc.clone());
    Ok(acc)
}

/// Formal integer combination of the classes `L_m`, `m >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CycloDivisor {
    coeffs: BTreeMap<u64, i64>,
}

/// `L_a`, the divisor of `t^a - 1`.
pub fn lambda_of(a: u64) -> Result<CycloDivisor> {
    CycloDivisor::lambda(a)
}

impl CycloDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn lambda(a: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self::from_pairs([(a, 1)]))
    }

    /// Sums `c * L_m` over the pairs. Panics on `m = 0`.
    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in pairs {
            assert!(m > 0, "L_0 is not a divisor class");
            out.add_term(m, c);
        }
        out
    }

    /// The divisor of `prod_e Phi_e^{mult_e}`, via Möbius inversion
    /// `Phi_e = sum_{m | e} mu(e/m) L_m`.
    pub fn from_phi_multiplicities(mults: &BTreeMap<u64, i64>) -> Self {
        let mut out = Self::zero();
        for (&e, &mult) in mults {
            for m in divisors(e) {
                out.add_term(m, mult * mobius(e / m));
            }
        }
        out
    }

    fn add_term(&mut self, m: u64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&m);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, i64> {
        &self.coeffs
    }

    pub fn multiplicity(&self, m: u64) -> i64 {
        self.coeffs.get(&m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_pairs(self.coeffs.iter().map(|(&m, &c)| (m, c * k)))
    }

    /// Total number of roots counted with sign, i.e. the degree of the
    /// associated rational function.
    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(&m, &c)| m as i64 * c).sum()
    }

    /// Net multiplicity of each `Phi_e`: `sum_{m : e | m} c_m`. Zero entries omitted.
    pub fn phi_multiplicities(&self) -> BTreeMap<u64, i64> {
        let mut out: BTreeMap<u64, i64> = BTreeMap::new();
        for (&m, &c) in &self.coeffs {
            for e in divisors(m) {
                *out.entry(e).or_insert(0) += c;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// First order `e` whose net `Phi_e` multiplicity is negative.
    fn first_negative(&self) -> Option<(u64, i64)> {
        self.phi_multiplicities().into_iter().find(|&(_, c)| c < 0)
    }

    pub fn is_realizable(&self) -> bool {
        self.first_negative().is_none()
    }

    /// `prod_m (t^m - 1)^{c_m}` as a polynomial.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        if let Some((order, multiplicity)) = self.first_negative() {
            return Err(Error::NotRealizable {
                order,
                multiplicity,
            });
        }
        let mut acc = LaurentPoly::one();
        for (e, c) in self.phi_multiplicities() {
            acc = &acc * &phi(e)?.pow(c as u32);
        }
        // t^m - 1 = prod_{e | m} Phi_e exactly, so this equals prod (t^m - 1)^{c_m}.
        Ok(acc)
    }
}

impl Add for &CycloDivisor {
    type Output = CycloDivisor;
    fn add(self, rhs: &CycloDivisor) -> CycloDivisor {
        let mut out = self.clone();
        for (&m, &c) in &rhs.coeffs {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for &CycloDivisor {
    type Output = CycloDivisor;
    fn sub(self, rhs: &CycloDivisor) -> CycloDivisor {
        self + &(-rhs)
    }
}

impl Neg for &CycloDivisor {
    type Output = CycloDivisor;
    fn neg(self) -> CycloDivisor {
        self.scale(-1)
    }
}

impl Mul for &CycloDivisor {
    type Output = CycloDivisor;
    /// Bilinear extension of `L_a * L_b = gcd(a, b) * L_lcm(a, b)`.
    fn mul(self, rhs: &CycloDivisor) -> CycloDivisor {
        let mut out = CycloDivisor::zero();
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &rhs.coeffs {
                out.add_term(a.lcm(&b), ca * cb * a.gcd(&b) as i64);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloDivisor {
            type Output = CycloDivisor;
            fn $m(self, rhs: CycloDivisor) -> CycloDivisor {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloDivisor {
    type Output = CycloDivisor;
    fn neg(self) -> CycloDivisor {
        -&self
    }
}

pub fn div_mul(a: &CycloDivisor, b: &CycloDivisor) -> CycloDivisor {
    a * b
}

pub fn div_to_poly(d: &CycloDivisor) -> Result<LaurentPoly> {
    d.to_poly()
}

/// A polynomial split as `prod_e Phi_e^{mult_e} * remainder` (up to units).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloFactorization {
    pub cyclotomic_part: BTreeMap<u64, u32>,
    /// Normalized cofactor; carries no `Phi_e` for any probed `e`.
    pub remainder: LaurentPoly,
    pub probed_orders: BTreeSet<u64>,
}

impl CycloFactorization {
    pub fn orders(&self) -> impl Iterator<Item = u64> + '_ {
        self.cyclotomic_part.keys().copied()
    }

    /// Product of the cyclotomic part and the remainder.
    pub fn expand(&self) -> Result<LaurentPoly> {
        let mut acc = self.remainder.clone();
        for (&e, &m) in &self.cyclotomic_part {
            acc = &acc * &phi(e)?.pow(m);
        }
        Ok(acc)
    }
}

/// Peels every `Phi_e`, `e` in `orders`, off `p` with multiplicity.
pub fn cyclo_factor(p: &LaurentPoly, orders: &BTreeSet<u64>) -> Result<CycloFactorization> {
    let mut remainder = p.normalize()?;
    let mut cyclotomic_part = BTreeMap::new();
    for &e in orders {
        if remainder.is_one() {
            break;
        }
        let phi_e = phi(e)?;
        if phi_e.span() > remainder.span() {
            continue;
        }
        let mut mult = 0u32;
        while let Some(q) = remainder.checked_div(&phi_e)? {
            remainder = q.normalize()?;
            mult += 1;
        }
        if mult > 0 {
            cyclotomic_part.insert(e, mult);
        }
    }
    Ok(CycloFactorization {
        cyclotomic_part,
        remainder,
        probed_orders: orders.clone(),
    })
}

/// Every `e` with `totient(e) <= degree`; probing these makes the cyclotomic
/// part of a polynomial of that degree complete.
pub fn orders_up_to_degree(degree: u64) -> BTreeSet<u64> {
    // totient(e) >= sqrt(e / 2), so e <= 2 * degree^2 suffices.
    let bound = 2 * degree.max(1) * degree.max(1) + 2;
    (1..=bound).filter(|&e| totient(e) <= degree).collect()
}

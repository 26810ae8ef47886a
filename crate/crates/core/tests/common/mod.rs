//! Independent oracles and generators shared by the integration suites.
//!
//! Nothing here calls into the library's cyclotomic or divisor code: the
//! oracles work on plain integer coefficient vectors and root counts.
#![allow(dead_code)]

use std::collections::BTreeMap;

use alexmod::{LaurentPoly, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Integer polynomial, lowest degree first.
pub type IntPoly = Vec<i128>;

pub fn int_trim(mut p: IntPoly) -> IntPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn int_mul(a: &[i128], b: &[i128]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    int_trim(out)
}

pub fn int_pow(a: &[i128], k: u32) -> IntPoly {
    let mut acc = vec![1];
    for _ in 0..k {
        acc = int_mul(&acc, a);
    }
    acc
}

/// Exact division by a monic polynomial; panics on a nonzero remainder.
pub fn int_div_monic(num: &[i128], den: &[i128]) -> IntPoly {
    let den = int_trim(den.to_vec());
    assert_eq!(den.last(), Some(&1), "divisor must be monic");
    let mut rem = int_trim(num.to_vec());
    if rem.len() < den.len() {
        assert!(rem.is_empty(), "inexact division");
        return Vec::new();
    }
    let mut quot = vec![0i128; rem.len() - den.len() + 1];
    while rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let c = *rem.last().unwrap();
        quot[shift] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[shift + j] -= c * dj;
        }
        rem = int_trim(rem);
    }
    assert!(rem.is_empty(), "inexact division");
    quot
}

/// `t^m - 1`.
pub fn int_t_pow_minus_one(m: usize) -> IntPoly {
    let mut p = vec![0i128; m + 1];
    p[0] = -1;
    p[m] = 1;
    p
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64
}

/// `Phi_e = prod_{d | e} (t^d - 1)^{mu(e/d)}`.
pub fn oracle_phi(e: u64) -> IntPoly {
    let mut num: IntPoly = vec![1];
    let mut den: IntPoly = vec![1];
    for d in (1..=e).filter(|d| e.is_multiple_of(*d)) {
        match mobius(e / d) {
            1 => num = int_mul(&num, &int_t_pow_minus_one(d as usize)),
            -1 => den = int_mul(&den, &int_t_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    int_div_monic(&num, &den)
}

pub fn to_laurent(p: &[i128]) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i as i64, Rational::from_integer(BigInt::from(*c)))),
    )
}

/// Root orders of the monodromy of `x_1^{a_1} + ... + x_m^{a_m}`: the angles
/// `sum k_i / a_i` with `1 <= k_i < a_i`, grouped by the order of the root.
pub fn brieskorn_root_orders(exponents: &[u64]) -> BTreeMap<u64, u64> {
    let l = exponents.iter().fold(1u64, |acc, &a| acc / gcd(acc, a) * a);
    let mut counts = BTreeMap::new();
    let mut stack = vec![(0usize, 0u64)];
    // numerator of the angle over the common denominator l
    while let Some((idx, acc)) = stack.pop() {
        if idx == exponents.len() {
            let num = acc % l;
            let order = l / gcd(num, l);
            *counts.entry(order).or_insert(0) += 1;
            continue;
        }
        let a = exponents[idx];
        for k in 1..a {
            stack.push((idx + 1, acc + k * (l / a)));
        }
    }
    counts
}

/// Characteristic polynomial from the root enumeration: each Galois orbit of
/// primitive `e`-th roots contributes `Phi_e`.
pub fn oracle_brieskorn_charpoly(exponents: &[u64]) -> LaurentPoly {
    let mut acc: IntPoly = vec![1];
    for (e, count) in brieskorn_root_orders(exponents) {
        let deg = euler_phi(e);
        assert_eq!(
            count % deg,
            0,
            "roots of order {e} do not form whole orbits"
        );
        acc = int_mul(&acc, &int_pow(&oracle_phi(e), (count / deg) as u32));
    }
    to_laurent(&acc)
}

/// Multiset product of the `a`-th and `b`-th roots of unity, by root order.
pub fn lambda_product_orders(a: u64, b: u64) -> BTreeMap<u64, u64> {
    let l = a / gcd(a, b) * b;
    let mut counts = BTreeMap::new();
    for j in 0..a {
        for k in 0..b {
            let num = (j * (l / a) + k * (l / b)) % l;
            *counts.entry(l / gcd(num, l)).or_insert(0) += 1;
        }
    }
    counts
}

/// `(t - 1)(t^d - 1)^{d - 2}` by schoolbook expansion.
pub fn oracle_curve_bound(d: u64) -> LaurentPoly {
    let t_minus_one: IntPoly = vec![-1, 1];
    to_laurent(&int_mul(
        &t_minus_one,
        &int_pow(&int_t_pow_minus_one(d as usize), (d - 2) as u32),
    ))
}

pub fn corpus(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

// ---------- generators ----------

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// Laurent polynomials with small support and rational coefficients.
pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(small_rational(), 0..6)).prop_map(|(shift, coeffs)| {
        LaurentPoly::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (shift + i as i64, c)),
        )
    })
}

pub fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

/// Distinct odd primes used as marker orders.
pub const MARKER_PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// A singular stratum description: dimension and the degrees carrying a marker.
#[derive(Clone, Debug)]
pub struct MarkedStratum {
    pub dim: u32,
    pub markers: Vec<(u32, u64)>,
}

/// Random hypersurface whose singular strata carry explicit local tables;
/// each nonzero degree `l` of each stratum holds `Phi_p` for its own prime `p`.
pub fn marked_spec() -> impl Strategy<Value = (u32, Vec<MarkedStratum>)> {
    (1u32..=4)
        .prop_flat_map(|n| {
            let stratum = (0..n).prop_flat_map(move |s| {
                let top = n - s;
                prop::collection::vec(any::<bool>(), top as usize).prop_map(move |mask| (s, mask))
            });
            (Just(n), prop::collection::vec(stratum, 0..4))
        })
        .prop_map(|(n, raw)| {
            let mut next = 0usize;
            let strata = raw
                .into_iter()
                .map(|(dim, mask)| {
                    let mut markers = Vec::new();
                    for (idx, on) in mask.into_iter().enumerate() {
                        if on && next < MARKER_PRIMES.len() {
                            markers.push((idx as u32 + 1, MARKER_PRIMES[next]));
                            next += 1;
                        }
                    }
                    MarkedStratum { dim, markers }
                })
                .collect();
            (n, strata)
        })
}

pub fn marked_spec_json(n: u32, strata: &[MarkedStratum]) -> String {
    let mut list = vec![serde_json::json!({
        "name": "top", "dim": n, "components": ["V"], "link": {"type": "smooth"}
    })];
    for (k, s) in strata.iter().enumerate() {
        let mut xi = serde_json::Map::new();
        for (l, p) in &s.markers {
            xi.insert(
                l.to_string(),
                serde_json::json!({"cyclo": {p.to_string(): 1}}),
            );
        }
        list.push(serde_json::json!({
            "name": format!("s{k}"), "dim": s.dim, "components": ["V"],
            "link": {"type": "explicit", "xi": xi}
        }));
    }
    serde_json::json!({
        "n": n, "d": 6,
        "components": [{"name": "V", "degree": 6}],
        "strata": list
    })
    .to_string()
}

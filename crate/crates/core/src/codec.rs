//! Textual polynomial encodings shared by every file format.
//!
//! * triple list: `[[exponent, numerator, denominator], ...]`, strictly
//!   increasing exponents, positive denominators, e.g. `t^2 - t + 1` is
//!   `[[0,1,1],[1,-1,1],[2,1,1]]`. Integers too large for 64 bits may be
//!   given as decimal strings.
//! * cyclotomic shorthand: `{"cyclo": {"2": 1, "6": 1}}` is `Phi_2 * Phi_6`.
//!
//! Serialization always emits the triple list.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::cyclo::phi;
use crate::error::{Error, Result};
use crate::laurent::{to_triples, LaurentPoly, Rational};

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_bigint(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(small) => Self::Small(small),
            None => Self::Big(v.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Self::Small(v) => Ok(BigInt::from(*v)),
            Self::Big(s) => s
                .parse()
                .map_err(|_| Error::Encoding(format!("`{s}` is not an integer"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CycloRepr {
    cyclo: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyRepr {
    Triples(Vec<(i64, IntRepr, IntRepr)>),
    Cyclo(CycloRepr),
}

fn from_triples(triples: Vec<(i64, IntRepr, IntRepr)>) -> Result<LaurentPoly> {
    let mut last: Option<i64> = None;
    let mut terms = Vec::with_capacity(triples.len());
    for (e, num, den) in triples {
        if last.is_some_and(|prev| e <= prev) {
            return Err(Error::Encoding(format!(
                "exponents must be strictly increasing (got {e} after {})",
                last.unwrap_or_default()
            )));
        }
        last = Some(e);
        let num = num.to_bigint()?;
        let den = den.to_bigint()?;
        if den <= BigInt::zero() {
            return Err(Error::Encoding(format!(
                "denominator of the t^{e} coefficient must be positive"
            )));
        }
        if num.is_zero() {
            return Err(Error::Encoding(format!(
                "zero coefficient stored for t^{e}"
            )));
        }
        terms.push((e, Rational::new(num, den)));
    }
    Ok(LaurentPoly::from_terms(terms))
}

fn from_cyclo(repr: CycloRepr) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one();
    for (key, mult) in repr.cyclo {
        let e: u64 = key.parse().map_err(|_| {
            Error::Encoding(format!(
                "cyclotomic order `{key}` is not a positive integer"
            ))
        })?;
        acc = &acc * &phi(e)?.pow(mult);
    }
    Ok(acc)
}

impl PolyRepr {
    fn into_poly(self) -> Result<LaurentPoly> {
        match self {
            Self::Triples(t) => from_triples(t),
            Self::Cyclo(c) => from_cyclo(c),
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let triples = to_triples(self);
        let mut seq = serializer.serialize_seq(Some(triples.len()))?;
        for (e, num, den) in &triples {
            seq.serialize_element(&(e, IntRepr::from_bigint(num), IntRepr::from_bigint(den)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer).map_err(|_| {
            de::Error::custom(
                "expected a polynomial: [[exponent, numerator, denominator], ...] or {\"cyclo\": {...}}",
            )
        })?;
        repr.into_poly().map_err(de::Error::custom)
    }
}

/// Parses a polynomial from either JSON encoding.
pub fn parse_poly(text: &str) -> Result<LaurentPoly> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// The canonical triple-list encoding.
pub fn poly_to_json(p: &LaurentPoly) -> String {
    serde_json::to_string(p).expect("polynomial serialization is infallible")
}

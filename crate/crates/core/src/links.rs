//! Local Alexander polynomials of link pairs of strata.
//!
//! For an `s`-dimensional stratum of an `n`-dimensional hypersurface the link
//! complement fibers over the circle with a connected Milnor fiber of
//! homotopy dimension `n - s`. Its Alexander modules are the homology of that
//! fiber: `xi_0 = t - 1`, and nothing above degree `n - s`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::milnor::BrieskornData;

/// `xi^s_l(t)` for `0 <= l <= n - s`. Degrees not stored are trivial modules
/// (order 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalXiTable {
    s: u32,
    top: u32,
    entries: BTreeMap<u32, LaurentPoly>,
}

fn t_minus_one() -> LaurentPoly {
    LaurentPoly::from_int_coeffs(&[-1, 1])
}

fn check_stratum_dim(n: u32, s: u32) -> Result<()> {
    if s > n {
        return Err(Error::InvalidLocalData(format!(
            "stratum dimension {s} exceeds hypersurface dimension {n}"
        )));
    }
    Ok(())
}

impl LocalXiTable {
    /// Table for a stratum whose transversal singularity is the Brieskorn
    /// polynomial `b` in `n - s + 1` variables.
    pub fn from_brieskorn(n: u32, s: u32, b: &BrieskornData) -> Result<Self> {
        check_stratum_dim(n, s)?;
        let top = n - s;
        let expected = top as usize + 1;
        if b.arity() != expected {
            return Err(Error::ExponentCount {
                s,
                expected,
                got: b.arity(),
            });
        }
        let mut entries = BTreeMap::from([(0, t_minus_one())]);
        if top > 0 {
            entries.insert(top, b.charpoly());
        }
        Ok(Self { s, top, entries })
    }

    /// The top stratum: the link pair is `(S^1, empty)`.
    pub fn smooth(n: u32) -> Self {
        Self {
            s: n,
            top: 0,
            entries: BTreeMap::from([(0, t_minus_one())]),
        }
    }

    /// User-supplied table. Missing `l = 0` defaults to `t - 1`.
    pub fn explicit(n: u32, s: u32, entries: BTreeMap<u32, LaurentPoly>) -> Result<Self> {
        check_stratum_dim(n, s)?;
        let top = n - s;
        let mut table = BTreeMap::new();
        for (l, poly) in entries {
            if l > top {
                return Err(Error::InvalidLocalData(format!(
                    "xi_{l} given for a stratum of dimension {s}; local modules vanish above degree {top}"
                )));
            }
            if poly.is_zero() {
                return Err(Error::InvalidLocalData(format!(
                    "xi_{l} is zero; local Alexander modules are torsion"
                )));
            }
            if l == 0 && !poly.is_unit_equivalent(&t_minus_one()) {
                return Err(Error::InvalidLocalData(format!(
                    "xi_0 must be t - 1 (connected Milnor fiber), got {poly}"
                )));
            }
            table.insert(l, poly.normalize()?);
        }
        table.entry(0).or_insert_with(t_minus_one);
        Ok(Self {
            s,
            top,
            entries: table,
        })
    }

    pub fn dim(&self) -> u32 {
        self.s
    }

    /// `n - s`, the last degree with a possibly nontrivial module.
    pub fn top_degree(&self) -> u32 {
        self.top
    }

    /// `xi^s_l`; `None` above the top degree, `1` for stored gaps.
    pub fn get(&self, l: u32) -> Option<LaurentPoly> {
        if l > self.top {
            return None;
        }
        Some(
            self.entries
                .get(&l)
                .cloned()
                .unwrap_or_else(LaurentPoly::one),
        )
    }

    /// Every degree `0..=top` with its polynomial.
    pub fn iter(&self) -> impl Iterator<Item = (u32, LaurentPoly)> + '_ {
        (0..=self.top).map(|l| (l, self.get(l).expect("l <= top")))
    }
}

pub fn xi_from_brieskorn(n: u32, s: u32, b: &BrieskornData) -> Result<LocalXiTable> {
    LocalXiTable::from_brieskorn(n, s, b)
}

pub fn xi_smooth(n: u32) -> LocalXiTable {
    LocalXiTable::smooth(n)
}

/// Intersection Alexander polynomials `I gamma_i(G)` of a link `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IGammaTable {
    entries: BTreeMap<u32, LaurentPoly>,
}

impl IGammaTable {
    /// Entry 0 must be `t - 1` up to units; missing degrees are trivial.
    pub fn new(entries: BTreeMap<u32, LaurentPoly>) -> Result<Self> {
        let zeroth = entries
            .get(&0)
            .ok_or_else(|| Error::InvalidLocalData("I gamma_0 is missing".into()))?;
        if !zeroth.is_unit_equivalent(&t_minus_one()) {
            return Err(Error::InvalidLocalData(format!(
                "I gamma_0 must be t - 1, got {zeroth}"
            )));
        }
        if let Some((i, _)) = entries.iter().find(|(_, p)| p.is_zero()) {
            return Err(Error::InvalidLocalData(format!("I gamma_{i} is zero")));
        }
        Ok(Self { entries })
    }

    pub fn get(&self, i: u32) -> LaurentPoly {
        self.entries
            .get(&i)
            .cloned()
            .unwrap_or_else(LaurentPoly::one)
    }

    pub fn entries(&self) -> &BTreeMap<u32, LaurentPoly> {
        &self.entries
    }
}

/// Table for `G = S^1 * G_1`, the link of `S ∩ H`, from the table of `G_1`:
///
/// `I gamma_k(G) = gcd(I gamma_{k-1}(G_1), t^d - 1)` and for `i < k`
/// `I gamma_i(G) = gcd(I gamma_i(G_1), t^d - 1) * gcd(I gamma_{i-1}(G_1), t^d - 1)`,
/// with `I gamma_{-1} = 1`.
pub fn igamma_cone_circle(d: u64, g1: &IGammaTable, k: u32) -> Result<IGammaTable> {
    if d < 1 {
        return Err(Error::InvalidDegree(format!("d = {d}, expected d >= 1")));
    }
    if k < 1 {
        return Err(Error::InvalidLocalData(
            "the top index of S^1 * G_1 is at least 1".into(),
        ));
    }
    let cyc = LaurentPoly::t_pow_minus_one(d);
    let gated = |i: Option<u32>| -> Result<LaurentPoly> {
        match i {
            Some(i) => g1.get(i).gcd(&cyc),
            None => Ok(LaurentPoly::one()),
        }
    };
    let mut entries = BTreeMap::new();
    entries.insert(k, gated(Some(k - 1))?);
    for i in 0..k {
        let lower = i.checked_sub(1);
        entries.insert(i, &gated(Some(i))? * &gated(lower)?);
    }
    IGammaTable::new(entries)
}

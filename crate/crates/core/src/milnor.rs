//! Monodromy of Brieskorn singularities `x_1^{a_1} + ... + x_m^{a_m}`.
//!
//! The Milnor fiber is the join of the point sets `{x^{a_i} = 1}`; its reduced
//! middle homology carries the eigenvalues `prod_i w_i` with each `w_i` a
//! nontrivial `a_i`-th root of unity. In the divisor ring this is the product
//! `prod_i (L_{a_i} - L_1)`.

use crate::cyclo::CycloDivisor;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Exponents of a Brieskorn polynomial; at least one, each `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrieskornData(Vec<u64>);

impl BrieskornData {
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidBrieskorn("no exponents".into()));
        }
        if let Some(&a) = exponents.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidBrieskorn(format!("exponent {a} is below 2")));
        }
        Ok(Self(exponents))
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    /// Number of variables.
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// `prod (a_i - 1)`, the rank of the reduced middle homology of the fiber.
    pub fn milnor_number(&self) -> u64 {
        self.0.iter().map(|a| a - 1).product()
    }

    /// Eigenvalue divisor of the monodromy on reduced middle homology.
    pub fn divisor(&self) -> CycloDivisor {
        self.0
            .iter()
            .map(|&a| one_variable_divisor(a))
            .reduce(|acc, d| &acc * &d)
            .expect("nonempty exponent list")
    }

    /// Characteristic polynomial of the monodromy on reduced middle homology.
    pub fn charpoly(&self) -> LaurentPoly {
        self.divisor()
            .to_poly()
            .expect("Brieskorn divisors are products of realizable factors")
    }

    /// True when the link is a rational homology sphere, i.e. 1 is not an
    /// eigenvalue of the monodromy.
    pub fn is_rhs_link(&self) -> bool {
        self.divisor()
            .phi_multiplicities()
            .get(&1)
            .copied()
            .unwrap_or(0)
            == 0
    }
}

/// `L_a - L_1`: the `a - 1` nontrivial `a`-th roots of unity, i.e. the reduced
/// `H_0` of `a` points.
pub fn one_variable_divisor(a: u64) -> CycloDivisor {
    CycloDivisor::from_pairs([(a, 1), (1, -1)])
}

pub fn brieskorn_divisor(b: &BrieskornData) -> CycloDivisor {
    b.divisor()
}

pub fn brieskorn_charpoly(b: &BrieskornData) -> LaurentPoly {
    b.charpoly()
}

pub fn is_rhs_link(b: &BrieskornData) -> bool {
    b.is_rhs_link()
}

/// Monodromy divisor of the join of two Milnor fibers.
pub fn join_divisor(a: &CycloDivisor, b: &CycloDivisor) -> CycloDivisor {
    a * b
}

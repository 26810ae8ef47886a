//! Obstructions on the Alexander polynomials of complements of singular
//! projective hypersurfaces, computed from a stratification and local link data.
//!
//! The pipeline is: describe `V` ([`strata`]), compute local tables
//! ([`milnor`], [`links`]), then derive candidate cyclotomic orders, forced
//! values and divisor bounds per degree ([`engine`]).

pub mod codec;
pub mod cyclo;
pub mod engine;
pub mod error;
pub mod laurent;
pub mod links;
pub mod milnor;
pub mod report;
pub mod strata;

pub use codec::{parse_poly, poly_to_json};
pub use cyclo::{cyclo_factor, phi, CycloDivisor, CycloFactorization};
pub use engine::{
    analyze, arrangement_analyze, euler_product_solve, infinity_bound_curve, verify, CandidateSet,
    Claim,
};
pub use error::{Error, Result, ValidationError};
pub use laurent::{LaurentPoly, Rational};
pub use links::{igamma_cone_circle, IGammaTable, LocalXiTable};
pub use milnor::{brieskorn_charpoly, is_rhs_link, BrieskornData};
pub use report::{ClaimOutcome, ClaimRejection, DegreeReport, ObstructionReport, VerifyReport};
pub use strata::{
    load, parse, validate, validate_arrangement, CheckedSpec, HypersurfaceSpec, Mode,
};

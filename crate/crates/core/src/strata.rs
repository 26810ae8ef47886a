//! Combinatorial description of a hypersurface `V ⊂ CP^{n+1}` (or of an
//! arrangement `Y ⊂ CP^n`) together with a stratification, component
//! incidence, and local link data.
//!
//! The on-disk format is a JSON document; see the repository README for the
//! schema. [`parse`] is purely structural; [`validate`] and
//! [`validate_arrangement`] check every invariant and collect all violations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationError};
use crate::laurent::LaurentPoly;
use crate::links::LocalXiTable;
use crate::milnor::BrieskornData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceSpec {
    /// Complex dimension of the hypersurface (arrangement mode: of the
    /// ambient projective space of `Y`).
    pub n: u32,
    pub d: u64,
    pub components: Vec<ComponentSpec>,
    pub strata: Vec<StratumSpec>,
    #[serde(default)]
    pub flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_complement: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_milnor_fiber: Option<i64>,
    /// Orders of the Alexander modules at infinity, keyed by degree, when known.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub infinity_polynomials: BTreeMap<u32, LaurentPoly>,
    /// Externally known values reported alongside the obstructions.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub informational: Vec<InformationalValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub name: String,
    pub degree: u64,
    /// Arrangement mode: the whole arrangement is a normal crossing divisor
    /// at every point of this component.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub normal_crossing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSpec {
    pub name: String,
    pub dim: u32,
    /// Components whose closure contains this stratum.
    pub components: Vec<String>,
    pub link: LinkSpec,
    /// Arrangement mode: the vertex of the cone over `Y`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub cone_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum LinkSpec {
    Smooth,
    Brieskorn {
        exponents: Vec<u64>,
    },
    Explicit {
        #[serde(deserialize_with = "degree_keyed")]
        xi: BTreeMap<u32, LaurentPoly>,
    },
}

// Tagged enums buffer their content, which turns integer map keys into
// strings; parse them back by hand.
fn degree_keyed<'de, D>(
    deserializer: D,
) -> std::result::Result<BTreeMap<u32, LaurentPoly>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let raw = BTreeMap::<String, LaurentPoly>::deserialize(deserializer)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.parse::<u32>().map(|l| (l, v)).map_err(|_| {
                serde::de::Error::custom(format!("degree key `{k}` is not a non-negative integer"))
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub rational_homology_manifold: bool,
    #[serde(default)]
    pub no_codim_one_sing: bool,
    #[serde(default)]
    pub isolated_singularities: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InformationalValue {
    pub degree: u32,
    pub poly: LaurentPoly,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Hypersurface,
    Arrangement,
}

/// A stratum of `V` after validation, with its local table built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedStratum {
    pub name: String,
    /// Dimension as a stratum of the hypersurface `V` (arrangement mode:
    /// of the cone over `Y`, one more than the `Y`-dimension).
    pub dim: u32,
    pub components: BTreeSet<String>,
    pub xi: LocalXiTable,
    pub brieskorn: Option<BrieskornData>,
    pub cone_point: bool,
}

impl CheckedStratum {
    pub fn is_singular(&self) -> bool {
        !self.cone_point && self.xi.top_degree() > 0
    }
}

/// A description that passed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedSpec {
    spec: HypersurfaceSpec,
    mode: Mode,
    strata: Vec<CheckedStratum>,
}

impl CheckedSpec {
    pub fn spec(&self) -> &HypersurfaceSpec {
        &self.spec
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Dimension of the hypersurface `V` the theorems are applied to.
    pub fn n(&self) -> u32 {
        self.spec.n
    }

    pub fn d(&self) -> u64 {
        self.spec.d
    }

    pub fn flags(&self) -> Flags {
        self.spec.flags
    }

    pub fn strata(&self) -> &[CheckedStratum] {
        &self.strata
    }

    pub fn component_names(&self) -> impl Iterator<Item = &str> {
        self.spec.components.iter().map(|c| c.name.as_str())
    }

    pub fn has_component(&self, name: &str) -> bool {
        self.spec.components.iter().any(|c| c.name == name)
    }

    /// Dimension of the singular locus of `V`, if `V` is singular.
    pub fn singular_dim(&self) -> Option<u32> {
        let max_sing = self
            .strata
            .iter()
            .filter(|s| s.is_singular())
            .map(|s| s.dim)
            .max();
        match self.mode {
            Mode::Hypersurface => max_sing,
            // The cone over Y is singular at its vertex as soon as d > 1.
            Mode::Arrangement => Some(max_sing.unwrap_or(0)),
        }
    }
}

pub fn parse(input: &str) -> Result<HypersurfaceSpec> {
    serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn serialize(spec: &HypersurfaceSpec) -> String {
    serde_json::to_string_pretty(spec).expect("spec serialization is infallible")
}

/// Validates a description of `V ⊂ CP^{n+1}`.
pub fn validate(spec: &HypersurfaceSpec) -> Result<CheckedSpec, Vec<ValidationError>> {
    check(spec, Mode::Hypersurface)
}

/// Validates a description of an arrangement `Y ⊂ CP^n`: strata are
/// `Y`-strata of dimension at most `n - 1`, plus an optional `cone_point`.
pub fn validate_arrangement(spec: &HypersurfaceSpec) -> Result<CheckedSpec, Vec<ValidationError>> {
    check(spec, Mode::Arrangement)
}

/// Parses and validates in one step, folding validation errors into [`Error::Invalid`].
pub fn load(input: &str, mode: Mode) -> Result<CheckedSpec> {
    let spec = parse(input)?;
    check(&spec, mode).map_err(Error::Invalid)
}

fn check(spec: &HypersurfaceSpec, mode: Mode) -> Result<CheckedSpec, Vec<ValidationError>> {
    let mut errs = Vec::new();
    let n = spec.n;
    // Dimension of the hypersurface whose strata are listed.
    let listed_dim = match mode {
        Mode::Hypersurface => n,
        Mode::Arrangement => n.saturating_sub(1),
    };
    let lift = match mode {
        Mode::Hypersurface => 0,
        Mode::Arrangement => 1,
    };

    if n < 1 {
        errs.push(ValidationError::new("n", "must be at least 1"));
    }
    let min_d = if mode == Mode::Arrangement { 2 } else { 1 };
    if spec.d < min_d {
        errs.push(ValidationError::new(
            "d",
            format!("must be at least {min_d}"),
        ));
    }

    let mut comp_names = BTreeSet::new();
    if spec.components.is_empty() {
        errs.push(ValidationError::new(
            "components",
            "at least one component is required",
        ));
    }
    for (ci, c) in spec.components.iter().enumerate() {
        let path = format!("components[{ci}]");
        if !comp_names.insert(c.name.as_str()) {
            errs.push(ValidationError::new(
                format!("{path}.name"),
                format!("duplicate component name `{}`", c.name),
            ));
        }
        if c.degree < 1 {
            errs.push(ValidationError::new(
                format!("{path}.degree"),
                "must be at least 1",
            ));
        }
        if c.normal_crossing && mode != Mode::Arrangement {
            errs.push(ValidationError::new(
                format!("{path}.normal_crossing"),
                "only meaningful for arrangements",
            ));
        }
    }
    let degree_sum: u64 = spec.components.iter().map(|c| c.degree).sum();
    if degree_sum != spec.d {
        errs.push(ValidationError::new(
            "components",
            format!(
                "component degrees sum to {degree_sum}, expected d = {}",
                spec.d
            ),
        ));
    }

    let mut strata_names = BTreeSet::new();
    let mut checked = Vec::new();
    let mut top_strata: BTreeMap<&str, usize> = BTreeMap::new();
    for (si, s) in spec.strata.iter().enumerate() {
        let path = format!("strata[{si}]");
        if !strata_names.insert(s.name.as_str()) {
            errs.push(ValidationError::new(
                format!("{path}.name"),
                format!("duplicate stratum name `{}`", s.name),
            ));
        }
        if s.components.is_empty() {
            errs.push(ValidationError::new(
                format!("{path}.components"),
                "a stratum lies in at least one component",
            ));
        }
        for c in &s.components {
            if !comp_names.contains(c.as_str()) {
                errs.push(ValidationError::new(
                    format!("{path}.components"),
                    format!("unknown component `{c}`"),
                ));
            }
        }

        if s.cone_point {
            if mode != Mode::Arrangement {
                errs.push(ValidationError::new(
                    format!("{path}.cone_point"),
                    "only meaningful for arrangements",
                ));
            } else if s.dim != 0 {
                errs.push(ValidationError::new(
                    format!("{path}.dim"),
                    "the cone point is zero-dimensional",
                ));
            } else {
                checked.push(CheckedStratum {
                    name: s.name.clone(),
                    dim: 0,
                    components: s.components.iter().cloned().collect(),
                    xi: LocalXiTable::smooth(0),
                    brieskorn: None,
                    cone_point: true,
                });
            }
            continue;
        }

        if s.dim > listed_dim {
            errs.push(ValidationError::new(
                format!("{path}.dim"),
                format!("exceeds the hypersurface dimension {listed_dim}"),
            ));
            continue;
        }
        let v_dim = s.dim + lift;
        let built = match &s.link {
            LinkSpec::Smooth => {
                if s.dim != listed_dim {
                    Err(ValidationError::new(
                        format!("{path}.link"),
                        format!("smooth links only occur on top strata (dim {listed_dim})"),
                    ))
                } else {
                    if s.components.len() == 1 {
                        *top_strata.entry(s.components[0].as_str()).or_default() += 1;
                    } else {
                        errs.push(ValidationError::new(
                            format!("{path}.components"),
                            "a top stratum belongs to exactly one component",
                        ));
                    }
                    Ok((LocalXiTable::smooth(n), None))
                }
            }
            LinkSpec::Brieskorn { exponents } => BrieskornData::new(exponents.clone())
                .and_then(|b| {
                    let table = LocalXiTable::from_brieskorn(n, v_dim, &b)?;
                    Ok((table, Some(b)))
                })
                .map_err(|e| match e {
                    Error::ExponentCount { expected, got, .. } => ValidationError::new(
                        format!("{path}.link.exponents"),
                        format!(
                            "stratum `{}` of dimension {} needs {expected} exponents, got {got}",
                            s.name, s.dim
                        ),
                    ),
                    other => {
                        ValidationError::new(format!("{path}.link.exponents"), other.to_string())
                    }
                }),
            LinkSpec::Explicit { xi } => LocalXiTable::explicit(n, v_dim, xi.clone())
                .map(|t| (t, None))
                .map_err(|e| ValidationError::new(format!("{path}.link.xi"), e.to_string())),
        };
        let (xi, brieskorn) = match built {
            Ok(v) => v,
            Err(e) => {
                errs.push(e);
                continue;
            }
        };
        if s.dim == listed_dim && !matches!(s.link, LinkSpec::Smooth) {
            errs.push(ValidationError::new(
                format!("{path}.link"),
                "top-dimensional strata have smooth links",
            ));
        }
        if spec.flags.rational_homology_manifold {
            if let Some(b) = &brieskorn {
                if !b.is_rhs_link() {
                    errs.push(ValidationError::new(
                        format!("{path}.link"),
                        "flag rational_homology_manifold contradicts a link with monodromy eigenvalue 1",
                    ));
                }
            }
        }
        checked.push(CheckedStratum {
            name: s.name.clone(),
            dim: v_dim,
            components: s.components.iter().cloned().collect(),
            xi,
            brieskorn,
            cone_point: false,
        });
    }

    for c in &spec.components {
        let count = top_strata.get(c.name.as_str()).copied().unwrap_or(0);
        if count != 1 {
            errs.push(ValidationError::new(
                "strata",
                format!(
                    "component `{}` has {count} smooth top strata, expected exactly 1",
                    c.name
                ),
            ));
        }
    }

    let flags = spec.flags;
    for (si, s) in spec.strata.iter().enumerate() {
        if s.cone_point || s.dim == listed_dim {
            continue;
        }
        if flags.isolated_singularities && s.dim != 0 {
            errs.push(ValidationError::new(
                format!("strata[{si}].dim"),
                "isolated_singularities requires every singular stratum to be a point",
            ));
        }
        if flags.no_codim_one_sing && listed_dim >= 1 && s.dim == listed_dim - 1 {
            errs.push(ValidationError::new(
                format!("strata[{si}].dim"),
                "no_codim_one_sing contradicts a singular stratum of codimension one",
            ));
        }
    }
    if flags.isolated_singularities && listed_dim >= 2 && !flags.no_codim_one_sing {
        errs.push(ValidationError::new(
            "flags.no_codim_one_sing",
            "isolated singularities in dimension >= 2 have no codimension-one singular locus",
        ));
    }

    for (&i, poly) in &spec.infinity_polynomials {
        if i > n {
            errs.push(ValidationError::new(
                format!("infinity_polynomials.{i}"),
                format!("degree exceeds n = {n}"),
            ));
        }
        if poly.is_zero() {
            errs.push(ValidationError::new(
                format!("infinity_polynomials.{i}"),
                "must be nonzero",
            ));
        }
    }
    for (k, info) in spec.informational.iter().enumerate() {
        if info.degree > n {
            errs.push(ValidationError::new(
                format!("informational[{k}].degree"),
                format!("exceeds n = {n}"),
            ));
        }
        if info.poly.is_zero() {
            errs.push(ValidationError::new(
                format!("informational[{k}].poly"),
                "must be nonzero",
            ));
        }
    }

    if errs.is_empty() {
        Ok(CheckedSpec {
            spec: spec.clone(),
            mode,
            strata: checked,
        })
    } else {
        Err(errs)
    }
}

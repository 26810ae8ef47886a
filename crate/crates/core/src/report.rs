//! Report types produced by the engine and their text/JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::laurent::LaurentPoly;
use crate::strata::{InformationalValue, Mode};

/// A named rule together with the result it implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: &'static str,
    pub citation: &'static str,
}

pub mod rules {
    use super::Rule;

    pub const DEGREE_ZERO: Rule = Rule {
        id: "connected-cover",
        citation: "H_0 = Gamma/(t-1)",
    };
    pub const LOCAL_CANDIDATES: Rule = Rule {
        id: "local-prime-candidates",
        citation: "Thm 4.2",
    };
    pub const ORDER_D: Rule = Rule {
        id: "roots-of-order-d",
        citation: "Thm 4.1",
    };
    pub const RATIONAL_HOMOLOGY_MANIFOLD: Rule = Rule {
        id: "no-trivial-eigenvalue",
        citation: "Prop 2.1",
    };
    pub const LOW_DEGREE_VANISHING: Rule = Rule {
        id: "low-degree-vanishing",
        citation: "Li, Lemma 1.5",
    };
    pub const EMPTY_CANDIDATES: Rule = Rule {
        id: "no-candidate-primes",
        citation: "Thm 4.2",
    };
    pub const ISOLATED_POINTS: Rule = Rule {
        id: "isolated-point-product",
        citation: "Thm 4.5",
    };
    pub const AT_INFINITY: Rule = Rule {
        id: "module-at-infinity",
        citation: "Thm 4.7",
    };
    pub const TOP_RANK: Rule = Rule {
        id: "top-rank",
        citation: "Cor 3.10",
    };
    pub const SEMISIMPLE: Rule = Rule {
        id: "annihilated-by-t^d-1",
        citation: "Prop 4.9",
    };
    pub const TORSION: Rule = Rule {
        id: "torsion-module",
        citation: "Cor 3.8",
    };
    pub const ARRANGEMENT_CANDIDATES: Rule = Rule {
        id: "arrangement-local-candidates",
        citation: "Prop 5.1",
    };
    pub const ARRANGEMENT_ORDER_D: Rule = Rule {
        id: "local-monodromy-eigenvalues",
        citation: "Cor 5.3",
    };
    pub const ARRANGEMENT_POINTS: Rule = Rule {
        id: "arrangement-point-product",
        citation: "Prop 5.2",
    };
    pub const NORMAL_CROSSING: Rule = Rule {
        id: "normal-crossing-trivial",
        citation: "Cor 5.4",
    };
    pub const EULER_PRODUCT: Rule = Rule {
        id: "euler-product",
        citation: "Milnor fiber zeta function",
    };
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppliedRule {
    pub rule: String,
    pub citation: String,
    pub detail: String,
}

impl AppliedRule {
    pub(crate) fn new(rule: Rule, detail: impl Into<String>) -> Self {
        Self {
            rule: rule.id.to_owned(),
            citation: rule.citation.to_owned(),
            detail: detail.into(),
        }
    }
}

/// A local factor with no cyclotomic prime among its probed orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpaqueFactor {
    pub remainder: LaurentPoly,
    pub stratum: String,
    pub local_degree: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// The global polynomial divides the bound.
    Divides,
    /// The global polynomial divides the bound times some power of `t - 1`.
    DividesUpToTMinusOne,
    /// The global polynomial equals the bound up to units.
    Equals,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorBound {
    pub poly: LaurentPoly,
    pub relation: Relation,
    pub rule: String,
    pub citation: String,
}

impl DivisorBound {
    pub(crate) fn new(rule: Rule, relation: Relation, poly: LaurentPoly) -> Self {
        Self {
            poly,
            relation,
            rule: rule.id.to_owned(),
            citation: rule.citation.to_owned(),
        }
    }
}

/// An order removed from the candidate set and the rule that removed it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub order: u64,
    pub rule: String,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: u32,
    /// Surviving cyclotomic orders `e` (candidate primes `Phi_e`).
    pub candidate_orders: Vec<u64>,
    /// Surviving non-cyclotomic local factors; always empty once the order-d filter ran.
    pub opaque: Vec<OpaqueFactor>,
    pub discarded_opaque: Vec<OpaqueFactor>,
    /// Orders produced by the local ranges, per component, before intersecting.
    pub per_component: BTreeMap<String, Vec<u64>>,
    pub excluded_orders: Vec<Exclusion>,
    pub divisor_bounds: Vec<DivisorBound>,
    pub forced_value: Option<LaurentPoly>,
    pub forced_by: Option<AppliedRule>,
    pub informational: Vec<InformationalValue>,
    pub applied_rules: Vec<AppliedRule>,
}

impl DegreeReport {
    pub(crate) fn new(degree: u32) -> Self {
        Self {
            degree,
            candidate_orders: Vec::new(),
            opaque: Vec::new(),
            discarded_opaque: Vec::new(),
            per_component: BTreeMap::new(),
            excluded_orders: Vec::new(),
            divisor_bounds: Vec::new(),
            forced_value: None,
            forced_by: None,
            informational: Vec::new(),
            applied_rules: Vec::new(),
        }
    }

    pub fn is_forced(&self) -> bool {
        self.forced_value.is_some()
    }

    pub fn cites(&self, citation: &str) -> bool {
        self.applied_rules.iter().any(|r| r.citation == citation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub mode: Mode,
    pub n: u32,
    pub d: u64,
    /// Degrees `0..=n`.
    pub degrees: Vec<DegreeReport>,
    /// `rank H_{n+1}`, when the Euler characteristic of the complement is known.
    pub top_rank: Option<i64>,
    /// Every Alexander module is annihilated by this polynomial.
    pub minimal_polynomial_divides: LaurentPoly,
    /// Arrangement mode: `P_n` recovered from the Euler product.
    pub recovered_top: Option<LaurentPoly>,
    pub applied_rules: Vec<AppliedRule>,
}

impl ObstructionReport {
    pub fn degree(&self, i: u32) -> Option<&DegreeReport> {
        self.degrees.iter().find(|r| r.degree == i)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    fn symbol(&self) -> &'static str {
        match self.mode {
            Mode::Hypersurface => "δ",
            Mode::Arrangement => "P",
        }
    }

    pub fn render_text(&self) -> String {
        let sym = self.symbol();
        let mut out = String::new();
        let _ = writeln!(out, "{:?} mode, n = {}, d = {}", self.mode, self.n, self.d);
        for r in &self.applied_rules {
            let _ = writeln!(out, "  [{}] {}: {}", r.citation, r.rule, r.detail);
        }
        for deg in &self.degrees {
            let name = format!("{sym}{}", subscript(deg.degree));
            let _ = writeln!(out, "{name}:");
            for r in &deg.applied_rules {
                let _ = writeln!(out, "  [{}] {}: {}", r.citation, r.rule, r.detail);
            }
            for b in &deg.divisor_bounds {
                let rel = match b.relation {
                    Relation::Divides => "divides",
                    Relation::DividesUpToTMinusOne => "divides, up to powers of t - 1,",
                    Relation::Equals => "equals",
                };
                let _ = writeln!(out, "  bound [{}]: {name} {rel} {}", b.citation, b.poly);
            }
            for info in &deg.informational {
                let note = if info.note.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", info.note)
                };
                let _ = writeln!(out, "  informational: {name} ∼ {}{note}", info.poly);
            }
            match &deg.forced_value {
                Some(v) => {
                    let _ = writeln!(out, "  {name} ∼ {v} (forced)");
                }
                None => {
                    let _ = writeln!(
                        out,
                        "  candidate primes: {}",
                        orders_text(&deg.candidate_orders)
                    );
                }
            }
        }
        if let Some(rank) = self.top_rank {
            let _ = writeln!(out, "rank H_{} = {rank}", self.n + 1);
        }
        if let Some(p) = &self.recovered_top {
            let _ = writeln!(out, "recovered {sym}{} ∼ {p}", subscript(self.n));
        }
        let _ = writeln!(
            out,
            "minimal polynomial divides {}",
            self.minimal_polynomial_divides
        );
        let forced: Vec<String> = self
            .degrees
            .iter()
            .filter_map(|deg| {
                deg.forced_value
                    .as_ref()
                    .map(|v| format!("{sym}{} ∼ {v}", subscript(deg.degree)))
            })
            .collect();
        let _ = writeln!(out, "{} (forced)", forced.join(", "));
        out
    }
}

pub(crate) fn orders_text(orders: &[u64]) -> String {
    if orders.is_empty() {
        return "none".into();
    }
    orders
        .iter()
        .map(|e| format!("Φ{}", subscript(*e)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn subscript(k: impl Into<u64>) -> String {
    let mut k: u64 = k.into();
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    if k == 0 {
        return "₀".into();
    }
    let mut rev = Vec::new();
    while k > 0 {
        rev.push(DIGITS[(k % 10) as usize]);
        k /= 10;
    }
    rev.iter().rev().collect()
}

/// Outcome of checking one claimed polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub degree: u32,
    pub claim: LaurentPoly,
    pub accepted: bool,
    pub rejection: Option<ClaimRejection>,
    /// Rules the claim was checked against, in order.
    pub checked: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRejection {
    pub rule: String,
    pub citation: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub report: ObstructionReport,
    pub outcomes: Vec<ClaimOutcome>,
}

impl VerifyReport {
    pub fn all_accepted(&self) -> bool {
        self.outcomes.iter().all(|o| o.accepted)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn render_text(&self) -> String {
        let sym = self.report.symbol();
        let mut out = String::new();
        for o in &self.outcomes {
            let name = format!("{sym}{}", subscript(o.degree));
            match &o.rejection {
                None => {
                    let _ = writeln!(
                        out,
                        "claim {name} = {}: accepted (checked {})",
                        o.claim,
                        o.checked.join(", ")
                    );
                }
                Some(r) => {
                    let _ = writeln!(
                        out,
                        "claim {name} = {}: rejected by {} [{}]: {}",
                        o.claim, r.citation, r.rule, r.reason
                    );
                }
            }
        }
        out
    }
}

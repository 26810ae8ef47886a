//! The obstruction pipeline.
//!
//! For each degree `i` the engine collects the cyclotomic primes of the local
//! polynomials allowed by the stratum/degree ranges, intersects over
//! components, filters by `Phi_e | t^d - 1`, optionally removes `t - 1`, and
//! attaches divisibility bounds. Arrangement mode reindexes the same ranges
//! for the cone over `Y` and adds the Euler product recovery of `P_n`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cyclo::{cyclo_factor, divisors, orders_up_to_degree};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::report::{
    orders_text, rules, subscript, AppliedRule, ClaimOutcome, ClaimRejection, DegreeReport,
    DivisorBound, Exclusion, ObstructionReport, OpaqueFactor, Relation, Rule, VerifyReport,
};
use crate::strata::{CheckedSpec, CheckedStratum, Flags, Mode};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateSet {
    pub cyclo_orders: BTreeSet<u64>,
    pub opaque: Vec<OpaqueFactor>,
}

/// One local polynomial that entered a candidate set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSource {
    pub stratum: String,
    pub local_degree: u32,
    pub orders: Vec<u64>,
}

fn t_minus_one() -> LaurentPoly {
    LaurentPoly::from_int_coeffs(&[-1, 1])
}

/// Local degrees `l` of a stratum of dimension `s` that may contribute to
/// `delta_i` of an `n`-dimensional hypersurface; `None` when `s < n - i`.
pub fn local_range(n: u32, i: u32, s: u32) -> Option<(u32, u32)> {
    if s > n || s + i < n {
        return None;
    }
    let lo = (2 * i64::from(n) - 2 * i64::from(s) - i64::from(i)).max(0) as u32;
    Some((lo, n - s))
}

fn probe_orders(stratum: &CheckedStratum, poly: &LaurentPoly) -> BTreeSet<u64> {
    match &stratum.brieskorn {
        // eigenvalues are products of a_i-th roots of unity
        Some(b) => {
            let l = b
                .exponents()
                .iter()
                .fold(1u64, |acc, &a| num_integer::lcm(acc, a));
            divisors(l).into_iter().collect()
        }
        None => orders_up_to_degree(poly.span().unwrap_or(0)),
    }
}

fn check_degree(spec: &CheckedSpec, i: u32) -> Result<()> {
    if i < 1 || i > spec.n() {
        return Err(Error::DegreeOutOfRange { i, n: spec.n() });
    }
    Ok(())
}

fn collect(
    spec: &CheckedSpec,
    i: u32,
    component: &str,
) -> Result<(CandidateSet, Vec<LocalSource>)> {
    check_degree(spec, i)?;
    if !spec.has_component(component) {
        return Err(Error::UnknownComponent(component.to_owned()));
    }
    let n = spec.n();
    let mut set = CandidateSet::default();
    let mut sources = Vec::new();
    for stratum in spec.strata() {
        // The cone point of an arrangement only reaches the top degree,
        // where its link is the Milnor fiber itself.
        if stratum.cone_point || !stratum.components.contains(component) {
            continue;
        }
        let Some((lo, hi)) = local_range(n, i, stratum.dim) else {
            continue;
        };
        for l in lo..=hi {
            let poly = stratum.xi.get(l).expect("l <= top degree");
            if poly.is_unit() {
                continue;
            }
            let fac = cyclo_factor(&poly, &probe_orders(stratum, &poly))?;
            let orders: Vec<u64> = fac.orders().collect();
            set.cyclo_orders.extend(orders.iter().copied());
            if !fac.remainder.is_unit() {
                set.opaque.push(OpaqueFactor {
                    remainder: fac.remainder.clone(),
                    stratum: stratum.name.clone(),
                    local_degree: l,
                });
            }
            sources.push(LocalSource {
                stratum: stratum.name.clone(),
                local_degree: l,
                orders,
            });
        }
    }
    Ok((set, sources))
}

/// Prime factors of the local polynomials of strata in `component` within
/// the stratum/degree ranges for `delta_i`.
pub fn candidates_thm42(spec: &CheckedSpec, i: u32, component: &str) -> Result<CandidateSet> {
    collect(spec, i, component).map(|(set, _)| set)
}

fn intersect(sets: &[CandidateSet]) -> CandidateSet {
    let Some((first, rest)) = sets.split_first() else {
        return CandidateSet::default();
    };
    let cyclo_orders = first
        .cyclo_orders
        .iter()
        .copied()
        .filter(|e| rest.iter().all(|s| s.cyclo_orders.contains(e)))
        .collect();
    let opaque = first
        .opaque
        .iter()
        .filter(|o| {
            rest.iter().all(|s| {
                s.opaque
                    .iter()
                    .any(|p| p.remainder.is_unit_equivalent(&o.remainder))
            })
        })
        .cloned()
        .collect();
    CandidateSet {
        cyclo_orders,
        opaque,
    }
}

/// Intersection of [`candidates_thm42`] over every component.
pub fn candidates_all_components(spec: &CheckedSpec, i: u32) -> Result<CandidateSet> {
    let sets = spec
        .component_names()
        .map(|c| candidates_thm42(spec, i, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(intersect(&sets))
}

/// Keeps the orders dividing `d`; opaque factors never survive.
pub fn thm41_filter(c: &CandidateSet, d: u64) -> CandidateSet {
    CandidateSet {
        cyclo_orders: c
            .cyclo_orders
            .iter()
            .copied()
            .filter(|e| d.is_multiple_of(*e))
            .collect(),
        opaque: Vec::new(),
    }
}

fn prop21_applies(flags: Flags) -> bool {
    flags.rational_homology_manifold && flags.no_codim_one_sing
}

/// Removes `t - 1` for rational homology manifolds without codimension-one singularities.
pub fn prop21_filter(c: &CandidateSet, flags: Flags) -> CandidateSet {
    let mut out = c.clone();
    if prop21_applies(flags) {
        out.cyclo_orders.remove(&1);
    }
    out
}

/// For each component, the product of the middle local polynomials of the
/// non-cone strata of dimension `dim` it contains; gcd over components.
fn point_product(spec: &CheckedSpec, dim: u32) -> Result<LaurentPoly> {
    let mut acc: Option<LaurentPoly> = None;
    for comp in spec.component_names() {
        let product: LaurentPoly = spec
            .strata()
            .iter()
            .filter(|s| !s.cone_point && s.dim == dim && s.components.contains(comp))
            .map(|s| s.xi.get(s.xi.top_degree()).expect("top degree entry"))
            .product();
        acc = Some(match acc {
            None => product,
            Some(prev) => prev.gcd(&product)?,
        });
    }
    acc.unwrap_or_else(LaurentPoly::one).normalize()
}

/// Bound for `delta_n` of a hypersurface with isolated singularities,
/// valid up to powers of `t - 1`.
pub fn bound_thm45(spec: &CheckedSpec) -> Result<LaurentPoly> {
    if spec.mode() != Mode::Hypersurface {
        return Err(Error::Precondition("hypersurface mode required".into()));
    }
    if !spec.flags().isolated_singularities {
        return Err(Error::Precondition(
            "the point-product bound needs isolated singularities".into(),
        ));
    }
    point_product(spec, 0)
}

/// Bound for `P_{n-1}` of an arrangement with isolated singularities,
/// valid up to powers of `t - 1`.
pub fn bound_prop52(spec: &CheckedSpec) -> Result<LaurentPoly> {
    if spec.mode() != Mode::Arrangement {
        return Err(Error::Precondition("arrangement mode required".into()));
    }
    if !spec.flags().isolated_singularities {
        return Err(Error::Precondition(
            "the point-product bound needs isolated singularities".into(),
        ));
    }
    // isolated points of Y are one-dimensional strata of the cone
    point_product(spec, 1)
}

/// `(t - 1)(t^d - 1)^{d - 2}`: the polynomial at infinity of an irreducible
/// plane curve of degree `d` in general position at infinity.
pub fn infinity_bound_curve(d: u64) -> Result<LaurentPoly> {
    if d < 2 {
        return Err(Error::InvalidDegree(format!("d = {d}, expected d >= 2")));
    }
    let exp =
        u32::try_from(d - 2).map_err(|_| Error::InvalidDegree(format!("d = {d} is too large")))?;
    Ok(&t_minus_one() * &LaurentPoly::t_pow_minus_one(d).pow(exp))
}

/// `(-1)^{n+1} chi(U)`, the rank of `H_{n+1}` of the infinite cyclic cover.
pub fn rank_top(spec: &CheckedSpec) -> Result<i64> {
    let chi = spec.spec().chi_complement.ok_or(Error::MissingChi)?;
    let rank = if (spec.n() + 1).is_multiple_of(2) {
        chi
    } else {
        -chi
    };
    if rank < 0 {
        return Err(Error::NegativeRank(rank));
    }
    Ok(rank)
}

/// First degree not covered by the low-degree vanishing: `delta_i ~ 1` for
/// `1 <= i < n - k` when `k = dim Sing(V)` and `n - k >= 2`. A smooth `V`
/// counts as `k = -1`.
pub fn vanishing_bound(spec: &CheckedSpec) -> Option<u32> {
    let n = i64::from(spec.n());
    let k = spec.singular_dim().map_or(-1, i64::from);
    (n - k >= 2).then(|| (n - k) as u32)
}

fn strip_t_minus_one(p: &LaurentPoly) -> Result<LaurentPoly> {
    let mut rest = p.normalize()?;
    let t1 = t_minus_one();
    while let Some(q) = rest.checked_div(&t1)? {
        rest = q;
    }
    rest.normalize()
}

/// Rule set distinguishing the hypersurface and arrangement pipelines.
struct Stage {
    candidates: Rule,
    order_d: Rule,
    use_prop21: bool,
}

const HYPERSURFACE_STAGE: Stage = Stage {
    candidates: rules::LOCAL_CANDIDATES,
    order_d: rules::ORDER_D,
    use_prop21: true,
};

const ARRANGEMENT_STAGE: Stage = Stage {
    candidates: rules::ARRANGEMENT_CANDIDATES,
    order_d: rules::ARRANGEMENT_ORDER_D,
    use_prop21: false,
};

fn exclude(deg: &mut DegreeReport, orders: impl IntoIterator<Item = u64>, rule: Rule) {
    for order in orders {
        deg.excluded_orders.push(Exclusion {
            order,
            rule: rule.id.to_owned(),
            citation: rule.citation.to_owned(),
        });
    }
}

fn sorted(set: &BTreeSet<u64>) -> Vec<u64> {
    set.iter().copied().collect()
}

fn fill_candidates(
    spec: &CheckedSpec,
    i: u32,
    deg: &mut DegreeReport,
    stage: &Stage,
) -> Result<()> {
    let mut sets = Vec::new();
    let mut details = Vec::new();
    for comp in spec.component_names() {
        let (set, sources) = collect(spec, i, comp)?;
        deg.per_component
            .insert(comp.to_owned(), sorted(&set.cyclo_orders));
        let listed = if sources.is_empty() {
            "nothing".to_owned()
        } else {
            sources
                .iter()
                .map(|s| {
                    format!(
                        "{} ξ{} {}",
                        s.stratum,
                        subscript(s.local_degree),
                        orders_text(&s.orders)
                    )
                })
                .collect::<Vec<_>>()
                .join("; ")
        };
        details.push(format!("{comp}: {listed}"));
        sets.push(set);
    }
    let raw = intersect(&sets);
    let joined = if sets.len() > 1 {
        format!(" | intersected over {} components", sets.len())
    } else {
        String::new()
    };
    deg.applied_rules.push(AppliedRule::new(
        stage.candidates,
        format!(
            "{}{joined} ⇒ {}",
            details.join(" | "),
            orders_text(&sorted(&raw.cyclo_orders))
        ),
    ));

    let d = spec.d();
    let kept = thm41_filter(&raw, d);
    let dropped: Vec<u64> = raw
        .cyclo_orders
        .difference(&kept.cyclo_orders)
        .copied()
        .collect();
    exclude(deg, dropped.iter().copied(), stage.order_d);
    let mut detail = format!(
        "roots must be d-th roots of unity (d = {d}): kept {}",
        orders_text(&sorted(&kept.cyclo_orders))
    );
    if !dropped.is_empty() {
        detail.push_str(&format!(", dropped {}", orders_text(&dropped)));
    }
    if !raw.opaque.is_empty() {
        detail.push_str(&format!(
            ", discarded {} non-cyclotomic factor(s)",
            raw.opaque.len()
        ));
    }
    deg.applied_rules
        .push(AppliedRule::new(stage.order_d, detail));
    deg.discarded_opaque = raw.opaque;

    let mut current = kept;
    if stage.use_prop21 && prop21_applies(spec.flags()) {
        let filtered = prop21_filter(&current, spec.flags());
        let detail = if current.cyclo_orders.contains(&1) {
            exclude(deg, [1], rules::RATIONAL_HOMOLOGY_MANIFOLD);
            "rational homology manifold without codimension-one singularities: Φ₁ dropped"
        } else {
            "rational homology manifold without codimension-one singularities: Φ₁ already absent"
        };
        deg.applied_rules
            .push(AppliedRule::new(rules::RATIONAL_HOMOLOGY_MANIFOLD, detail));
        current = filtered;
    }
    deg.candidate_orders = sorted(&current.cyclo_orders);
    deg.opaque = current.opaque;
    Ok(())
}

fn force(deg: &mut DegreeReport, value: LaurentPoly, rule: AppliedRule) {
    deg.forced_value = Some(value);
    deg.forced_by = Some(rule.clone());
    deg.applied_rules.push(rule);
}

fn apply_forcing(spec: &CheckedSpec, deg: &mut DegreeReport, vanish: Option<u32>) {
    let i = deg.degree;
    if let Some(m) = vanish.filter(|&m| i < m) {
        let orders = std::mem::take(&mut deg.candidate_orders);
        exclude(deg, orders, rules::LOW_DEGREE_VANISHING);
        let k = spec
            .singular_dim()
            .map_or_else(|| "empty".to_owned(), |k| k.to_string());
        let rule = AppliedRule::new(
            rules::LOW_DEGREE_VANISHING,
            format!("dim Sing = {k}, so the modules vanish for 1 ≤ i < {m}"),
        );
        force(deg, LaurentPoly::one(), rule);
    } else if deg.candidate_orders.is_empty() && deg.opaque.is_empty() {
        let rule = AppliedRule::new(
            rules::EMPTY_CANDIDATES,
            "no candidate prime survives the filters",
        );
        force(deg, LaurentPoly::one(), rule);
    }
}

fn degree_zero() -> DegreeReport {
    let mut deg = DegreeReport::new(0);
    let rule = AppliedRule::new(rules::DEGREE_ZERO, "the infinite cyclic cover is connected");
    force(&mut deg, t_minus_one(), rule);
    deg
}

fn attach_informational(spec: &CheckedSpec, deg: &mut DegreeReport) {
    deg.informational = spec
        .spec()
        .informational
        .iter()
        .filter(|v| v.degree == deg.degree)
        .cloned()
        .collect();
}

fn check_forced_against(deg: &DegreeReport, bound: &DivisorBound) -> Result<()> {
    if let (Some(f), Relation::Equals) = (&deg.forced_value, bound.relation) {
        if !f.is_unit_equivalent(&bound.poly) {
            return Err(Error::Inconsistent(format!(
                "degree {} is forced to {f} but {} gives {}",
                deg.degree, bound.citation, bound.poly
            )));
        }
    }
    Ok(())
}

fn base_report(spec: &CheckedSpec) -> Result<ObstructionReport> {
    let d = spec.d();
    let mut applied_rules = vec![AppliedRule::new(
        rules::SEMISIMPLE,
        format!("every module is semisimple and annihilated by t^{d} - 1"),
    )];
    let top_rank = match spec.spec().chi_complement {
        Some(_) => {
            let rank = rank_top(spec)?;
            applied_rules.push(AppliedRule::new(
                rules::TOP_RANK,
                format!("rank H_{} = (-1)^(n+1) χ(U) = {rank}", spec.n() + 1),
            ));
            Some(rank)
        }
        None => None,
    };
    Ok(ObstructionReport {
        mode: spec.mode(),
        n: spec.n(),
        d,
        degrees: vec![degree_zero()],
        top_rank,
        minimal_polynomial_divides: LaurentPoly::t_pow_minus_one(d),
        recovered_top: None,
        applied_rules,
    })
}

/// Runs the full pipeline; arrangement descriptions are dispatched to
/// [`arrangement_analyze`].
pub fn analyze(spec: &CheckedSpec) -> Result<ObstructionReport> {
    if spec.mode() == Mode::Arrangement {
        return arrangement_analyze(spec);
    }
    let n = spec.n();
    let d = spec.d();
    let mut report = base_report(spec)?;
    let vanish = vanishing_bound(spec);
    for i in 1..=n {
        let mut deg = DegreeReport::new(i);
        fill_candidates(spec, i, &mut deg, &HYPERSURFACE_STAGE)?;
        apply_forcing(spec, &mut deg, vanish);

        if i == n && spec.flags().isolated_singularities {
            let bound = bound_thm45(spec)?;
            deg.applied_rules.push(AppliedRule::new(
                rules::ISOLATED_POINTS,
                format!("δ{} divides {bound} up to powers of t - 1", subscript(i)),
            ));
            deg.divisor_bounds.push(DivisorBound::new(
                rules::ISOLATED_POINTS,
                Relation::DividesUpToTMinusOne,
                bound,
            ));
        }
        if let Some(p) = spec.spec().infinity_polynomials.get(&i) {
            let (relation, what) = if i < n {
                (Relation::Equals, "equals")
            } else {
                (Relation::Divides, "is a quotient of")
            };
            let p = p.normalize()?;
            deg.applied_rules.push(AppliedRule::new(
                rules::AT_INFINITY,
                format!(
                    "δ{} {what} the module at infinity of order {p}",
                    subscript(i)
                ),
            ));
            let bound = DivisorBound::new(rules::AT_INFINITY, relation, p);
            check_forced_against(&deg, &bound)?;
            deg.divisor_bounds.push(bound);
        }
        if n == 1 && spec.spec().components.len() == 1 && d >= 2 {
            let p = infinity_bound_curve(d)?;
            deg.applied_rules.push(AppliedRule::new(
                rules::AT_INFINITY,
                format!("irreducible curve in general position at infinity: δ₁ divides {p}"),
            ));
            deg.divisor_bounds
                .push(DivisorBound::new(rules::AT_INFINITY, Relation::Divides, p));
        }
        attach_informational(spec, &mut deg);
        report.degrees.push(deg);
    }
    Ok(report)
}

/// Obstructions on the monodromy polynomials `P_0, ..., P_n` of the Milnor
/// fiber of an arrangement `Y ⊂ CP^n`, read off the cone over `Y`.
pub fn arrangement_analyze(spec: &CheckedSpec) -> Result<ObstructionReport> {
    if spec.mode() != Mode::Arrangement {
        return Err(Error::Precondition("arrangement mode required".into()));
    }
    let n = spec.n();
    let d = spec.d();
    let mut report = base_report(spec)?;
    let vanish = vanishing_bound(spec);
    let normal_crossing: Vec<&str> = spec
        .spec()
        .components
        .iter()
        .filter(|c| c.normal_crossing)
        .map(|c| c.name.as_str())
        .collect();

    for q in 1..n {
        let mut deg = DegreeReport::new(q);
        fill_candidates(spec, q, &mut deg, &ARRANGEMENT_STAGE)?;
        if !normal_crossing.is_empty() {
            let dropped: Vec<u64> = deg
                .candidate_orders
                .iter()
                .copied()
                .filter(|&e| e != 1)
                .collect();
            deg.candidate_orders.retain(|&e| e == 1);
            exclude(&mut deg, dropped, rules::NORMAL_CROSSING);
            deg.applied_rules.push(AppliedRule::new(
                rules::NORMAL_CROSSING,
                format!(
                    "normal crossings along {}: monodromy acts trivially, candidates {}",
                    normal_crossing.join(", "),
                    orders_text(&deg.candidate_orders)
                ),
            ));
        }
        apply_forcing(spec, &mut deg, vanish);
        if q == n - 1 && spec.flags().isolated_singularities {
            let bound = bound_prop52(spec)?;
            deg.applied_rules.push(AppliedRule::new(
                rules::ARRANGEMENT_POINTS,
                format!("P{} divides {bound} up to powers of t - 1", subscript(q)),
            ));
            deg.divisor_bounds.push(DivisorBound::new(
                rules::ARRANGEMENT_POINTS,
                Relation::DividesUpToTMinusOne,
                bound,
            ));
        }
        attach_informational(spec, &mut deg);
        report.degrees.push(deg);
    }

    let mut top = DegreeReport::new(n);
    top.candidate_orders = divisors(d);
    top.applied_rules.push(AppliedRule::new(
        rules::ORDER_D,
        format!(
            "the cone point link is the Milnor fiber itself; only h^d = 1 applies: {}",
            orders_text(&top.candidate_orders)
        ),
    ));
    attach_informational(spec, &mut top);

    if let Some(chi) = spec.spec().chi_milnor_fiber {
        let known: Option<Vec<LaurentPoly>> = report
            .degrees
            .iter()
            .map(|deg| {
                deg.forced_value
                    .clone()
                    .or_else(|| deg.informational.first().map(|v| v.poly.clone()))
            })
            .collect();
        match known {
            Some(lower) => {
                let p = euler_product_solve(&lower, chi, d, n)?;
                let rest = strip_d_th_roots(&p, d)?;
                if !rest.is_unit() {
                    return Err(Error::Inconsistent(format!(
                        "recovered P{} = {p} has roots that are not d-th roots of unity",
                        subscript(n)
                    )));
                }
                top.applied_rules.push(AppliedRule::new(
                    rules::EULER_PRODUCT,
                    format!(
                        "χ(F) = {chi} and P₀..P{} known ⇒ P{} ∼ {p}",
                        subscript(n - 1),
                        subscript(n)
                    ),
                ));
                top.divisor_bounds.push(DivisorBound::new(
                    rules::EULER_PRODUCT,
                    Relation::Equals,
                    p.clone(),
                ));
                report.recovered_top = Some(p);
            }
            None => {
                top.applied_rules.push(AppliedRule::new(
                    rules::EULER_PRODUCT,
                    "χ(F) given but some lower P_q is undetermined; P_n not recovered",
                ));
            }
        }
    }
    report.degrees.push(top);
    Ok(report)
}

/// Solves `prod_{q=0}^{n} P_q^{(-1)^{q+1}} = (1 - t^d)^{-chi(F)/d}` for `P_n`
/// given `P_0, ..., P_{n-1}`. The result is normalized; the identity then
/// holds up to units.
pub fn euler_product_solve(p: &[LaurentPoly], chi_f: i64, d: u64, n: u32) -> Result<LaurentPoly> {
    if d < 1 {
        return Err(Error::InvalidDegree(format!("d = {d}, expected d >= 1")));
    }
    if p.len() != n as usize {
        return Err(Error::Precondition(format!(
            "expected P_0..P_{{n-1}} ({n} polynomials), got {}",
            p.len()
        )));
    }
    if p.iter().any(LaurentPoly::is_zero) {
        return Err(Error::Precondition("every P_q must be nonzero".into()));
    }
    let d_signed =
        i64::try_from(d).map_err(|_| Error::InvalidDegree(format!("d = {d} is too large")))?;
    if chi_f % d_signed != 0 {
        return Err(Error::ChiNotDivisible { chi: chi_f, d });
    }
    let k = -chi_f / d_signed;
    let one_minus = -LaurentPoly::t_pow_minus_one(d);
    let power = one_minus.pow(u32::try_from(k.unsigned_abs()).map_err(|_| {
        Error::Inconsistent(format!("|χ(F)/d| = {} is too large", k.unsigned_abs()))
    })?);
    // P_n^{e_n} = num / den with e_q = (-1)^{q+1}
    let (mut num, mut den) = if k >= 0 {
        (power, LaurentPoly::one())
    } else {
        (LaurentPoly::one(), power)
    };
    for (q, pq) in p.iter().enumerate() {
        if q % 2 == 0 {
            num = &num * pq;
        } else {
            den = &den * pq;
        }
    }
    let (top, bottom) = if n % 2 == 1 { (num, den) } else { (den, num) };
    match top.checked_div(&bottom)? {
        Some(q) if !q.is_zero() => q.normalize(),
        _ => Err(Error::Inconsistent(format!(
            "P_{n} = ({top}) / ({bottom}) is not a polynomial"
        ))),
    }
}

/// Checks `prod_{q=0}^{n} P_q^{(-1)^{q+1}} = (1 - t^d)^{-chi(F)/d}` up to units,
/// with `n = polys.len() - 1`.
pub fn euler_identity_holds(polys: &[LaurentPoly], chi_f: i64, d: u64) -> Result<bool> {
    let d_signed =
        i64::try_from(d).map_err(|_| Error::InvalidDegree(format!("d = {d} is too large")))?;
    if d_signed < 1 || chi_f % d_signed != 0 {
        return Err(Error::ChiNotDivisible { chi: chi_f, d });
    }
    let k = -chi_f / d_signed;
    let one_minus = -LaurentPoly::t_pow_minus_one(d);
    let power = one_minus.pow(k.unsigned_abs() as u32);
    // positive-exponent factors on the left, negative ones on the right
    let (mut left, mut right) = if k >= 0 {
        (LaurentPoly::one(), power)
    } else {
        (power, LaurentPoly::one())
    };
    for (q, pq) in polys.iter().enumerate() {
        if q % 2 == 1 {
            left = &left * pq;
        } else {
            right = &right * pq;
        }
    }
    Ok(left.is_unit_equivalent(&right))
}

/// What is left of `p` after removing every factor shared with `t^d - 1`.
fn strip_d_th_roots(p: &LaurentPoly, d: u64) -> Result<LaurentPoly> {
    let cyc = LaurentPoly::t_pow_minus_one(d);
    let mut rest = p.normalize()?;
    loop {
        let g = rest.gcd(&cyc)?;
        if g.is_one() {
            return Ok(rest);
        }
        rest = rest
            .checked_div(&g)?
            .expect("gcd divides its argument")
            .normalize()?;
    }
}

/// A claimed value of `delta_i` (arrangement mode: `P_i`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub degree: u32,
    pub poly: LaurentPoly,
}

impl Claim {
    pub fn new(degree: u32, poly: LaurentPoly) -> Self {
        Self { degree, poly }
    }

    /// Parses `i:<polynomial>` with the polynomial in either JSON encoding.
    pub fn parse(text: &str) -> Result<Self> {
        let (deg, poly) = text.split_once(':').ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: format!("claim `{text}` is not of the form i:<polynomial>"),
        })?;
        let degree = deg.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            column: 1,
            message: format!("claim degree `{deg}` is not a non-negative integer"),
        })?;
        let poly = crate::codec::parse_poly(poly.trim())?;
        Ok(Self { degree, poly })
    }
}

fn reject(rule: &str, citation: &str, reason: String) -> Option<ClaimRejection> {
    Some(ClaimRejection {
        rule: rule.to_owned(),
        citation: citation.to_owned(),
        reason,
    })
}

fn check_claim(report: &ObstructionReport, claim: &Claim) -> Result<ClaimOutcome> {
    let deg = report.degree(claim.degree).ok_or_else(|| {
        Error::Precondition(format!(
            "claim degree {} exceeds n = {}",
            claim.degree, report.n
        ))
    })?;
    let d = report.d;
    let name = match report.mode {
        Mode::Hypersurface => format!("δ{}", subscript(claim.degree)),
        Mode::Arrangement => format!("P{}", subscript(claim.degree)),
    };
    let mut checked = Vec::new();
    let outcome = |checked: Vec<String>, rejection: Option<ClaimRejection>| ClaimOutcome {
        degree: claim.degree,
        claim: claim.poly.clone(),
        accepted: rejection.is_none(),
        rejection,
        checked,
    };

    checked.push(rules::TORSION.citation.to_owned());
    if claim.poly.is_zero() {
        let r = rules::TORSION;
        return Ok(outcome(
            checked,
            reject(
                r.id,
                r.citation,
                format!("{name} is the order of a torsion module and cannot be 0"),
            ),
        ));
    }
    let poly = claim.poly.normalize()?;

    checked.push(rules::ORDER_D.citation.to_owned());
    let rest = strip_d_th_roots(&poly, d)?;
    if !rest.is_unit() {
        let span = rest.span().unwrap_or(0);
        let fac = cyclo_factor(&rest, &orders_up_to_degree(span))?;
        let mut reason = String::new();
        let bad: Vec<u64> = fac.orders().collect();
        if !bad.is_empty() {
            reason.push_str(&format!("{} not dividing t^{d} - 1", orders_text(&bad)));
        }
        if !fac.remainder.is_unit() {
            if !reason.is_empty() {
                reason.push_str("; ");
            }
            reason.push_str(&format!(
                "factor {} has roots that are not roots of unity",
                fac.remainder
            ));
        }
        let r = rules::ORDER_D;
        return Ok(outcome(
            checked,
            reject(
                r.id,
                r.citation,
                format!("{name}: roots must be d-th roots of unity (d = {d}): {reason}"),
            ),
        ));
    }

    if let (Some(f), Some(by)) = (&deg.forced_value, &deg.forced_by) {
        checked.push(by.citation.clone());
        if !poly.is_unit_equivalent(f) {
            return Ok(outcome(
                checked,
                reject(
                    &by.rule,
                    &by.citation,
                    format!("{name} is forced to be {f}"),
                ),
            ));
        }
    } else {
        let candidates_rule = match report.mode {
            Mode::Hypersurface => rules::LOCAL_CANDIDATES,
            Mode::Arrangement => rules::ARRANGEMENT_CANDIDATES,
        };
        checked.push(candidates_rule.citation.to_owned());
        let fac = cyclo_factor(&poly, &divisors(d).into_iter().collect())?;
        for e in fac.orders() {
            if deg.candidate_orders.contains(&e) {
                continue;
            }
            let reason = format!(
                "Φ{} is not among the candidate primes {{{}}}",
                subscript(e),
                orders_text(&deg.candidate_orders)
            );
            let rejection = match deg.excluded_orders.iter().find(|x| x.order == e) {
                Some(x) => reject(&x.rule, &x.citation, reason),
                None => reject(candidates_rule.id, candidates_rule.citation, reason),
            };
            return Ok(outcome(checked, rejection));
        }
    }

    for bound in &deg.divisor_bounds {
        checked.push(bound.citation.clone());
        let (ok, rel) = match bound.relation {
            Relation::Divides => (poly.divides(&bound.poly)?, "divide"),
            Relation::DividesUpToTMinusOne => (
                strip_t_minus_one(&poly)?.divides(&strip_t_minus_one(&bound.poly)?)?,
                "divide (up to powers of t - 1)",
            ),
            Relation::Equals => (poly.is_unit_equivalent(&bound.poly), "equal"),
        };
        if !ok {
            return Ok(outcome(
                checked,
                reject(
                    &bound.rule,
                    &bound.citation,
                    format!("{name} must {rel} {}", bound.poly),
                ),
            ));
        }
    }
    Ok(outcome(checked, None))
}

/// Checks claims against an existing report.
pub fn verify_report(report: ObstructionReport, claims: &[Claim]) -> Result<VerifyReport> {
    let outcomes = claims
        .iter()
        .map(|c| check_claim(&report, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { report, outcomes })
}

/// Analyzes `spec` and checks every claim against all applicable filters and bounds.
pub fn verify(spec: &CheckedSpec, claims: &[Claim]) -> Result<VerifyReport> {
    verify_report(analyze(spec)?, claims)
}

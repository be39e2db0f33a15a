//! Analytic spread, the Burch bound, and the constancy certificate for
//! ideals whose Rees ring is Cohen–Macaulay.

use alloc::vec::Vec;
use core::fmt;

use crate::betti::{DepthReport, Guards};
use crate::context::FieldSpec;
use crate::error::{Error, GuardKind, Result};
use crate::families;
use crate::forest::SimplicialComplex;
use crate::graph::Graph;
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::matroid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpreadMethod {
    ExponentRank,
    MuGrowth { k_max: u32 },
    EdgeFormula,
    MatroidalFormula,
    ForestFormula,
    DisjointSum,
    DisjointProduct,
}

impl fmt::Display for SpreadMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpreadMethod::ExponentRank => f.write_str("exponent_rank"),
            SpreadMethod::MuGrowth { k_max } => write!(f, "mu_growth({k_max})"),
            SpreadMethod::EdgeFormula => f.write_str("edge_formula"),
            SpreadMethod::MatroidalFormula => f.write_str("matroidal_formula"),
            SpreadMethod::ForestFormula => f.write_str("forest_formula"),
            SpreadMethod::DisjointSum => f.write_str("disjoint_sum"),
            SpreadMethod::DisjointProduct => f.write_str("disjoint_product"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Confidence {
    Exact,
    HeuristicLowerBound,
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confidence::Exact => "exact",
            Confidence::HeuristicLowerBound => "heuristic_lower_bound",
        })
    }
}

/// The analytic spread `ℓ(I)` and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpreadResult {
    pub value: usize,
    pub method: SpreadMethod,
    pub confidence: Confidence,
}

impl SpreadResult {
    pub fn exact(value: usize, method: SpreadMethod) -> Self {
        SpreadResult { value, method, confidence: Confidence::Exact }
    }

    pub fn is_exact(&self) -> bool {
        self.confidence == Confidence::Exact
    }
}

/// Why a Rees ring is known to be Cohen–Macaulay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmReason {
    Matroidal,
    BipartiteEdge,
    SimplicialForest,
    DisjointSumOfCm,
    DisjointProductOfCm,
    PrimePowerProduct,
}

impl fmt::Display for CmReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmReason::Matroidal => "matroidal",
            CmReason::BipartiteEdge => "bipartite_edge",
            CmReason::SimplicialForest => "simplicial_forest",
            CmReason::DisjointSumOfCm => "disjoint_sum_of_CM",
            CmReason::DisjointProductOfCm => "disjoint_product_of_CM",
            CmReason::PrimePowerProduct => "prime_power_product",
        })
    }
}

/// Cohen–Macaulayness of the Rees ring. Never computed, only granted by a
/// recognized class or asserted by the user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReesCmStatus {
    GuaranteedByClass(CmReason),
    AssertedByUser,
    Unknown,
}

impl ReesCmStatus {
    pub fn is_known_cm(&self) -> bool {
        !matches!(self, ReesCmStatus::Unknown)
    }
}

impl fmt::Display for ReesCmStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReesCmStatus::GuaranteedByClass(r) => write!(f, "guaranteed_by_class({r})"),
            ReesCmStatus::AssertedByUser => f.write_str("asserted_by_user"),
            ReesCmStatus::Unknown => f.write_str("unknown"),
        }
    }
}

/// A certified value of `lim depth S/I^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitClaim {
    pub limit: usize,
    pub basis: ReesCmStatus,
}

/// `ℓ(I)` as the rank of the exponent matrix; valid for ideals generated in
/// one degree, whose fiber ring is the toric ring of the generators.
pub fn spread_exponent_rank(ideal: &MonomialIdeal) -> Result<SpreadResult> {
    ideal.ensure_proper_nonzero()?;
    if !ideal.is_equigenerated() {
        return Err(Error::NotEquigenerated);
    }
    let rows: Vec<Vec<i64>> =
        ideal.gens().iter().map(|g| g.exponents().iter().map(|&e| i64::from(e)).collect()).collect();
    let value = linalg::rank(&rows, FieldSpec::Rationals);
    Ok(SpreadResult::exact(value, SpreadMethod::ExponentRank))
}

/// Number of minimal generators of `I^k` for `k = 0..=k_max`: the Hilbert
/// function of the fiber ring.
pub fn fiber_hilbert_function(ideal: &MonomialIdeal, k_max: u32, guards: &Guards) -> Result<Vec<usize>> {
    ideal.ensure_proper_nonzero()?;
    let limit = guards.lattice_limit();
    let mut out = alloc::vec![1usize];
    let mut power = ideal.clone();
    for k in 1..=k_max {
        if k > 1 {
            power = power.product(ideal)?;
        }
        if power.num_gens() > limit {
            return Err(Error::AtPower {
                power: k,
                source: alloc::boxed::Box::new(Error::GuardExceeded {
                    guard: GuardKind::LcmLattice,
                    limit,
                    found: power.num_gens(),
                }),
            });
        }
        out.push(power.num_gens());
    }
    Ok(out)
}

/// `ℓ(I)` as one plus the degree of the eventual polynomial `k ↦ |G(I^k)|`,
/// read off successive differences. Exact only when the top difference has
/// been constant over the last two steps.
pub fn spread_mu_growth(ideal: &MonomialIdeal, k_max: u32, guards: &Guards) -> Result<SpreadResult> {
    if k_max < 3 {
        return Err(Error::Precondition("mu-growth needs k_max >= 3".into()));
    }
    let h = fiber_hilbert_function(ideal, k_max, guards)?;
    let method = SpreadMethod::MuGrowth { k_max };
    let mut diff: Vec<i64> = h.iter().map(|&x| x as i64).collect();
    let mut last_positive = 0usize;
    for degree in 0..h.len() {
        let len = diff.len();
        if len >= 3 {
            let tail = &diff[len - 3..];
            if tail[0] != 0 && tail[0] == tail[1] && tail[1] == tail[2] {
                return Ok(SpreadResult::exact(degree + 1, method));
            }
        }
        if diff.last().is_some_and(|&x| x > 0) {
            last_positive = degree;
        }
        if len < 2 {
            break;
        }
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let value = (last_positive + 1).min(ideal.num_vars());
    Ok(SpreadResult { value, method, confidence: Confidence::HeuristicLowerBound })
}

/// `ℓ(I + J)` for ideals in disjoint sets of variables.
pub fn spread_sum_disjoint(l_i: usize, l_j: usize) -> usize {
    l_i + l_j
}

/// `ℓ(IJ)` for ideals in disjoint sets of variables.
pub fn spread_product_disjoint(l_i: usize, l_j: usize) -> usize {
    (l_i + l_j).saturating_sub(1)
}

/// Upper bound `n - ℓ(I)` on the limit depth.
pub fn burch_bound(ideal: &MonomialIdeal, spread: &SpreadResult) -> Result<usize> {
    if !spread.is_exact() {
        return Err(Error::HeuristicSpread);
    }
    ideal
        .num_vars()
        .checked_sub(spread.value)
        .ok_or_else(|| Error::InternalInconsistency(alloc::format!("spread {} exceeds n", spread.value)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateVerdict {
    ConstantForAllPowers,
    NotConstant,
    EvidenceOnly,
}

impl fmt::Display for CertificateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateVerdict::ConstantForAllPowers => "CONSTANT_FOR_ALL_POWERS",
            CertificateVerdict::NotConstant => "NOT_CONSTANT",
            CertificateVerdict::EvidenceOnly => "EVIDENCE_ONLY",
        })
    }
}

/// Outcome of comparing `depth S/I` with `n - ℓ(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: CertificateVerdict,
    pub method: SpreadMethod,
    pub cm_basis: ReesCmStatus,
    pub n_minus_ell: usize,
    pub depth1: usize,
}

impl Certificate {
    /// The limit depth this certificate establishes, if any.
    pub fn limit_claim(&self) -> Option<LimitClaim> {
        self.cm_basis.is_known_cm().then_some(LimitClaim { limit: self.n_minus_ell, basis: self.cm_basis })
    }
}

/// With a Cohen–Macaulay Rees ring the minimum of the depth function is
/// `n - ℓ(I)` and it is attained from then on, so the function is constant
/// iff `depth S/I = n - ℓ(I)`. Without that guarantee only evidence remains.
pub fn certify_constant(
    ideal: &MonomialIdeal,
    cm: ReesCmStatus,
    depth1: usize,
    spread: &SpreadResult,
) -> Result<Certificate> {
    ideal.ensure_proper_nonzero()?;
    let n_minus_ell = burch_bound(ideal, spread)?;
    let verdict = match cm {
        ReesCmStatus::Unknown => CertificateVerdict::EvidenceOnly,
        _ if depth1 == n_minus_ell => CertificateVerdict::ConstantForAllPowers,
        _ if depth1 > n_minus_ell => CertificateVerdict::NotConstant,
        _ => {
            return Err(Error::InternalInconsistency(alloc::format!(
                "depth S/I = {depth1} is below n - l(I) = {n_minus_ell} although the Rees ring is Cohen-Macaulay"
            )))
        }
    };
    Ok(Certificate { verdict, method: spread.method, cm_basis: cm, n_minus_ell, depth1 })
}

/// Folds computed series evidence into a certificate: a non-constant prefix
/// disproves constancy outright.
pub fn final_verdict(cert: Option<&Certificate>, report: &DepthReport) -> CertificateVerdict {
    match cert.map(|c| c.verdict) {
        Some(CertificateVerdict::ConstantForAllPowers) => CertificateVerdict::ConstantForAllPowers,
        Some(CertificateVerdict::NotConstant) => CertificateVerdict::NotConstant,
        _ if !report.is_constant_prefix() => CertificateVerdict::NotConstant,
        _ => CertificateVerdict::EvidenceOnly,
    }
}

/// Cohen–Macaulayness of the Rees ring as granted by class membership.
pub fn rees_cm_status(ideal: &MonomialIdeal, guards: &Guards) -> ReesCmStatus {
    if ideal.ensure_proper_nonzero().is_err() || !ideal.is_squarefree() {
        return ReesCmStatus::Unknown;
    }
    match class_reason(ideal, guards) {
        Some(r) => ReesCmStatus::GuaranteedByClass(r),
        None => ReesCmStatus::Unknown,
    }
}

fn class_reason(ideal: &MonomialIdeal, guards: &Guards) -> Option<CmReason> {
    if let Ok(c) = families::in_class_c(ideal) {
        if c.accepted && c.blocks.len() == 1 {
            return Some(CmReason::PrimePowerProduct);
        }
    }
    if ideal.is_equigenerated() && matroid::is_matroidal(ideal).is_ok_and(|m| m.matroidal) {
        return Some(CmReason::Matroidal);
    }
    if ideal.equigenerated_degree() == Some(2) {
        if let Ok(g) = Graph::from_edge_ideal(ideal) {
            if g.bipartition().is_some() {
                return Some(CmReason::BipartiteEdge);
            }
        }
    }
    if let Ok(delta) = SimplicialComplex::from_ideal(ideal) {
        if delta.is_forest(guards).unwrap_or(false) {
            return Some(CmReason::SimplicialForest);
        }
    }
    let blocks = ideal.variable_disjoint_blocks();
    if blocks.len() > 1 && blocks.iter().all(|b| class_reason(b, guards).is_some()) {
        return Some(CmReason::DisjointSumOfCm);
    }
    if let Ok(u) = ideal.gcd_of_gens() {
        if !u.is_one() {
            let rest = ideal.colon(&u).ok()?;
            if rest.is_unit() || class_reason(&rest, guards).is_some() {
                return Some(CmReason::DisjointProductOfCm);
            }
        }
    }
    None
}

/// Exact spread by the best available route: exponent rank for ideals in one
/// degree, the facet count for pure forests, otherwise generator growth of
/// powers up to `mu_k_max`.
pub fn best_spread(ideal: &MonomialIdeal, guards: &Guards, mu_k_max: u32) -> Result<SpreadResult> {
    ideal.ensure_proper_nonzero()?;
    if ideal.is_equigenerated() {
        return spread_exponent_rank(ideal);
    }
    if ideal.is_squarefree() {
        if let Ok(delta) = SimplicialComplex::from_ideal(ideal) {
            if delta.is_pure() && delta.is_forest(guards).unwrap_or(false) {
                return crate::forest::spread_forest(&delta, guards);
            }
        }
    }
    spread_mu_growth(ideal, mu_k_max, guards)
}

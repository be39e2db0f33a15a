//! Matroidal ideals: the exchange property, the linear relation graph `Γ_I`,
//! and the classification of matroidal ideals with constant depth function
//! as products of monomial primes in disjoint sets of variables.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::spread::{SpreadMethod, SpreadResult};
use crate::verdict::Verdict;

/// A failing instance `(u, v, i)` of the exchange property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeFailure {
    pub u: Monomial,
    pub v: Monomial,
    pub var: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidCheck {
    pub matroidal: bool,
    pub witness: Option<ExchangeFailure>,
}

fn require_squarefree_equigenerated(ideal: &MonomialIdeal) -> Result<u64> {
    ideal.ensure_proper_nonzero()?;
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    ideal.equigenerated_degree().ok_or(Error::NotEquigenerated)
}

/// Exhaustive check of the exchange property: for `u, v ∈ G(I)` and `x_i | u`
/// with `x_i ∤ v` there must be `j ≠ i` with `x_j | v`, `x_j ∤ u` and
/// `(u/x_i)·x_j ∈ G(I)`. Reports the first failing triple.
pub fn is_matroidal(ideal: &MonomialIdeal) -> Result<MatroidCheck> {
    require_squarefree_equigenerated(ideal)?;
    let gens: BTreeSet<&Monomial> = ideal.gens().iter().collect();
    let n = ideal.num_vars();
    for u in ideal.gens() {
        for v in ideal.gens() {
            for i in u.support().filter(|&i| v.exp(i) == 0) {
                let base = u.div(&Monomial::var(n, i)).expect("x_i divides u");
                let ok = v
                    .support()
                    .filter(|&j| j != i && u.exp(j) == 0)
                    .any(|j| gens.contains(&base.times_var(j).expect("squarefree")));
                if !ok {
                    let witness = ExchangeFailure { u: u.clone(), v: v.clone(), var: i };
                    return Ok(MatroidCheck { matroidal: false, witness: Some(witness) });
                }
            }
        }
    }
    Ok(MatroidCheck { matroidal: true, witness: None })
}

/// The linear relation graph: `{x_i, x_j}` is an edge iff `x_i u_k = x_j u_l`
/// for some generators `u_k, u_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRelationGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Vertex sets of the connected components, ordered by least variable.
    pub components: Vec<Vec<usize>>,
}

impl LinearRelationGraph {
    pub fn r(&self) -> usize {
        self.vertices.len()
    }

    pub fn s(&self) -> usize {
        self.components.len()
    }
}

pub fn linear_relation_graph(ideal: &MonomialIdeal) -> Result<LinearRelationGraph> {
    ideal.ensure_proper_nonzero()?;
    let n = ideal.num_vars();
    let gens: BTreeSet<&Monomial> = ideal.gens().iter().collect();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    // x_i u_k = x_j u_l with i != j forces x_j | u_k and u_l = u_k x_i / x_j
    for u in ideal.gens() {
        for j in u.support() {
            let base = u.div(&Monomial::var(n, j)).expect("x_j divides u");
            for i in (0..n).filter(|&i| i != j) {
                if gens.contains(&base.times_var(i)?) {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
    }
    let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let vertices: Vec<usize> = vertices.into_iter().collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut slot: Vec<Option<usize>> = vec![None; n];
    for &v in &vertices {
        let r = find(&mut parent, v);
        match slot[r] {
            Some(s) => components[s].push(v),
            None => {
                slot[r] = Some(components.len());
                components.push(vec![v]);
            }
        }
    }
    Ok(LinearRelationGraph { vertices, edges: edges.into_iter().collect(), components })
}

/// `ℓ(I) = r - s + 1` for matroidal `I`.
pub fn spread_matroidal(ideal: &MonomialIdeal) -> Result<SpreadResult> {
    if !is_matroidal(ideal)?.matroidal {
        return Err(Error::NotMatroidal);
    }
    let gamma = linear_relation_graph(ideal)?;
    Ok(SpreadResult::exact(gamma.r() + 1 - gamma.s(), SpreadMethod::MatroidalFormula))
}

/// An ideal with its gcd divided out and its ring restricted to the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    /// `None` when dividing out the gcd leaves the unit ideal (principal input).
    pub ideal: Option<MonomialIdeal>,
    pub gcd: Monomial,
    /// Original indices of the variables that were dropped.
    pub dropped: Vec<usize>,
    /// Original index of each variable of the normalized ring.
    pub kept: Vec<usize>,
}

pub fn normalize(ideal: &MonomialIdeal) -> Result<Normalized> {
    ideal.ensure_proper_nonzero()?;
    let gcd = ideal.gcd_of_gens()?;
    let quotient = ideal.colon(&gcd)?;
    let kept = quotient.support();
    let dropped = (0..ideal.num_vars()).filter(|v| !kept.contains(v)).collect();
    let normalized = if quotient.is_unit() { None } else { Some(quotient.restrict_to(&kept)?) };
    Ok(Normalized { ideal: normalized, gcd, dropped, kept })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidalVerdict {
    pub matroidal: bool,
    pub witness: Option<ExchangeFailure>,
    pub normalization: Option<Normalized>,
    /// Generating degree of the normalized ideal.
    pub d: usize,
    pub r: usize,
    pub s: usize,
    pub verdict: Verdict,
    /// When constant: variable sets (original indices) of the prime factors.
    pub factors: Option<Vec<Vec<usize>>>,
}

/// Classifies a squarefree equigenerated ideal. Non-matroidal input gets a
/// `NotApplicable` verdict with the exchange witness. The verdict applies to
/// the normalized ideal (gcd divided out, ring restricted to the support).
pub fn classify_matroidal(ideal: &MonomialIdeal) -> Result<MatroidalVerdict> {
    let check = is_matroidal(ideal)?;
    if !check.matroidal {
        return Ok(MatroidalVerdict {
            matroidal: false,
            witness: check.witness,
            normalization: None,
            d: 0,
            r: 0,
            s: 0,
            verdict: Verdict::NotApplicable,
            factors: None,
        });
    }
    let norm = normalize(ideal)?;
    let Some(j) = norm.ideal.clone() else {
        // principal: a product of principal primes
        return Ok(MatroidalVerdict {
            matroidal: true,
            witness: None,
            normalization: Some(norm),
            d: 0,
            r: 0,
            s: 0,
            verdict: Verdict::Constant,
            factors: Some(Vec::new()),
        });
    };
    let d = j.equigenerated_degree().ok_or(Error::NotEquigenerated)? as usize;
    if !is_matroidal(&j)?.matroidal {
        return Err(Error::InternalInconsistency("normalization broke the exchange property".into()));
    }
    let gamma = linear_relation_graph(&j)?;
    let n = j.num_vars();
    if gamma.r() != n {
        return Err(Error::InternalInconsistency(format!(
            "linear relation graph covers {} of {n} variables of a normalized matroidal ideal",
            gamma.r()
        )));
    }
    if gamma.s() > d {
        return Err(Error::InternalInconsistency(format!("s = {} exceeds d = {d}", gamma.s())));
    }
    for g in j.gens() {
        if let Some(c) = gamma.components.iter().find(|c| c.iter().all(|&v| g.exp(v) == 0)) {
            return Err(Error::InternalInconsistency(format!("generator avoids the component {c:?}")));
        }
    }
    let constant = gamma.s() == d;
    let factors = if constant {
        let primes: Vec<MonomialIdeal> =
            gamma.components.iter().map(|c| MonomialIdeal::prime(j.ctx().clone(), c)).collect::<Result<_>>()?;
        let product = product_of(&j, &primes)?;
        if product != j {
            return Err(Error::InternalInconsistency("prime factorization does not expand to the ideal".into()));
        }
        let original = gamma.components.iter().map(|c| c.iter().map(|&v| norm.kept[v]).collect()).collect();
        Some(original)
    } else {
        None
    };
    Ok(MatroidalVerdict {
        matroidal: true,
        witness: None,
        normalization: Some(norm),
        d,
        r: gamma.r(),
        s: gamma.s(),
        verdict: Verdict::from_bool(constant),
        factors,
    })
}

fn product_of(like: &MonomialIdeal, primes: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    let one = MonomialIdeal::unit(Arc::clone(like.ctx()));
    primes.iter().try_fold(one, |acc, p| acc.product(p))
}

/// `depth S/I = d - 1` for a matroidal ideal with gcd 1 and full support.
pub fn depth_formula_matroidal(ideal: &MonomialIdeal) -> Result<usize> {
    let d = require_squarefree_equigenerated(ideal)?;
    if !is_matroidal(ideal)?.matroidal {
        return Err(Error::NotMatroidal);
    }
    if !ideal.gcd_of_gens()?.is_one() || ideal.support().len() != ideal.num_vars() {
        return Err(Error::Precondition("ideal must have gcd 1 and full support".into()));
    }
    Ok(d as usize - 1)
}

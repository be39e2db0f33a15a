//! Simplicial complexes given by their facets: leaves, forests, purity,
//! codimension-one connectivity, and the constancy classifier for facet
//! ideals of pure forests whose components are connected in codimension one.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::betti::Guards;
use crate::context::PolyContext;
use crate::error::{Error, GuardKind, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::spread::{SpreadMethod, SpreadResult};
use crate::verdict::Verdict;

/// A simplicial complex stored as its facets, each a sorted list of vertex
/// labels. Facets form a nonempty antichain sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Vec<usize>>,
    vertices: Vec<usize>,
}

impl SimplicialComplex {
    /// Builds a complex from facets. Repeated facets collapse; a facet
    /// contained in another is an error, as is an empty facet list or an
    /// empty facet.
    pub fn new(facets: Vec<Vec<usize>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::InvalidComplex("a complex needs at least one facet".into()));
        }
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for f in facets {
            let s: BTreeSet<usize> = f.iter().copied().collect();
            if s.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if s.len() != f.len() {
                return Err(Error::InvalidComplex(format!("repeated vertex in facet {f:?}")));
            }
            let v: Vec<usize> = s.into_iter().collect();
            if !sets.contains(&v) {
                sets.push(v);
            }
        }
        for a in &sets {
            for b in &sets {
                if a != b && a.iter().all(|x| b.contains(x)) {
                    return Err(Error::InvalidComplex(format!("facet {a:?} lies inside facet {b:?}")));
                }
            }
        }
        sets.sort();
        let vertices: BTreeSet<usize> = sets.iter().flatten().copied().collect();
        if vertices.len() > 128 {
            return Err(Error::InvalidComplex("more than 128 vertices".into()));
        }
        Ok(SimplicialComplex { facets: sets, vertices: vertices.into_iter().collect() })
    }

    /// The complex whose facet ideal is `ideal`; vertices are variable indices.
    pub fn from_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        ideal.ensure_proper_nonzero()?;
        if !ideal.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Self::new(ideal.gens().iter().map(|g| g.support().collect()).collect())
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn dim(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.len() == self.facets[0].len())
    }

    fn masks(&self) -> Vec<u128> {
        self.facets
            .iter()
            .map(|f| f.iter().fold(0u128, |m, v| m | 1u128 << self.vertices.binary_search(v).expect("vertex")))
            .collect()
    }

    /// Facet ideal over `ctx`, where vertex `v` is the variable with index `v`.
    pub fn facet_ideal_in(&self, ctx: Arc<PolyContext>) -> Result<MonomialIdeal> {
        let n = ctx.num_vars();
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { index: v, bound: n });
        }
        let gens = self.facets.iter().map(|f| Monomial::squarefree(n, f.iter().copied())).collect();
        MonomialIdeal::new(ctx, gens)
    }

    /// Facet ideal in the variables `x<v>` for the vertex labels `v`, in
    /// increasing label order.
    pub fn facet_ideal(&self) -> Result<MonomialIdeal> {
        let names: Vec<String> = self.vertices.iter().map(|v| format!("x{v}")).collect();
        let ctx = Arc::new(PolyContext::new(names, Default::default())?);
        let n = self.vertices.len();
        let gens = self
            .facets
            .iter()
            .map(|f| Monomial::squarefree(n, f.iter().map(|v| self.vertices.binary_search(v).expect("vertex"))))
            .collect();
        MonomialIdeal::new(ctx, gens)
    }

    /// Every leaf, paired with the first branch found for it (`None` when the
    /// complex has a single facet).
    pub fn leaves(&self) -> Vec<(Vec<usize>, Option<Vec<usize>>)> {
        let masks = self.masks();
        let all = (1u32 << masks.len().min(31)) - 1;
        if masks.len() > 31 {
            return self.leaves_slow();
        }
        leaf_branches(&masks, all)
            .into_iter()
            .map(|(f, g)| (self.facets[f].clone(), g.map(|g| self.facets[g].clone())))
            .collect()
    }

    fn leaves_slow(&self) -> Vec<(Vec<usize>, Option<Vec<usize>>)> {
        let masks = self.masks();
        let mut out = Vec::new();
        for (i, &f) in masks.iter().enumerate() {
            let others = masks.iter().enumerate().filter(|&(j, _)| j != i).fold(0u128, |u, (_, &m)| u | m);
            let need = f & others;
            if let Some(g) = (0..masks.len()).find(|&j| j != i && f & masks[j] & need == need) {
                out.push((self.facets[i].clone(), Some(self.facets[g].clone())));
            }
        }
        out
    }

    /// Vertices of `facet` that lie in no other facet.
    pub fn free_vertices(&self, facet: &[usize]) -> Vec<usize> {
        facet
            .iter()
            .copied()
            .filter(|v| self.facets.iter().filter(|f| f.contains(v)).count() == 1)
            .collect()
    }

    /// Whether every nonempty subcollection of facets has a leaf, decided by
    /// enumerating all `2^m - 1` subcollections.
    pub fn is_forest(&self, guards: &Guards) -> Result<bool> {
        let m = self.facets.len();
        if m > guards.forest_facets || m > 31 {
            return Err(Error::GuardExceeded { guard: GuardKind::ForestFacets, limit: guards.forest_facets, found: m });
        }
        let masks = self.masks();
        Ok((1u32..1 << m).all(|sub| has_leaf(&masks, sub)))
    }

    /// Components under vertex connectivity, ordered by least vertex.
    pub fn components(&self) -> Vec<SimplicialComplex> {
        let masks = self.masks();
        let m = masks.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut members = Vec::new();
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..m {
                    if !seen[j] && masks[i] & masks[j] != 0 {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            let facets = members.iter().map(|&i| self.facets[i].clone()).collect();
            out.push(SimplicialComplex::new(facets).expect("subcollection of facets"));
        }
        out.sort_by_key(|c| c.vertices[0]);
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// For a pure complex of dimension `d`: any two facets are joined by a
    /// chain of facets whose consecutive intersections have dimension `d - 1`.
    /// Always false for impure complexes.
    pub fn connected_in_codim_one(&self) -> bool {
        if !self.is_pure() {
            return false;
        }
        let masks = self.masks();
        let d = self.dim() as u32;
        let m = masks.len();
        let mut seen = vec![false; m];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if !seen[j] && (masks[i] & masks[j]).count_ones() == d {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (k, v) in facet.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Leaves of the subcollection `sub` (a bitmask over `masks`) with a branch
/// for each. `F` is a leaf iff some other `G` satisfies
/// `F ∩ G ⊇ F ∩ (union of the other facets)`.
fn leaf_branches(masks: &[u128], sub: u32) -> Vec<(usize, Option<usize>)> {
    let idx: Vec<usize> = (0..masks.len()).filter(|&i| sub >> i & 1 == 1).collect();
    if idx.len() == 1 {
        return vec![(idx[0], None)];
    }
    let mut out = Vec::new();
    for &i in &idx {
        let others = idx.iter().filter(|&&j| j != i).fold(0u128, |u, &j| u | masks[j]);
        let need = masks[i] & others;
        if let Some(&g) = idx.iter().find(|&&j| j != i && masks[i] & masks[j] & need == need) {
            out.push((i, Some(g)));
        }
    }
    out
}

fn has_leaf(masks: &[u128], sub: u32) -> bool {
    if sub.count_ones() == 1 {
        return true;
    }
    let mut rest = sub;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut others = 0u128;
        let mut it = sub & !(1 << i);
        while it != 0 {
            others |= masks[it.trailing_zeros() as usize];
            it &= it - 1;
        }
        let need = masks[i] & others;
        let mut it = sub & !(1 << i);
        while it != 0 {
            let j = it.trailing_zeros() as usize;
            it &= it - 1;
            if masks[i] & masks[j] & need == need {
                return true;
            }
        }
    }
    false
}

/// Hypotheses of the classifier that a complex can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ForestHypothesis {
    Forest,
    Pure,
    ConnectedInCodimOne,
}

impl fmt::Display for ForestHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForestHypothesis::Forest => "forest",
            ForestHypothesis::Pure => "pure",
            ForestHypothesis::ConnectedInCodimOne => "connected_in_codimension_one",
        })
    }
}

/// Result of the factor test on one component: its facet ideal is `u·P` with
/// `u` the gcd of the generators and `P` generated by distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestComponent {
    pub facets: Vec<Vec<usize>>,
    /// Vertices of the gcd monomial.
    pub gcd: Vec<usize>,
    /// Vertex sets of the quotient generators.
    pub quotient: Vec<Vec<usize>>,
    pub passes: bool,
}

impl ForestComponent {
    pub fn witness(&self) -> String {
        let u = if self.gcd.is_empty() { "1".to_string() } else { join_vars(&self.gcd, "*") };
        if self.passes {
            let singles: Vec<usize> = self.quotient.iter().flatten().copied().collect();
            if singles.is_empty() {
                format!("principal {u}")
            } else {
                format!("{u}*({})", join_vars(&singles, ", "))
            }
        } else {
            let bad = self.quotient.iter().find(|q| q.len() != 1).expect("failing quotient generator");
            format!("gcd {u}; quotient generator {} is not a variable", join_vars(bad, "*"))
        }
    }
}

fn join_vars(vs: &[usize], sep: &str) -> String {
    vs.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join(sep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestVerdict {
    pub verdict: Verdict,
    pub applicable: bool,
    pub failed_hypotheses: Vec<ForestHypothesis>,
    pub components: Vec<ForestComponent>,
    /// When constant: per component, the vertex sets of the prime factors
    /// (principal primes of the gcd variables, then the non-principal one).
    pub presentation: Option<Vec<Vec<Vec<usize>>>>,
}

/// Classifies the facet ideal of `delta`. Hypothesis failures give a
/// `NotApplicable` verdict listing every failed hypothesis.
pub fn classify_forest(delta: &SimplicialComplex, guards: &Guards) -> Result<ForestVerdict> {
    let mut failed = Vec::new();
    if !delta.is_forest(guards)? {
        failed.push(ForestHypothesis::Forest);
    }
    if !delta.is_pure() {
        failed.push(ForestHypothesis::Pure);
    }
    let parts = delta.components();
    if delta.is_pure() && !parts.iter().all(SimplicialComplex::connected_in_codim_one) {
        failed.push(ForestHypothesis::ConnectedInCodimOne);
    }
    if !failed.is_empty() {
        return Ok(ForestVerdict {
            verdict: Verdict::NotApplicable,
            applicable: false,
            failed_hypotheses: failed,
            components: Vec::new(),
            presentation: None,
        });
    }
    let components: Vec<ForestComponent> = parts.iter().map(factor_test).collect();
    let constant = components.iter().all(|c| c.passes);
    let presentation = constant.then(|| {
        components
            .iter()
            .map(|c| {
                let mut primes: Vec<Vec<usize>> = c.gcd.iter().map(|&v| vec![v]).collect();
                let p: Vec<usize> = c.quotient.iter().flatten().copied().collect();
                if !p.is_empty() {
                    primes.push(p);
                }
                primes.sort();
                primes
            })
            .collect()
    });
    Ok(ForestVerdict { verdict: Verdict::from_bool(constant), applicable: true, failed_hypotheses: failed, components, presentation })
}

fn factor_test(part: &SimplicialComplex) -> ForestComponent {
    let first: BTreeSet<usize> = part.facets[0].iter().copied().collect();
    let gcd: Vec<usize> = first.into_iter().filter(|v| part.facets.iter().all(|f| f.contains(v))).collect();
    let quotient: Vec<Vec<usize>> = part
        .facets
        .iter()
        .map(|f| f.iter().copied().filter(|v| !gcd.contains(v)).collect::<Vec<_>>())
        .filter(|q| !q.is_empty())
        .collect();
    // a single facet leaves an empty quotient: all factors principal
    let passes = quotient.iter().all(|q| q.len() == 1);
    ForestComponent { facets: part.facets.clone(), gcd, quotient, passes }
}

/// `ℓ(I(Δ)) = m`, the number of facets, for a simplicial forest.
pub fn spread_forest(delta: &SimplicialComplex, guards: &Guards) -> Result<SpreadResult> {
    if !delta.is_forest(guards)? {
        return Err(Error::Precondition("complex is not a simplicial forest".into()));
    }
    Ok(SpreadResult::exact(delta.num_facets(), SpreadMethod::ForestFormula))
}

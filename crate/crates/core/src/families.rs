//! Ideals assembled from monomial primes in disjoint variables: the recursive
//! collection family `𝒜`, sums of products of primes, the recognizer for
//! class `𝒞`, and the combination rules for sums and products of ideals in
//! disjoint variables whose Rees rings are Cohen–Macaulay.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::context::PolyContext;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::spread::{spread_product_disjoint, spread_sum_disjoint, CmReason, ReesCmStatus, SpreadMethod, SpreadResult};

/// Primes `P_1, …, P_s` as variable-index sets, nonempty and pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeAssignment {
    ctx: Arc<PolyContext>,
    primes: Vec<Vec<usize>>,
}

impl PrimeAssignment {
    pub fn new(ctx: Arc<PolyContext>, primes: Vec<Vec<usize>>) -> Result<Self> {
        let n = ctx.num_vars();
        let mut used = BTreeSet::new();
        let mut out = Vec::with_capacity(primes.len());
        for p in primes {
            if p.is_empty() {
                return Err(Error::Precondition("empty prime".into()));
            }
            let set: BTreeSet<usize> = p.into_iter().collect();
            for &v in &set {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, bound: n });
                }
                if !used.insert(v) {
                    return Err(Error::Precondition(format!("variable {} lies in two primes", ctx.name(v))));
                }
            }
            out.push(set.into_iter().collect());
        }
        Ok(PrimeAssignment { ctx, primes: out })
    }

    pub fn ctx(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn primes(&self) -> &[Vec<usize>] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The prime with 1-based label `label`.
    pub fn prime(&self, label: usize) -> Result<MonomialIdeal> {
        let s = self.primes.len();
        if label == 0 || label > s {
            return Err(Error::IndexOutOfRange { index: label, bound: s + 1 });
        }
        MonomialIdeal::prime(self.ctx.clone(), &self.primes[label - 1])
    }
}

/// A collection of nonempty subsets of the labels `1..=s`. The collection is
/// a set: members are stored sorted and without repetition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetCollection {
    members: Vec<Vec<usize>>,
}

impl SubsetCollection {
    pub fn new(members: Vec<Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for m in members {
            let s: BTreeSet<usize> = m.into_iter().collect();
            if s.is_empty() {
                return Err(Error::Precondition("empty member in a subset collection".into()));
            }
            if s.contains(&0) {
                return Err(Error::Precondition("subset labels start at 1".into()));
            }
            set.insert(s.into_iter().collect::<Vec<_>>());
        }
        Ok(SubsetCollection { members: set.into_iter().collect() })
    }

    pub fn empty() -> Self {
        SubsetCollection { members: Vec::new() }
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Labels occurring in some member.
    pub fn labels(&self) -> BTreeSet<usize> {
        self.members.iter().flatten().copied().collect()
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        self.labels().len() == self.members.iter().map(Vec::len).sum::<usize>()
    }

    /// Applies a relabeling `label -> map(label)`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(self.members.iter().map(|m| m.iter().map(|&l| map(l)).collect()).collect())
    }
}

impl fmt::Display for SubsetCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (k, l) in m.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// How a collection was accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trace {
    Empty,
    Singletons(SubsetCollection),
    Split {
        collection: SubsetCollection,
        label: usize,
        /// Members equal to `{label}` that became empty and were dropped.
        dropped_empty: usize,
        with_label: Box<Trace>,
        without_label: Box<Trace>,
    },
}

use alloc::boxed::Box;

impl Trace {
    /// The split labels in the order the recursion chose them (preorder).
    pub fn labels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<usize>) {
        if let Trace::Split { label, with_label, without_label, .. } = self {
            out.push(*label);
            with_label.collect_labels(out);
            without_label.collect_labels(out);
        }
    }

    /// Whether some step dropped an empty member.
    pub fn dropped_any(&self) -> bool {
        match self {
            Trace::Split { dropped_empty, with_label, without_label, .. } => {
                *dropped_empty > 0 || with_label.dropped_any() || without_label.dropped_any()
            }
            _ => false,
        }
    }

    /// Nested factored form, e.g. `P8(P5(P1(P2 + P3) + P4) + P6P7)`.
    pub fn presentation(&self) -> String {
        match self {
            Trace::Empty => String::from("0"),
            Trace::Singletons(c) => {
                c.members().iter().map(|m| format!("P{}", m[0])).collect::<Vec<_>>().join(" + ")
            }
            Trace::Split { label, with_label, without_label, .. } => {
                let inner = match with_label.as_ref() {
                    Trace::Empty => format!("P{label}"),
                    t => {
                        let body = t.presentation();
                        if matches!(t, Trace::Singletons(c) if c.len() == 1) {
                            format!("P{label}{body}")
                        } else {
                            format!("P{label}({body})")
                        }
                    }
                };
                match without_label.as_ref() {
                    Trace::Empty => inner,
                    t => format!("{inner} + {}", t.presentation()),
                }
            }
        }
    }

    /// One line per step, indented by depth.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.push_lines(0, &mut out);
        out
    }

    fn push_lines(&self, depth: usize, out: &mut Vec<String>) {
        let pad = "  ".repeat(depth);
        match self {
            Trace::Empty => out.push(format!("{pad}empty collection")),
            Trace::Singletons(c) => out.push(format!("{pad}{c}: all members singletons")),
            Trace::Split { collection, label, dropped_empty, with_label, without_label } => {
                let note = if *dropped_empty > 0 { format!(" (dropped {dropped_empty} empty member)") } else { String::new() };
                out.push(format!("{pad}{collection}: split on {label}{note}"));
                with_label.push_lines(depth + 1, out);
                without_label.push_lines(depth + 1, out);
            }
        }
    }
}

/// Membership test for `𝒜`, with a trace on acceptance. Every label `j`
/// occurring in the collection is tried, in increasing order.
pub fn in_a(c: &SubsetCollection) -> Option<Trace> {
    let mut memo = BTreeMap::new();
    decide(c, &mut memo)
}

fn decide(c: &SubsetCollection, memo: &mut BTreeMap<SubsetCollection, Option<Trace>>) -> Option<Trace> {
    if let Some(hit) = memo.get(c) {
        return hit.clone();
    }
    let result = decide_uncached(c, memo);
    memo.insert(c.clone(), result.clone());
    result
}

fn decide_uncached(c: &SubsetCollection, memo: &mut BTreeMap<SubsetCollection, Option<Trace>>) -> Option<Trace> {
    if c.is_empty() {
        return Some(Trace::Empty);
    }
    if c.members().iter().all(|m| m.len() == 1) {
        return Some(Trace::Singletons(c.clone()));
    }
    for j in c.labels() {
        let (with, without): (Vec<&Vec<usize>>, Vec<&Vec<usize>>) = c.members().iter().partition(|m| m.contains(&j));
        let reduced: Vec<Vec<usize>> = with.iter().map(|m| m.iter().copied().filter(|&l| l != j).collect()).collect();
        let left: BTreeSet<usize> = reduced.iter().flatten().copied().collect();
        if without.iter().flat_map(|m| m.iter()).any(|l| left.contains(l)) {
            continue;
        }
        let dropped_empty = reduced.iter().filter(|m| m.is_empty()).count();
        let with_c = SubsetCollection::new(reduced.into_iter().filter(|m| !m.is_empty()).collect()).ok()?;
        let without_c = SubsetCollection { members: without.into_iter().cloned().collect() };
        let Some(tw) = decide(&with_c, memo) else { continue };
        let Some(to) = decide(&without_c, memo) else { continue };
        return Some(Trace::Split {
            collection: c.clone(),
            label: j,
            dropped_empty,
            with_label: Box::new(tw),
            without_label: Box::new(to),
        });
    }
    None
}

/// `I = I_1 + ⋯ + I_r` with `I_j` the product of the primes labelled by `A_j`.
pub fn build_ideal(c: &SubsetCollection, p: &PrimeAssignment) -> Result<MonomialIdeal> {
    let mut ideal = MonomialIdeal::zero(p.ctx().clone());
    for member in c.members() {
        let mut term = MonomialIdeal::unit(p.ctx().clone());
        for &label in member {
            term = term.product(&p.prime(label)?)?;
        }
        ideal = ideal.sum(&term)?;
    }
    Ok(ideal)
}

/// Outcome of the class `𝒞` recognizer. On acceptance `blocks` lists, per
/// variable-disjoint block, the variable sets of its prime factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCResult {
    pub accepted: bool,
    pub blocks: Vec<Vec<Vec<usize>>>,
    /// On rejection, the block that failed and why.
    pub failure: Option<String>,
}

/// Decides whether a squarefree ideal is a sum, over variable-disjoint
/// blocks, of products of primes in pairwise disjoint variables.
pub fn in_class_c(ideal: &MonomialIdeal) -> Result<ClassCResult> {
    ideal.ensure_proper_nonzero()?;
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut blocks = Vec::new();
    for block in ideal.variable_disjoint_blocks() {
        match block_primes(&block)? {
            Ok(primes) => blocks.push(primes),
            Err(why) => return Ok(ClassCResult { accepted: false, blocks: Vec::new(), failure: Some(why) }),
        }
    }
    Ok(ClassCResult { accepted: true, blocks, failure: None })
}

fn block_primes(block: &MonomialIdeal) -> Result<core::result::Result<Vec<Vec<usize>>, String>> {
    let label = block.render();
    if !block.is_equigenerated() {
        return Ok(Err(format!("block {label} is not generated in one degree")));
    }
    let n = block.num_vars();
    let u = &block.gens()[0];
    let mut primes: Vec<Vec<usize>> = Vec::new();
    for c in u.support() {
        let base = u.div(&Monomial::var(n, c)).expect("x_c divides u");
        let mut v: Vec<usize> = (0..n).filter(|&y| y == c || block.contains(&base.times_var(y).expect("bounded"))).collect();
        v.sort_unstable();
        primes.push(v);
    }
    primes.sort();
    let total: usize = primes.iter().map(Vec::len).sum();
    let distinct: BTreeSet<usize> = primes.iter().flatten().copied().collect();
    if distinct.len() != total {
        return Ok(Err(format!("block {label}: candidate primes overlap")));
    }
    let mut product = MonomialIdeal::unit(block.ctx().clone());
    for p in &primes {
        product = product.product(&MonomialIdeal::prime(block.ctx().clone(), p)?)?;
    }
    if &product != block {
        return Ok(Err(format!("block {label} is not the product of its candidate primes")));
    }
    Ok(Ok(primes))
}

/// Facts about one ideal that the combination rules propagate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub ideal: MonomialIdeal,
    pub cm: ReesCmStatus,
    pub constant: bool,
    pub spread: SpreadResult,
}

fn check_combinable(a: &FamilyReport, b: &FamilyReport) -> Result<()> {
    if !Arc::ptr_eq(a.ideal.ctx(), b.ideal.ctx()) && a.ideal.ctx() != b.ideal.ctx() {
        return Err(Error::ContextMismatch);
    }
    let sa: BTreeSet<usize> = a.ideal.support().into_iter().collect();
    if let Some(v) = b.ideal.support().into_iter().find(|v| sa.contains(v)) {
        return Err(Error::Precondition(format!("supports overlap in {}", a.ideal.ctx().name(v))));
    }
    for r in [a, b] {
        if !r.cm.is_known_cm() {
            return Err(Error::Precondition(format!("no Cohen-Macaulay guarantee for {}", r.ideal.render())));
        }
        if !r.spread.is_exact() {
            return Err(Error::HeuristicSpread);
        }
    }
    Ok(())
}

/// `I + J` for ideals in disjoint variables: constant iff both are.
pub fn combine_sum(a: &FamilyReport, b: &FamilyReport) -> Result<FamilyReport> {
    check_combinable(a, b)?;
    Ok(FamilyReport {
        ideal: a.ideal.sum(&b.ideal)?,
        cm: ReesCmStatus::GuaranteedByClass(CmReason::DisjointSumOfCm),
        constant: a.constant && b.constant,
        spread: SpreadResult::exact(spread_sum_disjoint(a.spread.value, b.spread.value), SpreadMethod::DisjointSum),
    })
}

/// `IJ` for ideals in disjoint variables: constant iff both are.
pub fn combine_product(a: &FamilyReport, b: &FamilyReport) -> Result<FamilyReport> {
    check_combinable(a, b)?;
    Ok(FamilyReport {
        ideal: a.ideal.product(&b.ideal)?,
        cm: ReesCmStatus::GuaranteedByClass(CmReason::DisjointProductOfCm),
        constant: a.constant && b.constant,
        spread: SpreadResult::exact(
            spread_product_disjoint(a.spread.value, b.spread.value),
            SpreadMethod::DisjointProduct,
        ),
    })
}

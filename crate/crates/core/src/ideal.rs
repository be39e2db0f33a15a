use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::context::PolyContext;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A monomial ideal, held as its minimal generating set `G(I)`.
///
/// Generators form a divisibility antichain sorted lexicographically by
/// exponent vector (largest first), so derived equality is ideal equality. No generators is
/// the zero ideal; the single generator `1` is the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ctx: Arc<PolyContext>,
    gens: Vec<Monomial>,
}

/// Reduces `gens` to the minimal generating set of the ideal they generate.
pub fn minimalize(ctx: Arc<PolyContext>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    MonomialIdeal::new(ctx, gens)
}

fn minimal_antichain(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}

impl MonomialIdeal {
    pub fn new(ctx: Arc<PolyContext>, gens: Vec<Monomial>) -> Result<Self> {
        let n = ctx.num_vars();
        if let Some(bad) = gens.iter().find(|g| g.num_vars() != n) {
            return Err(Error::ExponentLength { expected: n, found: bad.num_vars() });
        }
        Ok(MonomialIdeal { ctx, gens: minimal_antichain(gens) })
    }

    pub fn zero(ctx: Arc<PolyContext>) -> Self {
        MonomialIdeal { ctx, gens: Vec::new() }
    }

    pub fn unit(ctx: Arc<PolyContext>) -> Self {
        let n = ctx.num_vars();
        MonomialIdeal { ctx, gens: vec![Monomial::one(n)] }
    }

    /// The graded maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ctx: Arc<PolyContext>) -> Self {
        let n = ctx.num_vars();
        let gens = (0..n).map(|i| Monomial::var(n, i)).collect();
        MonomialIdeal::new(ctx, gens).expect("lengths match")
    }

    /// Monomial prime generated by the given variables.
    pub fn prime(ctx: Arc<PolyContext>, vars: &[usize]) -> Result<Self> {
        let n = ctx.num_vars();
        if let Some(&bad) = vars.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad + 1, bound: n });
        }
        MonomialIdeal::new(ctx, vars.iter().map(|&i| Monomial::var(n, i)).collect())
    }

    pub fn ctx(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn num_vars(&self) -> usize {
        self.ctx.num_vars()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Rejects the zero and unit ideals.
    pub fn ensure_proper_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    fn same_ctx(&self, other: &MonomialIdeal) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_gens(&self, gens: Vec<Monomial>) -> MonomialIdeal {
        MonomialIdeal { ctx: self.ctx.clone(), gens: minimal_antichain(gens) }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ctx(other)?;
        Ok(self.with_gens(self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ctx(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for u in &self.gens {
            for v in &other.gens {
                gens.push(u.mul(v)?);
            }
        }
        Ok(self.with_gens(gens))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ctx(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.lcm(v)))
            .collect();
        Ok(self.with_gens(gens))
    }

    /// `I : m` for a monomial `m`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        if m.num_vars() != self.num_vars() {
            return Err(Error::ExponentLength { expected: self.num_vars(), found: m.num_vars() });
        }
        Ok(self.with_gens(self.gens.iter().map(|g| g.div_gcd(m)).collect()))
    }

    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k < 1 {
            return Err(Error::InvalidPower(k));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Powers `I, I^2, ..., I^k_max`.
    pub fn powers(&self, k_max: u32) -> Result<Vec<MonomialIdeal>> {
        if k_max < 1 {
            return Err(Error::InvalidPower(k_max));
        }
        let mut out = vec![self.clone()];
        for _ in 1..k_max {
            let next = out.last().expect("nonempty").product(self)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn radical(&self) -> MonomialIdeal {
        self.with_gens(self.gens.iter().map(Monomial::radical).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Union of generator supports, as sorted variable indices.
    pub fn support(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.gens.iter().flat_map(|g| g.support()).collect();
        set.into_iter().collect()
    }

    pub fn gcd_of_gens(&self) -> Result<Monomial> {
        let (first, rest) = self.gens.split_first().ok_or(Error::ZeroIdeal)?;
        Ok(rest.iter().fold(first.clone(), |acc, g| acc.gcd(g)))
    }

    /// Common degree of all generators, if there is one.
    pub fn equigenerated_degree(&self) -> Option<u64> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.equigenerated_degree().is_some()
    }

    /// Partitions `G(I)` into maximal groups of generators connected through
    /// shared variables. Blocks are ordered by their least variable.
    pub fn variable_disjoint_blocks(&self) -> Vec<MonomialIdeal> {
        let m = self.gens.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut owner: Vec<Option<usize>> = vec![None; self.num_vars()];
        for (gi, g) in self.gens.iter().enumerate() {
            for v in g.support() {
                match owner[v] {
                    None => owner[v] = Some(gi),
                    Some(other) => {
                        let (a, b) = (find(&mut parent, gi), find(&mut parent, other));
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: Vec<(usize, Vec<Monomial>)> = Vec::new();
        let mut root_slot: Vec<Option<usize>> = vec![None; m];
        for gi in 0..m {
            let r = find(&mut parent, gi);
            let slot = *root_slot[r].get_or_insert_with(|| {
                groups.push((usize::MAX, Vec::new()));
                groups.len() - 1
            });
            let least = self.gens[gi].support().next().unwrap_or(usize::MAX);
            groups[slot].0 = groups[slot].0.min(least);
            groups[slot].1.push(self.gens[gi].clone());
        }
        groups.sort_by_key(|(least, _)| *least);
        groups.into_iter().map(|(_, gens)| self.with_gens(gens)).collect()
    }

    /// The ideal viewed in the subring on `vars` (sorted indices); generators
    /// must not involve other variables.
    pub fn restrict_to(&self, vars: &[usize]) -> Result<MonomialIdeal> {
        let keep: BTreeSet<usize> = vars.iter().copied().collect();
        if self.support().iter().any(|v| !keep.contains(v)) {
            return Err(Error::Precondition("generators use variables outside the restriction".into()));
        }
        let ctx = Arc::new(self.ctx.restrict(vars)?);
        let gens = self.gens.iter().map(|g| g.project(vars)).collect();
        MonomialIdeal::new(ctx, gens)
    }

    /// Extends to a larger ring; variable `i` goes to `map[i]` of `ctx`.
    pub fn embed(&self, ctx: Arc<PolyContext>, map: &[usize]) -> Result<MonomialIdeal> {
        if map.len() != self.num_vars() {
            return Err(Error::ExponentLength { expected: self.num_vars(), found: map.len() });
        }
        let n = ctx.num_vars();
        if let Some(&bad) = map.iter().find(|&&t| t >= n) {
            return Err(Error::IndexOutOfRange { index: bad + 1, bound: n });
        }
        let gens = self.gens.iter().map(|g| g.embed(n, map)).collect();
        MonomialIdeal::new(ctx, gens)
    }

    /// Same generators over another field.
    pub fn over_field(&self, field: crate::context::FieldSpec) -> Result<MonomialIdeal> {
        let ctx = Arc::new(self.ctx.with_field(field)?);
        Ok(MonomialIdeal { ctx, gens: self.gens.clone() })
    }

    /// Comma-separated generator list in the text grammar; `0` for the zero ideal.
    pub fn render(&self) -> String {
        if self.gens.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.render(&self.ctx)).collect();
        parts.join(", ")
    }
}

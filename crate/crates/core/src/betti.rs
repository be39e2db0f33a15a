//! Multigraded Betti numbers, projective dimension and depth of `S/I`.
//!
//! For a multidegree `a`, the upper-Koszul complex `K^a(I)` lives on
//! `supp(a)`; a subset `W` is a face iff `x^(a - e_W) ∈ I`. Then
//! `β_{i,a}(I) = dim H̃_{i-1}(K^a(I))`, and only multidegrees in the lcm
//! lattice of `G(I)` can contribute. The Taylor complex gives a second,
//! independent route to the same table.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::AbstractComplex;
use crate::context::FieldSpec;
use crate::error::{Error, GuardKind, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::monomial::Monomial;
use crate::spread::LimitClaim;

/// Resource limits. Every limit fails loudly; nothing is approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// The lcm lattice may hold at most `2^lcm_lattice_log2` multidegrees
    /// (the number of generator subsets of an ideal with that many generators).
    pub lcm_lattice_log2: u32,
    pub taylor_gens: usize,
    pub homology_vertices: usize,
    pub forest_facets: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { lcm_lattice_log2: 22, taylor_gens: 14, homology_vertices: 24, forest_facets: 20 }
    }
}

impl Guards {
    pub fn lattice_limit(&self) -> usize {
        1usize.checked_shl(self.lcm_lattice_log2).unwrap_or(usize::MAX)
    }
}

/// All distinct lcms of nonempty subsets of `G(I)`, sorted.
pub fn lcm_lattice_degrees(ideal: &MonomialIdeal, guards: &Guards) -> Result<Vec<Monomial>> {
    ideal.ensure_proper_nonzero()?;
    let limit = guards.lattice_limit();
    let mut lattice: BTreeSet<Monomial> = BTreeSet::new();
    for g in ideal.gens() {
        let joined: Vec<Monomial> = lattice.iter().map(|l| l.lcm(g)).collect();
        lattice.insert(g.clone());
        lattice.extend(joined);
        if lattice.len() > limit {
            return Err(Error::GuardExceeded { guard: GuardKind::LcmLattice, limit, found: lattice.len() });
        }
    }
    Ok(lattice.into_iter().collect())
}

/// The upper-Koszul simplicial complex `K^a(I)` on `supp(a)`.
pub fn upper_koszul(ideal: &MonomialIdeal, a: &Monomial) -> Result<AbstractComplex> {
    if a.num_vars() != ideal.num_vars() {
        return Err(Error::ExponentLength { expected: ideal.num_vars(), found: a.num_vars() });
    }
    let vertices: Vec<usize> = a.support().collect();
    // W is a face iff some generator g divides a with g_j < a_j on W
    let faces = ideal.gens().iter().filter(|g| g.divides(a)).map(|g| {
        vertices
            .iter()
            .enumerate()
            .filter(|&(_, &v)| g.exp(v) < a.exp(v))
            .fold(0u32, |mask, (pos, _)| mask | 1 << pos)
    });
    let faces: Vec<u32> = faces.collect();
    AbstractComplex::from_masks(vertices, faces)
}

/// Nonzero `β_{i,a}(I)` at one multidegree, as `(i, β)` pairs.
pub fn betti_at(ideal: &MonomialIdeal, a: &Monomial, guards: &Guards) -> Result<Vec<(usize, u64)>> {
    let complex = upper_koszul(ideal, a)?;
    let field = ideal.ctx().field();
    let homology = complex.reduced_homology(field, guards.homology_vertices)?;
    Ok(homology
        .into_iter()
        .filter(|&(_, h)| h > 0)
        .map(|(j, h)| ((j + 1) as usize, h as u64))
        .collect())
}

/// Multigraded Betti numbers `β_{i,a}` of the ideal `I` (so `β_0` counts
/// minimal generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), u64>,
    field: FieldSpec,
}

impl BettiTable {
    /// Assembles a table from per-multidegree results.
    pub fn from_strands<'a>(
        field: FieldSpec,
        strands: impl IntoIterator<Item = (&'a Monomial, Vec<(usize, u64)>)>,
    ) -> Self {
        let mut entries = BTreeMap::new();
        for (a, values) in strands {
            for (i, b) in values {
                if b > 0 {
                    entries.insert((i, a.clone()), b);
                }
            }
        }
        BettiTable { entries, field }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, a: &Monomial) -> u64 {
        self.entries.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> + '_ {
        self.entries.iter().map(|((i, a), &b)| (*i, a, b))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total Betti numbers `β_i = Σ_a β_{i,a}`.
    pub fn totals(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for ((i, _), &b) in &self.entries {
            if out.len() <= *i {
                out.resize(i + 1, 0);
            }
            out[*i] += b;
        }
        out
    }

    /// Projective dimension of the ideal (largest `i` with a nonzero entry).
    pub fn proj_dim_ideal(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// Projective dimension of `S/I`, which is one more than that of `I`.
    pub fn proj_dim_quotient(&self) -> usize {
        self.proj_dim_ideal().map_or(0, |p| p + 1)
    }
}

pub fn betti_table(ideal: &MonomialIdeal, guards: &Guards) -> Result<BettiTable> {
    let lattice = lcm_lattice_degrees(ideal, guards)?;
    let mut strands = Vec::with_capacity(lattice.len());
    for a in &lattice {
        strands.push((a, betti_at(ideal, a, guards)?));
    }
    Ok(BettiTable::from_strands(ideal.ctx().field(), strands))
}

/// Betti numbers from the Taylor complex tensored with the residue field.
///
/// The basis is indexed by nonempty subsets `F ⊆ G(I)` in homological degree
/// `|F| - 1`; the differential keeps the term dropping a generator (with sign
/// `(-1)^position`) exactly when the lcm is unchanged. Homology is computed
/// strand by strand.
pub fn taylor_betti_oracle(ideal: &MonomialIdeal, guards: &Guards) -> Result<BettiTable> {
    ideal.ensure_proper_nonzero()?;
    let gens = ideal.gens();
    let m = gens.len();
    if m > guards.taylor_gens || m > 30 {
        return Err(Error::GuardExceeded { guard: GuardKind::TaylorGenerators, limit: guards.taylor_gens, found: m });
    }
    let mut lcms: Vec<Monomial> = Vec::with_capacity(1 << m);
    lcms.push(Monomial::one(ideal.num_vars()));
    let mut strands: BTreeMap<Monomial, Vec<u32>> = BTreeMap::new();
    for mask in 1u32..(1 << m) {
        let low = mask.trailing_zeros() as usize;
        let l = lcms[(mask & (mask - 1)) as usize].lcm(&gens[low]);
        strands.entry(l.clone()).or_default().push(mask);
        lcms.push(l);
    }
    let field = ideal.ctx().field();
    let mut entries: Vec<(Monomial, Vec<(usize, u64)>)> = Vec::new();
    for (a, masks) in strands {
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); m + 2];
        for mask in masks {
            by_size[mask.count_ones() as usize].push(mask);
        }
        // rank[s] = rank of the differential from size s to size s-1
        let mut rank = vec![0usize; m + 3];
        for s in 2..=m {
            rank[s] = taylor_rank(&by_size[s], &by_size[s - 1], field);
        }
        let values: Vec<(usize, u64)> = (1..=m)
            .filter_map(|s| {
                let h = by_size[s].len() - rank[s] - rank[s + 1];
                (h > 0).then_some((s - 1, h as u64))
            })
            .collect();
        entries.push((a, values));
    }
    Ok(BettiTable::from_strands(field, entries.iter().map(|(a, v)| (a, v.clone()))))
}

fn taylor_rank(upper: &[u32], lower: &[u32], field: FieldSpec) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = upper
        .iter()
        .map(|&face| {
            let mut row = vec![0i64; lower.len()];
            let mut sign = 1;
            let mut rest = face;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                // lower holds exactly the same-lcm subsets of this strand
                if let Ok(idx) = lower.binary_search(&(face & !bit)) {
                    row[idx] = sign;
                }
                sign = -sign;
            }
            row
        })
        .collect();
    linalg::rank(&rows, field)
}

/// Projective dimension of `S/I`; the zero ideal gives 0.
pub fn proj_dim(ideal: &MonomialIdeal, guards: &Guards) -> Result<usize> {
    if ideal.is_zero() {
        return Ok(0);
    }
    Ok(betti_table(ideal, guards)?.proj_dim_quotient())
}

/// `depth S/I = n - pd(S/I)`. The zero ideal has depth `n`.
pub fn depth(ideal: &MonomialIdeal, guards: &Guards) -> Result<usize> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(ideal.num_vars() - proj_dim(ideal, guards)?)
}

/// A guard that stopped a depth series early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardHit {
    pub power: u32,
    pub message: String,
}

/// Depth of `S/I` together with the depth series of its powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthReport {
    pub ideal: MonomialIdeal,
    pub depth: usize,
    pub proj_dim: usize,
    /// `depth S/I^k` for `k = 1, 2, ...`
    pub series: Vec<usize>,
    pub field: FieldSpec,
    pub guards_hit: Vec<GuardHit>,
    pub limit_claim: Option<LimitClaim>,
}

impl DepthReport {
    /// Largest `k` such that `depth S/I^j` is the same for all `j <= k`.
    pub fn constant_up_to(&self) -> usize {
        match self.series.first() {
            None => 0,
            Some(first) => self.series.iter().take_while(|&d| d == first).count(),
        }
    }

    /// Every computed power has the same depth.
    pub fn is_constant_prefix(&self) -> bool {
        self.constant_up_to() == self.series.len()
    }

    pub fn k_max(&self) -> usize {
        self.series.len()
    }

    /// Positions `k` (1-based) where `depth S/I^(k+1) > depth S/I^k`.
    pub fn increases(&self) -> Vec<usize> {
        self.series.windows(2).enumerate().filter(|(_, w)| w[1] > w[0]).map(|(k, _)| k + 1).collect()
    }
}

/// Depth series for `k = 1..=k_max` with a caller-supplied projective-dimension
/// routine; any error names the offending power.
pub fn depth_series_with<F>(ideal: &MonomialIdeal, k_max: u32, mut pd: F) -> Result<DepthReport>
where
    F: FnMut(&MonomialIdeal) -> Result<usize>,
{
    let report = series_inner(ideal, k_max, &mut pd, false)?;
    Ok(report)
}

pub fn depth_series(ideal: &MonomialIdeal, k_max: u32, guards: &Guards) -> Result<DepthReport> {
    depth_series_with(ideal, k_max, |j| proj_dim(j, guards))
}

/// Like [`depth_series_with`], but a guard tripping at a power `k > 1`
/// truncates the series and is recorded in `guards_hit` instead of failing.
pub fn depth_series_partial<F>(ideal: &MonomialIdeal, k_max: u32, mut pd: F) -> Result<DepthReport>
where
    F: FnMut(&MonomialIdeal) -> Result<usize>,
{
    series_inner(ideal, k_max, &mut pd, true)
}

fn series_inner(
    ideal: &MonomialIdeal,
    k_max: u32,
    pd: &mut dyn FnMut(&MonomialIdeal) -> Result<usize>,
    tolerate_guards: bool,
) -> Result<DepthReport> {
    ideal.ensure_proper_nonzero()?;
    if k_max < 1 {
        return Err(Error::InvalidPower(k_max));
    }
    let n = ideal.num_vars();
    let mut series = Vec::with_capacity(k_max as usize);
    let mut guards_hit = Vec::new();
    let mut power = ideal.clone();
    for k in 1..=k_max {
        if k > 1 {
            power = power.product(ideal).map_err(|e| Error::AtPower { power: k, source: Box::new(e) })?;
        }
        match pd(&power) {
            Ok(p) => series.push(n - p),
            Err(e) if tolerate_guards && k > 1 && e.is_guard() => {
                guards_hit.push(GuardHit { power: k, message: alloc::format!("{e}") });
                break;
            }
            Err(e) => return Err(Error::AtPower { power: k, source: Box::new(e) }),
        }
    }
    let depth = series[0];
    Ok(DepthReport {
        ideal: ideal.clone(),
        depth,
        proj_dim: n - depth,
        series,
        field: ideal.ctx().field(),
        guards_hit,
        limit_claim: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::PolyContext;
    use alloc::sync::Arc;

    fn sq(n: usize, sets: &[&[usize]]) -> MonomialIdeal {
        let c = Arc::new(PolyContext::standard(n).unwrap());
        let gens = sets.iter().map(|s| Monomial::squarefree(n, s.iter().map(|i| i - 1))).collect();
        MonomialIdeal::new(c, gens).unwrap()
    }

    fn g() -> Guards {
        Guards::default()
    }

    #[test]
    fn lattice_examples() {
        let l = lcm_lattice_degrees(&sq(2, &[&[1], &[2]]), &g()).unwrap();
        assert_eq!(l, [Monomial::new(vec![0, 1]), Monomial::new(vec![1, 0]), Monomial::new(vec![1, 1])]);
        let l = lcm_lattice_degrees(&sq(3, &[&[1, 2], &[2, 3]]), &g()).unwrap();
        assert_eq!(l.len(), 3);
        assert!(l.contains(&Monomial::new(vec![1, 1, 1])));
        let ex = sq(6, &[&[1, 2, 3], &[3, 4, 5], &[1, 5, 6]]);
        assert_eq!(lcm_lattice_degrees(&ex, &g()).unwrap().len(), 7);
    }

    #[test]
    fn lattice_guard() {
        let ex = sq(6, &[&[1, 2, 3], &[3, 4, 5], &[1, 5, 6]]);
        let tight = Guards { lcm_lattice_log2: 2, ..g() };
        assert!(matches!(
            lcm_lattice_degrees(&ex, &tight),
            Err(Error::GuardExceeded { guard: GuardKind::LcmLattice, limit: 4, .. })
        ));
    }

    #[test]
    fn upper_koszul_examples() {
        let k = upper_koszul(&sq(1, &[&[1]]), &Monomial::new(vec![1])).unwrap();
        assert!(k.is_irrelevant());
        let k = upper_koszul(&sq(2, &[&[1], &[2]]), &Monomial::new(vec![1, 1])).unwrap();
        assert_eq!(k.facets(), [vec![0], vec![1]]);
        let k = upper_koszul(&sq(2, &[&[1, 2]]), &Monomial::new(vec![1, 1])).unwrap();
        assert!(k.is_irrelevant());
        let k = upper_koszul(&sq(2, &[&[1, 2]]), &Monomial::new(vec![1, 0])).unwrap();
        assert!(k.is_void());
    }

    #[test]
    fn betti_examples() {
        let t = betti_table(&sq(2, &[&[1], &[2]]), &g()).unwrap();
        assert_eq!(t.totals(), [2, 1]);
        assert_eq!(t.proj_dim_quotient(), 2);

        let ex = sq(6, &[&[1, 2, 3], &[3, 4, 5], &[1, 5, 6]]);
        let t = betti_table(&ex, &g()).unwrap();
        assert_eq!(t.proj_dim_quotient(), 3);
        assert_eq!(depth(&ex, &g()).unwrap(), 3);

        let tri = sq(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(depth(&tri, &g()).unwrap(), 1);
    }

    #[test]
    fn taylor_examples() {
        let i = sq(3, &[&[1, 2], &[2, 3]]);
        let t = taylor_betti_oracle(&i, &g()).unwrap();
        assert_eq!(t.totals(), [2, 1]);
        assert_eq!(t.get(1, &Monomial::new(vec![1, 1, 1])), 1);
        assert_eq!(t, betti_table(&i, &g()).unwrap());
        let i = sq(2, &[&[1], &[2]]);
        assert_eq!(taylor_betti_oracle(&i, &g()).unwrap(), betti_table(&i, &g()).unwrap());
        let tight = Guards { taylor_gens: 1, ..g() };
        assert!(taylor_betti_oracle(&i, &tight).is_err());
    }

    #[test]
    fn series_examples() {
        let ex = sq(6, &[&[1, 2, 3], &[3, 4, 5], &[1, 5, 6]]);
        let r = depth_series(&ex, 3, &g()).unwrap();
        assert_eq!(r.series, [3, 3, 3]);
        assert!(r.is_constant_prefix());

        let tri = sq(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let r = depth_series(&tri, 2, &g()).unwrap();
        assert_eq!(r.series, [1, 0]);
        assert_eq!(r.constant_up_to(), 1);

        let principal = sq(2, &[&[1, 2]]);
        assert_eq!(depth_series(&principal, 3, &g()).unwrap().series, [1, 1, 1]);
    }

    #[test]
    fn series_guard_names_the_power() {
        let tri = sq(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let tight = Guards { lcm_lattice_log2: 3, ..g() };
        let err = depth_series(&tri, 3, &tight).unwrap_err();
        assert!(matches!(err, Error::AtPower { power: 2, .. }), "{err:?}");
        let partial = depth_series_partial(&tri, 3, |j| proj_dim(j, &tight)).unwrap();
        assert_eq!(partial.series, [1]);
        assert_eq!(partial.guards_hit.len(), 1);
        assert_eq!(partial.guards_hit[0].power, 2);
    }

    #[test]
    fn zero_and_unit() {
        let c = Arc::new(PolyContext::standard(3).unwrap());
        assert_eq!(depth(&MonomialIdeal::zero(c.clone()), &g()).unwrap(), 3);
        assert_eq!(depth(&MonomialIdeal::unit(c.clone()), &g()), Err(Error::UnitIdeal));
        assert_eq!(betti_table(&MonomialIdeal::zero(c), &g()).unwrap_err(), Error::ZeroIdeal);
    }
}

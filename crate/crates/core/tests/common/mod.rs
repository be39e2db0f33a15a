#![allow(dead_code)]

use std::sync::Arc;

use depthfn_core::{Monomial, MonomialIdeal, PolyContext};
use proptest::prelude::*;

pub fn ctx(n: usize) -> Arc<PolyContext> {
    Arc::new(PolyContext::standard(n).unwrap())
}

pub fn ideal(n: usize, gens: Vec<Vec<u32>>) -> MonomialIdeal {
    MonomialIdeal::new(ctx(n), gens.into_iter().map(Monomial::new).collect()).unwrap()
}

pub fn squarefree(n: usize, sets: &[Vec<usize>]) -> MonomialIdeal {
    let gens = sets.iter().map(|s| Monomial::squarefree(n, s.iter().copied())).collect();
    MonomialIdeal::new(ctx(n), gens).unwrap()
}

/// Exponent vectors of length `n` with entries `<= max_exp`, never all zero.
pub fn exponent_vec(n: usize, max_exp: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_exp, n).prop_filter("nonconstant", |v| v.iter().any(|&e| e > 0))
}

/// A proper nonzero monomial ideal on `n` variables with at most `m` generators.
pub fn monomial_ideal(n: usize, m: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(exponent_vec(n, max_exp), 1..=m).prop_map(move |gens| ideal(n, gens))
}

pub fn any_ideal(max_n: usize, max_m: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_n).prop_flat_map(move |n| monomial_ideal(n, max_m, max_exp))
}

pub fn squarefree_ideal(max_n: usize, max_m: usize) -> impl Strategy<Value = MonomialIdeal> {
    any_ideal(max_n, max_m, 1)
}

/// Embeds `ideal` into `n` variables, sending variable `i` to `offset + i`.
pub fn shift(ideal: &MonomialIdeal, n: usize, offset: usize) -> MonomialIdeal {
    let map: Vec<usize> = (0..ideal.num_vars()).map(|i| offset + i).collect();
    ideal.embed(ctx(n), &map).unwrap()
}

/// Two ideals on disjoint variable sets `0..a` and `a..a+b` of a common ring,
/// plus the originals in their own rings.
pub fn disjoint_pair(
    a: impl Strategy<Value = MonomialIdeal>,
    b: impl Strategy<Value = MonomialIdeal>,
) -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal, MonomialIdeal, MonomialIdeal)> {
    (a, b).prop_map(|(i, j)| {
        let n = i.num_vars() + j.num_vars();
        (shift(&i, n, 0), shift(&j, n, i.num_vars()), i, j)
    })
}

/// Generators of a fixed degree `d` on `n` variables, squarefree or not.
pub fn equigenerated(n: usize, d: u32, m: usize, squarefree: bool) -> impl Strategy<Value = MonomialIdeal> {
    let cap = if squarefree { 1 } else { d };
    prop::collection::vec(prop::collection::vec(0..=cap, n), 1..=m).prop_filter_map("degree d", move |raw| {
        let gens: Vec<Vec<u32>> = raw.into_iter().filter(|v| v.iter().sum::<u32>() == d).collect();
        (!gens.is_empty()).then(|| ideal(n, gens))
    })
}

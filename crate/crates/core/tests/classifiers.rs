mod common;

use std::sync::Arc;

use common::*;
use depthfn_core::betti::{depth, depth_series};
use depthfn_core::families::{build_ideal, in_a, in_class_c, PrimeAssignment, SubsetCollection};
use depthfn_core::forest::{classify_forest, SimplicialComplex};
use depthfn_core::graph::{classify_edge_ideal, edge_ideal, spread_edge, Graph};
use depthfn_core::matroid::{classify_matroidal, is_matroidal, linear_relation_graph, spread_matroidal};
use depthfn_core::spread::spread_exponent_rank;
use depthfn_core::{Guards, MonomialIdeal, Verdict};
use proptest::prelude::*;

fn g() -> Guards {
    Guards::default()
}

fn graph_strategy(max_v: usize) -> impl Strategy<Value = Graph> {
    (2..=max_v).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_filter_map("some edge", move |mask| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&mask).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            (!edges.is_empty()).then(|| Graph::new(1..=n, edges).unwrap())
        })
    })
}

/// Products of squarefree Veronese ideals in disjoint variable blocks, each
/// given as (block size, degree).
fn veronese_product(blocks: &[(usize, usize)]) -> MonomialIdeal {
    let n: usize = blocks.iter().map(|b| b.0).sum();
    let c = ctx(n);
    let mut acc = MonomialIdeal::unit(c.clone());
    let mut offset = 0;
    for &(size, d) in blocks {
        let gens = (0u32..1 << size)
            .filter(|m| m.count_ones() as usize == d)
            .map(|m| depthfn_core::Monomial::squarefree(n, (0..size).filter(|i| m >> i & 1 == 1).map(|i| offset + i)))
            .collect();
        acc = acc.product(&MonomialIdeal::new(c.clone(), gens).unwrap()).unwrap();
        offset += size;
    }
    acc
}

fn veronese_blocks() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((1usize..=3).prop_flat_map(|s| (Just(s), 1..=s)), 1..=3)
        .prop_filter("small", |b| b.iter().map(|x| x.0).sum::<usize>() <= 6)
}

/// A complex grown by attaching facets of a fixed size along a codimension-one face.
fn codim_one_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=3, 1usize..=4, prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 4))
        .prop_map(|(size, extra, picks)| {
            let mut facets: Vec<Vec<usize>> = vec![(1..=size).collect()];
            let mut next = size + 1;
            for (f, drop) in picks.into_iter().take(extra) {
                let base = f.get(&facets).clone();
                let skip = drop.index(size);
                let mut new: Vec<usize> = base.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                new.push(next);
                next += 1;
                facets.push(new);
            }
            SimplicialComplex::new(facets).unwrap()
        })
        .prop_filter("at most 8 vertices", |c| c.vertices().len() <= 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_classifier_matches_depth_evidence(graph in graph_strategy(6)) {
        let v = classify_edge_ideal(&graph).unwrap();
        let stripped = graph.strip_isolated();
        let ideal = edge_ideal(&stripped).unwrap();
        let series = depth_series(&ideal, 3, &g()).unwrap().series;
        if v.verdict == Verdict::Constant {
            prop_assert!(series.iter().all(|&d| d == series[0]), "{:?}", series);
            prop_assert_eq!(series[0], v.components.len());
        }
        if stripped.bipartition().is_some() {
            // bipartite: the Rees ring is Cohen-Macaulay, so the limit n - l is attained
            let limit = stripped.num_vertices() - spread_edge(&stripped).unwrap().value;
            prop_assert_eq!(v.verdict, Verdict::from_bool(series[0] == limit), "{:?}", series);
        } else {
            prop_assert_eq!(v.verdict, Verdict::NotConstant);
            let longer = depth_series(&ideal, 4, &g()).unwrap().series;
            prop_assert!(longer.iter().any(|&d| d != longer[0]), "{:?}", longer);
        }
    }

    #[test]
    fn bipartite_depth_one_iff_connected_complete(graph in graph_strategy(6)) {
        let stripped = graph.strip_isolated();
        if stripped.bipartition().is_some() {
            let d = depth(&edge_ideal(&stripped).unwrap(), &g()).unwrap();
            prop_assert_eq!(d == 1, stripped.is_connected() && stripped.is_complete_bipartite());
        }
    }

    #[test]
    fn edge_spread_matches_rank(graph in graph_strategy(7)) {
        let graph = graph.strip_isolated();
        let rank = spread_exponent_rank(&edge_ideal(&graph).unwrap()).unwrap().value;
        prop_assert_eq!(spread_edge(&graph).unwrap().value, rank);
    }

    #[test]
    fn matroidal_invariants(blocks in veronese_blocks()) {
        let ideal = veronese_product(&blocks);
        prop_assert!(is_matroidal(&ideal).unwrap().matroidal);
        let v = classify_matroidal(&ideal).unwrap();
        let norm = v.normalization.clone().unwrap();
        if let Some(j) = &norm.ideal {
            prop_assert!(v.s <= v.d);
            let gamma = linear_relation_graph(j).unwrap();
            prop_assert_eq!(gamma.vertices.len(), j.num_vars());
            for gen in j.gens() {
                for comp in &gamma.components {
                    prop_assert!(comp.iter().any(|&x| gen.exp(x) > 0));
                }
            }
            prop_assert_eq!(spread_matroidal(j).unwrap().value, spread_exponent_rank(j).unwrap().value);
            let series = depth_series(j, 3, &g()).unwrap();
            prop_assert_eq!(v.verdict, Verdict::from_bool(series.is_constant_prefix()), "{:?}", series.series);
        }
        prop_assert_eq!(spread_matroidal(&ideal).unwrap().value, spread_exponent_rank(&ideal).unwrap().value);
    }

    #[test]
    fn forest_classifier_matches_depth_evidence(delta in codim_one_complex()) {
        prop_assume!(delta.is_forest(&g()).unwrap());
        prop_assert!(delta.connected_in_codim_one());
        prop_assert_eq!(delta.num_facets(), delta.vertices().len() - delta.dim());
        let v = classify_forest(&delta, &g()).unwrap();
        prop_assert!(v.applicable);
        let ideal = delta.facet_ideal().unwrap();
        let report = depth_series(&ideal, 3, &g()).unwrap();
        // forests have Cohen-Macaulay Rees rings and spread m, so the depth
        // function is constant exactly when depth S/I = n - m
        let limit = delta.vertices().len() - delta.num_facets();
        prop_assert_eq!(v.verdict, Verdict::from_bool(report.series[0] == limit), "{} {:?}", delta, report.series);
        if v.verdict == Verdict::Constant {
            prop_assert!(report.is_constant_prefix(), "{} {:?}", delta, report.series);
        }
    }

    #[test]
    fn leaves_have_free_vertices(delta in codim_one_complex()) {
        for (leaf, _) in delta.leaves() {
            prop_assert!(!delta.free_vertices(&leaf).is_empty());
        }
    }

    #[test]
    fn disjoint_collections_belong_to_a(sizes in prop::collection::vec(1usize..=3, 1..=4)) {
        let mut next = 1;
        let members: Vec<Vec<usize>> = sizes
            .iter()
            .map(|&k| {
                let m = (next..next + k).collect();
                next += k;
                m
            })
            .collect();
        let c = SubsetCollection::new(members).unwrap();
        prop_assert!(in_a(&c).is_some());
    }

    #[test]
    fn class_c_round_trip(sizes in prop::collection::vec(1usize..=2, 1..=4), prime_sizes in prop::collection::vec(1usize..=2, 8)) {
        let s: usize = sizes.iter().sum();
        let n: usize = prime_sizes[..s].iter().sum();
        let mut primes = Vec::new();
        let mut offset = 0;
        for &p in &prime_sizes[..s] {
            primes.push((offset..offset + p).collect());
            offset += p;
        }
        let assignment = PrimeAssignment::new(ctx(n), primes).unwrap();
        let mut next = 1;
        let members: Vec<Vec<usize>> = sizes
            .iter()
            .map(|&k| {
                let m = (next..next + k).collect();
                next += k;
                m
            })
            .collect();
        let c = SubsetCollection::new(members).unwrap();
        let ideal = build_ideal(&c, &assignment).unwrap();
        let r = in_class_c(&ideal).unwrap();
        prop_assert!(r.accepted);
        // a member that is a single prime splits into one block per variable
        let expected_blocks: usize = c
            .members()
            .iter()
            .map(|m| if m.len() == 1 { assignment.primes()[m[0] - 1].len() } else { 1 })
            .sum();
        prop_assert_eq!(r.blocks.len(), expected_blocks);
        let c2 = ideal.ctx().clone();
        let rebuilt = r.blocks.iter().fold(MonomialIdeal::zero(c2.clone()), |acc, block| {
            let term = block
                .iter()
                .fold(MonomialIdeal::unit(c2.clone()), |t, p| t.product(&MonomialIdeal::prime(c2.clone(), p).unwrap()).unwrap());
            acc.sum(&term).unwrap()
        });
        prop_assert_eq!(rebuilt, ideal);
    }

    #[test]
    fn accepted_collections_give_constant_series(
        members in prop::collection::vec(prop::collection::btree_set(1usize..=4, 1..=3), 1..=3),
        prime_sizes in prop::collection::vec(1usize..=2, 4),
    ) {
        let c = SubsetCollection::new(members.into_iter().map(|m| m.into_iter().collect()).collect()).unwrap();
        prop_assume!(in_a(&c).is_some());
        let n: usize = prime_sizes.iter().sum();
        let mut primes = Vec::new();
        let mut offset = 0;
        for &p in &prime_sizes {
            primes.push((offset..offset + p).collect());
            offset += p;
        }
        let ideal = build_ideal(&c, &PrimeAssignment::new(Arc::new(depthfn_core::PolyContext::standard(n).unwrap()), primes).unwrap()).unwrap();
        let report = depth_series(&ideal, 3, &g()).unwrap();
        prop_assert!(report.is_constant_prefix(), "{} -> {:?}", c, report.series);
    }

    #[test]
    fn membership_is_relabeling_invariant(
        members in prop::collection::vec(prop::collection::btree_set(1usize..=5, 1..=3), 0..=4),
        perm in Just((1usize..=5).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let c = SubsetCollection::new(members.into_iter().map(|m| m.into_iter().collect()).collect()).unwrap();
        let r = c.relabel(|l| perm[l - 1]).unwrap();
        prop_assert_eq!(in_a(&c).is_some(), in_a(&r).is_some());
    }
}

#[test]
fn matroidal_colon_recursion_agrees_with_factorization() {
    // for a constant matroidal ideal, I : x for x in the first factor is the
    // product of the remaining factors
    for blocks in [vec![(2, 1), (2, 1)], vec![(2, 1), (3, 1), (2, 1)], vec![(3, 1), (2, 1)]] {
        let ideal = veronese_product(&blocks);
        let v = classify_matroidal(&ideal).unwrap();
        assert_eq!(v.verdict, Verdict::Constant);
        let factors = v.factors.unwrap();
        let n = ideal.num_vars();
        let x = depthfn_core::Monomial::var(n, factors[0][0]);
        let colon = ideal.colon(&x).unwrap();
        let c = ideal.ctx().clone();
        let rest = factors[1..]
            .iter()
            .map(|f| MonomialIdeal::prime(c.clone(), f).unwrap())
            .fold(MonomialIdeal::unit(c.clone()), |a, p| a.product(&p).unwrap());
        assert_eq!(colon, rest);
        let w = classify_matroidal(&colon).unwrap();
        assert_eq!(w.verdict, Verdict::Constant);
        assert_eq!(w.factors.unwrap().len(), factors.len() - 1);
    }
}

#[test]
fn non_constant_matroidal_ideals_have_non_constant_series() {
    for blocks in [vec![(4, 2)], vec![(3, 2), (2, 1)], vec![(4, 3)], vec![(5, 2)]] {
        let ideal = veronese_product(&blocks);
        let v = classify_matroidal(&ideal).unwrap();
        assert_eq!(v.verdict, Verdict::NotConstant);
        assert!(!depth_series(&ideal, 3, &g()).unwrap().is_constant_prefix());
    }
}

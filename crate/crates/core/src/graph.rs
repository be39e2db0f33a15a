//! Simple graphs, edge ideals, and the classification of edge ideals with
//! constant depth functions: after discarding isolated vertices, every
//! connected component must be complete bipartite.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::context::{FieldSpec, PolyContext};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::spread::{SpreadMethod, SpreadResult};
use crate::verdict::Verdict;

/// A finite simple graph on labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    vertices: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: impl IntoIterator<Item = usize>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let vertices: BTreeSet<usize> = vertices.into_iter().collect();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(Error::InvalidGraph(format!("edge {a}-{b} uses an unknown vertex")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { vertices, edges: set })
    }

    /// Graph whose vertex set is exactly the set of edge endpoints.
    pub fn from_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Graph::new(vertices, edges)
    }

    /// Reads the graph off a squarefree ideal generated in degree two; vertices
    /// are variable indices.
    pub fn from_edge_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        if !ideal.is_squarefree() || ideal.equigenerated_degree() != Some(2) {
            return Err(Error::InvalidGraph("not a squarefree quadratic ideal".into()));
        }
        let edges = ideal.gens().iter().map(|g| {
            let s: Vec<usize> = g.support().collect();
            (s[0], s[1])
        });
        Graph::new(0..ideal.num_vars(), edges)
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges((1..=n).map(|i| (i, i % n + 1))).expect("n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges((1..n).map(|i| (i, i + 1))).expect("valid path")
    }

    /// `K_{p,q}` on vertices `1..=p` and `p+1..=p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let edges = (1..=p).flat_map(|a| (p + 1..=p + q).map(move |b| (a, b)));
        Graph::from_edges(edges).expect("valid")
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).expect("vertex").push(b);
            adj.get_mut(&b).expect("vertex").push(a);
        }
        adj
    }

    pub fn isolated(&self) -> Vec<usize> {
        let adj = self.adjacency();
        adj.into_iter().filter(|(_, nb)| nb.is_empty()).map(|(v, _)| v).collect()
    }

    pub fn strip_isolated(&self) -> Graph {
        let used: BTreeSet<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Graph { vertices: used, edges: self.edges.clone() }
    }

    /// Connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<Graph> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            let edges = self.edges.iter().filter(|(a, _)| comp.contains(a)).copied().collect();
            out.push(Graph { vertices: comp, edges });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS 2-colouring: either a bipartition (the side holding each
    /// component's least vertex first) or an odd cycle.
    fn two_colour(&self) -> core::result::Result<(Vec<usize>, Vec<usize>), Vec<usize>> {
        let adj = self.adjacency();
        let mut colour: BTreeMap<usize, bool> = BTreeMap::new();
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        for &start in &self.vertices {
            if colour.contains_key(&start) {
                continue;
            }
            colour.insert(start, false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[&v] {
                    match colour.get(&w) {
                        None => {
                            colour.insert(w, !colour[&v]);
                            parent.insert(w, v);
                            queue.push_back(w);
                        }
                        Some(&c) if c == colour[&v] => return Err(odd_cycle(&parent, v, w)),
                        _ => {}
                    }
                }
            }
        }
        let left = colour.iter().filter(|(_, &c)| !c).map(|(&v, _)| v).collect();
        let right = colour.iter().filter(|(_, &c)| c).map(|(&v, _)| v).collect();
        Ok((left, right))
    }

    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        self.two_colour().ok()
    }

    pub fn odd_cycle(&self) -> Option<Vec<usize>> {
        self.two_colour().err()
    }

    /// Connected, bipartite, and every cross pair is an edge.
    pub fn is_complete_bipartite(&self) -> bool {
        if !self.is_connected() || self.edges.is_empty() {
            return false;
        }
        match self.bipartition() {
            Some((a, b)) => a.len() * b.len() == self.edges.len(),
            None => false,
        }
    }
}

fn odd_cycle(parent: &BTreeMap<usize, usize>, v: usize, w: usize) -> Vec<usize> {
    let ancestors = |mut x: usize| {
        let mut path = vec![x];
        while let Some(&p) = parent.get(&x) {
            path.push(p);
            x = p;
        }
        path
    };
    let pv = ancestors(v);
    let pw = ancestors(w);
    let on_w: BTreeSet<usize> = pw.iter().copied().collect();
    let meet_pos = pv.iter().position(|x| on_w.contains(x)).expect("same BFS tree");
    let meet = pv[meet_pos];
    let mut cycle: Vec<usize> = pv[..=meet_pos].to_vec();
    let w_pos = pw.iter().position(|&x| x == meet).expect("meet on w path");
    cycle.extend(pw[..w_pos].iter().rev());
    cycle
}

/// Edge ideal over `K[x_v : v ∈ V(G)]`, variables named `x<label>`.
pub fn edge_ideal(graph: &Graph) -> Result<MonomialIdeal> {
    if graph.edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let labels: Vec<usize> = graph.vertices().collect();
    let ctx = Arc::new(PolyContext::new(labels.iter().map(|v| format!("x{v}")), FieldSpec::Rationals)?);
    let n = labels.len();
    let pos = |v: usize| labels.binary_search(&v).expect("vertex");
    let gens = graph.edges().map(|(a, b)| Monomial::squarefree(n, [pos(a), pos(b)])).collect();
    MonomialIdeal::new(ctx, gens)
}

/// `ℓ(I(G)) = |V(G)| - (number of bipartite components)`.
pub fn spread_edge(graph: &Graph) -> Result<SpreadResult> {
    if graph.edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    if !graph.isolated().is_empty() {
        return Err(Error::IsolatedVertices);
    }
    let bipartite = graph.components().iter().filter(|c| c.bipartition().is_some()).count();
    Ok(SpreadResult::exact(graph.num_vertices() - bipartite, SpreadMethod::EdgeFormula))
}

/// Why a component passes or fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentWitness {
    CompleteBipartite { left: Vec<usize>, right: Vec<usize> },
    OddCycle(Vec<usize>),
    MissingEdge { left: Vec<usize>, right: Vec<usize>, missing: (usize, usize) },
}

impl fmt::Display for ComponentWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentWitness::CompleteBipartite { left, right } => {
                write!(f, "complete bipartite K_{{{},{}}}", left.len(), right.len())
            }
            ComponentWitness::OddCycle(c) => write!(f, "odd cycle {c:?}"),
            ComponentWitness::MissingEdge { missing: (a, b), .. } => {
                write!(f, "bipartite but not complete: missing edge {a}-{b}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeComponent {
    pub vertices: Vec<usize>,
    pub witness: ComponentWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeVerdict {
    pub verdict: Verdict,
    /// Isolated vertices removed before classifying.
    pub stripped: Vec<usize>,
    pub components: Vec<EdgeComponent>,
    /// When constant: `I(G) = Σ_i (part1_i)(part2_i)`, as vertex sets.
    pub factorization: Option<Vec<(Vec<usize>, Vec<usize>)>>,
}

/// Decides constancy of the depth function of `I(G)` combinatorially.
pub fn classify_edge_ideal(graph: &Graph) -> Result<EdgeVerdict> {
    if graph.edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let stripped = graph.isolated();
    let core = graph.strip_isolated();
    let mut components = Vec::new();
    for comp in core.components() {
        let vertices: Vec<usize> = comp.vertices().collect();
        let witness = match comp.two_colour() {
            Err(cycle) => ComponentWitness::OddCycle(cycle),
            Ok((left, right)) => {
                let missing = left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).find(|&(a, b)| !comp.has_edge(a, b));
                match missing {
                    None => ComponentWitness::CompleteBipartite { left, right },
                    Some(missing) => ComponentWitness::MissingEdge { left, right, missing },
                }
            }
        };
        components.push(EdgeComponent { vertices, witness });
    }
    let constant = components.iter().all(|c| matches!(c.witness, ComponentWitness::CompleteBipartite { .. }));
    let factorization = constant.then(|| {
        components
            .iter()
            .map(|c| match &c.witness {
                ComponentWitness::CompleteBipartite { left, right } => (left.clone(), right.clone()),
                _ => unreachable!(),
            })
            .collect()
    });
    Ok(EdgeVerdict { verdict: Verdict::from_bool(constant), stripped, components, factorization })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spread::spread_exponent_rank;

    fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let shift = a.vertices().max().unwrap_or(0);
        let edges = a.edges().chain(b.edges().map(|(x, y)| (x + shift, y + shift)));
        Graph::from_edges(edges).unwrap()
    }

    #[test]
    fn edge_ideal_examples() {
        let k23 = edge_ideal(&Graph::complete_bipartite(2, 3)).unwrap();
        assert_eq!(k23.num_gens(), 6);
        assert_eq!(k23.num_vars(), 5);
        let e = edge_ideal(&Graph::from_edges([(1, 2)]).unwrap()).unwrap();
        assert_eq!(e.render(), "x1*x2");
        let c3 = edge_ideal(&Graph::cycle(3)).unwrap();
        assert_eq!(c3.render(), "x1*x2, x1*x3, x2*x3");
        assert_eq!(edge_ideal(&Graph::new([1, 2], []).unwrap()), Err(Error::EmptyEdgeSet));
    }

    #[test]
    fn structural_predicates() {
        assert!(Graph::cycle(5).bipartition().is_none());
        let cyc = Graph::cycle(5).odd_cycle().unwrap();
        assert_eq!(cyc.len(), 5);
        let p4 = Graph::path(4);
        assert!(p4.bipartition().is_some());
        assert!(!p4.is_complete_bipartite());
        assert!(Graph::complete_bipartite(2, 3).is_complete_bipartite());
        let two = disjoint_union(&Graph::path(2), &Graph::path(2));
        assert!(!two.is_complete_bipartite());
        assert_eq!(two.components().len(), 2);
        let g = Graph::new([1, 2, 3, 9], [(1, 2), (2, 3)]).unwrap();
        assert_eq!(g.isolated(), [9]);
        assert_eq!(g.strip_isolated().num_vertices(), 3);
        assert!(Graph::new([1], [(1, 1)]).is_err());
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        let g = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1), (4, 5), (5, 6), (6, 7), (7, 4)]).unwrap();
        assert!(g.odd_cycle().is_none());
        let g = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3)]).unwrap();
        let c = g.odd_cycle().unwrap();
        assert_eq!(c.len() % 2, 1);
        for i in 0..c.len() {
            assert!(g.has_edge(c[i], c[(i + 1) % c.len()]), "{c:?}");
        }
    }

    #[test]
    fn spread_edge_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(spread_edge(&k23).unwrap().value, 4);
        assert_eq!(spread_exponent_rank(&edge_ideal(&k23).unwrap()).unwrap().value, 4);
        assert_eq!(spread_edge(&Graph::cycle(3)).unwrap().value, 3);
        let two = disjoint_union(&Graph::path(2), &Graph::path(2));
        assert_eq!(spread_edge(&two).unwrap().value, 2);
        let g = Graph::new([1, 2, 3], [(1, 2)]).unwrap();
        assert_eq!(spread_edge(&g), Err(Error::IsolatedVertices));
    }

    #[test]
    fn classifier_examples() {
        let v = classify_edge_ideal(&Graph::complete_bipartite(2, 3)).unwrap();
        assert_eq!(v.verdict, Verdict::Constant);
        assert_eq!(v.factorization.unwrap(), [(vec![1, 2], vec![3, 4, 5])]);

        let v = classify_edge_ideal(&Graph::cycle(5)).unwrap();
        assert_eq!(v.verdict, Verdict::NotConstant);
        assert!(matches!(v.components[0].witness, ComponentWitness::OddCycle(_)));
        assert!(format!("{}", v.components[0].witness).starts_with("odd cycle"));

        let v = classify_edge_ideal(&Graph::path(4)).unwrap();
        assert_eq!(v.verdict, Verdict::NotConstant);
        assert!(matches!(v.components[0].witness, ComponentWitness::MissingEdge { .. }));

        let g = disjoint_union(&Graph::complete_bipartite(1, 2), &Graph::complete_bipartite(2, 2));
        let v = classify_edge_ideal(&g).unwrap();
        assert_eq!(v.verdict, Verdict::Constant);
        assert_eq!(v.factorization.as_ref().unwrap().len(), 2);

        let g = Graph::new([1, 2, 3, 4], [(1, 2)]).unwrap();
        let v = classify_edge_ideal(&g).unwrap();
        assert_eq!(v.stripped, [3, 4]);
        assert_eq!(v.verdict, Verdict::Constant);

        assert_eq!(classify_edge_ideal(&Graph::default()), Err(Error::EmptyEdgeSet));
    }
}

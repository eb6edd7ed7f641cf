//! 3-uniform hypergraphs on dense integer vertex ids, with sparsity
//! predicates, induced restrictions, components and edge clusters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or querying hypergraphs.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("triple ({0}, {1}, {2}) has repeated vertices")]
    RepeatedVertex(usize, usize, usize),
    #[error("vertex {vertex} in triple {triple} is out of range (n = {n})")]
    VertexOutOfRange { triple: Triple, vertex: usize, n: usize },
    #[error("duplicate triple {0}")]
    DuplicateTriple(Triple),
    #[error("vertex count {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
}

/// A hyperedge: three distinct vertices, stored in ascending order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple([usize; 3]);

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Triple, HypergraphError> {
        if a == b || a == c || b == c {
            return Err(HypergraphError::RepeatedVertex(a, b, c));
        }
        let mut v = [a, b, c];
        v.sort_unstable();
        Ok(Triple(v))
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn contains_pair(&self, x: usize, y: usize) -> bool {
        self.contains(x) && self.contains(y)
    }

    pub fn max_vertex(&self) -> usize {
        self.0[2]
    }

    /// Number of vertices shared with another triple (0..=3).
    pub fn common_count(&self, other: &Triple) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }

    /// The two vertices of the triple other than `v`; `v` must be a member.
    pub fn others(&self, v: usize) -> [usize; 2] {
        debug_assert!(self.contains(v));
        let mut out = [0; 2];
        let mut k = 0;
        for &u in &self.0 {
            if u != v {
                out[k] = u;
                k += 1;
            }
        }
        out
    }

    pub fn is_subset_of(&self, set: &BTreeSet<usize>) -> bool {
        self.0.iter().all(|v| set.contains(v))
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Subset size and edge budget for the k-subset sparsity predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SparsityParams {
    pub k: usize,
    pub l: usize,
}

impl SparsityParams {
    pub fn new(k: usize, l: usize) -> SparsityParams {
        assert!(k >= 3, "sparsity subset size must be at least 3");
        SparsityParams { k, l }
    }
}

/// The default edge budget: a k-set may induce at most ceil(k/2) edges.
pub fn f0_budget(k: usize) -> usize {
    k.div_ceil(2)
}

/// A witness that a hypergraph is not f-sparse: a subset inducing more
/// edges than its budget allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityWitness {
    pub subset: Vec<usize>,
    pub induced_edges: usize,
    pub budget: usize,
}

/// A maximal group of hyperedges pairwise chained by 2-vertex overlaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCluster {
    pub edges: Vec<Triple>,
    pub support: Vec<usize>,
}

/// An immutable 3-uniform hypergraph H = (V, E) with V = {0, .., n-1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: BTreeSet<Triple>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e:?}")?;
        }
        write!(f, "])")
    }
}

impl Hypergraph {
    /// Builds a hypergraph, checking that every vertex id is `< n` and no
    /// triple repeats. The error names the first offending triple.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = Triple>,
    ) -> Result<Hypergraph, HypergraphError> {
        let mut set = BTreeSet::new();
        for t in edges {
            if t.max_vertex() >= n {
                return Err(HypergraphError::VertexOutOfRange {
                    triple: t,
                    vertex: t.max_vertex(),
                    n,
                });
            }
            if !set.insert(t) {
                return Err(HypergraphError::DuplicateTriple(t));
            }
        }
        Ok(Hypergraph { n, edges: set })
    }

    /// Convenience constructor from raw vertex triples.
    pub fn from_raw(n: usize, raw: &[[usize; 3]]) -> Result<Hypergraph, HypergraphError> {
        let triples: Result<Vec<_>, _> =
            raw.iter().map(|[a, b, c]| Triple::new(*a, *b, *c)).collect();
        Hypergraph::new(n, triples?)
    }

    pub fn empty(n: usize) -> Hypergraph {
        Hypergraph { n, edges: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.edges.iter()
    }

    pub fn edge_vec(&self) -> Vec<Triple> {
        self.edges.iter().copied().collect()
    }

    pub fn has_edge(&self, t: &Triple) -> bool {
        self.edges.contains(t)
    }

    /// A copy with one more edge; errors on range or duplicates.
    pub fn with_edge(&self, t: Triple) -> Result<Hypergraph, HypergraphError> {
        if t.max_vertex() >= self.n {
            return Err(HypergraphError::VertexOutOfRange {
                triple: t,
                vertex: t.max_vertex(),
                n: self.n,
            });
        }
        if self.edges.contains(&t) {
            return Err(HypergraphError::DuplicateTriple(t));
        }
        let mut edges = self.edges.clone();
        edges.insert(t);
        Ok(Hypergraph { n: self.n, edges })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for v in e.vertices() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Vertices incident to at least one edge, ascending.
    pub fn support(&self) -> Vec<usize> {
        let deg = self.degrees();
        (0..self.n).filter(|&v| deg[v] > 0).collect()
    }

    pub fn is_spanning(&self) -> bool {
        self.support().len() == self.n
    }

    /// True iff every k-subset of vertices induces at most `p.l` edges.
    /// For k > n the condition degenerates to the whole-set check |E| <= l.
    pub fn is_kl_sparse(&self, p: SparsityParams) -> bool {
        self.kl_witness(p).is_none()
    }

    /// First (lexicographic) violating k-subset, if any.
    pub fn kl_witness(&self, p: SparsityParams) -> Option<SparsityWitness> {
        if p.k > self.n {
            if self.edges.len() > p.l {
                return Some(SparsityWitness {
                    subset: (0..self.n).collect(),
                    induced_edges: self.edges.len(),
                    budget: p.l,
                });
            }
            return None;
        }
        let mut witness = None;
        for_each_subset(self.n, p.k, |subset| {
            let set: BTreeSet<usize> = subset.iter().copied().collect();
            let count = self.edges.iter().filter(|e| e.is_subset_of(&set)).count();
            if count > p.l {
                witness = Some(SparsityWitness {
                    subset: subset.to_vec(),
                    induced_edges: count,
                    budget: p.l,
                });
                true
            } else {
                false
            }
        });
        witness
    }

    /// True iff every k-subset, 4 <= k <= n, induces at most f(k) edges.
    pub fn is_f_sparse(&self, f: impl Fn(usize) -> usize) -> bool {
        self.f_witness(f).is_none()
    }

    pub fn is_f0_sparse(&self) -> bool {
        self.is_f_sparse(f0_budget)
    }

    pub fn f_witness(&self, f: impl Fn(usize) -> usize) -> Option<SparsityWitness> {
        for k in 4..=self.n {
            if let Some(w) = self.kl_witness(SparsityParams::new(k, f(k))) {
                return Some(w);
            }
        }
        None
    }

    pub fn f0_witness(&self) -> Option<SparsityWitness> {
        self.f_witness(f0_budget)
    }

    /// Edges entirely inside `subset`, with their original labels.
    pub fn induced_edges(&self, subset: &[usize]) -> Vec<Triple> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        self.edges.iter().filter(|e| e.is_subset_of(&set)).copied().collect()
    }

    /// The restriction to `subset`, relabeled onto {0, .., |subset|-1}
    /// preserving relative vertex order. Returns the new hypergraph and the
    /// map from new ids back to original ids.
    pub fn induced(&self, subset: &[usize]) -> (Hypergraph, Vec<usize>) {
        let mut xs: Vec<usize> = subset.to_vec();
        xs.sort_unstable();
        xs.dedup();
        assert!(xs.iter().all(|&v| v < self.n), "induced subset out of range");
        let index: BTreeMap<usize, usize> =
            xs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .induced_edges(&xs)
            .into_iter()
            .map(|e| {
                let [a, b, c] = e.vertices();
                Triple::new(index[&a], index[&b], index[&c]).unwrap()
            })
            .collect::<BTreeSet<_>>();
        (Hypergraph { n: xs.len(), edges }, xs)
    }

    /// The hypergraph on the original vertex set with the edges induced by
    /// `subset` removed.
    pub fn remove_induced(&self, subset: &[usize]) -> Hypergraph {
        let removed: BTreeSet<Triple> = self.induced_edges(subset).into_iter().collect();
        let edges = self.edges.iter().filter(|e| !removed.contains(e)).copied().collect();
        Hypergraph { n: self.n, edges }
    }

    /// Removes an explicit edge set (edges absent from H are ignored).
    pub fn remove_edges(&self, remove: &BTreeSet<Triple>) -> Hypergraph {
        let edges = self.edges.iter().filter(|e| !remove.contains(e)).copied().collect();
        Hypergraph { n: self.n, edges }
    }

    /// Connected components as a partition of {0, .., n-1}; two vertices are
    /// connected when they co-occur in a hyperedge. Isolated vertices form
    /// singleton parts. Parts are sorted by their minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let root = find(parent, parent[v]);
                parent[v] = root;
            }
            parent[v]
        }
        for e in &self.edges {
            let [a, b, c] = e.vertices();
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            parent[rb] = ra;
            let rc = find(&mut parent, c);
            let ra = find(&mut parent, a);
            parent[rc] = ra;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut parts: Vec<Vec<usize>> = groups.into_values().collect();
        parts.sort_by_key(|p| p[0]);
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Equivalence classes of edges under the transitive closure of
    /// "shares at least two vertices"; only classes with two or more edges
    /// are returned, each with its vertex support.
    pub fn intersection_clusters(&self) -> Vec<EdgeCluster> {
        let edges = self.edge_vec();
        let m = edges.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let root = find(parent, parent[v]);
                parent[v] = root;
            }
            parent[v]
        }
        for i in 0..m {
            for j in i + 1..m {
                if edges[i].common_count(&edges[j]) >= 2 {
                    let ri = find(&mut parent, i);
                    let rj = find(&mut parent, j);
                    parent[rj] = ri;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Triple>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(*e);
        }
        groups
            .into_values()
            .filter(|g| g.len() >= 2)
            .map(|g| {
                let mut support: Vec<usize> =
                    g.iter().flat_map(|e| e.vertices()).collect();
                support.sort_unstable();
                support.dedup();
                EdgeCluster { edges: g, support }
            })
            .collect()
    }

    /// True iff every pair of distinct hyperedges shares at most one vertex.
    pub fn pairwise_intersections_small(&self) -> bool {
        self.two_sharing_pair().is_none()
    }

    /// Some pair of edges sharing two vertices, if one exists.
    pub fn two_sharing_pair(&self) -> Option<(Triple, Triple)> {
        let edges = self.edge_vec();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if edges[i].common_count(&edges[j]) >= 2 {
                    return Some((edges[i], edges[j]));
                }
            }
        }
        None
    }

    /// Applies a vertex permutation: `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let [a, b, c] = e.vertices();
                Triple::new(perm[a], perm[b], perm[c]).unwrap()
            })
            .collect();
        Hypergraph { n: self.n, edges }
    }
}

/// Calls `visit` on every k-subset of {0, .., n-1} in lexicographic order
/// until it returns true. Subsets are passed as sorted slices.
pub(crate) fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return;
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All triples {a,b,c} with a < b < c < n, ascending.
pub fn all_triples(n: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for c in 2..n {
        for b in 1..c {
            for a in 0..b {
                out.push(Triple::new(a, b, c).unwrap());
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn triple_sorts_and_rejects_repeats() {
        let t = Triple::new(5, 1, 3).unwrap();
        assert_eq!(t.vertices(), [1, 3, 5]);
        assert!(Triple::new(1, 1, 2).is_err());
    }

    #[test]
    fn validation_accepts_minimal_input() {
        assert!(Hypergraph::from_raw(4, &[[0, 1, 2]]).is_ok());
    }

    #[test]
    fn validation_rejects_out_of_range_vertex() {
        let err = Hypergraph::from_raw(3, &[[0, 1, 3]]).unwrap_err();
        match err {
            HypergraphError::VertexOutOfRange { vertex, n, .. } => {
                assert_eq!(vertex, 3);
                assert_eq!(n, 3);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn validation_accepts_fano() {
        assert_eq!(generators::fano().edge_count(), 7);
    }

    #[test]
    fn validation_rejects_duplicates() {
        let err = Hypergraph::from_raw(4, &[[0, 1, 2], [2, 1, 0]]).unwrap_err();
        assert!(matches!(err, HypergraphError::DuplicateTriple(_)));
    }

    #[test]
    fn fano_is_5_2_sparse() {
        assert!(generators::fano().is_kl_sparse(SparsityParams::new(5, 2)));
    }

    #[test]
    fn fano_is_not_6_2_sparse() {
        let fano = generators::fano();
        let w = fano.kl_witness(SparsityParams::new(6, 2)).expect("expected witness");
        assert_eq!(w.subset.len(), 6);
        assert!(w.induced_edges > 2);
        // brute-force confirmation over all 6-subsets: deleting any point of
        // the Fano plane leaves exactly four lines on the remaining six
        for_each_subset(7, 6, |subset| {
            let set: BTreeSet<usize> = subset.iter().copied().collect();
            let count = fano.edges().filter(|e| e.is_subset_of(&set)).count();
            assert_eq!(count, 4);
            false
        });
    }

    #[test]
    fn empty_hypergraph_is_sparse_for_any_params() {
        let h = Hypergraph::empty(10);
        for k in 3..=12 {
            for l in 0..4 {
                assert!(h.is_kl_sparse(SparsityParams::new(k, l)));
            }
        }
        assert!(h.is_f0_sparse());
    }

    #[test]
    fn kl_with_k_above_n_checks_whole_edge_set() {
        let h = Hypergraph::from_raw(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        assert!(h.is_kl_sparse(SparsityParams::new(6, 3)));
        assert!(!h.is_kl_sparse(SparsityParams::new(6, 2)));
    }

    #[test]
    fn f0_examples() {
        let h = Hypergraph::from_raw(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        assert!(h.is_f0_sparse());
        let fano = generators::fano();
        let w = fano.f0_witness().expect("fano exceeds the f0 budget");
        assert!(w.induced_edges > w.budget);
        // direct count: the full vertex set induces 7 > ceil(7/2) = 4 edges
        assert_eq!(f0_budget(7), 4);
    }

    #[test]
    fn induced_on_a_fano_line() {
        let fano = generators::fano();
        let (sub, map) = fano.induced(&[0, 1, 2]);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn induced_on_all_vertices_is_identity() {
        let h = Hypergraph::from_raw(5, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        let (sub, _) = h.induced(&[0, 1, 2, 3, 4]);
        assert_eq!(sub, h);
    }

    #[test]
    fn induced_containment_check() {
        let h = Hypergraph::from_raw(5, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        let (sub, _) = h.induced(&[0, 1, 2, 3]);
        assert_eq!(sub.edge_count(), 1);
        let removed = h.remove_induced(&[0, 1, 2, 3]);
        assert_eq!(removed.edge_count(), 1);
        assert!(removed.has_edge(&Triple::new(2, 3, 4).unwrap()));
        assert_eq!(removed.n(), 5);
    }

    #[test]
    fn components_examples() {
        let h = Hypergraph::from_raw(5, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        assert_eq!(h.components(), vec![vec![0, 1, 2, 3, 4]]);

        let h = Hypergraph::from_raw(6, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(h.components().len(), 2);

        let h = Hypergraph::empty(3);
        assert_eq!(h.components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn clusters_examples() {
        let h = Hypergraph::from_raw(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let clusters = h.intersection_clusters();
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].edges.len(), 2);
        assert_eq!(clusters[0].support, vec![0, 1, 2, 3]);

        let h = Hypergraph::from_raw(5, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        assert!(h.intersection_clusters().is_empty());
    }

    #[test]
    fn fano_lines_pairwise_share_one_vertex() {
        // every two distinct Fano lines meet in exactly one point, so the
        // 2-overlap relation is empty and no clusters form
        let fano = generators::fano();
        let edges = fano.edge_vec();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                assert_eq!(edges[i].common_count(&edges[j]), 1);
            }
        }
        assert!(fano.intersection_clusters().is_empty());
    }

    #[test]
    fn subset_enumeration_visits_all_combinations() {
        let mut count = 0;
        for_each_subset(6, 3, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 20);
    }
}

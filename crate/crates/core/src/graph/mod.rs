//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex, packed into a single
//! contiguous buffer. Graph values are immutable once built; every operator
//! that changes the edge set returns a new graph.

mod enumerate;
mod family;
mod io;

pub use enumerate::{
    automorphism_count, canonical_form, edge_pair_count, enumerate_connected, graph_from_mask, graph_mask,
    mask_is_connected, pair_index, par_enumerate_connected, CanonicalForm, Enumeration,
    MAX_CANONICAL_ORDER, MAX_ENUMERATION_ORDER,
};
pub use family::{FamilyKind, FamilySpec};
pub use io::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.insert(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexIndex { index: x, n });
                }
            }
            if u == v {
                return Err(Error::Malformed(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Malformed(format!("duplicate edge ({u}, {v})")));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Bitset row of `v`, `words_per_row` little-endian words.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexIndex { index: x, n: self.n });
            }
        }
        if u == v || self.has_edge(u, v) {
            return Err(Error::Malformed(format!("cannot add edge ({u}, {v})")));
        }
        let mut g = self.clone();
        g.insert(u, v);
        Ok(g)
    }

    /// Removes edge `e`; the result may be disconnected.
    pub fn delete_edge(&self, e: (usize, usize)) -> Result<Graph> {
        let (u, v) = e;
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.remove(u, v);
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert(u, v);
        }
        for (u, v) in other.edges() {
            g.insert(u + self.n, v + self.n);
        }
        g
    }

    /// Disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.insert(u, self.n + v);
            }
        }
        g
    }

    /// Subgraph induced on the vertices not in `removed`, relabelled in order.
    pub fn without_vertices(&self, removed: &[bool]) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !removed[v]).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (u, v) in self.edges() {
            if !removed[u] && !removed[v] {
                g.insert(index[u], index[v]);
            }
        }
        g
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff a single BFS from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let w = self.words;
        let mut reached = vec![0u64; w];
        let mut frontier = vec![0u64; w];
        reached[0] = 1;
        frontier[0] = 1;
        loop {
            let mut next = vec![0u64; w];
            for (wi, &word) in frontier.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let v = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (k, r) in self.row(v).iter().enumerate() {
                        next[k] |= r;
                    }
                }
            }
            let mut grew = false;
            for k in 0..w {
                next[k] &= !reached[k];
                reached[k] |= next[k];
                grew |= next[k] != 0;
            }
            if !grew {
                break;
            }
            frontier = next;
        }
        reached.iter().map(|x| x.count_ones() as usize).sum::<usize>() == self.n
    }

    /// Two-colouring `(A, B)` with vertex 0 in `A`, or `None` when an odd
    /// cycle exists. For a connected graph the colouring is unique.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for v in self.neighbors(u) {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&v| colour[v] == Some(false));
        Some((a, b))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn complete_graph_edge_count() {
        assert_eq!(Graph::complete(4).m(), 6);
        assert_eq!(Graph::complete(1).m(), 0);
    }

    #[test]
    fn delete_edge_cases() {
        let k3 = Graph::complete(3);
        let p3 = k3.delete_edge((0, 2)).unwrap();
        assert_eq!(p3.m(), 2);
        assert!(p3.is_connected());
        assert_eq!(p3.degrees(), vec![1, 2, 1]);

        let split = path(3).delete_edge((0, 1)).unwrap();
        assert!(!split.is_connected());

        for (u, v) in Graph::complete(4).edges() {
            let g = Graph::complete(4).delete_edge((u, v)).unwrap();
            assert_eq!(g.m(), 5);
            assert!(g.is_connected());
        }
        assert_eq!(path(3).delete_edge((0, 2)), Err(Error::MissingEdge(0, 2)));
    }

    #[test]
    fn connectivity() {
        assert!(path(5).is_connected());
        let k2 = Graph::complete(2);
        assert!(!k2.union(&k2).is_connected());
        assert!(Graph::empty(1).is_connected());
        let big = path(130);
        assert!(big.is_connected());
        assert!(!big.delete_edge((70, 71)).unwrap().is_connected());
    }

    #[test]
    fn bipartitions() {
        let k23 = Graph::complete(2).complement().join(&Graph::complete(3).complement());
        let (a, b) = k23.bipartition().unwrap();
        let mut sizes = [a.len(), b.len()];
        sizes.sort();
        assert_eq!(sizes, [2, 3]);

        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(c5.bipartition().is_none());

        let (a, b) = path(4).bipartition().unwrap();
        assert_eq!((a.len(), b.len()), (2, 2));
    }

    #[test]
    fn join_edge_count() {
        let g1 = path(3);
        let g2 = Graph::complete(4);
        let j = g1.join(&g2);
        assert_eq!(j.m(), g1.m() + g2.m() + 12);
        assert!(j.is_connected());
    }

    #[test]
    fn neighbors_span_words() {
        let g = Graph::from_edges(100, [(3, 70), (3, 99), (3, 4)]).unwrap();
        assert_eq!(g.neighbors(3).collect::<Vec<_>>(), vec![4, 70, 99]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(3, 4), (3, 70), (3, 99)]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(Graph::from_edges(2, [(0, 5)]), Err(Error::VertexIndex { index: 5, n: 2 })));
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn components_and_vertex_removal() {
        let g = path(5);
        let removed = [false, false, true, false, false];
        let h = g.without_vertices(&removed);
        assert_eq!(h.n(), 4);
        assert_eq!(h.components(), vec![vec![0, 1], vec![2, 3]]);
    }
}

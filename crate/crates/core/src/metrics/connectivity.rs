use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`vertex_connectivity_brute`].
pub const BRUTE_FORCE_CONNECTIVITY_LIMIT: usize = 12;

/// Unit-capacity flow network with every vertex split into `in -> out`.
struct SplitNetwork {
    size: usize,
    cap: Vec<u8>,
    adj: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let size = 2 * g.n();
        let mut net = SplitNetwork {
            size,
            cap: vec![0; size * size],
            adj: vec![Vec::new(); size],
        };
        for v in 0..g.n() {
            net.add(2 * v, 2 * v + 1);
        }
        for (u, v) in g.edges() {
            net.add(2 * u + 1, 2 * v);
            net.add(2 * v + 1, 2 * u);
        }
        net
    }

    fn add(&mut self, from: usize, to: usize) {
        self.cap[from * self.size + to] = 1;
        self.adj[from].push(to);
        self.adj[to].push(from);
    }

    /// Number of internally vertex-disjoint `s`-`t` paths, stopping early
    /// once `limit` paths are found.
    fn disjoint_paths(&self, s: usize, t: usize, limit: usize) -> usize {
        let mut residual = self.cap.clone();
        let (source, sink) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        let mut parent = vec![usize::MAX; self.size];
        while flow < limit {
            parent.fill(usize::MAX);
            parent[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &v in &self.adj[u] {
                    if parent[v] == usize::MAX && residual[u * self.size + v] > 0 {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                break;
            }
            let mut v = sink;
            while v != source {
                let u = parent[v];
                residual[u * self.size + v] -= 1;
                residual[v * self.size + u] += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }
}

/// Vertex connectivity by Menger's theorem: the minimum, over non-adjacent
/// pairs, of the number of vertex-disjoint paths. `K_n` has connectivity
/// `n - 1` by convention.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::ParameterRange("vertex connectivity requires n >= 2".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let net = SplitNetwork::new(g);
    let mut best = n - 1;
    // Some vertex among the first best+1 lies outside any minimum cut.
    let mut i = 0;
    while i <= best && i < n {
        for j in (i + 1)..n {
            if !g.has_edge(i, j) {
                best = best.min(net.disjoint_paths(i, j, best));
            }
        }
        i += 1;
    }
    Ok(best)
}

/// Vertex connectivity by trying every vertex subset in order of size.
pub fn vertex_connectivity_brute(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::ParameterRange("vertex connectivity requires n >= 2".into()));
    }
    if n > BRUTE_FORCE_CONNECTIVITY_LIMIT {
        return Err(Error::SizeLimit {
            what: "brute-force vertex connectivity",
            n,
            limit: BRUTE_FORCE_CONNECTIVITY_LIMIT,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let rows: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
    let full = (1u32 << n) - 1;
    let disconnects = |removed: u32| {
        let alive = full & !removed;
        if alive.count_ones() < 2 {
            return false;
        }
        let start = alive.trailing_zeros();
        let mut reach = 1u32 << start;
        loop {
            let mut next = reach;
            let mut bits = reach;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= rows[v] & alive;
            }
            if next == reach {
                return reach != alive;
            }
            reach = next;
        }
    };
    let best = (0u32..=full)
        .filter(|&s| disconnects(s))
        .map(|s| s.count_ones() as usize)
        .min();
    Ok(best.unwrap_or(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{graph_from_mask, FamilySpec};
    use proptest::prelude::*;

    #[test]
    fn named_graphs() {
        let paw = FamilySpec::connectivity_family(4, 1, 1).build().unwrap();
        assert_eq!(vertex_connectivity(&paw).unwrap(), 1);
        for n in 3..9 {
            let c = FamilySpec::cycle(n).build().unwrap();
            assert_eq!(vertex_connectivity(&c).unwrap(), 2);
        }
        assert_eq!(vertex_connectivity(&Graph::complete(5)).unwrap(), 4);
        assert_eq!(vertex_connectivity_brute(&Graph::complete(5)).unwrap(), 4);
        assert_eq!(vertex_connectivity(&Graph::complete(2)).unwrap(), 1);
        for (n, k, t) in [(7, 2, 2), (8, 3, 1), (9, 1, 4), (10, 4, 3)] {
            let g = FamilySpec::connectivity_family(n, k, t).build().unwrap();
            assert_eq!(vertex_connectivity(&g).unwrap(), k);
            assert_eq!(vertex_connectivity_brute(&g).unwrap(), k);
        }
        let k34 = FamilySpec::complete_bipartite(3, 4).build().unwrap();
        assert_eq!(vertex_connectivity(&k34).unwrap(), 3);
    }

    #[test]
    fn errors() {
        let g = Graph::complete(2).union(&Graph::complete(2));
        assert_eq!(vertex_connectivity(&g), Err(Error::Disconnected));
        assert_eq!(vertex_connectivity_brute(&g), Err(Error::Disconnected));
        assert!(vertex_connectivity(&Graph::empty(1)).is_err());
    }

    proptest! {
        #[test]
        fn flow_agrees_with_brute_force(n in 2usize..10, bits in any::<u64>()) {
            let g = graph_from_mask(n, bits & ((1u64 << (n * (n - 1) / 2)) - 1));
            prop_assume!(g.is_connected());
            let k = vertex_connectivity(&g).unwrap();
            prop_assert_eq!(k, vertex_connectivity_brute(&g).unwrap());
            prop_assert!(k <= g.degrees().into_iter().min().unwrap());
        }
    }
}

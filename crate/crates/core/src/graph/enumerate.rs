//! Exhaustive enumeration of small connected graphs and a brute-force
//! canonical form for isomorphism rejection.
//!
//! Edge masks use graph6 pair order: bit `k` (least significant first) is the
//! `k`-th pair of the column-major upper triangle, i.e. pair `(i, j)` with
//! `i < j` sits at `j(j-1)/2 + i`.

use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`enumerate_connected`].
pub const MAX_ENUMERATION_ORDER: usize = 8;
/// Largest order for which [`canonical_form`] is defined (mask fits in `u64`).
pub const MAX_CANONICAL_ORDER: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// Every labelled graph, i.e. every connected edge subset.
    Labeled,
    /// One canonical representative per isomorphism class.
    Unlabeled,
}

pub fn edge_pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

/// Builds the graph on `n` vertices whose edge set is `mask`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                g.insert(i, j);
            }
            k += 1;
        }
    }
    g
}

/// Edge mask of `g`, or `None` when `n` exceeds [`MAX_CANONICAL_ORDER`].
pub fn graph_mask(g: &Graph) -> Option<u64> {
    if g.n() > MAX_CANONICAL_ORDER {
        return None;
    }
    Some(g.edges().fold(0u64, |acc, (u, v)| acc | 1 << pair_index(u, v)))
}

fn mask_rows(n: usize, mask: u64) -> [u32; MAX_CANONICAL_ORDER] {
    let mut rows = [0u32; MAX_CANONICAL_ORDER];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    rows
}

fn rows_connected(n: usize, rows: &[u32]) -> bool {
    if n <= 1 {
        return true;
    }
    let full = (1u32 << n) - 1;
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        let mut bits = reach;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= rows[v];
        }
        if next == reach {
            return reach == full;
        }
        reach = next;
    }
}

/// Connectivity of the graph encoded by `mask`, without building it.
pub fn mask_is_connected(n: usize, mask: u64) -> bool {
    rows_connected(n, &mask_rows(n, mask))
}

/// Canonical isomorphism-class key for graphs with `n <= 11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    /// Adjacency bits of the canonical relabelling, graph6 pair order, first
    /// pair in the most significant position.
    pub code: u64,
}

impl CanonicalForm {
    pub fn graph(&self) -> Graph {
        let total = edge_pair_count(self.n);
        let mut g = Graph::empty(self.n);
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.code >> (total - 1 - k) & 1 == 1 {
                    g.insert(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

struct CanonSearch<'a> {
    n: usize,
    total: usize,
    rows: &'a [u32],
    cell_of_position: Vec<usize>,
    cells: Vec<Vec<usize>>,
    used: u32,
    order: Vec<usize>,
    best: Option<u64>,
}

impl CanonSearch<'_> {
    fn extend(&mut self, pos: usize, prefix: u64) {
        if pos == self.n {
            if self.best.is_none_or(|b| prefix > b) {
                self.best = Some(prefix);
            }
            return;
        }
        let cell = self.cell_of_position[pos];
        for idx in 0..self.cells[cell].len() {
            let v = self.cells[cell][idx];
            if self.used >> v & 1 == 1 {
                continue;
            }
            // Column `pos` contributes pairs (i, pos) for i < pos.
            let mut code = prefix;
            for &u in &self.order[..pos] {
                code = (code << 1) | (self.rows[v] >> u & 1) as u64;
            }
            if let Some(best) = self.best {
                let fixed = pos * (pos + 1) / 2;
                let best_prefix = if fixed == 0 { 0 } else { best >> (self.total - fixed) };
                if code < best_prefix {
                    continue;
                }
            }
            self.used |= 1 << v;
            self.order.push(v);
            self.extend(pos + 1, code);
            self.order.pop();
            self.used &= !(1 << v);
        }
    }
}

fn vertex_classes(n: usize, rows: &[u32]) -> Vec<(usize, Vec<usize>)> {
    let deg: Vec<usize> = (0..n).map(|v| rows[v].count_ones() as usize).collect();
    (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = (0..n).filter(|&u| rows[v] >> u & 1 == 1).map(|u| deg[u]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect()
}

fn canonical_from_rows(n: usize, rows: &[u32]) -> CanonicalForm {
    let inv = vertex_classes(n, rows);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut cell_of_position = Vec::with_capacity(n);
    for (pos, &v) in verts.iter().enumerate() {
        if pos == 0 || inv[verts[pos - 1]] != inv[v] {
            cells.push(Vec::new());
        }
        cells.last_mut().unwrap().push(v);
        cell_of_position.push(cells.len() - 1);
    }
    let mut search = CanonSearch {
        n,
        total: edge_pair_count(n),
        rows,
        cell_of_position,
        cells,
        used: 0,
        order: Vec::with_capacity(n),
        best: None,
    };
    search.extend(0, 0);
    CanonicalForm {
        n,
        code: search.best.unwrap_or(0),
    }
}

/// Canonical form by exhaustive search over relabellings that respect a
/// degree-based vertex partition. Exponential in the worst case.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::SizeLimit {
            what: "canonical form",
            n,
            limit: MAX_CANONICAL_ORDER,
        });
    }
    let mask = graph_mask(g).expect("order checked");
    Ok(canonical_from_rows(n, &mask_rows(n, mask)))
}

fn count_automorphisms(
    pos: usize,
    n: usize,
    rows: &[u32],
    inv: &[(usize, Vec<usize>)],
    image: &mut Vec<usize>,
    used: u32,
) -> u64 {
    if pos == n {
        return 1;
    }
    let mut total = 0;
    for v in 0..n {
        if used >> v & 1 == 1 || inv[v] != inv[pos] {
            continue;
        }
        let consistent = image
            .iter()
            .enumerate()
            .all(|(u, &w)| (rows[pos] >> u & 1) == (rows[v] >> w & 1));
        if consistent {
            image.push(v);
            total += count_automorphisms(pos + 1, n, rows, inv, image, used | 1 << v);
            image.pop();
        }
    }
    total
}

/// Order of the automorphism group of `g`, by backtracking over
/// degree-respecting vertex maps.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::SizeLimit {
            what: "automorphism count",
            n,
            limit: MAX_CANONICAL_ORDER,
        });
    }
    let rows = mask_rows(n, graph_mask(g).expect("order checked"));
    let inv = vertex_classes(n, &rows);
    Ok(count_automorphisms(0, n, &rows, &inv, &mut Vec::with_capacity(n), 0))
}

fn msb_code(n: usize, mask: u64) -> u64 {
    let total = edge_pair_count(n);
    (0..total).fold(0u64, |acc, k| (acc << 1) | (mask >> k & 1))
}

fn accept(n: usize, mask: u64, mode: Enumeration) -> bool {
    let rows = mask_rows(n, mask);
    if !rows_connected(n, &rows) {
        return false;
    }
    match mode {
        Enumeration::Labeled => true,
        Enumeration::Unlabeled => {
            let inv = vertex_classes(n, &rows);
            if inv.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            canonical_from_rows(n, &rows).code == msb_code(n, mask)
        }
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        Err(Error::ParameterRange(format!(
            "enumeration requires 1 <= n <= {MAX_ENUMERATION_ORDER} (n={n})"
        )))
    } else {
        Ok(())
    }
}

/// Streams connected graphs on `n` vertices in increasing edge-mask order.
pub fn enumerate_connected(n: usize, mode: Enumeration) -> Result<impl Iterator<Item = Graph>> {
    check_order(n)?;
    let total = 1u64 << edge_pair_count(n);
    Ok((0..total)
        .filter(move |&mask| accept(n, mask, mode))
        .map(move |mask| graph_from_mask(n, mask)))
}

/// Parallel counterpart of [`enumerate_connected`], partitioned by mask range.
/// Yields `(mask, graph)` pairs.
pub fn par_enumerate_connected(
    n: usize,
    mode: Enumeration,
) -> Result<impl ParallelIterator<Item = (u64, Graph)>> {
    check_order(n)?;
    let total = 1u64 << edge_pair_count(n);
    Ok((0..total)
        .into_par_iter()
        .filter(move |&mask| accept(n, mask, mode))
        .map(move |mask| (mask, graph_from_mask(n, mask))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts_from_automorphisms() {
        let factorial = |n: u64| (1..=n).product::<u64>();
        for (n, labeled) in [(3usize, 4u64), (4, 38), (5, 728), (6, 26704)] {
            let total: u64 = enumerate_connected(n, Enumeration::Unlabeled)
                .unwrap()
                .map(|g| factorial(n as u64) / automorphism_count(&g).unwrap())
                .sum();
            assert_eq!(total, labeled, "n={n}");
        }
        assert_eq!(automorphism_count(&Graph::complete(5)).unwrap(), 120);
    }

    /// Union-find connectivity over an explicit pair list, independent of the
    /// bitset BFS used by the enumerator.
    fn brute_connected_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        let mut count = 0;
        for mask in 0u64..(1 << pairs.len()) {
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut x = x;
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
            let root = find(&mut parent, 0);
            if (0..n).all(|v| find(&mut parent, v) == root) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn labeled_counts_match_brute_force() {
        assert_eq!(brute_connected_count(3), 4);
        assert_eq!(brute_connected_count(4), 38);
        for n in 1..=5 {
            let got = enumerate_connected(n, Enumeration::Labeled).unwrap().count();
            assert_eq!(got, brute_connected_count(n), "n={n}");
        }
    }

    #[test]
    fn single_vertex() {
        let all: Vec<Graph> = enumerate_connected(1, Enumeration::Labeled).unwrap().collect();
        assert_eq!(all, vec![Graph::empty(1)]);
    }

    #[test]
    fn unlabeled_counts() {
        // Connected graphs up to isomorphism on 1..=7 vertices.
        let expected = [1, 1, 2, 6, 21, 112, 853];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let got = par_enumerate_connected(n, Enumeration::Unlabeled).unwrap().count();
            assert_eq!(got, want, "n={n}");
        }
    }

    #[test]
    fn order_limits() {
        assert!(enumerate_connected(0, Enumeration::Labeled).is_err());
        assert!(enumerate_connected(9, Enumeration::Labeled).is_err());
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        // P_4 labelled two ways, and the paw labelled two ways.
        let a = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let paw1 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)]).unwrap();
        let paw2 = Graph::from_edges(4, [(3, 1), (3, 2), (3, 0), (1, 2)]).unwrap();
        assert_eq!(canonical_form(&paw1).unwrap(), canonical_form(&paw2).unwrap());
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&paw1).unwrap());
        let c = canonical_form(&paw1).unwrap();
        assert_eq!(canonical_form(&c.graph()).unwrap(), c);
    }

    #[test]
    fn mask_round_trip() {
        let g = Graph::from_edges(6, [(0, 5), (1, 2), (3, 4), (2, 5)]).unwrap();
        let mask = graph_mask(&g).unwrap();
        assert_eq!(graph_from_mask(6, mask), g);
        assert_eq!(mask_is_connected(6, mask), g.is_connected());
    }
}

//! Shortest-path metrics, graph matrices, and the combinatorial parameters
//! (independence number, vertex connectivity) the bounds condition on.

mod connectivity;
mod independence;

pub use connectivity::{vertex_connectivity, vertex_connectivity_brute, BRUTE_FORCE_CONNECTIVITY_LIMIT};
pub use independence::{independence_number, maximum_independent_set, INDEPENDENCE_LIMIT};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// All-pairs hop distances and the quantities derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceData {
    n: usize,
    dist: Vec<u32>,
    /// Transmission `Tr(v)`: sum of distances from `v`.
    pub transmissions: Vec<u64>,
    /// Wiener index: sum of distances over unordered pairs.
    pub wiener: u64,
    pub diameter: u32,
}

impl DistanceData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn min_transmission(&self) -> u64 {
        self.transmissions.iter().copied().min().unwrap_or(0)
    }

    /// `2W`, the trace of the distance Laplacian.
    pub fn twice_wiener(&self) -> u64 {
        2 * self.wiener
    }

    pub fn is_transmission_regular(&self) -> bool {
        self.transmissions.windows(2).all(|w| w[0] == w[1])
    }
}

/// BFS from every vertex.
pub fn apsp(g: &Graph) -> Result<DistanceData> {
    let n = g.n();
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for v in g.neighbors(u) {
                if row[v] == u32::MAX {
                    row[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        if row.contains(&u32::MAX) {
            return Err(Error::Disconnected);
        }
    }
    let transmissions: Vec<u64> = (0..n)
        .map(|u| dist[u * n..(u + 1) * n].iter().map(|&d| d as u64).sum())
        .collect();
    let wiener = transmissions.iter().sum::<u64>() / 2;
    let diameter = dist.iter().copied().max().unwrap_or(0);
    Ok(DistanceData {
        n,
        dist,
        transmissions,
        wiener,
        diameter,
    })
}

/// Dense symmetric matrix. Only `set_sym` writes entries, so symmetry is
/// exact by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from an entry function evaluated on the upper triangle.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set_sym(i, j, f(i, j));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.data[i * self.n..(i + 1) * self.n].iter().sum()
    }

    /// `P M Pᵀ` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrix {
        let mut out = SymMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[perm[i] * self.n + perm[j]] = self.get(i, j);
            }
        }
        out
    }

    /// `self + shift * I`.
    pub fn shifted(&self, shift: f64) -> SymMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] += shift;
        }
        out
    }

    pub(crate) fn into_data(self) -> Vec<f64> {
        self.data
    }
}

pub fn distance_matrix_from(d: &DistanceData) -> SymMatrix {
    SymMatrix::from_fn(d.n(), |i, j| d.dist(i, j) as f64)
}

/// `D^L = Tr - D`.
pub fn distance_laplacian_from(d: &DistanceData) -> SymMatrix {
    SymMatrix::from_fn(d.n(), |i, j| {
        if i == j {
            d.transmissions[i] as f64
        } else {
            -(d.dist(i, j) as f64)
        }
    })
}

pub fn distance_matrix(g: &Graph) -> Result<SymMatrix> {
    Ok(distance_matrix_from(&apsp(g)?))
}

pub fn distance_laplacian(g: &Graph) -> Result<SymMatrix> {
    Ok(distance_laplacian_from(&apsp(g)?))
}

/// `L = Deg - A`; defined for any graph.
pub fn laplacian(g: &Graph) -> SymMatrix {
    SymMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            g.degree(i) as f64
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    })
}

pub fn adjacency(g: &Graph) -> SymMatrix {
    SymMatrix::from_fn(g.n(), |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn build(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn path_three() {
        let d = apsp(&build("path:3")).unwrap();
        assert_eq!(d.row(0), &[0, 1, 2]);
        assert_eq!(d.row(1), &[1, 0, 1]);
        assert_eq!(d.row(2), &[2, 1, 0]);
        assert_eq!(d.transmissions, vec![3, 2, 3]);
        assert_eq!(d.wiener, 4);
        assert_eq!(d.diameter, 2);
    }

    #[test]
    fn complete_and_cycle() {
        for n in 2..9 {
            let d = apsp(&Graph::complete(n)).unwrap();
            assert_eq!(d.wiener as usize, n * (n - 1) / 2);
            assert_eq!(d.diameter, 1);
        }
        let d = apsp(&build("cycle:4")).unwrap();
        assert_eq!(d.transmissions, vec![4, 4, 4, 4]);
        assert_eq!(d.wiener, 8);
        assert_eq!(d.diameter, 2);
        assert!(d.is_transmission_regular());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::complete(2).union(&Graph::complete(2));
        assert_eq!(apsp(&g), Err(Error::Disconnected));
        assert!(distance_laplacian(&g).is_err());
    }

    #[test]
    fn matrices() {
        let dl = distance_laplacian(&build("path:3")).unwrap();
        let want = [[3.0, -1.0, -2.0], [-1.0, 2.0, -1.0], [-2.0, -1.0, 3.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(dl.get(i, j), want[i][j]);
            }
        }
        let k2 = distance_laplacian(&Graph::complete(2)).unwrap();
        assert_eq!((k2.get(0, 0), k2.get(0, 1), k2.get(1, 1)), (1.0, -1.0, 1.0));
        let l = laplacian(&Graph::complete(3));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), if i == j { 2.0 } else { -1.0 });
            }
        }
    }

    #[test]
    fn diameter_two_transmission_identity() {
        // Tr(v) = 2n - 2 - deg(v) and 2W = 2n(n-1) - 2m whenever diam = 2.
        for s in ["cycle:5", "complete_bipartite:2,3", "star:6", "pineapple:7,3", "s_plus:5"] {
            let g = build(s);
            let d = apsp(&g).unwrap();
            assert_eq!(d.diameter, 2, "{s}");
            let n = g.n() as u64;
            for v in 0..g.n() {
                assert_eq!(d.transmissions[v], 2 * n - 2 - g.degree(v) as u64);
            }
            assert_eq!(2 * d.wiener, 2 * n * (n - 1) - 2 * g.m() as u64);
        }
    }

    #[test]
    fn row_sums_and_trace() {
        let g = build("path:6");
        let d = apsp(&g).unwrap();
        let dl = distance_laplacian_from(&d);
        let l = laplacian(&g);
        for i in 0..6 {
            assert_eq!(dl.row_sum(i), 0.0);
            assert_eq!(l.row_sum(i), 0.0);
        }
        assert_eq!(dl.trace(), (2 * d.wiener) as f64);
    }

    #[test]
    fn complete_bipartite_wiener() {
        for a in 1..6u64 {
            for b in 1..6u64 {
                let n = a + b;
                let d = apsp(&FamilySpec::complete_bipartite(a as usize, b as usize).build().unwrap()).unwrap();
                assert_eq!(2 * d.wiener, 2 * n * n - 2 * n - 2 * a * b);
            }
        }
    }
}

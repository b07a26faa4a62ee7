use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the exact independence-number search.
pub const INDEPENDENCE_LIMIT: usize = 32;

struct CliqueSearch {
    adj: Vec<u64>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl CliqueSearch {
    /// Greedy sequential colouring of `candidates`; returns vertices in
    /// colour order with the running colour count as an upper bound.
    fn colour_order(&self, mut candidates: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(candidates.count_ones() as usize);
        let mut colour = 0;
        while candidates != 0 {
            colour += 1;
            let mut free = candidates;
            while free != 0 {
                let v = free.trailing_zeros() as usize;
                free &= !(1 << v);
                free &= !self.adj[v];
                candidates &= !(1 << v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut candidates: u64) {
        let order = self.colour_order(candidates);
        for &(v, bound) in order.iter().rev() {
            if self.current.len() + bound <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = candidates & self.adj[v];
            if next == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates &= !(1 << v);
        }
    }
}

/// A maximum independent set, found as a maximum clique of the complement by
/// branch and bound with a greedy-colouring bound.
pub fn maximum_independent_set(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > INDEPENDENCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "independence number",
            n,
            limit: INDEPENDENCE_LIMIT,
        });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let adj: Vec<u64> = (0..n).map(|v| !g.row(v)[0] & all & !(1 << v)).collect();
    let mut search = CliqueSearch {
        adj,
        best: Vec::new(),
        current: Vec::new(),
    };
    if n > 0 {
        search.expand(all);
    }
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}

//! Named graph families and the `name:p1,p2,...` spec grammar.

use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Complete,
    Path,
    Cycle,
    /// `K_{1,n-1}`.
    Star,
    CompleteBipartite { a: usize, b: usize },
    /// Clique on `t` vertices joined to an independent set of `n - t`.
    CompleteSplit { t: usize },
    /// Clique `K_{n-p}` with `p` pendant vertices hung on one clique vertex.
    Pineapple { p: usize },
    /// Star with one extra edge between two leaves.
    SPlus,
    /// `K_k ▽ (K_t ∪ K_{n-k-t})`.
    ConnectivityFamily { k: usize, t: usize },
    /// `joined ▽ (union[0] ∪ union[1] ∪ ...)`.
    Join { joined: Box<FamilySpec>, union: Vec<FamilySpec> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
}

fn range_err(msg: impl Into<String>) -> Error {
    Error::ParameterRange(msg.into())
}

impl FamilySpec {
    pub fn complete(n: usize) -> Self {
        FamilySpec { kind: FamilyKind::Complete, n }
    }

    pub fn path(n: usize) -> Self {
        FamilySpec { kind: FamilyKind::Path, n }
    }

    pub fn cycle(n: usize) -> Self {
        FamilySpec { kind: FamilyKind::Cycle, n }
    }

    pub fn star(n: usize) -> Self {
        FamilySpec { kind: FamilyKind::Star, n }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::CompleteBipartite { a, b },
            n: a + b,
        }
    }

    pub fn complete_split(t: usize, n: usize) -> Self {
        FamilySpec { kind: FamilyKind::CompleteSplit { t }, n }
    }

    pub fn pineapple(n: usize, p: usize) -> Self {
        FamilySpec { kind: FamilyKind::Pineapple { p }, n }
    }

    pub fn s_plus(n: usize) -> Self {
        FamilySpec { kind: FamilyKind::SPlus, n }
    }

    pub fn connectivity_family(n: usize, k: usize, t: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::ConnectivityFamily { k, t },
            n,
        }
    }

    pub fn join(joined: FamilySpec, union: Vec<FamilySpec>) -> Self {
        let n = joined.n + union.iter().map(|s| s.n).sum::<usize>();
        FamilySpec {
            kind: FamilyKind::Join {
                joined: Box::new(joined),
                union,
            },
            n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(range_err("n >= 1"));
        }
        match &self.kind {
            FamilyKind::Complete | FamilyKind::Path => Ok(()),
            FamilyKind::Cycle if n < 3 => Err(range_err("cycle requires n >= 3")),
            FamilyKind::Star if n < 2 => Err(range_err("star requires n >= 2")),
            FamilyKind::SPlus if n < 3 => Err(range_err("s_plus requires n >= 3")),
            FamilyKind::Cycle | FamilyKind::Star | FamilyKind::SPlus => Ok(()),
            FamilyKind::CompleteBipartite { a, b } => {
                if *a < 1 || *b < 1 {
                    Err(range_err("complete_bipartite requires a >= 1 and b >= 1"))
                } else if a + b != n {
                    Err(range_err("complete_bipartite requires a + b = n"))
                } else {
                    Ok(())
                }
            }
            FamilyKind::CompleteSplit { t } => {
                if *t < 1 || *t > n - 1 {
                    Err(range_err(format!("complete_split requires 1 <= t <= n-1 (t={t}, n={n})")))
                } else {
                    Ok(())
                }
            }
            FamilyKind::Pineapple { p } => {
                if *p < 1 || *p > n.saturating_sub(1) {
                    Err(range_err(format!("pineapple requires 1 <= p <= n-1 (p={p}, n={n})")))
                } else {
                    Ok(())
                }
            }
            FamilyKind::ConnectivityFamily { k, t } => {
                if n < 3 || *k < 1 || *k > n - 2 {
                    Err(range_err(format!("connectivity_family requires 1 <= k <= n-2 (k={k}, n={n})")))
                } else if *t < 1 || *t > (n - k) / 2 {
                    Err(range_err(format!(
                        "connectivity_family requires 1 <= t <= floor((n-k)/2) (t={t}, n={n}, k={k})"
                    )))
                } else {
                    Ok(())
                }
            }
            FamilyKind::Join { joined, union } => {
                if union.is_empty() {
                    return Err(range_err("join requires at least one union part"));
                }
                joined.validate()?;
                for part in union {
                    part.validate()?;
                }
                let total = joined.n + union.iter().map(|s| s.n).sum::<usize>();
                if total != n {
                    return Err(range_err("join order must equal the sum of part orders"));
                }
                Ok(())
            }
        }
    }

    /// Builds the named graph. Every kind yields a connected graph.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.n;
        let g = match &self.kind {
            FamilyKind::Complete => Graph::complete(n),
            FamilyKind::Path => Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?,
            FamilyKind::Cycle => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?,
            FamilyKind::Star => Graph::from_edges(n, (1..n).map(|i| (0, i)))?,
            FamilyKind::CompleteBipartite { a, b } => Graph::empty(*a).join(&Graph::empty(*b)),
            FamilyKind::CompleteSplit { t } => Graph::complete(*t).join(&Graph::empty(n - t)),
            FamilyKind::Pineapple { p } => {
                let q = n - p;
                let mut g = Graph::complete(q).union(&Graph::empty(*p));
                for leaf in q..n {
                    g.insert(0, leaf);
                }
                g
            }
            FamilyKind::SPlus => {
                let mut g = Graph::from_edges(n, (1..n).map(|i| (0, i)))?;
                g.insert(1, 2);
                g
            }
            FamilyKind::ConnectivityFamily { k, t } => {
                Graph::complete(*k).join(&Graph::complete(*t).union(&Graph::complete(n - k - t)))
            }
            FamilyKind::Join { joined, union } => {
                let left = joined.build()?;
                let mut right = union[0].build()?;
                for part in &union[1..] {
                    right = right.union(&part.build()?);
                }
                left.join(&right)
            }
        };
        Ok(g)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match &self.kind {
            FamilyKind::Complete => write!(f, "complete:{n}"),
            FamilyKind::Path => write!(f, "path:{n}"),
            FamilyKind::Cycle => write!(f, "cycle:{n}"),
            FamilyKind::Star => write!(f, "star:{n}"),
            FamilyKind::CompleteBipartite { a, b } => write!(f, "complete_bipartite:{a},{b}"),
            FamilyKind::CompleteSplit { t } => write!(f, "complete_split:{t},{n}"),
            FamilyKind::Pineapple { p } => write!(f, "pineapple:{n},{p}"),
            FamilyKind::SPlus => write!(f, "s_plus:{n}"),
            FamilyKind::ConnectivityFamily { k, t } => write!(f, "connectivity_family:{n},{k},{t}"),
            FamilyKind::Join { joined, union } => {
                write!(f, "join:{joined}|")?;
                for (i, part) in union.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_params(name: &str, raw: &str, expected: usize) -> Result<Vec<usize>> {
    let params: Vec<usize> = raw
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Malformed(format!("{name}: bad integer parameter {p:?}")))
        })
        .collect::<Result<_>>()?;
    if params.len() != expected {
        return Err(Error::Malformed(format!(
            "{name} takes {expected} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(params)
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Grammar: `name:p1,p2,...`, or `join:<spec>|<spec>+<spec>+...` where
    /// the part before `|` is joined to the union of the `+`-separated parts.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Malformed(format!("family spec {s:?} lacks ':'")))?;
        let spec = match name {
            "join" => {
                let (left, right) = rest
                    .split_once('|')
                    .ok_or_else(|| Error::Malformed("join spec lacks '|'".into()))?;
                let joined: FamilySpec = left.parse()?;
                let union = right.split('+').map(str::parse).collect::<Result<Vec<_>>>()?;
                FamilySpec::join(joined, union)
            }
            "complete" => FamilySpec::complete(parse_params(name, rest, 1)?[0]),
            "path" => FamilySpec::path(parse_params(name, rest, 1)?[0]),
            "cycle" => FamilySpec::cycle(parse_params(name, rest, 1)?[0]),
            "star" => FamilySpec::star(parse_params(name, rest, 1)?[0]),
            "s_plus" => FamilySpec::s_plus(parse_params(name, rest, 1)?[0]),
            "complete_bipartite" => {
                let p = parse_params(name, rest, 2)?;
                FamilySpec::complete_bipartite(p[0], p[1])
            }
            "complete_split" => {
                let p = parse_params(name, rest, 2)?;
                FamilySpec::complete_split(p[0], p[1])
            }
            "pineapple" => {
                let p = parse_params(name, rest, 2)?;
                FamilySpec::pineapple(p[0], p[1])
            }
            "connectivity_family" => {
                let p = parse_params(name, rest, 3)?;
                FamilySpec::connectivity_family(p[0], p[1], p[2])
            }
            other => return Err(Error::Malformed(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_families() {
        assert_eq!(FamilySpec::complete(4).build().unwrap().m(), 6);
        let k23 = FamilySpec::complete_bipartite(2, 3).build().unwrap();
        assert_eq!(k23.m(), 6);
        assert!(k23.bipartition().is_some());
        assert_eq!(FamilySpec::complete_split(2, 5).build().unwrap().m(), 1 + 6);
        assert_eq!(FamilySpec::pineapple(6, 2).build().unwrap().m(), 6 + 2);
        assert_eq!(FamilySpec::s_plus(5).build().unwrap().m(), 5);
        assert_eq!(FamilySpec::cycle(5).build().unwrap().degrees(), vec![2; 5]);
    }

    #[test]
    fn paw_as_join() {
        // K_1 ▽ (K_1 ∪ K_2): edges 0-1, 0-2, 0-3 from the join and 2-3 inside K_2.
        let spec = FamilySpec::join(
            FamilySpec::complete(1),
            vec![FamilySpec::complete(1), FamilySpec::complete(2)],
        );
        let g = spec.build().unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (0, 3), (2, 3)]);
        assert_eq!(g, FamilySpec::connectivity_family(4, 1, 1).build().unwrap());
    }

    #[test]
    fn every_family_is_connected() {
        let specs = [
            "complete:1",
            "complete:6",
            "path:7",
            "cycle:5",
            "star:6",
            "complete_bipartite:3,4",
            "complete_split:1,6",
            "pineapple:7,3",
            "s_plus:6",
            "connectivity_family:9,2,3",
            "join:complete_split:1,3|complete:2+complete_bipartite:1,2",
        ];
        for s in specs {
            let spec: FamilySpec = s.parse().unwrap();
            assert!(spec.build().unwrap().is_connected(), "{s}");
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn parameter_errors_name_the_constraint() {
        let err = FamilySpec::complete_split(5, 5).build().unwrap_err();
        assert!(err.to_string().contains("1 <= t <= n-1"));
        let err = FamilySpec::connectivity_family(6, 1, 3).build().unwrap_err();
        assert!(err.to_string().contains("floor((n-k)/2)"));
        let err = FamilySpec::connectivity_family(6, 5, 1).build().unwrap_err();
        assert!(err.to_string().contains("k <= n-2"));
        assert!("cycle:2".parse::<FamilySpec>().is_err());
        assert!("wheel:5".parse::<FamilySpec>().is_err());
        assert!("complete_bipartite:2".parse::<FamilySpec>().is_err());
    }
}

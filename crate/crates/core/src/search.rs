//! Exhaustive small-order scans: DLE minimizers over graph classes and the
//! census of σ values.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::eigen::{positive_inertia, sym_eigenvalues, tol_zero};
use crate::energy::trace_norm_deviation;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, emit_graph6, par_enumerate_connected, Enumeration, FamilySpec, Graph};
use crate::metrics::{distance_matrix_from, independence_number, vertex_connectivity};

/// Largest order scanned without opting in.
pub const DEFAULT_MAX_ORDER: usize = 7;
/// Largest order scanned at all.
pub const LARGE_MAX_ORDER: usize = 8;
/// Margin for the first, float-only pass over near-minimal candidates.
pub const CANDIDATE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassSpec {
    Bipartite,
    /// Independence number `α`.
    Independence(usize),
    /// Vertex connectivity `k`.
    Connectivity(usize),
    All,
}

impl ClassSpec {
    pub fn name(self) -> &'static str {
        match self {
            ClassSpec::Bipartite => "bipartite",
            ClassSpec::Independence(_) => "independence",
            ClassSpec::Connectivity(_) => "connectivity",
            ClassSpec::All => "all",
        }
    }

    pub fn parameter(self) -> Option<usize> {
        match self {
            ClassSpec::Independence(p) | ClassSpec::Connectivity(p) => Some(p),
            _ => None,
        }
    }

    fn contains(self, e: &ScanEntry) -> bool {
        match self {
            ClassSpec::Bipartite => e.bipartite,
            ClassSpec::Independence(alpha) => e.alpha == alpha,
            ClassSpec::Connectivity(k) => e.kappa == k,
            ClassSpec::All => true,
        }
    }

    fn validate(self, n: usize) -> Result<()> {
        match self {
            ClassSpec::Independence(alpha) if alpha < 1 || alpha + 1 > n => Err(Error::ParameterRange(format!(
                "independence class requires 1 <= alpha <= n-1 (alpha={alpha}, n={n})"
            ))),
            ClassSpec::Connectivity(k) if k < 1 || k + 1 > n => Err(Error::ParameterRange(format!(
                "connectivity class requires 1 <= k <= n-1 (k={k}, n={n})"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(p) => write!(f, "{}({p})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// Per-isomorphism-class data gathered in one pass.
#[derive(Debug, Clone)]
pub struct ScanEntry {
    pub mask: u64,
    pub graph: Graph,
    pub graph6: String,
    pub dle: f64,
    pub sigma: usize,
    pub gamma: usize,
    pub transmission_regular: bool,
    pub bipartite: bool,
    pub alpha: usize,
    pub kappa: usize,
}

fn check_order(n: usize, allow_large: bool) -> Result<()> {
    let max = if allow_large { LARGE_MAX_ORDER } else { DEFAULT_MAX_ORDER };
    if n < 3 || n > max {
        let hint = if n == LARGE_MAX_ORDER { " (n = 8 needs the large-order opt-in)" } else { "" };
        return Err(Error::ParameterRange(format!("scans require 3 <= n <= {max}{hint} (n={n})")));
    }
    Ok(())
}

fn scan_entry(mask: u64, graph: Graph) -> Result<ScanEntry> {
    let a = Analysis::new(graph)?;
    let dist = sym_eigenvalues(&distance_matrix_from(&a.distances))?;
    Ok(ScanEntry {
        mask,
        graph6: emit_graph6(&a.graph),
        dle: a.dle(),
        sigma: a.sigma(),
        gamma: positive_inertia(&dist, tol_zero(a.n())),
        transmission_regular: a.distances.is_transmission_regular(),
        bipartite: a.graph.bipartition().is_some(),
        alpha: independence_number(&a.graph)?,
        kappa: vertex_connectivity(&a.graph)?,
        graph: a.graph,
    })
}

/// One entry per isomorphism class of connected graphs of order `n`, in
/// increasing mask order regardless of worker count.
pub fn scan(n: usize, allow_large: bool) -> Result<Vec<ScanEntry>> {
    check_order(n, allow_large)?;
    let mut entries: Vec<ScanEntry> = par_enumerate_connected(n, Enumeration::Unlabeled)?
        .map(|(mask, g)| scan_entry(mask, g))
        .collect::<Result<_>>()?;
    entries.sort_by_key(|e| e.mask);
    Ok(entries)
}

/// Outcome of a minimization over one class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub class_spec: String,
    pub n: usize,
    /// Isomorphism classes in the class.
    pub class_size: usize,
    pub min_dle: f64,
    /// Canonical graph6 strings of all minimizers up to isomorphism.
    pub minimizer_graphs: Vec<String>,
    /// Family name of each minimizer when it is a recognised member of the
    /// predicted family.
    pub minimizer_families: Vec<Option<String>>,
    pub predicted_graphs: Vec<String>,
    /// `None` for the unrestricted class, which carries no prediction.
    pub matches_prediction: Option<bool>,
    /// Connectivity class only: `t` of each minimizer that is a family member.
    pub witness_t: Vec<usize>,
    /// Empirical maximizers, reported as non-normative evidence.
    pub evidence_max_dle: f64,
    pub evidence_maximizers: Vec<String>,
}

fn canonical_graph6(spec: &FamilySpec) -> Result<String> {
    Ok(emit_graph6(&canonical_form(&spec.build()?)?.graph()))
}

/// Candidate family members with their names and, for the connectivity
/// family, their `t`.
fn predicted_family(class: ClassSpec, n: usize) -> Vec<(FamilySpec, Option<usize>)> {
    match class {
        ClassSpec::Bipartite => vec![(FamilySpec::complete_bipartite(n / 2, n - n / 2), None)],
        ClassSpec::Independence(alpha) => vec![(FamilySpec::complete_split(n - alpha, n), None)],
        ClassSpec::Connectivity(k) if k + 1 == n => vec![(FamilySpec::complete(n), None)],
        ClassSpec::Connectivity(k) => (1..=(n - k) / 2)
            .map(|t| (FamilySpec::connectivity_family(n, k, t), Some(t)))
            .collect(),
        ClassSpec::All => Vec::new(),
    }
}

/// Keeps entries whose DLE is within `CANDIDATE_MARGIN` of the minimum, then
/// recomputes DLE independently as a trace norm and keeps those within
/// `1e-9·max(1, min)` of the refined minimum.
fn extreme_set<'a>(members: &[&'a ScanEntry], key: impl Fn(f64) -> f64) -> Result<(f64, Vec<&'a ScanEntry>)> {
    let best = members.iter().map(|e| key(e.dle)).fold(f64::INFINITY, f64::min);
    let candidates: Vec<(&ScanEntry, f64)> = members
        .iter()
        .filter(|e| key(e.dle) <= best + CANDIDATE_MARGIN)
        .map(|e| Ok((*e, key(trace_norm_deviation(&e.graph)?))))
        .collect::<Result<_>>()?;
    let refined = candidates.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let tol = 1e-9 * refined.abs().max(1.0);
    let winners: Vec<&ScanEntry> = candidates
        .into_iter()
        .filter(|&(_, v)| v <= refined + tol)
        .map(|(e, _)| e)
        .collect();
    Ok((refined, winners))
}

/// Minimizers of DLE over `class` among pre-scanned entries of order `n`.
pub fn extremal_from_scan(entries: &[ScanEntry], class: ClassSpec, n: usize) -> Result<ExtremalResult> {
    class.validate(n)?;
    let members: Vec<&ScanEntry> = entries.iter().filter(|e| class.contains(e)).collect();
    if members.is_empty() {
        return Err(Error::ParameterRange(format!("class {class} is empty at n={n}")));
    }
    let (min_dle, minimizers) = extreme_set(&members, |x| x)?;
    let (neg_max, maximizers) = extreme_set(&members, |x| -x)?;

    let family = predicted_family(class, n);
    let mut named = BTreeMap::new();
    for (spec, t) in &family {
        named.insert(canonical_graph6(spec)?, (spec.to_string(), *t));
    }
    let minimizer_graphs: Vec<String> = minimizers.iter().map(|e| e.graph6.clone()).collect();
    let minimizer_families: Vec<Option<String>> =
        minimizer_graphs.iter().map(|g| named.get(g).map(|(s, _)| s.clone())).collect();
    let witness_t: Vec<usize> = minimizer_graphs.iter().filter_map(|g| named.get(g).and_then(|(_, t)| *t)).collect();
    let predicted_graphs: Vec<String> = named.keys().cloned().collect();
    let matches = match class {
        ClassSpec::All => None,
        ClassSpec::Connectivity(_) => Some(minimizer_families.iter().all(Option::is_some)),
        _ => Some(minimizer_graphs == predicted_graphs),
    };
    Ok(ExtremalResult {
        class_spec: class.to_string(),
        n,
        class_size: members.len(),
        min_dle,
        minimizer_graphs,
        minimizer_families,
        predicted_graphs,
        matches_prediction: matches,
        witness_t,
        evidence_max_dle: -neg_max,
        evidence_maximizers: maximizers.iter().map(|e| e.graph6.clone()).collect(),
    })
}

/// Scans every connected graph of order `n` and minimizes DLE over `class`.
pub fn min_dle_over_class(class: ClassSpec, n: usize, allow_large: bool) -> Result<ExtremalResult> {
    check_order(n, allow_large)?;
    class.validate(n)?;
    extremal_from_scan(&scan(n, allow_large)?, class, n)
}

/// Distribution of σ over the connected graphs of one order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaCensus {
    pub n: usize,
    pub graphs: usize,
    /// σ value to number of isomorphism classes.
    pub histogram: BTreeMap<usize, usize>,
    pub sigma_one: Vec<String>,
    pub sigma_n_minus_2: Vec<String>,
    pub sigma_n_minus_1: Vec<String>,
    pub transmission_regular: usize,
    /// Transmission-regular graphs where σ differs from `n - γ`, with `γ` the
    /// positive inertia of the distance matrix.
    pub transmission_regular_mismatches: Vec<String>,
}

pub fn sigma_census_from_scan(entries: &[ScanEntry], n: usize) -> SigmaCensus {
    let mut histogram = BTreeMap::new();
    let pick = |s: usize| -> Vec<String> {
        entries.iter().filter(|e| e.sigma == s).map(|e| e.graph6.clone()).collect()
    };
    for e in entries {
        *histogram.entry(e.sigma).or_insert(0) += 1;
    }
    let regular: Vec<&ScanEntry> = entries.iter().filter(|e| e.transmission_regular).collect();
    SigmaCensus {
        n,
        graphs: entries.len(),
        histogram,
        sigma_one: pick(1),
        sigma_n_minus_2: pick(n - 2),
        sigma_n_minus_1: pick(n - 1),
        transmission_regular: regular.len(),
        transmission_regular_mismatches: regular
            .iter()
            .filter(|e| e.sigma != n - e.gamma)
            .map(|e| e.graph6.clone())
            .collect(),
    }
}

pub fn sigma_census(n: usize, allow_large: bool) -> Result<SigmaCensus> {
    Ok(sigma_census_from_scan(&scan(n, allow_large)?, n))
}

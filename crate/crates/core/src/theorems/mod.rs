//! Executable checks of the spectral identities and energy bounds.
//!
//! Every check returns a [`BoundCheck`] oriented so that the claim holds iff
//! `lhs >= rhs`. Exact rationals are used whenever both sides are exact;
//! otherwise sides are compared with the absolute tolerance [`TOL_EQ`].

mod extremal;

pub use extremal::{
    check_bipartite_bound, check_connectivity_bound, check_eigenvalue_floor_corollaries, check_independence_bound,
    check_integral_family, connectivity_family_parameters, connectivity_family_size, ConnectivityEvaluation,
    evaluate_connectivity_bound, CONNECTIVITY_FAMILY_LIMIT,
};

use serde::{Serialize, Serializer};

use crate::analysis::Analysis;
use crate::closed_form::Rational;
use crate::eigen::{sym_eigenvalues, Spectrum};
use crate::error::{Error, Result};
use crate::metrics::distance_laplacian;

/// Absolute tolerance for equality on the energy scale.
pub const TOL_EQ: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    EdgeMonotonicity,
    DleViaSk,
    Brouwer,
    SandwichUpper,
    SandwichLower,
    SigmaT,
    SecondSmallest,
    WienerLower,
    BipartiteBound,
    IndependenceBound,
    ConnectivityBound,
    BipartiteFloor,
    ConnectivityFloor,
    IntegralFamily,
}

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::EdgeMonotonicity => "edge-monotonicity",
            TheoremId::DleViaSk => "dle-via-sk",
            TheoremId::Brouwer => "brouwer",
            TheoremId::SandwichUpper => "sandwich-upper",
            TheoremId::SandwichLower => "sandwich-lower",
            TheoremId::SigmaT => "sigma-t",
            TheoremId::SecondSmallest => "second-smallest",
            TheoremId::WienerLower => "wiener-lower",
            TheoremId::BipartiteBound => "bipartite-bound",
            TheoremId::IndependenceBound => "independence-bound",
            TheoremId::ConnectivityBound => "connectivity-bound",
            TheoremId::BipartiteFloor => "bipartite-floor",
            TheoremId::ConnectivityFloor => "connectivity-floor",
            TheoremId::IntegralFamily => "integral-family",
        }
    }
}

/// A real number that is either exact or a float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn int(v: i64) -> Scalar {
        Scalar::Exact(Rational::from_integer(v))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Scalar::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Scalar::Float(f) => f,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

/// `(holds, equality)` for `lhs >= rhs`.
fn compare(lhs: Scalar, rhs: Scalar) -> (bool, bool) {
    match (lhs, rhs) {
        (Scalar::Exact(l), Scalar::Exact(r)) => (l >= r, l == r),
        _ => {
            let (l, r) = (lhs.to_f64(), rhs.to_f64());
            (l >= r - TOL_EQ, (l - r).abs() <= TOL_EQ)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub theorem: TheoremId,
    /// Branch of a piecewise bound, or a short parameter description.
    pub case_label: String,
    /// Eigenvalue index or `k` for per-index checks.
    pub index: Option<usize>,
    /// Family parameter `t` for the connectivity bound.
    pub t: Option<usize>,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub exact: bool,
    pub holds: bool,
    pub equality: bool,
    /// Whether the stated equality characterization applies to the graph.
    pub equality_predicted: Option<bool>,
    /// False when the graph lies outside the stated hypotheses; the check is
    /// still evaluated.
    pub in_domain: bool,
    /// Value of the bound as printed in closed form, when it differs in
    /// construction from `rhs`.
    pub printed_rhs: Option<Scalar>,
    pub discrepancy: bool,
}

impl BoundCheck {
    pub fn new(theorem: TheoremId, case_label: impl Into<String>, lhs: Scalar, rhs: Scalar) -> BoundCheck {
        let (holds, equality) = compare(lhs, rhs);
        BoundCheck {
            theorem,
            case_label: case_label.into(),
            index: None,
            t: None,
            lhs,
            rhs,
            exact: lhs.is_exact() && rhs.is_exact(),
            holds,
            equality,
            equality_predicted: None,
            in_domain: true,
            printed_rhs: None,
            discrepancy: false,
        }
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }

    pub fn predicting(mut self, equality: bool) -> Self {
        self.equality_predicted = Some(equality);
        self
    }

    pub fn out_of_domain(mut self) -> Self {
        self.in_domain = false;
        self
    }

    /// The equality characterization disagrees with what was observed.
    pub fn equality_mismatch(&self) -> bool {
        self.equality_predicted.is_some_and(|p| p != self.equality)
    }

    /// Bound fails, or an in-domain equality prediction is wrong.
    pub fn is_violation(&self) -> bool {
        !self.holds || (self.in_domain && self.equality_mismatch())
    }
}

fn require_diameter_two(a: &Analysis) -> Result<()> {
    if a.diameter() != 2 {
        return Err(Error::WrongDiameter {
            expected: 2,
            found: a.diameter(),
        });
    }
    Ok(())
}

fn require_order(a: &Analysis, min: usize) -> Result<()> {
    if a.n() < min {
        return Err(Error::ParameterRange(format!("n >= {min} required (n={})", a.n())));
    }
    Ok(())
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// DLE as a scalar: exact when a closed form is attached.
pub fn dle_scalar(a: &Analysis) -> Scalar {
    a.dle_exact().map_or(Scalar::Float(a.dle()), Scalar::Exact)
}

fn rho_scalar(a: &Analysis, i: usize) -> Scalar {
    a.rho_exact(i).map_or(Scalar::Float(a.rho(i)), Scalar::Exact)
}

/// Per-index checks `ρᵢ(after) >= ρᵢ(before)` for spectra of a graph before
/// and after deleting an edge.
pub fn monotonicity_checks(before: &Spectrum, after: &Spectrum) -> Vec<BoundCheck> {
    before
        .values()
        .iter()
        .zip(after.values())
        .enumerate()
        .map(|(i, (&b, &a))| {
            BoundCheck::new(TheoremId::EdgeMonotonicity, String::new(), Scalar::Float(a), Scalar::Float(b))
                .with_index(i + 1)
        })
        .collect()
}

/// Deleting an edge never decreases any distance Laplacian eigenvalue.
pub fn check_edge_monotonicity(a: &Analysis, e: (usize, usize)) -> Result<Vec<BoundCheck>> {
    let h = a.graph.delete_edge(e)?;
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let after = sym_eigenvalues(&distance_laplacian(&h)?)?;
    Ok(monotonicity_checks(&a.dl, &after))
}

/// For diameter two: `DLE = 2(σ(2m/n + 2) - 2m + S_{n-σ-1})`.
pub fn check_thm_dle_via_sk(a: &Analysis) -> Result<BoundCheck> {
    require_diameter_two(a)?;
    require_order(a, 3)?;
    let (n, m, sigma) = (a.n(), a.m() as f64, a.sigma());
    let s = a.lap.partial_sum(n - sigma - 1);
    let rhs = 2.0 * (sigma as f64 * (2.0 * m / n as f64 + 2.0) - 2.0 * m + s);
    Ok(
        BoundCheck::new(TheoremId::DleViaSk, format!("sigma={sigma}"), Scalar::Float(a.dle()), Scalar::Float(rhs))
            .predicting(true),
    )
}

/// `S_k <= m + C(k+1, 2)`.
pub fn check_brouwer(a: &Analysis, k: usize) -> Result<BoundCheck> {
    if k < 1 || k > a.n() {
        return Err(Error::ParameterRange(format!("1 <= k <= n required (k={k}, n={})", a.n())));
    }
    let lhs = Scalar::int((a.m() + k * (k + 1) / 2) as i64);
    Ok(BoundCheck::new(TheoremId::Brouwer, format!("k={k}"), lhs, Scalar::Float(a.lap.partial_sum(k))).with_index(k))
}

/// `LE - 2(2m/n - 2(n-1) + 2t) <= DLE <= LE + 4(σ - m/n)` for diameter two.
pub fn check_sandwich(a: &Analysis) -> Result<[BoundCheck; 2]> {
    require_diameter_two(a)?;
    require_order(a, 3)?;
    let (n, m) = (a.n() as f64, a.m() as f64);
    let (sigma, t) = (a.sigma() as f64, a.t_param() as f64);
    let (dle, le) = (a.dle(), a.le());
    let upper = BoundCheck::new(
        TheoremId::SandwichUpper,
        format!("sigma={sigma}"),
        Scalar::Float(le + 4.0 * (sigma - m / n)),
        Scalar::Float(dle),
    );
    let lower = BoundCheck::new(
        TheoremId::SandwichLower,
        format!("t={t}"),
        Scalar::Float(dle),
        Scalar::Float(le - 2.0 * (2.0 * m / n - 2.0 * (n - 1.0) + 2.0 * t)),
    );
    Ok([upper, lower])
}

/// `σ >= n - t - 1` for diameter two.
pub fn check_sigma_t_relation(a: &Analysis) -> Result<BoundCheck> {
    require_diameter_two(a)?;
    let (n, sigma, t) = (a.n() as i64, a.sigma() as i64, a.t_param() as i64);
    Ok(BoundCheck::new(
        TheoremId::SigmaT,
        format!("sigma={sigma}, t={t}"),
        Scalar::int(sigma),
        Scalar::int(n - t - 1),
    ))
}

/// `ρ_{n-1} <= n·Tr_min/(n-1)`, with equality iff `Tr_min = n - 1`.
pub fn check_second_smallest_bound(a: &Analysis) -> Result<BoundCheck> {
    require_order(a, 3)?;
    let n = a.n() as i64;
    let tr_min = a.min_transmission() as i64;
    let lhs = Scalar::Exact(ratio(n * tr_min, n - 1));
    Ok(
        BoundCheck::new(TheoremId::SecondSmallest, format!("tr_min={tr_min}"), lhs, rho_scalar(a, a.n() - 1))
            .predicting(tr_min == n - 1),
    )
}

/// `DLE >= 8W/n - 2n·Tr_min/(n-1)`, equality predicted iff `σ = n - 2` and
/// `Tr_min = n - 1`.
pub fn check_wiener_lower_bound(a: &Analysis) -> Result<BoundCheck> {
    require_order(a, 3)?;
    let n = a.n() as i64;
    let (w, tr_min, sigma) = (a.wiener() as i64, a.min_transmission() as i64, a.sigma() as i64);
    let rhs = ratio(8 * w, n) - ratio(2 * n * tr_min, n - 1);
    Ok(BoundCheck::new(
        TheoremId::WienerLower,
        format!("sigma={sigma}, tr_min={tr_min}"),
        dle_scalar(a),
        Scalar::Exact(rhs),
    )
    .predicting(sigma == n - 2 && tr_min == n - 1))
}

/// Condition under which the Wiener lower bound is tight: `Tr_min = n - 1`
/// and `ρ_{n-2} >= 2W/n >= ρ_{n-1}`, i.e. the maximum over `j` of
/// `U_j - 2jW/n` is attained at `j = n - 2`. This also admits `σ = n - 1`
/// when `ρ_{n-1} = 2W/n`.
pub fn wiener_equality_condition(a: &Analysis) -> bool {
    let n = a.n();
    if n < 3 || a.min_transmission() != (n - 1) as u64 {
        return false;
    }
    let avg = a.distances.twice_wiener() as f64 / n as f64;
    let tol = crate::energy::tol_cmp(avg);
    a.rho(n - 2) >= avg - tol && a.rho(n - 1) <= avg + tol
}

/// Every applicable check for one graph. Per-edge monotonicity runs on each
/// edge whose deletion keeps the graph connected.
pub fn check_all(a: &Analysis) -> Result<Vec<BoundCheck>> {
    let mut out = Vec::new();
    let n = a.n();
    if n >= 3 {
        out.push(check_wiener_lower_bound(a)?);
        out.push(check_second_smallest_bound(a)?);
    }
    for k in 1..=n {
        out.push(check_brouwer(a, k)?);
    }
    if a.diameter() == 2 {
        out.push(check_thm_dle_via_sk(a)?);
        out.extend(check_sandwich(a)?);
        out.push(check_sigma_t_relation(a)?);
    }
    if n >= 3 {
        if a.graph.bipartition().is_some() {
            out.push(check_bipartite_bound(a)?);
        }
        out.push(check_independence_bound(a)?);
    }
    if n >= 2 {
        out.push(check_connectivity_bound(a)?);
        out.extend(check_eigenvalue_floor_corollaries(a)?);
    }
    for e in a.graph.edges() {
        match check_edge_monotonicity(a, e) {
            Ok(checks) => out.extend(checks),
            Err(Error::Disconnected) => {}
            Err(err) => return Err(err),
        }
    }
    Ok(out)
}

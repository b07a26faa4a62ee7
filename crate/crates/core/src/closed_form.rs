//! Closed-form distance Laplacian spectra for the named families, the join
//! `G₀ ▽ (G₁ ∪ G₂)`, and the diameter-two transform from Laplacian spectra.
//!
//! Family spectra are exact: values are rationals (in practice integers) with
//! multiplicities. Every formula here is cross-checked against the Jacobi
//! solver in the tests.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::eigen::{Spectrum, SpectrumSource};
use crate::error::{Error, Result};
use crate::graph::{FamilyKind, FamilySpec};

pub type Rational = Ratio<i64>;

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

/// Multiset of exact eigenvalues, stored as `(value, multiplicity)` pairs in
/// strictly decreasing value order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyticSpectrum {
    pairs: Vec<(Rational, usize)>,
}

impl AnalyticSpectrum {
    /// Merges equal values and drops empty multiplicities.
    pub fn new(pairs: impl IntoIterator<Item = (Rational, usize)>) -> Self {
        let mut all: Vec<(Rational, usize)> = pairs.into_iter().filter(|&(_, k)| k > 0).collect();
        all.sort_by_key(|p| std::cmp::Reverse(p.0));
        let mut merged: Vec<(Rational, usize)> = Vec::with_capacity(all.len());
        for (v, k) in all {
            match merged.last_mut() {
                Some((last, mult)) if *last == v => *mult += k,
                _ => merged.push((v, k)),
            }
        }
        AnalyticSpectrum { pairs: merged }
    }

    pub fn from_values(values: impl IntoIterator<Item = Rational>) -> Self {
        AnalyticSpectrum::new(values.into_iter().map(|v| (v, 1)))
    }

    pub fn pairs(&self) -> &[(Rational, usize)] {
        &self.pairs
    }

    /// Total multiplicity.
    pub fn n(&self) -> usize {
        self.pairs.iter().map(|&(_, k)| k).sum()
    }

    /// Values in non-increasing order, repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Rational> {
        self.pairs
            .iter()
            .flat_map(|&(v, k)| std::iter::repeat_n(v, k))
            .collect()
    }

    pub fn sum(&self) -> Rational {
        self.pairs.iter().map(|&(v, k)| v * int(k)).sum()
    }

    /// Exact sum of the `k` largest values.
    pub fn partial_sum(&self, k: usize) -> Rational {
        self.expanded().into_iter().take(k).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.pairs.iter().all(|(v, _)| v.is_integer())
    }

    pub fn to_spectrum(&self) -> Spectrum {
        Spectrum::new(
            self.expanded().iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
            SpectrumSource::Analytic,
        )
    }

    /// Removes one copy of zero, the eigenvalue of the all-ones vector.
    fn without_one_zero(&self) -> Result<Vec<Rational>> {
        let mut values = self.expanded();
        let pos = values
            .iter()
            .rposition(|v| v.is_zero())
            .ok_or_else(|| Error::Malformed("distance Laplacian spectrum lacks a zero eigenvalue".into()))?;
        values.remove(pos);
        Ok(values)
    }
}

/// `{n^[n-1], 0}`.
pub fn dl_spectrum_complete(n: usize) -> AnalyticSpectrum {
    AnalyticSpectrum::new([(int(n), n.saturating_sub(1)), (Rational::zero(), 1)])
}

/// `{(2n-a)^[b-1], (2n-b)^[a-1], n, 0}` with `n = a + b`.
pub fn dl_spectrum_complete_bipartite(a: usize, b: usize) -> Result<AnalyticSpectrum> {
    if a < 1 || b < 1 {
        return Err(Error::ParameterRange("complete_bipartite requires a, b >= 1".into()));
    }
    let n = a + b;
    Ok(AnalyticSpectrum::new([
        (int(2 * n - a), b - 1),
        (int(2 * n - b), a - 1),
        (int(n), 1),
        (Rational::zero(), 1),
    ]))
}

/// `2W(K_{a,b}) = 2n² - 2n - 2ab`.
pub fn twice_wiener_complete_bipartite(a: usize, b: usize) -> u64 {
    let (a, b) = (a as u64, b as u64);
    let n = a + b;
    2 * n * n - 2 * n - 2 * a * b
}

/// `{(2n-t)^[n-t-1], n^[t], 0}` for the complete split graph `CS_{t,n-t}`.
pub fn dl_spectrum_complete_split(t: usize, n: usize) -> Result<AnalyticSpectrum> {
    if t < 1 || t + 1 > n {
        return Err(Error::ParameterRange(format!("complete_split requires 1 <= t <= n-1 (t={t}, n={n})")));
    }
    Ok(AnalyticSpectrum::new([
        (int(2 * n - t), n - t - 1),
        (int(n), t),
        (Rational::zero(), 1),
    ]))
}

/// `2W(CS_{t,n-t}) = 2n(n-t-1) + t(t+1)`.
pub fn twice_wiener_complete_split(t: usize, n: usize) -> u64 {
    let (t, n) = (t as u64, n as u64);
    2 * n * (n - t - 1) + t * (t + 1)
}

/// `{2n-k, (2n-t-k)^[t-1], (n+t)^[n-t-k-1], n^[k], 0}` for
/// `K_k ▽ (K_t ∪ K_{n-k-t})`.
pub fn dl_spectrum_connectivity_family(n: usize, k: usize, t: usize) -> Result<AnalyticSpectrum> {
    FamilySpec::connectivity_family(n, k, t).validate()?;
    Ok(AnalyticSpectrum::new([
        (int(2 * n - k), 1),
        (int(2 * n - t - k), t - 1),
        (int(n + t), n - t - k - 1),
        (int(n), k),
        (Rational::zero(), 1),
    ]))
}

/// `2W(K_k ▽ (K_t ∪ K_{n-k-t})) = n(n-1) + 2t(n-k-t)`.
pub fn twice_wiener_connectivity_family(n: usize, k: usize, t: usize) -> u64 {
    let (n, k, t) = (n as u64, k as u64, t as u64);
    n * (n - 1) + 2 * t * (n - k - t)
}

/// The two non-zero eigenvalues of the 3×3 quotient matrix of the join,
/// i.e. the roots of `x² - (3n - n₀)x + n(2n - n₀)`.
pub fn join_quotient_roots(n: usize, n0: usize) -> [Rational; 2] {
    [int(2 * n - n0), int(n)]
}

fn check_order(len: usize, order: usize) -> Result<()> {
    if len != order {
        Err(Error::OrderMismatch { len, order })
    } else {
        Ok(())
    }
}

/// Distance Laplacian spectrum of `G₀ ▽ (G₁ ∪ G₂)` from the distance
/// Laplacian spectra of the parts.
///
/// Inside the join every pair within a part is at distance 1 or 2, so this
/// form is exact only when each part has diameter at most 2 (which holds for
/// every family with a closed form here). For arbitrary parts use
/// [`dl_spectrum_join_from_laplacian`].
pub fn dl_spectrum_join(
    spec0: &AnalyticSpectrum,
    spec1: &AnalyticSpectrum,
    spec2: &AnalyticSpectrum,
    n0: usize,
    n1: usize,
    n2: usize,
) -> Result<AnalyticSpectrum> {
    check_order(spec0.n(), n0)?;
    check_order(spec1.n(), n1)?;
    check_order(spec2.n(), n2)?;
    let n = n0 + n1 + n2;
    let mut values = Vec::with_capacity(n);
    values.extend(spec0.without_one_zero()?.into_iter().map(|l| l + int(n1 + n2)));
    values.extend(spec1.without_one_zero()?.into_iter().map(|m| m + int(n0 + 2 * n2)));
    values.extend(spec2.without_one_zero()?.into_iter().map(|z| z + int(n0 + 2 * n1)));
    values.extend(join_quotient_roots(n, n0));
    values.push(Rational::zero());
    Ok(AnalyticSpectrum::from_values(values))
}

fn drop_smallest(s: &Spectrum) -> Vec<f64> {
    let mut v = s.values().to_vec();
    v.pop();
    v
}

/// Floating-point counterpart of [`dl_spectrum_join`] for numeric part
/// spectra (same diameter-two restriction on the parts).
pub fn dl_spectrum_join_numeric(
    spec0: &Spectrum,
    spec1: &Spectrum,
    spec2: &Spectrum,
    n0: usize,
    n1: usize,
    n2: usize,
) -> Result<Spectrum> {
    check_order(spec0.len(), n0)?;
    check_order(spec1.len(), n1)?;
    check_order(spec2.len(), n2)?;
    let n = n0 + n1 + n2;
    let (nf, n0f, n1f, n2f) = (n as f64, n0 as f64, n1 as f64, n2 as f64);
    let mut values = Vec::with_capacity(n);
    values.extend(drop_smallest(spec0).into_iter().map(|l| l + n1f + n2f));
    values.extend(drop_smallest(spec1).into_iter().map(|m| m + n0f + 2.0 * n2f));
    values.extend(drop_smallest(spec2).into_iter().map(|z| z + n0f + 2.0 * n1f));
    values.extend([2.0 * nf - n0f, nf, 0.0]);
    Ok(Spectrum::new(values, SpectrumSource::Analytic))
}

/// Distance Laplacian spectrum of `G₀ ▽ (G₁ ∪ G₂)` from the Laplacian
/// spectra of arbitrary parts: `n + n₀ - μ` for `G₀`, `2n - n₀ - μ` for
/// `G₁` and `G₂` (one zero dropped from each), plus `2n - n₀`, `n`, `0`.
pub fn dl_spectrum_join_from_laplacian(
    lap0: &Spectrum,
    lap1: &Spectrum,
    lap2: &Spectrum,
) -> Spectrum {
    let (n0, n1, n2) = (lap0.len() as f64, lap1.len() as f64, lap2.len() as f64);
    let n = n0 + n1 + n2;
    let mut values = Vec::new();
    values.extend(drop_smallest(lap0).into_iter().map(|mu| n + n0 - mu));
    values.extend(drop_smallest(lap1).into_iter().map(|mu| 2.0 * n - n0 - mu));
    values.extend(drop_smallest(lap2).into_iter().map(|mu| 2.0 * n - n0 - mu));
    values.extend([2.0 * n - n0, n, 0.0]);
    Spectrum::new(values, SpectrumSource::Analytic)
}

/// `ρᵢ = 2n - μ_{n-i}` for `i = 1..n-1`, plus `ρₙ = 0`, for a connected graph
/// of diameter exactly two. The caller certifies the diameter.
pub fn dl_from_laplacian_diam2(laplacian: &Spectrum, n: usize) -> Spectrum {
    let mu = laplacian.values();
    let mut values: Vec<f64> = (1..n).map(|i| 2.0 * n as f64 - mu[n - 1 - i]).collect();
    values.push(0.0);
    Spectrum::new(values, SpectrumSource::Analytic)
}

/// Exact version of [`dl_from_laplacian_diam2`].
pub fn dl_from_laplacian_diam2_exact(laplacian: &AnalyticSpectrum) -> AnalyticSpectrum {
    let n = laplacian.n();
    let mu = laplacian.expanded();
    let mut values: Vec<Rational> = (1..n).map(|i| int(2 * n) - mu[n - 1 - i]).collect();
    values.push(Rational::zero());
    AnalyticSpectrum::from_values(values)
}

/// Closed-form distance Laplacian spectrum of a family, when one is known.
/// Joins qualify when the union has exactly two parts and every part has a
/// closed form itself.
pub fn analytic_dl_spectrum(spec: &FamilySpec) -> Option<AnalyticSpectrum> {
    spec.validate().ok()?;
    let n = spec.n;
    match &spec.kind {
        FamilyKind::Complete => Some(dl_spectrum_complete(n)),
        FamilyKind::Star => dl_spectrum_complete_bipartite(1, n - 1).ok(),
        FamilyKind::CompleteBipartite { a, b } => dl_spectrum_complete_bipartite(*a, *b).ok(),
        FamilyKind::CompleteSplit { t } => dl_spectrum_complete_split(*t, n).ok(),
        FamilyKind::ConnectivityFamily { k, t } => dl_spectrum_connectivity_family(n, *k, *t).ok(),
        FamilyKind::Join { joined, union } if union.len() == 2 => {
            let s0 = analytic_dl_spectrum(joined)?;
            let s1 = analytic_dl_spectrum(&union[0])?;
            let s2 = analytic_dl_spectrum(&union[1])?;
            dl_spectrum_join(&s0, &s1, &s2, joined.n, union[0].n, union[1].n).ok()
        }
        _ => None,
    }
}

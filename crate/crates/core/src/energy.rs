//! Distance Laplacian, Laplacian and distance energies, and the spectral-sum
//! parameters σ, t, `U_k` and `S_k`.

use serde::{Serialize, Serializer};

use crate::closed_form::{AnalyticSpectrum, Rational};
use crate::eigen::{sym_eigenvalues, Spectrum};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{apsp, distance_laplacian_from, distance_matrix_from, laplacian, DistanceData};

/// Slack used when counting eigenvalues at or above a threshold.
pub fn tol_cmp(threshold: f64) -> f64 {
    1e-9 * threshold.abs().max(1.0)
}

fn average(twice_total: u64, n: usize) -> f64 {
    twice_total as f64 / n as f64
}

/// `Σ|ρᵢ - 2W/n|`.
pub fn dle(spectrum: &Spectrum, wiener: u64, n: usize) -> f64 {
    let avg = average(2 * wiener, n);
    spectrum.values().iter().map(|r| (r - avg).abs()).sum()
}

/// `Σ|μᵢ - 2m/n|`.
pub fn le(spectrum: &Spectrum, m: usize, n: usize) -> f64 {
    let avg = average(2 * m as u64, n);
    spectrum.values().iter().map(|mu| (mu - avg).abs()).sum()
}

/// `Σ|ρᴰᵢ|` over the distance matrix spectrum.
pub fn de(distance_spectrum: &Spectrum) -> f64 {
    distance_spectrum.values().iter().map(|r| r.abs()).sum()
}

/// Number of values at least `threshold`, up to [`tol_cmp`].
pub fn sigma_count(spectrum: &Spectrum, threshold: f64) -> usize {
    let cut = threshold - tol_cmp(threshold);
    spectrum.values().iter().take_while(|&&v| v >= cut).count()
}

/// Exact count of `ρ` with `n·ρ ≥ twice_total`.
pub fn sigma_count_exact(spectrum: &AnalyticSpectrum, twice_total: u64, n: usize) -> usize {
    let threshold = Rational::new(twice_total as i64, n as i64);
    spectrum
        .pairs()
        .iter()
        .filter(|(v, _)| *v >= threshold)
        .map(|&(_, k)| k)
        .sum()
}

fn partial(spectrum: &Spectrum, k: usize) -> Result<f64> {
    if k > spectrum.len() {
        return Err(Error::ParameterRange(format!("0 <= k <= n required (k={k}, n={})", spectrum.len())));
    }
    Ok(spectrum.partial_sum(k))
}

/// `U_k`: sum of the `k` largest distance Laplacian eigenvalues.
pub fn u_k(spectrum: &Spectrum, k: usize) -> Result<f64> {
    partial(spectrum, k)
}

/// `S_k`: sum of the `k` largest Laplacian eigenvalues.
pub fn s_k(spectrum: &Spectrum, k: usize) -> Result<f64> {
    partial(spectrum, k)
}

/// `2·max_j (U_j - 2jW/n)` over `1 ≤ j ≤ n`.
pub fn dle_via_max(spectrum: &Spectrum, wiener: u64, n: usize) -> f64 {
    let avg = average(2 * wiener, n);
    let mut running = 0.0;
    let mut best = f64::NEG_INFINITY;
    for (j, v) in spectrum.values().iter().enumerate() {
        running += v;
        best = best.max(running - (j + 1) as f64 * avg);
    }
    2.0 * best
}

/// Trace norm of `D^L - (2W/n)I`, i.e. the sum of absolute eigenvalues of
/// the shifted matrix.
pub fn trace_norm_deviation(g: &Graph) -> Result<f64> {
    let d = apsp(g)?;
    let shifted = distance_laplacian_from(&d).shifted(-average(d.twice_wiener(), g.n()));
    Ok(sym_eigenvalues(&shifted)?.values().iter().map(|v| v.abs()).sum())
}

/// Exact `Σ|ρᵢ - 2W/n|` for an analytic spectrum.
pub fn dle_exact(spectrum: &AnalyticSpectrum, wiener: u64, n: usize) -> Rational {
    let avg = Rational::new(2 * wiener as i64, n as i64);
    spectrum
        .pairs()
        .iter()
        .map(|&(v, k)| {
            let dev = v - avg;
            let dev = if dev < Rational::from_integer(0) { -dev } else { dev };
            dev * Rational::from_integer(k as i64)
        })
        .sum()
}

pub(crate) fn serialize_rational<S: Serializer>(value: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(r) if r.is_integer() => s.serialize_str(&r.to_integer().to_string()),
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
        None => s.serialize_none(),
    }
}

/// Energies and spectral parameters of one connected graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub n: usize,
    pub m: usize,
    pub wiener: u64,
    pub dle: f64,
    pub le: f64,
    pub de: f64,
    /// Exact DLE, present when an analytic spectrum was available.
    #[serde(serialize_with = "serialize_rational")]
    pub dle_exact: Option<Rational>,
    pub exact: bool,
    pub sigma: usize,
    pub t_param: usize,
    pub avg_transmission: f64,
    pub avg_degree: f64,
    pub u_k: Vec<f64>,
    pub s_k: Vec<f64>,
}

impl EnergyReport {
    pub fn compute(g: &Graph, analytic: Option<&AnalyticSpectrum>) -> Result<EnergyReport> {
        let d = apsp(g)?;
        let dl = sym_eigenvalues(&distance_laplacian_from(&d))?;
        let lap = sym_eigenvalues(&laplacian(g))?;
        let dist = sym_eigenvalues(&distance_matrix_from(&d))?;
        Ok(EnergyReport::from_spectra(g, &d, &dl, &lap, &dist, analytic))
    }

    pub fn from_spectra(
        g: &Graph,
        d: &DistanceData,
        dl: &Spectrum,
        lap: &Spectrum,
        dist: &Spectrum,
        analytic: Option<&AnalyticSpectrum>,
    ) -> EnergyReport {
        let (n, m, wiener) = (g.n(), g.m(), d.wiener);
        let analytic = analytic.filter(|a| a.is_integral() && a.n() == n);
        let sigma = match analytic {
            Some(a) => sigma_count_exact(a, d.twice_wiener(), n),
            None => sigma_count(dl, average(d.twice_wiener(), n)),
        };
        let dle_exact = analytic.map(|a| dle_exact(a, wiener, n));
        let prefix = |s: &Spectrum| (0..=n).map(|k| s.partial_sum(k)).collect::<Vec<f64>>();
        EnergyReport {
            n,
            m,
            wiener,
            dle: dle(dl, wiener, n),
            le: le(lap, m, n),
            de: de(dist),
            exact: dle_exact.is_some(),
            dle_exact,
            sigma,
            t_param: sigma_count(lap, average(2 * m as u64, n)),
            avg_transmission: average(d.twice_wiener(), n),
            avg_degree: average(2 * m as u64, n),
            u_k: prefix(dl),
            s_k: prefix(lap),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{dl_spectrum_complete, dl_spectrum_complete_bipartite, dl_spectrum_complete_split};
    use crate::eigen::SpectrumSource;
    use crate::graph::FamilySpec;
    use crate::metrics::distance_laplacian;
    use proptest::prelude::*;

    fn spec(values: &[f64]) -> Spectrum {
        Spectrum::new(values.to_vec(), SpectrumSource::Analytic)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9
    }

    #[test]
    fn complete_bipartite_two_three() {
        let s = spec(&[8.0, 8.0, 7.0, 5.0, 0.0]);
        // 2W = 28, 2W/n = 5.6: |2.4|+|2.4|+|1.4|+|0.6|+|5.6| = 12.4.
        assert!(close(dle(&s, 14, 5), 12.4));
        assert!(close(dle_via_max(&s, 14, 5), 12.4));
        assert_eq!(sigma_count(&s, 5.6), 3);
        assert!(close(u_k(&s, 3).unwrap(), 23.0));
        assert_eq!(u_k(&s, 0).unwrap(), 0.0);
        assert!(close(u_k(&s, 5).unwrap(), 28.0));
        assert!(u_k(&s, 6).is_err());
        let exact = dle_exact(&dl_spectrum_complete_bipartite(2, 3).unwrap(), 14, 5);
        assert_eq!(exact, Rational::new(62, 5));
        let g = FamilySpec::complete_bipartite(2, 3).build().unwrap();
        assert!(close(trace_norm_deviation(&g).unwrap(), 12.4));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_count(&spec(&[6.0, 6.0, 4.0, 0.0]), 4.0), 3);
        assert_eq!(sigma_count(&spec(&[8.0, 8.0, 5.0, 5.0, 0.0]), 5.2), 2);
        // A value a hair under the threshold still counts.
        assert_eq!(sigma_count(&spec(&[4.0 - 1e-12, 1.0]), 4.0), 1);
        assert_eq!(sigma_count(&spec(&[4.0 - 1e-6, 1.0]), 4.0), 0);
        let cs = dl_spectrum_complete_split(2, 5).unwrap();
        assert_eq!(sigma_count_exact(&cs, 26, 5), 2);
        let k4 = dl_spectrum_complete(4);
        assert_eq!(sigma_count_exact(&k4, 12, 4), 3);
    }

    #[test]
    fn star_and_complete() {
        let star = FamilySpec::star(4).build().unwrap();
        let r = EnergyReport::compute(&star, None).unwrap();
        assert!(close(r.dle, 10.0));
        assert!(close(r.le, 5.0));
        assert_eq!(r.sigma, 2);
        assert_eq!(r.t_param, 1);
        assert!(!r.exact);
        // Closed forms for K_{1,n-1}, n >= 4: 2(n-2)(3n-2)/n and 2(n²-2n+2)/n.
        for n in 4..12 {
            let g = FamilySpec::star(n).build().unwrap();
            let r = EnergyReport::compute(&g, None).unwrap();
            let nf = n as f64;
            assert!((r.dle - 2.0 * (nf - 2.0) * (3.0 * nf - 2.0) / nf).abs() < 1e-9);
            assert!((r.le - 2.0 * (nf * nf - 2.0 * nf + 2.0) / nf).abs() < 1e-9);
        }
        for n in 2..10 {
            let a = dl_spectrum_complete(n);
            let r = EnergyReport::compute(&Graph::complete(n), Some(&a)).unwrap();
            assert_eq!(r.dle_exact, Some(Rational::from_integer(2 * (n as i64 - 1))));
            assert!(close(r.dle, 2.0 * (n as f64 - 1.0)));
            assert_eq!(r.sigma, n - 1);
            // Distance matrix of K_n is J - I: eigenvalues n-1 and -1.
            assert!(close(r.de, 2.0 * (n as f64 - 1.0)));
        }
    }

    #[test]
    fn path_three() {
        let g = FamilySpec::path(3).build().unwrap();
        assert!(close(trace_norm_deviation(&g).unwrap(), 16.0 / 3.0));
        assert!(close(dle_via_max(&spec(&[2.0, 0.0]), 1, 2), 2.0));
        assert!(close(dle_via_max(&spec(&[7.0, 5.0, 4.0, 0.0]), 8, 4), 8.0));
    }

    #[test]
    fn report_serializes_exact_value() {
        let a = dl_spectrum_complete_bipartite(2, 3).unwrap();
        let g = FamilySpec::complete_bipartite(2, 3).build().unwrap();
        let r = EnergyReport::compute(&g, Some(&a)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["dle_exact"], "62/5");
        assert_eq!(v["sigma"], 3);
        assert_eq!(r.u_k.len(), 6);
    }

    proptest! {
        #[test]
        fn three_energy_forms_agree(
            n in 2usize..18,
            parents in prop::collection::vec(any::<prop::sample::Index>(), 17),
            extra in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..30),
        ) {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1].index(v), v)).collect();
            for (a, b) in extra {
                let (u, v) = (a.index(n), b.index(n));
                if u != v && !edges.contains(&(u.min(v), u.max(v))) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let d = apsp(&g).unwrap();
            let s = sym_eigenvalues(&distance_laplacian(&g).unwrap()).unwrap();
            let a = dle(&s, d.wiener, n);
            prop_assert!((a - dle_via_max(&s, d.wiener, n)).abs() <= 1e-9 * a.max(1.0));
            prop_assert!((a - trace_norm_deviation(&g).unwrap()).abs() <= 1e-9 * a.max(1.0));
            let sigma = sigma_count(&s, d.twice_wiener() as f64 / n as f64);
            prop_assert!(sigma >= 1 && sigma < n);
            let via_sigma = 2.0 * (u_k(&s, sigma).unwrap() - sigma as f64 * d.twice_wiener() as f64 / n as f64);
            prop_assert!((a - via_sigma).abs() <= 1e-9 * a.max(1.0));
        }
    }
}

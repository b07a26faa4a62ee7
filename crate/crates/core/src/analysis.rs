//! Everything the bound checks need about one connected graph, computed once.

use crate::closed_form::{analytic_dl_spectrum, AnalyticSpectrum, Rational};
use crate::eigen::{sym_eigenvalues, Spectrum};
use crate::energy::{self, sigma_count, sigma_count_exact};
use crate::error::Result;
use crate::graph::{FamilySpec, Graph};
use crate::metrics::{apsp, distance_laplacian_from, laplacian, DistanceData};

#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: Graph,
    pub distances: DistanceData,
    /// Numeric distance Laplacian spectrum.
    pub dl: Spectrum,
    /// Numeric Laplacian spectrum.
    pub lap: Spectrum,
    /// Exact distance Laplacian spectrum, when the graph came from a family
    /// with a closed form.
    pub analytic: Option<AnalyticSpectrum>,
}

impl Analysis {
    pub fn new(graph: Graph) -> Result<Analysis> {
        let distances = apsp(&graph)?;
        let dl = sym_eigenvalues(&distance_laplacian_from(&distances))?;
        Analysis::with_dl_spectrum(graph, distances, dl)
    }

    /// Reuses an already computed distance Laplacian spectrum.
    pub fn with_dl_spectrum(graph: Graph, distances: DistanceData, dl: Spectrum) -> Result<Analysis> {
        let lap = sym_eigenvalues(&laplacian(&graph))?;
        Ok(Analysis {
            graph,
            distances,
            dl,
            lap,
            analytic: None,
        })
    }

    pub fn from_family(spec: &FamilySpec) -> Result<Analysis> {
        let mut a = Analysis::new(spec.build()?)?;
        a.analytic = analytic_dl_spectrum(spec);
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn wiener(&self) -> u64 {
        self.distances.wiener
    }

    pub fn diameter(&self) -> u32 {
        self.distances.diameter
    }

    pub fn min_transmission(&self) -> u64 {
        self.distances.min_transmission()
    }

    /// `2W/n` exactly.
    pub fn avg_transmission(&self) -> Rational {
        Rational::new(self.distances.twice_wiener() as i64, self.n() as i64)
    }

    /// `2m/n` exactly.
    pub fn avg_degree(&self) -> Rational {
        Rational::new(2 * self.m() as i64, self.n() as i64)
    }

    fn integral_analytic(&self) -> Option<&AnalyticSpectrum> {
        self.analytic.as_ref().filter(|a| a.is_integral() && a.n() == self.n())
    }

    /// Number of distance Laplacian eigenvalues at least `2W/n`, compared
    /// exactly when an integral closed form is attached.
    pub fn sigma(&self) -> usize {
        match self.integral_analytic() {
            Some(a) => sigma_count_exact(a, self.distances.twice_wiener(), self.n()),
            None => sigma_count(&self.dl, self.distances.twice_wiener() as f64 / self.n() as f64),
        }
    }

    /// Number of Laplacian eigenvalues at least `2m/n`.
    pub fn t_param(&self) -> usize {
        sigma_count(&self.lap, 2.0 * self.m() as f64 / self.n() as f64)
    }

    pub fn dle(&self) -> f64 {
        energy::dle(&self.dl, self.wiener(), self.n())
    }

    pub fn dle_exact(&self) -> Option<Rational> {
        self.integral_analytic()
            .map(|a| energy::dle_exact(a, self.wiener(), self.n()))
    }

    pub fn le(&self) -> f64 {
        energy::le(&self.lap, self.m(), self.n())
    }

    /// `ρ_i` (1-based), exact when a closed form is attached.
    pub fn rho(&self, i: usize) -> f64 {
        self.dl.values()[i - 1]
    }

    pub fn rho_exact(&self, i: usize) -> Option<Rational> {
        self.integral_analytic().map(|a| a.expanded()[i - 1])
    }
}

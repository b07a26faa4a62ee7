//! Dense symmetric eigensolver (cyclic Jacobi) and spectrum utilities.
//!
//! Every spectrum is kept in non-increasing order so that index `i` (0-based)
//! holds the `(i+1)`-th largest eigenvalue.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::SymMatrix;

/// Convergence target: off-diagonal Frobenius norm relative to `‖M‖_F`.
pub const JACOBI_RELATIVE_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Default threshold for classifying an eigenvalue of an order-`n` distance
/// Laplacian as zero. Entries grow with `n`, so the threshold does too.
pub fn tol_zero(n: usize) -> f64 {
    1e-7 * n.max(1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    Numeric,
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    pub source: SpectrumSource,
}

impl Spectrum {
    /// Sorts `values` into non-increasing order.
    pub fn new(mut values: Vec<f64>, source: SpectrumSource) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, source }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Sum of the `k` largest values.
    pub fn partial_sum(&self, k: usize) -> f64 {
        self.values[..k.min(self.values.len())].iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eigenvalues(m: &SymMatrix) -> Result<Spectrum> {
    let n = m.n();
    let norm = m.frobenius_norm();
    let mut a = m.clone().into_data();
    if n <= 1 || norm == 0.0 {
        let diag = (0..n).map(|i| a[i * n + i]).collect();
        return Ok(Spectrum::new(diag, SpectrumSource::Numeric));
    }
    let tol = JACOBI_RELATIVE_TOL * norm;
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut residual = off_norm(&a);
    let mut sweeps = 0;
    while residual > tol {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NonConvergence { residual });
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        sweeps += 1;
        residual = off_norm(&a);
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    Ok(Spectrum::new(diag, SpectrumSource::Numeric))
}

/// Number of eigenvalues strictly above `+tol`.
pub fn positive_inertia(s: &Spectrum, tol: f64) -> usize {
    s.values.iter().filter(|&&v| v > tol).count()
}

/// Elementwise comparison after sorting.
pub fn spectra_equal(a: &Spectrum, b: &Spectrum, tol: f64) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.values.iter().zip(&b.values).all(|(x, y)| (x - y).abs() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;
    use crate::metrics::{distance_laplacian, distance_matrix, SymMatrix};
    use proptest::prelude::*;

    fn assert_close(s: &Spectrum, want: &[f64], tol: f64) {
        assert_eq!(s.len(), want.len());
        for (x, y) in s.values().iter().zip(want) {
            assert!((x - y).abs() <= tol, "{:?} vs {:?}", s.values(), want);
        }
    }

    /// Real roots of a monic cubic by bisection on sign changes, used as an
    /// oracle independent of the rotation code.
    fn cubic_roots(c2: f64, c1: f64, c0: f64, lo: f64, hi: f64) -> Vec<f64> {
        let f = |x: f64| ((x + c2) * x + c1) * x + c0;
        let steps = 20_000;
        let mut roots = Vec::new();
        let h = (hi - lo) / steps as f64;
        for i in 0..steps {
            let (mut a, mut b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
            if f(a) == 0.0 {
                roots.push(a);
                continue;
            }
            if f(a) * f(b) < 0.0 {
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if f(a) * f(mid) <= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                roots.push(0.5 * (a + b));
            }
        }
        roots.sort_by(|a, b| b.total_cmp(a));
        roots
    }

    #[test]
    fn path_three_distance_laplacian() {
        // det(xI - D^L(P_3)) = x^3 - 8x^2 + 15x, from the 3x3 by cofactors.
        let oracle = cubic_roots(-8.0, 15.0, 0.0, -1.0, 10.0);
        assert_close(&Spectrum::new(oracle.clone(), SpectrumSource::Numeric), &[5.0, 3.0, 0.0], 1e-9);
        let g = FamilySpec::path(3).build().unwrap();
        let s = sym_eigenvalues(&distance_laplacian(&g).unwrap()).unwrap();
        assert_close(&s, &oracle, 1e-9);
    }

    #[test]
    fn small_known_spectra() {
        let s = sym_eigenvalues(&distance_laplacian(&crate::graph::Graph::complete(2)).unwrap()).unwrap();
        assert_close(&s, &[2.0, 0.0], 1e-12);

        // D(C_4) is circulant with first row (0,1,2,1): eigenvalues
        // sum_k c_k w^{jk} for w = i: j=0 -> 4, j=1 -> -2, j=2 -> 0, j=3 -> -2.
        let c = [0.0, 1.0, 2.0, 1.0];
        let circulant: Vec<f64> = (0..4)
            .map(|j| (0..4).map(|k| c[k] * (std::f64::consts::FRAC_PI_2 * (j * k) as f64).cos()).sum())
            .collect();
        let oracle = Spectrum::new(circulant, SpectrumSource::Analytic);
        assert_close(&oracle, &[4.0, 0.0, -2.0, -2.0], 1e-12);
        let d = distance_matrix(&FamilySpec::cycle(4).build().unwrap()).unwrap();
        let s = sym_eigenvalues(&d).unwrap();
        assert_close(&s, oracle.values(), 1e-10);
        assert_eq!(positive_inertia(&s, tol_zero(4)), 1);
    }

    #[test]
    fn inertia_and_equality() {
        let p3 = Spectrum::new(vec![5.0, 3.0, 0.0], SpectrumSource::Analytic);
        assert_eq!(positive_inertia(&p3, tol_zero(3)), 2);
        let zeros = Spectrum::new(vec![0.0; 4], SpectrumSource::Analytic);
        assert_eq!(positive_inertia(&zeros, tol_zero(4)), 0);

        let off = Spectrum::new(vec![5.0, 3.0, 0.1], SpectrumSource::Analytic);
        assert!(!spectra_equal(&p3, &off, 1e-8).unwrap());
        assert!(spectra_equal(&p3, &p3, 1e-8).unwrap());
        let empty = Spectrum::new(vec![], SpectrumSource::Numeric);
        assert!(spectra_equal(&empty, &empty, 1e-8).unwrap());
        assert_eq!(spectra_equal(&p3, &empty, 1e-8), Err(Error::LengthMismatch(3, 0)));
    }

    #[test]
    fn trivial_matrices() {
        let s = sym_eigenvalues(&SymMatrix::zeros(3)).unwrap();
        assert_eq!(s.values(), &[0.0, 0.0, 0.0]);
        let mut one = SymMatrix::zeros(1);
        one.set_sym(0, 0, -2.5);
        assert_eq!(sym_eigenvalues(&one).unwrap().values(), &[-2.5]);
    }

    #[test]
    fn larger_matrix_converges() {
        let g = FamilySpec::path(120).build().unwrap();
        let dl = distance_laplacian(&g).unwrap();
        let s = sym_eigenvalues(&dl).unwrap();
        assert!((s.sum() - dl.trace()).abs() <= 1e-9 * dl.trace());
        assert!(s.values()[119].abs() < tol_zero(120));
        assert!(s.values()[118] > tol_zero(120));
    }

    fn random_sym(n: usize, seed: &[i8]) -> SymMatrix {
        SymMatrix::from_fn(n, |i, j| seed[(i * 31 + j * 17) % seed.len()] as f64 / 7.0)
    }

    proptest! {
        #[test]
        fn trace_is_preserved(n in 1usize..25, seed in prop::collection::vec(any::<i8>(), 1..64)) {
            let m = random_sym(n, &seed);
            let s = sym_eigenvalues(&m).unwrap();
            let tr = m.trace();
            prop_assert!((s.sum() - tr).abs() <= 1e-9 * tr.abs().max(1.0));
        }

        #[test]
        fn permutation_invariance(n in 2usize..20, seed in prop::collection::vec(any::<i8>(), 1..64), rot in 0usize..100) {
            let m = random_sym(n, &seed);
            let perm: Vec<usize> = (0..n).map(|i| (i * 7 + rot) % n).collect();
            prop_assume!({ let mut p = perm.clone(); p.sort(); p.dedup(); p.len() == n });
            let a = sym_eigenvalues(&m).unwrap();
            let b = sym_eigenvalues(&m.permuted(&perm)).unwrap();
            prop_assert!(spectra_equal(&a, &b, 1e-10).unwrap());
        }
    }
}

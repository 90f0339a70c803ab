//! Distance matrices and their spectra.
//!
//! The distance matrix of a connected graph is non-negative, symmetric and
//! irreducible, so its dominant eigenvalue (the distance spectral radius)
//! carries a strictly positive Perron eigenvector and dominates every other
//! eigenvalue in absolute value. The primary solver is power iteration with
//! an all-ones start vector; a cyclic Jacobi eigensolver provides the
//! independent full-spectrum cross-check.

use thiserror::Error;

use crate::graph::Graph;

/// Default absolute residual tolerance for power iteration.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Iteration cap for power iteration; hitting it signals a degenerate
/// tolerance rather than a plausible spectrum.
pub const MAX_POWER_ITERATIONS: usize = 100_000;
/// Sweep cap for the Jacobi eigensolver.
const MAX_JACOBI_SWEEPS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("graph is disconnected (component sizes {0:?}); distances are undefined")]
    Disconnected(Vec<usize>),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("power iteration did not reach residual {tol} in {iterations} iterations (residual {residual})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tol: f64,
    },
    #[error("Jacobi sweeps did not reduce the off-diagonal norm below tolerance")]
    JacobiStalled,
    #[error("vector length {got} does not match matrix order {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Rayleigh quotient of the zero vector is undefined")]
    ZeroVector,
}

/// Exact all-pairs hop distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// BFS from every vertex. Rejects disconnected graphs, reporting the
    /// component size profile.
    pub fn from_graph(g: &Graph) -> Result<Self, SpectralError> {
        let decomposition = g.components();
        if decomposition.count != 1 {
            return Err(SpectralError::Disconnected(decomposition.sorted_sizes()));
        }
        let n = g.order();
        let mut d = vec![0u32; n * n];
        for src in 0..n {
            let mut dist = 0u32;
            let mut reached = 1u64 << src;
            let mut frontier = reached;
            while frontier != 0 {
                dist += 1;
                let mut next = 0u64;
                let mut bits = frontier;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    next |= g.neighbors(v).bits();
                }
                next &= !reached;
                let mut bits = next;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    d[src * n + v] = dist;
                }
                reached |= next;
                frontier = next;
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.d[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&x| x as u64)
            .sum()
    }

    /// `true` when every entry of `self` is >= the matching entry of `other`
    /// and at least one is strictly larger.
    pub fn dominates_strictly_somewhere(&self, other: &DistanceMatrix) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut strict = false;
        for (a, b) in self.d.iter().zip(other.d.iter()) {
            if a < b {
                return false;
            }
            if a > b {
                strict = true;
            }
        }
        strict
    }

    fn to_f64(&self) -> Vec<f64> {
        self.d.iter().map(|&x| x as f64).collect()
    }
}

/// Dominant-eigenpair result, optionally with the full spectrum attached.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub lambda1: f64,
    /// Strictly positive eigenvector, normalized to unit infinity norm.
    pub perron: Vec<f64>,
    pub iterations: usize,
    /// Final `|D x - lambda1 x|_inf`.
    pub residual: f64,
    /// All eigenvalues descending, when requested.
    pub full_spectrum: Option<Vec<f64>>,
}

fn matvec(a: &[f64], n: usize, x: &[f64], out: &mut [f64]) {
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        out[i] = row.iter().zip(x).map(|(r, v)| r * v).sum();
    }
}

/// Power iteration for the dominant eigenpair of a distance matrix.
pub fn power_iteration(m: &DistanceMatrix, tol: f64) -> Result<SpectralResult, SpectralError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let n = m.order();
    if n == 1 {
        return Ok(SpectralResult {
            lambda1: 0.0,
            perron: vec![1.0],
            iterations: 0,
            residual: 0.0,
            full_spectrum: None,
        });
    }
    let a = m.to_f64();
    // all-ones start: strictly positive, never orthogonal to the Perron vector
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=MAX_POWER_ITERATIONS {
        matvec(&a, n, &x, &mut y);
        let xx: f64 = x.iter().map(|v| v * v).sum();
        let xy: f64 = x.iter().zip(&y).map(|(u, v)| u * v).sum();
        let lambda = xy / xx;
        residual = x
            .iter()
            .zip(&y)
            .map(|(xi, yi)| (yi - lambda * xi).abs())
            .fold(0.0, f64::max);
        if residual < tol {
            return Ok(SpectralResult {
                lambda1: lambda,
                perron: x,
                iterations: iteration,
                residual,
                full_spectrum: None,
            });
        }
        let norm = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }
    Err(SpectralError::NoConvergence {
        iterations: MAX_POWER_ITERATIONS,
        residual,
        tol,
    })
}

/// Distance spectral radius of a connected graph.
pub fn distance_spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    power_iteration(&DistanceMatrix::from_graph(g)?, tol)
}

/// Like [`distance_spectral_radius`] but attaches the Jacobi full spectrum.
pub fn distance_spectral_radius_with_spectrum(
    g: &Graph,
    tol: f64,
) -> Result<SpectralResult, SpectralError> {
    let m = DistanceMatrix::from_graph(g)?;
    let mut result = power_iteration(&m, tol)?;
    let spectrum = full_spectrum(&m)?;
    debug_assert!(
        (result.lambda1 - spectrum[0]).abs() < 1e-8,
        "power iteration and Jacobi disagree: {} vs {}",
        result.lambda1,
        spectrum[0]
    );
    result.full_spectrum = Some(spectrum);
    Ok(result)
}

/// All eigenvalues of a distance matrix, sorted descending, via cyclic
/// Jacobi rotations run until the off-diagonal Frobenius norm drops below
/// `1e-12` relative to the matrix norm.
pub fn full_spectrum(m: &DistanceMatrix) -> Result<Vec<f64>, SpectralError> {
    let n = m.order();
    if n == 1 {
        return Ok(vec![0.0]);
    }
    let mut a = m.to_f64();
    let frob: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let target = 1e-12 * frob.max(1.0);

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += 2.0 * a[p * n + q] * a[p * n + q];
                }
            }
            s.sqrt()
        };
        if off <= target {
            let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            eig.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
            return Ok(eig);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
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
    }
    Err(SpectralError::JacobiStalled)
}

/// `x^T M x / x^T x` for a nonzero vector of matching length.
pub fn rayleigh_quotient(m: &DistanceMatrix, x: &[f64]) -> Result<f64, SpectralError> {
    let n = m.order();
    if x.len() != n {
        return Err(SpectralError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let xx: f64 = x.iter().map(|v| v * v).sum();
    if xx == 0.0 {
        return Err(SpectralError::ZeroVector);
    }
    let a = m.to_f64();
    let mut y = vec![0.0; n];
    matvec(&a, n, x, &mut y);
    let xy: f64 = x.iter().zip(&y).map(|(u, v)| u * v).sum();
    Ok(xy / xx)
}

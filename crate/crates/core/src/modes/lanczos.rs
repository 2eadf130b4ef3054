//! Lanczos iteration with full reorthogonalization for a symmetric operator.

use nalgebra::{DMatrix, SymmetricEigen};

#[derive(Debug, Clone)]
pub(crate) struct RitzPair {
    pub theta: f64,
    pub residual: f64,
    pub vector: Vec<f64>,
}

impl RitzPair {
    pub fn converged(&self, tol: f64) -> bool {
        self.residual <= tol * self.theta.abs()
    }
}

/// Decides after each check whether the Ritz set is good enough.
pub(crate) enum Verdict {
    Continue,
    Stop,
}

pub(crate) struct LanczosOutcome {
    pub ritz: Vec<RitzPair>,
    pub steps: usize,
    pub stopped: bool,
}

/// Runs Lanczos on `apply`, checking the Ritz values every `check_every`
/// steps until `judge` says stop, the Krylov space is exhausted, or
/// `max_steps` is reached. Ritz vectors are only formed at the end.
pub(crate) fn lanczos<F, J>(
    n: usize,
    start: &[f64],
    max_steps: usize,
    check_every: usize,
    mut apply: F,
    mut judge: J,
) -> LanczosOutcome
where
    F: FnMut(&[f64], &mut [f64]),
    J: FnMut(&[(f64, f64)], usize) -> Verdict,
{
    let max_steps = max_steps.min(n).max(1);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_steps);
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();

    let norm = dot(start, start).sqrt();
    basis.push(start.iter().map(|v| v / norm).collect());
    let mut w = vec![0.0; n];
    let mut stopped = false;

    loop {
        let m = basis.len();
        apply(&basis[m - 1], &mut w);
        let a = dot(&w, &basis[m - 1]);
        alpha.push(a);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                axpy(-c, q, &mut w);
            }
        }
        let b = dot(&w, &w).sqrt();
        let exhausted = b <= 1e-13 * a.abs().max(1e-300) || m == n;

        if m.is_multiple_of(check_every) || exhausted || m == max_steps {
            let pairs = ritz_values(&alpha, &beta, b);
            if let Verdict::Stop = judge(&pairs, m) {
                stopped = true;
            }
            if stopped || exhausted || m == max_steps {
                stopped |= exhausted;
                let ritz = ritz_vectors(&alpha, &beta, b, &basis);
                return LanczosOutcome {
                    ritz,
                    steps: m,
                    stopped,
                };
            }
        }
        beta.push(b);
        basis.push(w.iter().map(|v| v / b).collect());
    }
}

fn tridiagonal(alpha: &[f64], beta: &[f64]) -> DMatrix<f64> {
    let m = alpha.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    t
}

/// (theta, residual estimate) for every Ritz value of the current tridiagonal.
fn ritz_values(alpha: &[f64], beta: &[f64], b_next: f64) -> Vec<(f64, f64)> {
    let eig = SymmetricEigen::new(tridiagonal(alpha, beta));
    let m = alpha.len();
    (0..m)
        .map(|k| (eig.eigenvalues[k], (b_next * eig.eigenvectors[(m - 1, k)]).abs()))
        .collect()
}

fn ritz_vectors(alpha: &[f64], beta: &[f64], b_next: f64, basis: &[Vec<f64>]) -> Vec<RitzPair> {
    let eig = SymmetricEigen::new(tridiagonal(alpha, beta));
    let m = alpha.len();
    let n = basis[0].len();
    (0..m)
        .map(|k| {
            let mut v = vec![0.0; n];
            for (i, q) in basis.iter().enumerate().take(m) {
                axpy(eig.eigenvectors[(i, k)], q, &mut v);
            }
            RitzPair {
                theta: eig.eigenvalues[k],
                residual: (b_next * eig.eigenvectors[(m - 1, k)]).abs(),
                vector: v,
            }
        })
        .collect()
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn axpy(c: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_extreme_eigenvalues_of_diagonal_operator() {
        let n = 200;
        let diag: Vec<f64> = (0..n).map(|k| 1.0 + k as f64).collect();
        let start: Vec<f64> = (0..n).map(|k| 1.0 + 0.1 * (k as f64).sin()).collect();
        let out = lanczos(
            n,
            &start,
            120,
            10,
            |x, y| {
                for i in 0..n {
                    y[i] = diag[i] * x[i];
                }
            },
            |_, _| Verdict::Continue,
        );
        let top = out.ritz.iter().map(|p| p.theta).fold(f64::MIN, f64::max);
        assert!((top - n as f64).abs() < 1e-8);
        let best = out.ritz.iter().find(|p| (p.theta - n as f64).abs() < 1e-6).unwrap();
        assert!(best.converged(1e-8));
    }
}

//! Banded LU factorization with partial pivoting.
//!
//! Row `i` stores columns `i - kl ..= i + kl + ku` at offsets `0..w`, so
//! the fill-in created by row swaps fits without reallocation.

#[derive(Debug, Clone)]
pub(crate) struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    w: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    /// Zero matrix of order `n` with `kl` sub- and `ku` super-diagonals.
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let w = 2 * kl + ku + 1;
        BandMatrix {
            n,
            kl,
            ku,
            w,
            data: vec![0.0; n * w],
        }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku);
        i * self.w + (j + self.kl - i)
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(
            j + self.kl >= i && j <= i + self.ku,
            "entry ({i}, {j}) outside the band"
        );
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    pub fn add_diagonal(&mut self, d: &[f64], scale: f64) {
        for (i, v) in d.iter().enumerate() {
            let s = self.slot(i, i);
            self.data[s] += scale * v;
        }
    }

    /// `y = A x` using the original band.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let lo = i.saturating_sub(self.kl);
            let hi = (i + self.ku).min(self.n - 1);
            y[i] = (lo..=hi).map(|j| self.data[self.slot(i, j)] * x[j]).sum();
        }
    }

    /// Factors in place. Returns `None` on an exactly singular pivot.
    pub fn factor(mut self) -> Option<BandLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let mut piv = vec![0usize; n];
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = self.data[self.slot(k, k)].abs();
            for r in k + 1..=last_row {
                let v = self.data[self.slot(r, k)].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best <= f64::EPSILON * scale * 1e-6 {
                return None;
            }
            piv[k] = p;
            let last_col = (k + kl + ku).min(n - 1);
            if p != k {
                for j in k..=last_col {
                    let a = self.slot(k, j);
                    let b = self.slot(p, j);
                    self.data.swap(a, b);
                }
            }
            let pivot = self.data[self.slot(k, k)];
            for r in k + 1..=last_row {
                let s = self.slot(r, k);
                let l = self.data[s] / pivot;
                self.data[s] = l;
                if l != 0.0 {
                    for j in k + 1..=last_col {
                        let u = self.data[self.slot(k, j)];
                        let t = self.slot(r, j);
                        self.data[t] -= l * u;
                    }
                }
            }
        }
        Some(BandLu { a: self, piv })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct BandLu {
    a: BandMatrix,
    piv: Vec<usize>,
}

impl BandLu {
    /// Solves `A x = b` in place.
    pub fn solve(&self, b: &mut [f64]) {
        let a = &self.a;
        let (n, kl, ku) = (a.n, a.kl, a.ku);
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            if bk != 0.0 {
                for r in k + 1..=(k + kl).min(n - 1) {
                    b[r] -= a.data[a.slot(r, k)] * bk;
                }
            }
        }
        for k in (0..n).rev() {
            let last_col = (k + kl + ku).min(n - 1);
            let mut s = b[k];
            for j in k + 1..=last_col {
                s -= a.data[a.slot(k, j)] * b[j];
            }
            b[k] = s / a.data[a.slot(k, k)];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut m: Vec<Vec<f64>> = a.to_vec();
        let mut x = b.to_vec();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs())).unwrap();
            m.swap(k, p);
            x.swap(k, p);
            for r in k + 1..n {
                let l = m[r][k] / m[k][k];
                for c in k..n {
                    m[r][c] -= l * m[k][c];
                }
                x[r] -= l * x[k];
            }
        }
        for k in (0..n).rev() {
            let s: f64 = (k + 1..n).map(|c| m[k][c] * x[c]).sum();
            x[k] = (x[k] - s) / m[k][k];
        }
        x
    }

    #[test]
    fn matches_dense_elimination_on_indefinite_band() {
        let n = 40;
        let (kl, ku) = (3, 3);
        let mut band = BandMatrix::zeros(n, kl, ku);
        let mut dense = vec![vec![0.0; n]; n];
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                // small diagonal forces pivoting
                let v = if i == j { 0.01 * next() } else { next() };
                band.add(i, j, v);
                dense[i][j] = v;
            }
        }
        let b: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let expected = dense_solve(&dense, &b);
        let lu = band.clone().factor().unwrap();
        let mut x = b.clone();
        lu.solve(&mut x);
        for (u, v) in x.iter().zip(&expected) {
            assert!((u - v).abs() < 1e-9 * (1.0 + v.abs()), "{u} vs {v}");
        }
        let mut ax = vec![0.0; n];
        band.mul_vec(&x, &mut ax);
        for (u, v) in ax.iter().zip(&b) {
            assert!((u - v).abs() < 1e-9);
        }
    }

    #[test]
    fn singular_matrix_detected() {
        let band = BandMatrix::zeros(4, 1, 1);
        assert!(band.factor().is_none());
    }
}

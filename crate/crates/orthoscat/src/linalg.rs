//! Dense complex linear algebra: row-major matrices stored as split
//! real/imaginary planes (keeps the LU trailing update vectorizable), LU
//! with partial pivoting parallelized over rows, and a one-norm condition
//! estimate.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is singular at elimination step {0}")]
    Singular(usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

#[derive(Debug, Clone)]
pub struct CMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl CMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, re: vec![0.0; n_rows * n_cols], im: vec![0.0; n_rows * n_cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let k = i * self.n_cols + j;
        Complex64::new(self.re[k], self.im[k])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let k = i * self.n_cols + j;
        self.re[k] = v.re;
        self.im[k] = v.im;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        let k = i * self.n_cols + j;
        self.re[k] += v.re;
        self.im[k] += v.im;
    }

    /// Mutable row views (split planes).
    pub fn row_mut(&mut self, i: usize) -> (&mut [f64], &mut [f64]) {
        let n = self.n_cols;
        (&mut self.re[i * n..(i + 1) * n], &mut self.im[i * n..(i + 1) * n])
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows)
            .map(|i| {
                let mut sr = 0.0;
                let mut si = 0.0;
                let base = i * self.n_cols;
                for j in 0..self.n_cols {
                    let (ar, ai) = (self.re[base + j], self.im[base + j]);
                    sr += ar * x[j].re - ai * x[j].im;
                    si += ar * x[j].im + ai * x[j].re;
                }
                Complex64::new(sr, si)
            })
            .collect()
    }

    pub fn one_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.n_cols {
            let mut s = 0.0;
            for i in 0..self.n_rows {
                let k = i * self.n_cols + j;
                s += self.re[k].hypot(self.im[k]);
            }
            best = best.max(s);
        }
        best
    }
}

pub struct LuFactors {
    n: usize,
    lu: CMatrix,
    perm: Vec<usize>,
}

/// LU factorization with partial pivoting. The trailing update is
/// parallelized over rows; arithmetic order per row is fixed, so results do
/// not depend on the thread count.
pub fn lu_factor(mut a: CMatrix) -> Result<LuFactors, LinalgError> {
    if a.n_rows != a.n_cols {
        return Err(LinalgError::Shape(format!("{}x{} not square", a.n_rows, a.n_cols)));
    }
    let n = a.n_rows;
    let mut perm = Vec::with_capacity(n);
    for k in 0..n {
        // pivot search on |.|^2
        let mut p = k;
        let mut best = -1.0f64;
        for i in k..n {
            let idx = i * n + k;
            let m = a.re[idx] * a.re[idx] + a.im[idx] * a.im[idx];
            if m > best {
                best = m;
                p = i;
            }
        }
        if best <= 0.0 || !best.is_finite() {
            return Err(LinalgError::Singular(k));
        }
        perm.push(p);
        if p != k {
            for j in 0..n {
                a.re.swap(k * n + j, p * n + j);
                a.im.swap(k * n + j, p * n + j);
            }
        }
        let piv = a.get(k, k);
        let inv = 1.0 / piv;
        // multipliers and trailing update
        let (head_re, tail_re) = a.re.split_at_mut((k + 1) * n);
        let (head_im, tail_im) = a.im.split_at_mut((k + 1) * n);
        let prow_re = &head_re[k * n + k + 1..k * n + n];
        let prow_im = &head_im[k * n + k + 1..k * n + n];
        tail_re
            .par_chunks_mut(n)
            .zip(tail_im.par_chunks_mut(n))
            .for_each(|(rr, ri)| {
                let lr0 = rr[k];
                let li0 = ri[k];
                let lr = lr0 * inv.re - li0 * inv.im;
                let li = lr0 * inv.im + li0 * inv.re;
                rr[k] = lr;
                ri[k] = li;
                let rrt = &mut rr[k + 1..n];
                let rit = &mut ri[k + 1..n];
                for j in 0..rrt.len() {
                    let (ur, ui) = (prow_re[j], prow_im[j]);
                    rrt[j] -= lr * ur - li * ui;
                    rit[j] -= lr * ui + li * ur;
                }
            });
    }
    Ok(LuFactors { n, lu: a, perm })
}

impl LuFactors {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Solve A x = b in place.
    pub fn solve_vec(&self, b: &mut [Complex64]) {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.perm[k]);
        }
        // forward: L has unit diagonal
        for i in 1..n {
            let mut s = b[i];
            let base = i * n;
            for j in 0..i {
                let l = Complex64::new(self.lu.re[base + j], self.lu.im[base + j]);
                s -= l * b[j];
            }
            b[i] = s;
        }
        // backward
        for i in (0..n).rev() {
            let mut s = b[i];
            let base = i * n;
            for j in (i + 1)..n {
                let u = Complex64::new(self.lu.re[base + j], self.lu.im[base + j]);
                s -= u * b[j];
            }
            b[i] = s / Complex64::new(self.lu.re[base + i], self.lu.im[base + i]);
        }
    }

    /// Solve A^T x = b in place (for the norm estimator).
    pub fn solve_transpose_vec(&self, b: &mut [Complex64]) {
        let n = self.n;
        // U^T y = b (forward, U^T lower with diagonal)
        for i in 0..n {
            let mut s = b[i];
            for j in 0..i {
                let u = Complex64::new(self.lu.re[j * n + i], self.lu.im[j * n + i]);
                s -= u * b[j];
            }
            b[i] = s / Complex64::new(self.lu.re[i * n + i], self.lu.im[i * n + i]);
        }
        // L^T z = y (backward, unit diagonal)
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in (i + 1)..n {
                let l = Complex64::new(self.lu.re[j * n + i], self.lu.im[j * n + i]);
                s -= l * b[j];
            }
            b[i] = s;
        }
        for k in (0..n).rev() {
            b.swap(k, self.perm[k]);
        }
    }

    /// Solve A X = B column-block-parallel; returns X with B's shape.
    pub fn solve_mat(&self, b: &CMatrix) -> CMatrix {
        assert_eq!(b.n_rows, self.n);
        let n = self.n;
        let ncols = b.n_cols;
        let mut out = CMatrix::zeros(n, ncols);
        let cols: Vec<Vec<Complex64>> = (0..ncols)
            .into_par_iter()
            .map(|j| {
                let mut col: Vec<Complex64> = (0..n).map(|i| b.get(i, j)).collect();
                self.solve_vec(&mut col);
                col
            })
            .collect();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                out.set(i, j, col[i]);
            }
        }
        out
    }

    /// Hager-style one-norm estimate of ||A^{-1}||_1.
    pub fn inverse_one_norm_estimate(&self) -> f64 {
        let n = self.n;
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut est = 0.0f64;
        for _ in 0..5 {
            let mut y = x.clone();
            self.solve_vec(&mut y);
            let norm1: f64 = y.iter().map(|v| v.norm()).sum();
            if norm1 <= est {
                break;
            }
            est = norm1;
            // sign vector and transpose solve
            let mut z: Vec<Complex64> = y
                .iter()
                .map(|v| if v.norm() > 0.0 { v / v.norm() } else { Complex64::new(1.0, 0.0) })
                .collect();
            self.solve_transpose_vec(&mut z);
            // next unit vector at the largest component
            let (mut jmax, mut best) = (0usize, -1.0f64);
            for (j, v) in z.iter().enumerate() {
                if v.norm() > best {
                    best = v.norm();
                    jmax = j;
                }
            }
            x = vec![Complex64::new(0.0, 0.0); n];
            x[jmax] = Complex64::new(1.0, 0.0);
        }
        est
    }
}

/// Residual-checked solve used by the coupled interface system.
pub fn solve_checked(a: &CMatrix, rhs: &[Complex64]) -> Result<(Vec<Complex64>, f64, f64), LinalgError> {
    let anorm = a.one_norm();
    let lu = lu_factor(a.clone())?;
    let mut x = rhs.to_vec();
    lu.solve_vec(&mut x);
    let ax = a.mul_vec(&x);
    let rnorm: f64 = ax
        .iter()
        .zip(rhs)
        .map(|(l, r)| (l - r).norm())
        .sum::<f64>();
    let bnorm: f64 = rhs.iter().map(|v| v.norm()).sum::<f64>().max(1e-300);
    let cond = anorm * lu.inverse_one_norm_estimate();
    Ok((x, rnorm / bnorm, cond))
}

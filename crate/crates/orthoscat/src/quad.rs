//! Gauss-Legendre panels and adaptive integration helpers.

use num_complex::Complex64;
use std::sync::OnceLock;

/// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration
/// on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * z * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static GL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    GL.get_or_init(|| gauss_legendre(16))
}

fn gl32() -> &'static (Vec<f64>, Vec<f64>) {
    static GL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    GL.get_or_init(|| gauss_legendre(32))
}

/// Fixed-order Gauss panel over a straight segment in the complex plane.
pub fn panel_complex<F>(f: &F, za: Complex64, zb: Complex64, nodes: &[f64], weights: &[f64]) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let mid = (za + zb) * 0.5;
    let half = (zb - za) * 0.5;
    let mut s = Complex64::new(0.0, 0.0);
    for (&xi, &wi) in nodes.iter().zip(weights) {
        s += f(mid + half * xi) * wi;
    }
    s * half
}

fn panel_complex_abs<F>(
    f: &F,
    za: Complex64,
    zb: Complex64,
    nodes: &[f64],
    weights: &[f64],
) -> (Complex64, f64)
where
    F: Fn(Complex64) -> Complex64,
{
    let mid = (za + zb) * 0.5;
    let half = (zb - za) * 0.5;
    let mut s = Complex64::new(0.0, 0.0);
    let mut m = 0.0;
    for (&xi, &wi) in nodes.iter().zip(weights) {
        let v = f(mid + half * xi);
        s += v * wi;
        m += v.norm() * wi;
    }
    (s * half, m * half.norm())
}

/// Adaptive bisection with a 16/32-point Gauss error estimate.
/// `tol` is absolute on the panel contribution. `noise` is the relative
/// evaluation noise of the integrand (roundoff amplified by large phase
/// arguments); panels are accepted once the 16/32 disagreement falls below
/// either bound, since refining past the noise floor cannot converge.
pub fn adaptive_complex_noisy<F>(
    f: &F,
    za: Complex64,
    zb: Complex64,
    tol: f64,
    noise: f64,
) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    fn rec<F: Fn(Complex64) -> Complex64>(
        f: &F,
        za: Complex64,
        zb: Complex64,
        tol: f64,
        noise: f64,
        depth: u32,
    ) -> Complex64 {
        let (c1, _) = panel_complex_abs(f, za, zb, &gl16().0, &gl16().1);
        let (c2, mass) = panel_complex_abs(f, za, zb, &gl32().0, &gl32().1);
        if (c1 - c2).norm() <= tol.max(noise * mass) || depth > 18 {
            return c2;
        }
        let zm = (za + zb) * 0.5;
        rec(f, za, zm, tol * 0.5, noise, depth + 1) + rec(f, zm, zb, tol * 0.5, noise, depth + 1)
    }
    rec(f, za, zb, tol, noise, 0)
}

/// `adaptive_complex_noisy` with the noise floor at plain roundoff.
pub fn adaptive_complex<F>(f: &F, za: Complex64, zb: Complex64, tol: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    adaptive_complex_noisy(f, za, zb, tol, 4.0 * f64::EPSILON)
}

/// Adaptive integration of a real-argument complex-valued function.
pub fn adaptive_real<F>(f: &F, a: f64, b: f64, tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let g = |z: Complex64| f(z.re);
    adaptive_complex(&g, Complex64::new(a, 0.0), Complex64::new(b, 0.0), tol)
}

/// Fixed high-order Gauss on a real interval (real-valued integrand).
pub fn gauss_real<F>(f: &F, a: f64, b: f64, n: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut s = 0.0;
    for (&xi, &wi) in x.iter().zip(&w) {
        s += wi * f(mid + half * xi);
    }
    s * half
}

//! Special functions on the complex plane: the branch-controlled square
//! root, mu(xi) = sqrt(k0^2 - xi^2), Hankel functions H0^(1) and H1^(1) of
//! complex argument, and the complexified distance.
//!
//! Branch convention throughout: the square root cuts along the negative
//! real axis and takes values with argument in (-pi/2, pi/2], so negative
//! reals map to +i sqrt|.|.

use crate::specfun_tables::*;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpecFunError {
    #[error("Hankel function argument is zero")]
    ZeroArgument,
    #[error("complexified distance crossed the square-root branch cut: rho^2 = {re} + {im}i")]
    BranchCutCrossed { re: f64, im: f64 },
}

/// Principal square root with the cut on the negative real axis and the
/// value +i sqrt|w| on the cut itself (argument range (-pi/2, pi/2]).
pub fn branch_sqrt(w: Complex64) -> Complex64 {
    if w.im == 0.0 {
        // collapse the sign of a zero imaginary part so the cut maps upward
        if w.re < 0.0 {
            return Complex64::new(0.0, (-w.re).sqrt());
        }
        return Complex64::new(w.re.sqrt(), 0.0);
    }
    w.sqrt()
}

/// mu(xi) = sqrt(k0^2 - xi^2) with the branch convention above.
pub fn mu(xi: Complex64, k0: f64) -> Complex64 {
    branch_sqrt(Complex64::new(k0 * k0, 0.0) - xi * xi)
}

/// Complexified distance rho(x, y) = sqrt((x1-y1)^2 + (x2-y2)^2) for complex
/// coordinate pairs. Errors if the squared sum lands on the branch cut,
/// which is the uniaxial-PML failure mode.
pub fn complex_distance(
    x: [Complex64; 2],
    y: [Complex64; 2],
) -> Result<Complex64, SpecFunError> {
    let d1 = x[0] - y[0];
    let d2 = x[1] - y[1];
    let r2 = d1 * d1 + d2 * d2;
    if r2.im == 0.0 && r2.re < 0.0 {
        return Err(SpecFunError::BranchCutCrossed { re: r2.re, im: r2.im });
    }
    Ok(branch_sqrt(r2))
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Ascending-series J0, Y0, J1, Y1 for complex argument. Accurate for
/// |z| <= ~8 near the real axis; the J + iY combination loses digits like
/// e^{2 Im z}, which is why production dispatch hands over to the
/// Laplace-integral branch early.
pub fn bessel_j0_y0(z: Complex64) -> (Complex64, Complex64) {
    let q = -z * z * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut j0 = term;
    let mut ysum = Complex64::new(0.0, 0.0);
    let mut hk = 0.0;
    for k in 1..200 {
        term = term * q / ((k * k) as f64);
        j0 += term;
        hk += 1.0 / k as f64;
        ysum -= term * hk;
        if term.norm_sqr() < 1e-40 * j0.norm_sqr() {
            break;
        }
    }
    let y0 = ((z * 0.5).ln() + EULER_GAMMA) * j0 + ysum;
    (j0, y0 * (2.0 / PI))
}

pub fn bessel_j1_y1(z: Complex64) -> (Complex64, Complex64) {
    let q = -z * z * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut s = term;
    let mut hk = 0.0; // H_k
    let mut hk1 = 1.0; // H_{k+1}
    let mut ssum = term * (hk + hk1);
    for k in 1..200 {
        term = term * q / ((k * (k + 1)) as f64);
        s += term;
        hk += 1.0 / k as f64;
        hk1 += 1.0 / (k + 1) as f64;
        ssum += term * (hk + hk1);
        if term.norm_sqr() < 1e-40 * s.norm_sqr() {
            break;
        }
    }
    let zh = z * 0.5;
    let j1 = zh * s;
    let y1 = (2.0 / PI) * zh.ln() * j1 - 2.0 / (PI * z)
        - (zh / PI) * (ssum - 2.0 * EULER_GAMMA * s);
    (j1, y1)
}

fn hankel_series(z: Complex64) -> (Complex64, Complex64) {
    let (j0, y0) = bessel_j0_y0(z);
    let (j1, y1) = bessel_j1_y1(z);
    (j0 + Complex64::i() * y0, j1 + Complex64::i() * y1)
}

/// Laplace-integral branch: exact Gauss-Laguerre evaluation of
///   H_nu(z) = sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)} / Gamma(nu+1/2)
///             int_0^inf e^{-t} t^{nu-1/2} (1 + i t/(2z))^{nu-1/2} dt.
fn hankel_laguerre(z: Complex64) -> (Complex64, Complex64) {
    let inv2z = Complex64::new(0.0, 0.5) / z; // i/(2z)
    let mut i0 = Complex64::new(0.0, 0.0);
    for (&t, &w) in LAGUERRE_M_NODES.iter().zip(&LAGUERRE_M_WEIGHTS) {
        // (1 + it/(2z))^{-1/2}: the base stays in the right half plane for
        // Im z >= 0, so the principal square root applies
        i0 += w / (Complex64::new(1.0, 0.0) + inv2z * t).sqrt();
    }
    let mut i1 = Complex64::new(0.0, 0.0);
    for (&t, &w) in LAGUERRE_P_NODES.iter().zip(&LAGUERRE_P_WEIGHTS) {
        i1 += w * (Complex64::new(1.0, 0.0) + inv2z * t).sqrt();
    }
    let pref = (2.0 / (PI * z)).sqrt();
    let sqrt_pi = PI.sqrt();
    let h0 = pref * (Complex64::i() * (z - Complex64::new(PI / 4.0, 0.0))).exp() * i0 / sqrt_pi;
    let h1 =
        pref * (Complex64::i() * (z - Complex64::new(3.0 * PI / 4.0, 0.0))).exp() * i1 / (sqrt_pi * 0.5);
    (h0, h1)
}

/// Dispatch radius between the ascending series and the Laplace-integral
/// branch; both are accurate to ~1e-13 on the ring.
pub const HANKEL_CROSSOVER: f64 = 4.0;

fn hankel_pair(z: Complex64) -> Result<(Complex64, Complex64), SpecFunError> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(SpecFunError::ZeroArgument);
    }
    if z.norm() <= HANKEL_CROSSOVER {
        Ok(hankel_series(z))
    } else {
        Ok(hankel_laguerre(z))
    }
}

/// H0^(1)(z) for Im z >= 0 (arguments elsewhere are accepted but only the
/// closed upper half-plane is accuracy-qualified).
pub fn hankel0(z: Complex64) -> Result<Complex64, SpecFunError> {
    hankel_pair(z).map(|(h0, _)| h0)
}

/// H1^(1)(z), same domain as `hankel0`.
pub fn hankel1(z: Complex64) -> Result<Complex64, SpecFunError> {
    hankel_pair(z).map(|(_, h1)| h1)
}

/// Both orders at once (kernel assembly wants the pair).
pub fn hankel01(z: Complex64) -> Result<(Complex64, Complex64), SpecFunError> {
    hankel_pair(z)
}

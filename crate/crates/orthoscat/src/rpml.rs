//! Regionalized complex coordinate stretching.
//!
//! Each half-plane gets a horizontal absorbing profile in its own
//! coordinates: sigma_1 on |x1| in [l1, l1+d1] for the upper region and the
//! matched sigma_1^N(X1) = sigma_1(X1 / scale) on |X1| in [L1, L1+D1] for
//! the image of the lower region, with L1 = scale * l1, D1 = scale * d1.
//! The profile ramps smoothly from 0 to 2S across the layer with
//! integral exactly S*d1 per side; its first five derivatives vanish at the
//! inner edge so the layer entrances are smooth points of the curve.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quad::gauss_real;

/// Which complexification is applied to the lower half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PmlVariant {
    /// Stretch the image coordinate X1 of the full transition map Q M^{-1/2}.
    #[default]
    Rpml2,
    /// Same construction but with Q replaced by the identity.
    Rpml1,
    /// Uniaxial: stretch the physical x1 in both half-planes.
    Upml,
}

/// Horizontal absorbing profile.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StretchProfile {
    /// Half-width of the physical region on the interface.
    pub l1: f64,
    /// Layer thickness.
    pub d1: f64,
    /// Strength: the profile integrates to s * d1 over one layer.
    pub s: f64,
    /// Smoothness exponent of the ramp (even, default 6).
    pub p: u32,
}

impl StretchProfile {
    pub fn new(l1: f64, d1: f64, s: f64, p: u32) -> Self {
        assert!(l1 > 0.0 && d1 > 0.0 && s >= 0.0 && p >= 2);
        Self { l1, d1, s, p }
    }

    /// Cubic ramp used by both the mesh grading and the absorbing profile.
    fn f1(&self, xi: f64) -> f64 {
        let p = self.p as f64;
        (0.5 - 1.0 / p) * xi * xi * xi + xi / p + 0.5
    }

    /// sigma_1(x1): even, zero on |x1| <= l1 and beyond the layer, rising
    /// from 0 to 2S across the layer. The normalized ramp is antisymmetric
    /// about the layer midpoint so the mass is exactly s * d1.
    pub fn sigma1(&self, x1: f64) -> f64 {
        let ax = x1.abs();
        if ax <= self.l1 || ax >= self.l1 + self.d1 {
            return 0.0;
        }
        let xi = 2.0 * (ax - self.l1) / self.d1 - 1.0;
        let f1 = self.f1(xi).powi(self.p as i32);
        let f2 = (1.0 - self.f1(xi)).powi(self.p as i32);
        2.0 * self.s * f1 / (f1 + f2)
    }

    /// Cumulative integral int_0^{x1} sigma_1(t) dt (odd in x1).
    pub fn sigma1_integral(&self, x1: f64) -> f64 {
        let ax = x1.abs();
        if ax <= self.l1 {
            return 0.0;
        }
        let hi = ax.min(self.l1 + self.d1);
        let v = gauss_real(&|t| self.sigma1(t), self.l1, hi, 24);
        v.copysign(x1)
    }

    /// Stretched coordinate x1 + i int_0^{x1} sigma_1.
    pub fn stretch1(&self, x1: f64) -> Complex64 {
        Complex64::new(x1, self.sigma1_integral(x1))
    }

    /// Profile for the image side: sigma^N(X1) = sigma(X1/scale), which is
    /// the profile with l1, d1 scaled by `scale` and the same strength.
    pub fn scaled(&self, scale: f64) -> StretchProfile {
        StretchProfile { l1: self.l1 * scale, d1: self.d1 * scale, s: self.s, p: self.p }
    }

    /// q1 = 1 + i sigma_1(x1).
    pub fn q1(&self, x1: f64) -> Complex64 {
        Complex64::new(1.0, self.sigma1(x1))
    }
}

/// Diagonal stretching tensor A = diag(q2/q1, q1/q2) and Jacobian J = q1 q2
/// for the stretched Helmholtz operator. The vertical profile sigma_2 is
/// identically zero in this solver; it is kept in the signature for the
/// coefficient diagnostics.
pub fn pml_coefficients(profile: &StretchProfile, x1: f64, sigma2: f64) -> ([Complex64; 2], Complex64) {
    let q1 = profile.q1(x1);
    let q2 = Complex64::new(1.0, sigma2);
    ([q2 / q1, q1 / q2], q1 * q2)
}

//! Material tensor algebra for orthotropic half-planes.
//!
//! Maps the in-plane block of a 3x3 permittivity tensor to the 2x2 material
//! matrix `M`, its inverse square root, the orthogonal factor `Q`, and the
//! upper-triangular transition matrix `T = Q M^{-1/2}` that turns the
//! anisotropic Helmholtz operator into the isotropic one while keeping the
//! horizontal axis fixed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MediaError {
    #[error("permittivity in-plane block is not symmetric positive definite (e11={e11}, e12={e12}, e22={e22})")]
    NotPositiveDefinite { e11: f64, e12: f64, e22: f64 },
    #[error("e33 must be positive, got {0}")]
    BadE33(f64),
    #[error("material matrix is numerically singular (condition estimate {0:.3e})")]
    NearlySingular(f64),
}

/// Relative permittivity tensor of one half-plane (orthotropic block form).
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct PermittivityTensor {
    pub e11: f64,
    pub e12: f64,
    pub e22: f64,
    pub e33: f64,
}

impl PermittivityTensor {
    pub fn new(e11: f64, e12: f64, e22: f64, e33: f64) -> Result<Self, MediaError> {
        if !(e11 > 0.0) || !(e11 * e22 - e12 * e12 > 0.0) {
            return Err(MediaError::NotPositiveDefinite { e11, e12, e22 });
        }
        if !(e33 > 0.0) {
            return Err(MediaError::BadE33(e33));
        }
        Ok(Self { e11, e12, e22, e33 })
    }

    pub fn identity() -> Self {
        Self { e11: 1.0, e12: 0.0, e22: 1.0, e33: 1.0 }
    }
}

/// Symmetric 2x2 matrix stored as (a11, a12, a22).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl Sym2 {
    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn is_spd(&self) -> bool {
        self.a11 > 0.0 && self.det() > 0.0
    }

    pub fn inverse(&self) -> Sym2 {
        let d = self.det();
        Sym2 { a11: self.a22 / d, a12: -self.a12 / d, a22: self.a11 / d }
    }

    /// Unique SPD square root via the closed 2x2 formula
    /// sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)).
    pub fn sqrt_spd(&self) -> Sym2 {
        let sd = self.det().sqrt();
        let s = (self.trace() + 2.0 * sd).sqrt();
        Sym2 { a11: (self.a11 + sd) / s, a12: self.a12 / s, a22: (self.a22 + sd) / s }
    }

    pub fn mul_vec(&self, v: [f64; 2]) -> [f64; 2] {
        [self.a11 * v[0] + self.a12 * v[1], self.a12 * v[0] + self.a22 * v[1]]
    }
}

/// General 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn mul_vec(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        Mat2([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ])
    }
}

/// Everything derived from one half-plane's material matrix.
#[derive(Debug, Clone, Copy)]
pub struct DerivedMedium {
    /// Material matrix M.
    pub m: Sym2,
    /// Inverse square root of M (symmetric).
    pub inv_sqrt: Sym2,
    /// alpha = sqrt(a11^2 + a12^2) where a_ij are entries of M^{-1/2}.
    pub alpha: f64,
    /// Orthogonal factor Q (rotation, det +1).
    pub q: Mat2,
    /// det M.
    pub det_m: f64,
    /// Transition matrix T = Q M^{-1/2} (upper triangular, positive diagonal).
    pub t: Mat2,
    /// Inverse of T.
    pub t_inv: Mat2,
}

/// Build the material matrix M from the in-plane permittivity block.
pub fn material_matrix(eps: &PermittivityTensor) -> Result<Sym2, MediaError> {
    let det = eps.e11 * eps.e22 - eps.e12 * eps.e12;
    if !(eps.e11 > 0.0) || !(det > 0.0) {
        return Err(MediaError::NotPositiveDefinite { e11: eps.e11, e12: eps.e12, e22: eps.e22 });
    }
    if !(eps.e33 > 0.0) {
        return Err(MediaError::BadE33(eps.e33));
    }
    Ok(Sym2 { a11: eps.e11 / det, a12: eps.e12 / det, a22: eps.e22 / det })
}

/// Derive M^{-1/2}, alpha, Q and the transition matrix from an SPD material matrix.
pub fn derive_medium(m: Sym2) -> Result<DerivedMedium, MediaError> {
    if !m.is_spd() {
        return Err(MediaError::NotPositiveDefinite { e11: m.a11, e12: m.a12, e22: m.a22 });
    }
    // 2x2 spectral condition number from the eigenvalue formulas
    let tr = m.trace();
    let disc = (tr * tr - 4.0 * m.det()).max(0.0).sqrt();
    let cond = (tr + disc) / (tr - disc);
    if !cond.is_finite() || cond > 1e12 {
        return Err(MediaError::NearlySingular(cond));
    }
    let inv_sqrt = m.inverse().sqrt_spd();
    let (a11, a12, a22) = (inv_sqrt.a11, inv_sqrt.a12, inv_sqrt.a22);
    let alpha = a11.hypot(a12);
    let q = Mat2([[a11 / alpha, a12 / alpha], [-a12 / alpha, a11 / alpha]]);
    // T = Q * M^{-1/2}: upper triangular by construction:
    // [alpha, a12 (a11 + a22)/alpha; 0, (a11 a22 - a12^2)/alpha]
    let t = Mat2([
        [alpha, a12 * (a11 + a22) / alpha],
        [0.0, inv_sqrt.det() / alpha],
    ]);
    Ok(DerivedMedium {
        m,
        inv_sqrt,
        alpha,
        q,
        det_m: m.det(),
        t,
        t_inv: t.inverse(),
    })
}

impl DerivedMedium {
    pub fn from_permittivity(eps: &PermittivityTensor) -> Result<Self, MediaError> {
        derive_medium(material_matrix(eps)?)
    }

    /// Image coordinates X = T x.
    pub fn to_image(&self, x: [f64; 2]) -> [f64; 2] {
        self.t.mul_vec(x)
    }

    /// Preimage coordinates x = T^{-1} X.
    pub fn from_image(&self, xx: [f64; 2]) -> [f64; 2] {
        self.t_inv.mul_vec(xx)
    }

    /// sqrt(det M), the factor pairing with alpha in the interface conditions.
    pub fn sqrt_det_m(&self) -> f64 {
        self.det_m.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn identity_medium() {
        let m = material_matrix(&PermittivityTensor::identity()).unwrap();
        assert_eq!(m, Sym2 { a11: 1.0, a12: 0.0, a22: 1.0 });
        let d = derive_medium(m).unwrap();
        assert_eq!(d.alpha, 1.0);
        assert_eq!(d.t, Mat2::identity());
        assert_eq!(d.q, Mat2::identity());
    }

    #[test]
    fn material_matrix_4334() {
        // in-plane block [4,3;3,4]: det = 7, M = [4,3;3,4]/7
        let eps = PermittivityTensor::new(4.0, 3.0, 4.0, 1.0).unwrap();
        let m = material_matrix(&eps).unwrap();
        assert!(close(m.a11, 4.0 / 7.0, 1e-15));
        assert!(close(m.a12, 3.0 / 7.0, 1e-15));
        assert!(close(m.a22, 4.0 / 7.0, 1e-15));
    }

    #[test]
    fn derive_4334() {
        // M = (1/7)[4,3;3,4]: closed-form eigendecomposition along (1,+-1)/sqrt(2)
        // gives a11 = a22 = (1+sqrt7)/2, a12 = (1-sqrt7)/2, alpha = 2,
        // T = [2, -1.5; 0, sqrt7/2].
        let m = Sym2 { a11: 4.0 / 7.0, a12: 3.0 / 7.0, a22: 4.0 / 7.0 };
        let d = derive_medium(m).unwrap();
        let s7 = 7f64.sqrt();
        assert!(close(d.inv_sqrt.a11, (1.0 + s7) / 2.0, 1e-14));
        assert!(close(d.inv_sqrt.a12, (1.0 - s7) / 2.0, 1e-14));
        assert!(close(d.alpha, 2.0, 1e-14));
        assert!(close(d.t.0[0][0], 2.0, 1e-14));
        assert!(close(d.t.0[0][1], -1.5, 1e-14));
        assert!(d.t.0[1][0] == 0.0);
        assert!(close(d.t.0[1][1], s7 / 2.0, 1e-14));
        // (M^{-1/2})^2 = M^{-1}
        let a = d.inv_sqrt;
        let minv = m.inverse();
        assert!(close(a.a11 * a.a11 + a.a12 * a.a12, minv.a11, 1e-14));
        assert!(close(a.a11 * a.a12 + a.a12 * a.a22, minv.a12, 1e-14));
    }

    #[test]
    fn derive_419() {
        // in-plane block [4,1;1,9]: M = (1/35)[4,1;1,9], M^{-1} = [9,-1;-1,4],
        // alpha = 3 exactly, sqrt(|M|) alpha = 3/sqrt(35)
        let eps = PermittivityTensor::new(4.0, 1.0, 9.0, 1.0).unwrap();
        let m = material_matrix(&eps).unwrap();
        assert!(close(m.det(), 1.0 / 35.0, 1e-15));
        let d = derive_medium(m).unwrap();
        let minv = m.inverse();
        assert!(close(minv.a11, 9.0, 1e-12));
        assert!(close(minv.a12, -1.0, 1e-12));
        assert!(close(minv.a22, 4.0, 1e-12));
        assert!(close(d.alpha, 3.0, 1e-13));
        assert!(close(d.sqrt_det_m() * d.alpha, 3.0 / 35f64.sqrt(), 1e-14));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PermittivityTensor::new(1.0, 2.0, 1.0, 1.0).is_err());
        assert!(PermittivityTensor::new(-1.0, 0.0, 1.0, 1.0).is_err());
        assert!(PermittivityTensor::new(1.0, 0.0, 1.0, -2.0).is_err());
        let nearly = Sym2 { a11: 1.0, a12: 0.0, a22: 1e-14 };
        assert!(matches!(derive_medium(nearly), Err(MediaError::NearlySingular(_))));
    }

    #[test]
    fn interface_scaling() {
        let eps = PermittivityTensor::new(4.0, 1.0, 9.0, 1.0).unwrap();
        let d = DerivedMedium::from_permittivity(&eps).unwrap();
        // points on the interface scale by alpha and stay on it
        let xx = d.to_image([1.0, 0.0]);
        assert!(close(xx[0], 3.0, 1e-14));
        assert!(xx[1].abs() < 1e-15);
        assert_eq!(d.to_image([0.0, 0.0]), [0.0, 0.0]);
        // sign of the vertical coordinate is preserved
        assert!(d.to_image([0.3, 1.0])[1] > 0.0);
        assert!(d.to_image([0.3, -1.0])[1] < 0.0);
    }

    #[test]
    fn isotropy_reduction() {
        // eps in-plane = c I -> M = I/c, T = sqrt(c) I, Q = I
        let c = 2.7;
        let eps = PermittivityTensor::new(c, 0.0, c, 1.0).unwrap();
        let d = DerivedMedium::from_permittivity(&eps).unwrap();
        assert!(close(d.m.a11, 1.0 / c, 1e-15));
        assert!(close(d.t.0[0][0], c.sqrt(), 1e-14));
        assert!(close(d.t.0[1][1], c.sqrt(), 1e-14));
        assert!(d.t.0[0][1].abs() < 1e-15);
        assert_eq!(d.q, Mat2::identity());
    }

    #[test]
    fn random_spd_properties() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..100 {
            // random SPD via B^T B + delta I
            let b: [f64; 4] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0),
                               rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let m = Sym2 {
                a11: b[0] * b[0] + b[2] * b[2] + 0.05,
                a12: b[0] * b[1] + b[2] * b[3],
                a22: b[1] * b[1] + b[3] * b[3] + 0.05,
            };
            let d = match derive_medium(m) {
                Ok(d) => d,
                Err(MediaError::NearlySingular(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            // T upper triangular with positive diagonal, T[0][0] = alpha
            assert_eq!(d.t.0[1][0], 0.0);
            assert!(d.t.0[0][0] > 0.0 && d.t.0[1][1] > 0.0);
            assert!(close(d.t.0[0][0], d.alpha, 1e-13));
            // Q orthogonal with det +1
            let q = d.q.0;
            assert!((q[0][0] * q[0][0] + q[0][1] * q[0][1] - 1.0).abs() < 1e-13);
            assert!((q[0][0] * q[1][0] + q[0][1] * q[1][1]).abs() < 1e-13);
            assert!((d.q.det() - 1.0).abs() < 1e-13);
            // (M^{-1/2})^2 = M^{-1}
            let a = d.inv_sqrt;
            let minv = m.inverse();
            let scale = minv.a11.abs().max(minv.a22.abs());
            assert!((a.a11 * a.a11 + a.a12 * a.a12 - minv.a11).abs() < 1e-13 * scale);
            assert!((a.a12 * (a.a11 + a.a22) - minv.a12).abs() < 1e-13 * scale);
            assert!((a.a22 * a.a22 + a.a12 * a.a12 - minv.a22).abs() < 1e-13 * scale);
            // upper half plane maps onto upper half plane
            for _ in 0..10 {
                let x = [rng.gen_range(-5.0..5.0), rng.gen_range(1e-6..5.0)];
                assert!(d.to_image(x)[1] > 0.0);
                let back = d.from_image(d.to_image(x));
                assert!(close(back[0], x[0], 1e-13) && close(back[1], x[1], 1e-13));
            }
        }
    }
}

//! Spectral evaluation of the two-layer background: the Green's function
//! excited by a line source, its gradient, its far-field patterns, and the
//! plane-wave background solution.
//!
//! The upper half-plane is assumed isotropic (material matrix normalized to
//! the identity); the lower half-plane is described by a `DerivedMedium`.
//! The four source/target sign combinations are Fourier integrals in the
//! horizontal wavenumber; they are integrated along the real axis with small
//! semicircular detours around the branch points of mu: below the positive
//! ones and above the negative ones, which is where the principal square
//! root continues analytically.

use crate::media::DerivedMedium;
use crate::quad::{adaptive_complex_noisy, panel_complex, gauss_legendre};
use crate::specfun::{hankel01, mu};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BackgroundError {
    #[error("source point must lie off the interface (x2* = 0)")]
    SourceOnInterface,
    #[error("target coincides with the source point")]
    TargetAtSource,
    #[error("spectral integrand does not decay: exponent {0:.3e} <= 0 (geometry too deep for the analytic extension)")]
    NoDecay(f64),
    #[error("spectral quadrature failed to converge; achieved estimate {achieved:.3e}")]
    QuadratureFailure { achieved: f64 },
}

/// Two-layer background: isotropic upper half-plane, derived lower medium.
#[derive(Debug, Clone, Copy)]
pub struct Background {
    pub k0: f64,
    pub lower: DerivedMedium,
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Integrate `f` over the real line, detouring around the given positive
/// branch points (and their mirror images), with exponential tail decay
/// `decay` and oscillation rate `osc`.
pub fn spectral_integrate<F>(
    f: &F,
    k0: f64,
    branch_points: &[f64],
    decay: f64,
    osc: f64,
) -> Result<Complex64, BackgroundError>
where
    F: Fn(Complex64) -> Complex64,
{
    if decay <= 0.0 {
        return Err(BackgroundError::NoDecay(decay));
    }
    let reltol = 1e-13;
    let mut bps: Vec<f64> = branch_points.iter().cloned().filter(|b| *b > 1e-14).collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * k0);

    // detour radius: clear of neighbouring branch points and small enough
    // that e^{i xi d} stays O(1) on the detours
    let mut r = k0 / 10.0;
    let mut prev = 0.0;
    for &b in &bps {
        r = r.min((b - prev) / 3.0);
        prev = b;
    }
    if osc > 0.0 {
        r = r.min(2.0 / osc);
    }
    let ximax = bps.last().copied().unwrap_or(k0) + k0;

    // straight pieces between detours
    let mut cuts = vec![-ximax];
    for &b in bps.iter().rev() {
        cuts.push(-b - r);
        cuts.push(-b + r);
    }
    for &b in &bps {
        cuts.push(b - r);
        cuts.push(b + r);
    }
    cuts.push(ximax);

    // magnitude scale from on-axis samples away from the detours
    let mut peak: f64 = 0.0;
    for i in (0..cuts.len()).step_by(2) {
        let (a, b) = (cuts[i], cuts[i + 1]);
        for k in 0..5 {
            let s = a + (b - a) * (0.5 + k as f64) / 5.0;
            peak = peak.max(f(Complex64::new(s, 0.0)).norm());
        }
    }
    if peak < 1e-280 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let tol0 = reltol * peak * k0.max(1.0);
    // evaluation noise: sin/cos of large phase arguments round to
    // eps * |phase|, which bounds how closely panels can ever agree
    let phase_scale = (osc + decay + k0) * ximax;
    let noise = 8.0 * f64::EPSILON * (1.0 + phase_scale);

    let mut total = Complex64::new(0.0, 0.0);
    // middle straight segments, split ahead of time for the oscillation
    let rate = osc + decay + k0;
    for i in (0..cuts.len()).step_by(2) {
        let (a, b) = (cuts[i], cuts[i + 1]);
        if b <= a {
            continue;
        }
        let npan = ((b - a) * rate / 20.0).ceil().max(1.0) as usize;
        for j in 0..npan {
            let a0 = a + (b - a) * j as f64 / npan as f64;
            let b0 = a + (b - a) * (j + 1) as f64 / npan as f64;
            total += adaptive_complex_noisy(
                f,
                Complex64::new(a0, 0.0),
                Complex64::new(b0, 0.0),
                tol0 * (b0 - a0) / (2.0 * ximax),
                noise,
            );
        }
    }
    // semicircular detours: below positive branch points, above negative
    for &b in &bps {
        for sgn in [1.0f64, -1.0] {
            let c = sgn * b;
            let g = |th: Complex64| {
                let z = Complex64::new(c, 0.0) + r * (I * th).exp();
                f(z) * I * r * (I * th).exp()
            };
            let (th0, th1) = if sgn > 0.0 { (PI, 2.0 * PI) } else { (PI, 0.0) };
            total += adaptive_complex_noisy(
                &g,
                Complex64::new(th0, 0.0),
                Complex64::new(th1, 0.0),
                tol0 * r,
                noise,
            );
        }
    }
    // geometric tails
    for sgn in [1.0f64, -1.0] {
        let mut x0 = ximax;
        let mut plen = (3.0 / decay.max(0.05)).max(1.0);
        loop {
            let (a, b) = if sgn > 0.0 { (x0, x0 + plen) } else { (-(x0 + plen), -x0) };
            let npan = ((b - a) * (osc + decay) / 20.0).ceil().max(1.0) as usize;
            let mut seg = Complex64::new(0.0, 0.0);
            for j in 0..npan {
                let a0 = a + (b - a) * j as f64 / npan as f64;
                let b0 = a + (b - a) * (j + 1) as f64 / npan as f64;
                seg += adaptive_complex_noisy(
                    f,
                    Complex64::new(a0, 0.0),
                    Complex64::new(b0, 0.0),
                    tol0 * plen / 20.0,
                    noise,
                );
            }
            total += seg;
            x0 += plen;
            plen *= 1.4;
            if seg.norm() < tol0 {
                break;
            }
            if x0 > 1e7 {
                return Err(BackgroundError::QuadratureFailure { achieved: total.norm() });
            }
        }
    }
    Ok(total)
}

impl Background {
    pub fn new(k0: f64, lower: DerivedMedium) -> Self {
        Self { k0, lower }
    }

    fn m(&self) -> f64 {
        self.lower.sqrt_det_m()
    }

    fn alpha(&self) -> f64 {
        self.lower.alpha
    }

    /// Free-space term Phi(x;y) = (i/4) H0(k0 |x-y|).
    pub fn phi(&self, x: [f64; 2], y: [f64; 2]) -> Result<Complex64, BackgroundError> {
        let r = (x[0] - y[0]).hypot(x[1] - y[1]);
        if r == 0.0 {
            return Err(BackgroundError::TargetAtSource);
        }
        let (h0, _) = hankel01(Complex64::new(self.k0 * r, 0.0)).map_err(|_| BackgroundError::TargetAtSource)?;
        Ok(0.25 * I * h0)
    }

    fn phi_gradient(&self, x: [f64; 2], y: [f64; 2]) -> Result<[Complex64; 2], BackgroundError> {
        let r = (x[0] - y[0]).hypot(x[1] - y[1]);
        if r == 0.0 {
            return Err(BackgroundError::TargetAtSource);
        }
        let (_, h1) = hankel01(Complex64::new(self.k0 * r, 0.0)).map_err(|_| BackgroundError::TargetAtSource)?;
        let c = -0.25 * I * self.k0 * h1 / r;
        Ok([c * (x[0] - y[0]), c * (x[1] - y[1])])
    }

    /// Green's function with source in the upper half-plane, target written
    /// in upper coordinates. Valid for x2 > -x2* (analytic extension below
    /// the interface included).
    pub fn greens_upper_src_upper(
        &self,
        x: [f64; 2],
        xs: [f64; 2],
    ) -> Result<Complex64, BackgroundError> {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let h = x[1] + xs[1];
        let d = xs[0] - x[0];
        let f = |xi: Complex64| {
            let m1 = mu(xi, k0);
            let m2 = mu(xi / a, k0);
            (m1 - m * a * m2) / (m1 * (m1 + m * a * m2)) * (I * (m1 * h + xi * d)).exp()
        };
        let integral = spectral_integrate(&f, k0, &[k0, a * k0], h, d.abs())?;
        Ok(self.phi(x, xs)? + I / (4.0 * PI) * integral)
    }

    /// Gradient (in x) of `greens_upper_src_upper`.
    pub fn greens_upper_src_upper_gradient(
        &self,
        x: [f64; 2],
        xs: [f64; 2],
    ) -> Result<[Complex64; 2], BackgroundError> {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let h = x[1] + xs[1];
        let d = xs[0] - x[0];
        let base = |xi: Complex64| {
            let m1 = mu(xi, k0);
            let m2 = mu(xi / a, k0);
            (m1 - m * a * m2) / (m1 * (m1 + m * a * m2)) * (I * (m1 * h + xi * d)).exp()
        };
        let fx1 = |xi: Complex64| base(xi) * (-I * xi);
        let fx2 = |xi: Complex64| base(xi) * (I * mu(xi, k0));
        let g1 = spectral_integrate(&fx1, k0, &[k0, a * k0], h, d.abs())?;
        let g2 = spectral_integrate(&fx2, k0, &[k0, a * k0], h, d.abs())?;
        let pg = self.phi_gradient(x, xs)?;
        Ok([pg[0] + I / (4.0 * PI) * g1, pg[1] + I / (4.0 * PI) * g2])
    }

    /// Source upper, target in the lower half-plane given in image
    /// coordinates X. Valid for X2 < alpha * x2*.
    pub fn greens_lower_src_upper(
        &self,
        xx: [f64; 2],
        xs: [f64; 2],
    ) -> Result<Complex64, BackgroundError> {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let decay = a * xs[1] - xx[1];
        let osc = (a * xs[0] - xx[0]).abs();
        let f = |xi: Complex64| {
            let ma = mu(a * xi, k0);
            let m1 = mu(xi, k0);
            (I * (ma * xs[1] - m1 * xx[1] + a * xi * xs[0] - xi * xx[0])).exp() / (ma + m * a * m1)
        };
        let integral = spectral_integrate(&f, k0, &[k0 / a, k0], decay, osc)?;
        Ok(a * I / (2.0 * PI) * integral)
    }

    /// Gradient (in X) of `greens_lower_src_upper`.
    pub fn greens_lower_src_upper_gradient(
        &self,
        xx: [f64; 2],
        xs: [f64; 2],
    ) -> Result<[Complex64; 2], BackgroundError> {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let decay = a * xs[1] - xx[1];
        let osc = (a * xs[0] - xx[0]).abs();
        let base = |xi: Complex64| {
            let ma = mu(a * xi, k0);
            let m1 = mu(xi, k0);
            (I * (ma * xs[1] - m1 * xx[1] + a * xi * xs[0] - xi * xx[0])).exp() / (ma + m * a * m1)
        };
        let fx1 = |xi: Complex64| base(xi) * (-I * xi);
        let fx2 = |xi: Complex64| base(xi) * (-I * mu(xi, k0));
        let g1 = spectral_integrate(&fx1, k0, &[k0 / a, k0], decay, osc)?;
        let g2 = spectral_integrate(&fx2, k0, &[k0 / a, k0], decay, osc)?;
        Ok([a * I / (2.0 * PI) * g1, a * I / (2.0 * PI) * g2])
    }

    /// Source in the lower half-plane (image coordinates Xs), target upper.
    /// Valid for x2 > Xs2 / alpha.
    pub fn greens_upper_src_lower(
        &self,
        x: [f64; 2],
        xxs: [f64; 2],
    ) -> Result<Complex64, BackgroundError> {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let decay = x[1] - xxs[1] / a;
        let osc = (xxs[0] / a - x[0]).abs();
        let f = |xi: Complex64| {
            let ma = mu(xi / a, k0);
            let m1 = mu(xi, k0);
            (I * (-ma * xxs[1] + xi / a * xxs[0] + m1 * x[1] - xi * x[0])).exp()
                / (m * a * ma + m1)
        };
        let integral = spectral_integrate(&f, k0, &[a * k0, k0], decay, osc)?;
        Ok(I / (2.0 * PI) * integral)
    }

    /// Gradient (in x) of `greens_upper_src_lower`.
    pub fn greens_upper_src_lower_gradient(
        &self,
        x: [f64; 2],
        xxs: [f64; 2],
    ) -> Result<[Complex64; 2], BackgroundError> {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let decay = x[1] - xxs[1] / a;
        let osc = (xxs[0] / a - x[0]).abs();
        let base = |xi: Complex64| {
            let ma = mu(xi / a, k0);
            let m1 = mu(xi, k0);
            (I * (-ma * xxs[1] + xi / a * xxs[0] + m1 * x[1] - xi * x[0])).exp()
                / (m * a * ma + m1)
        };
        let fx1 = |xi: Complex64| base(xi) * (-I * xi);
        let fx2 = |xi: Complex64| base(xi) * (I * mu(xi, k0));
        let g1 = spectral_integrate(&fx1, k0, &[a * k0, k0], decay, osc)?;
        let g2 = spectral_integrate(&fx2, k0, &[a * k0, k0], decay, osc)?;
        Ok([I / (2.0 * PI) * g1, I / (2.0 * PI) * g2])
    }

    /// Source and target both in the lower half-plane, image coordinates.
    pub fn greens_lower_src_lower(
        &self,
        xx: [f64; 2],
        xxs: [f64; 2],
    ) -> Result<Complex64, BackgroundError> {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let h = -(xx[1] + xxs[1]);
        let d = xxs[0] - xx[0];
        let f = |xi: Complex64| {
            let m1 = mu(xi, k0);
            let ma = mu(a * xi, k0);
            (a * m1 * m - ma) / (m1 * (a * m1 * m + ma)) * (I * (-m1 * (xx[1] + xxs[1]) + xi * d)).exp()
        };
        let integral = spectral_integrate(&f, k0, &[k0, k0 / a], h, d.abs())?;
        Ok(self.phi(xx, xxs)? / m + I / (4.0 * PI * m) * integral)
    }

    /// Gradient (in X) of `greens_lower_src_lower`.
    pub fn greens_lower_src_lower_gradient(
        &self,
        xx: [f64; 2],
        xxs: [f64; 2],
    ) -> Result<[Complex64; 2], BackgroundError> {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let h = -(xx[1] + xxs[1]);
        let d = xxs[0] - xx[0];
        let base = |xi: Complex64| {
            let m1 = mu(xi, k0);
            let ma = mu(a * xi, k0);
            (a * m1 * m - ma) / (m1 * (a * m1 * m + ma)) * (I * (-m1 * (xx[1] + xxs[1]) + xi * d)).exp()
        };
        let fx1 = |xi: Complex64| base(xi) * (-I * xi);
        let fx2 = |xi: Complex64| base(xi) * (-I * mu(xi, k0));
        let g1 = spectral_integrate(&fx1, k0, &[k0, k0 / a], h, d.abs())?;
        let g2 = spectral_integrate(&fx2, k0, &[k0, k0 / a], h, d.abs())?;
        let pg = self.phi_gradient(xx, xxs)?;
        Ok([pg[0] / m + I / (4.0 * PI * m) * g1, pg[1] / m + I / (4.0 * PI * m) * g2])
    }

    /// Green's function dispatching on the physical half-plane of source and
    /// target. Targets exactly on the interface use the upper form.
    pub fn greens(&self, x: [f64; 2], xs: [f64; 2]) -> Result<Complex64, BackgroundError> {
        if xs[1] == 0.0 {
            return Err(BackgroundError::SourceOnInterface);
        }
        if x == xs {
            return Err(BackgroundError::TargetAtSource);
        }
        match (xs[1] > 0.0, x[1] >= 0.0) {
            (true, true) => self.greens_upper_src_upper(x, xs),
            (true, false) => self.greens_lower_src_upper(self.lower.to_image(x), xs),
            (false, true) => self.greens_upper_src_lower(x, self.lower.to_image(xs)),
            (false, false) => {
                self.greens_lower_src_lower(self.lower.to_image(x), self.lower.to_image(xs))
            }
        }
    }

    /// Gradient of `greens` in the native coordinates of the target's side:
    /// d/dx above the interface, d/dX below.
    pub fn greens_gradient(&self, x: [f64; 2], xs: [f64; 2]) -> Result<[Complex64; 2], BackgroundError> {
        if xs[1] == 0.0 {
            return Err(BackgroundError::SourceOnInterface);
        }
        match (xs[1] > 0.0, x[1] >= 0.0) {
            (true, true) => self.greens_upper_src_upper_gradient(x, xs),
            (true, false) => self.greens_lower_src_upper_gradient(self.lower.to_image(x), xs),
            (false, true) => self.greens_upper_src_lower_gradient(x, self.lower.to_image(xs)),
            (false, false) => {
                self.greens_lower_src_lower_gradient(self.lower.to_image(x), self.lower.to_image(xs))
            }
        }
    }

    /// Closed-form far-field pattern of the Green's function for a source in
    /// the upper half-plane, observation angle beta in [0, pi] (upper form).
    pub fn farfield_upper_src_upper(&self, beta: f64, xs: [f64; 2]) -> Complex64 {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let (sb, cb) = (beta.sin(), beta.cos());
        let pref = (I * PI / 4.0).exp() / (8.0 * PI * k0).sqrt();
        let mu1 = mu(Complex64::new(-k0 * cb / a, 0.0), k0);
        let refl = (k0 * sb - m * a * mu1) / (k0 * sb + m * a * mu1);
        let direct = pref * (-I * k0 * (sb * xs[1] + cb * xs[0])).exp();
        let mirror = pref * (I * k0 * (sb * xs[1] - cb * xs[0])).exp() * refl;
        direct + mirror
    }

    /// Far-field below the interface (image angle beta~ in [pi, 2pi]) for a
    /// source in the upper half-plane; pattern multiplies e^{i k0 |X|}/sqrt|X|.
    /// Stationary-phase evaluation of the transmitted integral at the saddle
    /// xi = -k0 cos(beta~).
    pub fn farfield_lower_src_upper(&self, beta_t: f64, xs: [f64; 2]) -> Complex64 {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let (sb, cb) = (beta_t.sin(), beta_t.cos());
        let mu_c = mu(Complex64::new(a * k0 * cb, 0.0), k0);
        let num = -k0 * sb * a * ((I * PI / 4.0).exp())
            * (I * (mu_c * xs[1] - a * k0 * cb * xs[0])).exp();
        num / ((2.0 * PI * k0).sqrt() * (mu_c - m * a * k0 * sb))
    }

    /// Far-field above the interface for a source below (image coords Xs).
    pub fn farfield_upper_src_lower(&self, beta: f64, xxs: [f64; 2]) -> Complex64 {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let (sb, cb) = (beta.sin(), beta.cos());
        let mu_c = mu(Complex64::new(k0 * cb / a, 0.0), k0);
        let num = k0 * sb * (I * PI / 4.0).exp()
            * (I * (-mu_c * xxs[1] - k0 * cb / a * xxs[0])).exp();
        num / ((2.0 * PI * k0).sqrt() * (k0 * sb + m * a * mu_c))
    }

    /// Far-field below the interface for a source below.
    pub fn farfield_lower_src_lower(&self, beta_t: f64, xxs: [f64; 2]) -> Complex64 {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let (sb, cb) = (beta_t.sin(), beta_t.cos());
        let pref = (I * PI / 4.0).exp() / (8.0 * self.lower.det_m * PI * k0).sqrt();
        let direct = (-I * k0 * (sb * xxs[1] + cb * xxs[0])).exp();
        let mu_c = mu(Complex64::new(a * k0 * cb, 0.0), k0);
        // mirror carries the image-source height phase and the reflection
        // coefficient at the saddle (|sin| = -sin for lower angles)
        let refl = (-m * a * k0 * sb - mu_c) / (-m * a * k0 * sb + mu_c);
        let mirror = (I * k0 * (sb * xxs[1] - cb * xxs[0])).exp() * refl;
        pref * (direct + mirror)
    }

    /// Plane-wave background, upper half-plane form (incident plus
    /// reflected), accepting complexified coordinates.
    pub fn plane_upper_c(&self, x: [Complex64; 2], theta: f64) -> Complex64 {
        let k0 = self.k0;
        let (st, ct) = (theta.sin(), theta.cos());
        let inc = (I * k0 * (ct * x[0] - st * x[1])).exp();
        let refl = self.reflection_coefficient(theta) * (I * k0 * (ct * x[0] + st * x[1])).exp();
        inc + refl
    }

    /// Gradient of `plane_upper_c`.
    pub fn plane_upper_gradient_c(&self, x: [Complex64; 2], theta: f64) -> [Complex64; 2] {
        let k0 = self.k0;
        let (st, ct) = (theta.sin(), theta.cos());
        let inc = (I * k0 * (ct * x[0] - st * x[1])).exp();
        let refl = self.reflection_coefficient(theta) * (I * k0 * (ct * x[0] + st * x[1])).exp();
        [
            I * k0 * ct * (inc + refl),
            I * k0 * (-st * inc + st * refl),
        ]
    }

    /// Plane-wave background transmitted into the lower half-plane, image
    /// coordinates, complexified.
    pub fn plane_lower_c(&self, xx: [Complex64; 2], theta: f64) -> Complex64 {
        let (k0, a) = (self.k0, self.alpha());
        let ct = theta.cos();
        let muc = mu(Complex64::new(k0 * ct / a, 0.0), k0);
        self.transmission_coefficient(theta) * (I * (-muc * xx[1] + k0 * ct / a * xx[0])).exp()
    }

    pub fn plane_lower_gradient_c(&self, xx: [Complex64; 2], theta: f64) -> [Complex64; 2] {
        let (k0, a) = (self.k0, self.alpha());
        let ct = theta.cos();
        let muc = mu(Complex64::new(k0 * ct / a, 0.0), k0);
        let u = self.transmission_coefficient(theta) * (I * (-muc * xx[1] + k0 * ct / a * xx[0])).exp();
        [I * k0 * ct / a * u, -I * muc * u]
    }

    pub fn reflection_coefficient(&self, theta: f64) -> Complex64 {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let muc = mu(Complex64::new(k0 * theta.cos() / a, 0.0), k0);
        (k0 * theta.sin() - m * a * muc) / (k0 * theta.sin() + m * a * muc)
    }

    pub fn transmission_coefficient(&self, theta: f64) -> Complex64 {
        let (k0, m, a) = (self.k0, self.m(), self.alpha());
        let muc = mu(Complex64::new(k0 * theta.cos() / a, 0.0), k0);
        2.0 * k0 * theta.sin() / (k0 * theta.sin() + m * a * muc)
    }

    /// Free-space incident cylindrical wave at complexified coordinates.
    pub fn incident_cylindrical_c(
        &self,
        x: [Complex64; 2],
        xs: [f64; 2],
    ) -> Result<Complex64, BackgroundError> {
        let rho = crate::specfun::complex_distance(
            x,
            [Complex64::new(xs[0], 0.0), Complex64::new(xs[1], 0.0)],
        )
        .map_err(|_| BackgroundError::TargetAtSource)?;
        let (h0, _) = hankel01(self.k0 * rho).map_err(|_| BackgroundError::TargetAtSource)?;
        Ok(0.25 * I * h0)
    }

    pub fn incident_cylindrical_gradient_c(
        &self,
        x: [Complex64; 2],
        xs: [f64; 2],
    ) -> Result<[Complex64; 2], BackgroundError> {
        let rho = crate::specfun::complex_distance(
            x,
            [Complex64::new(xs[0], 0.0), Complex64::new(xs[1], 0.0)],
        )
        .map_err(|_| BackgroundError::TargetAtSource)?;
        let (_, h1) = hankel01(self.k0 * rho).map_err(|_| BackgroundError::TargetAtSource)?;
        let c = -0.25 * I * self.k0 * h1 / rho;
        Ok([c * (x[0] - xs[0]), c * (x[1] - xs[1])])
    }
}

/// Quadrature of a smooth closed-arc integral by Gauss panels (used by the
/// representation and far-field checks over test contours).
pub fn arc_gauss<F>(f: &F, a: f64, b: f64, panels: usize, order: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (x, w) = gauss_legendre(order);
    let mut s = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let pa = a + (b - a) * p as f64 / panels as f64;
        let pb = a + (b - a) * (p + 1) as f64 / panels as f64;
        let g = |z: Complex64| f(z.re);
        s += panel_complex(&g, Complex64::new(pa, 0.0), Complex64::new(pb, 0.0), &x, &w);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::{material_matrix, PermittivityTensor};

    fn media_sec6() -> Background {
        let eps = PermittivityTensor::new(4.0, 1.0, 9.0, 1.0).unwrap();
        let med = crate::media::derive_medium(material_matrix(&eps).unwrap()).unwrap();
        Background::new(2.0 * PI, med)
    }

    fn media_iso() -> Background {
        let med = crate::media::derive_medium(material_matrix(&PermittivityTensor::identity()).unwrap()).unwrap();
        Background::new(2.0 * PI, med)
    }

    #[test]
    fn sommerfeld_identity() {
        // int (1/mu) e^{i mu h + i xi d} dxi = pi H0(k0 sqrt(h^2+d^2))
        let k0 = 2.0 * PI;
        for &(h, d) in &[(0.5, 0.0), (0.2, 1.3), (1.0, -2.0), (0.1, 3.0)] {
            let f = |xi: Complex64| (I * (mu(xi, k0) * h + xi * d)).exp() / mu(xi, k0);
            let got = spectral_integrate(&f, k0, &[k0], h, d.abs()).unwrap();
            let r = (h * h + d * d).sqrt();
            let expect = PI * hankel01(Complex64::new(k0 * r, 0.0)).unwrap().0;
            let rel = (got - expect).norm() / expect.norm();
            assert!(rel < 1e-12, "h={h} d={d} rel={rel:e}");
        }
    }

    #[test]
    fn even_integrand_symmetry() {
        // symmetric integrand: the odd part of e^{i xi d} integrates to zero,
        // so d and -d give identical values
        let k0 = 2.0 * PI;
        let f = |d: f64| {
            let g = move |xi: Complex64| (I * (mu(xi, k0) * 0.4 + xi * d)).exp() / mu(xi, k0);
            spectral_integrate(&g, k0, &[k0], 0.4, d.abs()).unwrap()
        };
        let a = f(1.1);
        let b = f(-1.1);
        assert!((a - b).norm() < 1e-13 * a.norm());
    }

    #[test]
    fn matched_media_reflection_vanishes() {
        let bg = media_iso();
        let x = [0.3, 0.7];
        let xs = [-0.2, 0.4];
        let g = bg.greens(x, xs).unwrap();
        let phi = bg.phi(x, xs).unwrap();
        assert!((g - phi).norm() < 1e-12 * phi.norm());
        // and the reflection coefficient is zero
        assert!(bg.reflection_coefficient(1.1).norm() < 1e-14);
    }

    #[test]
    fn no_decay_rejected() {
        let bg = media_sec6();
        // extension below the source mirror depth must fail
        let r = bg.greens_upper_src_upper([0.0, -0.2], [0.0, 0.1]);
        assert!(matches!(r, Err(BackgroundError::NoDecay(_))));
        assert!(matches!(bg.greens([0.0, 0.0], [0.0, 0.0]), Err(BackgroundError::SourceOnInterface)));
    }

    #[test]
    fn frozen_reference_values() {
        // brute-force high-precision quadrature of the spectral forms;
        // the reflected-integral reference itself is only good to ~2e-11
        let bg = media_sec6();
        let g = bg.greens([0.3, 0.7], [0.0, 0.1]).unwrap();
        let expect = Complex64::new(0.051824120407109166, -0.094142686730458922);
        assert!((g - expect).norm() < 5e-11, "{:e}", (g - expect).norm());
        let g = bg.greens([0.3, -0.4], [0.0, 0.1]).unwrap();
        let expect = Complex64::new(-0.00041004664585096197, 0.19685372286608393);
        assert!((g - expect).norm() < 1e-13, "{:e}", (g - expect).norm());
    }

    #[test]
    fn reciprocity() {
        let bg = media_sec6();
        let pairs = [
            ([0.3, -0.4], [0.0, 0.1]),
            ([0.5, 0.8], [-0.3, 0.2]),
            ([-0.4, -0.5], [0.6, -0.3]),
            ([0.2, 0.5], [0.1, -0.6]),
        ];
        for (x, xs) in pairs {
            let a = bg.greens(x, xs).unwrap();
            let b = bg.greens(xs, x).unwrap();
            assert!((a - b).norm() < 1e-10 * a.norm(), "x={x:?} xs={xs:?}: {:e}", (a - b).norm() / a.norm());
        }
    }

    #[test]
    fn interface_jump_conditions() {
        // value continuous and d_{x2} G = alpha sqrt|M| d_{X2} G_- on x2 = 0
        let bg = media_sec6();
        let xs = [0.0, 0.1];
        for &x1 in &[0.37, -0.8, 1.4] {
            let up = bg.greens_upper_src_upper([x1, 0.0], xs).unwrap();
            let xx0 = bg.lower.to_image([x1, 0.0]);
            let dn = bg.greens_lower_src_upper(xx0, xs).unwrap();
            assert!((up - dn).norm() < 1e-10 * up.norm(), "value jump {:e}", (up - dn).norm() / up.norm());
            let gu = bg.greens_upper_src_upper_gradient([x1, 0.0], xs).unwrap();
            let gl = bg.greens_lower_src_upper_gradient(xx0, xs).unwrap();
            let lhs = gu[1];
            let rhs = bg.alpha() * bg.m() * gl[1];
            assert!((lhs - rhs).norm() < 1e-9 * lhs.norm(), "deriv jump {:e}", (lhs - rhs).norm() / lhs.norm());
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let bg = media_sec6();
        let xs = [0.0, 0.25];
        let h = 1e-5;
        for &x in &[[0.4, 0.6], [-0.7, 0.9], [0.2, -0.5]] {
            if x[1] >= 0.0 {
                let g = bg.greens_gradient(x, xs).unwrap();
                for dim in 0..2 {
                    let mut xp = x;
                    let mut xm = x;
                    xp[dim] += h;
                    xm[dim] -= h;
                    let fd = (bg.greens(xp, xs).unwrap() - bg.greens(xm, xs).unwrap()) / (2.0 * h);
                    assert!((fd - g[dim]).norm() < 1e-7 * g[dim].norm().max(1.0), "dim {dim}: {:e}", (fd - g[dim]).norm());
                }
            } else {
                // lower side gradient is in image coordinates
                let g = bg.greens_gradient(x, xs).unwrap();
                let xx = bg.lower.to_image(x);
                for dim in 0..2 {
                    let mut xp = xx;
                    let mut xm = xx;
                    xp[dim] += h;
                    xm[dim] -= h;
                    let fd = (bg.greens_lower_src_upper(xp, xs).unwrap()
                        - bg.greens_lower_src_upper(xm, xs).unwrap())
                        / (2.0 * h);
                    assert!((fd - g[dim]).norm() < 1e-7 * g[dim].norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn isotropic_gradient_closed_form() {
        let bg = media_iso();
        let x = [0.4, 0.7];
        let xs = [-0.1, 0.2];
        let g = bg.greens_gradient(x, xs).unwrap();
        let pg = bg.phi_gradient(x, xs).unwrap();
        assert!((g[0] - pg[0]).norm() < 1e-12 && (g[1] - pg[1]).norm() < 1e-12);
    }

    #[test]
    fn horizontal_translation_symmetry() {
        // flat background is invariant under common x1 shifts; an x1-odd
        // configuration has an odd d_{x1} G
        let bg = media_sec6();
        let xs = [0.0, 0.3];
        let gp = bg.greens_gradient([0.8, 0.5], xs).unwrap();
        let gm = bg.greens_gradient([-0.8, 0.5], xs).unwrap();
        assert!((gp[0] + gm[0]).norm() < 1e-10 * gp[0].norm());
        assert!((gp[1] - gm[1]).norm() < 1e-10 * gp[1].norm());
    }

    #[test]
    fn plane_background_interface_conditions() {
        let bg = media_sec6();
        let theta = PI / 3.0;
        for k in 0..50 {
            let x1 = -2.0 + 4.0 * k as f64 / 49.0;
            let xc = [Complex64::new(x1, 0.0), Complex64::new(0.0, 0.0)];
            let xxc = [Complex64::new(bg.alpha() * x1, 0.0), Complex64::new(0.0, 0.0)];
            let up = bg.plane_upper_c(xc, theta);
            let dn = bg.plane_lower_c(xxc, theta);
            assert!((up - dn).norm() < 1e-12, "value mismatch {:e}", (up - dn).norm());
            let gu = bg.plane_upper_gradient_c(xc, theta);
            let gl = bg.plane_lower_gradient_c(xxc, theta);
            let rhs = bg.alpha() * bg.m() * gl[1];
            assert!((gu[1] - rhs).norm() < 1e-12 * gu[1].norm().max(1.0));
        }
    }

    #[test]
    fn normal_incidence_reflection() {
        // theta = pi/2: R = (1 - 3/sqrt(35)) / (1 + 3/sqrt(35)), T = 1 + R
        let bg = media_sec6();
        let r = bg.reflection_coefficient(PI / 2.0);
        let ma = 3.0 / 35f64.sqrt();
        let expect = (1.0 - ma) / (1.0 + ma);
        assert!((r - expect).norm() < 1e-14);
        assert!((r.re - 0.32706).abs() < 1e-5);
        let t = bg.transmission_coefficient(PI / 2.0);
        assert!((t - (1.0 + r)).norm() < 1e-14);
    }

    #[test]
    fn plane_background_helmholtz_residual() {
        // 5-point finite-difference residual of the anisotropic operator on
        // the lower side, div(M grad u) + k0^2 u, via the image form
        let bg = media_sec6();
        let theta = 1.1;
        let f = |xx: [f64; 2]| bg.plane_lower_c([Complex64::new(xx[0], 0.0), Complex64::new(xx[1], 0.0)], theta);
        let h = 1e-4;
        let xx = [0.7, -0.9];
        let lap = (f([xx[0] + h, xx[1]]) + f([xx[0] - h, xx[1]]) + f([xx[0], xx[1] + h])
            + f([xx[0], xx[1] - h])
            - 4.0 * f(xx))
            / (h * h);
        let res = lap + bg.k0 * bg.k0 * f(xx);
        assert!(res.norm() < 1e-4, "residual {:e}", res.norm());
    }

    #[test]
    fn greens_helmholtz_residual_richardson() {
        // residual of the 5-point Laplacian + k0^2 G decays at O(h^2)
        let bg = media_sec6();
        let xs = [0.0, 0.1];
        let x = [0.45, 0.65];
        let resid = |h: f64| {
            let g = |p: [f64; 2]| bg.greens(p, xs).unwrap();
            let lap = (g([x[0] + h, x[1]]) + g([x[0] - h, x[1]]) + g([x[0], x[1] + h])
                + g([x[0], x[1] - h])
                - 4.0 * g(x))
                / (h * h);
            (lap + bg.k0 * bg.k0 * g(x)).norm()
        };
        let r1 = resid(2e-3);
        let r2 = resid(1e-3);
        let slope = (r1 / r2).log2();
        assert!((slope - 2.0).abs() < 0.3, "slope {slope}");
    }

    #[test]
    fn farfield_asymptotics() {
        // sqrt(R) e^{-i k0 R} G(R dir; xs) -> G_inf with O(1/R) remainder:
        // the defect halves from R = 40 to R = 80 wavelengths
        let bg = media_sec6();
        let xs = [0.2, 0.4];
        for &beta in &[0.4f64, 1.2, 2.3] {
            let dir = [beta.cos(), beta.sin()];
            let pat = bg.farfield_upper_src_upper(beta, xs);
            let defect = |rr: f64| {
                let x = [rr * dir[0], rr * dir[1]];
                let g = bg.greens(x, xs).unwrap();
                (rr.sqrt() * (Complex64::new(0.0, -bg.k0 * rr)).exp() * g - pat).norm()
            };
            let d40 = defect(40.0);
            let d80 = defect(80.0);
            assert!(d40 < 0.05 * pat.norm(), "beta={beta}: defect {d40:e}");
            let ratio = d80 / d40;
            assert!((ratio - 0.5).abs() < 0.15, "beta={beta}: ratio {ratio}");
        }
    }

    #[test]
    fn farfield_lower_asymptotics() {
        // propagating transmitted directions need |alpha cos(beta~)| < 1
        let bg = media_sec6();
        let xs = [0.2, 0.4];
        for &bt in &[4.55f64, 4.712, 4.9] {
            let pat = bg.farfield_lower_src_upper(bt, xs);
            let defect = |rr: f64| {
                let xx = [rr * bt.cos(), rr * bt.sin()];
                let g = bg.greens_lower_src_upper(xx, xs).unwrap();
                (rr.sqrt() * (Complex64::new(0.0, -bg.k0 * rr)).exp() * g - pat).norm()
            };
            let d40 = defect(40.0);
            let d80 = defect(80.0);
            assert!(d40 < 0.2 * pat.norm(), "bt={bt}: defect {d40:e} vs {:e}", pat.norm());
            assert!((d80 / d40 - 0.5).abs() < 0.15, "bt={bt}: ratio {}", d80 / d40);
        }
    }

    #[test]
    fn farfield_source_below_asymptotics() {
        let bg = media_sec6();
        let xs = [0.15, -0.35];
        let xxs = bg.lower.to_image(xs);
        // upper observation of a buried source
        for &beta in &[0.6f64, 1.5707, 2.4] {
            let pat = bg.farfield_upper_src_lower(beta, xxs);
            let defect = |rr: f64| {
                let x = [rr * beta.cos(), rr * beta.sin()];
                let g = bg.greens(x, xs).unwrap();
                (rr.sqrt() * (Complex64::new(0.0, -bg.k0 * rr)).exp() * g - pat).norm()
            };
            let (d40, d80) = (defect(40.0), defect(80.0));
            assert!(d40 < 0.05 * pat.norm(), "beta={beta}");
            assert!((d80 / d40 - 0.5).abs() < 0.2, "beta={beta}: ratio {}", d80 / d40);
        }
        // lower observation, propagating reflector angles
        for &bt in &[4.55f64, 4.8] {
            let pat = bg.farfield_lower_src_lower(bt, xxs);
            let defect = |rr: f64| {
                let xx = [rr * bt.cos(), rr * bt.sin()];
                let g = bg.greens_lower_src_lower(xx, xxs).unwrap();
                (rr.sqrt() * (Complex64::new(0.0, -bg.k0 * rr)).exp() * g - pat).norm()
            };
            let (d40, d80) = (defect(40.0), defect(80.0));
            assert!(d40 < 0.05 * pat.norm(), "bt={bt}");
            assert!((d80 / d40 - 0.5).abs() < 0.2, "bt={bt}: ratio {}", d80 / d40);
        }
    }

    #[test]
    fn radiation_condition_decay() {
        // sqrt(R)(d_R - i k0) G -> 0 along upper rays
        let bg = media_sec6();
        let xs = [0.0, 0.1];
        for &beta in &[0.3f64, 1.0, 1.9, 2.8] {
            let dir = [beta.cos(), beta.sin()];
            let src = |rr: f64| {
                let x = [rr * dir[0], rr * dir[1]];
                let g = bg.greens_gradient(x, xs).unwrap();
                let dr = g[0] * dir[0] + g[1] * dir[1];
                let v = bg.greens(x, xs).unwrap();
                (rr.sqrt() * (dr - I * bg.k0 * v)).norm()
            };
            let s20 = src(20.0);
            let s40 = src(40.0);
            assert!(s40 < s20, "beta={beta}");
            assert!(s40 < 2e-2, "beta={beta}: {s40:e}");
        }
    }
}

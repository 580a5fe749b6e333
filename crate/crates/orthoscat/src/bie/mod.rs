//! Nystrom discretization of the complexified layer operators on the
//! interface curve and its image, Neumann-to-Dirichlet matrices, the coupled
//! interface system, and field evaluation by the representation integral.

pub mod alpert;

use crate::background::{Background, BackgroundError};
use crate::geometry::{BoundaryCurve, GradedMesh, build_mesh, grading, grading_derivative};
use crate::linalg::{lu_factor, CMatrix, LinalgError};
use crate::media::Mat2;
use crate::rpml::StretchProfile;
use crate::specfun::{complex_distance, hankel01, SpecFunError};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use thiserror::Error;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Error)]
pub enum BieError {
    #[error("kernel branch cut crossed between parameters t={t_target:.6} and t={t_source:.6}: {source}")]
    Assembly {
        t_target: f64,
        t_source: f64,
        source: SpecFunError,
    },
    #[error("evaluation point crossed the kernel branch cut: {0}")]
    EvaluationBranchCut(SpecFunError),
    #[error("interface operator close to an interior eigenfrequency (condition estimate {cond:.3e}); adjust the truncation or the layer parameters")]
    Eigenfrequency { cond: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Background(#[from] BackgroundError),
    #[error("{0}")]
    Config(String),
}

/// Per-point data on a (possibly stretched, possibly image-mapped) curve.
#[derive(Debug, Clone, Copy)]
pub struct SideNode {
    /// Complexified position.
    pub pos_c: [Complex64; 2],
    /// Real position before complexification.
    pub pos: [f64; 2],
    /// Real unit normal, outward of the solution domain.
    pub normal: [f64; 2],
    /// Parameterization speed |x'(t)|.
    pub speed: f64,
    /// 1 + i sigma at the node's stretched coordinate.
    pub q: Complex64,
}

/// One side of the interface problem: the physical curve with a horizontal
/// stretching, optionally pushed through a transition matrix first.
pub struct SideGeometry {
    curve: BoundaryCurve,
    breaks: Vec<f64>,
    s_breaks: Vec<f64>,
    grading_p: u32,
    /// None for the upper side; Some(T) maps the curve into image
    /// coordinates before stretching the first coordinate.
    image: Option<Mat2>,
    profile: StretchProfile,
    pub closed: bool,
}

impl SideGeometry {
    pub fn upper(curve: &BoundaryCurve, mesh: &GradedMesh, profile: StretchProfile) -> Self {
        Self::build(curve, mesh, None, profile)
    }

    /// Image side: the curve is mapped by `tmat`; the absorbing profile is
    /// the upper one rescaled horizontally by tmat[0][0] so the two layers
    /// match along the interface.
    pub fn lower_image(
        curve: &BoundaryCurve,
        mesh: &GradedMesh,
        tmat: Mat2,
        upper_profile: StretchProfile,
    ) -> Self {
        let scale = tmat.0[0][0];
        Self::build(curve, mesh, Some(tmat), upper_profile.scaled(scale))
    }

    fn build(
        curve: &BoundaryCurve,
        mesh: &GradedMesh,
        image: Option<Mat2>,
        profile: StretchProfile,
    ) -> Self {
        // cumulative arclength at panel breaks
        let mut s_breaks = vec![0.0];
        let mut acc = 0.0;
        for seg in &curve.segments {
            acc += seg.length();
            s_breaks.push(acc);
        }
        Self {
            curve: curve.clone(),
            breaks: mesh.breaks.clone(),
            s_breaks,
            grading_p: mesh.grading_p,
            image,
            profile,
            closed: mesh.closed,
        }
    }

    /// Evaluate the side data at an arbitrary periodic parameter t.
    pub fn at(&self, t: f64) -> SideNode {
        let t = t.rem_euclid(1.0);
        let t = if t == 0.0 { 1.0 } else { t };
        // locate panel
        let mut seg = self.breaks.len() - 2;
        for i in 0..self.breaks.len() - 1 {
            if t <= self.breaks[i + 1] + 1e-15 {
                seg = i;
                break;
            }
        }
        let (t0, t1) = (self.breaks[seg], self.breaks[seg + 1]);
        let (s0, s1) = (self.s_breaks[seg], self.s_breaks[seg + 1]);
        let s = grading(t, t0, t1, s0, s1, self.grading_p).expect("parameter inside panel");
        let sp = grading_derivative(t, t0, t1, s0, s1, self.grading_p);
        let u = (s - s0).clamp(0.0, self.curve.segments[seg].length());
        let (pos, tau) = self.curve.segments[seg].at(u);
        match &self.image {
            None => {
                let q = self.profile.q1(pos[0]);
                let x1c = self.profile.stretch1(pos[0]);
                SideNode {
                    pos_c: [x1c, Complex64::new(pos[1], 0.0)],
                    pos,
                    normal: [tau[1], -tau[0]],
                    speed: sp,
                    q,
                }
            }
            Some(tm) => {
                let xx = tm.mul_vec(pos);
                let v = tm.mul_vec(tau);
                let stretch = v[0].hypot(v[1]);
                let taun = [v[0] / stretch, v[1] / stretch];
                let q = self.profile.q1(xx[0]);
                let x1c = self.profile.stretch1(xx[0]);
                SideNode {
                    pos_c: [x1c, Complex64::new(xx[1], 0.0)],
                    pos: xx,
                    normal: [-taun[1], taun[0]],
                    speed: sp * stretch,
                    q,
                }
            }
        }
    }

    /// Endpoints of the (mapped) curve.
    pub fn endpoints(&self) -> ([f64; 2], [f64; 2]) {
        let a = self.curve.segments[0].start();
        let b = self.curve.segments.last().unwrap().end();
        match &self.image {
            None => (a, b),
            Some(tm) => (tm.mul_vec(a), tm.mul_vec(b)),
        }
    }
}

/// Angle subtended by the endpoints at `x`, measured through the domain side
/// indicated by the unit vector `into` (the inward normal at x).
fn domain_angle(a: [f64; 2], b: [f64; 2], x: [f64; 2], into: [f64; 2]) -> f64 {
    let u = [a[0] - x[0], a[1] - x[1]];
    let v = [b[0] - x[0], b[1] - x[1]];
    let nu = u[0].hypot(u[1]);
    let nv = v[0].hypot(v[1]);
    if nu < 1e-12 || nv < 1e-12 {
        return PI; // endpoint node: treated as a smooth point
    }
    let dot = (u[0] * v[0] + u[1] * v[1]) / (nu * nv);
    let theta = dot.clamp(-1.0, 1.0).acos();
    // does `into` lie inside the sector swept from u to v?
    let cross_uv = u[0] * v[1] - u[1] * v[0];
    let inside = if cross_uv >= 0.0 {
        (u[0] * into[1] - u[1] * into[0]) >= 0.0 && (into[0] * v[1] - into[1] * v[0]) >= 0.0
    } else {
        (v[0] * into[1] - v[1] * into[0]) >= 0.0 && (into[0] * u[1] - into[1] * u[0]) >= 0.0
    };
    if inside {
        theta
    } else {
        2.0 * PI - theta
    }
}

struct KernelValues {
    s: Complex64,
    k: Complex64,
    k0: Complex64,
}

/// Single-, double- and Laplace-double-layer kernels between a target node
/// and a source node on the same stretched curve. The S kernel multiplies
/// the scaled density; K and K0 kernels multiply plain traces and carry the
/// source speed.
fn kernels(k0: f64, target: &SideNode, src: &SideNode) -> Result<KernelValues, SpecFunError> {
    let rho = complex_distance(src.pos_c, target.pos_c)?;
    if rho.norm() * k0 < 1e-12 {
        // correction samples at a stationary corner or endpoint collapse
        // onto the node in floating point; the matching densities vanish to
        // order p-1 there, so a clamped log-scale entry is exact to roundoff
        let (h0c, _) = hankel01(Complex64::new(1e-12 / k0, 0.0) * k0)?;
        return Ok(KernelValues {
            s: 0.5 * I * h0c,
            k: Complex64::new(0.0, 0.0),
            k0: Complex64::new(0.0, 0.0),
        });
    }
    let z = k0 * rho;
    let (h0, h1) = hankel01(z)?;
    let dir = [(src.pos_c[0] - target.pos_c[0]) / rho, (src.pos_c[1] - target.pos_c[1]) / rho];
    // conormal weight (nu1 q2, nu2 q1) with sigma2 = 0
    let w = [Complex64::new(src.normal[0], 0.0), src.q * src.normal[1]];
    let wdotdir = w[0] * dir[0] + w[1] * dir[1];
    let s = 0.5 * I * h0;
    let k = 2.0 * (-0.25 * I * k0) * h1 * wdotdir * src.speed;
    let k0k = 2.0 * (-1.0 / (2.0 * PI)) * wdotdir / rho * src.speed;
    Ok(KernelValues { s, k, k0: k0k })
}

/// Discretized layer operators of one side.
pub struct SideOperators {
    pub s: CMatrix,
    pub k: CMatrix,
    /// K_0[1] values per node (includes the angle term).
    pub k0_one: Vec<Complex64>,
    pub nodes: Vec<SideNode>,
}

/// Assemble the Nystrom matrices on `n` periodic nodes of one side.
pub fn assemble_side(side: &SideGeometry, n: usize, k0: f64) -> Result<SideOperators, BieError> {
    let h = 1.0 / n as f64;
    let nodes: Vec<SideNode> = (0..n).map(|j| side.at((j + 1) as f64 * h)).collect();
    let (pa, pb) = side.endpoints();

    // cardinal tables for the correction stencil: card[k][dm] with
    // dm = (m - j) mod n, one table per node offset and side
    let nk = alpert::LOG_RULE_NODES.len();
    let mut card = vec![vec![0.0f64; n]; 2 * nk];
    for (kk, &chi) in alpert::LOG_RULE_NODES.iter().enumerate() {
        for dm in 0..n {
            let dmf = dm as f64 * h;
            card[2 * kk][dm] = alpert::trig_cardinal(n, chi * h - dmf);
            card[2 * kk + 1][dm] = alpert::trig_cardinal(n, -chi * h - dmf);
        }
    }

    let rows: Result<Vec<(Vec<Complex64>, Vec<Complex64>, Complex64)>, BieError> = (0..n)
        .into_par_iter()
        .map(|j| {
            let tj = (j + 1) as f64 * h;
            let target = &nodes[j];
            let mut srow = vec![Complex64::new(0.0, 0.0); n];
            let mut krow = vec![Complex64::new(0.0, 0.0); n];
            let mut k0acc = Complex64::new(0.0, 0.0);
            for (m, src) in nodes.iter().enumerate() {
                if alpert::within_skip(m, j, n) {
                    continue;
                }
                let kv = kernels(k0, target, src).map_err(|e| BieError::Assembly {
                    t_target: tj,
                    t_source: (m + 1) as f64 * h,
                    source: e,
                })?;
                srow[m] += h * kv.s;
                krow[m] += h * kv.k;
                k0acc += h * kv.k0;
            }
            for (kk, (&chi, &wk)) in alpert::LOG_RULE_NODES
                .iter()
                .zip(alpert::LOG_RULE_WEIGHTS.iter())
                .enumerate()
            {
                for (sgn, table) in [(1.0, &card[2 * kk]), (-1.0, &card[2 * kk + 1])] {
                    let tstar = tj + sgn * chi * h;
                    let src = side.at(tstar);
                    let kv = kernels(k0, target, &src).map_err(|e| BieError::Assembly {
                        t_target: tj,
                        t_source: tstar,
                        source: e,
                    })?;
                    let cs = h * wk * kv.s;
                    let ck = h * wk * kv.k;
                    for m in 0..n {
                        let b = table[(m + n - j) % n];
                        if b != 0.0 {
                            srow[m] += cs * b;
                            krow[m] += ck * b;
                        }
                    }
                    k0acc += h * wk * kv.k0;
                }
            }
            let angle = if side.closed {
                0.0
            } else {
                domain_angle(pa, pb, target.pos, [-target.normal[0], -target.normal[1]])
            };
            let k0_one = Complex64::new(-angle / PI, 0.0) + k0acc;
            Ok((srow, krow, k0_one))
        })
        .collect();
    let rows = rows?;

    let mut s = CMatrix::zeros(n, n);
    let mut k = CMatrix::zeros(n, n);
    let mut k0_one = Vec::with_capacity(n);
    for (j, (srow, krow, k01)) in rows.into_iter().enumerate() {
        for m in 0..n {
            s.set(j, m, srow[m]);
            k.set(j, m, krow[m]);
        }
        k0_one.push(k01);
    }
    Ok(SideOperators { s, k, k0_one, nodes })
}

/// Neumann-to-Dirichlet matrix (K - diag(K0[1]))^{-1} S with a condition
/// estimate.
pub struct NtdMap {
    pub matrix: CMatrix,
    pub condition: f64,
}

pub fn ntd(ops: &SideOperators) -> Result<NtdMap, BieError> {
    let n = ops.k.n_rows;
    let mut a = ops.k.clone();
    for j in 0..n {
        let d = a.get(j, j) - ops.k0_one[j];
        a.set(j, j, d);
    }
    let anorm = a.one_norm();
    let lu = lu_factor(a)?;
    let condition = anorm * lu.inverse_one_norm_estimate();
    if condition > 1e12 {
        return Err(BieError::Eigenfrequency { cond: condition });
    }
    Ok(NtdMap { matrix: lu.solve_mat(&ops.s), condition })
}

/// Solved interface densities and traces.
pub struct CoupledSolution {
    /// Scaled conormal density on the upper curve.
    pub psi_upper: Vec<Complex64>,
    /// Scaled conormal density on the image curve, in the preimage-speed
    /// convention of the coupled system.
    pub psi_lower: Vec<Complex64>,
    /// Trace of the outgoing field on the upper curve.
    pub trace_upper: Vec<Complex64>,
    /// Trace of the outgoing image field on the image curve.
    pub trace_lower: Vec<Complex64>,
    pub residual: f64,
    pub condition: f64,
}

/// Assemble and solve the 2n x 2n coupled system
/// [N+  -N-*diag(ratio); I  diag(gamma)] [psi+; psi-] = [F; G].
pub fn couple_and_solve(
    n_up: &NtdMap,
    n_low: &NtdMap,
    speed_ratio: &[f64],
    gamma: &[f64],
    rhs_f: &[Complex64],
    rhs_g: &[Complex64],
) -> Result<CoupledSolution, BieError> {
    let n = n_up.matrix.n_rows;
    let mut block = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            block.set(i, j, n_up.matrix.get(i, j));
            block.set(i, n + j, -n_low.matrix.get(i, j) * speed_ratio[j]);
        }
        block.set(n + i, i, Complex64::new(1.0, 0.0));
        block.set(n + i, n + i, Complex64::new(gamma[i], 0.0));
    }
    let mut rhs = Vec::with_capacity(2 * n);
    rhs.extend_from_slice(rhs_f);
    rhs.extend_from_slice(rhs_g);
    let (x, residual, condition) = crate::linalg::solve_checked(&block, &rhs)?;
    if condition > 1e13 {
        return Err(BieError::Eigenfrequency { cond: condition });
    }
    let psi_upper = x[..n].to_vec();
    let psi_lower = x[n..].to_vec();
    let trace_upper = mat_vec(&n_up.matrix, &psi_upper);
    let scaled: Vec<Complex64> =
        psi_lower.iter().zip(speed_ratio).map(|(v, r)| v * r).collect();
    let trace_lower = mat_vec(&n_low.matrix, &scaled);
    Ok(CoupledSolution {
        psi_upper,
        psi_lower,
        trace_upper,
        trace_lower,
        residual,
        condition,
    })
}

fn mat_vec(a: &CMatrix, x: &[Complex64]) -> Vec<Complex64> {
    a.mul_vec(x)
}

/// Representation-integral evaluation of the outgoing field from solved
/// boundary data on one side. `psi_scaled` is the image-speed scaled density
/// on that side's curve.
pub fn evaluate_representation(
    side_nodes: &[SideNode],
    psi_scaled: &[Complex64],
    trace: &[Complex64],
    target: [Complex64; 2],
    k0: f64,
) -> Result<Complex64, BieError> {
    let n = side_nodes.len();
    let h = 1.0 / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, src) in side_nodes.iter().enumerate() {
        let rho = complex_distance(src.pos_c, target).map_err(BieError::EvaluationBranchCut)?;
        let (h0, h1) = hankel01(k0 * rho).map_err(BieError::EvaluationBranchCut)?;
        let phi = 0.25 * I * h0;
        let dir = [(src.pos_c[0] - target[0]) / rho, (src.pos_c[1] - target[1]) / rho];
        let w = [Complex64::new(src.normal[0], 0.0), src.q * src.normal[1]];
        let dphi = -0.25 * I * k0 * h1 * (w[0] * dir[0] + w[1] * dir[1]);
        acc += h * (phi * psi_scaled[m] - dphi * trace[m] * src.speed);
    }
    Ok(acc)
}

/// Distance from a real point to the nearest node of a side (crude
/// near-boundary indicator for evaluation warnings).
pub fn min_node_distance(side_nodes: &[SideNode], x: [f64; 2]) -> f64 {
    side_nodes
        .iter()
        .map(|nd| (nd.pos[0] - x[0]).hypot(nd.pos[1] - x[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Verification of the representation formula over a closed test contour:
/// reconstructs the background Green's function outside the contour from its
/// Cauchy data and also assembles the far-field from the same data.
pub struct RepresentationCheck {
    pub bg: Background,
    /// Contour radius (circle centered at the origin).
    pub radius: f64,
    pub nodes_per_arc: usize,
}

impl RepresentationCheck {
    /// Reconstruct u(x) = G(x; xs) at an exterior target x (upper half) from
    /// boundary data on the circle.
    pub fn reconstruct_upper(&self, x: [f64; 2], xs: [f64; 2]) -> Result<Complex64, BackgroundError> {
        let bg = &self.bg;
        let r0 = self.radius;
        let panels = self.nodes_per_arc / 16;
        let m = bg.lower.sqrt_det_m();
        // upper arc in physical coordinates
        let upper = crate::background::arc_gauss(
            &|th: f64| {
                let y = [r0 * th.cos(), r0 * th.sin()];
                let nu = [th.cos(), th.sin()];
                let u = bg.greens(y, xs).unwrap();
                let du = bg.greens_gradient(y, xs).unwrap();
                let dnu_u = du[0] * nu[0] + du[1] * nu[1];
                let g = bg.greens(y, x).unwrap();
                let dg = bg.greens_gradient(y, x).unwrap();
                let dnu_g = dg[0] * nu[0] + dg[1] * nu[1];
                (dnu_g * u - g * dnu_u) * r0
            },
            0.0,
            PI,
            panels.max(4),
            16,
        );
        // lower arc in image coordinates
        let tm = &bg.lower.t;
        let lower = crate::background::arc_gauss(
            &|th: f64| {
                let y = [r0 * th.cos(), r0 * th.sin()];
                let yy = tm.mul_vec(y);
                let tau = [-th.sin(), th.cos()];
                let v = tm.mul_vec(tau);
                let sp = v[0].hypot(v[1]);
                let taun = [v[0] / sp, v[1] / sp];
                let nun = [taun[1], -taun[0]]; // outward of the image region
                let u = bg.greens_lower_src_upper(yy, xs).unwrap();
                let du = bg.greens_lower_src_upper_gradient(yy, xs).unwrap();
                let dnu_u = du[0] * nun[0] + du[1] * nun[1];
                let g = bg.greens_lower_src_upper(yy, x).unwrap();
                let dg = bg.greens_lower_src_upper_gradient(yy, x).unwrap();
                let dnu_g = dg[0] * nun[0] + dg[1] * nun[1];
                (dnu_g * u - g * dnu_u) * r0 * sp
            },
            PI,
            2.0 * PI,
            panels.max(4),
            16,
        );
        Ok(upper + m * lower)
    }

    /// Far-field of u = G(.; xs) in the upper direction beta from the same
    /// contour data, using the closed-form pattern kernels.
    pub fn farfield_upper(&self, beta: f64, xs: [f64; 2]) -> Result<Complex64, BackgroundError> {
        let bg = &self.bg;
        let r0 = self.radius;
        let panels = self.nodes_per_arc / 16;
        let m = bg.lower.sqrt_det_m();
        let eps = 1e-6;
        let upper = crate::background::arc_gauss(
            &|th: f64| {
                let y = [r0 * th.cos(), r0 * th.sin()];
                let nu = [th.cos(), th.sin()];
                let u = bg.greens(y, xs).unwrap();
                let du = bg.greens_gradient(y, xs).unwrap();
                let dnu_u = du[0] * nu[0] + du[1] * nu[1];
                let g = bg.farfield_upper_src_upper(beta, y);
                // gradient of the pattern in its source position
                let gx = (bg.farfield_upper_src_upper(beta, [y[0] + eps, y[1]])
                    - bg.farfield_upper_src_upper(beta, [y[0] - eps, y[1]]))
                    / (2.0 * eps);
                let gy = (bg.farfield_upper_src_upper(beta, [y[0], y[1] + eps])
                    - bg.farfield_upper_src_upper(beta, [y[0], y[1] - eps]))
                    / (2.0 * eps);
                let dnu_g = gx * nu[0] + gy * nu[1];
                (dnu_g * u - g * dnu_u) * r0
            },
            0.0,
            PI,
            panels.max(4),
            16,
        );
        let tm = &bg.lower.t;
        let lower = crate::background::arc_gauss(
            &|th: f64| {
                let y = [r0 * th.cos(), r0 * th.sin()];
                let yy = tm.mul_vec(y);
                let tau = [-th.sin(), th.cos()];
                let v = tm.mul_vec(tau);
                let sp = v[0].hypot(v[1]);
                let taun = [v[0] / sp, v[1] / sp];
                let nun = [taun[1], -taun[0]];
                let u = bg.greens_lower_src_upper(yy, xs).unwrap();
                let du = bg.greens_lower_src_upper_gradient(yy, xs).unwrap();
                let dnu_u = du[0] * nun[0] + du[1] * nun[1];
                let g = bg.farfield_upper_src_lower(beta, yy);
                let gx = (bg.farfield_upper_src_lower(beta, [yy[0] + eps, yy[1]])
                    - bg.farfield_upper_src_lower(beta, [yy[0] - eps, yy[1]]))
                    / (2.0 * eps);
                let gy = (bg.farfield_upper_src_lower(beta, [yy[0], yy[1] + eps])
                    - bg.farfield_upper_src_lower(beta, [yy[0], yy[1] - eps]))
                    / (2.0 * eps);
                let dnu_g = gx * nun[0] + gy * nun[1];
                (dnu_g * u - g * dnu_u) * r0 * sp
            },
            PI,
            2.0 * PI,
            panels.max(4),
            16,
        );
        Ok(upper + m * lower)
    }
}

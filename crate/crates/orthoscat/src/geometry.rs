//! Interface curves, corner-graded parameterizations and meshes.
//!
//! A curve is an ordered list of smooth arclength-parameterized segments.
//! The global parameter t in [0,1] is split into one panel per segment;
//! within a panel the arclength is a graded function of t whose first p-1
//! derivatives vanish at the panel ends, which smooths densities across
//! corners and across the curve endpoints.

use crate::media::Mat2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("segment {0} has zero length")]
    DegenerateSegment(usize),
    #[error("segments {0} and {1} do not join continuously")]
    Disconnected(usize, usize),
    #[error("need at least 2 mesh points per segment, got {0}")]
    TooFewPoints(usize),
    #[error("grading exponent must be >= 2, got {0}")]
    BadGradingExponent(u32),
    #[error("parameter {t} outside panel [{t0}, {t1}]")]
    OutsidePanel { t: f64, t0: f64, t1: f64 },
}

/// One smooth piece of the interface.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Segment {
    Line { a: [f64; 2], b: [f64; 2] },
    /// Circular arc `center + radius (cos th, sin th)`, th from theta0 to
    /// theta1 (either orientation).
    Arc { center: [f64; 2], radius: f64, theta0: f64, theta1: f64 },
}

impl Segment {
    pub fn length(&self) -> f64 {
        match self {
            Segment::Line { a, b } => (b[0] - a[0]).hypot(b[1] - a[1]),
            Segment::Arc { radius, theta0, theta1, .. } => radius * (theta1 - theta0).abs(),
        }
    }

    pub fn start(&self) -> [f64; 2] {
        match self {
            Segment::Line { a, .. } => *a,
            Segment::Arc { center, radius, theta0, .. } => {
                [center[0] + radius * theta0.cos(), center[1] + radius * theta0.sin()]
            }
        }
    }

    pub fn end(&self) -> [f64; 2] {
        match self {
            Segment::Line { b, .. } => *b,
            Segment::Arc { center, radius, theta1, .. } => {
                [center[0] + radius * theta1.cos(), center[1] + radius * theta1.sin()]
            }
        }
    }

    /// Point and unit tangent at arclength u in [0, length].
    pub fn at(&self, u: f64) -> ([f64; 2], [f64; 2]) {
        match self {
            Segment::Line { a, b } => {
                let l = self.length();
                let tau = [(b[0] - a[0]) / l, (b[1] - a[1]) / l];
                ([a[0] + tau[0] * u, a[1] + tau[1] * u], tau)
            }
            Segment::Arc { center, radius, theta0, theta1 } => {
                let sgn = (theta1 - theta0).signum();
                let th = theta0 + sgn * u / radius;
                let pos = [center[0] + radius * th.cos(), center[1] + radius * th.sin()];
                let tau = [-sgn * th.sin(), sgn * th.cos()];
                (pos, tau)
            }
        }
    }
}

/// Piecewise-smooth interface curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub segments: Vec<Segment>,
    /// Closed curves wrap around; open curves run between two endpoints on
    /// the flat part of the interface.
    pub closed: bool,
}

impl BoundaryCurve {
    pub fn open(segments: Vec<Segment>) -> Result<Self, GeometryError> {
        Self::validate(&segments, false)?;
        Ok(Self { segments, closed: false })
    }

    pub fn closed(segments: Vec<Segment>) -> Result<Self, GeometryError> {
        Self::validate(&segments, true)?;
        Ok(Self { segments, closed: true })
    }

    fn validate(segments: &[Segment], closed: bool) -> Result<(), GeometryError> {
        for (i, s) in segments.iter().enumerate() {
            if s.length() <= 0.0 {
                return Err(GeometryError::DegenerateSegment(i));
            }
        }
        let tol = 1e-12;
        for i in 1..segments.len() {
            let e = segments[i - 1].end();
            let s = segments[i].start();
            if (e[0] - s[0]).hypot(e[1] - s[1]) > tol {
                return Err(GeometryError::Disconnected(i - 1, i));
            }
        }
        if closed && !segments.is_empty() {
            let e = segments.last().unwrap().end();
            let s = segments[0].start();
            if (e[0] - s[0]).hypot(e[1] - s[1]) > tol {
                return Err(GeometryError::Disconnected(segments.len() - 1, 0));
            }
        }
        Ok(())
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length()).sum()
    }

    /// Flat interface from (-w, 0) to (w, 0).
    pub fn flat(half_width: f64) -> Self {
        BoundaryCurve {
            segments: vec![Segment::Line { a: [-half_width, 0.0], b: [half_width, 0.0] }],
            closed: false,
        }
    }

    /// Two semicircles of radius 1 joined at the origin, one protruding up,
    /// one down, with flat tails out to +-half_width.
    pub fn bump_dip(half_width: f64) -> Self {
        BoundaryCurve {
            segments: vec![
                Segment::Line { a: [-half_width, 0.0], b: [-2.0, 0.0] },
                Segment::Arc { center: [-1.0, 0.0], radius: 1.0, theta0: std::f64::consts::PI, theta1: 0.0 },
                Segment::Arc { center: [1.0, 0.0], radius: 1.0, theta0: std::f64::consts::PI, theta1: 2.0 * std::f64::consts::PI },
                Segment::Line { a: [2.0, 0.0], b: [half_width, 0.0] },
            ],
            closed: false,
        }
    }

    /// Three unit-square bumps into the upper half-plane, centered at
    /// x1 = -3, 0, 3, with flat connectors out to +-half_width.
    pub fn squares(half_width: f64) -> Self {
        let mut segs = Vec::new();
        let lefts = [-3.5, -0.5, 2.5];
        let mut cursor = -half_width;
        for &a in &lefts {
            segs.push(Segment::Line { a: [cursor, 0.0], b: [a, 0.0] });
            segs.push(Segment::Line { a: [a, 0.0], b: [a, 1.0] });
            segs.push(Segment::Line { a: [a, 1.0], b: [a + 1.0, 1.0] });
            segs.push(Segment::Line { a: [a + 1.0, 1.0], b: [a + 1.0, 0.0] });
            cursor = a + 1.0;
        }
        segs.push(Segment::Line { a: [cursor, 0.0], b: [half_width, 0.0] });
        BoundaryCurve { segments: segs, closed: false }
    }

    /// Circle, for closed-curve verification paths.
    pub fn circle(center: [f64; 2], radius: f64) -> Self {
        BoundaryCurve {
            segments: vec![Segment::Arc {
                center,
                radius,
                theta0: 0.0,
                theta1: 2.0 * std::f64::consts::PI,
            }],
            closed: true,
        }
    }
}

/// Graded map of one panel [t0,t1] -> [s0,s1] with derivatives of orders
/// 1..p-1 vanishing at both ends.
pub fn grading(t: f64, t0: f64, t1: f64, s0: f64, s1: f64, p: u32) -> Result<f64, GeometryError> {
    if p < 2 {
        return Err(GeometryError::BadGradingExponent(p));
    }
    if t < t0 - 1e-14 || t > t1 + 1e-14 {
        return Err(GeometryError::OutsidePanel { t, t0, t1 });
    }
    let xi = (2.0 * t - (t0 + t1)) / (t1 - t0);
    let pf = p as f64;
    let rise = (0.5 - 1.0 / pf) * xi * xi * xi + xi / pf + 0.5; // 0 at t0, 1 at t1
    let w2 = rise.powi(p as i32);
    let w1 = (1.0 - rise).powi(p as i32);
    Ok((s0 * w1 + s1 * w2) / (w1 + w2))
}

/// d/dt of `grading`.
pub fn grading_derivative(t: f64, t0: f64, t1: f64, s0: f64, s1: f64, p: u32) -> f64 {
    let xi = (2.0 * t - (t0 + t1)) / (t1 - t0);
    let pf = p as f64;
    let rise = (0.5 - 1.0 / pf) * xi * xi * xi + xi / pf + 0.5;
    let drise = (3.0 * (0.5 - 1.0 / pf) * xi * xi + 1.0 / pf) * 2.0 / (t1 - t0);
    let w2 = rise.powi(p as i32);
    let w1 = (1.0 - rise).powi(p as i32);
    let cross = (rise * (1.0 - rise)).powi(p as i32 - 1);
    pf * drise * (s1 - s0) * cross / ((w1 + w2) * (w1 + w2))
}

/// Mesh node data over the global parameter t in (0, 1].
#[derive(Debug, Clone)]
pub struct GradedMesh {
    pub n: usize,
    pub h: f64,
    /// t_j = (j+1) h.
    pub t: Vec<f64>,
    pub pos: Vec<[f64; 2]>,
    /// Unit tangent (direction of increasing t; arbitrary at corners).
    pub tangent: Vec<[f64; 2]>,
    /// Unit normal, tangent rotated -90 degrees (points toward the lower
    /// side for a left-to-right curve).
    pub normal: Vec<[f64; 2]>,
    /// |x'(t)| = w'(t) under the graded global parameterization.
    pub speed: Vec<f64>,
    pub is_corner: Vec<bool>,
    pub segment: Vec<usize>,
    /// Panel breaks in t (segment boundaries), including 0 and 1.
    pub breaks: Vec<f64>,
    pub grading_p: u32,
    pub closed: bool,
    pub arclength: f64,
    /// Curve endpoints (A, B) for open curves.
    pub endpoints: ([f64; 2], [f64; 2]),
}

/// Build a mesh with `per_segment[i]` nodes allotted to segment i.
pub fn build_mesh(
    curve: &BoundaryCurve,
    per_segment: &[usize],
    p: u32,
) -> Result<GradedMesh, GeometryError> {
    assert_eq!(per_segment.len(), curve.segments.len());
    if p < 2 {
        return Err(GeometryError::BadGradingExponent(p));
    }
    for &n in per_segment {
        if n < 2 {
            return Err(GeometryError::TooFewPoints(n));
        }
    }
    let n: usize = per_segment.iter().sum();
    let h = 1.0 / n as f64;
    // panel breaks in t and cumulative arclength
    let mut breaks = vec![0.0];
    let mut s_breaks = vec![0.0];
    let mut acc = 0usize;
    let mut s_acc = 0.0;
    for (i, seg) in curve.segments.iter().enumerate() {
        acc += per_segment[i];
        s_acc += seg.length();
        breaks.push(acc as f64 * h);
        s_breaks.push(s_acc);
    }
    *breaks.last_mut().unwrap() = 1.0;

    let mut mesh = GradedMesh {
        n,
        h,
        t: Vec::with_capacity(n),
        pos: Vec::with_capacity(n),
        tangent: Vec::with_capacity(n),
        normal: Vec::with_capacity(n),
        speed: Vec::with_capacity(n),
        is_corner: Vec::with_capacity(n),
        segment: Vec::with_capacity(n),
        breaks: breaks.clone(),
        grading_p: p,
        closed: curve.closed,
        arclength: s_acc,
        endpoints: (curve.segments[0].start(), curve.segments.last().unwrap().end()),
    };

    let mut seg_of = vec![0usize; n + 1];
    {
        let mut seg = 0;
        for j in 0..=n {
            let t = j as f64 * h;
            while seg + 1 < curve.segments.len() && t > breaks[seg + 1] + 1e-13 {
                seg += 1;
            }
            seg_of[j] = seg;
        }
    }

    for j in 1..=n {
        let t = j as f64 * h;
        // locate panel (corner nodes belong to the panel ending there)
        let mut seg = seg_of[j];
        if t <= breaks[seg] + 1e-13 && seg > 0 {
            seg -= 1;
        }
        let (t0, t1) = (breaks[seg], breaks[seg + 1]);
        let (s0, s1) = (s_breaks[seg], s_breaks[seg + 1]);
        let s = grading(t, t0, t1, s0, s1, p)?;
        let sp = grading_derivative(t, t0, t1, s0, s1, p);
        let u = (s - s0).clamp(0.0, curve.segments[seg].length());
        let (pos, tau) = curve.segments[seg].at(u);
        let on_break = breaks.iter().any(|&b| (t - b).abs() < 1e-13);
        mesh.t.push(t);
        mesh.pos.push(pos);
        mesh.tangent.push(tau);
        mesh.normal.push([tau[1], -tau[0]]);
        mesh.speed.push(sp);
        mesh.is_corner.push(on_break);
        mesh.segment.push(seg);
    }
    Ok(mesh)
}

/// Image mesh data on the transformed curve X = T x, node for node.
#[derive(Debug, Clone)]
pub struct ImageMesh {
    pub pos: Vec<[f64; 2]>,
    pub tangent: Vec<[f64; 2]>,
    /// Unit normal pointing away from the image of the lower domain
    /// (tangent rotated +90 degrees).
    pub normal: Vec<[f64; 2]>,
    /// |X'(t)| = |T x'(t)|.
    pub speed: Vec<f64>,
    /// Ratio field gamma = sqrt(det M) |X'| / |x'| per node.
    pub gamma: Vec<f64>,
}

pub fn image_mesh(mesh: &GradedMesh, t_mat: &Mat2, sqrt_det_m: f64) -> ImageMesh {
    let n = mesh.n;
    let mut out = ImageMesh {
        pos: Vec::with_capacity(n),
        tangent: Vec::with_capacity(n),
        normal: Vec::with_capacity(n),
        speed: Vec::with_capacity(n),
        gamma: Vec::with_capacity(n),
    };
    for j in 0..n {
        let xx = t_mat.mul_vec(mesh.pos[j]);
        let v = t_mat.mul_vec(mesh.tangent[j]);
        let stretch = v[0].hypot(v[1]); // |T tau|, = |X'|/|x'|
        let tau = [v[0] / stretch, v[1] / stretch];
        out.pos.push(xx);
        out.tangent.push(tau);
        out.normal.push([-tau[1], tau[0]]);
        out.speed.push(mesh.speed[j] * stretch);
        out.gamma.push(sqrt_det_m * stretch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::{DerivedMedium, PermittivityTensor};

    #[test]
    fn grading_endpoints_and_midpoint() {
        let s = grading(0.0, 0.0, 1.0, 2.0, 5.0, 6).unwrap();
        assert_eq!(s, 2.0);
        let s = grading(1.0, 0.0, 1.0, 2.0, 5.0, 6).unwrap();
        assert_eq!(s, 5.0);
        let s = grading(0.5, 0.0, 1.0, 2.0, 5.0, 6).unwrap();
        assert!((s - 3.5).abs() < 1e-15);
        assert!(grading(1.5, 0.0, 1.0, 0.0, 1.0, 6).is_err());
    }

    #[test]
    fn grading_derivatives_vanish_at_ends() {
        // one-sided divided differences of orders 1..3 at t0 for p = 6
        let h = 2e-5;
        let f: Vec<f64> = (0..=4).map(|k| grading(k as f64 * h, 0.0, 1.0, 0.0, 1.0, 6).unwrap()).collect();
        let d1 = (f[1] - f[0]) / h;
        let d2 = (f[2] - 2.0 * f[1] + f[0]) / (h * h);
        let d3 = (f[3] - 3.0 * f[2] + 3.0 * f[1] - f[0]) / (h * h * h);
        assert!(d1.abs() < 1e-8, "d1 = {d1:e}");
        assert!(d2.abs() < 1e-8, "d2 = {d2:e}");
        assert!(d3.abs() < 1e-8, "d3 = {d3:e}");
    }

    #[test]
    fn grading_derivative_matches_fd() {
        for &t in &[0.2, 0.37, 0.5, 0.81] {
            let h = 1e-6;
            let fd = (grading(t + h, 0.0, 1.0, 1.0, 4.0, 6).unwrap()
                - grading(t - h, 0.0, 1.0, 1.0, 4.0, 6).unwrap())
                / (2.0 * h);
            let an = grading_derivative(t, 0.0, 1.0, 1.0, 4.0, 6);
            assert!((fd - an).abs() < 1e-7 * (1.0 + an.abs()), "t={t}");
        }
    }

    #[test]
    fn flat_mesh() {
        let curve = BoundaryCurve::flat(2.0);
        let mesh = build_mesh(&curve, &[64], 6).unwrap();
        assert_eq!(mesh.n, 64);
        assert_eq!(mesh.arclength, 4.0);
        // spans (-2,0) to (2,0); speeds are 4 w'(t) for the unit panel
        assert!((mesh.pos[63][0] - 2.0).abs() < 1e-14);
        for j in 0..mesh.n {
            assert_eq!(mesh.pos[j][1], 0.0);
            assert_eq!(mesh.normal[j], [0.0, -1.0]);
            let wp = grading_derivative(mesh.t[j], 0.0, 1.0, 0.0, 1.0, 6);
            assert!((mesh.speed[j] - 4.0 * wp).abs() < 1e-12);
        }
    }

    #[test]
    fn bump_dip_mesh() {
        let curve = BoundaryCurve::bump_dip(3.0);
        assert_eq!(curve.segments.len(), 4);
        let mesh = build_mesh(&curve, &[40, 40, 40, 40], 6).unwrap();
        // each semicircle contributes arclength pi
        let l = curve.total_length();
        assert!((l - (2.0 + 2.0 * std::f64::consts::PI)).abs() < 1e-13);
        // corner parameters are grid points
        for b in &mesh.breaks {
            if *b == 0.0 {
                continue;
            }
            let j = (b / mesh.h).round() as usize;
            assert!((j as f64 * mesh.h - b).abs() < 1e-13);
        }
        // the normal points toward the lower medium everywhere: downward both
        // at the bump top (lower material fills the bump) and at the dip bottom
        let top = mesh.pos.iter().enumerate().max_by(|a, b| a.1[1].total_cmp(&b.1[1])).unwrap().0;
        assert!(mesh.pos[top][1] > 0.9);
        assert!(mesh.normal[top][1] < -0.9);
        let bot = mesh.pos.iter().enumerate().min_by(|a, b| a.1[1].total_cmp(&b.1[1])).unwrap().0;
        assert!(mesh.normal[bot][1] < -0.9);
        // at the start of the bump the lower side is to the right of the
        // upward tangent
        let entry = mesh.pos.iter().enumerate().min_by(|a, b| {
            (a.1[0] + 2.0).abs().total_cmp(&(b.1[0] + 2.0).abs())
        }).unwrap().0;
        assert!(mesh.normal[entry][0] > 0.5 || mesh.normal[entry][1] < -0.5);
    }

    #[test]
    fn degenerate_mesh_rejected() {
        let curve = BoundaryCurve::flat(2.0);
        assert!(matches!(build_mesh(&curve, &[1], 6), Err(GeometryError::TooFewPoints(1))));
    }

    #[test]
    fn arclength_refinement_consistency() {
        let curve = BoundaryCurve::bump_dip(3.0);
        let quad_len = |n: usize| {
            let mesh = build_mesh(&curve, &[n, n, n, n], 6).unwrap();
            mesh.speed.iter().sum::<f64>() * mesh.h
        };
        let l1 = quad_len(256);
        let l2 = quad_len(512);
        assert!((l1 - l2).abs() < 1e-12 * l2, "{:e}", (l1 - l2).abs() / l2);
        assert!((l2 - curve.total_length()).abs() < 1e-12 * l2);
    }

    #[test]
    fn image_mesh_flat_ratio() {
        let eps = PermittivityTensor::new(4.0, 1.0, 9.0, 1.0).unwrap();
        let med = DerivedMedium::from_permittivity(&eps).unwrap();
        let curve = BoundaryCurve::flat(2.0);
        let mesh = build_mesh(&curve, &[32], 6).unwrap();
        let img = image_mesh(&mesh, &med.t, med.sqrt_det_m());
        for j in 0..mesh.n {
            // flat part: gamma = sqrt(|M|) alpha = 3/sqrt(35)
            assert!((img.gamma[j] - 3.0 / 35f64.sqrt()).abs() < 1e-13);
            assert!(img.normal[j][1] > 0.999); // away from the lower image domain
        }
        // endpoint image scales by alpha on the axis
        assert!((img.pos[31][0] - med.alpha * 2.0).abs() < 1e-12);
        assert!(img.pos[31][1].abs() < 1e-14);
    }
}

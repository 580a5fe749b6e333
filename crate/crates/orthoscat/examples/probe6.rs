use num_complex::Complex64;
use orthoscat::background::Background;
use orthoscat::bie::*;
use orthoscat::geometry::{build_mesh, image_mesh, BoundaryCurve};
use orthoscat::media::{derive_medium, material_matrix, PermittivityTensor};
use orthoscat::rpml::StretchProfile;
use std::f64::consts::PI;
use std::time::Instant;

fn main() {
    let k0 = 2.0 * PI;
    let eps = PermittivityTensor::new(4.0, 1.0, 9.0, 1.0).unwrap();
    let med = derive_medium(material_matrix(&eps).unwrap()).unwrap();
    let bg = Background::new(k0, med);
    let xs = [0.0, 0.1];
    let profile = StretchProfile::new(1.0, 1.0, 2.0, 6);
    let curve = BoundaryCurve::flat(2.0);

    for n in [400usize, 1600] {
        let t0 = Instant::now();
        let mesh = build_mesh(&curve, &[n], 6).unwrap();
        let img = image_mesh(&mesh, &med.t, med.sqrt_det_m());
        let up = SideGeometry::upper(&curve, &mesh, profile);
        let low = SideGeometry::lower_image(&curve, &mesh, med.t, profile);
        let ops_up = assemble_side(&up, n, k0).unwrap();
        let ops_low = assemble_side(&low, n, k0).unwrap();
        let t_asm = t0.elapsed();
        let ntd_up = ntd(&ops_up).unwrap();
        let ntd_low = ntd(&ops_low).unwrap();
        let t_ntd = t0.elapsed();
        let ratio: Vec<f64> = img.gamma.iter().map(|g| g / med.sqrt_det_m()).collect();

        // splitting RHS: F = -u_inc(x~), G = -(nu . grad u_inc)(x~), row-scaled
        let mut f = Vec::with_capacity(n);
        let mut g = Vec::with_capacity(n);
        for j in 0..n {
            let nd = &ops_up.nodes[j];
            let uinc = bg.incident_cylindrical_c(nd.pos_c, xs).unwrap();
            let grad = bg.incident_cylindrical_gradient_c(nd.pos_c, xs).unwrap();
            let dnu = grad[0] * nd.normal[0] + grad[1] * nd.normal[1];
            f.push(-uinc);
            g.push(-dnu * nd.speed * nd.q);
        }
        let sol = couple_and_solve(&ntd_up, &ntd_low, &ratio, &img.gamma, &f, &g).unwrap();
        let t_solve = t0.elapsed();

        // E_rel on physical nodes |x1| < 1 (u_tot = trace + u_inc)
        let mut emax: f64 = 0.0;
        let mut umax: f64 = 0.0;
        for j in 0..n {
            let x = mesh.pos[j];
            if x[0].abs() >= 1.0 {
                continue;
            }
            let uinc = bg
                .incident_cylindrical_c(
                    [Complex64::new(x[0], 0.0), Complex64::new(x[1], 0.0)],
                    xs,
                )
                .unwrap();
            let unum = sol.trace_upper[j] + uinc;
            let uexa = bg.greens(x, xs).unwrap();
            emax = emax.max((unum - uexa).norm());
            umax = umax.max(uexa.norm());
        }
        println!(
            "n={n}: E_rel(boundary) = {:.3e}   cond={:.2e} resid={:.1e}  [asm {:?} ntd {:?} solve {:?}]",
            emax / umax,
            sol.condition,
            sol.residual,
            t_asm,
            t_ntd - t_asm,
            t_solve - t_ntd
        );

        // off-boundary probes
        let psi_low_scaled: Vec<Complex64> =
            sol.psi_lower.iter().zip(&ratio).map(|(v, r)| v * r).collect();
        let mut eoff: f64 = 0.0;
        for &x in &[[0.3, 0.7], [-0.8, 0.5], [0.1, 0.25]] {
            let xt = [Complex64::new(x[0], 0.0), Complex64::new(x[1], 0.0)];
            let og =
                evaluate_representation(&ops_up.nodes, &sol.psi_upper, &sol.trace_upper, xt, k0)
                    .unwrap();
            let uinc = bg.incident_cylindrical_c(xt, xs).unwrap();
            let uexa = bg.greens(x, xs).unwrap();
            eoff = eoff.max((og + uinc - uexa).norm() / uexa.norm());
        }
        // lower-side probe (image coordinates)
        for &x in &[[0.3, -0.4], [-0.5, -0.8]] {
            let xx = med.to_image(x);
            let xt = [Complex64::new(xx[0], 0.0), Complex64::new(xx[1], 0.0)];
            let og = evaluate_representation(&ops_low.nodes, &psi_low_scaled, &sol.trace_lower, xt, k0)
                .unwrap();
            let uexa = bg.greens(x, xs).unwrap();
            eoff = eoff.max((og - uexa).norm() / uexa.norm());
        }
        println!("        off-boundary worst rel = {:.3e}", eoff);
    }
}

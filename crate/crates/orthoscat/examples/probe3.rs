use num_complex::Complex64;
use orthoscat::quad::{gauss_legendre, panel_complex};
use orthoscat::specfun::mu;
use std::f64::consts::PI;

fn main() {
    let k0 = 2.0 * PI;
    let (m, a) = (1.0 / 35f64.sqrt(), 3.0);
    let h = 40.0 * 0.3f64.sin() + 0.1;
    let d = -(40.0 * 0.3f64.cos());
    let f = |xi: Complex64| {
        let m1 = mu(xi, k0);
        let m2 = mu(xi / a, k0);
        (m1 - m * a * m2) / (m1 * (m1 + m * a * m2)) * (Complex64::i() * (m1 * h + xi * d)).exp()
    };
    let gl16 = gauss_legendre(16);
    let gl32 = gauss_legendre(32);
    // walk the straight pieces like spectral_integrate does, reporting
    // panels whose 16/32 disagreement stalls
    let r = 2.0 / d.abs();
    let cuts = [
        (-4.0 * k0, -3.0 * k0 - r),
        (-3.0 * k0 + r, -k0 - r),
        (-k0 + r, k0 - r),
        (k0 + r, 3.0 * k0 - r),
        (3.0 * k0 + r, 4.0 * k0),
    ];
    for (ca, cb) in cuts {
        // emulate one level: split to npan, then try 6 bisections on the worst
        let rate = d.abs() + h + k0;
        let npan = (((cb - ca) * rate) / 20.0).ceil().max(1.0) as usize;
        let mut worst = (0.0f64, 0.0f64, 0.0f64);
        for j in 0..npan {
            let a0 = ca + (cb - ca) * j as f64 / npan as f64;
            let b0 = ca + (cb - ca) * (j + 1) as f64 / npan as f64;
            let mut lo = a0;
            let mut hi = b0;
            for _ in 0..8 {
                let c1 = panel_complex(&f, Complex64::new(lo, 0.0), Complex64::new(hi, 0.0), &gl16.0, &gl16.1);
                let c2 = panel_complex(&f, Complex64::new(lo, 0.0), Complex64::new(hi, 0.0), &gl32.0, &gl32.1);
                let diff = (c1 - c2).norm();
                if diff > worst.0 {
                    worst = (diff, lo, hi);
                }
                // bisect toward left half
                hi = 0.5 * (lo + hi);
            }
            let _ = lo;
        }
        println!("segment ({ca:.3},{cb:.3}): worst stalled diff {:.3e} at [{:.6},{:.6}]", worst.0, worst.1, worst.2);
    }
    // check magnitude of f on the tails: does it decay?
    for x in [25.2, 30.0, 50.0, 100.0, 200.0] {
        println!("f({x}) = {:.3e}", f(Complex64::new(x, 0.0)).norm());
    }
}

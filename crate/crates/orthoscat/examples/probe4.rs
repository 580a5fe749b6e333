use num_complex::Complex64;
use orthoscat::quad::adaptive_complex;
use orthoscat::specfun::mu;
use std::cell::Cell;
use std::f64::consts::PI;

fn main() {
    let k0 = 2.0 * PI;
    let (m, a) = (1.0 / 35f64.sqrt(), 3.0);
    let h = 40.0 * 0.3f64.sin() + 0.1;
    let d = -(40.0 * 0.3f64.cos());
    let count = Cell::new(0usize);
    let f = |xi: Complex64| {
        count.set(count.get() + 1);
        let m1 = mu(xi, k0);
        let m2 = mu(xi / a, k0);
        (m1 - m * a * m2) / (m1 * (m1 + m * a * m2)) * (Complex64::i() * (m1 * h + xi * d)).exp()
    };
    let i = Complex64::i();
    let bps = [k0, 3.0 * k0];
    let r = 2.0 / d.abs();
    let ximax = 4.0 * k0;
    let peak = 0.0421f64; // measured on-axis scale
    let tol0 = 1e-13 * peak * k0;

    // middle segments
    let cuts = [
        (-ximax, -3.0 * k0 - r),
        (-3.0 * k0 + r, -k0 - r),
        (-k0 + r, k0 - r),
        (k0 + r, 3.0 * k0 - r),
        (3.0 * k0 + r, ximax),
    ];
    let rate = d.abs() + h + k0;
    for (ca, cb) in cuts {
        count.set(0);
        let npan = (((cb - ca) * rate) / 20.0).ceil().max(1.0) as usize;
        let mut tot = Complex64::new(0.0, 0.0);
        for j in 0..npan {
            let a0 = ca + (cb - ca) * j as f64 / npan as f64;
            let b0 = ca + (cb - ca) * (j + 1) as f64 / npan as f64;
            tot += adaptive_complex(&f, Complex64::new(a0, 0.0), Complex64::new(b0, 0.0), tol0 * (b0 - a0) / (2.0 * ximax));
        }
        println!("segment ({ca:.2},{cb:.2}): {} evals, {tot}", count.get());
    }
    // dips
    for b in [k0, 3.0 * k0, -k0, -3.0 * k0] {
        count.set(0);
        let g = |th: Complex64| {
            let z = Complex64::new(b, 0.0) + r * (i * th).exp();
            f(z) * i * r * (i * th).exp()
        };
        let (th0, th1) = if b > 0.0 { (PI, 2.0 * PI) } else { (PI, 0.0) };
        let v = adaptive_complex(&g, Complex64::new(th0, 0.0), Complex64::new(th1, 0.0), tol0 * r);
        println!("dip at {b:.2}: {} evals, {v}", count.get());
    }
}

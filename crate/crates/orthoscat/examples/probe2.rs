use num_complex::Complex64;
use orthoscat::background::spectral_integrate;
use orthoscat::specfun::mu;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

static EVALS: AtomicUsize = AtomicUsize::new(0);

fn main() {
    let k0 = 2.0 * PI;
    let (m, a) = (1.0 / 35f64.sqrt(), 3.0);
    // far-field upper-upper integrand: h = 11.9, d = -38.2
    let h = 40.0 * 0.3f64.sin() + 0.1;
    let d = 0.0 - 40.0 * 0.3f64.cos();
    let f = |xi: Complex64| {
        EVALS.fetch_add(1, Ordering::Relaxed);
        let m1 = mu(xi, k0);
        let m2 = mu(xi / a, k0);
        (m1 - m * a * m2) / (m1 * (m1 + m * a * m2)) * (Complex64::i() * (m1 * h + xi * d)).exp()
    };
    let t = Instant::now();
    let v = spectral_integrate(&f, k0, &[k0, a * k0], h, d.abs()).unwrap();
    println!("far reflection: {} evals, {:?}, v={v}", EVALS.load(Ordering::SeqCst), t.elapsed());
}

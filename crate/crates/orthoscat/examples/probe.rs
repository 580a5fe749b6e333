use num_complex::Complex64;
use orthoscat::background::{spectral_integrate, Background};
use orthoscat::media::{derive_medium, material_matrix, PermittivityTensor};
use orthoscat::specfun::mu;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

static EVALS: AtomicUsize = AtomicUsize::new(0);

fn main() {
    let k0 = 2.0 * PI;
    let eps = PermittivityTensor::new(4.0, 1.0, 9.0, 1.0).unwrap();
    let med = derive_medium(material_matrix(&eps).unwrap()).unwrap();
    let bg = Background::new(k0, med);

    // instrumented identity integrand
    for (h, d) in [(0.5, 0.0), (0.1, 3.0), (0.8, 0.45)] {
        EVALS.store(0, Ordering::SeqCst);
        let f = |xi: Complex64| {
            EVALS.fetch_add(1, Ordering::Relaxed);
            (Complex64::i() * (mu(xi, k0) * h + xi * d)).exp() / mu(xi, k0)
        };
        let t = Instant::now();
        let v = spectral_integrate(&f, k0, &[k0], h, d).unwrap();
        println!(
            "identity h={h} d={d}: {} evals, {:?}, v={v}",
            EVALS.load(Ordering::SeqCst),
            t.elapsed()
        );
    }

    let t = Instant::now();
    let g = bg.greens([0.3, 0.7], [0.0, 0.1]).unwrap();
    println!("greens upper: {:?} -> {g}", t.elapsed());
    let t = Instant::now();
    let g = bg.greens([0.3, -0.4], [0.0, 0.1]).unwrap();
    println!("greens lower: {:?} -> {g}", t.elapsed());
    let t = Instant::now();
    let g = bg.greens([40.0 * 0.3f64.cos(), 40.0 * 0.3f64.sin()], [0.0, 0.1]).unwrap();
    println!("greens far: {:?} -> {g}", t.elapsed());
}

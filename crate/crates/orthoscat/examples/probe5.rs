use num_complex::Complex64;
use orthoscat::background::Background;
use orthoscat::media::{derive_medium, material_matrix, PermittivityTensor};

fn main() {
    let eps = PermittivityTensor::new(4.0, 1.0, 9.0, 1.0).unwrap();
    let med = derive_medium(material_matrix(&eps).unwrap()).unwrap();
    let bg = Background::new(2.0 * std::f64::consts::PI, med);
    let xs = [0.2, 0.4];
    for bt in [4.45f64, 4.55, 4.712, 4.9, 5.0] {
        let pat = bg.farfield_lower_src_upper(bt, xs);
        let defect = |rr: f64| {
            let xx = [rr * bt.cos(), rr * bt.sin()];
            let g = bg.greens_lower_src_upper(xx, xs).unwrap();
            (rr.sqrt() * (Complex64::new(0.0, -bg.k0 * rr)).exp() * g - pat).norm()
        };
        let (d40, d80, d160) = (defect(40.0), defect(80.0), defect(160.0));
        println!(
            "bt={bt}: |pat|={:.4} d40={:.3e} d80={:.3e} d160={:.3e} ratios {:.3} {:.3}",
            pat.norm(), d40, d80, d160, d80 / d40, d160 / d80
        );
    }
}

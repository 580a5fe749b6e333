//! Hybrid trapezoidal quadrature with endpoint-type corrections for
//! logarithmic singularities, in the Alpert style: the periodic trapezoid
//! rule skips the nodes nearest the singular point and adds twenty-six off-grid
//! correction nodes per side whose weights satisfy the zeta-regularized
//! moment equations
//!
//!   sum_k w_k chi_k^q          = -zeta(-q, 4)
//!   sum_k w_k chi_k^q ln chi_k =  zeta'(-q, 4)
//!
//! for q = 0..6, which gives seventh-to-eighth order convergence for
//! integrands of the form smooth + smooth * log. The node set is wider than
//! the number of conditions and the weights are the minimum-norm solution,
//! which keeps them order-one (max 0.59) and the rule well conditioned.
//!
//! Off-grid density values are resolved by trigonometric interpolation on
//! the uniform grid.

use std::f64::consts::PI;

/// First regular trapezoid node distance from the singular point.
pub const LOG_RULE_SKIP: usize = 4;

pub const LOG_RULE_NODES: [f64; 26] = [
    0.008228597708766161034,
    0.04322910808705815455,
    0.1056818666765715342,
    0.1947242760313858678,
    0.3091081144230038991,
    0.4472281023586424098,
    0.6071454791600854328,
    0.7866154139647638655,
    0.9831185703509885965,
    1.193896489753027423,
    1.415990321028086196,
    1.646282359286219632,
    1.881539813141373585,
    2.118460186858626415,
    2.353717640713780368,
    2.584009678971913804,
    2.806103510246972577,
    3.016881429649011404,
    3.213384586035236135,
    3.392854520839914567,
    3.552771897641357590,
    3.690891885576996101,
    3.805275723968614132,
    3.894318133323428466,
    3.956770891912941845,
    3.991771402291233839,
];

pub const LOG_RULE_WEIGHTS: [f64; 26] = [
    0.03296117347363617171,
    -0.03161865017560355879,
    0.3412519904796200353,
    -0.3907860233032716733,
    0.5846631517583770743,
    0.1316436862594009659,
    -0.1646250626669115786,
    0.2730910858686869464,
    0.4791819695694503544,
    0.1753800295827580515,
    -0.02699837972009058324,
    0.1895042133624103188,
    0.4579348537328337373,
    0.3841158599938398156,
    0.09136282340459695831,
    -0.01255467114248053409,
    0.2065039687984982829,
    0.4615162369691251518,
    0.4197081792939649240,
    0.09580081403513624456,
    -0.1859926024212902860,
    -0.1719994609450190297,
    0.05228414274467655697,
    0.1881257666639348982,
    0.07200615989304987531,
    -0.1524612555093291194,
];

#[cfg(test)]
pub(crate) const LOG_RULE_POLY_MOMENTS: [f64; 7] = [
    3.5,
    6.083333333333333333,
    14.0,
    35.99166666666666667,
    98.0,
    276.0039682539682540,
    794.0,
];

#[cfg(test)]
pub(crate) const LOG_RULE_LOG_MOMENTS: [f64; 7] = [
    0.8728209360233822590,
    4.516710083423768764,
    12.62965086319437519,
    35.21308781487629844,
    100.0859340825262786,
    289.1429229382887063,
    845.2438782357449489,
];

/// Cardinal function of trigonometric interpolation on n (even) uniform
/// points of the unit period: b(0) = 1, b(j h) = 0 for j != 0 mod n.
pub fn trig_cardinal(n: usize, delta: f64) -> f64 {
    debug_assert!(n % 2 == 0);
    let s = (n as f64 * PI * delta).sin();
    if s == 0.0 {
        // exactly on-grid: 1 at the base node, 0 elsewhere
        let j = (delta * n as f64).round() as i64;
        return if j.rem_euclid(n as i64) == 0 { 1.0 } else { 0.0 };
    }
    let t = (PI * delta).tan();
    s / (n as f64 * t)
}

/// Weighted correction stencil for a log singularity at grid node `j` of an
/// n-point periodic rule: pairs (t, w) of off-grid parameter locations and
/// weights, both sides of the singular point. `h = 1/n` scaling included.
pub fn correction_points(j: usize, n: usize) -> impl Iterator<Item = (f64, f64)> {
    let h = 1.0 / n as f64;
    let tj = (j + 1) as f64 * h;
    LOG_RULE_NODES
        .iter()
        .zip(LOG_RULE_WEIGHTS.iter())
        .flat_map(move |(&chi, &w)| {
            [
                ((tj + chi * h).rem_euclid(1.0), w),
                ((tj - chi * h).rem_euclid(1.0), w),
            ]
        })
}

/// Whether the periodic wrap distance between grid indices i and j is within
/// the skipped band around the singularity.
pub fn within_skip(i: usize, j: usize, n: usize) -> bool {
    let d = (i as i64 - j as i64).rem_euclid(n as i64) as usize;
    d < LOG_RULE_SKIP || n - d < LOG_RULE_SKIP
}

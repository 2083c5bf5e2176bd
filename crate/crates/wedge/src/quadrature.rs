//! Gauss–Legendre rules and an adaptive Gauss–Kronrod integrator for
//! complex-valued integrands.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite Gauss–Legendre rule on `[a, b]` with `panels` panels.
pub fn composite(a: f64, b: f64, panels: usize, n: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let hw = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * n);
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * hw;
        for k in 0..n {
            out.push((c + 0.5 * hw * x[k], 0.5 * hw * w[k]));
        }
    }
    out
}

const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WK: [f64; 8] = [
    0.022935322010529225,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WK[7];
    let mut g = fc * WG[3];
    let mut l1 = fc.norm() * WK[7];
    for j in 0..7 {
        let (lo, hi) = (f(c - h * XK[j]), f(c + h * XK[j]));
        let v = lo + hi;
        k += v * WK[j];
        l1 += (lo.norm() + hi.norm()) * WK[j];
        if j % 2 == 1 {
            g += v * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm(), l1 * h.abs())
}

/// Globally adaptive Gauss–Kronrod (7, 15) quadrature to absolute tolerance
/// `tol`: the interval with the largest error estimate is bisected until the
/// summed estimate meets `tol`, reaches roundoff relative to `∫|f|`, or the
/// interval budget is spent.
pub fn adaptive<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, tol: f64) -> C64 {
    const MAX_INTERVALS: usize = 4000;
    let mut parts = vec![(a, b, gk15(f, a, b))];
    loop {
        let err: f64 = parts.iter().map(|p| p.2 .1).sum();
        let l1: f64 = parts.iter().map(|p| p.2 .2).sum();
        if err <= tol.max(50.0 * f64::EPSILON * l1) || parts.len() >= MAX_INTERVALS {
            break;
        }
        let k = (0..parts.len())
            .max_by(|&x, &y| parts[x].2 .1.total_cmp(&parts[y].2 .1))
            .unwrap();
        let (lo, hi, _) = parts[k];
        let m = 0.5 * (lo + hi);
        if (hi - lo).abs() < 1e-14 {
            break;
        }
        parts[k] = (lo, m, gk15(f, lo, m));
        parts.push((m, hi, gk15(f, m, hi)));
    }
    parts.iter().map(|p| p.2 .0).sum()
}

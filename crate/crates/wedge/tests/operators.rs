use std::f64::consts::PI;
use wedge::{Complex64 as C64, Material, Mesh, Operators};

const I: C64 = C64::new(0.0, 1.0);

fn ops(angle: f64, mat: &Material) -> Operators {
    Operators::new(mat, angle.to_radians() / 2.0, Mesh::new(0.05, 12.0, 12.0).unwrap())
}

fn sample(o: &Operators, f: impl Fn(f64) -> C64) -> Vec<C64> {
    o.eta.iter().map(|&t| f(t)).collect()
}

type Test = Box<dyn Fn(C64) -> C64>;

fn strip_analytic() -> Vec<(&'static str, Test)> {
    vec![
        ("sec(0.8z)", Box::new(|z: C64| 1.0 / (0.8 * z).cos())),
        ("sec(0.8(z-0.2))", Box::new(|z: C64| 1.0 / (0.8 * (z - 0.2)).cos())),
        ("sec^2(0.7z)", Box::new(|z: C64| (1.0 / (0.7 * z).cos()).powi(2))),
        ("cos(0.3z)/cos(z)", Box::new(|z: C64| (0.3 * z).cos() / z.cos())),
        ("sin(0.5z)sec^2(0.9z)", Box::new(|z: C64| (0.5 * z).sin() / (0.9 * z).cos().powi(2))),
    ]
}

#[test]
fn hilbert_maps_sum_to_difference() {
    let m = Material::from_poisson(0.25).unwrap();
    for angle in [70.0, 120.0] {
        let o = ops(angle, &m);
        let a = o.alpha;
        for (name, f) in strip_analytic() {
            let s = sample(&o, |t| f(a + I * t) + f(-a + I * t));
            let d = sample(&o, |t| f(a + I * t) - f(-a + I * t));
            let hs = o.apply_h(&s);
            let err = o
                .eta
                .iter()
                .zip(hs.iter().zip(&d))
                .filter(|(t, _)| t.abs() <= 8.0)
                .map(|(_, (x, y))| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(err <= 1e-6, "{angle} {name}: {err:.2e}");
        }
    }
}

#[test]
fn hilbert_range_has_zero_mean() {
    let m = Material::from_poisson(0.25).unwrap();
    let o = ops(70.0, &m);
    let hf = o.apply_h(&sample(&o, |t| C64::new(1.0 / t.cosh(), 0.0)));
    let s: C64 = hf.iter().sum::<C64>() * o.mesh.h;
    assert!(s.norm() <= 1e-8, "{s}");
}

#[test]
fn hilbert_flips_parity() {
    let m = Material::from_poisson(0.25).unwrap();
    let o = ops(70.0, &m);
    let hf = o.apply_h(&sample(&o, |t| C64::new((-t * t).exp(), 0.0)));
    let n = hf.len();
    for k in 0..n {
        assert!((hf[k] + hf[n - 1 - k]).norm() < 1e-14);
    }
}

#[test]
fn inverse_round_trip() {
    let m = Material::from_poisson(0.25).unwrap();
    for angle in [70.0, 150.0] {
        let o = ops(angle, &m);
        let c = PI / (2.0 * o.alpha);
        let f = sample(&o, |t| C64::new(t.tanh() / (c * t).cosh(), 0.0));
        let back = o.apply_hinv(&o.apply_h(&f));
        let err = back
            .iter()
            .zip(&f)
            .zip(&o.eta)
            .filter(|(_, t)| t.abs() <= 12.0)
            .map(|((x, y), _)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(err <= 1e-6, "{angle}: {err:.2e}");
    }
}

#[test]
fn warped_reduces_to_plain_at_unit_ratio() {
    let o = ops(70.0, &Material::with_gamma(1.0));
    let diff = (&o.hbar - &o.h).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let diff_inv = (&o.hbar_inv - &o.hinv).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(diff < 1e-12 && diff_inv < 1e-12, "{diff} {diff_inv}");
}

#[test]
fn regular_kernel_is_finite_on_diagonal() {
    let m = Material::from_poisson(0.25).unwrap();
    let o = ops(70.0, &m);
    for sym in [wedge::Symmetry::Plus, wedge::Symmetry::Minus] {
        let k = o.kernel(sym);
        assert!((0..k.nrows()).all(|i| k[(i, i)].is_finite()));
    }
}

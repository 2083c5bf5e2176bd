//! Leading tip exponents `p` of the potentials, roots of
//! `(p + 1) sin 2α ± sin 2α(p + 1) = 0` with `0 ≤ Re p ≤ 1`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Window in `2α` (radians) within which a nearby double root is reported.
pub const DEGENERATE_WINDOW: f64 = 0.02 * PI;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Exponent {
    pub p: C64,
    pub multiplicity: usize,
    /// The regular exponent `1` rather than a root.
    pub regular: bool,
    /// `|F(p)|`; for a merged double root, at the degenerate angle.
    pub residual: f64,
    /// Full wedge angle at which a merged double root is exact.
    pub degenerate_at: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TipExponents {
    pub two_alpha: f64,
    pub plus: Vec<Exponent>,
    pub minus: Vec<Exponent>,
}

fn f(x: C64, a2: f64, sg: f64) -> C64 {
    x * a2.sin() + sg * (a2 * x).sin()
}

fn fx(x: C64, a2: f64, sg: f64) -> C64 {
    a2.sin() + sg * a2 * (a2 * x).cos()
}

fn newton(mut x: C64, a2: f64, sg: f64) -> Option<C64> {
    for _ in 0..200 {
        let d = fx(x, a2, sg);
        if d.norm() == 0.0 {
            return None;
        }
        let step = f(x, a2, sg) / d;
        x -= step;
        if !x.is_finite() || x.norm() > 1e3 {
            return None;
        }
        if step.norm() < 1e-15 * (1.0 + x.norm()) {
            break;
        }
    }
    (f(x, a2, sg).norm() <= 1e-12).then_some(x)
}

/// Number of zeros of `F` inside the circle `|x − c| = r`.
pub fn zero_count(c: C64, r: f64, a2: f64, sg: f64) -> i64 {
    let n = 512;
    let mut turn = 0.0;
    let mut prev = f(c + r, a2, sg);
    for k in 1..=n {
        let z = c + C64::from_polar(r, 2.0 * PI * k as f64 / n as f64);
        let v = f(z, a2, sg);
        turn += (v / prev).arg();
        prev = v;
    }
    (turn / (2.0 * PI)).round() as i64
}

/// Solve `F = F_x = 0` for `(x, 2α)` from a starting guess.
fn double_root(x0: f64, a0: f64, sg: f64) -> Option<(f64, f64)> {
    let (mut x, mut a) = (x0, a0);
    for _ in 0..100 {
        let g1 = x * a.sin() + sg * (a * x).sin();
        let g2 = a.sin() + sg * a * (a * x).cos();
        let j11 = a.sin() + sg * a * (a * x).cos();
        let j12 = x * a.cos() + sg * x * (a * x).cos();
        let j21 = -sg * a * a * (a * x).sin();
        let j22 = a.cos() + sg * (a * x).cos() - sg * a * x * (a * x).sin();
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-300 {
            return None;
        }
        let dx = (g1 * j22 - g2 * j12) / det;
        let da = (j11 * g2 - j21 * g1) / det;
        x -= dx;
        a -= da;
        if !(x.is_finite() && a.is_finite()) {
            return None;
        }
        if dx.abs() + da.abs() < 1e-15 {
            break;
        }
    }
    let r = (x * a.sin() + sg * (a * x).sin()).abs() + (a.sin() + sg * a * (a * x).cos()).abs();
    (r < 1e-12).then_some((x, a))
}

fn in_range(p: C64) -> bool {
    p.re >= -1e-12 && p.re <= 1.0 + 1e-12
}

fn family(a2: f64, sg: f64) -> Vec<Exponent> {
    let s = a2.sin().abs();
    let mut ymax = 1.0;
    while (a2 * ymax).sinh() <= (3.0 + ymax) * s + 1.0 {
        ymax += 0.5;
    }
    let mut roots: Vec<C64> = Vec::new();
    let (nx, ny) = (24, 48);
    for i in 0..=nx {
        for j in 0..=ny {
            let x0 = C64::new(
                0.9 + 1.2 * i as f64 / nx as f64,
                -ymax + 2.0 * ymax * j as f64 / ny as f64,
            );
            if let Some(x) = newton(x0, a2, sg) {
                let p = x - 1.0;
                let p = if p.im.abs() < 1e-12 { C64::new(p.re, 0.0) } else { p };
                if in_range(p) && roots.iter().all(|q| (q - p).norm() > 1e-7) {
                    roots.push(p);
                }
            }
        }
    }
    let out: Vec<Exponent> = roots
        .iter()
        .map(|&p| Exponent {
            p,
            multiplicity: zero_count(p + 1.0, 1e-4, a2, sg).max(1) as usize,
            regular: false,
            residual: f(p + 1.0, a2, sg).norm(),
            degenerate_at: None,
        })
        .collect();
    // merge a root cluster that becomes a double root at a nearby angle
    let mut merged: Vec<Exponent> = Vec::new();
    let mut members: Vec<usize> = Vec::new();
    for (k, e) in out.iter().enumerate() {
        let Some((x, at)) = double_root(e.p.re + 1.0, a2, sg) else {
            continue;
        };
        let p = x - 1.0;
        if (at - a2).abs() > DEGENERATE_WINDOW || !in_range(C64::new(p, 0.0)) {
            continue;
        }
        members.push(k);
        if merged.iter().all(|m| (m.p.re - p).abs() > 1e-7) {
            merged.push(Exponent {
                p: C64::new(p, 0.0),
                multiplicity: 2,
                regular: false,
                residual: (x * at.sin() + sg * (at * x).sin()).abs(),
                degenerate_at: Some(at),
            });
        }
    }
    let mut out: Vec<Exponent> = out
        .into_iter()
        .enumerate()
        .filter(|(k, _)| !members.contains(k))
        .map(|(_, e)| e)
        .chain(merged)
        .collect();
    if out.iter().all(|e| (e.p - 1.0).norm() > 1e-9) {
        out.push(Exponent {
            p: C64::new(1.0, 0.0),
            multiplicity: 1,
            regular: true,
            residual: 0.0,
            degenerate_at: None,
        });
    }
    out.sort_by(|a, b| {
        a.p.re
            .partial_cmp(&b.p.re)
            .unwrap()
            .then(a.p.im.partial_cmp(&b.p.im).unwrap())
    });
    out
}

pub fn tip_exponents(two_alpha: f64) -> TipExponents {
    TipExponents {
        two_alpha,
        plus: family(two_alpha, 1.0),
        minus: family(two_alpha, -1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_plane_roots_are_integers() {
        let t = tip_exponents(PI);
        for e in t.plus.iter().chain(&t.minus) {
            assert!((e.p.re - e.p.re.round()).abs() < 1e-9 && e.p.im.abs() < 1e-9, "{:?}", e);
        }
    }

    #[test]
    fn antisymmetric_always_has_zero() {
        for a2 in [0.5, 1.2, 2.0, 2.9] {
            let t = tip_exponents(a2);
            assert!(t.minus.iter().any(|e| e.p.norm() < 1e-9));
        }
    }
}

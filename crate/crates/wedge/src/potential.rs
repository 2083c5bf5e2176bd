//! Potentials, displacements and tractions from the amplitudes through the
//! Sommerfeld integral
//!
//! `φ(r, θ) = ∫_C [Φ(ω + θ) − Φ(−ω + θ)] e^{iκkr cos ω} dω`
//!
//! over a contour from `−π/2 + i∞` down to `Im ω = Y`, across and up to
//! `3π/2 + i∞`. `κ = γ` for the longitudinal potential and `1` for the
//! transverse one; lengths are in units of `1/k`.

use crate::error::Result;
use crate::problem::Solution;
use crate::quadrature;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ContourOptions {
    /// Height of the horizontal leg; must clear every singularity of the
    /// shifted amplitudes in the upper half-plane.
    pub height: f64,
    /// Target decay `κkr sinh y_max` of the exponential on the vertical legs.
    pub decay: f64,
    pub panel: f64,
    pub order: usize,
}

impl Default for ContourOptions {
    fn default() -> Self {
        ContourOptions {
            height: 1.5,
            decay: 30.0,
            panel: 0.1,
            order: 16,
        }
    }
}

/// Potential and its first and second polar derivatives.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct Jet {
    pub phi: C64,
    pub r: C64,
    pub t: C64,
    pub rr: C64,
    pub rt: C64,
    pub tt: C64,
}

struct Node {
    w: C64,
    dw: C64,
}

/// Legs follow the steepest descent paths `Re ω = −π/2 + 2 atan e^{−y}` and
/// `Re ω = 3π/2 − 2 atan e^{−y}`, which keep `ω ± α` inside the region where
/// only physical singularities occur.
fn nodes(kappa_kr_min: f64, opts: &ContourOptions) -> Vec<Node> {
    let y0 = opts.height;
    let ymax = (opts.decay / kappa_kr_min).asinh().max(y0 + 0.5);
    let nv = (((ymax - y0) / (2.0 * opts.panel)).ceil() as usize).max(1);
    let edge = |y: f64| 2.0 * (-y).exp().atan();
    let (xl, xr) = (-PI / 2.0 + edge(y0), 1.5 * PI - edge(y0));
    let nh = (((xr - xl) / opts.panel).ceil() as usize).max(1);
    let mut out = Vec::new();
    for (y, w) in quadrature::composite(y0, ymax, nv, opts.order) {
        let slope = 1.0 / y.cosh();
        out.push(Node {
            w: C64::new(-PI / 2.0 + edge(y), y),
            dw: -C64::new(-slope, 1.0) * w,
        });
        out.push(Node {
            w: C64::new(1.5 * PI - edge(y), y),
            dw: C64::new(slope, 1.0) * w,
        });
    }
    for (x, w) in quadrature::composite(xl, xr, nh, opts.order) {
        out.push(Node {
            w: C64::new(x, y0),
            dw: C64::new(w, 0.0),
        });
    }
    out
}

/// Jets of both potentials at `(r, θ)` for each `r` in `krs`.
///
/// `amp(mode, ω)` evaluates the amplitude `Φ_mode`.
pub fn potential_jets<F>(amp: F, gamma: f64, theta: f64, krs: &[f64], opts: &ContourOptions) -> Result<Vec<[Jet; 2]>>
where
    F: Fn(usize, C64) -> Result<C64>,
{
    let rmin = krs.iter().cloned().fold(f64::INFINITY, f64::min).max(1e-6);
    let nodes = nodes(gamma.min(1.0) * rmin, opts);
    let mut vals = Vec::with_capacity(nodes.len());
    for n in &nodes {
        let mut v = [[C64::default(); 2]; 2];
        for (mode, slot) in v.iter_mut().enumerate() {
            *slot = [amp(mode, n.w + theta)?, amp(mode, -n.w + theta)?];
        }
        vals.push(v);
    }
    let mut out = Vec::with_capacity(krs.len());
    for &r in krs {
        let mut jets = [Jet::default(); 2];
        for (mode, jet) in jets.iter_mut().enumerate() {
            let k = if mode == 0 { gamma } else { 1.0 };
            for (n, v) in nodes.iter().zip(&vals) {
                let (s, c) = (n.w.sin(), n.w.cos());
                let e = (I * k * r * c).exp() * n.dw;
                let odd = (v[mode][0] - v[mode][1]) * e;
                let even = (v[mode][0] + v[mode][1]) * e;
                jet.phi += odd;
                jet.r += I * k * c * odd;
                jet.t += I * k * r * s * even;
                jet.rr += -k * k * c * c * odd;
                jet.rt += (I * k * s - k * k * r * s * c) * even;
                jet.tt += (-I * k * r * c - k * k * r * r * s * s) * odd;
            }
        }
        out.push(jets);
    }
    Ok(out)
}

/// Polar displacement and stress components at one point.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct FieldPoint {
    pub kr: f64,
    pub theta: f64,
    pub u_r: C64,
    pub u_t: C64,
    pub s_rr: C64,
    pub s_tt: C64,
    pub s_rt: C64,
}

/// Displacement `u = ∇φ₀ + (∂_y, −∂_x)φ₁` and stresses (shear modulus 1).
pub fn field_point(j: &[Jet; 2], gamma: f64, r: f64, theta: f64) -> FieldPoint {
    let (p, s) = (&j[0], &j[1]);
    let u_r = p.r + s.t / r;
    let u_t = p.t / r - s.r;
    let dr_ur = p.rr + s.rt / r - s.t / (r * r);
    let dt_ur = p.rt + s.tt / r;
    let dr_ut = p.rt / r - p.t / (r * r) - s.rr;
    let dt_ut = p.tt / r - s.rt;
    let e_rr = dr_ur;
    let e_tt = (u_r + dt_ut) / r;
    let e_rt = 0.5 * (dt_ur / r + dr_ut - u_t / r);
    let lambda = 1.0 / (gamma * gamma) - 2.0;
    let div = e_rr + e_tt;
    FieldPoint {
        kr: r,
        theta,
        u_r,
        u_t,
        s_rr: lambda * div + 2.0 * e_rr,
        s_tt: lambda * div + 2.0 * e_tt,
        s_rt: 2.0 * e_rt,
    }
}

/// Field points along the ray `θ` at each `kr`.
pub fn field_on_ray<F>(amp: F, gamma: f64, theta: f64, krs: &[f64], opts: &ContourOptions) -> Result<Vec<FieldPoint>>
where
    F: Fn(usize, C64) -> Result<C64>,
{
    let jets = potential_jets(amp, gamma, theta, krs, opts)?;
    Ok(jets
        .iter()
        .zip(krs)
        .map(|(j, &r)| field_point(j, gamma, r, theta))
        .collect())
}

/// Largest traction on the faces `θ = ±α` over the radii `krs`, relative to
/// the largest stress component seen on the faces.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FaceTraction {
    pub absolute: f64,
    pub scale: f64,
    pub relative: f64,
}

pub fn face_traction(sol: &Solution, krs: &[f64], opts: &ContourOptions) -> Result<FaceTraction> {
    let a = sol.problem.alpha();
    let g = sol.mat.gamma;
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for theta in [a, -a] {
        for f in field_on_ray(|m, z| sol.value(m, z), g, theta, krs, opts)? {
            worst = worst.max(f.s_tt.norm()).max(f.s_rt.norm());
            scale = scale.max(f.s_rr.norm());
        }
    }
    let scale = scale.max(worst).max(1e-300);
    Ok(FaceTraction {
        absolute: worst,
        scale,
        relative: worst / scale,
    })
}

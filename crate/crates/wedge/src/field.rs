//! Sommerfeld amplitudes: strip quadratures, analytic continuation and
//! contour residues.

use crate::error::{Result, WedgeError};
use crate::poles::{PoleTable, Sigma};
use crate::solver::LineSolution;
use crate::special::{Material, Symmetry};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Points closer than this to a strip line are extrapolated from inside.
pub const EDGE_GAP: f64 = 2e-3;
pub const MAX_DEPTH: usize = 40;

fn kern(c: f64, dp: C64, dm: C64, t: f64) -> C64 {
    if dp.re < -dm.re {
        1.0 / (c * (dp + I * t)).sin()
    } else {
        -1.0 / (c * (dm + I * t)).sin()
    }
}

fn sign_alt(k: usize, n: usize) -> f64 {
    if (k + n).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `∫ f(t) / cos(π(ξ − it)/2α) dt` from samples on `t_k = (k − N)h`, valid for
/// `|Re ξ| ≤ α`. The trapezoid sum is corrected for the kernel poles at
/// distance `α ∓ ξ` from the line.
pub fn quad_vertical(h: f64, alpha: f64, f: &[C64], xi: C64) -> C64 {
    let n = (f.len() - 1) / 2;
    let c = PI / (2.0 * alpha);
    let dp = alpha - xi;
    let dm = -alpha - xi;
    let ep = (PI * dm / h).exp() + (-PI * dp / h).exp();
    let mut s = C64::default();
    for (k, fk) in f.iter().enumerate() {
        let t = (k as f64 - n as f64) * h;
        s += kern(c, dp, dm, t) * (1.0 - sign_alt(k, n) * ep) * fk;
    }
    h * s
}

/// `∫ f(t) / cos(π(ξ − iχ(t))/2α) dt` with the χ-warped corrections; `chi`
/// holds `χ(t_k)`.
pub fn quad_warped(h: f64, alpha: f64, gamma: f64, chi: &[f64], f: &[C64], xi: C64) -> C64 {
    let n = (f.len() - 1) / 2;
    let c = PI / (2.0 * alpha);
    let dp = alpha - xi;
    let dm = -alpha - xi;
    let ap = (gamma * dp.sin()).asin();
    let am = (gamma * dm.sin()).asin();
    let cp = |a: C64| a.cos() / (gamma * gamma - a.sin() * a.sin()).sqrt();
    let wp = (-PI * ap / h).exp() / cp(ap);
    let wm = (PI * am / h).exp() / cp(am);
    let mut s = C64::default();
    for (k, fk) in f.iter().enumerate() {
        let t = (k as f64 - n as f64) * h;
        let corr = wp / (c * (ap + I * t)).sin() - wm / (c * (am + I * t)).sin();
        s += (kern(c, dp, dm, chi[k]) - sign_alt(k, n) * corr) * fk;
    }
    h * s
}

/// Plain trapezoid version of [`quad_vertical`], kept for comparisons.
pub fn quad_vertical_plain(h: f64, alpha: f64, f: &[C64], xi: C64) -> C64 {
    let n = (f.len() - 1) / 2;
    let c = PI / (2.0 * alpha);
    let mut s = C64::default();
    for (k, fk) in f.iter().enumerate() {
        let t = (k as f64 - n as f64) * h;
        s += fk / (c * (xi - I * t)).cos();
    }
    h * s
}

fn lagrange_at(xs: &[f64], ys: &[C64], x: f64) -> C64 {
    let mut out = C64::default();
    for i in 0..xs.len() {
        let mut l = 1.0;
        for j in 0..xs.len() {
            if j != i {
                l *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        out += l * ys[i];
    }
    out
}

/// Amplitudes `Φ₀, Φ₁` of one parity part.
#[derive(Clone, Debug)]
pub struct Amplitude {
    pub mat: Material,
    pub alpha: f64,
    pub sym: Symmetry,
    pub sigma: Sigma,
    pub poles: PoleTable,
    pub sol: LineSolution,
    xchi: Vec<C64>,
}

impl Amplitude {
    pub fn new(mat: Material, alpha: f64, sigma: Sigma, poles: PoleTable, sol: LineSolution) -> Self {
        let xchi = sol.x.iter().zip(&sol.chi_prime).map(|(x, c)| x * c).collect();
        Amplitude {
            mat,
            alpha,
            sym: sol.sym,
            sigma,
            poles,
            sol,
            xchi,
        }
    }

    pub fn strip(&self) -> (f64, f64) {
        (PI / 2.0 - self.alpha, PI / 2.0 + self.alpha)
    }

    pub fn in_strip(&self, z: C64) -> bool {
        let (lo, hi) = self.strip();
        z.re >= lo - 1e-12 && z.re <= hi + 1e-12
    }

    /// Singular part `Φ̂`.
    pub fn hat(&self, mode: usize, z: C64) -> C64 {
        self.poles.hat(mode, z, self.sigma, self.alpha)
    }

    /// Regular part `Φ̃` from the line data, `Re z` inside the strip.
    pub fn tilde_raw(&self, mode: usize, z: C64) -> C64 {
        let xi = z - PI / 2.0;
        let h = self.sol.mesh.h;
        let q = if mode == 1 {
            quad_vertical(h, self.alpha, &self.sol.y, xi)
        } else {
            quad_warped(h, self.alpha, self.mat.gamma, &self.sol.chi, &self.xchi, xi)
        };
        q / (4.0 * self.alpha)
    }

    fn strip_raw(&self, mode: usize, z: C64) -> C64 {
        self.hat(mode, z) + self.tilde_raw(mode, z)
    }

    /// `Φ_mode(z)` for `Re z` in the strip.
    pub fn in_strip_value(&self, mode: usize, z: C64) -> C64 {
        let (lo, hi) = self.strip();
        let sp = hi - z.re;
        let sm = z.re - lo;
        if sp.min(sm) >= EDGE_GAP {
            return self.strip_raw(mode, z);
        }
        let sgn = if sp < sm { 1.0 } else { -1.0 };
        let s = sp.min(sm);
        let ds: Vec<f64> = (1..=5).map(|k| k as f64 * EDGE_GAP).collect();
        let vals: Vec<C64> = ds
            .iter()
            .map(|&d| self.strip_raw(mode, z + sgn * (s - d)))
            .collect();
        lagrange_at(&ds, &vals, s)
    }

    /// `Φ_mode(z)` anywhere in the region reached by continuation. Points
    /// with `Re z < 0` are taken from `−z` through the parity of the part,
    /// which keeps the continuation chains short.
    pub fn value(&self, mode: usize, z: C64) -> Result<C64> {
        if z.re < 0.0 {
            return Ok(self.parity(mode) * self.value_depth(mode, -z, 0)?);
        }
        self.value_depth(mode, z, 0)
    }

    /// `Φ_mode(z)` by continuation alone, without parity folding.
    pub fn value_direct(&self, mode: usize, z: C64) -> Result<C64> {
        self.value_depth(mode, z, 0)
    }

    /// `Φ_mode(−z) = parity · Φ_mode(z)`.
    pub fn parity(&self, mode: usize) -> f64 {
        match (self.sym, mode) {
            (Symmetry::Plus, 0) | (Symmetry::Minus, 1) => -1.0,
            _ => 1.0,
        }
    }

    pub fn both(&self, z: C64) -> Result<[C64; 2]> {
        Ok([self.value(0, z)?, self.value(1, z)?])
    }

    fn value_depth(&self, mode: usize, z: C64, depth: usize) -> Result<C64> {
        if self.in_strip(z) {
            return Ok(self.in_strip_value(mode, z));
        }
        if depth >= MAX_DEPTH {
            return Err(WedgeError::Depth(z));
        }
        let a = self.alpha;
        let s = self.sym.sign();
        let m = &self.mat;
        let (_, hi) = self.strip();
        let right = z.re > hi;
        let shift = if right { -a } else { a };
        let w = if mode == 0 { m.g_inv(z + shift) } else { z + shift };
        let u = self.value_depth(0, m.g(w) + shift, depth + 1)?;
        let v = self.value_depth(1, w + shift, depth + 1)?;
        let rs = m.rayleigh_system(w);
        let e = m.e_vec(w, a, self.sym);
        let f = self.sol.c1 * m.s(w) / rs.delta;
        let ct = [f * e[0], f * e[1]];
        let r = rs.r;
        let out = if right {
            [
                s * (r[0][0] * u + r[0][1] * v) + ct[0],
                s * (r[1][0] * u + r[1][1] * v) + ct[1],
            ]
        } else {
            let (u, v) = (u - ct[0], v - ct[1]);
            [s * (r[0][0] * u + r[0][1] * v), s * (r[1][0] * u + r[1][1] * v)]
        };
        Ok(out[mode])
    }

    /// Residue of `Φ_mode` at `z0` by the trapezoid rule on a circle.
    pub fn residue(&self, mode: usize, z0: C64, radius: f64, n: usize) -> Result<C64> {
        self.residue_with(|z| self.value(mode, z), z0, radius, n)
    }

    /// [`Amplitude::residue`] using [`Amplitude::value_direct`].
    pub fn residue_direct(&self, mode: usize, z0: C64, radius: f64, n: usize) -> Result<C64> {
        self.residue_with(|z| self.value_direct(mode, z), z0, radius, n)
    }

    fn residue_with<F: Fn(C64) -> Result<C64>>(&self, f: F, z0: C64, radius: f64, n: usize) -> Result<C64> {
        let mut s = C64::default();
        for k in 0..n {
            let e = C64::from_polar(radius, 2.0 * PI * k as f64 / n as f64);
            s += f(z0 + e)? * e;
        }
        Ok(s / n as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_gives_zero_quadrature() {
        let f = vec![C64::default(); 41];
        assert_eq!(quad_vertical(0.1, 0.6, &f, C64::new(0.3, 0.1)), C64::default());
    }

    #[test]
    fn warped_reduces_to_vertical_at_unit_gamma() {
        let (h, a) = (0.05, 0.7);
        let n = 200;
        let t: Vec<f64> = (0..=2 * n).map(|k| (k as f64 - n as f64) * h).collect();
        let f: Vec<C64> = t.iter().map(|&x| C64::new(1.0 / x.cosh(), 0.0)).collect();
        for xi in [0.0, 0.3 * a, -0.8 * a] {
            let xi = C64::new(xi, 0.0);
            let v = quad_vertical(h, a, &f, xi);
            let w = quad_warped(h, a, 1.0, &t, &f, xi);
            assert!((v - w).norm() < 1e-10, "{v} {w}");
        }
    }
}
